"""Command-line front end.

Exit codes: 0 success / true / Isomorphic, 1 false / NotIsomorphic /
validation failed, 2 malformed input, 3 Inconclusive.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import canonical, factors, finite, matrices
from .canonical import Outcome
from .errors import FormalRingError, Violation
from .io import FormatError, load_raw_table, load_system, parse_ring, save_system, system_to_dict
from .ring import radical_of

OK, FALSE, MALFORMED, INCONCLUSIVE = 0, 1, 2, 3

EXIT_CODES = {
    Outcome.ISOMORPHIC: OK,
    Outcome.NOT_ISOMORPHIC: FALSE,
    Outcome.INCONCLUSIVE: INCONCLUSIVE,
}


class Report:
    def __init__(self, command, verdict, lines=(), hypotheses=(), data=None, seed=None):
        self.command = command
        self.verdict = verdict
        self.lines = list(lines)
        self.hypotheses = list(hypotheses)
        self.data = data or {}
        self.seed = seed

    def emit(self, as_json: bool, out=None):
        out = out or sys.stdout
        if as_json:
            envelope = {
                "command": self.command,
                "verdict": self.verdict,
                "hypotheses": self.hypotheses,
                "data": self.data,
                "seed": self.seed,
            }
            print(json.dumps(envelope, default=_jsonable), file=out)
        else:
            for line in self.lines:
                print(line, file=out)


def _jsonable(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.integer):
        return int(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _matrix_lines(m) -> list:
    return ["  " + " ".join(str(int(v)) for v in row) for row in m]


def cmd_validate(args):
    try:
        sys_ = load_system(args.file)
    except Violation as v:
        return FALSE, Report("validate", "violation", [f"INVALID: {v}"],
                             data={"kind": v.kind, "indices": list(v.indices)})
    derived = factors.derived_relations_report(sys_)
    lines = [f"certified factor system, n = {sys_.n} over {sys_.ring}",
             f"derived relations: {'pass' if derived else 'FAIL ' + str(derived.failure)}"]
    return OK, Report("validate", "certified", lines,
                      data={"n": sys_.n, "ring": str(sys_.ring), "derived_relations": derived.passed})


def cmd_canon(args):
    sys_ = load_system(args.file)
    form = canonical.canonicalize(sys_, args.s)
    d = form.descriptor
    lines = [f"tau: {form.tau}", f"descriptor: {d}", "canonical S:"] + _matrix_lines(form.canonical_S)
    data = {"tau": list(form.tau.images), "blocks": list(d.block_sizes), "s": d.s,
            "canonical_S": form.canonical_S}
    return OK, Report("canon", "ok", lines, data=data)


def cmd_iso(args):
    a, b = load_system(args.a), load_system(args.b)
    if a.ring != b.ring:
        raise FormatError(f"systems live over different rings ({a.ring} vs {b.ring})")
    s = args.s
    if s is None:
        sa, sb = factors.binary_value(a), factors.binary_value(b)
        if sa is not None and sb is not None and sa != sb:
            raise FormatError(f"systems use different s ({sa} vs {sb})")
        s = sa if sa is not None else sb
        if s is None:
            raise FormatError("both systems are trivial; pass --s")
    v = canonical.decide_isomorphism(a.ring, s, a, b)
    lines = [f"{v.outcome.value} ({v.reason})"]
    lines += [f"  [{'pass' if h.passed else 'FAIL'}] {h.name}" + (f": {h.detail}" if h.detail else "")
              for h in v.hypotheses]
    if v.descriptors:
        lines.append(f"  descriptors: {v.descriptors[0]} | {v.descriptors[1]}")
    if v.witness is not None:
        lines.append(f"  witness tau: {v.witness}")
    hyps = [{"name": h.name, "passed": h.passed, "detail": h.detail} for h in v.hypotheses]
    data = {"reason": v.reason, "witness": list(v.witness.images) if v.witness else None,
            "descriptors": [list(d.block_sizes) for d in v.descriptors]}
    return EXIT_CODES[v.outcome], Report("iso", v.outcome.value, lines, hyps, data)


def _table(path, limit):
    return finite.materialize(matrices.FormalMatrixRing.of(load_system(path)), limit)


def cmd_oracle_iso(args):
    t1, t2 = _table(args.a, args.limit), _table(args.b, args.limit)
    if args.quotient:
        t1 = finite.quotient(t1, finite.prime_radical(t1))
        t2 = finite.quotient(t2, finite.prime_radical(t2))
    res = finite.oracle_isomorphic(t1, t2, use_invariants=not args.no_invariants,
                                   limit=args.limit, deterministic=args.deterministic)
    verdict = "isomorphic" if res else "not isomorphic"
    lines = [f"{verdict} ({res.method}, {res.nodes} search nodes, |T| = {t1.size}, {t2.size})"]
    data = {"isomorphic": res.isomorphic, "method": res.method, "nodes": res.nodes}
    if res.witness is not None:
        data["witness"] = res.witness
    return (OK if res else FALSE), Report("oracle-iso", verdict, lines, data=data)


def _generating_set(T, ideal):
    span = np.zeros(T.size, dtype=bool)
    span[T.zero] = True
    gens = []
    for x in ideal.members:
        if not span[x]:
            gens.append(int(x))
            span = finite.additive_span(T, gens)
    return gens


def cmd_radical(args):
    T = _table(args.file, args.limit)
    P = finite.prime_radical(T)
    gens = _generating_set(T, P)
    Q = finite.quotient(T, P)
    lines = [f"|K| = {T.size}", f"|P(K)| = {P.size}", "additive generators of P(K):"]
    lines += [f"  {T.element(g).tolist()}" for g in gens]
    lines.append(f"|K/P(K)| = {Q.size}")
    data = {"size": T.size, "radical": P.size, "quotient": Q.size,
            "generators": [T.element(g) for g in gens]}
    return OK, Report("radical", "ok", lines, data=data)


def cmd_decompose(args):
    T = _table(args.file, args.limit)
    Q = finite.quotient(T, finite.prime_radical(T))
    parts = finite.central_idempotent_decomposition(Q)
    sizes = sorted((p.size for p in parts), reverse=True)
    q = radical_of(T.modulus)
    lines = [f"|K/P(K)| = {Q.size}", f"factor sizes: {sizes}"]
    data = {"quotient": Q.size, "factor_sizes": sizes}
    try:
        orders = finite.matrix_orders(parts, q)
        lines.append(f"matrix orders over a {q}-element residue ring: {orders}")
        data["matrix_orders"] = orders
    except ValueError:
        pass
    return OK, Report("decompose", "ok", lines, data=data)


def cmd_gen(args):
    ring = parse_ring(args.ring)
    kw = {}
    if args.kind == "binary":
        if not args.classes:
            raise FormatError("gen binary needs --classes")
        classes = [int(c) for c in args.classes.split(",")]
        if args.n is not None and args.n != len(classes):
            raise FormatError(f"--n {args.n} but {len(classes)} class labels")
        sys_ = factors.binary_system(ring, classes, args.s)
        kw["classes"] = classes
    elif args.kind == "coboundary":
        if not args.g:
            raise FormatError("gen coboundary needs --g (rows separated by ';')")
        g = [[int(v) for v in row.split(",")] for row in args.g.split(";")]
        sys_ = factors.coboundary_system(ring, g, args.s)
        kw["g"] = g
    else:
        if args.n is None:
            raise FormatError("gen trivial needs --n")
        sys_ = factors.validate(ring, np.ones((args.n,) * 3, dtype=np.int64))
    if args.explicit:
        kw = {}
    if args.output:
        save_system(args.output, sys_, **kw)
        lines = [f"wrote {args.output}"]
    else:
        lines = [json.dumps(system_to_dict(sys_, **kw))]
    return OK, Report("gen", "ok", lines, data={"n": sys_.n, "output": args.output})


def cmd_probe(args):
    # an uncertified table is the interesting case here, so skip validation
    try:
        K = matrices.FormalMatrixRing.of(load_system(args.file))
    except Violation:
        K = matrices.FormalMatrixRing.from_raw_table(*load_raw_table(args.file))
    rep = matrices.associativity_probe(K, args.samples, args.seed)
    verdict = "pass" if rep else "fail"
    lines = [f"associativity {verdict}: {rep.unit_triples} unit triples, "
             f"{rep.samples} random triples, seed {rep.seed}"]
    if rep.witness is not None:
        lines.append(f"  witness: {rep.witness}")
    return (OK if rep else FALSE), Report("probe", verdict, lines, seed=args.seed,
                                          data={"samples": rep.samples})


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fmrings", description="Formal matrix rings M(n, R, Sigma)")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--json", action="store_true", help="machine-readable envelope")
        return sp

    sp = common(sub.add_parser("validate", help="certify a factor-system file"))
    sp.add_argument("file")
    sp.set_defaults(func=cmd_validate)

    sp = common(sub.add_parser("canon", help="canonical form of the principal factor matrix"))
    sp.add_argument("file")
    sp.add_argument("--s", type=int)
    sp.set_defaults(func=cmd_canon)

    sp = common(sub.add_parser("iso", help="decide isomorphism of two (s1)-rings"))
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("--s", type=int)
    sp.set_defaults(func=cmd_iso)

    sp = common(sub.add_parser("oracle-iso", help="brute-force ring isomorphism search"))
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("--limit", type=int, default=finite.DEFAULT_LIMIT)
    sp.add_argument("--deterministic", action="store_true")
    sp.add_argument("--no-invariants", action="store_true", help="skip fingerprint shortcuts")
    sp.add_argument("--quotient", action="store_true", help="compare K/P(K) instead of K")
    sp.set_defaults(func=cmd_oracle_iso)

    for name, func, text in (("radical", cmd_radical, "prime radical of a finite K"),
                             ("decompose", cmd_decompose, "split K/P(K) by central idempotents")):
        sp = common(sub.add_parser(name, help=text))
        sp.add_argument("file")
        sp.add_argument("--limit", type=int, default=finite.DEFAULT_LIMIT)
        sp.set_defaults(func=func)

    sp = common(sub.add_parser("gen", help="write a factor-system file"))
    sp.add_argument("kind", choices=["binary", "coboundary", "trivial"])
    sp.add_argument("--n", type=int)
    sp.add_argument("--classes", help="comma-separated class labels, e.g. 1,1,2")
    sp.add_argument("--g", help="exponent matrix rows, e.g. '0,1;0,0'")
    sp.add_argument("--s", type=int, default=0)
    sp.add_argument("--ring", default="Z")
    sp.add_argument("--explicit", action="store_true", help="write the full table")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_gen)

    sp = common(sub.add_parser("probe", help="randomized checks"))
    sp.add_argument("what", choices=["assoc"])
    sp.add_argument("--file", required=True)
    sp.add_argument("--samples", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=42)
    sp.set_defaults(func=cmd_probe)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, report = args.func(args)
    except (FormatError, FormalRingError, ValueError) as exc:
        if args.json:
            Report(args.command, "error", data={"error": str(exc)}).emit(True)
        else:
            print(f"error: {exc}", file=sys.stderr)
        return MALFORMED
    report.emit(args.json)
    return code


if __name__ == "__main__":
    sys.exit(main())

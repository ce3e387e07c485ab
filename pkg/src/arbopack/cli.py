"""Command-line interface.

Exit codes: 0 feasible / ok, 1 infeasible or verification failed (certificate
JSON on stdout), 2 input error, 3 resource cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import gpoly
from .augment import min_gamma, solve
from .conditions import Verdict
from .errors import InconsistencyError, InputError, ResourceError
from .generate import PROBLEM_SHAPES, SHAPES, GenConfig, random_instance, random_problem
from .hypercore import MixedHypergraph
from .oracles import DEFAULT_CAPS, OracleCaps, exists_packing_bf, min_augment_bf
from .problems import GAMMA_KINDS, Problem, check, parse_problem, parse_requirements, problem_to_json
from .verify import PackingWitness, Requirements, requirements_to_json, verify_packing

OK, FAIL, INPUT, RESOURCE = 0, 1, 2, 3


def _load(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}")
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}")


def _dump(obj, path: str | None = None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True)
    if path is None:
        print(text)
    else:
        Path(path).write_text(text + "\n")


def _instance(args) -> MixedHypergraph:
    return MixedHypergraph.from_json(_load(args.instance))


def _problem(args, H: MixedHypergraph) -> Problem:
    prob = parse_problem(_load(args.problem), H.n)
    if getattr(args, "gamma", None) is not None:
        if prob.kind not in GAMMA_KINDS:
            raise InputError(f"{prob.kind} takes no gamma")
        if args.gamma < 0:
            raise InputError("gamma must be nonnegative")
        prob = prob.with_gamma(args.gamma)
    return prob


def _caps(args) -> OracleCaps:
    return OracleCaps(n=args.max_n, edges=args.max_edges, k=DEFAULT_CAPS.k, h=DEFAULT_CAPS.h)


def _verdict_out(args, v: Verdict, extra: dict | None = None) -> int:
    out = v.to_json()
    out.update(extra or {})
    if args.json or not v.feasible:
        _dump(out)
    else:
        print("feasible")
        for key, val in (extra or {}).items():
            print(f"  {key}: {val}")
    return OK if v.feasible else FAIL


def cmd_check(args) -> int:
    H = _instance(args)
    prob = _problem(args, H)
    extra = {"kind": prob.kind}
    if args.min_gamma is not None:
        extra["min_gamma"] = min_gamma(H, prob, args.min_gamma, args.cap)
    return _verdict_out(args, check(H, prob, args.cap), extra)


def cmd_solve(args) -> int:
    H = _instance(args)
    prob = _problem(args, H)
    res = solve(H, prob, _caps(args), args.cap)
    if not res.verdict.feasible:
        _dump(res.verdict.to_json())
        return FAIL
    if args.emit_witness:
        _dump(res.witness.to_json(), args.emit_witness)
    out = {"feasible": True, "kind": prob.kind, "added": [list(a) for a in res.added],
           "witness": res.witness.to_json()}
    if res.note:
        out["note"] = res.note
    if args.json:
        _dump(out)
    else:
        print(f"feasible; {len(res.added)} added: {[tuple(a) for a in res.added]}")
        for i, m in enumerate(res.witness.members):
            edges = ", ".join(f"{e.tail}->{e.head}" for e in m.edges) or "-"
            print(f"  member {i}: roots {list(m.roots)}  arcs {edges}")
        if res.note:
            print(f"  note: {res.note}")
    return OK


def cmd_verify(args) -> int:
    H = _instance(args)
    W = PackingWitness.from_json(_load(args.witness))
    R = parse_requirements(_load(args.require), H.n) if args.require else Requirements()
    rep = verify_packing(H, W, R)
    if args.json or not rep.ok:
        _dump(rep.to_json())
    else:
        print("ok")
        for name, (passed, detail) in rep.checks.items():
            print(f"  {name:16s} {'pass' if passed else 'FAIL'} {detail}")
    return OK if rep.ok else FAIL


def cmd_oracle(args) -> int:
    H = _instance(args)
    R = parse_requirements(_load(args.require), H.n)
    caps = _caps(args)
    if args.question == "exists":
        W = exists_packing_bf(H, R, caps)
        out = {"exists": W is not None, "requirements": requirements_to_json(R)}
        if W is not None:
            out["witness"] = W.to_json()
        _dump(out)
        return OK if W is not None else FAIL
    res = min_augment_bf(H, R, args.mode, args.gamma_max, caps=caps)
    if res is None:
        _dump({"gamma": None, "gamma_max": args.gamma_max})
        return FAIL
    _dump({"gamma": res.gamma, "added": [list(a) for a in res.added],
           "witness": res.witness.to_json()})
    return OK


def cmd_gen(args) -> int:
    rng = random.Random(args.seed)
    if args.kind:
        H, prob = random_problem(rng, args.kind, n=args.n, edges=args.edges,
                                 gamma_max=args.gamma_max)
        out = {"instance": H.to_json(), "problem": problem_to_json(prob)}
    else:
        H = random_instance(rng, GenConfig(n=args.n, edges=args.edges, shape=args.shape,
                                           max_tail=args.max_tail))
        out = {"instance": H.to_json()}
    if args.out_instance:
        _dump(out["instance"], args.out_instance)
    if args.out_problem and "problem" in out:
        _dump(out["problem"], args.out_problem)
    if not (args.out_instance or args.out_problem):
        _dump(out)
    return OK


def _gp(path: str) -> gpoly.GPolyBounds:
    try:
        return gpoly.GPolyBounds.from_json(_load(path))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed tables in {path}: {exc!r}")


def _vector(text: str, s: int) -> list:
    try:
        vals = json.loads(text)
    except json.JSONDecodeError:
        raise InputError(f"bad vector {text!r}")
    if not isinstance(vals, list) or len(vals) != s:
        raise InputError(f"vector needs {s} entries")
    return [gpoly._value_from_json(v) for v in vals]


def cmd_gpoly(args) -> int:
    Q = _gp(args.tables)
    op = args.op
    if op == "check":
        _dump({"s": Q.s, "p_supermodular": Q.p.is_supermodular(),
               "b_submodular": Q.b.is_submodular(), "cross": Q.is_gpolymatroid()})
        return OK
    if op == "element":
        x = gpoly.integral_element(Q)
        _dump({"element": None if x is None else list(x)})
        return OK if x is not None else FAIL
    if op == "box":
        if args.f is None or args.g is None:
            raise InputError("box needs --f and --g")
        R, ok = gpoly.intersect_box(Q, _vector(args.f, Q.s), _vector(args.g, Q.s))
    elif op == "card":
        if args.alpha is None or args.beta is None:
            raise InputError("card needs --alpha and --beta")
        R, ok = gpoly.intersect_cardinality(Q, args.alpha, args.beta)
    else:
        if not args.other:
            raise InputError(f"{op} needs --other")
        Q2 = _gp(args.other)
        if op == "sum":
            R, ok = gpoly.minkowski_sum(Q, Q2), True
        else:
            R, ok = gpoly.intersect(Q, Q2), gpoly.intersect_nonempty(Q, Q2)
    out = R.to_json()
    out["nonempty"] = ok
    _dump(out)
    return OK if ok else FAIL


def cmd_report(args) -> int:
    from .report import write_report

    summary = write_report(Path(args.out), args.seed, args.count, args.lemma_count,
                           args.gamma_max)
    if args.json:
        _dump(summary)
    else:
        print(f"wrote {', '.join(summary['files'])} to {args.out}")
        for name in ("packing", "gamma", "lemma"):
            print(f"  {name:8s} agree {summary[name + '_agree']}/{summary[name + '_total']}")
        print(f"  certs    exact {summary['certs_exact']}/{summary['certs_total']}")
    ok = all(summary[f"{n}_agree"] == summary[f"{n}_total"] for n in ("packing", "gamma", "lemma"))
    return OK if ok and summary["certs_exact"] == summary["certs_total"] else FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--cap", type=int, default=None,
                        help="subpartition enumeration cap (default: ARBOPACK_CAP or 10)")
    common.add_argument("--max-n", type=int, default=DEFAULT_CAPS.n, help="oracle vertex cap")
    common.add_argument("--max-edges", type=int, default=DEFAULT_CAPS.edges,
                        help="oracle edge cap (after augmentation)")
    ap = argparse.ArgumentParser(prog="arbopack", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="decide feasibility with a certificate")
    p.add_argument("--instance", required=True)
    p.add_argument("--problem", required=True)
    p.add_argument("--gamma", type=int)
    p.add_argument("--min-gamma", type=int, metavar="GMAX",
                   help="also report the least gamma <= GMAX the checker accepts")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", parents=[common], help="construct a witness (and added arcs)")
    p.add_argument("--instance", required=True)
    p.add_argument("--problem", required=True)
    p.add_argument("--gamma", type=int)
    p.add_argument("--emit-witness", metavar="FILE")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", parents=[common], help="validate a packing witness")
    p.add_argument("--instance", required=True)
    p.add_argument("--witness", required=True)
    p.add_argument("--require", help="requirements JSON or a problem JSON")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", parents=[common], help="brute-force existence or least augmentation")
    p.add_argument("question", choices=("exists", "min-augment"))
    p.add_argument("--instance", required=True)
    p.add_argument("--require", required=True)
    p.add_argument("--mode", choices=("arcs", "edges"), default="arcs")
    p.add_argument("--gamma-max", type=int, default=3)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", parents=[common], help="seeded random instance (and problem)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--edges", type=int, default=5)
    p.add_argument("--shape", choices=SHAPES, default="mixed")
    p.add_argument("--max-tail", type=int, default=3)
    p.add_argument("--kind", choices=sorted(PROBLEM_SHAPES))
    p.add_argument("--gamma-max", type=int, default=3)
    p.add_argument("--out-instance")
    p.add_argument("--out-problem")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("gpoly", parents=[common], help="g-polymatroid table operations")
    p.add_argument("op", choices=("check", "box", "card", "sum", "intersect", "element"))
    p.add_argument("--tables", required=True, help='JSON {"s", "p", "b"}')
    p.add_argument("--other", help="second operand for sum / intersect")
    p.add_argument("--f", help="JSON list, lower box bound")
    p.add_argument("--g", help="JSON list, upper box bound")
    p.add_argument("--alpha", type=int)
    p.add_argument("--beta", type=int)
    p.set_defaults(func=cmd_gpoly)

    p = sub.add_parser("report", parents=[common], help="agreement experiments as CSV and PNG")
    p.add_argument("--out", default="report")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=40, help="instances per problem kind")
    p.add_argument("--lemma-count", type=int, default=200)
    p.add_argument("--gamma-max", type=int, default=3)
    p.set_defaults(func=cmd_report)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return INPUT
    except ResourceError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return RESOURCE
    except InconsistencyError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())

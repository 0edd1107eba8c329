"""Command-line interface.

Exit codes: 0 success, 1 usage or input-parsing problem, 2 domain error
(bad denominators, identity elements, dependent bases where forbidden),
3 check-suite failure.  Output goes to stdout in the format picked by
--format; warnings go to stderr.  For a fixed argv and seed the stdout
bytes are identical run to run, threads or not.

JSON payloads passed to --trace/--element/--points/--sequence may be
given inline or as @path to read a file.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from fractions import Fraction

from .checks import run_checks
from .dynamics import (
    SolenoidPoint,
    SystemParams,
    enumerate_minimal_sets,
    fixed_points,
    lift_sequence,
    stabilizer_lattice,
)
from .errors import XpqError
from .exact import QmodZ, multiplicative_dependence_witness
from .groupalg import GroupAlgebraElement, icc_witness
from .ktheory import k_theory_of_group, mult_map_ker_coker
from .primspace import closure, limit_set
from .serialize import (
    algebra_element_from_json,
    algebra_element_to_json,
    closed_set_to_json,
    evaluation_to_json,
    fg_ab_group_to_json,
    group_element_from_json,
    group_element_to_json,
    ktheory_result_to_json,
    moments_to_json,
    orbit_to_json,
    prim_point_from_json,
    sequence_desc_from_json,
    trace_spec_from_json,
    trace_spec_to_json,
)
from .traces import check_pq_invariance, moments, trace_eval

ENV_MAX_DENOMINATOR = "XPQ_MAX_DENOMINATOR"


class _Parser(argparse.ArgumentParser):
    # usage problems are exit code 1 here, not argparse's 2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _emit_json(payload):
    sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _load_json(text: str):
    if text.startswith("@"):
        try:
            with open(text[1:], encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ValueError(f"cannot read {text[1:]}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"bad JSON: {exc}") from None


def _params(args) -> SystemParams:
    params = SystemParams(args.p, args.q)
    if not params.mult_indep and getattr(args, "_warn_dependent", True):
        w = multiplicative_dependence_witness(args.p, args.q)
        print(
            f"warning: {args.p} and {args.q} are multiplicatively dependent "
            f"({args.p}^{w[0]} = {args.q}^{w[1]}); simplicity, trace and "
            "ideal-space statements need independence",
            file=sys.stderr,
        )
    return params


def _max_den(args, required: bool = True) -> int | None:
    if args.max_den is not None:
        bound = args.max_den
    else:
        text = os.environ.get(ENV_MAX_DENOMINATOR)
        if text is None:
            if not required:
                return None
            raise ValueError(
                f"no denominator bound: pass --max-den or set {ENV_MAX_DENOMINATOR}"
            )
        try:
            bound = int(text)
        except ValueError:
            raise ValueError(f"{ENV_MAX_DENOMINATOR}={text!r} is not an integer") from None
    if bound < 1:
        raise ValueError(f"denominator bound {bound} must be >= 1")
    return bound


def _reject_csv(args):
    if args.format == "csv":
        raise ValueError("csv output is only available for `moments` and `orbits`")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_orbits(args) -> int:
    params = _params(args)
    bound = _max_den(args)
    orbits = enumerate_minimal_sets(params, bound, threads=args.threads)
    if args.format == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["r", "size", "index", "basis_a", "basis_b", "basis_c", "points"])
        for orbit in orbits:
            (a, b), (_, c) = orbit.stabilizer.basis
            w.writerow(
                [
                    orbit.denominator,
                    orbit.size,
                    orbit.stabilizer.index,
                    a,
                    b,
                    c,
                    " ".join(str(pt.coord) for pt in orbit.points),
                ]
            )
    elif args.format == "pretty":
        print(f"minimal invariant sets for p={params.p}, q={params.q}, r <= {bound}:")
        for orbit in orbits:
            pts = ", ".join(str(pt.coord) for pt in orbit.points)
            print(f"  r={orbit.denominator}  size={orbit.size}  {{{pts}}}")
        print(f"total: {len(orbits)}")
    else:
        _emit_json(
            {
                "p": params.p,
                "q": params.q,
                "max_denominator": bound,
                "count": len(orbits),
                "orbits": [orbit_to_json(o) for o in orbits],
            }
        )
    return 0


def _cmd_stabilizer(args) -> int:
    _reject_csv(args)
    params = _params(args)
    lat = stabilizer_lattice(params, args.r)
    (a, b), (z, c) = lat.basis
    if args.format == "pretty":
        print(f"stabilizer of denominator {args.r}: basis ({a}, {b}), (0, {c}); index {lat.index}")
    else:
        _emit_json(
            {
                "p": params.p,
                "q": params.q,
                "r": args.r,
                "basis": [[a, b], [z, c]],
                "index": lat.index,
            }
        )
    return 0


def _cmd_fix(args) -> int:
    _reject_csv(args)
    params = _params(args)
    bound = _max_den(args, required=False)
    fix = fixed_points(params, (args.m, args.n), max_denominator=bound)
    listed = [str(pt.coord) for pt in fix.sample]
    if args.format == "pretty":
        print(f"|Fix({args.m}, {args.n})| = {fix.count}")
        print(f"points: {', '.join(listed) if listed else '(none listed)'}")
    else:
        _emit_json(
            {
                "p": params.p,
                "q": params.q,
                "m": args.m,
                "n": args.n,
                "count": fix.count,
                "points": listed,
                "complete": len(listed) == fix.count,
            }
        )
    return 0


def _cmd_lift(args) -> int:
    _reject_csv(args)
    params = _params(args)
    x = SolenoidPoint(QmodZ.parse(args.point))
    seq = lift_sequence(params, x, args.depth)
    listed = [str(pt.coord) for pt in seq]
    if args.format == "pretty":
        print(" -> ".join(listed))
    else:
        _emit_json({"p": params.p, "q": params.q, "point": listed[0], "depth": args.depth, "lifts": listed})
    return 0


def _cmd_trace_eval(args) -> int:
    _reject_csv(args)
    params = _params(args)
    spec = trace_spec_from_json(_load_json(args.trace), params)
    element = algebra_element_from_json(_load_json(args.element), params)
    value = trace_eval(spec, element)
    if args.format == "pretty":
        z = value.approx()
        print(f"trace value: {value}  (~ {z.real:+.6f}{z.imag:+.6f}i)")
    else:
        _emit_json(
            {
                "trace": trace_spec_to_json(spec),
                "element": algebra_element_to_json(element),
                "value": evaluation_to_json(value),
            }
        )
    return 0


def _cmd_moments(args) -> int:
    params = _params(args)
    spec = trace_spec_from_json(_load_json(args.trace), params)
    seq = moments(spec, args.n_max)
    if args.format == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["n", "re", "im", "exact"])
        for n, v in seq.items():
            z = v.approx()
            w.writerow([n, repr(z.real), repr(z.imag), str(v)])
    elif args.format == "pretty":
        print(f"moments up to +-{seq.n_max}:")
        for n, v in seq.items():
            z = v.approx()
            print(f"  n={n:+d}  {z.real:+.6f}{z.imag:+.6f}i  ({v})")
    else:
        _emit_json(moments_to_json(seq))
    return 0


def _cmd_invariance(args) -> int:
    _reject_csv(args)
    params = _params(args)
    spec = trace_spec_from_json(_load_json(args.trace), params)
    seq = moments(spec, args.n_max)
    ok = check_pq_invariance(seq, params)
    if args.format == "pretty":
        verdict = "invariant" if ok else "NOT invariant"
        print(f"moment data is {verdict} under x{params.p} and x{params.q}")
    else:
        _emit_json({"invariant": ok, "n_max": args.n_max, "trace": trace_spec_to_json(spec)})
    return 0


def _cmd_ktheory(args) -> int:
    _reject_csv(args)
    params = _params(args)
    result = k_theory_of_group(params.p, params.q)
    if args.format == "pretty":
        print(f"K0 = {result.K0}")
        print(f"K1 = {result.K1}")
        print(f"closed form = {result.closed_form}  (gcd = {result.torsion_gcd})")
        print(f"match: {result.matches}")
    else:
        _emit_json({"p": params.p, "q": params.q, **ktheory_result_to_json(result)})
    return 0


def _cmd_lemma36(args) -> int:
    _reject_csv(args)
    ker, cok = mult_map_ker_coker(args.m, args.n)
    if args.format == "pretty":
        print(f"x{args.m} on Z/{args.n}: kernel {ker}, cokernel {cok}")
    else:
        _emit_json(
            {
                "m": args.m,
                "n": args.n,
                "kernel": fg_ab_group_to_json(ker),
                "cokernel": fg_ab_group_to_json(cok),
            }
        )
    return 0


def _cmd_prim_closure(args) -> int:
    _reject_csv(args)
    data = _load_json(args.points)
    if not isinstance(data, list):
        raise ValueError("--points expects a JSON list of points")
    pts = [prim_point_from_json(entry) for entry in data]
    _emit_closed(args, closure(pts))
    return 0


def _cmd_prim_limit(args) -> int:
    _reject_csv(args)
    seq = sequence_desc_from_json(_load_json(args.sequence))
    _emit_closed(args, limit_set(seq))
    return 0


def _emit_closed(args, desc):
    payload = closed_set_to_json(desc)
    if args.format == "pretty":
        if payload["kind"] == "all":
            print("the whole space")
        elif not payload["parts"]:
            print("empty set")
        else:
            for part in payload["parts"]:
                chunk = part["part"]
                shown = "full torus" if chunk == "full" else ", ".join(
                    f"({t1}, {t2})" for t1, t2 in chunk
                )
                print(f"  orbit mod {part['orbit']['r']}: {shown}")
    else:
        _emit_json(payload)


def _cmd_icc_witness(args) -> int:
    _reject_csv(args)
    params = _params(args)
    g = group_element_from_json(_load_json(args.element), params)
    found = icc_witness(params, g, args.count)
    if args.format == "pretty":
        print(f"{len(found)} distinct conjugates of (x={g.x.to_fraction(params.p, params.q)}, m={g.m}, n={g.n})")
    else:
        _emit_json(
            {
                "element": group_element_to_json(g),
                "count": args.count,
                "conjugates": [group_element_to_json(h) for h in found],
                "distinct": len(set(found)) == len(found),
            }
        )
    return 0


def _cmd_mult_indep(args) -> int:
    _reject_csv(args)
    witness = multiplicative_dependence_witness(args.p, args.q)
    if args.format == "pretty":
        if witness is None:
            print(f"{args.p} and {args.q} are multiplicatively independent")
        else:
            print(f"{args.p}^{witness[0]} = {args.q}^{witness[1]}")
    else:
        payload = {"independent": witness is None}
        payload["witness"] = None if witness is None else {"r": witness[0], "s": witness[1]}
        _emit_json(payload)
    return 0


def _cmd_check(args) -> int:
    _reject_csv(args)
    params = _params(args)
    bound = args.max_den if args.max_den is not None else 30
    results = run_checks(
        args.suite, params, seed=args.seed, max_denominator=bound, trials=args.trials
    )
    ok = all(r.ok for r in results)
    if args.format == "pretty":
        for r in results:
            print(f"{r.suite}: {r.passed} passed, {r.failed} failed")
            for msg in r.failures:
                print(f"    FAIL {msg}")
        print("ok" if ok else "FAILED")
    else:
        _emit_json(
            {
                "ok": ok,
                "suites": [
                    {
                        "suite": r.suite,
                        "passed": r.passed,
                        "failed": r.failed,
                        "failures": r.failures,
                    }
                    for r in results
                ],
            }
        )
    return 0 if ok else 3


# ---------------------------------------------------------------------------
# parser assembly
# ---------------------------------------------------------------------------


def build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "pretty"), default="json")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    common.add_argument("--threads", type=int, default=1, help="worker threads for enumeration")

    pq = argparse.ArgumentParser(add_help=False)
    pq.add_argument("-p", type=int, required=True)
    pq.add_argument("-q", type=int, required=True)

    parser = _Parser(prog="xpq", description="exact computations for the xp, xq system")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, parents, help_, **extra):
        sp = sub.add_parser(name, parents=parents, help=help_, **extra)
        sp.set_defaults(func=func)
        return sp

    sp = add(
        "orbits", _cmd_orbits, [common, pq], "enumerate finite minimal invariant sets"
    )
    sp.add_argument("--max-den", type=int, default=None, help=f"denominator bound (default ${ENV_MAX_DENOMINATOR})")

    sp = add("stabilizer", _cmd_stabilizer, [common, pq], "stabilizer lattice of a denominator")
    sp.add_argument("-r", type=int, required=True)

    sp = add("fix", _cmd_fix, [common, pq], "fixed points of one group element")
    sp.add_argument("-m", type=int, required=True)
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("--max-den", type=int, default=None, help="bound for the listed points")

    sp = add("lift", _cmd_lift, [common, pq], "backward orbit under division by pq")
    sp.add_argument("--point", required=True, help='rational point "a/r", r coprime to pq')
    sp.add_argument("--depth", type=int, default=5)

    sp = add("trace-eval", _cmd_trace_eval, [common, pq], "evaluate a trace on an element")
    sp.add_argument("--trace", required=True, help="TraceSpec JSON (inline or @file)")
    sp.add_argument("--element", required=True, help="group algebra element JSON")

    sp = add("moments", _cmd_moments, [common, pq], "moment sequence of a trace")
    sp.add_argument("--trace", required=True, help="TraceSpec JSON (inline or @file)")
    sp.add_argument("--n-max", type=int, default=10)

    sp = add("invariance", _cmd_invariance, [common, pq], "check xp/xq-invariance of moments")
    sp.add_argument("--trace", required=True, help="TraceSpec JSON (inline or @file)")
    sp.add_argument("--n-max", type=int, default=10)

    add("ktheory", _cmd_ktheory, [common, pq], "K-theory of the group algebra")

    sp = add("lemma36", _cmd_lemma36, [common], "kernel/cokernel of xm on Z/nZ")
    sp.add_argument("-m", type=int, required=True)
    sp.add_argument("-n", type=int, required=True)

    sp = add("prim-closure", _cmd_prim_closure, [common], "closure of points in the ideal space")
    sp.add_argument("--points", required=True, help="JSON list of points (inline or @file)")

    sp = add("prim-limit", _cmd_prim_limit, [common], "limit set of a described sequence")
    sp.add_argument("--sequence", required=True, help="sequence JSON (inline or @file)")

    sp = add("icc-witness", _cmd_icc_witness, [common, pq], "distinct conjugates of an element")
    sp.add_argument("--element", required=True, help="group element JSON")
    sp.add_argument("--count", type=int, default=10)

    add("mult-indep", _cmd_mult_indep, [common, pq], "multiplicative dependence test")

    sp = add("check", _cmd_check, [common], "run property suites against the library")
    sp.add_argument(
        "suite",
        nargs="?",
        default="all",
        choices=("all", "exact", "dynamics", "groupalg", "traces", "ktheory", "primspace"),
    )
    sp.add_argument("-p", type=int, default=2)
    sp.add_argument("-q", type=int, default=3)
    sp.add_argument("--max-den", type=int, default=None)
    sp.add_argument("--trials", type=int, default=25)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except XpqError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

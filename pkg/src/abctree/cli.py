"""Command-line surface.

Subcommands:
  optcuts   optimal cut count from the closed form (needs ell = r)
  mintree   exact minimum-time tree, optionally compared to root-cuts-only
  svbwc     near-optimal cut count under harmonic decay, with candidates
  sweep     grid evaluation to CSV
  verify    run the verification suites, exit nonzero on any failure
  example   the disjoint-triangles family report

Rationals are written ``p/q`` (or a bare integer) everywhere.
Time-functions: ``one``, ``affine:a,b``, ``poly:c0,c1,...``,
``table:v0,v1,...``.  The ABC_TREE_MAX_STATES environment variable caps
the exact search's memo size (default 10**7 states).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import closed_form, instances, optimizer, svbwc, verify
from .core import (
    CutDecay,
    OptResult,
    ParameterError,
    SvbcParams,
    TimeFn,
    tree_to_dot,
)
from .rational import format_rational, parse_rational


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _rational_list(text: str) -> list[Fraction]:
    return [_rational(part) for part in text.split(",") if part]


def _time_fn(text: str) -> TimeFn:
    try:
        return TimeFn.parse(text)
    except ParameterError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _zvalues(text: str) -> list[Fraction]:
    """Either a comma list or an inclusive start:stop:step range."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise argparse.ArgumentTypeError("range must be start:stop:step")
        start, stop, step = (_rational(p) for p in parts)
        if step <= 0:
            raise argparse.ArgumentTypeError("range step must be positive")
        out = []
        z = start
        while z <= stop:
            out.append(z)
            z += step
        return out
    return _rational_list(text)


def _add_output_args(p: argparse.ArgumentParser, formats: tuple[str, ...]) -> None:
    p.add_argument("--out", default=None, help="write to this file instead of stdout")
    p.add_argument("--format", choices=formats, default=formats[0])


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _decay(name: str) -> CutDecay:
    return CutDecay(name)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="abctree",
        description="Exact calculator and verifier for an abstract branch-and-cut model.",
        epilog="Rationals are p/q or integers; see module docs for the time-function grammar.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("optcuts", help="closed-form optimal cut count (ell = r, unit time)")
    p.add_argument("--l", type=_rational, required=True, dest="ell")
    p.add_argument("--r", type=_rational, required=True)
    p.add_argument("--c", type=_rational, required=True)
    p.add_argument("--Z", type=_rational, required=True)
    _add_output_args(p, ("text", "json"))

    p = sub.add_parser("mintree", help="exact minimum-time tree")
    p.add_argument("--l", type=_rational, required=True, dest="ell")
    p.add_argument("--r", type=_rational, required=True)
    p.add_argument("--c", type=_rational, required=True)
    p.add_argument("--Z", type=_rational, required=True)
    p.add_argument("--w", type=_time_fn, default=TimeFn.one())
    p.add_argument("--decay", choices=[d.value for d in CutDecay], default="constant")
    p.add_argument(
        "--compare-root-only",
        action="store_true",
        help="also report the best tree with all cuts at the root",
    )
    _add_output_args(p, ("text", "dot", "json"))

    p = sub.add_parser("svbwc", help="near-optimal cut count under harmonic decay (ell = r)")
    p.add_argument("--r", type=_rational, required=True)
    p.add_argument("--c", type=_rational, required=True)
    p.add_argument("--Z", type=_rational, required=True)
    _add_output_args(p, ("text", "json"))

    p = sub.add_parser("sweep", help="evaluate a parameter grid to CSV")
    p.add_argument("--l", type=_rational_list, required=True, dest="ell")
    p.add_argument("--r", type=_rational_list, required=True)
    p.add_argument("--c", type=_rational_list, required=True)
    p.add_argument("--Z", type=_zvalues, required=True, help="comma list or start:stop:step")
    p.add_argument("--w", type=_time_fn, default=TimeFn.one())
    p.add_argument("--decay", choices=[d.value for d in CutDecay], default="constant")
    _add_output_args(p, ("csv",))

    p = sub.add_parser("verify", help="run the verification suites")
    p.add_argument("--only", action="append", default=None, metavar="NAME")
    p.add_argument("--list", action="store_true", help="list check names and exit")
    p.add_argument("--seed", type=int, default=20260810)

    p = sub.add_parser("example", help="disjoint-triangles family report")
    p.add_argument("--m", type=int, required=True, help="number of triangles (>= 1)")
    _add_output_args(p, ("text", "json"))

    return parser


def _opt_result_dict(res: OptResult) -> dict:
    return {
        "tau": format_rational(res.tau),
        "size": res.size,
        "num_cuts": res.num_cuts,
        "branch_depth": res.branch_depth,
    }


def _cmd_optcuts(args) -> int:
    if args.ell != args.r:
        raise ParameterError("optcuts requires --l equal to --r")
    answer = closed_form.optimal_cuts_equal_lr(args.Z, args.r, args.c)
    if args.format == "json":
        _emit(args, json.dumps({
            "k_star": answer.k_star,
            "case": answer.case_taken.value,
            "min_size_lower_bound": answer.min_size_lower_bound,
        }, sort_keys=True) + "\n")
    else:
        _emit(
            args,
            f"k*={answer.k_star} size>={answer.min_size_lower_bound} "
            f"case={answer.case_taken.value}\n",
        )
    return 0


def _cmd_mintree(args) -> int:
    params = SvbcParams(ell=args.ell, r=args.r, c=args.c, decay=_decay(args.decay))
    best = optimizer.min_tree_time(params, args.w, args.Z)
    root_only = None
    if args.compare_root_only:
        root_only = optimizer.min_tree_time_root_cuts_only(params, args.w, args.Z)
    if args.format == "dot":
        _emit(args, tree_to_dot(best.witness))
        return 0
    if args.format == "json":
        payload = {"min": _opt_result_dict(best)}
        if root_only is not None:
            payload["root_only"] = _opt_result_dict(root_only)
        _emit(args, json.dumps(payload, sort_keys=True) + "\n")
        return 0
    line = (
        f"tau={format_rational(best.tau)} size={best.size} "
        f"cuts={best.num_cuts} depth={best.branch_depth}"
    )
    if root_only is not None:
        line += f" root-only={format_rational(root_only.tau)}"
    _emit(args, line + "\n")
    return 0


def _cmd_svbwc(args) -> int:
    plan = svbwc.approx_cut_count(args.Z, args.r, args.c)
    if args.format == "json":
        _emit(args, json.dumps({
            "chosen_delta": plan.chosen_delta,
            "num_cuts": plan.num_cuts,
            "tree_size": plan.tree_size,
            "candidates": [list(c) for c in plan.candidates],
        }, sort_keys=True) + "\n")
        return 0
    table = " ".join(f"({d},{k},{s})" for d, k, s in plan.candidates)
    _emit(
        args,
        f"candidates (delta,cuts,size): {table}\n"
        f"chosen delta={plan.chosen_delta} cuts={plan.num_cuts} size={plan.tree_size}\n",
    )
    return 0


_CSV_COLUMNS = (
    "ell,r,c,decay,Z,w,k_star,case,dp_tau,dp_size,dp_cuts,root_only_tau,ratio"
)


def _cmd_sweep(args) -> int:
    decay = _decay(args.decay)
    rows = []
    skipped = 0
    grid = sorted(
        {(ell, r, c, z) for ell in args.ell for r in args.r for c in args.c for z in args.Z}
    )
    for ell, r, c, z in grid:
        if ell > r:
            skipped += 1
            continue
        params = SvbcParams(ell=ell, r=r, c=c, decay=decay)
        best = optimizer.min_tree_time(params, args.w, z)
        root_only = optimizer.min_tree_time_root_cuts_only(params, args.w, z)
        if ell == r and 0 < c <= r and decay is CutDecay.CONSTANT:
            answer = closed_form.optimal_cuts_equal_lr(z, r, c)
            k_star, case = str(answer.k_star), answer.case_taken.value
        else:
            k_star, case = "", ""
        rows.append(",".join((
            format_rational(ell),
            format_rational(r),
            format_rational(c),
            decay.value,
            format_rational(z),
            args.w.spec_string(),
            k_star,
            case,
            format_rational(best.tau),
            str(best.size),
            str(best.num_cuts),
            format_rational(root_only.tau),
            format_rational(root_only.tau / best.tau),
        )))
    if skipped:
        print(f"skipped {skipped} grid points with ell > r", file=sys.stderr)
    _emit(args, "\n".join([_CSV_COLUMNS, *rows]) + "\n")
    return 0


def _cmd_verify(args) -> int:
    if args.list:
        for name in verify.CHECKS:
            print(name)
        return 0
    names = None
    if args.only:
        names = [n for n in verify.CHECKS if any(pat in n for pat in args.only)]
        if not names:
            print(f"no checks match {args.only}", file=sys.stderr)
            return 2
    results = verify.run_checks(names, seed=args.seed)
    failed = 0
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        failed += not res.passed
        print(f"[{status}] {res.name}: {res.detail}")
    print(f"passed {len(results) - failed}/{len(results)} checks")
    return 1 if failed else 0


def _cmd_example(args) -> int:
    inst = instances.triangle_instance(args.m)
    params, bound = instances.derive_model(args.m)
    answer = instances.optimal_plan(args.m)
    branch_only = instances.pure_branching_size(args.m)
    if args.format == "json":
        _emit(args, json.dumps({
            "m": inst.m,
            "lp_value": format_rational(inst.lp_value),
            "ip_value": format_rational(inst.ip_value),
            "gap": format_rational(inst.gap),
            "ell": format_rational(params.ell),
            "r": format_rational(params.r),
            "c": format_rational(params.c),
            "Z": format_rational(bound),
            "k_star": answer.k_star,
            "optimal_size": answer.min_size_lower_bound,
            "pure_branching_size": branch_only,
        }, sort_keys=True) + "\n")
        return 0
    _emit(args, (
        f"m={inst.m} triangles: relaxation {format_rational(inst.lp_value)}, "
        f"optimum {format_rational(inst.ip_value)}, gap {format_rational(inst.gap)}\n"
        f"model: ell=r=c=1/2, Z={format_rational(bound)}\n"
        f"k*={answer.k_star} optimal size={answer.min_size_lower_bound} "
        f"pure-branching size={branch_only}\n"
    ))
    return 0


_COMMANDS = {
    "optcuts": _cmd_optcuts,
    "mintree": _cmd_mintree,
    "svbwc": _cmd_svbwc,
    "sweep": _cmd_sweep,
    "verify": _cmd_verify,
    "example": _cmd_example,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ParameterError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

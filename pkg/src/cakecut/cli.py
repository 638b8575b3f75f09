"""Command-line interface.

One deterministic batch tool over the JSON formats: instances and
divisions go in and out as files, human-readable one-line summaries go
to standard output, and machine-readable artifacts are written with
canonical formatting so reruns are byte-identical.

Exit codes are a stable contract:
  0   success
  2   validation or precondition failure (message names file and field)
  3   verification failure (an exact check found a violated demand)
  64  usage error (unknown subcommand or flag)

Subcommands:
  solve        divide an instance within the cut bound, optional trace
  verify       exact check of a division against an instance
  pair         two-agent division, optional coverage certificate
  baseline     classical procedures (sliding knife, common denominator)
  generate     instance families (lowerbound | random)
  oracle       exhaustive minimal-cut search over a finite grid
  conjecture   balanced two-arc partition search | random campaign
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .baseline import common_denominator, sliding_knife_equal
from .conjecture import search_witness, stress_campaign
from .division import cut_count_bound, verify
from .errors import BudgetError, PreconditionError, ValidationError
from .instances import LowerBoundParams, lower_bound_instance, oracle_min_cuts, random_instance
from .measure import ONE
from .pair import circle_lemma_certified, solve_pair
from .serialize import (
    division_from_json,
    division_to_obj,
    dumps_canonical,
    dumps_compact,
    format_rational,
    instance_from_json,
    instance_to_obj,
    parse_rational,
)
from .solver import check_trace, solve

CERTIFICATE_WARN_DENOMINATOR = 10**6


class _Parser(argparse.ArgumentParser):
    """argparse with the conventional 64 exit for usage errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(64, f"{self.prog}: error: {message}\n")


def _read_instance(path: str, strict: bool = True):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ValidationError(path, f"cannot read: {exc}") from None
    try:
        return instance_from_json(text, strict=strict)
    except ValidationError as exc:
        raise ValidationError(f"{path}:{exc.field}", str(exc).split(": ", 1)[1]) from None


def _read_division(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ValidationError(path, f"cannot read: {exc}") from None
    try:
        return division_from_json(text)
    except ValidationError as exc:
        raise ValidationError(f"{path}:{exc.field}", str(exc).split(": ", 1)[1]) from None


def _write(path: str, text: str):
    Path(path).write_text(text)


def _cmd_solve(args) -> int:
    inst = _read_instance(args.infile)
    division, trace = solve(inst)
    _write(args.out, dumps_canonical(division_to_obj(division)))
    if args.trace:
        _write(args.trace, dumps_canonical(trace.to_obj()))
    if args.check:
        report = verify(inst, division)
        replay = check_trace(inst, trace)
        if not report.valid or not replay:
            print(f"solve: check FAILED ({replay.reason or 'invalid division'})")
            return 3
    bound = cut_count_bound(inst.n)
    print(f"solve: n={inst.n} cuts={division.cut_count} bound={bound} -> {args.out}")
    return 0


def _cmd_verify(args) -> int:
    inst = _read_instance(args.infile)
    division = _read_division(args.div)
    report = verify(inst, division)
    obj = {
        "masses": [format_rational(m) for m in report.masses],
        "surpluses": [format_rational(s) for s in report.surpluses],
        "cut_count": report.cut_count,
        "valid": report.valid,
    }
    if args.out:
        _write(args.out, dumps_canonical(obj))
    if report.valid:
        print(f"verify: valid cuts={report.cut_count}")
        return 0
    worst = report.worst_agent()
    print(f"verify: INVALID agent={worst} surplus={report.surpluses[worst]}")
    return 3


def _cmd_pair(args) -> int:
    inst = _read_instance(args.infile)
    if inst.n != 2:
        raise PreconditionError(f"pair expects a 2-agent instance, got n={inst.n}")
    division = solve_pair(inst)
    _write(args.out, dumps_canonical(division_to_obj(division)))
    if args.explain:
        share = ONE - inst.demands[1]
        if share.denominator > CERTIFICATE_WARN_DENOMINATOR:
            print(
                f"pair: warning: certificate enumerates {share.denominator} candidate arcs; "
                "this may take a long time",
                file=sys.stderr,
            )
        arc, cert = circle_lemma_certified(inst.measures[1], inst.measures[0], share)
        obj = cert.to_obj()
        obj["arc"] = {"start": format_rational(arc.start), "length": format_rational(arc.length)}
        _write(args.explain, dumps_canonical(obj))
    print(f"pair: cuts={division.cut_count} -> {args.out}")
    return 0


def _cmd_baseline(args) -> int:
    inst = _read_instance(args.infile)
    if args.method == "sliding":
        division = sliding_knife_equal(inst)
    else:
        division = common_denominator(inst)
    _write(args.out, dumps_canonical(division_to_obj(division)))
    print(f"baseline: method={args.method} cuts={division.cut_count} -> {args.out}")
    return 0


def _cmd_generate(args) -> int:
    if args.family == "lowerbound":
        if args.n is None:
            raise ValidationError("--n", "lowerbound family needs an agent count")
        if (args.epsilon is None) != (args.delta is None):
            raise ValidationError("--epsilon/--delta", "give both or neither")
        if args.epsilon is None:
            params = LowerBoundParams.practical(args.n)
        else:
            params = LowerBoundParams(
                args.n,
                parse_rational(args.epsilon, "--epsilon"),
                parse_rational(args.delta, "--delta"),
            )
        inst = lower_bound_instance(params)
        detail = f"epsilon={params.epsilon} delta={params.delta}"
    else:
        if args.n is None or args.seed is None:
            raise ValidationError("--n/--seed", "random family needs an agent count and a seed")
        inst = random_instance(args.n, args.segments, seed=args.seed)
        detail = f"segments<={args.segments} seed={args.seed}"
    _write(args.out, dumps_canonical(instance_to_obj(inst)))
    print(f"generate: family={args.family} n={inst.n} {detail} -> {args.out}")
    return 0


def _cmd_oracle(args) -> int:
    inst = _read_instance(args.infile)
    result = oracle_min_cuts(
        inst, max_cuts=args.max_cuts, grid_refine=args.refine, budget=args.budget
    )
    _write(args.out, dumps_canonical(result.to_obj()))
    if result.feasible:
        print(f"oracle: best_cuts={result.best_cuts} grid={result.grid_size} -> {args.out}")
    else:
        print(f"oracle: infeasible-on-grid (evidence only) grid={result.grid_size} -> {args.out}")
    return 0


def _cmd_conjecture_search(args) -> int:
    inst = _read_instance(args.infile)
    witness = search_witness(inst, cell_refine=args.refine, budget=args.budget)
    if witness is None:
        obj = {"outcome": "certified-none", "instance": instance_to_obj(inst)}
        _write(args.out, dumps_canonical(obj))
        print(f"conjecture search: certified-none (candidate counterexample) -> {args.out}")
        return 0
    _write(args.out, dumps_canonical({"outcome": "witness", "witness": witness.to_obj()}))
    arc = witness.arc
    print(
        f"conjecture search: witness P={list(witness.p_set)} arc=[{arc.start},+{arc.length}] -> {args.out}"
    )
    return 0


def _cmd_conjecture_campaign(args) -> int:
    records = stress_campaign(
        n=args.n,
        count=args.count,
        seed=args.seed,
        budget=args.budget,
        cell_refine=args.refine,
    )
    lines = [dumps_compact(r) for r in records]
    _write(args.out, "\n".join(lines) + "\n")
    hits = sum(1 for r in records if r["outcome"] == "witness")
    none = [r for r in records if r["outcome"] == "certified-none"]
    if none:
        outdir = Path(args.counterexamples or (str(Path(args.out).with_suffix("")) + "_counterexamples"))
        outdir.mkdir(parents=True, exist_ok=True)
        for r in none:
            target = outdir / f"counterexample_{r['index']:04d}.json"
            target.write_text(dumps_canonical(r["instance"]))
        print(f"conjecture campaign: {len(none)} candidate counterexamples -> {outdir}")
    print(f"conjecture campaign: {hits}/{len(records)} witnesses -> {args.out}")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="cakecut", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=f"cakecut {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="divide an instance within the cut bound")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--trace", help="write the recursion trace as JSON")
    p.add_argument("--check", action="store_true", help="replay the trace and re-verify before exiting")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("verify", help="exactly check a division against an instance")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--div", required=True)
    p.add_argument("--out", help="write the verification report as JSON")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("pair", help="two-agent division via the circle argument")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--explain", help="write the coverage certificate as JSON")
    p.set_defaults(func=_cmd_pair)

    p = sub.add_parser("baseline", help="classical division procedures")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--method", choices=("sliding", "denominator"), required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_baseline)

    p = sub.add_parser("generate", help="write an instance from a family")
    p.add_argument("--family", choices=("lowerbound", "random"), required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--epsilon", help="support half-width (lowerbound)")
    p.add_argument("--delta", help="big agent slack (lowerbound)")
    p.add_argument("--segments", type=int, default=4, help="max density segments (random)")
    p.add_argument("--seed", type=int, help="randomness seed (random; required)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("oracle", help="exhaustive minimal-cut search on a grid")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--max-cuts", dest="max_cuts", type=int, required=True)
    p.add_argument("--refine", type=int, default=1, help="equal subdivisions per grid cell")
    p.add_argument("--budget", type=int, default=5_000_000)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("conjecture", help="balanced two-arc partition tools")
    csub = p.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    c = csub.add_parser("search", help="exact witness search on one instance")
    c.add_argument("--in", dest="infile", required=True)
    c.add_argument("--out", required=True)
    c.add_argument("--refine", type=int, default=1)
    c.add_argument("--budget", type=int)
    c.set_defaults(func=_cmd_conjecture_search)

    c = csub.add_parser("campaign", help="witness search over random instances")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--count", type=int, required=True)
    c.add_argument("--seed", type=int, required=True)
    c.add_argument("--budget", type=int)
    c.add_argument("--refine", type=int, default=1)
    c.add_argument("--counterexamples", help="directory for certified-none instances")
    c.add_argument("--out", required=True)
    c.set_defaults(func=_cmd_conjecture_campaign)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValidationError, PreconditionError, BudgetError) as exc:
        print(f"cakecut: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())

"""Command-line front end.

Subcommands: ``fmt`` (canonicalize a game file), ``analyze``, ``nash``,
``optimum``, ``dynamics``, ``potential``, ``certify``, ``gen``,
``export-lp``, ``verify-paper``.  Exit codes: 0 on success / all checks
passing, 1 when a checked property fails, 2 on malformed input or an
enumeration past the budget.

Profiles on the command line are comma-separated 1-based strategy indices,
e.g. ``--start 1,1,2``.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import certificates, equilibria, instances, potentials, verify
from .contexts import ContextClassError, NonNormalizableError
from .game import Game, Profile, social_cost
from .gamefile import GameFileError, emit_game, parse_game_file
from .numerics import format_rational, qeval, rational

EXIT_OK = 0
EXIT_VIOLATED = 1
EXIT_INPUT = 2


class InputError(Exception):
    pass


def _load(path: str):
    try:
        return parse_game_file(path)
    except FileNotFoundError:
        raise InputError(f"{path}: no such file")
    except GameFileError as exc:
        raise InputError(f"{path}: {exc}")


def _parse_profile(text: str, game: Game) -> Profile:
    try:
        entries = [int(tok) for tok in text.split(",")]
    except ValueError:
        raise InputError(f"profile {text!r} is not a comma-separated index list")
    if len(entries) != game.n:
        raise InputError(f"profile has {len(entries)} entries for {game.n} players")
    internal = tuple(x - 1 for x in entries)
    try:
        return game.validate_profile(internal)
    except ValueError as exc:
        raise InputError(str(exc))


def _profile_text(profile: Profile) -> str:
    return ",".join(str(x + 1) for x in profile)


def _rational_arg(text: str, what: str) -> Fraction:
    try:
        return rational(text)
    except (ValueError, ZeroDivisionError, TypeError):
        raise InputError(f"{what} {text!r} is not a rational (use p/q or p)")


def cmd_fmt(args) -> int:
    game, ctx = _load(args.path)
    sys.stdout.write(emit_game(game, ctx))
    return EXIT_OK


def cmd_analyze(args) -> int:
    game, ctx = _load(args.path)
    try:
        report = equilibria.ratios(game, ctx, args.budget)
    except equilibria.BudgetExceededError as exc:
        raise InputError(str(exc))
    print(f"profiles: {report.profile_count}")
    print(f"NE: {len(report.ne_list)}")
    for p in report.ne_list:
        print(f"  ne: {_profile_text(p)} value {format_rational(social_cost(game, p))}")
    print(f"optimum: {_profile_text(report.opt_profile)} value {format_rational(report.opt_value)}")
    if report.degenerate:
        print("PoA: degenerate (optimum is zero)")
        print("PoS: degenerate (optimum is zero)")
    elif not report.ne_list:
        print("PoA: undefined (no NE)")
        print("PoS: undefined (no NE)")
    else:
        print(f"PoA: {format_rational(report.poa)} ~ {qeval(report.poa, 30)}")
        print(f"PoS: {format_rational(report.pos)} ~ {qeval(report.pos, 30)}")
    if args.out:
        from . import reporting

        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        rows = []
        ne_set = set(report.ne_list)
        for idx, p in enumerate(game.profiles()):
            rows.append({
                "index": idx,
                "profile": _profile_text(p),
                "social_cost": format_rational(social_cost(game, p)),
                "is_ne": int(p in ne_set),
            })
        reporting.write_analysis_csv(outdir / "analysis.csv", rows)
        if report.profile_count <= 4096:
            reporting.render_profile_costs(outdir / "profile_costs.png", game, report)
        print(f"report written to {outdir}")
    return EXIT_OK


def cmd_nash(args) -> int:
    game, ctx = _load(args.path)
    try:
        ne = equilibria.enumerate_nash(game, ctx, args.budget)
    except equilibria.BudgetExceededError as exc:
        raise InputError(str(exc))
    print(f"NE: {len(ne)}")
    for p in ne:
        print(_profile_text(p))
    return EXIT_OK


def cmd_optimum(args) -> int:
    game, _ctx = _load(args.path)
    try:
        profile, value = equilibria.social_optimum(game, args.budget)
    except equilibria.BudgetExceededError as exc:
        raise InputError(str(exc))
    print(f"optimum: {_profile_text(profile)} value {format_rational(value)}")
    return EXIT_OK


def cmd_dynamics(args) -> int:
    game, ctx = _load(args.path)
    start = _parse_profile(args.start, game)
    try:
        outcome = equilibria.best_response_dynamics(
            game, ctx, start, args.policy, args.max_steps
        )
    except ValueError as exc:
        raise InputError(str(exc))
    print(f"start: {_profile_text(start)}")
    for step, move in enumerate(outcome.moves, start=1):
        i, old, new, delta = move
        print(
            f"step {step}: player {i + 1} strategy {old + 1} -> {new + 1} "
            f"(improves by {format_rational(delta)}) reaching "
            f"{_profile_text(outcome.profiles[step])}"
        )
    print(f"outcome: {outcome.kind}")
    if outcome.kind == "cycle":
        print(f"cycle: {' -> '.join(_profile_text(p) for p in outcome.cycle)}")
    elif outcome.kind == "converged":
        print(f"equilibrium: {_profile_text(outcome.final)}")
    return EXIT_OK


def cmd_potential(args) -> int:
    game, ctx = _load(args.path)
    kind = "restricted_symmetric" if args.kind == "restricted-symmetric" else "gamma_v"
    if args.profile:
        profile = _parse_profile(args.profile, game)
        try:
            if kind == "restricted_symmetric":
                value = potentials.phi_restricted_symmetric(game, ctx, profile)
            else:
                levels = ctx.altruism_levels
                if levels is None:
                    raise InputError("context rows are not in single-level form")
                value = potentials.phi_gamma_v(game, levels, profile)
        except (ContextClassError, NonNormalizableError) as exc:
            raise InputError(str(exc))
        print(f"potential({_profile_text(profile)}) = {format_rational(value)}")
        return EXIT_OK
    try:
        witness = potentials.check_exact_potential(game, ctx, kind, args.budget)
    except (ContextClassError, NonNormalizableError) as exc:
        raise InputError(str(exc))
    except equilibria.BudgetExceededError as exc:
        raise InputError(str(exc))
    if witness is None:
        print("exact: potential change equals cost change for every deviation")
        return EXIT_OK
    print(
        f"violated: profile {_profile_text(witness.profile)} player {witness.player + 1} "
        f"strategy {witness.strategy + 1}: potential change "
        f"{format_rational(witness.phi_change)} vs cost change "
        f"{format_rational(witness.cost_change)}"
    )
    return EXIT_VIOLATED


def cmd_certify(args) -> int:
    kmax, omax = args.grid
    if args.which == "poa173":
        result = certificates.check_poa_grid_17_3(kmax, omax, jobs=args.jobs)
        label = "anarchy certificate 17/3"
    elif args.which == "gammav-pos":
        v = _rational_arg(args.v, "altruism level")
        try:
            result = certificates.check_gamma_v_pos_certificate(v, kmax, omax, jobs=args.jobs)
        except ValueError as exc:
            raise InputError(str(exc))
        label = f"stability certificate at v = {v}"
    else:
        vbar = _rational_arg(args.vbar, "upper level")
        vund = _rational_arg(args.vund, "lower level")
        try:
            result = certificates.check_gamma_v_poa_certificate(
                vbar, vund, kmax, omax, jobs=args.jobs
            )
        except ValueError as exc:
            raise InputError(str(exc))
        label = f"anarchy certificate at vbar = {vbar}, vund = {vund}"
    if result.ok:
        print(f"PASS {label}: {result.cells} grid cells verified exactly")
        return EXIT_OK
    print(f"FAIL {label}: counterexample {result.counterexample}")
    return EXIT_VIOLATED


def cmd_gen(args) -> int:
    try:
        spec = instances.InstanceSpec(
            family=args.family,
            h=args.h,
            n1=args.n1,
            n2=args.n2,
            delta=_rational_arg(args.delta, "delta"),
            v=_rational_arg(args.v, "altruism level"),
            seed=args.seed,
            n=args.n,
            max_strategies=args.max_strategies,
            m=args.m,
            coeff_bound=args.coeff_bound,
            ctx_kind=args.ctx_kind,
        )
        generated = spec.generate()
    except ValueError as exc:
        raise InputError(str(exc))
    game, ctx = generated[0], generated[1]
    text = emit_game(game, ctx)
    if args.output == "-":
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text, encoding="utf-8")
        print(f"wrote {args.family} to {args.output} "
              f"(players {game.n}, resources {game.m})")
    if len(generated) == 4:
        print(f"K: {_profile_text(generated[2])}")
        print(f"O: {_profile_text(generated[3])}")
    return EXIT_OK


def cmd_export_lp(args) -> int:
    game, ctx = _load(args.path)
    k_prof = _parse_profile(args.profiles[0], game)
    o_prof = _parse_profile(args.profiles[1], game)
    if args.form == "general":
        lp = (
            certificates.build_dual(game, ctx, k_prof, o_prof)
            if args.dual
            else certificates.build_primal(game, ctx, k_prof, o_prof)
        )
    else:
        levels = ctx.altruism_levels
        if levels is None or len(set(levels)) != 1:
            raise InputError("potential form needs a uniform single-level context")
        v = levels[0]
        lp = (
            certificates.build_dual_potential(game, v, k_prof, o_prof)
            if args.dual
            else certificates.build_primal_potential(game, v, k_prof, o_prof)
        )
    text = certificates.export_lp(lp)
    if args.output == "-":
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text, encoding="utf-8")
        print(f"wrote {lp.name} ({len(lp.variables)} variables, "
              f"{len(lp.constraints)} constraints) to {args.output}")
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    kmax, omax = args.grid
    results = verify.verify_paper(
        kmax=kmax,
        omax=omax,
        jobs=args.jobs,
        sweep_count=args.sweep,
        empirical_count=args.empirical,
    )
    for result in results:
        print(result.line())
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} sections passed")
    if args.out:
        from . import reporting

        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        reporting.write_check_csv(outdir / "report.csv", results)
        reporting.render_certificate_bounds(outdir / "certificate_bounds.png")
        reporting.render_tree_ratio(outdir / "tree_ratio.png")
        print(f"report written to {outdir}")
    return EXIT_VIOLATED if failed else EXIT_OK


def _add_budget(parser) -> None:
    parser.add_argument(
        "--budget", type=int, default=equilibria.DEFAULT_BUDGET,
        help="profile enumeration budget (refuses, never samples)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="congames",
        description="Exact analysis of linear congestion games with altruism matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fmt", help="parse a game file and print its canonical form")
    p.add_argument("path")
    p.set_defaults(func=cmd_fmt)

    p = sub.add_parser("analyze", help="equilibria, optimum, and inefficiency ratios")
    p.add_argument("path")
    _add_budget(p)
    p.add_argument("--out", help="directory for analysis.csv and figures")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("nash", help="list all pure equilibria")
    p.add_argument("path")
    _add_budget(p)
    p.set_defaults(func=cmd_nash)

    p = sub.add_parser("optimum", help="social optimum by exact enumeration")
    p.add_argument("path")
    _add_budget(p)
    p.set_defaults(func=cmd_optimum)

    p = sub.add_parser("dynamics", help="best-response dynamics with cycle detection")
    p.add_argument("path")
    p.add_argument("--start", required=True, help="profile, e.g. 1,1,2")
    p.add_argument(
        "--policy", choices=("first-improver", "best-improver"), default="first-improver"
    )
    p.add_argument("--max-steps", type=int, default=10**4)
    p.set_defaults(func=cmd_dynamics)

    p = sub.add_parser("potential", help="potential value or exactness sweep")
    p.add_argument("path")
    p.add_argument(
        "--kind", choices=("restricted-symmetric", "gamma-v"), default="restricted-symmetric"
    )
    p.add_argument("--profile", help="print the potential of one profile instead")
    _add_budget(p)
    p.set_defaults(func=cmd_potential)

    p = sub.add_parser("certify", help="grid-check a closed-form dual certificate")
    p.add_argument("which", choices=("poa173", "gammav-pos", "gammav-poa"))
    p.add_argument("--grid", nargs=2, type=int, default=(100, 100), metavar=("KMAX", "OMAX"))
    p.add_argument("--v", default="0", help="altruism level for gammav-pos")
    p.add_argument("--vbar", default="0", help="largest level for gammav-poa")
    p.add_argument("--vund", default="0", help="smallest level for gammav-poa")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("gen", help="generate a benchmark instance")
    p.add_argument("family", choices=instances.FAMILIES)
    p.add_argument("-o", "--output", default="-", help="output path, - for stdout")
    p.add_argument("--h", type=int, default=1, help="tree height parameter")
    p.add_argument("--n1", type=int, default=2)
    p.add_argument("--n2", type=int, default=1)
    p.add_argument("--delta", default="1/1000")
    p.add_argument("--v", default="0", help="uniform altruism level")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=3, help="players (random family)")
    p.add_argument("--m", type=int, default=5, help="resources (random family)")
    p.add_argument("--max-strategies", type=int, default=2)
    p.add_argument("--coeff-bound", type=int, default=10)
    p.add_argument("--ctx-kind", choices=instances.CTX_KINDS, default="restricted_symmetric")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("export-lp", help="write the ratio program for a profile pair")
    p.add_argument("path")
    p.add_argument(
        "--profiles", nargs=2, required=True, metavar=("K", "O"),
        help="equilibrium-side and optimum-side profiles",
    )
    p.add_argument("--form", choices=("general", "potential"), default="general")
    p.add_argument("--dual", action="store_true", help="export the dual instead")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_export_lp)

    p = sub.add_parser("verify-paper", help="run the full verification suite")
    p.add_argument("--grid", nargs=2, type=int, default=(100, 100), metavar=("KMAX", "OMAX"))
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--sweep", type=int, default=100, help="random instances per potential sweep")
    p.add_argument("--empirical", type=int, default=200, help="instances for the 17/3 sweep")
    p.add_argument("--out", help="directory for report.csv and figures")
    p.set_defaults(func=cmd_verify_paper)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

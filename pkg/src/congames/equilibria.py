"""Best responses, pure Nash equilibria, optima, inefficiency ratios, dynamics.

Everything here enumerates exactly: the profile space is walked in
mixed-radix order (player 0 most significant) and an explicit budget guards
against accidental combinatorial explosions.  Best-response dynamics take
only strictly improving moves, with deterministic tie-breaking, so cycle
tests are reproducible run to run.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .contexts import SocialContext
from .game import (
    Game,
    Profile,
    apply_move,
    congestion,
    congestion_after_move,
    deviation_delta,
    social_cost,
)

DEFAULT_BUDGET = 10**7


class BudgetExceededError(RuntimeError):
    """The requested enumeration is larger than the configured budget."""


Move = tuple[int, int, int, Fraction]  # player, old strategy, new strategy, delta


@dataclass(frozen=True)
class DynamicsOutcome:
    kind: str  # "converged" | "cycle" | "truncated"
    start: Profile
    moves: tuple[Move, ...]
    profiles: tuple[Profile, ...]  # start plus the profile after each move
    final: Profile
    cycle: tuple[Profile, ...] = ()       # repeating profile segment, cycle only
    cycle_moves: tuple[Move, ...] = ()    # the moves around that segment


@dataclass(frozen=True)
class AnalysisReport:
    profile_count: int
    ne_list: tuple[Profile, ...]
    opt_profile: Profile
    opt_value: Fraction
    poa: Optional[Fraction]   # None when no equilibrium exists or degenerate
    pos: Optional[Fraction]
    degenerate: bool          # optimum has zero social cost


def _check_budget(size: int, budget: int, what: str) -> None:
    if size > budget:
        raise BudgetExceededError(f"{what} needs {size} evaluations, budget is {budget}")


def best_responses(game: Game, ctx: SocialContext, profile: Profile, i: int) -> tuple[int, ...]:
    """All strategy indices minimizing player i's weighted cost, current play included."""
    counts = congestion(game, profile)
    deltas = [
        deviation_delta(game, ctx, profile, i, t, counts)
        for t in range(len(game.strategies[i]))
    ]
    best = max(deltas)
    return tuple(t for t, d in enumerate(deltas) if d == best)


def is_pure_nash(
    game: Game, ctx: SocialContext, profile: Profile
) -> tuple[bool, Optional[Move]]:
    """True iff no strictly improving unilateral deviation exists.

    On failure returns the first improving (player, old, new, delta) in
    scan order as a witness.
    """
    counts = congestion(game, profile)
    for i in range(game.n):
        for t in range(len(game.strategies[i])):
            if t == profile[i]:
                continue
            delta = deviation_delta(game, ctx, profile, i, t, counts)
            if delta > 0:
                return False, (i, profile[i], t, delta)
    return True, None


def enumerate_nash(
    game: Game, ctx: SocialContext, budget: int = DEFAULT_BUDGET
) -> tuple[Profile, ...]:
    _check_budget(game.profile_count, budget, "equilibrium enumeration")
    return tuple(p for p in game.profiles() if is_pure_nash(game, ctx, p)[0])


def social_optimum(game: Game, budget: int = DEFAULT_BUDGET) -> tuple[Profile, Fraction]:
    """Lexicographically first profile with minimum social cost."""
    _check_budget(game.profile_count, budget, "optimum search")
    best_profile: Optional[Profile] = None
    best_value: Optional[Fraction] = None
    for p in game.profiles():
        value = social_cost(game, p)
        if best_value is None or value < best_value:
            best_profile, best_value = p, value
    assert best_profile is not None and best_value is not None
    return best_profile, best_value


def ratios(game: Game, ctx: SocialContext, budget: int = DEFAULT_BUDGET) -> AnalysisReport:
    """Full report: equilibria, optimum, and the worst/best equilibrium ratios."""
    ne = enumerate_nash(game, ctx, budget)
    opt_profile, opt_value = social_optimum(game, budget)
    degenerate = opt_value == 0
    poa = pos = None
    if ne and not degenerate:
        values = [social_cost(game, p) for p in ne]
        poa = max(values) / opt_value
        pos = min(values) / opt_value
    return AnalysisReport(
        profile_count=game.profile_count,
        ne_list=ne,
        opt_profile=opt_profile,
        opt_value=opt_value,
        poa=poa,
        pos=pos,
        degenerate=degenerate,
    )


def _first_improvement(game, ctx, profile, counts) -> Optional[Move]:
    for i in range(game.n):
        for t in range(len(game.strategies[i])):
            if t == profile[i]:
                continue
            delta = deviation_delta(game, ctx, profile, i, t, counts)
            if delta > 0:
                return (i, profile[i], t, delta)
    return None


def _best_improvement(game, ctx, profile, counts) -> Optional[Move]:
    best: Optional[Move] = None
    for i in range(game.n):
        for t in range(len(game.strategies[i])):
            if t == profile[i]:
                continue
            delta = deviation_delta(game, ctx, profile, i, t, counts)
            if delta > 0 and (best is None or delta > best[3]):
                best = (i, profile[i], t, delta)
    return best


def best_response_dynamics(
    game: Game,
    ctx: SocialContext,
    start: Profile,
    policy: str = "first-improver",
    max_steps: int = 10**4,
    budget: int = DEFAULT_BUDGET,
) -> DynamicsOutcome:
    """Iterate strictly improving single-player moves from ``start``.

    ``first-improver`` scans players then strategies in index order and
    takes the first strict improvement; ``best-improver`` takes the largest
    delta, ties broken by (player, strategy) index.  Indifferent moves are
    never taken.  Stops on: no improving move (converged), a revisited
    profile (cycle), or ``max_steps`` moves (truncated).
    """
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")
    pick = {"first-improver": _first_improvement, "best-improver": _best_improvement}.get(policy)
    if pick is None:
        raise ValueError(f"unknown policy {policy!r}")
    profile = game.validate_profile(start)
    counts = congestion(game, profile)
    seen: dict[Profile, int] = {profile: 0}
    trail: list[Profile] = [profile]
    moves: list[Move] = []
    for _ in range(max_steps):
        move = pick(game, ctx, profile, counts)
        if move is None:
            return DynamicsOutcome(
                kind="converged",
                start=trail[0],
                moves=tuple(moves),
                profiles=tuple(trail),
                final=profile,
            )
        i, old, new, _delta = move
        moves.append(move)
        profile = apply_move(profile, i, new)
        counts = congestion_after_move(game, counts, i, old, new)
        trail.append(profile)
        if profile in seen:
            first = seen[profile]
            return DynamicsOutcome(
                kind="cycle",
                start=trail[0],
                moves=tuple(moves),
                profiles=tuple(trail),
                final=profile,
                cycle=tuple(trail[first:]),
                cycle_moves=tuple(moves[first:]),
            )
        step = len(trail) - 1
        if len(seen) >= budget:
            break
        seen[profile] = step
    return DynamicsOutcome(
        kind="truncated",
        start=trail[0],
        moves=tuple(moves),
        profiles=tuple(trail),
        final=profile,
    )

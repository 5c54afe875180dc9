"""Exact potential functions and an exhaustive exactness checker.

Two closed forms are implemented.  For restricted symmetric unit-diagonal
contexts:

    Phi(S) = 1/2 * sum_e ( alpha_e * (n_e (n_e + 1) + sum_{(i,j)} gamma_ij)
                           + 2 beta_e n_e )

where the inner sum runs over ordered pairs of distinct players sharing e.
For single-level contexts (diagonal 1 - v_i, off-diagonal v_i):

    Phi(S) = 1/2 * sum_e ( alpha_e * (n_e (n_e + 1) - 2 sum_{j on e} v_j)
                           + 2 beta_e sum_{j on e} (1 - v_j) )

A potential is exact when its change under any unilateral deviation equals
the deviator's weighted-cost change; the checker verifies that identity
over every (profile, player, strategy) triple, exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .contexts import (
    AltruismVector,
    ContextClassError,
    SocialContext,
    altruism_vector,
    make_gamma_v,
    normalize,
)
from .equilibria import DEFAULT_BUDGET, _check_budget
from .game import Game, Profile, apply_move, congestion, deviation_delta

HALF = Fraction(1, 2)


def _users(game: Game, profile: Profile, e: int) -> list[int]:
    return [j for j, c in enumerate(profile) if e in game.strategies[j][c]]


def _phi_restricted_symmetric_raw(game: Game, ctx: SocialContext, profile: Profile) -> Fraction:
    """The restricted-symmetric closed form, with no class checks (see checker)."""
    counts = congestion(game, profile)
    total = Fraction(0)
    for e in range(game.m):
        n_e = counts[e]
        if n_e == 0:
            continue
        users = _users(game, profile, e)
        pair_sum = Fraction(0)
        for i in users:
            for j in users:
                if i != j:
                    pair_sum += ctx.gamma[i][j]
        total += game.alpha[e] * (n_e * (n_e + 1) + pair_sum) + 2 * game.beta[e] * n_e
    return HALF * total


def phi_restricted_symmetric(
    game: Game, ctx: SocialContext, profile: Profile, enforce: bool = True
) -> Fraction:
    """Exact potential for restricted symmetric contexts.

    Auto-normalizes a non-unit diagonal first (the closed form needs
    gamma_ii == 1); refuses contexts outside the restricted-symmetric
    class instead of silently returning a non-potential.  ``enforce=False``
    skips the class check so the exactness checker can exhibit failures.
    """
    if enforce:
        ctx = require_restricted_symmetric(ctx)
    return _phi_restricted_symmetric_raw(game, ctx, profile)


def require_restricted_symmetric(ctx: SocialContext) -> SocialContext:
    if not ctx.unit_diagonal:
        ctx = normalize(ctx)  # NonNormalizableError on a zero diagonal
    if not (ctx.restricted and ctx.symmetric and ctx.unit_diagonal):
        raise ContextClassError(
            "potential needs a restricted symmetric unit-diagonal context "
            f"(restricted={ctx.restricted}, symmetric={ctx.symmetric}, "
            f"unit_diagonal={ctx.unit_diagonal})"
        )
    return ctx


def phi_gamma_v(game: Game, levels, profile: Profile) -> Fraction:
    """Exact potential for single-level contexts, for any vector in [0,1]^n."""
    v: AltruismVector = altruism_vector(levels)
    if len(v) != game.n:
        raise ValueError(f"{len(v)} altruism levels for {game.n} players")
    counts = congestion(game, profile)
    total = Fraction(0)
    for e in range(game.m):
        n_e = counts[e]
        if n_e == 0:
            continue
        users = _users(game, profile, e)
        v_sum = sum((v[j] for j in users), Fraction(0))
        total += game.alpha[e] * (n_e * (n_e + 1) - 2 * v_sum)
        total += 2 * game.beta[e] * (n_e - v_sum)
    return HALF * total


@dataclass(frozen=True)
class ExactnessWitness:
    profile: Profile
    player: int
    strategy: int
    phi_change: Fraction
    cost_change: Fraction


def check_exact_potential(
    game: Game,
    ctx: SocialContext,
    kind: str = "restricted_symmetric",
    budget: int = DEFAULT_BUDGET,
    force: bool = False,
) -> Optional[ExactnessWitness]:
    """Verify Delta(Phi) == Delta(weighted cost) over every unilateral deviation.

    Returns ``None`` on a full pass, else the first violating triple in
    enumeration order.  ``kind`` selects the closed form; ``force`` applies
    the restricted-symmetric form to out-of-class contexts, which is how a
    non-potential is demonstrated.
    """
    deviations = game.profile_count * sum(len(s) - 1 for s in game.strategies)
    _check_budget(deviations, budget, "potential exactness sweep")
    if kind == "restricted_symmetric":
        if force:
            eval_ctx = ctx
        else:
            eval_ctx = require_restricted_symmetric(ctx)
        phi = lambda p: _phi_restricted_symmetric_raw(game, eval_ctx, p)
    elif kind == "gamma_v":
        levels = ctx.altruism_levels
        if levels is None:
            raise ContextClassError("context rows are not in single-level form")
        eval_ctx = ctx
        phi = lambda p: phi_gamma_v(game, levels, p)
    else:
        raise ValueError(f"unknown potential kind {kind!r}")

    for profile in game.profiles():
        phi_here = phi(profile)
        counts = congestion(game, profile)
        for i in range(game.n):
            for t in range(len(game.strategies[i])):
                if t == profile[i]:
                    continue
                moved = apply_move(profile, i, t)
                phi_change = phi_here - phi(moved)
                cost_change = deviation_delta(game, eval_ctx, profile, i, t, counts)
                if phi_change != cost_change:
                    return ExactnessWitness(profile, i, t, phi_change, cost_change)
    return None


def rosenthal_potential(game: Game, profile: Profile) -> Fraction:
    """Sum over resources of the first n_e latency values (selfish baseline)."""
    counts = congestion(game, profile)
    total = Fraction(0)
    for e in range(game.m):
        for k in range(1, counts[e] + 1):
            total += game.alpha[e] * k + game.beta[e]
    return total

"""Shared independent oracles for the test suite.

These recompute quantities by their definitions, without reusing the
library's closed forms, so each test pins the implementation against a
second derivation path.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from congames.game import Game, Profile


def direct_congestion(game: Game, profile: Profile) -> list[int]:
    counts = [0] * game.m
    for i, choice in enumerate(profile):
        for e in game.strategies[i][choice]:
            counts[e] += 1
    return counts


def direct_player_cost(game: Game, profile: Profile, i: int) -> Fraction:
    counts = direct_congestion(game, profile)
    return sum(
        (game.alpha[e] * counts[e] + game.beta[e] for e in game.strategies[i][profile[i]]),
        Fraction(0),
    )


def direct_social_cost(game: Game, profile: Profile) -> Fraction:
    counts = direct_congestion(game, profile)
    return sum(
        (game.alpha[e] * counts[e] ** 2 + game.beta[e] * counts[e] for e in range(game.m)),
        Fraction(0),
    )


def direct_weighted_cost(game: Game, ctx, profile: Profile, i: int) -> Fraction:
    return sum(
        (ctx.gamma[i][j] * direct_player_cost(game, profile, j) for j in range(game.n)),
        Fraction(0),
    )


def interval_sign(x, bits: int = 256) -> int:
    """Sign of a + b*sqrt(d) via outward-rounded interval arithmetic."""
    scale = 1 << bits
    lo = isqrt(x.d * scale * scale)
    hi = lo + 1
    if x.b >= 0:
        low = x.a + x.b * Fraction(lo, scale)
        high = x.a + x.b * Fraction(hi, scale)
    else:
        low = x.a + x.b * Fraction(hi, scale)
        high = x.a + x.b * Fraction(lo, scale)
    if low > 0:
        return 1
    if high < 0:
        return -1
    assert low == high == 0, "interval did not resolve a nonzero value at 256 bits"
    return 0

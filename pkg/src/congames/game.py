"""Linear congestion games: strategies, congestions, selfish and weighted costs.

Resources and strategy indices are 0-based internally; the file format and
the CLI speak 1-based.  All costs are exact :class:`fractions.Fraction`
values.  A deviation is evaluated through a closed form that only touches
the symmetric difference of the two strategies involved, and that closed
form is required (and tested) to agree exactly with recomputing both
weighted costs from scratch.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, Sequence

from .contexts import SocialContext
from .numerics import rational

Profile = tuple[int, ...]


@dataclass(frozen=True)
class Game:
    """A linear congestion game.

    ``strategies[i]`` is player ``i``'s ordered list of strategies, each a
    non-empty frozenset of resource indices in ``range(m)``.  Latencies are
    ``alpha[e] * x + beta[e]`` with ``alpha[e] >= 0``; ``beta[e]`` may dip
    below zero only while ``alpha[e] + beta[e] >= 0`` keeps every realized
    latency non-negative (one lower-bound family needs a small negative
    offset).
    """

    strategies: tuple[tuple[frozenset[int], ...], ...]
    alpha: tuple[Fraction, ...]
    beta: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.strategies) < 1:
            raise ValueError("a game needs at least one player")
        m = len(self.alpha)
        if len(self.beta) != m:
            raise ValueError("alpha and beta must have one entry per resource")
        for e in range(m):
            if self.alpha[e] < 0:
                raise ValueError(f"alpha[{e}] must be non-negative")
            if self.alpha[e] + self.beta[e] < 0:
                raise ValueError(f"latency of resource {e} is negative at congestion 1")
        for i, options in enumerate(self.strategies):
            if not options:
                raise ValueError(f"player {i} has no strategies")
            for s in options:
                if not s:
                    raise ValueError(f"player {i} has an empty strategy")
                if any(e < 0 or e >= m for e in s):
                    raise ValueError(f"player {i} references a resource outside range({m})")

    @property
    def n(self) -> int:
        return len(self.strategies)

    @property
    def m(self) -> int:
        return len(self.alpha)

    @property
    def is_load_balancing(self) -> bool:
        return all(len(s) == 1 for options in self.strategies for s in options)

    @property
    def profile_count(self) -> int:
        count = 1
        for options in self.strategies:
            count *= len(options)
        return count

    def profiles(self) -> Iterator[Profile]:
        """All profiles in mixed-radix order (player 0 most significant)."""
        return product(*(range(len(options)) for options in self.strategies))

    def validate_profile(self, profile: Sequence[int]) -> Profile:
        if len(profile) != self.n:
            raise ValueError(f"profile has {len(profile)} entries for {self.n} players")
        for i, c in enumerate(profile):
            if not 0 <= c < len(self.strategies[i]):
                raise ValueError(f"player {i} has no strategy index {c}")
        return tuple(profile)

    def chosen(self, profile: Profile, i: int) -> frozenset[int]:
        return self.strategies[i][profile[i]]


def make_game(strategies, alpha, beta=None) -> Game:
    """Build a Game from loosely-typed input (ints, strings, lists)."""
    strats = tuple(
        tuple(frozenset(int(e) for e in s) for s in options) for options in strategies
    )
    alpha_t = tuple(rational(a) for a in alpha)
    if beta is None:
        beta_t = tuple(Fraction(0) for _ in alpha_t)
    else:
        beta_t = tuple(rational(b) for b in beta)
    return Game(strats, alpha_t, beta_t)


def congestion(game: Game, profile: Profile) -> tuple[int, ...]:
    """Per-resource player counts n_e for the given profile."""
    game.validate_profile(profile)
    counts = [0] * game.m
    for i, choice in enumerate(profile):
        for e in game.strategies[i][choice]:
            counts[e] += 1
    return tuple(counts)


def congestion_after_move(
    game: Game, counts: Sequence[int], i: int, old: int, new: int
) -> tuple[int, ...]:
    """Incremental congestion update for one player switching strategies."""
    updated = list(counts)
    s_old = game.strategies[i][old]
    s_new = game.strategies[i][new]
    for e in s_old - s_new:
        updated[e] -= 1
    for e in s_new - s_old:
        updated[e] += 1
    return tuple(updated)


def player_cost(game: Game, profile: Profile, i: int, counts=None) -> Fraction:
    """Selfish cost c_i: summed latencies over the chosen resources."""
    if counts is None:
        counts = congestion(game, profile)
    return sum(
        (game.alpha[e] * counts[e] + game.beta[e] for e in game.chosen(profile, i)),
        Fraction(0),
    )


def all_player_costs(game: Game, profile: Profile, counts=None) -> tuple[Fraction, ...]:
    if counts is None:
        counts = congestion(game, profile)
    return tuple(player_cost(game, profile, i, counts) for i in range(game.n))


def social_cost(game: Game, profile: Profile) -> Fraction:
    """Total cost, evaluated both per player and per resource (must agree)."""
    counts = congestion(game, profile)
    by_players = sum(all_player_costs(game, profile, counts), Fraction(0))
    by_resources = sum(
        (game.alpha[e] * counts[e] * counts[e] + game.beta[e] * counts[e]
         for e in range(game.m)),
        Fraction(0),
    )
    assert by_players == by_resources, "social cost decompositions disagree"
    return by_resources


def altruistic_cost(
    game: Game, ctx: SocialContext, profile: Profile, i: int, counts=None
) -> Fraction:
    """Weighted cost: row i of the context matrix applied to all selfish costs."""
    if ctx.n != game.n:
        raise ValueError(f"context is {ctx.n}x{ctx.n} for a {game.n}-player game")
    costs = all_player_costs(game, profile, counts)
    return sum((ctx.gamma[i][j] * costs[j] for j in range(game.n)), Fraction(0))


def _weighted_users(
    game: Game, ctx: SocialContext, profile: Profile, i: int, e: int, skip_self: bool
) -> Fraction:
    total = Fraction(0)
    for j, choice in enumerate(profile):
        if skip_self and j == i:
            continue
        if e in game.strategies[j][choice]:
            total += ctx.gamma[i][j]
    return total


def deviation_delta(
    game: Game, ctx: SocialContext, profile: Profile, i: int, t: int, counts=None
) -> Fraction:
    """Closed-form weighted-cost drop when player i switches to strategy t.

    Positive means the deviation strictly improves player i.  Equals
    ``altruistic_cost(S, i) - altruistic_cost(S with i on t, i)`` exactly,
    but only iterates the resources where the two strategies differ.
    """
    if ctx.n != game.n:
        raise ValueError(f"context is {ctx.n}x{ctx.n} for a {game.n}-player game")
    game.validate_profile(profile)
    if not 0 <= t < len(game.strategies[i]):
        raise ValueError(f"player {i} has no strategy index {t}")
    if t == profile[i]:
        return Fraction(0)
    if counts is None:
        counts = congestion(game, profile)
    s_cur = game.chosen(profile, i)
    s_new = game.strategies[i][t]
    g_ii = ctx.gamma[i][i]
    delta = Fraction(0)
    for e in s_cur - s_new:
        others = _weighted_users(game, ctx, profile, i, e, skip_self=True)
        delta += g_ii * (game.alpha[e] * counts[e] + game.beta[e]) + game.alpha[e] * others
    for e in s_new - s_cur:
        others = _weighted_users(game, ctx, profile, i, e, skip_self=False)
        delta -= g_ii * (game.alpha[e] * (counts[e] + 1) + game.beta[e]) + game.alpha[e] * others
    return delta


def apply_move(profile: Profile, i: int, t: int) -> Profile:
    return profile[:i] + (t,) + profile[i + 1:]

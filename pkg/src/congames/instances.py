"""Generators for every benchmark instance family, plus seeded random games.

Families
--------
* ``ne1``: three players, thirteen resources, symmetric weights with one
  zero diagonal entry; admits no pure equilibrium.
* ``ne2``: three players, nine resources, unit diagonal but asymmetric
  weights; admits no pure equilibrium.
* ``tree_lb``: a load-balancing game on a tree of 2h+1 levels (ternary for
  h levels, then binary) whose all-up profile is an equilibrium with every
  deviation exactly indifferent; drives the worst-case ratio toward 17/3.
* ``pos_lb``: the three-group construction whose k-sided profile is an
  expensive equilibrium; ratio (n1^2 + 4(n1+n2)^2) / (2 n1 (n1+2n2+d) +
  n1^2 + 4 n2^2).
* ``gammav_pos_lb_low`` / ``gammav_pos_lb_high``: the two-group single-level
  constructions for altruism level v below / above one half.
* ``random``: seeded games with a selectable context class.

Generators are pure and deterministic; profiles of interest (K on the
k side, O on the o side) come back alongside the game.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .contexts import SocialContext, make_context, make_gamma_v, identity_context
from .game import Game, Profile, make_game
from .numerics import QuadExt, rational

TREE_NODE_BUDGET = 10**6

CTX_KINDS = ("identity", "restricted_symmetric", "restricted_any", "gamma_v", "arbitrary_nonneg")

FAMILIES = ("ne1", "ne2", "tree_lb", "pos_lb", "gammav_pos_lb_low", "gammav_pos_lb_high", "random")


def gen_ne1() -> tuple[Game, SocialContext]:
    """Symmetric weights, zero second diagonal entry; no pure equilibrium."""
    strategies = [
        [{1, 4, 13}, {2, 3, 5, 6}],
        [{4, 5, 6, 9, 10, 13}, {3, 7, 8}],
        [{1, 4, 5, 7, 10, 12}, {6, 8, 11, 13}],
    ]
    alpha = [9, 7, 16, 25, 14, 32, 363, 87, 383, 318, 1047, 160, 31]
    game = make_game(
        [[{e - 1 for e in s} for s in options] for options in strategies], alpha
    )
    g12 = Fraction(10, 211)
    g13 = Fraction(2, 53)
    g23 = Fraction(1, 9)
    ctx = make_context([
        [1, g12, g13],
        [g12, 0, g23],
        [g13, g23, 1],
    ])
    return game, ctx


def gen_ne2() -> tuple[Game, SocialContext]:
    """Unit diagonal, two zero off-diagonal entries; no pure equilibrium."""
    strategies = [
        [{3}, {1, 2}],
        [{3, 6, 7}, {2, 4, 5}],
        [{3, 4, 7, 9}, {5, 8}],
    ]
    alpha = [10, 1, 4, 392, 98, 384, 294, 1052, 160]
    game = make_game(
        [[{e - 1 for e in s} for s in options] for options in strategies], alpha
    )
    ctx = make_context([
        [1, 1, 1],
        [0, 1, 1],
        [1, 0, 1],
    ])
    return game, ctx


def _tree_alpha(level: int, h: int) -> Fraction:
    if 0 <= level <= h - 1:
        return Fraction(3, 7) ** level
    if h <= level <= 2 * h - 1:
        return Fraction(3, 5) * Fraction(3, 7) ** (h - 1) * Fraction(2, 5) ** (level - h)
    return Fraction(6, 5) * Fraction(6, 35) ** (h - 1)


def gen_tree_lb(h: int) -> tuple[Game, SocialContext, Profile, Profile]:
    """Tree load-balancing family; K sends everyone toward the root.

    Nodes are resources, edges are players with two singleton strategies:
    the endpoint nearer the root (index 0) or nearer the leaves (index 1).
    Each player weighs herself, her parent edge, and her child edges with
    coefficient one; the result is boolean and symmetric.  Node/player ids
    follow breadth-first order, so profiles are reproducible.
    """
    if h < 1:
        raise ValueError("tree height parameter must be >= 1")
    level_of = [0]
    parent = [-1]
    previous = [0]
    next_id = 1
    for level in range(1, 2 * h + 1):
        fanout = 3 if level - 1 <= h - 1 else 2
        current = []
        for u in previous:
            for _ in range(fanout):
                level_of.append(level)
                parent.append(u)
                current.append(next_id)
                next_id += 1
        if next_id > TREE_NODE_BUDGET:
            raise ValueError(f"tree with h={h} exceeds the {TREE_NODE_BUDGET}-node budget")
        previous = current

    node_count = next_id
    alpha = [_tree_alpha(level_of[v], h) for v in range(node_count)]
    # player k is the edge into child node k+1
    strategies = [
        [frozenset({parent[v]}), frozenset({v})] for v in range(1, node_count)
    ]
    n = len(strategies)
    gamma = [[Fraction(0)] * n for _ in range(n)]
    for j in range(n):
        child_node = j + 1
        up_node = parent[child_node]
        gamma[j][j] = Fraction(1)
        if up_node >= 1:  # the edge into up_node is this player's parent edge
            gamma[j][up_node - 1] = Fraction(1)
    for j in range(n):
        child_node = j + 1
        for w in range(1, node_count):
            if parent[w] == child_node:
                gamma[j][w - 1] = Fraction(1)
    game = Game(tuple(tuple(s) for s in strategies), tuple(alpha), tuple(Fraction(0) for _ in alpha))
    ctx = SocialContext(tuple(tuple(row) for row in gamma))
    k_profile = tuple([0] * n)
    o_profile = tuple([1] * n)
    return game, ctx, k_profile, o_profile


def tree_opt_closed_form(h: int) -> Fraction:
    """Closed form for the all-down profile's social cost."""
    return Fraction(27, 2) * Fraction(9, 7) ** (h - 1) - Fraction(9, 2)


def tree_eq_closed_form(h: int) -> Fraction:
    """Geometric summation of the all-up profile's social cost.

    Direct summation of the per-level terms; the -144/5 middle coefficient
    is what the generated instances realize (a -36/5 variant circulates but
    disagrees with the instances at every h).  The 153/2 leading
    coefficient is what drives the ratio's 17/3 limit.
    """
    return (
        Fraction(153, 2) * Fraction(9, 7) ** (h - 1)
        - Fraction(144, 5) * Fraction(36, 35) ** (h - 1)
        - Fraction(63, 2)
    )


def gen_pos_lb(n1: int, n2: int, delta) -> tuple[Game, SocialContext, Profile, Profile]:
    """Three-group family: P and P' (n1 each, two strategies), P'' (n2, fixed).

    Cross-group weights are one between P and P', zero elsewhere; the
    context is boolean, symmetric, restricted.  K puts every two-strategy
    player on her k resource set, O on the o side.
    """
    if n1 < 1 or n2 < 1:
        raise ValueError("group sizes must be >= 1")
    delta = rational(delta)
    if delta <= 0:
        raise ValueError("delta must be positive")
    index: dict[tuple, int] = {}

    def rid(*key) -> int:
        return index.setdefault(key, len(index))

    for i in range(n1):
        rid("A", i)
    for i in range(n1):
        rid("B", i)
    for i in range(n1):
        for j in range(n1):
            rid("C", i, j)
    for i in range(n1):
        for j in range(n1):
            rid("D", i, j)
    rid("E")
    rid("F")
    m = len(index)
    alpha = [Fraction(0)] * m
    beta = [Fraction(0)] * m
    for i in range(n1):
        alpha[rid("A", i)] = Fraction(n1 + 2 * n2)
        beta[rid("A", i)] = delta
        alpha[rid("B", i)] = Fraction(n1 + 2 * n2)
        beta[rid("B", i)] = delta
        for j in range(n1):
            alpha[rid("C", i, j)] = Fraction(1, 2)
            alpha[rid("D", i, j)] = Fraction(1, 2)
    alpha[rid("E")] = Fraction(2)
    alpha[rid("F")] = Fraction(2)

    strategies: list[list[frozenset[int]]] = []
    for i in range(n1):  # group P
        k = frozenset({rid("C", i, j) for j in range(n1)} | {rid("E")})
        o = frozenset({rid("A", i)} | {rid("D", j, i) for j in range(n1)})
        strategies.append([k, o])
    for i in range(n1):  # group P'
        k = frozenset({rid("D", i, j) for j in range(n1)} | {rid("F")})
        o = frozenset({rid("B", i)} | {rid("C", j, i) for j in range(n1)})
        strategies.append([k, o])
    shared = frozenset({rid("E"), rid("F")})
    for _ in range(n2):  # group P''
        strategies.append([shared])

    n = 2 * n1 + n2
    gamma = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        gamma[i][i] = Fraction(1)
    for i in range(n1):
        for j in range(n1, 2 * n1):
            gamma[i][j] = Fraction(1)
            gamma[j][i] = Fraction(1)
    game = Game(tuple(tuple(s) for s in strategies), tuple(alpha), tuple(beta))
    ctx = SocialContext(tuple(tuple(row) for row in gamma))
    k_profile = tuple([0] * n)
    o_profile = tuple([1] * (2 * n1) + [0] * n2)
    return game, ctx, k_profile, o_profile


def pos_lb_ratio(n1: int, n2: int, delta) -> Fraction:
    """Closed-form social-cost ratio of the k-sided and o-sided profiles."""
    delta = rational(delta)
    num = Fraction(n1 * n1 + 4 * (n1 + n2) ** 2)
    den = 2 * n1 * (Fraction(n1 + 2 * n2) + delta) + n1 * n1 + 4 * n2 * n2
    return num / den


def gen_gamma_v_pos_lb(
    v, n1: int, n2: int, delta, branch: str
) -> tuple[Game, SocialContext, Profile, Profile]:
    """Two-group single-level family; ``branch`` is "low" (v <= 1/2) or "high"."""
    if n1 < 1 or n2 < 1:
        raise ValueError("group sizes must be >= 1")
    v = rational(v)
    delta = rational(delta)
    if delta <= 0:
        raise ValueError("delta must be positive")
    if branch == "low":
        if not 0 <= v <= Fraction(1, 2):
            raise ValueError("low branch needs v in [0, 1/2]")
    elif branch == "high":
        if not Fraction(1, 2) <= v < 1:
            raise ValueError("high branch needs v in [1/2, 1)")
    else:
        raise ValueError(f"unknown branch {branch!r}")
    alpha_a = Fraction(n1 + 2 * n2 + 1 - 2 * v) / (2 * (1 - v))
    if branch == "high" and delta >= alpha_a:
        raise ValueError("delta too large: A-resource latency would go negative")

    index: dict[tuple, int] = {}

    def rid(*key) -> int:
        return index.setdefault(key, len(index))

    for i in range(n1):
        rid("A", i)
    for i in range(n1):
        for j in range(n1):
            if i != j:
                rid("B", i, j)
    rid("C")
    m = len(index)
    alpha = [Fraction(0)] * m
    beta = [Fraction(0)] * m
    for i in range(n1):
        alpha[rid("A", i)] = alpha_a
        beta[rid("A", i)] = delta if branch == "low" else -delta
    for i in range(n1):
        for j in range(n1):
            if i != j:
                alpha[rid("B", i, j)] = Fraction(1, 2)
    alpha[rid("C")] = Fraction(1)

    strategies: list[list[frozenset[int]]] = []
    for i in range(n1):
        mesh_k = {rid("B", i, j) for j in range(n1) if j != i}
        mesh_o = {rid("B", j, i) for j in range(n1) if j != i}
        if branch == "low":
            k = frozenset(mesh_k | {rid("C")})
            o = frozenset({rid("A", i)} | mesh_o)
        else:
            k = frozenset({rid("A", i)} | mesh_k)
            o = frozenset(mesh_o | {rid("C")})
        strategies.append([k, o])
    for _ in range(n2):
        strategies.append([frozenset({rid("C")})])

    n = n1 + n2
    ctx = make_gamma_v([v] * n)
    game = Game(tuple(tuple(s) for s in strategies), tuple(alpha), tuple(beta))
    k_profile = tuple([0] * n)
    o_profile = tuple([1] * n1 + [0] * n2)
    return game, ctx, k_profile, o_profile


def _random_unit_fraction(rng: random.Random) -> Fraction:
    den = rng.randint(1, 8)
    return Fraction(rng.randint(0, den), den)


def _random_coeff(rng: random.Random, bound: int) -> Fraction:
    return Fraction(rng.randint(0, bound), rng.randint(1, 4))


def gen_random(
    seed: int,
    n: int = 3,
    max_strategies: int = 2,
    m: int = 5,
    coeff_bound: int = 10,
    ctx_kind: str = "restricted_symmetric",
    beta_bound: Optional[int] = None,
) -> tuple[Game, SocialContext]:
    """Seed-deterministic random game with the requested context class."""
    if ctx_kind not in CTX_KINDS:
        raise ValueError(f"ctx_kind must be one of {CTX_KINDS}")
    if n < 1 or m < 1 or max_strategies < 1 or coeff_bound < 1:
        raise ValueError("all size bounds must be positive")
    rng = random.Random(seed)
    strategies = []
    for _ in range(n):
        count = rng.randint(1, max_strategies)
        options = []
        for _ in range(count):
            size = rng.randint(1, m)
            options.append(frozenset(rng.sample(range(m), size)))
        strategies.append(tuple(options))
    alpha = tuple(_random_coeff(rng, coeff_bound) for _ in range(m))
    bb = coeff_bound if beta_bound is None else beta_bound
    beta = tuple(_random_coeff(rng, bb) if bb > 0 else Fraction(0) for _ in range(m))
    game = Game(tuple(strategies), alpha, beta)

    if ctx_kind == "identity":
        ctx = identity_context(n)
    elif ctx_kind == "restricted_symmetric":
        gamma = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            gamma[i][i] = Fraction(1)
        for i in range(n):
            for j in range(i + 1, n):
                g = _random_unit_fraction(rng)
                gamma[i][j] = gamma[j][i] = g
        ctx = SocialContext(tuple(tuple(row) for row in gamma))
    elif ctx_kind == "restricted_any":
        gamma = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            gamma[i][i] = Fraction(1)
            for j in range(n):
                if j != i:
                    gamma[i][j] = _random_unit_fraction(rng)
        ctx = SocialContext(tuple(tuple(row) for row in gamma))
    elif ctx_kind == "gamma_v":
        ctx = make_gamma_v([_random_unit_fraction(rng) for _ in range(n)])
    else:  # arbitrary_nonneg
        gamma = [
            [_random_coeff(rng, coeff_bound) for _ in range(n)] for _ in range(n)
        ]
        ctx = SocialContext(tuple(tuple(row) for row in gamma))
    return game, ctx


def _nearest_int(base: Fraction, coeff: Fraction, d: int) -> int:
    """Round base + coeff*sqrt(d) to the nearest integer, exactly."""
    x = QuadExt(base, coeff, d)
    guess = int(float(base) + float(coeff) * d ** 0.5)
    while (x - guess).sign() < 0:
        guess -= 1
    while (x - (guess + 1)).sign() >= 0:
        guess += 1
    # guess == floor(x); round half up
    return guess + ((x - guess - Fraction(1, 2)).sign() >= 0)


def suggest_pos_lb_n1(n2: int) -> int:
    """Integer n1 closest to 2(1+sqrt(2))*n2, the ratio's asymptotic target."""
    return _nearest_int(Fraction(2 * n2), Fraction(2 * n2), 2)


def suggest_gamma_v_pos_lb_n1(n2: int) -> int:
    """Integer n1 closest to (1+sqrt(3))*n2."""
    return _nearest_int(Fraction(n2), Fraction(n2), 3)


@dataclass(frozen=True)
class InstanceSpec:
    """A parsed request for one instance family."""

    family: str
    h: int = 1
    n1: int = 2
    n2: int = 1
    delta: Fraction = Fraction(1, 1000)
    v: Fraction = Fraction(0)
    seed: int = 0
    n: int = 3
    max_strategies: int = 2
    m: int = 5
    coeff_bound: int = 10
    ctx_kind: str = "restricted_symmetric"

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {FAMILIES}")

    def generate(self):
        """Returns (game, ctx) or (game, ctx, K, O) depending on the family."""
        if self.family == "ne1":
            return gen_ne1()
        if self.family == "ne2":
            return gen_ne2()
        if self.family == "tree_lb":
            return gen_tree_lb(self.h)
        if self.family == "pos_lb":
            return gen_pos_lb(self.n1, self.n2, self.delta)
        if self.family == "gammav_pos_lb_low":
            return gen_gamma_v_pos_lb(self.v, self.n1, self.n2, self.delta, "low")
        if self.family == "gammav_pos_lb_high":
            return gen_gamma_v_pos_lb(self.v, self.n1, self.n2, self.delta, "high")
        return gen_random(
            self.seed, self.n, self.max_strategies, self.m, self.coeff_bound, self.ctx_kind
        )

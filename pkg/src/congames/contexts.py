"""Altruism matrices: construction, classification, row normalization.

A social context is an n-by-n matrix of non-negative rationals; entry
``gamma[i][j]`` says how much player i weighs player j's cost.  Negative
(spiteful) entries are rejected at construction.  Classification flags:

* restricted: ``gamma[i][i] >= gamma[i][j]`` for every row (nobody cares
  about anyone more than about herself);
* symmetric: ``gamma[i][j] == gamma[j][i]``;
* unit_diagonal: every ``gamma[i][i] == 1``;
* single-level form: row i is ``1 - v_i`` on the diagonal and ``v_i``
  elsewhere for some vector V in [0, 1]^n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

from .numerics import rational

AltruismVector = tuple[Fraction, ...]


class NonNormalizableError(ValueError):
    """Row normalization needs a strictly positive diagonal."""


class ContextClassError(ValueError):
    """The context does not belong to the class an operation requires."""


def altruism_vector(values: Sequence) -> AltruismVector:
    v = tuple(rational(x) for x in values)
    for i, vi in enumerate(v):
        if not 0 <= vi <= 1:
            raise ValueError(f"altruism level v[{i}] = {vi} is outside [0, 1]")
    return v


def uniform_altruism(v, n: int) -> AltruismVector:
    return altruism_vector([v] * n)


@dataclass(frozen=True)
class SocialContext:
    gamma: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = len(self.gamma)
        if n < 1:
            raise ValueError("a social context needs at least one row")
        for i, row in enumerate(self.gamma):
            if len(row) != n:
                raise ValueError(f"row {i} has {len(row)} entries for an {n}x{n} matrix")
            for j, g in enumerate(row):
                if g < 0:
                    raise ValueError(
                        f"gamma[{i}][{j}] = {g}: spite (negative entries) unsupported"
                    )

    @property
    def n(self) -> int:
        return len(self.gamma)

    @cached_property
    def restricted(self) -> bool:
        return all(
            self.gamma[i][i] >= self.gamma[i][j]
            for i in range(self.n)
            for j in range(self.n)
        )

    @cached_property
    def symmetric(self) -> bool:
        return all(
            self.gamma[i][j] == self.gamma[j][i]
            for i in range(self.n)
            for j in range(i + 1, self.n)
        )

    @cached_property
    def unit_diagonal(self) -> bool:
        return all(self.gamma[i][i] == 1 for i in range(self.n))

    @cached_property
    def altruism_levels(self) -> Optional[AltruismVector]:
        """The vector V when each row i is (1 - v_i) diagonal / v_i off-diagonal.

        Undetectable (and reported as absent) for n == 1, where rows have
        no off-diagonal entries to pin v_i down.
        """
        if self.n < 2:
            return None
        levels = []
        for i, row in enumerate(self.gamma):
            off = {row[j] for j in range(self.n) if j != i}
            if len(off) != 1:
                return None
            v_i = next(iter(off))
            if row[i] != 1 - v_i or not 0 <= v_i <= 1:
                return None
            levels.append(v_i)
        return tuple(levels)

    @property
    def gamma_v_form(self) -> bool:
        return self.altruism_levels is not None


@dataclass(frozen=True)
class ContextFlags:
    restricted: bool
    symmetric: bool
    unit_diagonal: bool
    gamma_v_form: bool
    altruism_levels: Optional[AltruismVector]


def make_context(rows: Sequence[Sequence]) -> SocialContext:
    return SocialContext(tuple(tuple(rational(g) for g in row) for row in rows))


def identity_context(n: int) -> SocialContext:
    return SocialContext(
        tuple(
            tuple(Fraction(1) if i == j else Fraction(0) for j in range(n))
            for i in range(n)
        )
    )


def make_gamma_v(levels: Sequence) -> SocialContext:
    """Context with a single altruism level per player: diag 1 - v_i, rest v_i."""
    v = altruism_vector(levels)
    n = len(v)
    return SocialContext(
        tuple(
            tuple(1 - v[i] if i == j else v[i] for j in range(n))
            for i in range(n)
        )
    )


def classify(ctx: SocialContext) -> ContextFlags:
    return ContextFlags(
        restricted=ctx.restricted,
        symmetric=ctx.symmetric,
        unit_diagonal=ctx.unit_diagonal,
        gamma_v_form=ctx.gamma_v_form,
        altruism_levels=ctx.altruism_levels,
    )


def normalize(ctx: SocialContext) -> SocialContext:
    """Divide each row by its diagonal entry, making the diagonal unitary.

    Leaves best responses and equilibria untouched (each player's weighted
    cost is scaled by a positive constant).  Rows with a zero diagonal
    cannot be scaled: raises :class:`NonNormalizableError`.
    """
    if ctx.unit_diagonal:
        return ctx
    for i in range(ctx.n):
        if ctx.gamma[i][i] == 0:
            raise NonNormalizableError(f"gamma[{i}][{i}] = 0, row cannot be normalized")
    return SocialContext(
        tuple(
            tuple(g / ctx.gamma[i][i] for g in row)
            for i, row in enumerate(ctx.gamma)
        )
    )

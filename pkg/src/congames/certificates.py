"""Primal-dual ratio programs and exact dual-certificate checking.

For a fixed pair of profiles (K an equilibrium candidate, O a reference
optimum) the ratio program treats the latency slopes as variables: maximize
the equilibrium's social cost subject to K being stable and the reference
cost normalized to one.  Any feasible point of the dual bounds the ratio
from above, so exhibiting explicit dual values proves a bound.

Three layers:

* instance-level: build the primal/dual for a concrete game and profile
  pair, then evaluate a certificate exactly (radical-aware);
* closed-form grids: the per-resource dual constraints collapse to
  polynomial inequalities in the integer pair (K_e, O_e); these are checked
  over an integer lattice with exact arithmetic;
* discriminant spot checks extend confidence beyond the lattice.

No LP solver is involved anywhere: certificates are verified, never found.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .contexts import SocialContext
from .game import Game, Profile, congestion
from .numerics import SQRT3, QuadExt, Scalar, qsign, rational


@dataclass(frozen=True)
class Variable:
    name: str
    nonneg: bool  # False means free


@dataclass(frozen=True)
class Constraint:
    name: str
    coeffs: tuple[Fraction, ...]
    relation: str  # "<=" | "=" | ">="
    rhs: Fraction


@dataclass(frozen=True)
class LinearProgram:
    name: str
    sense: str  # "max" | "min"
    variables: tuple[Variable, ...]
    objective: tuple[Fraction, ...]
    constraints: tuple[Constraint, ...]

    def __post_init__(self):
        width = len(self.variables)
        if len(self.objective) != width:
            raise ValueError("objective length does not match variable count")
        for c in self.constraints:
            if len(c.coeffs) != width:
                raise ValueError(f"constraint {c.name} has the wrong width")
            if c.relation not in ("<=", "=", ">="):
                raise ValueError(f"constraint {c.name} has relation {c.relation!r}")


@dataclass(frozen=True)
class DualCertificate:
    """Claimed-feasible dual values: the bound theta, one multiplier per
    player, and optionally the potential-constraint multiplier."""

    theta: Scalar
    y: tuple[Scalar, ...]
    x: Optional[Scalar] = None


@dataclass(frozen=True)
class FeasibilityResult:
    ok: bool
    constraint: Optional[str] = None
    lhs: Optional[Scalar] = None
    rhs: Optional[Scalar] = None
    detail: str = ""


@dataclass(frozen=True)
class GridResult:
    ok: bool
    cells: int
    counterexample: Optional[tuple] = None  # (K, O, delta_or_None, lhs)


def _shared_weight(game: Game, ctx: SocialContext, k_prof: Profile, i: int, e: int,
                   skip_self: bool) -> Fraction:
    total = Fraction(0)
    for j, choice in enumerate(k_prof):
        if skip_self and j == i:
            continue
        if e in game.strategies[j][choice]:
            total += ctx.gamma[i][j]
    return total


def _stability_row(game: Game, ctx: SocialContext, k_prof: Profile, o_prof: Profile,
                   counts: Sequence[int], i: int) -> tuple[Fraction, ...]:
    """Per-resource coefficients of player i's stability constraint."""
    row = [Fraction(0)] * game.m
    k_i = game.chosen(k_prof, i)
    o_i = game.chosen(o_prof, i)
    for e in k_i - o_i:
        row[e] += counts[e] + _shared_weight(game, ctx, k_prof, i, e, skip_self=True)
    for e in o_i - k_i:
        row[e] -= counts[e] + 1 + _shared_weight(game, ctx, k_prof, i, e, skip_self=False)
    return tuple(row)


def build_primal(game: Game, ctx: SocialContext, k_prof: Profile, o_prof: Profile) -> LinearProgram:
    """Ratio program over latency slopes (constant offsets are out of play).

    One variable per resource, one stability row per player, one
    normalization row pinning the reference profile's cost to 1.
    """
    if ctx.n != game.n:
        raise ValueError("context dimension does not match the game")
    game.validate_profile(k_prof)
    game.validate_profile(o_prof)
    k_counts = congestion(game, k_prof)
    o_counts = congestion(game, o_prof)
    variables = tuple(Variable(f"a{e + 1}", True) for e in range(game.m))
    objective = tuple(Fraction(k_counts[e] ** 2) for e in range(game.m))
    constraints = [
        Constraint(
            f"stability_{i + 1}",
            _stability_row(game, ctx, k_prof, o_prof, k_counts, i),
            "<=",
            Fraction(0),
        )
        for i in range(game.n)
    ]
    constraints.append(
        Constraint(
            "normalization",
            tuple(Fraction(o_counts[e] ** 2) for e in range(game.m)),
            "=",
            Fraction(1),
        )
    )
    return LinearProgram("ratio_primal", "max", variables, objective, tuple(constraints))


def build_dual(game: Game, ctx: SocialContext, k_prof: Profile, o_prof: Profile) -> LinearProgram:
    """Dual of :func:`build_primal`: variables (y_1..y_n, theta), one row per resource."""
    if ctx.n != game.n:
        raise ValueError("context dimension does not match the game")
    game.validate_profile(k_prof)
    game.validate_profile(o_prof)
    k_counts = congestion(game, k_prof)
    o_counts = congestion(game, o_prof)
    rows = [_stability_row(game, ctx, k_prof, o_prof, k_counts, i) for i in range(game.n)]
    variables = tuple(Variable(f"y{i + 1}", True) for i in range(game.n)) + (
        Variable("theta", False),
    )
    objective = tuple(Fraction(0) for _ in range(game.n)) + (Fraction(1),)
    constraints = []
    for e in range(game.m):
        coeffs = tuple(rows[i][e] for i in range(game.n)) + (Fraction(o_counts[e] ** 2),)
        constraints.append(
            Constraint(f"resource_{e + 1}", coeffs, ">=", Fraction(k_counts[e] ** 2))
        )
    return LinearProgram("ratio_dual", "min", variables, objective, tuple(constraints))


def _potential_row(v: Fraction, k_counts, o_counts, m: int) -> tuple[Fraction, ...]:
    return tuple(
        Fraction(k_counts[e] * (k_counts[e] + 1)) - 2 * v * k_counts[e]
        - Fraction(o_counts[e] * (o_counts[e] + 1)) + 2 * v * o_counts[e]
        for e in range(m)
    )


def _relaxed_stability_row(game: Game, v: Fraction, k_prof: Profile, o_prof: Profile,
                           counts, i: int) -> tuple[Fraction, ...]:
    row = [Fraction(0)] * game.m
    for e in game.chosen(k_prof, i):
        row[e] += counts[e] - v
    for e in game.chosen(o_prof, i):
        row[e] -= counts[e] + 1 - v
    return tuple(row)


def build_primal_potential(game: Game, v, k_prof: Profile, o_prof: Profile) -> LinearProgram:
    """Ratio program strengthened with the potential-descent constraint.

    Used by the uniform-altruism stability bounds: one extra row encodes
    that the potential at K does not exceed the potential at O, and the
    per-player rows are the relaxed full-sum stability inequalities.
    """
    v = rational(v)
    game.validate_profile(k_prof)
    game.validate_profile(o_prof)
    k_counts = congestion(game, k_prof)
    o_counts = congestion(game, o_prof)
    variables = tuple(Variable(f"a{e + 1}", True) for e in range(game.m))
    objective = tuple(Fraction(k_counts[e] ** 2) for e in range(game.m))
    constraints = [
        Constraint("potential", _potential_row(v, k_counts, o_counts, game.m), "<=", Fraction(0))
    ]
    for i in range(game.n):
        constraints.append(
            Constraint(
                f"stability_{i + 1}",
                _relaxed_stability_row(game, v, k_prof, o_prof, k_counts, i),
                "<=",
                Fraction(0),
            )
        )
    constraints.append(
        Constraint(
            "normalization",
            tuple(Fraction(o_counts[e] ** 2) for e in range(game.m)),
            "=",
            Fraction(1),
        )
    )
    return LinearProgram("potential_primal", "max", variables, objective, tuple(constraints))


def build_dual_potential(game: Game, v, k_prof: Profile, o_prof: Profile) -> LinearProgram:
    """Dual of :func:`build_primal_potential`: variables (x, y_1..y_n, theta)."""
    v = rational(v)
    game.validate_profile(k_prof)
    game.validate_profile(o_prof)
    k_counts = congestion(game, k_prof)
    o_counts = congestion(game, o_prof)
    pot_row = _potential_row(v, k_counts, o_counts, game.m)
    rows = [
        _relaxed_stability_row(game, v, k_prof, o_prof, k_counts, i)
        for i in range(game.n)
    ]
    variables = (
        (Variable("x", True),)
        + tuple(Variable(f"y{i + 1}", True) for i in range(game.n))
        + (Variable("theta", False),)
    )
    objective = (Fraction(0),) + tuple(Fraction(0) for _ in range(game.n)) + (Fraction(1),)
    constraints = []
    for e in range(game.m):
        coeffs = (
            (pot_row[e],)
            + tuple(rows[i][e] for i in range(game.n))
            + (Fraction(o_counts[e] ** 2),)
        )
        constraints.append(
            Constraint(f"resource_{e + 1}", coeffs, ">=", Fraction(k_counts[e] ** 2))
        )
    return LinearProgram("potential_dual", "min", variables, objective, tuple(constraints))


def certificate_assignment(lp: LinearProgram, cert: DualCertificate) -> dict[str, Scalar]:
    values: dict[str, Scalar] = {"theta": cert.theta}
    if cert.x is not None:
        values["x"] = cert.x
    for i, y in enumerate(cert.y):
        values[f"y{i + 1}"] = y
    missing = [var.name for var in lp.variables if var.name not in values]
    if missing:
        raise ValueError(f"certificate does not cover variables {missing}")
    return values


def check_dual_feasible(lp: LinearProgram, cert: DualCertificate) -> FeasibilityResult:
    """Exact feasibility of a certificate against a (dual) program.

    Checks sign restrictions and every constraint with radical-aware
    arithmetic; the first violation is reported with its exact slack.
    """
    values = certificate_assignment(lp, cert)
    for var in lp.variables:
        if var.nonneg and qsign(values[var.name]) < 0:
            return FeasibilityResult(
                False, var.name, values[var.name], Fraction(0),
                f"variable {var.name} must be non-negative",
            )
    for c in lp.constraints:
        lhs: Scalar = Fraction(0)
        for coeff, var in zip(c.coeffs, lp.variables):
            if coeff != 0:
                lhs = coeff * values[var.name] + lhs
        gap = lhs - c.rhs
        sign = qsign(gap)
        bad = (
            (c.relation == "<=" and sign > 0)
            or (c.relation == ">=" and sign < 0)
            or (c.relation == "=" and sign != 0)
        )
        if bad:
            return FeasibilityResult(False, c.name, lhs, c.rhs,
                                     f"constraint {c.name} violated")
    return FeasibilityResult(True)


def check_transpose_structure(primal: LinearProgram, dual: LinearProgram) -> bool:
    """Structural duality: primal row-major coefficients equal dual column-major ones.

    Inequality rows of the primal map to sign-restricted dual variables in
    order; the normalization row maps to the free variable; primal
    objective coefficients become dual right-hand sides.
    """
    ineq_rows = [c for c in primal.constraints if c.relation == "<="]
    norm_rows = [c for c in primal.constraints if c.relation == "="]
    if len(norm_rows) != 1:
        return False
    norm = norm_rows[0]
    width = len(primal.variables)
    if len(dual.constraints) != width:
        return False
    if len(dual.variables) != len(ineq_rows) + 1:
        return False
    for e in range(width):
        drow = dual.constraints[e]
        for i, prow in enumerate(ineq_rows):
            if drow.coeffs[i] != prow.coeffs[e]:
                return False
        if drow.coeffs[-1] != norm.coeffs[e]:
            return False
        if drow.rhs != primal.objective[e]:
            return False
    return True


# ---------------------------------------------------------------------------
# closed-form certificates on integer grids
# ---------------------------------------------------------------------------

THETA_17_3 = Fraction(17, 3)
Y_17_3 = Fraction(5, 3)


def _grid_17_3_rows(args) -> Optional[tuple]:
    k_lo, k_hi, omax, payload = args
    theta, y = payload
    # clear denominators once so the hot loop is pure integer arithmetic
    den = theta.denominator * y.denominator // gcd(theta.denominator, y.denominator)
    t_int = int(theta * den)
    y_int = int(y * den)
    for k in range(k_lo, k_hi):
        rhs = den * k * k
        for o in range(omax + 1):
            # refined family: y(K-d)K - y(O-d)(2K+1) + theta O^2 >= K^2
            for d in range(min(k, o) + 1):
                lhs = y_int * (k - d) * k - y_int * (o - d) * (2 * k + 1) + t_int * o * o
                if lhs < rhs:
                    return (k, o, d, Fraction(lhs, den))
    return None


def check_poa_grid_17_3(
    kmax: int = 100,
    omax: int = 100,
    theta: Fraction = THETA_17_3,
    y: Fraction = Y_17_3,
    jobs: int = 1,
) -> GridResult:
    """Anarchy-bound certificate on the lattice [0,kmax] x [0,omax].

    With the default values the base inequality is 5K^2 - 5O(2K+1) + 17O^2
    >= 3K^2; the overlap-refined family (shifting both sides by the count
    of resources shared between the two profiles) is checked for every
    feasible shift.  Exact integer arithmetic; first counterexample in
    lattice order wins.
    """
    theta, y = rational(theta), rational(y)
    cells = (kmax + 1) * (omax + 1)
    hit = _run_rows(_grid_17_3_rows, kmax, omax, jobs, (theta, y))
    return GridResult(hit is None, cells, hit)


def pos_certificate(v) -> DualCertificate:
    """Stability-bound dual values for uniform altruism level v, in Q(sqrt 3).

    Two branches meet at v = 1/2 (where the bound is exactly 1); the level
    v = 1 admits no finite certificate.
    """
    v = rational(v)
    if not 0 <= v <= 1:
        raise ValueError("v must lie in [0, 1]")
    if v == 1:
        raise ValueError("no finite certificate exists at v = 1")
    s3 = SQRT3
    if v <= Fraction(1, 2):
        theta = (s3 + 1) * (1 - v) / (s3 - v * (s3 - 1))
        x = (3 - 2 * (1 + s3) * v * v - (3 - s3) * v) / (2 * (2 * v * v - 6 * v + 3))
        y = (2 * (1 + s3) * v * v - (1 + 3 * s3) * v + s3) / (2 * v * v - 6 * v + 3)
    else:
        theta = (3 - s3 - 2 * v * (2 - s3)) / (2 * (1 - v))
        x = (1 + 2 * v - s3 * (2 * v - 1)) / (4 * (1 - v))
        y = (2 * v - 1) * (s3 - 1) / (2 * (1 - v))
    return DualCertificate(theta=theta, y=(y,), x=x)


def _grid_pos_rows(args) -> Optional[tuple]:
    k_lo, k_hi, omax, payload = args
    v, theta, x, y = payload
    for k in range(k_lo, k_hi):
        for o in range(omax + 1):
            pot = Fraction(k * (k + 1) - o * (o + 1)) - 2 * v * (k - o)
            stab = Fraction(k * k - o * (k + 1)) - v * (k - o)
            lhs = x * pot + y * stab + theta * (o * o) - k * k
            if qsign(lhs) < 0:
                return (k, o, None, lhs)
    return None


def check_gamma_v_pos_certificate(
    v,
    kmax: int = 100,
    omax: int = 100,
    jobs: int = 1,
    certificate: Optional[DualCertificate] = None,
) -> GridResult:
    """Grid check of the uniform-altruism stability certificate.

    Reduces the per-resource dual row (potential multiplier, one stability
    multiplier per user, bound times the reference congestion squared)
    to its two-integer form and verifies it with exact signs in Q(sqrt 3).
    Also insists the multipliers themselves are non-negative.
    """
    v = rational(v)
    cert = certificate if certificate is not None else pos_certificate(v)
    if cert.x is None:
        raise ValueError("this certificate family carries a potential multiplier")
    if qsign(cert.x) < 0 or any(qsign(yi) < 0 for yi in cert.y):
        return GridResult(False, 0, (None, None, None, "negative multiplier"))
    payload = (v, cert.theta, cert.x, cert.y[0])
    hit = _run_rows(_grid_pos_rows, kmax, omax, jobs, payload)
    return GridResult(hit is None, (kmax + 1) * (omax + 1), hit)


def poa_certificate(vbar, vund) -> DualCertificate:
    """Anarchy-bound dual values for altruism levels between vund and vbar."""
    vbar, vund = rational(vbar), rational(vund)
    if not 0 <= vund <= vbar <= 1:
        raise ValueError("need 0 <= vund <= vbar <= 1")
    if vbar == 1:
        raise ValueError("no finite certificate exists at vbar = 1")
    if vbar <= Fraction(1, 2):
        theta = (5 + 2 * vbar - 3 * vund) / (2 - vbar)
        x = 3 / (2 - vbar)
    else:
        theta = (2 - vund) / (1 - vbar)
        x = 1 / (1 - vbar)
    return DualCertificate(theta=theta, y=(x,))


def _grid_poa_rows(args) -> Optional[tuple]:
    k_lo, k_hi, omax, payload = args
    vbar, vund, theta, x = payload
    for k in range(k_lo, k_hi):
        for o in range(omax + 1):
            lhs = x * (k * (k - vbar) - o * (k + 1 - vund)) + theta * (o * o) - k * k
            if lhs < 0:
                return (k, o, None, lhs)
    return None


def check_gamma_v_poa_certificate(
    vbar,
    vund,
    kmax: int = 100,
    omax: int = 100,
    jobs: int = 1,
    certificate: Optional[DualCertificate] = None,
) -> GridResult:
    """Grid check of the heterogeneous-altruism anarchy certificate."""
    vbar, vund = rational(vbar), rational(vund)
    cert = certificate if certificate is not None else poa_certificate(vbar, vund)
    if any(qsign(yi) < 0 for yi in cert.y):
        return GridResult(False, 0, (None, None, None, "negative multiplier"))
    payload = (vbar, vund, cert.theta, cert.y[0])
    hit = _run_rows(_grid_poa_rows, kmax, omax, jobs, payload)
    return GridResult(hit is None, (kmax + 1) * (omax + 1), hit)


def _run_rows(worker, kmax: int, omax: int, jobs: int, payload) -> Optional[tuple]:
    """Partition the K-range across workers; earliest lattice hit wins."""
    if kmax < 0 or omax < 0:
        raise ValueError("grid bounds must be non-negative")
    if jobs <= 1 or kmax < 8:
        return worker((0, kmax + 1, omax, payload))
    span = (kmax + 1 + jobs - 1) // jobs
    chunks = [
        (lo, min(lo + span, kmax + 1), omax, payload)
        for lo in range(0, kmax + 1, span)
    ]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for hit in pool.map(worker, chunks):
            if hit is not None:
                return hit
    return None


def pos_discriminant_low(v: Fraction, o: int) -> QuadExt:
    """Quadratic discriminant controlling the low-branch stability rows, O >= 2."""
    s3 = SQRT3
    return (
        v * v * (18 * (2 + s3) - (32 + 16 * s3) * o)
        + v * ((48 + 16 * s3) * o - 18 * (3 + s3))
        - 3 * (8 * o - 9)
    )


def pos_discriminant_high(o: int) -> QuadExt:
    """Quadratic discriminant controlling the high-branch stability rows, O >= 2."""
    return 4 * o * (1 - SQRT3) + 2 + SQRT3


def poa_17_3_discriminant(o: int) -> Fraction:
    """Discriminant (in K) of the base 17/3 grid inequality: -36 O^2 + 40 O."""
    return Fraction(-36 * o * o + 40 * o)


def discriminant_spot_checks(
    omax: int = 100,
    v_samples: Sequence[Fraction] = (
        Fraction(0), Fraction(1, 8), Fraction(1, 4), Fraction(3, 8), Fraction(1, 2),
    ),
) -> Optional[tuple]:
    """Exact non-positivity of the certificate discriminants for O in [2, omax].

    A non-positive discriminant means the per-resource quadratic cannot
    change sign, so the grid verdict extends to every integer beyond it.
    Returns the first offending (name, v, O) or None.
    """
    for o in range(2, omax + 1):
        if qsign(pos_discriminant_high(o)) > 0:
            return ("pos_high", None, o)
        if poa_17_3_discriminant(o) > 0:
            return ("poa_17_3", None, o)
        for v in v_samples:
            if qsign(pos_discriminant_low(rational(v), o)) > 0:
                return ("pos_low", v, o)
    return None


# ---------------------------------------------------------------------------
# LP text export / parse
# ---------------------------------------------------------------------------


def _decimal_of(x: Fraction) -> tuple[str, bool]:
    """Decimal text for x; flag says whether it is exact."""
    den = x.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den == 1:
        k = max(twos, fives)
        scaled = abs(x.numerator) * 10**k // x.denominator
        head, tail = divmod(scaled, 10**k)
        text = str(head) if k == 0 else f"{head}.{tail:0{k}d}"
        return ("-" + text if x < 0 else text), True
    return repr(float(x)), False


def _term_text(coeff: Fraction, name: str, first: bool) -> str:
    mag, _ = _decimal_of(abs(coeff))
    sign = "-" if coeff < 0 else ("" if first else "+")
    lead = f"{sign} " if sign else ""
    if abs(coeff) == 1:
        return f"{lead}{name}"
    return f"{lead}{mag} {name}"


def _row_text(coeffs, variables, skip_zero=True) -> tuple[str, bool]:
    parts = []
    exact = True
    first = True
    for coeff, var in zip(coeffs, variables):
        if skip_zero and coeff == 0:
            continue
        parts.append(_term_text(coeff, var.name, first))
        exact = exact and _decimal_of(coeff)[1]
        first = False
    if not parts:
        return ("0 " + variables[0].name) if variables else "0", exact
    return " ".join(parts), exact


def export_lp(lp: LinearProgram) -> str:
    """Human-readable LP text: objective, constraints, bounds, End.

    Coefficients appear as decimal fractions; any row whose coefficients
    are not exactly decimal also carries a comment with the exact p/q
    values, so nothing is lost to rounding.
    """
    lines = [f"\\ {lp.name}"]
    lines.append("Maximize" if lp.sense == "max" else "Minimize")
    obj_text, obj_exact = _row_text(lp.objective, lp.variables)
    lines.append(f" obj: {obj_text}")
    if not obj_exact:
        exact = " + ".join(
            f"{coeff} {var.name}" for coeff, var in zip(lp.objective, lp.variables) if coeff != 0
        )
        lines.append(f"\\ exact obj: {exact}")
    lines.append("Subject To")
    for c in lp.constraints:
        row_text, row_exact = _row_text(c.coeffs, lp.variables)
        rhs_text, rhs_exact = _decimal_of(c.rhs)
        lines.append(f" {c.name}: {row_text} {c.relation} {rhs_text}")
        if not (row_exact and rhs_exact):
            exact = " + ".join(
                f"{coeff} {var.name}" for coeff, var in zip(c.coeffs, lp.variables) if coeff != 0
            )
            lines.append(f"\\ exact {c.name}: {exact} {c.relation} {c.rhs}")
    lines.append("Bounds")
    for var in lp.variables:
        lines.append(f" {var.name} >= 0" if var.nonneg else f" {var.name} free")
    lines.append("End")
    return "\n".join(lines) + "\n"


def parse_lp(text: str) -> LinearProgram:
    """Parse the :func:`export_lp` format back into a program.

    Decimal coefficients are read exactly; comment lines are ignored, so a
    round trip is faithful whenever every coefficient is decimal-exact.
    """
    name = "parsed"
    sense = None
    section = None
    objective_text = None
    constraint_texts: list[tuple[str, str]] = []
    bounds: list[tuple[str, bool]] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("\\"):
            if line.startswith("\\") and sense is None and len(line) > 1:
                name = line[1:].strip() or name
            continue
        lowered = line.lower()
        if lowered in ("maximize", "minimize"):
            sense = "max" if lowered == "maximize" else "min"
            section = "objective"
            continue
        if lowered == "subject to":
            section = "constraints"
            continue
        if lowered == "bounds":
            section = "bounds"
            continue
        if lowered == "end":
            break
        if section == "objective":
            objective_text = line.split(":", 1)[1].strip()
        elif section == "constraints":
            label, body = line.split(":", 1)
            constraint_texts.append((label.strip(), body.strip()))
        elif section == "bounds":
            if line.endswith("free"):
                bounds.append((line[: -len("free")].strip(), False))
            else:
                bounds.append((line.split(">=")[0].strip(), True))
    if sense is None or objective_text is None:
        raise ValueError("not a recognizable LP text")
    variables = tuple(Variable(n, nonneg) for n, nonneg in bounds)
    index = {var.name: i for i, var in enumerate(variables)}

    def parse_terms(body: str) -> tuple[Fraction, ...]:
        coeffs = [Fraction(0)] * len(variables)
        tokens = body.replace("+", " + ").replace("-", " - ").split()
        sign = 1
        pending: Optional[Fraction] = None
        for tok in tokens:
            if tok == "+":
                sign, pending = 1, None
            elif tok == "-":
                sign, pending = -1, None
            elif tok in index:
                coeffs[index[tok]] += sign * (pending if pending is not None else Fraction(1))
                sign, pending = 1, None
            else:
                pending = Fraction(tok)
        return tuple(coeffs)

    constraints = []
    for label, body in constraint_texts:
        for rel in ("<=", ">=", "="):
            if f" {rel} " in body:
                lhs_text, rhs_text = body.rsplit(f" {rel} ", 1)
                constraints.append(
                    Constraint(label, parse_terms(lhs_text), rel, Fraction(rhs_text))
                )
                break
        else:
            raise ValueError(f"constraint {label} has no relation")
    return LinearProgram(name, sense, variables, parse_terms(objective_text), tuple(constraints))

from fractions import Fraction

import pytest

from congames.certificates import (
    Constraint,
    DualCertificate,
    LinearProgram,
    Variable,
    build_dual,
    build_dual_potential,
    build_primal,
    build_primal_potential,
    check_dual_feasible,
    check_gamma_v_poa_certificate,
    check_gamma_v_pos_certificate,
    check_poa_grid_17_3,
    check_transpose_structure,
    discriminant_spot_checks,
    export_lp,
    parse_lp,
    poa_17_3_discriminant,
    poa_certificate,
    pos_certificate,
    pos_discriminant_high,
    pos_discriminant_low,
)
from congames.contexts import identity_context
from congames.equilibria import enumerate_nash, social_optimum
from congames.game import make_game, social_cost
from congames.instances import gen_ne2, gen_random, gen_tree_lb
from congames.numerics import SQRT2, SQRT3, MixedRadicalError, qsign

F = Fraction


def test_build_primal_ne2_shape():
    game, ctx = gen_ne2()
    lp = build_primal(game, ctx, (0, 0, 0), (1, 1, 1))
    assert len(lp.variables) == 9 and all(v.nonneg for v in lp.variables)
    stability = [c for c in lp.constraints if c.relation == "<="]
    normalization = [c for c in lp.constraints if c.relation == "="]
    assert len(stability) == 3 and len(normalization) == 1
    assert normalization[0].rhs == 1
    counts_k = (0, 0, 3, 1, 0, 1, 2, 0, 1)
    assert lp.objective == tuple(F(c * c) for c in counts_k)


def test_build_primal_identical_profiles_zero_rows():
    game, ctx = gen_ne2()
    lp = build_primal(game, ctx, (0, 0, 0), (0, 0, 0))
    for c in lp.constraints:
        if c.relation == "<=":
            assert all(x == 0 for x in c.coeffs)


def test_build_primal_two_player_shared_resource():
    # both on e at K, both alone at O: the stability row is 2 a_e - 1 a_own
    game = make_game([[{0}, {1}], [{0}, {2}]], [1, 1, 1], [0, 0, 0])
    lp = build_primal(game, identity_context(2), (0, 0), (1, 1))
    row = lp.constraints[0].coeffs
    assert row == (F(2), F(-1), 0)


def test_dual_rows_and_transpose():
    game, ctx = gen_ne2()
    primal = build_primal(game, ctx, (0, 0, 0), (1, 1, 1))
    dual = build_dual(game, ctx, (0, 0, 0), (1, 1, 1))
    assert len(dual.constraints) == game.m
    assert [v.name for v in dual.variables] == ["y1", "y2", "y3", "theta"]
    assert not dual.variables[-1].nonneg
    assert check_transpose_structure(primal, dual)


def test_transpose_structure_potential_form():
    game, ctx, k_prof, o_prof = gen_tree_lb(1)
    primal = build_primal_potential(game, F(1, 4), k_prof, o_prof)
    dual = build_dual_potential(game, F(1, 4), k_prof, o_prof)
    assert len(dual.constraints) == game.m  # one per tree node
    assert [v.name for v in dual.variables][0] == "x"
    assert check_transpose_structure(primal, dual)


def test_unused_resource_constraint_is_vacuous():
    game = make_game([[{0}, {1}]], [1, 1, 1], [0, 0, 0])
    dual = build_dual(game, identity_context(1), (0,), (1,))
    vacuous = dual.constraints[2]
    assert all(x == 0 for x in vacuous.coeffs) and vacuous.rhs == 0


def test_dual_feasible_17_3_on_sampled_instances():
    cert_theta, cert_y = F(17, 3), F(5, 3)
    checked = 0
    for seed in range(40):
        game, ctx = gen_random(seed, n=3, max_strategies=2, m=4,
                               ctx_kind="restricted_any", beta_bound=0)
        ne = enumerate_nash(game, ctx)
        if not ne:
            continue
        opt_profile, opt_value = social_optimum(game)
        dual = build_dual(game, ctx, ne[0], opt_profile)
        cert = DualCertificate(theta=cert_theta, y=(cert_y,) * game.n)
        assert check_dual_feasible(dual, cert).ok
        if opt_value > 0:
            # weak duality: the certificate value caps the realized ratio
            assert 3 * social_cost(game, ne[0]) <= 17 * opt_value
        checked += 1
    assert checked >= 10


def test_dual_infeasible_trivial_certificate():
    game = make_game([[{0}, {1}], [{2}]], [1, 1, 1], [0, 0, 0])
    dual = build_dual(game, identity_context(2), (0, 0), (1, 0))
    result = check_dual_feasible(dual, DualCertificate(theta=F(1), y=(F(0), F(0))))
    assert not result.ok
    assert result.constraint == "resource_1"  # 0 >= K_e^2 fails


def test_dual_feasibility_rejects_negative_multiplier():
    game, ctx = gen_ne2()
    dual = build_dual(game, ctx, (0, 0, 0), (1, 1, 1))
    cert = DualCertificate(theta=F(17, 3), y=(F(-1), F(5, 3), F(5, 3)))
    result = check_dual_feasible(dual, cert)
    assert not result.ok and result.constraint == "y1"


def test_dual_feasibility_mixed_radicals_error():
    game, ctx = gen_ne2()
    dual = build_dual(game, ctx, (0, 0, 0), (1, 1, 1))
    cert = DualCertificate(theta=1 + SQRT2, y=(SQRT3, SQRT3, SQRT3))
    with pytest.raises(MixedRadicalError):
        check_dual_feasible(dual, cert)


def test_poa_grid_origin_and_tight_point():
    assert check_poa_grid_17_3(0, 0).ok
    assert check_poa_grid_17_3(3, 1).ok
    # tightness at (K, O) = (3, 1): 45 - 35 + 17 = 27 = 3 * 9
    assert 5 * 9 - 5 * 1 * 7 + 17 * 1 == 3 * 9


def test_poa_grid_full_default():
    result = check_poa_grid_17_3(100, 100)
    assert result.ok and result.cells == 101 * 101


def test_poa_grid_catches_weakened_constants():
    bad_theta = check_poa_grid_17_3(20, 20, theta=F(16, 3))
    assert not bad_theta.ok and bad_theta.counterexample[:3] == (2, 1, 0)
    bad_y = check_poa_grid_17_3(20, 20, y=F(4, 3))
    assert not bad_y.ok


def test_poa_grid_parallel_matches_serial():
    serial = check_poa_grid_17_3(40, 20, theta=F(16, 3), jobs=1)
    parallel = check_poa_grid_17_3(40, 20, theta=F(16, 3), jobs=3)
    assert serial.counterexample == parallel.counterexample
    assert check_poa_grid_17_3(40, 20, jobs=3).ok


def test_pos_certificate_values():
    cert0 = pos_certificate(F(0))
    assert cert0.theta == 1 + SQRT3 / 3
    assert cert0.x == F(1, 2) and cert0.y == (SQRT3 / 3,)
    assert pos_certificate(F(1, 2)).theta == 1
    # both branch formulas coincide at the joint
    high = pos_certificate(F(1, 2))
    assert high.theta == 1 and high.y == (F(0),) and high.x == 1
    with pytest.raises(ValueError):
        pos_certificate(F(1))
    with pytest.raises(ValueError):
        pos_certificate(F(9, 8))


@pytest.mark.parametrize("v", [F(0), F(1, 8), F(1, 4), F(3, 8), F(1, 2), F(5, 8), F(3, 4), F(7, 8)])
def test_pos_certificate_grid_samples(v):
    assert check_gamma_v_pos_certificate(v, 25, 25).ok


def test_pos_certificate_grid_matches_factored_quadratic_low_branch():
    # oracle: the reduced row is proportional (positive factor) to
    # (2v - 1) f(K, O) for a quadratic f, so the signs must track exactly
    v = F(1, 4)
    cert = pos_certificate(v)
    s3 = SQRT3
    for k in range(16):
        for o in range(16):
            pot = F(k * (k + 1) - o * (o + 1)) - 2 * v * (k - o)
            stab = F(k * k - o * (k + 1)) - v * (k - o)
            g = cert.x * pot + cert.y[0] * stab + cert.theta * (o * o) - k * k
            f = (
                k * k * ((s3 - 1) * v + 3 - 2 * s3)
                - k * (2 * o - s3) * ((1 + s3) * v - s3)
                + o * (o - 1) * ((5 + 3 * s3) * v - 3 - 2 * s3)
            )
            assert qsign(g) == qsign((2 * v - 1) * f)


def test_pos_certificate_grid_matches_factored_quadratic_high_branch():
    v = F(3, 4)
    cert = pos_certificate(v)
    s3 = SQRT3
    for k in range(16):
        for o in range(16):
            pot = F(k * (k + 1) - o * (o + 1)) - 2 * v * (k - o)
            stab = F(k * k - o * (k + 1)) - v * (k - o)
            g = cert.x * pot + cert.y[0] * stab + cert.theta * (o * o) - k * k
            f = (
                k * k * (1 + s3)
                - k * (2 * o * (s3 - 1) + 1 + s3)
                + o * (o * (3 * s3 - 5) + 3 - s3)
            )
            assert qsign(g) == qsign(f)


def test_pos_certificate_grid_catches_corruption():
    v = F(1, 4)
    good = pos_certificate(v)
    worse = DualCertificate(theta=good.theta - F(1, 100), y=good.y, x=good.x)
    result = check_gamma_v_pos_certificate(v, 30, 30, certificate=worse)
    assert not result.ok


def test_pos_certificate_grid_parallel_matches_serial():
    v = F(1, 8)
    assert check_gamma_v_pos_certificate(v, 40, 15, jobs=2).ok
    good = pos_certificate(v)
    worse = DualCertificate(theta=good.theta - F(1, 50), y=good.y, x=good.x)
    a = check_gamma_v_pos_certificate(v, 40, 15, certificate=worse, jobs=1)
    b = check_gamma_v_pos_certificate(v, 40, 15, certificate=worse, jobs=2)
    assert a.counterexample[:2] == b.counterexample[:2]


def test_poa_certificate_values():
    assert poa_certificate(F(0), F(0)).theta == F(5, 2)
    assert poa_certificate(F(1, 2), F(1, 2)).theta == 3
    assert poa_certificate(F(3, 4), F(1, 2)).theta == 6
    with pytest.raises(ValueError):
        poa_certificate(F(1), F(0))
    with pytest.raises(ValueError):
        poa_certificate(F(1, 4), F(1, 2))


@pytest.mark.parametrize(
    "vbar,vund",
    [(F(0), F(0)), (F(1, 4), F(0)), (F(1, 2), F(1, 2)), (F(3, 4), F(1, 2)), (F(7, 8), F(0))],
)
def test_poa_certificate_grid_samples(vbar, vund):
    assert check_gamma_v_poa_certificate(vbar, vund, 30, 30).ok


def test_poa_certificate_grid_matches_reduced_inequalities():
    # high branch oracle: vund O(O-1) + vbar K(1-K) + O(K - 2O + 1) <= 0
    vbar, vund = F(3, 4), F(1, 2)
    cert = poa_certificate(vbar, vund)
    for k in range(16):
        for o in range(16):
            g = cert.y[0] * (k * (k - vbar) - o * (k + 1 - vund)) + cert.theta * o * o - k * k
            target = vund * o * (o - 1) + vbar * k * (1 - k) + o * (k - 2 * o + 1)
            assert (g >= 0) == (target <= 0)
    # low branch oracle: 3 vund O(O-1) - vbar(K^2 - 3K + 2O^2) - K^2 + 3KO - O(5O - 3) <= 0
    vbar, vund = F(1, 4), F(0)
    cert = poa_certificate(vbar, vund)
    for k in range(16):
        for o in range(16):
            g = cert.y[0] * (k * (k - vbar) - o * (k + 1 - vund)) + cert.theta * o * o - k * k
            target = (
                3 * vund * o * (o - 1)
                - vbar * (k * k - 3 * k + 2 * o * o)
                - k * k + 3 * k * o - o * (5 * o - 3)
            )
            assert (g >= 0) == (target <= 0)


def test_poa_certificate_grid_catches_corruption():
    good = poa_certificate(F(1, 2), F(1, 2))
    worse = DualCertificate(theta=good.theta - F(1, 100), y=good.y)
    assert not check_gamma_v_poa_certificate(F(1, 2), F(1, 2), 30, 30, certificate=worse).ok


def test_discriminants_non_positive():
    assert discriminant_spot_checks(100) is None
    assert qsign(pos_discriminant_high(2)) < 0
    assert qsign(pos_discriminant_low(F(1, 2), 2)) < 0
    assert poa_17_3_discriminant(2) < 0
    # O = 1 is genuinely outside the discriminant regime
    assert poa_17_3_discriminant(1) > 0


def test_export_lp_empty_program():
    lp = LinearProgram("empty", "max", (), (), ())
    text = export_lp(lp)
    for section in ("Maximize", "Subject To", "Bounds", "End"):
        assert section in text


def test_export_parse_roundtrip_ne2():
    game, ctx = gen_ne2()
    for build in (build_primal, build_dual):
        lp = build(game, ctx, (0, 0, 0), (1, 1, 1))
        back = parse_lp(export_lp(lp))
        assert back.sense == lp.sense
        assert back.variables == lp.variables
        assert back.objective == lp.objective
        assert back.constraints == lp.constraints


def test_export_inexact_coefficients_carry_exact_comments():
    lp = LinearProgram(
        "thirds", "min",
        (Variable("x", True),),
        (F(1, 3),),
        (Constraint("only", (F(2, 3),), ">=", F(1)),),
    )
    text = export_lp(lp)
    assert "\\ exact obj: 1/3 x" in text
    assert "\\ exact only: 2/3 x >= 1" in text


def test_parse_lp_rejects_garbage():
    with pytest.raises(ValueError):
        parse_lp("this is not a program\n")


def test_lp_shape_validation():
    with pytest.raises(ValueError):
        LinearProgram("bad", "max", (Variable("x", True),), (), ())
    with pytest.raises(ValueError):
        LinearProgram(
            "bad", "max", (Variable("x", True),), (F(1),),
            (Constraint("c", (F(1), F(2)), "<=", F(0)),),
        )

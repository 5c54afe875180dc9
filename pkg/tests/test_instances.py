from fractions import Fraction

import pytest

from congames.contexts import classify
from congames.equilibria import enumerate_nash, is_pure_nash, social_optimum
from congames.game import altruistic_cost, congestion, deviation_delta, social_cost
from congames.instances import (
    InstanceSpec,
    gen_gamma_v_pos_lb,
    gen_ne1,
    gen_ne2,
    gen_pos_lb,
    gen_random,
    gen_tree_lb,
    pos_lb_ratio,
    suggest_gamma_v_pos_lb_n1,
    suggest_pos_lb_n1,
    tree_eq_closed_form,
    tree_opt_closed_form,
)


def test_ne1_shape_and_flags():
    game, ctx = gen_ne1()
    assert game.n == 3 and game.m == 13
    assert game.alpha == tuple(map(Fraction, (9, 7, 16, 25, 14, 32, 363, 87, 383, 318, 1047, 160, 31)))
    flags = classify(ctx)
    assert flags.symmetric and not flags.restricted
    assert ctx.gamma[0][1] == Fraction(10, 211)
    assert ctx.gamma[0][2] == Fraction(2, 53)
    assert ctx.gamma[1][2] == Fraction(1, 9)
    assert altruistic_cost(game, ctx, (0, 0, 0), 0) > 260
    assert enumerate_nash(game, ctx) == ()


def test_ne2_shape_and_table_spots():
    game, ctx = gen_ne2()
    assert game.n == 3 and game.m == 9
    assert altruistic_cost(game, ctx, (0, 0, 0), 0) == 2148
    assert altruistic_cost(game, ctx, (1, 0, 0), 1) == 2128
    assert altruistic_cost(game, ctx, (1, 0, 0), 2) == 1159
    assert enumerate_nash(game, ctx) == ()


def test_ne2_documented_migration_from_all_second():
    # the recorded move for the all-second profile is player 2 to (2,1,2);
    # it strictly improves, though both deterministic policies would move
    # player 1 first (delta 9 beats delta 6)
    game, ctx = gen_ne2()
    assert deviation_delta(game, ctx, (1, 1, 1), 1, 0) == 1838 - 1832
    assert deviation_delta(game, ctx, (1, 1, 1), 0, 0) == 1850 - 1841


@pytest.mark.parametrize("h,players,resources", [(1, 9, 10), (2, 66, 67), (3, 417, 418)])
def test_tree_sizes(h, players, resources):
    game, ctx, k_prof, o_prof = gen_tree_lb(h)
    assert game.n == players and game.m == resources
    assert game.is_load_balancing
    assert len(k_prof) == len(o_prof) == players


def test_tree_latency_levels_h2():
    game, *_ = gen_tree_lb(2)
    # breadth-first ids: node 0 level 0, nodes 1..3 level 1, 4..12 level 2,
    # then two binary levels
    assert game.alpha[0] == 1
    assert game.alpha[1] == Fraction(3, 7)
    assert game.alpha[4] == Fraction(3, 5) * Fraction(3, 7)
    assert game.alpha[13] == Fraction(3, 5) * Fraction(3, 7) * Fraction(2, 5)
    assert game.alpha[-1] == Fraction(6, 5) * Fraction(6, 35)


def test_tree_context_boolean_symmetric():
    _, ctx, _, _ = gen_tree_lb(2)
    assert ctx.symmetric and ctx.unit_diagonal and ctx.restricted
    assert all(g in (0, 1) for row in ctx.gamma for g in row)


@pytest.mark.parametrize("h", [1, 2, 3])
def test_tree_equilibrium_and_closed_forms(h):
    game, ctx, k_prof, o_prof = gen_tree_lb(h)
    counts = congestion(game, k_prof)
    for i in range(game.n):
        assert deviation_delta(game, ctx, k_prof, i, 1 - k_prof[i], counts) == 0
    assert is_pure_nash(game, ctx, k_prof)[0]
    assert social_cost(game, o_prof) == tree_opt_closed_form(h)
    assert social_cost(game, k_prof) == tree_eq_closed_form(h)


def test_tree_ratio_monotone_below_17_3():
    ratios = []
    for h in (1, 2, 3):
        game, _ctx, k_prof, o_prof = gen_tree_lb(h)
        ratios.append(social_cost(game, k_prof) / social_cost(game, o_prof))
    assert all(a < b for a, b in zip(ratios, ratios[1:]))
    assert all(3 * r <= 17 for r in ratios)
    # leading coefficients of the two closed forms
    assert Fraction(153, 2) / Fraction(27, 2) == Fraction(17, 3)


def test_tree_node_budget_guard():
    with pytest.raises(ValueError):
        gen_tree_lb(8)
    with pytest.raises(ValueError):
        gen_tree_lb(0)


def test_pos_lb_resource_count():
    for n1, n2 in ((1, 1), (2, 1), (3, 2)):
        game, *_ = gen_pos_lb(n1, n2, Fraction(1, 1000))
        assert game.m == 2 * (n1 * n1 + n1 + 1)
        assert game.n == 2 * n1 + n2


def test_pos_lb_ratio_closed_form():
    delta = Fraction(1, 1000)
    game, ctx, k_prof, o_prof = gen_pos_lb(2, 1, delta)
    ratio = social_cost(game, k_prof) / social_cost(game, o_prof)
    assert ratio == pos_lb_ratio(2, 1, delta) == Fraction(40) / (24 + 4 * delta)


def test_pos_lb_k_is_equilibrium_and_o_is_optimal():
    game, ctx, k_prof, o_prof = gen_pos_lb(2, 1, Fraction(1, 1000))
    assert is_pure_nash(game, ctx, k_prof)[0]
    opt_profile, _ = social_optimum(game)
    assert opt_profile == o_prof


def test_pos_lb_equilibrium_set_is_the_balanced_family():
    # with a small offset the k-attracting margin is delta + 2(h' - h): it
    # vanishes whenever the two flexible groups commit equally, so every
    # balanced profile (the o-sided one included) is stable
    game, ctx, k_prof, o_prof = gen_pos_lb(2, 1, Fraction(1, 1000))
    ne = set(enumerate_nash(game, ctx))
    balanced = set()
    for profile in game.profiles():
        h = sum(1 for x in profile[:2] if x == 0)
        h2 = sum(1 for x in profile[2:4] if x == 0)
        if h == h2:
            balanced.add(profile)
    assert ne == balanced
    assert k_prof in ne and o_prof in ne


def test_pos_lb_large_offset_restores_uniqueness():
    game, ctx, k_prof, _ = gen_pos_lb(2, 1, Fraction(3))
    assert enumerate_nash(game, ctx) == (k_prof,)


def test_pos_lb_parameter_validation():
    with pytest.raises(ValueError):
        gen_pos_lb(0, 1, Fraction(1, 1000))
    with pytest.raises(ValueError):
        gen_pos_lb(2, 1, Fraction(0))


@pytest.mark.parametrize("v", [Fraction(0), Fraction(1, 4), Fraction(1, 2)])
def test_gamma_v_pos_lb_low_branch_unique_equilibrium(v):
    game, ctx, k_prof, o_prof = gen_gamma_v_pos_lb(v, 2, 1, Fraction(1, 1000), "low")
    assert game.m == 2 * 2 + 1  # n1^2 + 1
    levels = classify(ctx).altruism_levels
    assert levels == (v, v, v)
    assert enumerate_nash(game, ctx) == (k_prof,)


def test_gamma_v_pos_lb_low_ratio_formula():
    v, n1, n2, delta = Fraction(0), 2, 1, Fraction(1, 1000)
    game, _ctx, k_prof, o_prof = gen_gamma_v_pos_lb(v, n1, n2, delta, "low")
    alpha_a = Fraction(n1 + 2 * n2 + 1 - 2 * v) / (2 * (1 - v))
    numerator = Fraction(n1 * (n1 - 1), 2) + (n1 + n2) ** 2
    denominator = (alpha_a + delta) * n1 + Fraction(n1 * (n1 - 1), 2) + n2 * n2
    assert social_cost(game, k_prof) == numerator
    assert social_cost(game, o_prof) == denominator
    assert social_cost(game, k_prof) / social_cost(game, o_prof) == numerator / denominator


def test_gamma_v_pos_lb_high_branch_unique_equilibrium():
    game, ctx, k_prof, _ = gen_gamma_v_pos_lb(Fraction(3, 4), 2, 1, Fraction(1, 1000), "high")
    assert enumerate_nash(game, ctx) == (k_prof,)
    # the negative offset must keep latencies positive
    assert all(game.alpha[e] + game.beta[e] > 0 for e in range(game.m))


def test_gamma_v_pos_lb_branch_validation():
    with pytest.raises(ValueError):
        gen_gamma_v_pos_lb(Fraction(3, 4), 2, 1, Fraction(1, 1000), "low")
    with pytest.raises(ValueError):
        gen_gamma_v_pos_lb(Fraction(1, 4), 2, 1, Fraction(1, 1000), "high")
    with pytest.raises(ValueError):
        gen_gamma_v_pos_lb(Fraction(1), 2, 1, Fraction(1, 1000), "high")
    with pytest.raises(ValueError):
        gen_gamma_v_pos_lb(Fraction(3, 4), 2, 1, Fraction(100), "high")
    with pytest.raises(ValueError):
        gen_gamma_v_pos_lb(Fraction(1, 4), 2, 1, Fraction(1, 1000), "sideways")


def test_random_generator_is_deterministic():
    a = gen_random(123, n=4, max_strategies=3, m=6, ctx_kind="gamma_v")
    b = gen_random(123, n=4, max_strategies=3, m=6, ctx_kind="gamma_v")
    assert a[0] == b[0] and a[1].gamma == b[1].gamma
    c = gen_random(124, n=4, max_strategies=3, m=6, ctx_kind="gamma_v")
    assert a[0] != c[0] or a[1].gamma != c[1].gamma


def test_random_context_kinds_classify_as_requested():
    for seed in range(20):
        _, ctx = gen_random(seed, ctx_kind="identity")
        assert classify(ctx).altruism_levels == (0,) * ctx.n
        _, ctx = gen_random(seed, ctx_kind="restricted_symmetric")
        flags = classify(ctx)
        assert flags.restricted and flags.symmetric and flags.unit_diagonal
        _, ctx = gen_random(seed, ctx_kind="restricted_any")
        flags = classify(ctx)
        assert flags.restricted and flags.unit_diagonal
        _, ctx = gen_random(seed, ctx_kind="gamma_v")
        assert classify(ctx).gamma_v_form
        _, ctx = gen_random(seed, ctx_kind="arbitrary_nonneg")
        assert all(g >= 0 for row in ctx.gamma for g in row)


def test_random_beta_bound_zero():
    game, _ = gen_random(7, beta_bound=0)
    assert all(b == 0 for b in game.beta)


def test_random_parameter_validation():
    with pytest.raises(ValueError):
        gen_random(0, ctx_kind="spiteful")
    with pytest.raises(ValueError):
        gen_random(0, n=0)


def test_nearest_integer_suggestions():
    # 2(1 + sqrt 2) = 4.828..., 1 + sqrt 3 = 2.732...
    assert suggest_pos_lb_n1(1) == 5
    assert suggest_gamma_v_pos_lb_n1(1) == 3
    assert suggest_pos_lb_n1(10) == 48
    assert suggest_gamma_v_pos_lb_n1(10) == 27
    for n2 in range(1, 40):
        assert suggest_pos_lb_n1(n2) == round(2 * (1 + 2**0.5) * n2)
        assert suggest_gamma_v_pos_lb_n1(n2) == round((1 + 3**0.5) * n2)


def test_instance_spec_dispatch():
    assert len(InstanceSpec("ne2").generate()) == 2
    assert len(InstanceSpec("tree_lb", h=1).generate()) == 4
    assert len(InstanceSpec("pos_lb", n1=1, n2=1).generate()) == 4
    assert len(InstanceSpec("gammav_pos_lb_high", v=Fraction(3, 4)).generate()) == 4
    assert len(InstanceSpec("random", seed=5).generate()) == 2
    with pytest.raises(ValueError):
        InstanceSpec("mystery")

import math

import pytest

from multalpha.alphasel import (
    ladder_from_costs)
from multalpha.errors import (
    MultalphaContractError,
    MultalphaDomainError)
from multalpha.prng import (
    SeededGenerator)
from multalpha.scenario import (
    AlphaLadder,
    ContinuousPrevalence,
    CostSchedule,
    DichotomousPrevalence,
    EffectDependentCosts,
    RiskReductionPayoff,
    density_at,
    meaningful_probability,
    random_costs,
    riskdiff_costs,
    surprisal_costs,
    surprisal_level_costs,
    surprisal_schedule,
    surprisal_weights)
from multalpha.testmodel import (
    RiskDifferenceModel,
    StandardizedEffectModel)


def test_density_at():
    prev = ContinuousPrevalence(0.0, 0.015)
    assert density_at(prev, 0.0) == pytest.approx(
        1.0 / (0.015 * math.sqrt(2.0 * math.pi)))
    assert density_at(prev, 0.01) == pytest.approx(density_at(prev, -0.01))
    assert density_at(prev, 0.045) == pytest.approx(0.004432 / 0.015,
                                                    rel=1e-3)


def test_meaningful_probability():
    assert meaningful_probability(
        ContinuousPrevalence(0.0, 0.5, 0.64)) == pytest.approx(0.10, abs=5e-3)
    assert meaningful_probability(
        ContinuousPrevalence(0.0, 1.0, 0.64)) == pytest.approx(0.26, abs=5e-3)
    assert meaningful_probability(
        ContinuousPrevalence(0.3, 1.0, 0.3)) == 0.5


def test_meaningful_probability_direction_and_complement():
    prev = ContinuousPrevalence(-0.02, 0.015, -0.0177, -1)
    assert prev.meaningful_probability() > 0.5
    assert (prev.meaningful_probability() +
            prev.non_meaningful_probability()) == pytest.approx(1.0,
                                                                abs=1e-10)


def test_integration_domain_clipped_to_effect_range():
    prev = ContinuousPrevalence(0.0, 0.05)
    assert prev.integration_domain(8.0) == pytest.approx((-0.4, 0.4))
    assert prev.integration_domain(8.0, (-0.092, 0.908)) == pytest.approx(
        (-0.092, 0.4))
    with pytest.raises(MultalphaDomainError):
        ContinuousPrevalence(5.0, 0.01).integration_domain(8.0, (0.0, 1.0))


def test_prevalence_validation():
    with pytest.raises(MultalphaDomainError):
        ContinuousPrevalence(0.0, 0.0)
    with pytest.raises(MultalphaDomainError):
        ContinuousPrevalence(0.0, 1.0, 0.0, 0)
    with pytest.raises(MultalphaDomainError):
        DichotomousPrevalence(1.1, 0.5)


def test_dichotomous_from_difference():
    model = RiskDifferenceModel(0.092, -0.018, 1000)
    prev = DichotomousPrevalence.from_difference(model, 0.007, 0.5)
    assert prev.effect_true == pytest.approx(-0.025)
    up = DichotomousPrevalence.from_difference(
        StandardizedEffectModel(24, 0.2), 0.5, 0.1)
    assert up.effect_true == pytest.approx(0.7)
    assert up.effect_null is None


def test_alpha_ladder():
    ladder = AlphaLadder([0.25, 0.05, 0.001])
    assert ladder.k == 3
    assert ladder.with_sentinel() == (0.25, 0.05, 0.001, 0.0)
    for levels in ([], [0.05, 0.05], [0.01, 0.05], [1.0], [0.0]):
        with pytest.raises(MultalphaContractError):
            AlphaLadder(levels)


def test_surprisal_costs():
    sched = surprisal_costs(AlphaLadder([0.25, 0.05, 0.001]), 1.0, 0.5)
    assert sched.c0 == pytest.approx((2.0, 4.3219, 9.9658), abs=1e-4)
    for c0, c1 in zip(sched.c0, sched.c1):
        assert c1 / c0 == pytest.approx(0.5)
    single = surprisal_costs(AlphaLadder([0.05]), 3.0, 1.0)
    assert single.c0 == pytest.approx((3.0 * -math.log2(0.05),))
    with pytest.raises(MultalphaDomainError):
        surprisal_costs(AlphaLadder([0.05]), 0.0, 1.0)


def test_surprisal_schedule_tops_out_at_given_costs():
    sched = surprisal_schedule(AlphaLadder([0.25, 0.05, 0.001]), 707.0, 293.0)
    assert sched.c0[-1] == pytest.approx(707.0)
    assert sched.c1[-1] == pytest.approx(293.0)
    assert sched.is_proportional()


def test_surprisal_costs_round_trip_through_ladder_inversion():
    ladder = AlphaLadder([0.2, 0.03, 0.004, 1e-5])
    sched = surprisal_costs(ladder, 2.5, 1.0)
    recovered = ladder_from_costs(ladder.levels[0], sched.c0)
    for a, b in zip(recovered.levels, ladder.levels):
        assert a == pytest.approx(b, rel=1e-9)


def test_surprisal_weights():
    assert surprisal_weights(AlphaLadder([0.25, 0.05, 0.001])) == \
        pytest.approx([0.2006, 0.2327, 0.5666], abs=1e-3)
    assert surprisal_weights(AlphaLadder([0.25, 0.025])) == pytest.approx(
        [0.3757, 0.6243], abs=1e-3)
    assert surprisal_weights(AlphaLadder([0.05])) == [1.0]


def test_cost_schedule_differences():
    sched = CostSchedule([1.0, 3.0, 6.0], [0.5, 0.5, 2.0])
    assert sched.delta0() == [1.0, 2.0, 3.0]
    assert sched.delta1() == [0.5, 0.0, 1.5]
    assert not sched.is_proportional()
    with pytest.raises(MultalphaContractError):
        sched.proportionality_ratio()


def test_cost_schedule_telescoping_identity():
    sched = random_costs(SeededGenerator(11), 4)
    levels = AlphaLadder([0.2, 0.05, 0.01, 0.001]).with_sentinel()
    lhs = math.fsum(c * (levels[m] - levels[m + 1])
                    for m, c in enumerate(sched.c0))
    rhs = math.fsum(d * a for d, a in zip(sched.delta0(), levels))
    assert lhs == pytest.approx(rhs, abs=1e-12)


@pytest.mark.parametrize('c0,c1', [([], []), ([1.0], [1.0, 2.0]),
                                   ([2.0, 1.0], [1.0, 1.0]),
                                   ([-1.0], [1.0]),
                                   ([1.0, math.inf], [1.0, 2.0])])
def test_cost_schedule_contract(c0, c1):
    with pytest.raises(MultalphaContractError):
        CostSchedule(c0, c1)


def test_random_costs_deterministic_and_nondecreasing():
    a = random_costs(SeededGenerator(5), 3)
    b = random_costs(SeededGenerator(5), 3)
    assert a == b
    assert a.k == 3
    assert list(a.c0) == sorted(a.c0)
    assert list(a.c1) == sorted(a.c1)


def test_random_costs_means():
    rng = SeededGenerator(2024)
    d0, d1 = [], []
    for _ in range(20000):
        sched = random_costs(rng, 1)
        d0.append(sched.c0[0])
        d1.append(sched.c1[0])
    assert math.fsum(d0) / len(d0) == pytest.approx(50.0, rel=0.02)
    assert math.fsum(d1) / len(d1) == pytest.approx(12.5, rel=0.02)


@pytest.mark.parametrize('k,range0,range1', [(0, (0.0, 1.0), (0.0, 1.0)),
                                             (2, (1.0, 0.0), (0.0, 1.0)),
                                             (2, (0.0, 1.0), (-1.0, 1.0))])
def test_random_costs_domain(k, range0, range1):
    with pytest.raises(MultalphaDomainError):
        random_costs(SeededGenerator(1), k, range0, range1)


def test_risk_reduction_payoff():
    payoff = RiskReductionPayoff(40000.0, -707.0 / 40000.0)
    assert payoff(-0.025) == pytest.approx(40000.0 * 0.025 - 707.0)
    assert payoff(0.0) == 0.0


def test_riskdiff_costs():
    costs = riskdiff_costs(707.0, 40000.0, 2.0)
    assert costs.cost0(-0.01) == pytest.approx(1414.0)
    assert costs.cost1(-0.05) == pytest.approx(2.0 * (2000.0 - 707.0))
    with pytest.raises(MultalphaDomainError):
        riskdiff_costs(50000.0, 40000.0)


def test_effect_dependent_costs_scaling_shares_functions():
    base = EffectDependentCosts.constant(2.0, 3.0)
    half = base.scaled(0.5)
    assert half.cost0(1.0) == 1.0
    assert half.cost1(1.0) == 1.5
    assert half.shares_functions(base)
    assert base.scaled(1.0, 2.0).scale1 == 6.0
    with pytest.raises(MultalphaDomainError):
        EffectDependentCosts.constant(-1.0, 1.0)


def test_surprisal_level_costs_sum_to_base():
    ladder = AlphaLadder([0.25, 0.05, 0.001])
    base = riskdiff_costs(707.0, 40000.0)
    levels = surprisal_level_costs(ladder, base)
    assert math.fsum(c.scale0 for c in levels) == pytest.approx(base.scale0)
    assert math.fsum(c.scale1 for c in levels) == pytest.approx(base.scale1)
    assert all(c.shares_functions(base) for c in levels)

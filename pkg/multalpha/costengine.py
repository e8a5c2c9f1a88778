"""Expected total error costs of single- and multi-alpha tests.

Type I costs accrue on non-meaningful effects at the rejection probability of
each level; Type II costs accrue on meaningful effects at the non-rejection
probability. For a ladder, level m contributes its cost differences
Delta C0(m) and Delta C1(m) weighted by the error rates at alpha_m.
"""

import math

from collections import (
    namedtuple)
from typing import (
    List,
    Optional,
    Sequence,
    Tuple)

from multalpha.errors import (
    MultalphaContractError)
from multalpha.quadrature import (
    integrate)
from multalpha.scenario import (
    PROPORTIONAL_TOL,
    AlphaLadder,
    ContinuousPrevalence,
    CostSchedule,
    DichotomousPrevalence,
    EffectDependentCosts)

TAIL_SDS = 8.0

CostBreakdown = namedtuple(
    'CostBreakdown',
    ['omega0', 'omega1', 'total', 'per_level', 'weights'])
"""Expected Type I and Type II costs of a multi-alpha test.

`per_level` holds the single-level costs at each alpha with the top-level
costs; `weights` is None unless the costs are level-proportional.
"""


def _breakdown(omega0: float, omega1: float, per_level: Sequence[float],
               weights: Optional[Sequence[float]]) -> CostBreakdown:
    return CostBreakdown(
        omega0, omega1, omega0 + omega1, tuple(per_level),
        None if weights is None else tuple(weights))


def _check_lengths(ladder: AlphaLadder, k: int, what: str) -> None:
    if ladder.k != k:
        raise MultalphaContractError(
            'Ladder has ' + str(ladder.k) + ' levels but ' + what + ' has ' +
            str(k))


def dichotomous_rates(prev: DichotomousPrevalence, model,
                       alpha: float) -> Tuple[float, float]:
    """(Type I rate, Type II rate) for a dichotomous scenario."""
    curve = model.rejection_curve(alpha)
    if prev.effect_null is None:
        type_one = alpha
    else:
        type_one = curve(prev.effect_null)
    return type_one, 1.0 - curve(prev.effect_true)


def cost_single_dichotomous(prev: DichotomousPrevalence, model, alpha: float,
                            C0: float, C1: float) -> float:
    """C0 (1 - P) alpha + C1 P beta(d, alpha)."""
    type_one, beta = dichotomous_rates(prev, model, alpha)
    return math.fsum([C0 * (1.0 - prev.P) * type_one, C1 * prev.P * beta])


def _check_compatible(prev: ContinuousPrevalence, model) -> None:
    if (prev.direction != model.direction or
            abs(prev.boundary - model.boundary) > 1e-12):
        raise MultalphaContractError(
            'Prevalence boundary ' + repr(prev.boundary) + ' (direction ' +
            str(prev.direction) + ') does not match the test model boundary ' +
            repr(model.boundary) + ' (direction ' + str(model.direction) +
            ')')


def _sides(prev: ContinuousPrevalence, model,
           tail_sds: float) -> Tuple[Tuple[float, float],
                                     Tuple[float, float]]:
    """(non-meaningful, meaningful) integration intervals."""
    lo, hi = prev.integration_domain(tail_sds, model.effect_range)
    m = min(max(model.boundary, lo), hi)
    if model.direction > 0:
        return (lo, m), (m, hi)
    return (m, hi), (lo, m)


def error_rate_integrals(prev: ContinuousPrevalence, model, alpha: float,
                         costs: Optional[EffectDependentCosts]=None,
                         tail_sds: float=TAIL_SDS) -> Tuple[float, float]:
    """Unscaled cost-weighted Type I and Type II integrals at `alpha`.

    Returns (int type_one(e) beta0(e) p(e) de, int type_two(e) beta1(e) p(e)
    de); the cost scales of `costs` are not applied.
    """
    _check_compatible(prev, model)
    if costs is None:
        costs = EffectDependentCosts.constant(1.0, 1.0)
    curve = model.rejection_curve(alpha)
    density = prev.density_at
    type_one, type_two = costs.type_one, costs.type_two

    def f0(e: float) -> float:
        return type_one(e) * curve(e) * density(e)

    def f1(e: float) -> float:
        return type_two(e) * (1.0 - curve(e)) * density(e)

    (a0, b0), (a1, b1) = _sides(prev, model, tail_sds)
    return integrate(f0, a0, b0), integrate(f1, a1, b1)


def cost_single_continuous(prev: ContinuousPrevalence, model, alpha: float,
                           costs: EffectDependentCosts,
                           tail_sds: float=TAIL_SDS) -> float:
    """Expected total error cost with a continuous prevalence of effects."""
    i0, i1 = error_rate_integrals(prev, model, alpha, costs, tail_sds)
    return math.fsum([costs.scale0 * i0, costs.scale1 * i1])


def weighted_decomposition(ladder: AlphaLadder,
                           sched: CostSchedule) -> List[float]:
    """Weights Delta C0(m) / C0(k) of the single-level costs."""
    _check_lengths(ladder, sched.k, 'the cost schedule')
    sched.proportionality_ratio()
    top = sched.c0[-1]
    return [d / top for d in sched.delta0()]


def cost_multi_dichotomous(prev: DichotomousPrevalence, model,
                           ladder: AlphaLadder,
                           sched: CostSchedule) -> CostBreakdown:
    """Multi-alpha expected cost with a dichotomous prevalence."""
    _check_lengths(ladder, sched.k, 'the cost schedule')
    rates = [dichotomous_rates(prev, model, a) for a in ladder.levels]
    P = prev.P

    omega0 = math.fsum(
        (1.0 - P) * d * r[0] for d, r in zip(sched.delta0(), rates))
    omega1 = math.fsum(
        P * d * r[1] for d, r in zip(sched.delta1(), rates))
    c0k, c1k = sched.c0[-1], sched.c1[-1]
    per_level = [math.fsum([c0k * (1.0 - P) * t1, c1k * P * beta])
                 for t1, beta in rates]

    weights = (weighted_decomposition(ladder, sched)
               if sched.is_proportional() else None)
    return _breakdown(omega0, omega1, per_level, weights)


def _summed(costs: Sequence[EffectDependentCosts]) -> EffectDependentCosts:
    def type_one(e: float) -> float:
        return math.fsum(c.cost0(e) for c in costs)

    def type_two(e: float) -> float:
        return math.fsum(c.cost1(e) for c in costs)

    return EffectDependentCosts(type_one, type_two)


def _level_weights(costs: Sequence[EffectDependentCosts]) -> Optional[
        List[float]]:
    total0 = math.fsum(c.scale0 for c in costs)
    total1 = math.fsum(c.scale1 for c in costs)
    if total0 <= 0.0:
        return None
    weights = [c.scale0 / total0 for c in costs]
    if total1 > 0.0:
        for w, c in zip(weights, costs):
            if abs(c.scale1 / total1 - w) > PROPORTIONAL_TOL:
                return None
    return weights


def cost_multi_continuous(
        prev: ContinuousPrevalence, model, ladder: AlphaLadder,
        costs_per_level: Sequence[EffectDependentCosts],
        tail_sds: float=TAIL_SDS) -> CostBreakdown:
    """Multi-alpha expected cost with a continuous prevalence.

    `costs_per_level` holds the cost differences Delta C(m; e). When every
    level scales the same cost functions, one pair of integrals per alpha
    serves both the ladder cost and the single-level costs.
    """
    _check_lengths(ladder, len(costs_per_level), 'the cost sequence')
    base = costs_per_level[0]
    shared = all(c.shares_functions(base) for c in costs_per_level)

    omega0_terms, omega1_terms, per_level = [], [], []
    if shared:
        top0 = math.fsum(c.scale0 for c in costs_per_level)
        top1 = math.fsum(c.scale1 for c in costs_per_level)
        for a, c in zip(ladder.levels, costs_per_level):
            i0, i1 = error_rate_integrals(prev, model, a, base, tail_sds)
            omega0_terms.append(c.scale0 * i0)
            omega1_terms.append(c.scale1 * i1)
            per_level.append(math.fsum([top0 * i0, top1 * i1]))
        weights = _level_weights(costs_per_level)
    else:
        top = _summed(costs_per_level)
        for a, c in zip(ladder.levels, costs_per_level):
            i0, i1 = error_rate_integrals(prev, model, a, c, tail_sds)
            omega0_terms.append(c.scale0 * i0)
            omega1_terms.append(c.scale1 * i1)
            per_level.append(
                cost_single_continuous(prev, model, a, top, tail_sds))
        weights = None

    return _breakdown(math.fsum(omega0_terms), math.fsum(omega1_terms),
                      per_level, weights)

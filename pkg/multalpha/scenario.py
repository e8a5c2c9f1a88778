"""Prevalence models, alpha ladders and cost schedules of research studies."""

import math

from collections import (
    namedtuple)
from itertools import (
    accumulate)
from typing import (
    Callable,
    List,
    Optional,
    Sequence,
    Tuple)

from multalpha.errors import (
    MultalphaContractError,
    MultalphaDomainError)
from multalpha.prng import (
    SeededGenerator)
from multalpha.specfun import (
    SQRT2PI,
    normal_cdf,
    surprisal)

PROPORTIONAL_TOL = 1e-9

_DichotomousPrevalence = namedtuple(
    '_DichotomousPrevalence',
    ['P', 'effect_true', 'effect_null'])


class DichotomousPrevalence(_DichotomousPrevalence):
    """A proportion `P` of tested hypotheses carry the meaningful effect.

    When `effect_null` is None the false hypotheses sit on the boundary and
    incur a Type I error rate of exactly alpha.
    """

    def __new__(cls, P: float, effect_true: float,
                effect_null: Optional[float]=None) -> 'DichotomousPrevalence':
        if not (0.0 <= P <= 1.0):
            raise MultalphaDomainError(
                'Prevalence P must lie in [0, 1], got ' + repr(P))
        return super(DichotomousPrevalence, cls).__new__(
            cls, P, effect_true, effect_null)

    @classmethod
    def from_difference(cls, model, d: float,
                        P: float) -> 'DichotomousPrevalence':
        """True effect `d` beyond the model boundary, in its meaningful
        direction."""
        return cls(P, model.boundary + model.direction * d)


_ContinuousPrevalence = namedtuple(
    '_ContinuousPrevalence',
    ['mean', 'sd', 'boundary', 'direction'])


class ContinuousPrevalence(_ContinuousPrevalence):
    """Normally distributed true effects with a meaningful-effect boundary."""

    def __new__(cls, mean: float, sd: float, boundary: float=0.0,
                direction: int=1) -> 'ContinuousPrevalence':
        if not (sd > 0.0) or not math.isfinite(sd):
            raise MultalphaDomainError(
                'Prevalence sd must be positive, got ' + repr(sd))
        elif direction not in (1, -1):
            raise MultalphaDomainError(
                'Direction must be +1 or -1, got ' + repr(direction))
        return super(ContinuousPrevalence, cls).__new__(
            cls, mean, sd, boundary, direction)

    def density_at(self, e: float) -> float:
        z = (e - self.mean) / self.sd
        return math.exp(-0.5 * z * z) / (self.sd * SQRT2PI)

    def meaningful_probability(self) -> float:
        return normal_cdf(self.direction * (self.mean - self.boundary) /
                          self.sd)

    def non_meaningful_probability(self) -> float:
        return normal_cdf(-self.direction * (self.mean - self.boundary) /
                          self.sd)

    def integration_domain(
            self, tail_sds: float=8.0,
            effect_range: Tuple[float, float]=(-math.inf, math.inf)
    ) -> Tuple[float, float]:
        """mean +/- `tail_sds` sd, clipped to the feasible effect range."""
        lo = max(self.mean - tail_sds * self.sd, effect_range[0])
        hi = min(self.mean + tail_sds * self.sd, effect_range[1])
        if not (lo < hi):
            raise MultalphaDomainError(
                'Prevalence mass lies outside the feasible effect range ' +
                repr(effect_range))
        return lo, hi


def density_at(model: ContinuousPrevalence, e: float) -> float:
    """Normal prevalence density at effect `e`."""
    return model.density_at(e)


def meaningful_probability(model: ContinuousPrevalence) -> float:
    """Prevalence mass on the meaningful side of the boundary."""
    return model.meaningful_probability()


_AlphaLadder = namedtuple(
    '_AlphaLadder',
    ['levels'])


class AlphaLadder(_AlphaLadder):
    """Strictly decreasing alpha levels, one per decision level."""

    def __new__(cls, levels: Sequence[float]) -> 'AlphaLadder':
        levels = tuple(float(a) for a in levels)
        if not levels:
            raise MultalphaContractError(
                'An alpha ladder needs at least one level')
        for a in levels:
            if not (0.0 < a < 1.0):
                raise MultalphaContractError(
                    'Alpha levels must lie in (0, 1), got ' + repr(a))
        for prev, cur in zip(levels, levels[1:]):
            if not (cur < prev):
                raise MultalphaContractError(
                    'Alpha levels must be strictly decreasing, got ' +
                    repr(prev) + ' followed by ' + repr(cur))
        return super(AlphaLadder, cls).__new__(cls, levels)

    @property
    def k(self) -> int:
        return len(self.levels)

    def with_sentinel(self) -> Tuple[float, ...]:
        """Levels followed by the implicit alpha_{k+1} = 0."""
        return self.levels + (0.0,)

    def surprisals(self) -> List[float]:
        return [surprisal(a) for a in self.levels]


_CostSchedule = namedtuple(
    '_CostSchedule',
    ['c0', 'c1'])


class CostSchedule(_CostSchedule):
    """Cumulative Type I costs C0(m) and Type II payoffs C1(m)."""

    def __new__(cls, c0: Sequence[float],
                c1: Sequence[float]) -> 'CostSchedule':
        c0 = tuple(float(c) for c in c0)
        c1 = tuple(float(c) for c in c1)
        if not c0 or len(c0) != len(c1):
            raise MultalphaContractError(
                'Cost schedules need matching non-empty C0 and C1 sequences, '
                'got lengths ' + str(len(c0)) + ' and ' + str(len(c1)))
        for name, seq in (('C0', c0), ('C1', c1)):
            prev = 0.0
            for m, c in enumerate(seq, 1):
                if not (c >= prev) or not math.isfinite(c):
                    raise MultalphaContractError(
                        name + ' must be nonnegative and nondecreasing; ' +
                        name + '(' + str(m) + ') = ' + repr(c) +
                        ' follows ' + repr(prev))
                prev = c
        return super(CostSchedule, cls).__new__(cls, c0, c1)

    @property
    def k(self) -> int:
        return len(self.c0)

    def delta0(self) -> List[float]:
        """Delta C0(m) = C0(m) - C0(m - 1), with C0(0) = 0."""
        return [c - p for c, p in zip(self.c0, (0.0,) + self.c0[:-1])]

    def delta1(self) -> List[float]:
        return [c - p for c, p in zip(self.c1, (0.0,) + self.c1[:-1])]

    def proportionality_ratio(self, tol: float=PROPORTIONAL_TOL) -> float:
        """The constant r with C1 = r * C0, or a contract error."""
        top = self.c0[-1]
        if top <= 0.0:
            raise MultalphaContractError(
                'Proportional decomposition needs C0(k) > 0')
        r = self.c1[-1] / top
        for m, (c0, c1) in enumerate(zip(self.c0, self.c1), 1):
            if abs(c1 - r * c0) > tol * max(1.0, abs(c1)):
                raise MultalphaContractError(
                    'Schedule is not proportional: C1(' + str(m) + ')/C0(' +
                    str(m) + ') = ' + repr(c1 / c0 if c0 else math.inf) +
                    ' differs from C1(k)/C0(k) = ' + repr(r))
        return r

    def is_proportional(self, tol: float=PROPORTIONAL_TOL) -> bool:
        try:
            self.proportionality_ratio(tol)
        except MultalphaContractError:
            return False
        return True


def unit_cost(e: float) -> float:
    """Effect-independent unit cost."""
    return 1.0


_RiskReductionPayoff = namedtuple(
    '_RiskReductionPayoff',
    ['hospitalization_cost', 'boundary'])


class RiskReductionPayoff(_RiskReductionPayoff):
    """Net saving cH * (M - rd) of treating at true risk difference `rd`.

    Equals cH (r1 - r2) - cT with M = -cT / cH; zero where treatment does not
    pay for itself.
    """

    def __call__(self, rd: float) -> float:
        return max(0.0, self.hospitalization_cost * (self.boundary - rd))


_EffectDependentCosts = namedtuple(
    '_EffectDependentCosts',
    ['type_one', 'type_two', 'scale0', 'scale1'])


class EffectDependentCosts(_EffectDependentCosts):
    """Costs C0(e) = scale0 * type_one(e) and C1(e) = scale1 * type_two(e).

    Cost levels derived from one another through `scaled` share their cost
    functions, which lets the engine reuse unit integrals across levels.
    """

    def __new__(cls, type_one: Callable[[float], float],
                type_two: Callable[[float], float], scale0: float=1.0,
                scale1: float=1.0) -> 'EffectDependentCosts':
        if not (scale0 >= 0.0 and scale1 >= 0.0):
            raise MultalphaDomainError(
                'Cost scales must be nonnegative, got ' + repr(scale0) +
                ' and ' + repr(scale1))
        return super(EffectDependentCosts, cls).__new__(
            cls, type_one, type_two, float(scale0), float(scale1))

    @classmethod
    def constant(cls, c0: float, c1: float) -> 'EffectDependentCosts':
        return cls(unit_cost, unit_cost, c0, c1)

    def cost0(self, e: float) -> float:
        return self.scale0 * self.type_one(e)

    def cost1(self, e: float) -> float:
        return self.scale1 * self.type_two(e)

    def scaled(self, factor0: float,
               factor1: Optional[float]=None) -> 'EffectDependentCosts':
        if factor1 is None:
            factor1 = factor0
        return EffectDependentCosts(
            self.type_one, self.type_two, self.scale0 * factor0,
            self.scale1 * factor1)

    def shares_functions(self, other: 'EffectDependentCosts') -> bool:
        return (self.type_one is other.type_one and
                self.type_two is other.type_two)


def riskdiff_costs(treatment_cost: float, hospitalization_cost: float,
                   incidence: float=1.0) -> EffectDependentCosts:
    """C0 = cT I and C1(rd) = cH I (r1 - r2) - cT I on meaningful effects."""
    if not (treatment_cost > 0.0 and hospitalization_cost > treatment_cost):
        raise MultalphaDomainError(
            'Costs need 0 < cT < cH, got cT = ' + repr(treatment_cost) +
            ', cH = ' + repr(hospitalization_cost))
    payoff = RiskReductionPayoff(
        hospitalization_cost, -treatment_cost / hospitalization_cost)
    return EffectDependentCosts(
        unit_cost, payoff, treatment_cost * incidence, incidence)


def surprisal_costs(ladder: AlphaLadder, c: float,
                    c_prime: float) -> CostSchedule:
    """C0(m) = -c log2(alpha_m) and C1(m) = -c' log2(alpha_m)."""
    if not (c > 0.0 and c_prime > 0.0):
        raise MultalphaDomainError(
            'Surprisal cost constants must be positive, got ' + repr(c) +
            ' and ' + repr(c_prime))
    bits = ladder.surprisals()
    return CostSchedule([c * b for b in bits], [c_prime * b for b in bits])


def surprisal_schedule(ladder: AlphaLadder, c0k: float,
                       c1k: float) -> CostSchedule:
    """Surprisal-proportional schedule topping out at C0(k) = c0k and
    C1(k) = c1k."""
    top = surprisal(ladder.levels[-1])
    return surprisal_costs(ladder, c0k / top, c1k / top)


def surprisal_weights(ladder: AlphaLadder) -> List[float]:
    """(log2 a_m - log2 a_{m-1}) / log2 a_k with log2 a_0 = 0."""
    bits = ladder.surprisals()
    top = bits[-1]
    return [(b - p) / top for b, p in zip(bits, [0.0] + bits[:-1])]


def surprisal_level_costs(
        ladder: AlphaLadder,
        base: EffectDependentCosts) -> List[EffectDependentCosts]:
    """Per-level cost differences with C(m; e) proportional to surprisal.

    The top level carries `base` itself: C(k; e) = base(e).
    """
    return [base.scaled(w) for w in surprisal_weights(ladder)]


def random_costs(rng: SeededGenerator, k: int,
                 range0: Tuple[float, float]=(0.0, 100.0),
                 range1: Tuple[float, float]=(0.0, 25.0)) -> CostSchedule:
    """Cumulative sums of uniformly drawn cost differences.

    All Delta C0 draws precede the Delta C1 draws in the stream.
    """
    if k < 1:
        raise MultalphaDomainError(
            'Random schedules need at least one level, got ' + repr(k))
    for name, (low, high) in (('range0', range0), ('range1', range1)):
        if not (0.0 <= low <= high):
            raise MultalphaDomainError(
                '`' + name + '` must be a nonnegative interval, got ' +
                repr((low, high)))

    d0 = rng.uniforms(k, *range0)
    d1 = rng.uniforms(k, *range1)
    return CostSchedule(list(accumulate(d0)), list(accumulate(d1)))

"""Error-rate models for one-sided tests against a meaningful-effect boundary.

Every model tests the hypothesis that the true effect is not practically
meaningful, i.e. lies on the non-meaningful side of `boundary`. Models expose
`boundary`, `direction` (+1 when meaningful effects lie above the boundary,
-1 when below), `effect_range`, `rejection_curve(alpha)` and the derived
error rates provided by `ErrorRateModel`.
"""

import math

from collections import (
    namedtuple)
from typing import (
    Tuple)

from multalpha.errors import (
    MultalphaContractError,
    MultalphaDomainError)
from multalpha.specfun import (
    normal_cdf,
    normal_quantile,
    t_cdf,
    t_quantile)

DF_MODES = ('normal', 't')
VARIANCE_MODES = ('doubled', 'binomial')
MIN_GROUP_SIZE = 2


def check_alpha(alpha: float) -> None:
    """Raise a domain error unless 0 < alpha < 1."""
    if not (0.0 < alpha < 1.0):
        raise MultalphaDomainError(
            'Alpha level must lie strictly between 0 and 1, got ' +
            repr(alpha))


_RejectionCurve = namedtuple(
    '_RejectionCurve',
    ['model', 'alpha', 'critical'])


class RejectionCurve(_RejectionCurve):
    """Rejection probability at a fixed alpha as a function of true effect.

    `critical` is the model-specific threshold precomputed for `alpha`, so
    repeated evaluation inside integrals avoids recomputing quantiles.
    """

    def __call__(self, e: float) -> float:
        return self.model._reject(e, self.critical)

    def type_one(self, e: float) -> float:
        """beta0(e, alpha); zero on the meaningful side."""
        if self.model.is_meaningful(e):
            return 0.0
        return self(e)

    def type_two(self, e: float) -> float:
        """beta1(e, alpha); zero on the non-meaningful side."""
        if not self.model.is_meaningful(e):
            return 0.0
        return 1.0 - self(e)


class ErrorRateModel(object):
    """Error rates shared by all test models."""

    def is_meaningful(self, e: float) -> bool:
        """Whether `e` lies strictly on the meaningful side of the boundary."""
        return self.direction * (e - self.boundary) > 0.0

    def rejection_probability(self, e: float, alpha: float) -> float:
        """Probability of rejecting the test hypothesis at true effect `e`."""
        return self.rejection_curve(alpha)(e)

    def type_one_rate(self, e: float, alpha: float) -> float:
        return self.rejection_curve(alpha).type_one(e)

    def type_two_rate(self, e: float, alpha: float) -> float:
        return self.rejection_curve(alpha).type_two(e)

    def beta(self, d: float, alpha: float) -> float:
        """Type II error rate at distance `d` into the meaningful region."""
        return 1.0 - self.rejection_probability(
            self.boundary + self.direction * d, alpha)


_TwoGroupDesign = namedtuple(
    '_TwoGroupDesign',
    ['n_total'])


class TwoGroupDesign(_TwoGroupDesign):
    """Equal allocation of `n_total` subjects to two groups."""

    def __new__(cls, n_total: int) -> 'TwoGroupDesign':
        if int(n_total) != n_total or n_total < 4 or int(n_total) % 2:
            raise MultalphaContractError(
                'Two-group designs need an even total of at least 4 '
                'subjects, got ' + repr(n_total))
        return super(TwoGroupDesign, cls).__new__(cls, int(n_total))

    @property
    def group_size(self) -> int:
        return self.n_total // 2


_StandardizedEffectModel = namedtuple(
    '_StandardizedEffectModel',
    ['n_total', 'boundary', 'direction', 'df_mode'])


class StandardizedEffectModel(_StandardizedEffectModel, ErrorRateModel):
    """Two-group z or t test on a standardized mean difference.

    `n_total` may be real-valued so that planned (unrounded) sample sizes can
    be integrated over smoothly.
    """

    def __new__(cls, n_total: float, boundary: float=0.0, direction: int=1,
                df_mode: str='normal') -> 'StandardizedEffectModel':
        if not (n_total > 2.0) or not math.isfinite(n_total):
            raise MultalphaDomainError(
                'Total sample size must exceed 2, got ' + repr(n_total))
        elif direction not in (1, -1):
            raise MultalphaDomainError(
                'Direction must be +1 or -1, got ' + repr(direction))
        elif df_mode not in DF_MODES:
            raise MultalphaDomainError(
                'Unknown df mode `' + str(df_mode) + '`; expected one of ' +
                ', '.join(DF_MODES))
        return super(StandardizedEffectModel, cls).__new__(
            cls, n_total, boundary, direction, df_mode)

    @classmethod
    def from_design(cls, design: TwoGroupDesign, boundary: float=0.0,
                    direction: int=1,
                    df_mode: str='normal') -> 'StandardizedEffectModel':
        return cls(float(design.n_total), boundary, direction, df_mode)

    @property
    def se(self) -> float:
        """Standard error of the standardized difference."""
        return 2.0 / math.sqrt(self.n_total)

    @property
    def df(self) -> float:
        return self.n_total - 2.0

    @property
    def effect_range(self) -> Tuple[float, float]:
        return (-math.inf, math.inf)

    def _upper_quantile(self, alpha: float) -> float:
        if self.df_mode == 't':
            return t_quantile(1.0 - alpha, self.df)
        return normal_quantile(1.0 - alpha)

    def _cdf(self, x: float) -> float:
        if self.df_mode == 't':
            return t_cdf(x, self.df)
        return normal_cdf(x)

    def _reject(self, e: float, critical: float) -> float:
        shift = self.direction * (e - self.boundary) / self.se
        return self._cdf(shift - critical)

    def rejection_curve(self, alpha: float) -> RejectionCurve:
        check_alpha(alpha)
        return RejectionCurve(self, alpha, self._upper_quantile(alpha))

    def critical_value(self, alpha: float) -> float:
        """Observed effect beyond which the test hypothesis is rejected."""
        check_alpha(alpha)
        return (self.boundary +
                self.direction * self._upper_quantile(alpha) * self.se)

    def sampling_sd(self, e: float) -> float:
        return self.se


_RiskDifferenceModel = namedtuple(
    '_RiskDifferenceModel',
    ['r1', 'boundary', 'per_group_n', 'variance'])


class RiskDifferenceModel(_RiskDifferenceModel, ErrorRateModel):
    """Two-proportion test of treated minus untreated risk against `boundary`.

    Meaningful effects are risk reductions beyond the (negative) break-even
    difference, so the test rejects for observed differences below the
    critical value `boundary + s * z_alpha`.
    """

    direction = -1

    def __new__(cls, r1: float, boundary: float, per_group_n: float,
                variance: str='doubled') -> 'RiskDifferenceModel':
        if not (0.0 < r1 < 1.0):
            raise MultalphaDomainError(
                'Untreated risk must lie in (0, 1), got ' + repr(r1))
        elif not (0.0 < r1 + boundary < 1.0):
            raise MultalphaDomainError(
                'Boundary risk r1 + M must lie in (0, 1), got ' +
                repr(r1 + boundary))
        elif not (per_group_n > 0):
            raise MultalphaDomainError(
                'Group size must be positive, got ' + repr(per_group_n))
        elif variance not in VARIANCE_MODES:
            raise MultalphaDomainError(
                'Unknown variance variant `' + str(variance) +
                '`; expected one of ' + ', '.join(VARIANCE_MODES))
        return super(RiskDifferenceModel, cls).__new__(
            cls, r1, boundary, per_group_n, variance)

    @property
    def effect_range(self) -> Tuple[float, float]:
        return (-self.r1, 1.0 - self.r1)

    def _variance_factor(self) -> float:
        return 2.0 if self.variance == 'doubled' else 1.0

    def _sd(self, r2: float) -> float:
        if not (0.0 < r2 < 1.0):
            raise MultalphaDomainError(
                'Treated risk must lie in (0, 1), got ' + repr(r2))
        r1 = self.r1
        return math.sqrt(
            self._variance_factor() * (r1 * (1.0 - r1) + r2 * (1.0 - r2)) /
            self.per_group_n)

    def sds(self, r2: float) -> Tuple[float, float]:
        """(s, ss): sds at the boundary and at treated risk `r2`."""
        return self._sd(self.r1 + self.boundary), self._sd(r2)

    def _reject(self, rd: float, critical: float) -> float:
        return normal_cdf((critical - rd) / self._sd(self.r1 + rd))

    def critical_value(self, alpha: float) -> float:
        check_alpha(alpha)
        s = self._sd(self.r1 + self.boundary)
        return self.boundary + s * normal_quantile(alpha)

    def rejection_curve(self, alpha: float) -> RejectionCurve:
        return RejectionCurve(self, alpha, self.critical_value(alpha))

    def sampling_sd(self, rd: float) -> float:
        return self._sd(self.r1 + rd)


def riskdiff_sds(model: RiskDifferenceModel,
                 r2: float) -> Tuple[float, float]:
    """Boundary and true-effect sds of the observed risk difference."""
    return model.sds(r2)


def beta_riskdiff(model: RiskDifferenceModel, rd: float,
                  alpha: float) -> float:
    """Probability of not rejecting at true risk difference `rd`."""
    return 1.0 - model.rejection_probability(rd, alpha)


def rejection_probability(model, e: float, alpha: float) -> float:
    """Probability that `model` rejects its test hypothesis at effect `e`."""
    return model.rejection_probability(e, alpha)


def _check_design_inputs(delta: float, alpha: float, power: float) -> None:
    if not (delta > 0.0) or not math.isfinite(delta):
        raise MultalphaDomainError(
            'Design effect must be positive, got ' + repr(delta))
    check_alpha(alpha)
    if not (0.0 < power < 1.0):
        raise MultalphaDomainError(
            'Power must lie strictly between 0 and 1, got ' + repr(power))


def planned_group_size(delta: float, alpha: float, power: float) -> float:
    """Unrounded per-group size for `power` at standardized effect `delta`."""
    _check_design_inputs(delta, alpha, power)
    z_sum = normal_quantile(1.0 - alpha) + normal_quantile(power)
    return 2.0 * z_sum * z_sum / (delta * delta)


def required_group_size(delta: float, alpha: float, power: float) -> int:
    """Per-group size of the standard normal-approximation formula."""
    return max(MIN_GROUP_SIZE,
               int(math.ceil(planned_group_size(delta, alpha, power))))


def achieved_power(delta: float, alpha: float, group_size: float) -> float:
    """Power of a one-sided z test with `group_size` subjects per group."""
    check_alpha(alpha)
    if not (group_size > 0):
        raise MultalphaDomainError(
            'Group size must be positive, got ' + repr(group_size))
    return normal_cdf(
        delta * math.sqrt(group_size / 2.0) - normal_quantile(1.0 - alpha))

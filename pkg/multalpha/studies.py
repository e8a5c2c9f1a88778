"""Reproducible cost studies: the drug trial, research scenarios and random
cost simulations.

Every study reads its constants from the active defaults unless they are
passed in explicitly, and returns `CostTable` values for `multalpha.report`.
"""

import math

import numpy as np

from collections import (
    namedtuple)
from concurrent.futures import (
    ThreadPoolExecutor)
from typing import (
    Any,
    Callable,
    Dict,
    List,
    Optional,
    Sequence,
    Tuple,
    Union)

from multalpha.alphasel import (
    ALPHA_TOL,
    DEFAULT_BOUNDS,
    DEFAULT_RESOLUTION,
    Optimum,
    optimal_alpha,
    search_grid)
from multalpha.config import (
    get_defaults,
    worker_count)
from multalpha.costengine import (
    TAIL_SDS,
    cost_multi_continuous,
    cost_multi_dichotomous,
    cost_single_continuous,
    cost_single_dichotomous,
    dichotomous_rates,
    error_rate_integrals)
from multalpha.errors import (
    MultalphaConfigError,
    MultalphaDomainError)
from multalpha.io_console import (
    print_i_d2,
    print_w_d2)
from multalpha.prng import (
    SeededGenerator)
from multalpha.quadrature import (
    integrate_vec)
from multalpha.report import (
    CostTable,
    format_alpha)
from multalpha.scenario import (
    AlphaLadder,
    ContinuousPrevalence,
    DichotomousPrevalence,
    EffectDependentCosts,
    random_costs,
    riskdiff_costs,
    surprisal_level_costs,
    surprisal_schedule,
    surprisal_weights)
from multalpha.specfun import (
    SQRT2PI,
    normal_quantile)
from multalpha.testmodel import (
    VARIANCE_MODES,
    RiskDifferenceModel,
    StandardizedEffectModel,
    TwoGroupDesign,
    check_alpha,
    planned_group_size,
    required_group_size)

# default floor: teams anticipating effects closer than this to the boundary
# are left out of the research-scenario average, without renormalizing
ANTICIPATED_FLOOR = 0.05

SIM_OPTIMA = ('grid', 'ladder')
S3_TARGETS = ('s3a', 's3b')
S3_PANELS = ('two', 'three')
TABLE_TARGETS = ('table1', 'table2')

Prevalence = Union[DichotomousPrevalence, ContinuousPrevalence]


def _section(name: str) -> Dict[str, Any]:
    try:
        return get_defaults()[name]
    except KeyError:
        raise MultalphaConfigError(
            'Missing configuration section `[' + name + ']`')


def _setting(section: Dict[str, Any], name: str, key: str) -> Any:
    try:
        return section[key]
    except KeyError:
        raise MultalphaConfigError(
            'Missing configuration value `' + name + '.' + key + '`')


def _tail_sds(tail_sds: Optional[float]) -> float:
    if tail_sds is not None:
        return tail_sds
    return float(_setting(_section('quadrature'), 'quadrature', 'tail_sds'))


_OptimizerSettings = namedtuple(
    '_OptimizerSettings',
    ['bounds', 'resolution', 'tol'])


class OptimizerSettings(_OptimizerSettings):
    """Search bounds, grid resolution and alpha tolerance of an optimum."""

    def __new__(cls, bounds: Tuple[float, float]=DEFAULT_BOUNDS,
                resolution: int=DEFAULT_RESOLUTION,
                tol: float=ALPHA_TOL) -> 'OptimizerSettings':
        bounds = (float(bounds[0]), float(bounds[1]))
        search_grid(bounds, int(resolution))
        return super(OptimizerSettings, cls).__new__(
            cls, bounds, int(resolution), float(tol))

    @classmethod
    def from_defaults(cls,
                      resolution: Optional[int]=None) -> 'OptimizerSettings':
        section = _section('optimizer')
        if resolution is None:
            resolution = _setting(section, 'optimizer', 'resolution')
        return cls((_setting(section, 'optimizer', 'lower'),
                    _setting(section, 'optimizer', 'upper')),
                   resolution,
                   _setting(section, 'optimizer', 'tolerance'))

    def grid(self) -> List[float]:
        return search_grid(self.bounds, self.resolution)

    def search(self, costfn: Callable[[float], float]) -> Optimum:
        return optimal_alpha(costfn, self.bounds, self.resolution, self.tol)


def _alpha_columns(ladder: AlphaLadder) -> List[str]:
    return (['alpha = ' + format_alpha(a) for a in ladder.levels] +
            ['multi-level', 'optimal'])


_MolnupiravirParams = namedtuple(
    '_MolnupiravirParams',
    ['treatment_cost', 'hospitalization_cost', 'untreated_risk',
     'per_group_n', 'incidence', 'variance'])


class MolnupiravirParams(_MolnupiravirParams):
    """Drug, hospitalization and trial constants of the risk-difference study.

    The break-even risk difference is M = -treatment_cost /
    hospitalization_cost.
    """

    def __new__(cls, treatment_cost: float=707.0,
                hospitalization_cost: float=40000.0,
                untreated_risk: float=0.092, per_group_n: float=1000,
                incidence: float=1.0,
                variance: str='binomial') -> 'MolnupiravirParams':
        if not (0.0 < treatment_cost < hospitalization_cost):
            raise MultalphaDomainError(
                'Costs need 0 < treatment cost < hospitalization cost, got ' +
                repr(treatment_cost) + ' and ' + repr(hospitalization_cost))
        elif not (incidence > 0.0):
            raise MultalphaDomainError(
                'Incidence must be positive, got ' + repr(incidence))
        elif variance not in VARIANCE_MODES:
            raise MultalphaDomainError(
                'Unknown variance variant `' + str(variance) +
                '`; expected one of ' + ', '.join(VARIANCE_MODES))
        return super(MolnupiravirParams, cls).__new__(
            cls, float(treatment_cost), float(hospitalization_cost),
            float(untreated_risk), per_group_n, float(incidence), variance)

    @classmethod
    def from_defaults(cls) -> 'MolnupiravirParams':
        section = _section('molnupiravir')
        try:
            return cls(**section)
        except TypeError as e:
            raise MultalphaConfigError(
                'Invalid `[molnupiravir]` configuration: ' + str(e))

    @property
    def boundary(self) -> float:
        return -self.treatment_cost / self.hospitalization_cost

    def model(self, variance: Optional[str]=None) -> RiskDifferenceModel:
        return RiskDifferenceModel(
            self.untreated_risk, self.boundary, self.per_group_n,
            self.variance if variance is None else variance)

    def costs(self) -> EffectDependentCosts:
        """Treatment cost on every decision to treat, net saving on benefit."""
        return riskdiff_costs(self.treatment_cost, self.hospitalization_cost,
                              self.incidence)


def table1(params: Optional[MolnupiravirParams]=None,
           rds: Optional[Sequence[float]]=None,
           Ps: Optional[Sequence[float]]=None,
           ladder: Optional[AlphaLadder]=None,
           optimizer: Optional[OptimizerSettings]=None) -> CostTable:
    """Expected error costs per patient when the true risk difference is
    either `rd` (with probability P) or on the break-even boundary."""
    section = _section('table1')
    if params is None:
        params = MolnupiravirParams.from_defaults()
    if rds is None:
        rds = _setting(section, 'table1', 'risk_differences')
    if Ps is None:
        Ps = _setting(section, 'table1', 'prevalences')
    if ladder is None:
        ladder = AlphaLadder(_setting(section, 'table1', 'alphas'))
    if optimizer is None:
        optimizer = OptimizerSettings.from_defaults()

    model = params.model()
    costs = params.costs()
    rows, cells, optima = [], [], []
    for rd in rds:
        if not (rd < params.boundary):
            raise MultalphaDomainError(
                'Risk difference ' + repr(rd) + ' is not beyond the '
                'break-even difference ' + repr(params.boundary))
        C0, C1 = costs.cost0(rd), costs.cost1(rd)
        sched = surprisal_schedule(ladder, C0, C1)
        for P in Ps:
            prev = DichotomousPrevalence(P, rd)
            breakdown = cost_multi_dichotomous(prev, model, ladder, sched)
            best = optimizer.search(
                lambda a: cost_single_dichotomous(prev, model, a, C0, C1))

            rows.append('RD = ' + format_alpha(rd) + ', P = ' +
                        format_alpha(P))
            cells.append(list(breakdown.per_level) +
                         [breakdown.total, best.cost_star])
            optima.append(best.alpha_star)

    return CostTable(
        'Expected total error costs per patient (' + params.variance +
        ' variance)', _alpha_columns(ladder), rows, cells,
        optimal_alphas=optima, single_columns=ladder.k, digits=1,
        notes=['** lowest single-level cost; optimal alpha in brackets'])


def table2(params: Optional[MolnupiravirParams]=None,
           scenarios: Optional[Sequence[Tuple[float, float]]]=None,
           ladder: Optional[AlphaLadder]=None,
           optimizer: Optional[OptimizerSettings]=None,
           tail_sds: Optional[float]=None) -> CostTable:
    """Expected error costs per patient when true risk differences are
    normally distributed with the given (mean, sd) pairs."""
    section = _section('table2')
    if params is None:
        params = MolnupiravirParams.from_defaults()
    if scenarios is None:
        scenarios = _setting(section, 'table2', 'scenarios')
    if ladder is None:
        ladder = AlphaLadder(_setting(section, 'table2', 'alphas'))
    if optimizer is None:
        optimizer = OptimizerSettings.from_defaults()
    tail_sds = _tail_sds(tail_sds)

    model = params.model()
    base = params.costs()
    level_costs = surprisal_level_costs(ladder, base)
    rows, cells, optima = [], [], []
    for mean, sd in scenarios:
        prev = ContinuousPrevalence(mean, sd, model.boundary, model.direction)
        breakdown = cost_multi_continuous(
            prev, model, ladder, level_costs, tail_sds)
        best = optimizer.search(
            lambda a: cost_single_continuous(prev, model, a, base, tail_sds))

        rows.append('mu = ' + format_alpha(mean) + ', sigma = ' +
                    format_alpha(sd))
        cells.append(list(breakdown.per_level) +
                     [breakdown.total, best.cost_star])
        optima.append(best.alpha_star)

    return CostTable(
        'Expected total error costs per patient, normal prevalence (' +
        params.variance + ' variance)', _alpha_columns(ladder), rows, cells,
        optimal_alphas=optima, single_columns=ladder.k, digits=1,
        notes=['** lowest single-level cost; optimal alpha in brackets'])


_AnticipatedScenario = namedtuple(
    '_AnticipatedScenario',
    ['boundary', 'anticipated_mean', 'anticipated_sd', 'true_mean',
     'true_sd', 'design_alpha', 'design_power', 'cost_ratio',
     'anticipated_floor'])


class AnticipatedScenario(_AnticipatedScenario):
    """Research teams sizing their studies for the effect they anticipate.

    Anticipated standardized effects x follow N(anticipated_mean,
    anticipated_sd). A team anticipating x plans for `design_power` at
    `design_alpha`, then tests whether the effect exceeds `boundary` while
    true effects follow N(true_mean, true_sd). Costs are normalized to
    C1(k) = 1 and C0(k) = cost_ratio.

    Only teams anticipating at least `boundary + anticipated_floor` enter
    the average; the anticipated density is not renormalized over them.
    """

    def __new__(cls, boundary: float=0.0, anticipated_mean: float=0.4,
                anticipated_sd: float=0.1, true_mean: float=0.4,
                true_sd: float=0.2, design_alpha: float=0.025,
                design_power: float=0.8, cost_ratio: float=1.0,
                anticipated_floor: float=ANTICIPATED_FLOOR
                ) -> 'AnticipatedScenario':
        for name, value in (('anticipated_sd', anticipated_sd),
                            ('true_sd', true_sd),
                            ('cost_ratio', cost_ratio),
                            ('anticipated_floor', anticipated_floor)):
            if not (value > 0.0) or not math.isfinite(value):
                raise MultalphaDomainError(
                    '`' + name + '` must be positive, got ' + repr(value))
        check_alpha(design_alpha)
        if not (0.0 < design_power < 1.0):
            raise MultalphaDomainError(
                'Design power must lie strictly between 0 and 1, got ' +
                repr(design_power))
        return super(AnticipatedScenario, cls).__new__(
            cls, float(boundary), float(anticipated_mean),
            float(anticipated_sd), float(true_mean), float(true_sd),
            float(design_alpha), float(design_power), float(cost_ratio),
            float(anticipated_floor))

    @classmethod
    def from_defaults(cls, boundary: float=0.0) -> 'AnticipatedScenario':
        section = _section('table3')
        offset = _setting(section, 'table3', 'anticipated_offset')
        return cls(boundary, boundary + offset,
                   _setting(section, 'table3', 'anticipated_sd'),
                   boundary + offset,
                   _setting(section, 'table3', 'true_sd'),
                   _setting(section, 'table3', 'design_alpha'),
                   _setting(section, 'table3', 'design_power'),
                   anticipated_floor=_setting(section, 'table3',
                                              'anticipated_floor'))

    def anticipated_density(self, x: float) -> float:
        z = (x - self.anticipated_mean) / self.anticipated_sd
        return math.exp(-0.5 * z * z) / (self.anticipated_sd * SQRT2PI)

    def true_prevalence(self) -> ContinuousPrevalence:
        return ContinuousPrevalence(self.true_mean, self.true_sd,
                                    self.boundary, 1)

    def planned_group_size(self, x: float) -> float:
        return planned_group_size(x - self.boundary, self.design_alpha,
                                  self.design_power)

    def required_group_size(self, x: float) -> int:
        return required_group_size(x - self.boundary, self.design_alpha,
                                   self.design_power)

    def model_at(self, x: float) -> StandardizedEffectModel:
        """Test model of a team that anticipated effect `x`.

        The group size is the unrounded planned size, which keeps the
        integrand over anticipated effects smooth; `required_group_size`
        is its ceiling.
        """
        return StandardizedEffectModel(
            2.0 * self.planned_group_size(x), self.boundary, 1, 'normal')

    def anticipated_domain(self,
                           tail_sds: float=TAIL_SDS) -> Tuple[float, float]:
        lo = max(self.boundary + self.anticipated_floor,
                 self.anticipated_mean - tail_sds * self.anticipated_sd)
        hi = self.anticipated_mean + tail_sds * self.anticipated_sd
        if not (lo < hi):
            raise MultalphaDomainError(
                'Anticipated effects lie too close to the boundary ' +
                repr(self.boundary))
        return lo, hi

    def design_z(self) -> float:
        return (normal_quantile(1.0 - self.design_alpha) +
                normal_quantile(self.design_power))


def anticipated_rates(scn: AnticipatedScenario, alphas: Sequence[float],
                      tail_sds: float=TAIL_SDS) -> np.ndarray:
    """Unit Type I and Type II costs averaged over anticipated effects.

    Returns an array of shape (2, len(alphas)); row 0 holds the Type I
    integrals and row 1 the Type II integrals at each alpha.
    """
    alphas = [float(a) for a in alphas]
    for a in alphas:
        check_alpha(a)
    prev = scn.true_prevalence()
    lo, hi = scn.anticipated_domain(tail_sds)

    def integrand(x: float) -> np.ndarray:
        model = scn.model_at(x)
        out = np.empty(2 * len(alphas))
        for i, a in enumerate(alphas):
            out[2 * i], out[2 * i + 1] = error_rate_integrals(
                prev, model, a, tail_sds=tail_sds)
        return scn.anticipated_density(x) * out

    rates = integrate_vec(integrand, lo, hi)
    return rates.reshape(len(alphas), 2).T


def anticipated_cost(scn: AnticipatedScenario, alpha: float,
                     tail_sds: float=TAIL_SDS) -> float:
    """Expected total error cost over the research scenario at `alpha`."""
    i0, i1 = anticipated_rates(scn, [alpha], tail_sds)[:, 0]
    return math.fsum([scn.cost_ratio * float(i0), float(i1)])


class _AnticipatedRates(object):
    """Memo of `anticipated_rates` for one scenario, shared across ratios."""

    def __init__(self, scn: AnticipatedScenario, tail_sds: float) -> None:
        self._scn = scn
        self._tail_sds = tail_sds
        self.seen: Dict[float, Tuple[float, float]] = dict()

    def prime(self, alphas: Sequence[float]) -> None:
        missing = sorted(set(float(a) for a in alphas) - set(self.seen))
        if not missing:
            return
        rates = anticipated_rates(self._scn, missing, self._tail_sds)
        for a, i0, i1 in zip(missing, rates[0], rates[1]):
            self.seen[a] = (float(i0), float(i1))

    def __call__(self, alpha: float) -> Tuple[float, float]:
        self.prime([alpha])
        return self.seen[float(alpha)]


def _offset_label(offset: float) -> str:
    if offset == 0.0:
        return 'M'
    sign = ' + ' if offset > 0.0 else ' - '
    return 'M' + sign + format_alpha(abs(offset))


def table3(scn: Optional[AnticipatedScenario]=None,
           ladder: Optional[AlphaLadder]=None,
           true_offsets: Optional[Sequence[float]]=None,
           cost_ratios: Optional[Sequence[float]]=None,
           optimizer: Optional[OptimizerSettings]=None,
           tail_sds: Optional[float]=None) -> CostTable:
    """Expected error costs averaged over a research scenario.

    Rows run over cost ratios and, within each, over true mean effects
    `boundary + offset`.
    """
    section = _section('table3')
    if scn is None:
        scn = AnticipatedScenario.from_defaults()
    if ladder is None:
        ladder = AlphaLadder(_setting(section, 'table3', 'alphas'))
    if true_offsets is None:
        true_offsets = _setting(section, 'table3', 'true_offsets')
    if cost_ratios is None:
        cost_ratios = _setting(section, 'table3', 'cost_ratios')
    if optimizer is None:
        optimizer = OptimizerSettings.from_defaults(
            _setting(section, 'table3', 'resolution'))
    tail_sds = _tail_sds(tail_sds)

    weights = surprisal_weights(ladder)
    memo: Dict[float, _AnticipatedRates] = dict()
    for offset in true_offsets:
        print_i_d2('Averaging over anticipated effects for true mean ',
                   _offset_label(offset))
        rates = _AnticipatedRates(
            scn._replace(true_mean=scn.boundary + offset), tail_sds)
        rates.prime(list(ladder.levels) + optimizer.grid())
        memo[offset] = rates

    rows, cells, optima = [], [], []
    for ratio in cost_ratios:
        for offset in true_offsets:
            rates = memo[offset]

            def cost(a: float) -> float:
                i0, i1 = rates(a)
                return math.fsum([ratio * i0, i1])

            singles = [cost(a) for a in ladder.levels]
            multi = math.fsum(w * c for w, c in zip(weights, singles))
            best = optimizer.search(cost)

            rows.append('ratio ' + format_alpha(ratio) + ', true mean ' +
                        _offset_label(offset))
            cells.append(singles + [multi, best.cost_star])
            optima.append(best.alpha_star)

    return CostTable(
        'Expected total error costs over a research scenario (anticipated '
        'sd ' + format_alpha(scn.anticipated_sd) + ', floor ' +
        _offset_label(scn.anticipated_floor) + ')',
        _alpha_columns(ladder), rows, cells, optimal_alphas=optima,
        single_columns=ladder.k, digits=2,
        notes=['** lowest single-level cost; optimal alpha in brackets'])


Fig1Data = namedtuple(
    'Fig1Data',
    ['effects', 'true_density', 'anticipated_density', 'sampling_density',
     'critical', 'anticipated', 'planned_sizes', 'required_sizes', 'sizes',
     'size_density', 'design_group_size'])
"""Curves of the research-scenario figure.

`sampling_density` is the density of the observed effect on the boundary for
a team of `design_group_size` per group, whose rejection threshold is
`critical`; sizes are per group.
"""


def sample_size_density(scn: AnticipatedScenario, n: float) -> float:
    """Density of the planned per-group size `n` across research teams."""
    if not (n > 0.0):
        raise MultalphaDomainError(
            'Group size must be positive, got ' + repr(n))
    z = scn.design_z()
    x = scn.boundary + z * math.sqrt(2.0 / n)
    return scn.anticipated_density(x) * z / (math.sqrt(2.0) * n ** 1.5)


def fig1_data(scn: Optional[AnticipatedScenario]=None,
              points: int=201) -> Fig1Data:
    """Densities, sample-size curves and the sample-size distribution.

    The anticipated-effect and group-size axes stop at the scenario floor
    `boundary + anticipated_floor` (and at 4 sd from the anticipated mean),
    so `sizes` never exceeds the planned size at the floor.
    """
    if scn is None:
        scn = AnticipatedScenario.from_defaults()
    if points < 2:
        raise MultalphaDomainError(
            'At least two curve points are required, got ' + repr(points))

    lo = min(scn.true_mean - 4.0 * scn.true_sd,
             scn.anticipated_mean - 4.0 * scn.anticipated_sd)
    hi = max(scn.true_mean + 4.0 * scn.true_sd,
             scn.anticipated_mean + 4.0 * scn.anticipated_sd)
    effects = np.linspace(lo, hi, points)

    design_n = scn.required_group_size(scn.anticipated_mean)
    design = StandardizedEffectModel.from_design(
        TwoGroupDesign(2 * design_n), scn.boundary, 1, 'normal')
    se = design.se
    prev = scn.true_prevalence()

    a_lo = max(scn.boundary + scn.anticipated_floor,
               scn.anticipated_mean - 4.0 * scn.anticipated_sd)
    a_hi = scn.anticipated_mean + 4.0 * scn.anticipated_sd
    anticipated = np.linspace(a_lo, a_hi, points)
    planned = np.array([scn.planned_group_size(x) for x in anticipated])
    required = np.array([scn.required_group_size(x) for x in anticipated])

    sizes = np.linspace(planned[-1], planned[0], points)
    size_density = np.array([sample_size_density(scn, n) for n in sizes])

    return Fig1Data(
        effects,
        np.array([prev.density_at(e) for e in effects]),
        np.array([scn.anticipated_density(e) for e in effects]),
        np.exp(-0.5 * ((effects - scn.boundary) / se) ** 2) / (se * SQRT2PI),
        design.critical_value(scn.design_alpha),
        anticipated, planned, required, sizes, size_density, design_n)


_SimConfig = namedtuple(
    '_SimConfig',
    ['runs', 'seed', 'ladder', 'prevalence', 'n_total', 'boundary', 'range0',
     'range1', 'df_mode', 'optimum', 'grid_points', 'bounds'])


class SimConfig(_SimConfig):
    """Settings of one random-cost simulation cell.

    With `optimum` = 'grid' the per-run optimum is the cheapest single-level
    test over a log-spaced alpha grid joined with the ladder; with 'ladder'
    it is the cheapest ladder level.
    """

    def __new__(cls, runs: int, seed: int, ladder: Sequence[float],
                prevalence: Prevalence, n_total: int, boundary: float=0.0,
                range0: Tuple[float, float]=(0.0, 100.0),
                range1: Tuple[float, float]=(0.0, 25.0), df_mode: str='t',
                optimum: str='grid', grid_points: int=200,
                bounds: Tuple[float, float]=DEFAULT_BOUNDS) -> 'SimConfig':
        if int(runs) != runs or runs < 1:
            raise MultalphaDomainError(
                'A simulation needs at least one run, got ' + repr(runs))
        elif optimum not in SIM_OPTIMA:
            raise MultalphaDomainError(
                'Unknown optimum mode `' + str(optimum) +
                '`; expected one of ' + ', '.join(SIM_OPTIMA))
        elif not isinstance(prevalence, (DichotomousPrevalence,
                                         ContinuousPrevalence)):
            raise MultalphaDomainError(
                'Unsupported prevalence ' + repr(prevalence))
        if not isinstance(ladder, AlphaLadder):
            ladder = AlphaLadder(ladder)
        TwoGroupDesign(n_total)
        if optimum == 'grid':
            search_grid(bounds, grid_points)
        return super(SimConfig, cls).__new__(
            cls, int(runs), int(seed), ladder, prevalence, int(n_total),
            float(boundary), tuple(range0), tuple(range1), df_mode, optimum,
            int(grid_points), tuple(bounds))

    def model(self) -> StandardizedEffectModel:
        return StandardizedEffectModel.from_design(
            TwoGroupDesign(self.n_total), self.boundary, 1, self.df_mode)

    def candidates(self) -> List[float]:
        """Alphas whose error rates every run needs, ascending."""
        alphas = set(self.ladder.levels)
        if self.optimum == 'grid':
            alphas.update(search_grid(self.bounds, self.grid_points))
        return sorted(alphas)


SimSummary = namedtuple(
    'SimSummary',
    ['strategies', 'means', 'sds', 'runs'])
"""Mean and sd of the per-run costs of each strategy."""


def strategy_labels(ladder: AlphaLadder) -> List[str]:
    return _alpha_columns(ladder)


def _candidate_rates(prev: Prevalence, model: StandardizedEffectModel,
                     alphas: Sequence[float],
                     tail_sds: float) -> Tuple[np.ndarray, np.ndarray]:
    """Probability-weighted unit Type I and Type II costs per alpha."""
    a_rates, b_rates = [], []
    for a in alphas:
        if isinstance(prev, DichotomousPrevalence):
            type_one, beta = dichotomous_rates(prev, model, a)
            a_rates.append((1.0 - prev.P) * type_one)
            b_rates.append(prev.P * beta)
        else:
            i0, i1 = error_rate_integrals(prev, model, a, tail_sds=tail_sds)
            a_rates.append(i0)
            b_rates.append(i1)
    return np.array(a_rates), np.array(b_rates)


def _simulate_run(config: SimConfig, index: int, a_rates: np.ndarray,
                  b_rates: np.ndarray, levels: np.ndarray) -> List[float]:
    """Single-level, multi-level and optimal costs of run `index`."""
    rng = SeededGenerator.for_run(config.seed, index)
    sched = random_costs(rng, config.ladder.k, config.range0, config.range1)
    c0k, c1k = sched.c0[-1], sched.c1[-1]
    la, lb = a_rates[levels], b_rates[levels]

    singles = c0k * la + c1k * lb
    multi = math.fsum(
        [d * float(a) for d, a in zip(sched.delta0(), la)] +
        [d * float(b) for d, b in zip(sched.delta1(), lb)])
    if config.optimum == 'grid':
        best = float(np.min(c0k * a_rates + c1k * b_rates))
    else:
        best = float(np.min(singles))
    return [float(s) for s in singles] + [multi, best]


def summarize(strategies: Sequence[str],
              results: Sequence[Sequence[float]]) -> SimSummary:
    """Per-strategy means and sample sds of per-run costs in run order."""
    runs = len(results)
    columns = list(zip(*results))
    means = [math.fsum(col) / runs for col in columns]
    if runs > 1:
        sds = [float(np.std(col, ddof=1)) for col in columns]
    else:
        sds = [0.0 for _ in columns]
    return SimSummary(tuple(strategies), tuple(means), tuple(sds), runs)


def simulate(config: SimConfig, tail_sds: float=TAIL_SDS) -> SimSummary:
    """Average error costs of random cost schedules over `config.runs` runs.

    Run i draws from the substream seeded with `config.seed + i`, so results
    do not depend on how runs are spread across workers.
    """
    model = config.model()
    candidates = config.candidates()
    a_rates, b_rates = _candidate_rates(
        config.prevalence, model, candidates, tail_sds)
    index = {a: i for i, a in enumerate(candidates)}
    levels = np.array([index[a] for a in config.ladder.levels])

    def run(i: int) -> List[float]:
        return _simulate_run(config, i, a_rates, b_rates, levels)

    with ThreadPoolExecutor(max_workers=worker_count()) as pool:
        results = list(pool.map(run, range(config.runs)))
    return summarize(strategy_labels(config.ladder), results)


def _s3_cells(target: str, settings: Dict[str, Any]) -> List[
        Tuple[str, int, float, Prevalence]]:
    """(row label, n_total, boundary, prevalence) per cell in table order."""
    sizes = _setting(settings, 'simulation', 'sample_sizes')
    cells = []
    if target == 's3a':
        sub = _setting(settings, 'simulation', 'dichotomous')
        for d in _setting(sub, 'simulation.dichotomous', 'differences'):
            for P in _setting(sub, 'simulation.dichotomous', 'prevalences'):
                for n in sizes:
                    label = ('d = ' + format_alpha(d) + ', P = ' +
                             format_alpha(P) + ', n = ' + str(n))
                    cells.append((label, n, 0.0, DichotomousPrevalence(P, d)))
    else:
        sub = _setting(settings, 'simulation', 'continuous')
        for m in _setting(sub, 'simulation.continuous', 'boundaries'):
            for sd in _setting(sub, 'simulation.continuous', 'sds'):
                for n in sizes:
                    label = ('M = ' + format_alpha(m) + ', sigma = ' +
                             format_alpha(sd) + ', n = ' + str(n))
                    cells.append((label, n, float(m),
                                  ContinuousPrevalence(0.0, sd, m, 1)))
    return cells


def s3_table(target: str, panel: str, runs: Optional[int]=None,
             seed: Optional[int]=None,
             settings: Optional[Dict[str, Any]]=None,
             tail_sds: Optional[float]=None) -> CostTable:
    """Random-cost simulation table for a dichotomous ('s3a') or normal
    ('s3b') prevalence with the two- or three-level ladder.

    Cell i uses run seeds starting at `seed + i * runs`.
    """
    if target not in S3_TARGETS:
        raise MultalphaDomainError(
            'Unknown simulation target `' + str(target) +
            '`; expected one of ' + ', '.join(S3_TARGETS))
    elif panel not in S3_PANELS:
        raise MultalphaDomainError(
            'Unknown ladder panel `' + str(panel) + '`; expected one of ' +
            ', '.join(S3_PANELS))
    if settings is None:
        settings = _section('simulation')
    if runs is None:
        runs = _setting(settings, 'simulation', 'runs')
    if seed is None:
        seed = _setting(settings, 'simulation', 'seed')
    tail_sds = _tail_sds(tail_sds)
    bounds = OptimizerSettings.from_defaults().bounds

    key = 'ladder_a' if panel == 'two' else 'ladder_b'
    ladder = AlphaLadder(_setting(settings, 'simulation', key))

    rows, cells, sds = [], [], []
    for i, (label, n_total, boundary, prev) in enumerate(
            _s3_cells(target, settings)):
        config = SimConfig(
            runs, seed + i * runs, ladder, prev, n_total, boundary,
            _setting(settings, 'simulation', 'range0'),
            _setting(settings, 'simulation', 'range1'),
            _setting(settings, 'simulation', 'df_mode'),
            _setting(settings, 'simulation', 'optimum'),
            _setting(settings, 'simulation', 'grid_points'), bounds)
        print_i_d2('Simulating ', label)
        summary = simulate(config, tail_sds)
        rows.append(label)
        cells.append(summary.means)
        sds.append(summary.sds)

    kind = 'dichotomous' if target == 's3a' else 'normal'
    return CostTable(
        'Mean (sd) error costs over ' + str(runs) + ' random cost schedules, '
        + kind + ' prevalence, ' + str(ladder.k) + ' levels',
        strategy_labels(ladder), rows, cells, sds=sds,
        single_columns=ladder.k, digits=1,
        notes=['** lowest single-level mean; optimal = mean of per-run '
               'minima'])


Residual = namedtuple(
    'Residual',
    ['row', 'column', 'engine', 'published', 'relative'])


def residuals(table: CostTable,
              published: Dict[str, Any]) -> List[Residual]:
    """Relative differences between `table` and published reference cells."""
    try:
        pub_cells = published['cells']
    except KeyError:
        raise MultalphaConfigError(
            'Published reference for `' + table.title + '` has no cells')
    if len(pub_cells) != len(table.cells):
        raise MultalphaConfigError(
            'Published reference has ' + str(len(pub_cells)) + ' rows, `' +
            table.title + '` has ' + str(len(table.cells)))

    out = []
    for r, (ours, theirs) in enumerate(zip(table.cells, pub_cells)):
        if len(ours) != len(theirs):
            raise MultalphaConfigError(
                'Published reference row ' + str(r + 1) + ' has ' +
                str(len(theirs)) + ' cells, expected ' + str(len(ours)))
        for c, (e, p) in enumerate(zip(ours, theirs)):
            if p == 0.0:
                continue
            out.append(Residual(table.rows[r], table.columns[c], e, p,
                                abs(e - p) / abs(p)))
    return out


def flag_residuals(table: CostTable, published: Dict[str, Any],
                   threshold: Optional[float]=None) -> List[Residual]:
    """Warn about every cell deviating from its published value by more
    than `threshold` (relative)."""
    if threshold is None:
        threshold = _setting(_section('reporting'), 'reporting',
                             'residual_warning')
    flagged = [r for r in residuals(table, published)
               if r.relative > threshold]
    for r in flagged:
        print_w_d2(r.row, ' / ', r.column, ': ',
                   '{:.{d}f}'.format(r.engine, d=table.digits),
                   ' differs from the published ', repr(r.published),
                   ' by ', '{:.1%}'.format(r.relative))
    return flagged


def compare_published(title: str, published: Dict[str, Any],
                      labelled: Sequence[Tuple[str, CostTable]]
                      ) -> CostTable:
    """Cells of equally shaped tables side by side with the published cells
    and their residuals in percent, one row per cell."""
    if not labelled:
        raise MultalphaDomainError('No tables to compare')
    for _, table in labelled:
        residuals(table, published)

    labels = [label for label, _ in labelled]
    first = labelled[0][1]
    pub_cells = published['cells']
    rows, cells = [], []
    for r, row_label in enumerate(first.rows):
        for c, column in enumerate(first.columns):
            p = pub_cells[r][c]
            values = [t.cells[r][c] for _, t in labelled]
            rows.append(row_label + ' / ' + column)
            cells.append([p] + values +
                         [100.0 * (v - p) / p if p else 0.0 for v in values])

    columns = (['published'] + labels +
               [label + ' residual %' for label in labels])
    return CostTable(title, columns, rows, cells, digits=2)


def variant_table(target: str, published: Dict[str, Any],
                  params: Optional[MolnupiravirParams]=None,
                  **kwargs: Any) -> CostTable:
    """Both variance readings of the risk-difference test side by side with
    the published cells."""
    if target not in TABLE_TARGETS:
        raise MultalphaDomainError(
            'Variant comparison is available for ' +
            ', '.join(TABLE_TARGETS) + ', got `' + str(target) + '`')
    if params is None:
        params = MolnupiravirParams.from_defaults()
    build = table1 if target == 'table1' else table2
    labelled = [(v, build(params._replace(variance=v), **kwargs))
                for v in VARIANCE_MODES]
    return compare_published(
        'Variance readings against the published ' + target + ' cells',
        published, labelled)


def floor_variant_table(published: Dict[str, Any],
                        scn: Optional[AnticipatedScenario]=None,
                        floors: Optional[Sequence[float]]=None,
                        base: Optional[CostTable]=None,
                        **kwargs: Any) -> CostTable:
    """Research-scenario tables at several anticipated-effect floors side by
    side with the published cells.

    `base`, when given, is reused as the table at the scenario's own floor.
    """
    if scn is None:
        scn = AnticipatedScenario.from_defaults()
    if floors is None:
        floors = _setting(_section('table3'), 'table3', 'variant_floors')

    labelled = []
    for floor in floors:
        variant = AnticipatedScenario(
            *scn._replace(anticipated_floor=float(floor)))
        if base is not None and variant == scn:
            table = base
        else:
            print_i_d2('Averaging with anticipated effects above ',
                       _offset_label(variant.anticipated_floor))
            table = table3(variant, **kwargs)
        labelled.append(('floor ' + _offset_label(variant.anticipated_floor),
                         table))
    return compare_published(
        'Anticipated-effect floors against the published table3 cells',
        published, labelled)

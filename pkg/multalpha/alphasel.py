"""Optimal alpha search and surprisal mappings between costs and ladders."""

import math

import numpy as np

from collections import (
    namedtuple)
from typing import (
    Callable,
    Dict,
    List,
    Optional,
    Sequence,
    Tuple)

from multalpha.errors import (
    MultalphaContractError,
    MultalphaDomainError,
    MultalphaNumericalError)
from multalpha.scenario import (
    AlphaLadder)

PHI_RATIO = 2.0 / (1.0 + math.sqrt(5.0))

DEFAULT_BOUNDS = (1e-6, 0.5)
DEFAULT_RESOLUTION = 200
ALPHA_TOL = 1e-4

Optimum = namedtuple(
    'Optimum',
    ['alpha_star', 'cost_star', 'trace', 'alpha_rounded'])
"""Cost-minimizing alpha with every evaluated (alpha, cost) pair."""


class _Objective(object):
    """Memoizing wrapper that rejects non-finite objective values."""

    def __init__(self, costfn: Callable[[float], float]) -> None:
        self._costfn = costfn
        self.seen: Dict[float, float] = dict()

    def __call__(self, alpha: float) -> float:
        if alpha not in self.seen:
            cost = float(self._costfn(alpha))
            if not math.isfinite(cost):
                raise MultalphaNumericalError(
                    'Objective returned ' + repr(cost) + ' at alpha = ' +
                    repr(alpha))
            self.seen[alpha] = cost
        return self.seen[alpha]


def _golden(f: Callable[[float], float], lo: float, hi: float,
            tol: float, max_iter: int=100) -> None:
    """Golden-section descent; evaluations land in `f`'s memo."""
    x1 = hi - PHI_RATIO * (hi - lo)
    x2 = lo + PHI_RATIO * (hi - lo)
    f1 = f(x1)
    f2 = f(x2)
    for _ in range(max_iter):
        if abs(hi - lo) <= tol:
            break
        if f2 > f1:
            hi = x2
            x2, f2 = x1, f1
            x1 = hi - PHI_RATIO * (hi - lo)
            f1 = f(x1)
        else:
            lo = x1
            x1, f1 = x2, f2
            x2 = lo + PHI_RATIO * (hi - lo)
            f2 = f(x2)


def search_grid(bounds: Tuple[float, float]=DEFAULT_BOUNDS,
                resolution: int=DEFAULT_RESOLUTION) -> List[float]:
    """Log-spaced alphas scanned by `optimal_alpha`, bounds included."""
    lo, hi = bounds
    if not (0.0 < lo <= hi <= 0.5):
        raise MultalphaDomainError(
            'Alpha search bounds must satisfy 0 < lower <= upper <= 0.5, '
            'got ' + repr(tuple(bounds)))
    elif resolution < 2:
        raise MultalphaDomainError(
            'Search resolution must be at least 2, got ' + repr(resolution))

    grid = [float(a) for a in np.geomspace(lo, hi, resolution)]
    grid[0], grid[-1] = float(lo), float(hi)
    return grid


def optimal_alpha(costfn: Callable[[float], float],
                  bounds: Tuple[float, float]=DEFAULT_BOUNDS,
                  resolution: int=DEFAULT_RESOLUTION,
                  tol: float=ALPHA_TOL) -> Optimum:
    """Minimize `costfn` over alpha in `bounds`.

    A log-spaced grid locates the best bracket, which golden-section search
    then refines. Ties go to the smaller alpha; a refined point only replaces
    the grid optimum when strictly cheaper.
    """
    f = _Objective(costfn)
    grid = search_grid(bounds, resolution)

    best_i = 0
    for i, a in enumerate(grid):
        if f(a) < f(grid[best_i]):
            best_i = i
    alpha_star = grid[best_i]
    cost_star = f(alpha_star)

    left = grid[max(best_i - 1, 0)]
    right = grid[min(best_i + 1, len(grid) - 1)]
    if right - left > tol:
        _golden(f, left, right, tol)
        for a in sorted(f.seen):
            if f.seen[a] < cost_star:
                alpha_star, cost_star = a, f.seen[a]

    trace = tuple(sorted(f.seen.items()))
    return Optimum(alpha_star, cost_star, trace, round(alpha_star, 2))


def ladder_from_costs(alpha1: float, c0: Sequence[float]) -> AlphaLadder:
    """alpha_m = 2 ** (log2(alpha1) C0(m) / C0(1))."""
    if not (0.0 < alpha1 < 1.0):
        raise MultalphaDomainError(
            'alpha1 must lie strictly between 0 and 1, got ' + repr(alpha1))
    elif not c0:
        raise MultalphaDomainError('At least one cost is required')
    elif not (c0[0] > 0.0):
        raise MultalphaDomainError(
            'The first Type I cost must be positive, got ' + repr(c0[0]))
    for prev, cur in zip(c0, c0[1:]):
        if cur < prev:
            raise MultalphaContractError(
                'Costs must be nondecreasing, got ' + repr(prev) +
                ' followed by ' + repr(cur))

    log_alpha1 = math.log2(alpha1)
    return AlphaLadder([2.0 ** (log_alpha1 * c / c0[0]) for c in c0])


def population_scale(q1: float, ladder: AlphaLadder,
                     surprisal_digits: Optional[int]=None) -> List[float]:
    """q(m) = q(1) log2(alpha_m) / log2(alpha_1).

    With `surprisal_digits`, surprisals are rounded to that many decimals
    first, as in hand calculations quoting 4.3 bits for 0.05.
    """
    if not (q1 > 0.0):
        raise MultalphaDomainError(
            'Population size q1 must be positive, got ' + repr(q1))
    bits = ladder.surprisals()
    if surprisal_digits is not None:
        bits = [round(b, surprisal_digits) for b in bits]
    return [q1 * b / bits[0] for b in bits]

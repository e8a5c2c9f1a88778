import math

import pytest

from multalpha.alphasel import (
    DEFAULT_BOUNDS,
    ladder_from_costs,
    optimal_alpha,
    population_scale,
    search_grid)
from multalpha.errors import (
    MultalphaContractError,
    MultalphaDomainError,
    MultalphaNumericalError)
from multalpha.scenario import (
    AlphaLadder)


def test_search_grid_is_log_spaced_with_exact_bounds():
    grid = search_grid((1e-6, 0.5), 200)
    assert len(grid) == 200
    assert grid[0] == 1e-6
    assert grid[-1] == 0.5
    ratios = [b / a for a, b in zip(grid, grid[1:])]
    assert max(ratios) == pytest.approx(min(ratios), rel=1e-9)


@pytest.mark.parametrize('bounds,resolution', [((0.0, 0.5), 10),
                                               ((0.3, 0.2), 10),
                                               ((0.1, 0.6), 10),
                                               ((0.1, 0.2), 1)])
def test_search_grid_domain(bounds, resolution):
    with pytest.raises(MultalphaDomainError):
        search_grid(bounds, resolution)


def test_constant_objective_ties_to_lower_bound():
    best = optimal_alpha(lambda a: 7.0)
    assert best.cost_star == 7.0
    assert best.alpha_star == DEFAULT_BOUNDS[0]


def test_smooth_objective():
    best = optimal_alpha(lambda a: (math.log(a) - math.log(0.06)) ** 2 + 1.0)
    assert best.alpha_star == pytest.approx(0.06, abs=2e-4)
    assert best.alpha_rounded == 0.06
    assert best.cost_star == pytest.approx(1.0, abs=1e-4)


def test_cost_star_is_minimum_of_trace():
    best = optimal_alpha(lambda a: abs(a - 0.13) + 0.01 * math.sin(40 * a))
    assert all(best.cost_star <= c for _, c in best.trace)
    alphas = [a for a, _ in best.trace]
    assert alphas == sorted(alphas)


def test_bounds_are_respected():
    best = optimal_alpha(lambda a: (a - 0.06) ** 2, (0.2, 0.21), 20)
    assert 0.2 <= best.alpha_star <= 0.21
    assert best.alpha_star == 0.2


def test_non_finite_objective_names_alpha():
    with pytest.raises(MultalphaNumericalError) as exc:
        optimal_alpha(lambda a: math.nan, (0.01, 0.5), 5)
    assert '0.01' in exc.value.message


def test_ladder_from_costs_examples():
    assert ladder_from_costs(0.05, [1.0, 2.0]).levels == pytest.approx(
        (0.05, 0.0025), rel=1e-12)
    assert ladder_from_costs(0.1, [1.0, 3.0]).levels == pytest.approx(
        (0.1, 0.001), rel=1e-12)
    assert ladder_from_costs(0.05, [4.0]).levels == pytest.approx((0.05,))


def test_ladder_from_costs_errors():
    with pytest.raises(MultalphaContractError):
        ladder_from_costs(0.05, [1.0, 1.0])
    with pytest.raises(MultalphaContractError):
        ladder_from_costs(0.05, [2.0, 1.0])
    with pytest.raises(MultalphaDomainError):
        ladder_from_costs(0.05, [0.0, 1.0])
    with pytest.raises(MultalphaDomainError):
        ladder_from_costs(1.0, [1.0, 2.0])


def test_population_scale():
    ladder = AlphaLadder([0.05, 0.001])
    assert round(population_scale(1000.0, ladder, 1)[1]) == 2326
    assert round(population_scale(1000.0, ladder)[1]) == 2306
    assert population_scale(250.0, AlphaLadder([0.01])) == pytest.approx(
        [250.0])
    with pytest.raises(MultalphaDomainError):
        population_scale(0.0, ladder)


def test_population_scale_ratios_and_homogeneity():
    ladder = AlphaLadder([0.2, 0.05, 0.01, 0.0001])
    q = population_scale(10.0, ladder)
    bits = ladder.surprisals()
    for qm, b in zip(q, bits):
        assert qm / q[0] == pytest.approx(b / bits[0], rel=1e-12)
    assert population_scale(30.0, ladder) == pytest.approx(
        [3.0 * v for v in q])
    assert q == sorted(q)

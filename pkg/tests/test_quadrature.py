import math

import numpy as np
import pytest

from multalpha.errors import (
    MultalphaNumericalError)
from multalpha.quadrature import (
    integrate,
    integrate_panels,
    integrate_vec)
from multalpha.specfun import (
    normal_cdf,
    normal_pdf)


def test_normal_density_mass():
    assert integrate(normal_pdf, -8.0, 8.0) == pytest.approx(1.0, abs=1e-12)
    assert integrate(normal_pdf, -8.0, 1.0) == pytest.approx(
        normal_cdf(1.0), abs=1e-12)


def test_empty_and_reversed_intervals():
    assert integrate(math.sin, 1.0, 1.0) == 0.0
    assert integrate(math.cos, 1.0, 0.0) == pytest.approx(-math.sin(1.0))


def test_panels_handle_kinks():
    value = integrate_panels(lambda x: abs(x - 0.3), [0.0, 0.3, 1.0, 0.3])
    assert value == pytest.approx(0.5 * 0.3 ** 2 + 0.5 * 0.7 ** 2, abs=1e-12)


def test_vector_integrand():
    def f(x):
        return np.array([1.0, x, x * x])

    assert integrate_vec(f, 0.0, 2.0) == pytest.approx(
        [2.0, 2.0, 8.0 / 3.0], abs=1e-10)


def test_non_finite_integrand_raises():
    with pytest.raises(MultalphaNumericalError):
        integrate(lambda x: math.nan, 0.0, 1.0)

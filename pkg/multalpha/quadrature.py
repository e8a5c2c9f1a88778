"""Adaptive Gauss-Kronrod quadrature with convergence diagnostics."""

import math

import numpy as np

from scipy.integrate import (
    quad,
    quad_vec)
from typing import (
    Callable,
    Iterable)

from multalpha.errors import (
    MultalphaNumericalError)

ABS_TOL = 1e-10
REL_TOL = 1e-10
LIMIT = 200

# largest accepted error estimate, relative to max(1, |integral|)
ACCEPT_REL = 1e-6


def _check(value, abserr: float, a: float, b: float, message: str) -> None:
    scale = max(1.0, float(np.max(np.abs(value))))
    if not np.all(np.isfinite(value)) or not (abserr <= ACCEPT_REL * scale):
        raise MultalphaNumericalError(
            'Quadrature over [' + repr(a) + ', ' + repr(b) + '] did not '
            'converge (' + message + '); estimate ' + repr(value) +
            ', error estimate ' + repr(abserr))


def integrate(f: Callable[[float], float], a: float, b: float,
              abs_tol: float=ABS_TOL, rel_tol: float=REL_TOL,
              limit: int=LIMIT) -> float:
    """Integrate a scalar function over a finite interval."""
    if a == b:
        return 0.0
    elif a > b:
        return -integrate(f, b, a, abs_tol, rel_tol, limit)

    out = quad(f, a, b, epsabs=abs_tol, epsrel=rel_tol, limit=limit,
               full_output=1)
    value, abserr = out[0], out[1]
    message = out[3] if len(out) > 3 else 'error estimate too large'
    _check(value, abserr, a, b, message)
    return value


def integrate_panels(f: Callable[[float], float], edges: Iterable[float],
                     abs_tol: float=ABS_TOL, rel_tol: float=REL_TOL,
                     limit: int=LIMIT) -> float:
    """Integrate over consecutive panels so kinks sit on panel edges."""
    points = sorted(set(edges))
    return math.fsum(
        integrate(f, lo, hi, abs_tol, rel_tol, limit)
        for lo, hi in zip(points, points[1:]))


def integrate_vec(f: Callable[[float], np.ndarray], a: float, b: float,
                  abs_tol: float=1e-8, rel_tol: float=1e-8,
                  limit: int=LIMIT) -> np.ndarray:
    """Integrate a vector-valued function with one shared subdivision."""
    res, err, info = quad_vec(f, a, b, epsabs=abs_tol, epsrel=rel_tol,
                              limit=limit, full_output=True)
    _check(res, err, a, b, getattr(info, 'message', 'not converged'))
    return np.asarray(res, dtype=float)

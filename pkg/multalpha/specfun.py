"""Special functions underpinning every error-rate and quantile computation.

The error function uses the rational approximations of the Cephes Math
Library (Moshier); the regularized incomplete beta function is evaluated with
the modified Lentz algorithm on its continued fraction. Quantiles are found by
Newton steps safeguarded with bisection.
"""

import math

from multalpha.errors import (
    MultalphaDomainError,
    MultalphaNumericalError)

MAXLOG = 7.09782712893383996843e2
SQRT2 = 1.41421356237309504880
SQRT2PI = 2.50662827463100050242

_ROOT_TOL = 1e-12
_ROOT_MAX_ITER = 300
_CF_EPS = 1e-15
_CF_FPMIN = 1e-300
_CF_MAX_ITER = 10000

# erfc(x) for 1 <= |x| < 8
_ERFC_P = [
    2.46196981473530512524e-10,
    5.64189564831068821977e-1,
    7.46321056442269912687e0,
    4.86371970985681366614e1,
    1.96520832956077098242e2,
    5.26445194995477358631e2,
    9.34528527171957607540e2,
    1.02755188689515710272e3,
    5.57535335369399327526e2,
]
_ERFC_Q = [
    1.0,
    1.32281951154744992508e1,
    8.67072140885989742329e1,
    3.54937778887819891062e2,
    9.75708501743205489753e2,
    1.82390916687909736289e3,
    2.24633760818710981792e3,
    1.65666309194161350182e3,
    5.57535340817727675546e2,
]
# erfc(x) for |x| >= 8
_ERFC_R = [
    5.64189583547755073984e-1,
    1.27536670759978104416e0,
    5.01905042251180477414e0,
    6.16021097993053585195e0,
    7.40974269950448939160e0,
    2.97886665372100240670e0,
]
_ERFC_S = [
    1.00000000000000000000e0,
    2.26052863220117276590e0,
    9.39603524938001434673e0,
    1.20489539808096656605e1,
    1.70814450747565897222e1,
    9.60896809063285878198e0,
    3.36907645100081516050e0,
]
# erf(x) for |x| <= 1
_ERF_T = [
    9.60497373987051638749e0,
    9.00260197203842689217e1,
    2.23200534594684319226e3,
    7.00332514112805075473e3,
    5.55923013010394962768e4,
]
_ERF_U = [
    1.00000000000000000000e0,
    3.35617141647503099647e1,
    5.21357949780152679795e2,
    4.59432382970980127987e3,
    2.26290000613890934246e4,
    4.92673942608635921086e4,
]


def _polevl(x: float, coef) -> float:
    """Evaluate a polynomial whose coefficients are stored highest first."""
    result = 0.0
    for c in coef:
        result = result * x + c
    return result


def erf(a: float) -> float:
    """Return the error function of `a`."""
    if abs(a) > 1.0:
        return 1.0 - erfc(a)
    z = a * a
    return a * _polevl(z, _ERF_T) / _polevl(z, _ERF_U)


def erfc(a: float) -> float:
    """Return the complementary error function of `a`."""
    x = abs(a)
    if x < 1.0:
        return 1.0 - erf(a)

    z = -a * a
    if z < -MAXLOG:
        return 2.0 if a < 0 else 0.0
    z = math.exp(z)

    if x < 8.0:
        y = z * _polevl(x, _ERFC_P) / _polevl(x, _ERFC_Q)
    else:
        y = z * _polevl(x, _ERFC_R) / _polevl(x, _ERFC_S)

    return 2.0 - y if a < 0 else y


def _check_finite(x: float, name: str) -> None:
    if not math.isfinite(x):
        raise MultalphaDomainError(
            'Expected a finite `' + name + '`, got ' + repr(x))


def _check_open_probability(p: float, name: str='p') -> None:
    if not (0.0 < p < 1.0):
        raise MultalphaDomainError(
            '`' + name + '` must lie strictly between 0 and 1, got ' +
            repr(p))


def _check_df(df: float) -> None:
    if not (df > 0.0) or not math.isfinite(df):
        raise MultalphaDomainError(
            'Degrees of freedom must be a positive finite number, got ' +
            repr(df))


def normal_pdf(x: float) -> float:
    """Standard normal density."""
    return math.exp(-0.5 * x * x) / SQRT2PI


def normal_cdf(x: float) -> float:
    """Standard normal cumulative distribution function."""
    _check_finite(x, 'x')
    return 0.5 * erfc(-x / SQRT2)


def _lower_normal_quantile(q: float) -> float:
    # rational starting point, |error| < 4.5e-4
    t = math.sqrt(-2.0 * math.log(q))
    x = -(t - (2.515517 + 0.802853 * t + 0.010328 * t * t) /
          (1.0 + 1.432788 * t + 0.189269 * t * t + 0.001308 * t * t * t))
    return _safeguarded_newton(
        lambda v: normal_cdf(v) - q, normal_pdf, x, -40.0, 0.0)


def normal_quantile(p: float) -> float:
    """Inverse of `normal_cdf`."""
    _check_open_probability(p)
    if p == 0.5:
        return 0.0
    elif p > 0.5:
        return -_lower_normal_quantile(1.0 - p)
    return _lower_normal_quantile(p)


def _safeguarded_newton(f, fprime, x: float, lo: float, hi: float) -> float:
    """Find the root of increasing `f` bracketed by [lo, hi]."""
    if not (lo < x < hi):
        x = 0.5 * (lo + hi)

    for _ in range(_ROOT_MAX_ITER):
        fx = f(x)
        if fx == 0.0:
            return x
        elif fx > 0.0:
            hi = x
        else:
            lo = x

        slope = fprime(x)
        x_new = x - fx / slope if slope > 0.0 else lo - 1.0
        if not (lo < x_new < hi):
            x_new = 0.5 * (lo + hi)

        if abs(x_new - x) <= _ROOT_TOL * max(1.0, abs(x)):
            return x_new
        x = x_new

    raise MultalphaNumericalError(
        'Quantile search did not converge near x = ' + repr(x))


def _betacf(a: float, b: float, x: float) -> float:
    """Continued fraction for the incomplete beta function (modified Lentz)."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _CF_FPMIN:
        d = _CF_FPMIN
    d = 1.0 / d
    h = d

    for m in range(1, _CF_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_FPMIN:
            d = _CF_FPMIN
        c = 1.0 + aa / c
        if abs(c) < _CF_FPMIN:
            c = _CF_FPMIN
        d = 1.0 / d
        h *= d * c

        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_FPMIN:
            d = _CF_FPMIN
        c = 1.0 + aa / c
        if abs(c) < _CF_FPMIN:
            c = _CF_FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_EPS:
            return h

    raise MultalphaNumericalError(
        'Incomplete beta continued fraction did not converge for a = ' +
        repr(a) + ', b = ' + repr(b) + ', x = ' + repr(x))


def _betai(a: float, b: float, x: float, y: float) -> float:
    """I_x(a, b) given both x and its complement y = 1 - x."""
    if x <= 0.0:
        return 0.0
    elif y <= 0.0:
        return 1.0

    ln_front = (math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b) +
                a * math.log(x) + b * math.log(y))
    if x < (a + 1.0) / (a + b + 2.0):
        return math.exp(ln_front) * _betacf(a, b, x) / a
    return 1.0 - math.exp(ln_front) * _betacf(b, a, y) / b


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """The regularized incomplete beta function I_x(a, b)."""
    if not (a > 0.0 and b > 0.0) or not (
            math.isfinite(a) and math.isfinite(b)):
        raise MultalphaDomainError(
            'Incomplete beta parameters must be positive, got a = ' +
            repr(a) + ', b = ' + repr(b))
    elif not (0.0 <= x <= 1.0):
        raise MultalphaDomainError(
            'Incomplete beta argument must lie in [0, 1], got ' + repr(x))
    return _betai(a, b, x, 1.0 - x)


def t_pdf(x: float, df: float) -> float:
    """Student t density."""
    return math.exp(
        math.lgamma(0.5 * (df + 1.0)) - math.lgamma(0.5 * df) -
        0.5 * math.log(df * math.pi) -
        0.5 * (df + 1.0) * math.log1p(x * x / df))


def t_cdf(x: float, df: float) -> float:
    """Student t cumulative distribution function with real `df`."""
    _check_finite(x, 'x')
    _check_df(df)
    if x == 0.0:
        return 0.5

    x2 = x * x
    tail = 0.5 * _betai(0.5 * df, 0.5, df / (df + x2), x2 / (df + x2))
    return tail if x < 0.0 else 1.0 - tail


def _lower_t_quantile(q: float, df: float) -> float:
    x = normal_quantile(q)
    lo = x
    for _ in range(1100):
        if t_cdf(lo, df) <= q:
            break
        lo *= 2.0
    else:
        raise MultalphaNumericalError(
            'Unable to bracket the t quantile for p = ' + repr(q) +
            ', df = ' + repr(df))

    return _safeguarded_newton(
        lambda v: t_cdf(v, df) - q,
        lambda v: t_pdf(v, df),
        x, lo - abs(lo) * 1e-9 - 1e-9, 0.0)


def t_quantile(p: float, df: float) -> float:
    """Inverse of `t_cdf`."""
    _check_open_probability(p)
    _check_df(df)
    if p == 0.5:
        return 0.0
    elif p > 0.5:
        return -_lower_t_quantile(1.0 - p, df)
    return _lower_t_quantile(p, df)


def surprisal(alpha: float) -> float:
    """Information value, in bits, of a rejection at level `alpha`."""
    if not (0.0 < alpha <= 1.0):
        raise MultalphaDomainError(
            'Surprisal requires 0 < alpha <= 1, got ' + repr(alpha))
    return -math.log2(alpha)

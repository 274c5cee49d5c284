"""Special functions on the real axis.

Gamma and erfc wrap the standard library; the complex log-gamma is a Lanczos
approximation used by the Mellin-Barnes quadratures.  The Wright M-function,
the Mittag-Leffler function of negative argument and the kernel
``F(y) = y * sum_k (-y)^k / k! * sin(pi*gamma*(k+1)/2)`` are evaluated by
power series guarded against cancellation, with an integral representation
taking over for large argument.

All functions accept scalars; the ``*_array`` variants and the public
functions marked as such accept NumPy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CancellationError, ConvergenceError, DomainError, PoleError
from .quad import integrate_adaptive

__all__ = [
    "SeriesPolicy",
    "WrightParams",
    "MittagLefflerOrder",
    "DEFAULT_POLICY",
    "gamma_real",
    "rgamma",
    "loggamma_complex",
    "gamma_complex",
    "erfc",
    "mittag_leffler_neg",
    "mittag_leffler_tail",
    "mwright",
    "mwright_with_path",
    "mwright_asymptotic",
    "mwright_asymptotic_constants",
    "fox_wright_F",
    "fox_wright_reduced",
]


@dataclass(frozen=True)
class SeriesPolicy:
    """Truncation and cancellation settings shared by every power series.

    A series stops once three consecutive terms fall below
    ``rel_tol * |partial sum|``.  If the largest term exceeds
    ``cancellation_limit * |sum|`` the value is rejected and the caller's
    fallback path is used instead.
    """

    rel_tol: float = 1e-15
    max_terms: int = 250
    cancellation_limit: float = 1e3

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise DomainError(f"rel_tol must be positive, got {self.rel_tol}", "rel_tol")
        if self.max_terms < 8:
            raise DomainError(f"max_terms must be >= 8, got {self.max_terms}", "max_terms")
        if not self.cancellation_limit > 1:
            raise DomainError(
                f"cancellation_limit must exceed 1, got {self.cancellation_limit}",
                "cancellation_limit",
            )


DEFAULT_POLICY = SeriesPolicy()


@dataclass(frozen=True)
class WrightParams:
    """Parameters of ``W_{lambda,mu}(z) = sum z^k / (k! Gamma(lambda k + mu))``."""

    lam: float
    mu: float

    def __post_init__(self):
        if not self.lam > -1:
            raise DomainError(f"Wright lambda must exceed -1, got {self.lam}", "lambda")


@dataclass(frozen=True)
class MittagLefflerOrder:
    beta: float

    def __post_init__(self):
        if not 0 < self.beta <= 1:
            raise DomainError(f"Mittag-Leffler order must lie in (0, 1], got {self.beta}", "beta")


def _is_nonpositive_integer(x):
    return x <= 0 and x == math.floor(x)


def gamma_real(x: float) -> float:
    """Gamma function of a real argument."""
    x = float(x)
    if _is_nonpositive_integer(x):
        raise PoleError(f"gamma has a pole at {x}", "x")
    if x > 171.6243769563027:
        raise OverflowError(f"gamma({x}) overflows a double")
    return math.gamma(x)


def _rgamma_sign_log(x):
    # 1/Gamma(x) as (sign, log|.|); sign 0 at the poles of Gamma
    if _is_nonpositive_integer(x):
        return 0.0, -math.inf
    if x >= 0.5:
        return 1.0, -math.lgamma(x)
    # reflection: 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi
    s = math.sin(math.pi * x)
    return math.copysign(1.0, s), math.lgamma(1.0 - x) + math.log(abs(s)) - math.log(math.pi)


def rgamma(x: float) -> float:
    """Reciprocal gamma ``1/Gamma(x)``, an entire function (zero at the poles)."""
    x = float(x)
    if 0.5 <= x <= 171.0:
        return 1.0 / math.gamma(x)
    sign, logmag = _rgamma_sign_log(x)
    if sign == 0.0:
        return 0.0
    if logmag > 709.0:
        raise OverflowError(f"1/gamma({x}) overflows a double")
    return sign * math.exp(logmag)


def erfc(x: float) -> float:
    """Complementary error function."""
    return math.erfc(float(x))


# Lanczos approximation, g = 607/128 with 15 coefficients (Godfrey).
_LANCZOS_G = 607.0 / 128.0
_LANCZOS_C = np.array([
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
])
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


def _lanczos_loggamma(z):
    # valid for Re z >= 1/2
    zm1 = z - 1.0
    acc = np.full_like(z, _LANCZOS_C[0])
    for k in range(1, len(_LANCZOS_C)):
        acc = acc + _LANCZOS_C[k] / (zm1 + k)
    tt = zm1 + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (zm1 + 0.5) * np.log(tt) - tt + np.log(acc)


def _log_sin_pi(z):
    # log(sin(pi z)) without overflow for large |Im z|; branch is irrelevant
    # because the caller exponentiates.
    upper = z.imag >= 0
    w = np.where(upper, z, np.conj(z))
    # sin(pi w) = (i/2) e^{-i pi w} (1 - e^{2 i pi w}), |e^{2 i pi w}| <= 1 for Im w >= 0
    val = np.log(0.5j) - 1j * np.pi * w + np.log(1.0 - np.exp(2j * np.pi * w))
    return np.where(upper, val, np.conj(val))


def loggamma_complex(z):
    """Logarithm of the gamma function for complex (array) argument.

    The imaginary part is not reduced to the principal branch; ``exp`` of the
    result is Gamma(z).
    """
    z = np.asarray(z, dtype=complex)
    bad = (z.imag == 0) & (z.real <= 0) & (z.real == np.floor(z.real))
    if np.any(bad):
        raise PoleError(f"gamma has a pole at {z[bad].ravel()[0].real}", "z")
    left = z.real < 0.5
    out = np.empty_like(z)
    if np.any(~left):
        out[~left] = _lanczos_loggamma(z[~left])
    if np.any(left):
        zl = z[left]
        out[left] = math.log(math.pi) - _log_sin_pi(zl) - _lanczos_loggamma(1.0 - zl)
    return out if out.ndim else out[()]


def gamma_complex(z):
    """Gamma function of a complex argument (scalar or array)."""
    return np.exp(loggamma_complex(z))


# ---------------------------------------------------------------------------
# Mittag-Leffler function of negative argument


def _ml_series(beta, x, policy):
    x = np.asarray(x, dtype=float)
    total = np.zeros_like(x)
    small = 0
    for k in range(policy.max_terms):
        term = (-x) ** k * rgamma(beta * k + 1.0)
        total = total + term
        if np.all(np.abs(term) <= policy.rel_tol * np.abs(total)):
            small += 1
            if small >= 3:
                return total
        else:
            small = 0
    raise ConvergenceError(
        f"Mittag-Leffler series (beta={beta}) did not converge in {policy.max_terms} terms"
    )


def _ml_spectral(beta, x, rel_tol=1e-12):
    """E_beta(-x) for x > 0 from its representation as a Laplace transform."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    logt = np.log(x) / beta  # x = t^beta
    t = np.exp(logt)
    cb = math.cos(beta * math.pi)
    pref = math.sin(beta * math.pi) / math.pi

    def integrand(u):
        # sigma = e^u; integrand times d sigma = sigma du
        eb = np.exp(beta * u)
        dens = eb / (eb * eb + 2.0 * eb * cb + 1.0)
        return np.exp(-np.outer(t, np.exp(u))) * dens

    lo = -40.0 / beta - max(float(np.max(logt)), 0.0)
    hi = min(math.log(60.0) - float(np.min(logt)), 40.0 / beta)
    points = [p for p in (0.0, -float(np.median(logt))) if lo < p < hi]
    res = integrate_adaptive(integrand, lo, hi, rel_tol=rel_tol, points=points)
    return pref * res.value


def mittag_leffler_neg(beta: float, x, policy: SeriesPolicy = DEFAULT_POLICY):
    """``E_beta(-x)`` for ``x >= 0`` and ``0 < beta <= 1`` (scalar or array).

    The power series is used for ``x <= 1`` and the spectral integral
    ``E_beta(-t^beta) = sin(beta pi)/pi * int_0^inf exp(-s t) s^(beta-1) /
    (s^(2 beta) + 2 s^beta cos(beta pi) + 1) ds`` beyond.
    """
    MittagLefflerOrder(beta)
    xa = np.asarray(x, dtype=float)
    if np.any(xa < 0) or not np.all(np.isfinite(xa)):
        raise DomainError("mittag_leffler_neg needs finite x >= 0", "x")
    if beta == 1.0:
        out = np.exp(-xa)
        return out if out.ndim else float(out)
    out = np.empty_like(xa)
    near = xa <= 1.0
    if np.any(near):
        out[near] = _ml_series(beta, xa[near], policy)
    if np.any(~near):
        out[~near] = _ml_spectral(beta, xa[~near])
    return out if out.ndim else float(out)


def mittag_leffler_tail(beta: float, x: float) -> float:
    """Leading algebraic decay ``x^{-1} / Gamma(1 - beta)`` of ``E_beta(-x)``."""
    return rgamma(1.0 - beta) / x


# ---------------------------------------------------------------------------
# Wright M-function


def _mwright_series(nu, x, policy):
    """sum_k (-x)^k / (k! Gamma(1 - nu - nu k)); returns (value, max|term|)."""
    x = np.asarray(x, dtype=float)
    total = np.zeros_like(x)
    biggest = np.zeros_like(x)
    small = np.zeros(x.shape, dtype=int)
    done = np.zeros(x.shape, dtype=bool)
    logx = np.log(np.where(x > 0, x, 1.0))
    for k in range(policy.max_terms):
        sign, logr = _rgamma_sign_log(1.0 - nu - nu * k)
        if k == 0:
            term = np.full_like(x, sign * math.exp(logr))
        elif sign == 0.0:
            term = np.zeros_like(x)
        else:
            with np.errstate(over="ignore"):
                mag = np.exp(k * logx - math.lgamma(k + 1.0) + logr)
            term = np.where(x > 0, mag, 0.0) * ((-1.0) ** k * sign)
        total = np.where(done, total, total + term)
        biggest = np.where(done, biggest, np.maximum(biggest, np.abs(term)))
        # a vanishing gamma reciprocal says nothing about convergence
        if sign != 0.0 or k == 0:
            small = np.where(np.abs(term) <= policy.rel_tol * np.abs(total), small + 1, 0)
            done = done | (small >= 3)
        if np.all(done):
            break
    return total, biggest, done


def _mwright_sine_series(nu, x, terms=200):
    """Sine form of the M-series, kept as an independent cross-check."""
    total = 0.0
    for k in range(terms):
        a = nu * (k + 1)
        s = math.sin(math.pi * a)
        if x == 0:
            if k == 0:
                total += math.gamma(a) * s / math.pi
            break
        total += (-1) ** k * math.exp(k * math.log(x) - math.lgamma(k + 1) + math.lgamma(a)) * s / math.pi
    return total


def _kanter(nu, phi):
    c = 1.0 / (1.0 - nu)
    snp = np.sin(nu * phi)
    return (snp / np.sin(phi)) ** c * np.sin((1.0 - nu) * phi) / snp


def _mwright_integral(nu, x, rel_tol=1e-13):
    """Positive integral representation, for x > 0.

    ``M_nu(x) = c x^(nu c) / pi * int_0^pi A(phi) exp(-x^c A(phi)) dphi`` with
    ``c = 1/(1 - nu)`` and Kanter's function
    ``A(phi) = (sin(nu phi)/sin phi)^c sin((1-nu) phi)/sin(nu phi)``.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    c = 1.0 / (1.0 - nu)
    xc = x ** c
    eps = 1e-300

    def integrand(phi):
        a = _kanter(nu, np.clip(phi, eps, math.pi - 1e-15))
        return a * np.exp(-np.outer(xc, a))

    res = integrate_adaptive(integrand, 0.0, math.pi, rel_tol=rel_tol)
    return c * x ** (nu * c) * res.value / math.pi


def mwright_with_path(nu: float, x, policy: SeriesPolicy = DEFAULT_POLICY):
    """``M_nu(x)`` together with the evaluation path per point.

    Returns ``(values, paths)`` where each path is ``"series"`` or
    ``"integral"``.
    """
    if not 0 < nu < 1:
        raise DomainError(f"M-function order must lie in (0, 1), got {nu}", "nu")
    xa = np.asarray(x, dtype=float)
    if np.any(xa < 0) or not np.all(np.isfinite(xa)):
        raise DomainError("mwright needs finite x >= 0", "x")
    flat = np.atleast_1d(xa).ravel()
    total, biggest, converged = _mwright_series(nu, flat, policy)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = biggest / np.abs(total)
    ok = converged & (total > 0) & (ratio <= policy.cancellation_limit)
    out = np.where(ok, total, 0.0)
    paths = np.where(ok, "series", "integral")
    if np.any(~ok):
        out[~ok] = _mwright_integral(nu, flat[~ok])
    out = out.reshape(np.shape(xa))
    paths = paths.reshape(np.shape(xa))
    if out.ndim == 0:
        return float(out), str(paths)
    return out, paths


def mwright(nu: float, x, policy: SeriesPolicy = DEFAULT_POLICY):
    """Wright M-function ``M_nu(x) = sum_k (-x)^k / (k! Gamma(1 - nu - nu k))``.

    Defined for ``0 < nu < 1`` and ``x >= 0`` (scalar or array).  When the
    alternating series loses more than ``policy.cancellation_limit`` in
    magnitude the value comes from a positive integral representation, which
    has no cancellation.
    """
    return mwright_with_path(nu, x, policy)[0]


def mwright_asymptotic_constants(beta: float):
    """Constants ``(A, a, b, c)`` of ``U(x) ~ A x^a exp(-b x^c)``, ``x -> inf``.

    ``U = M_{beta/2} / 2`` is the reduced Green function of order ``beta``.
    """
    if not 0 < beta <= 1:
        raise DomainError(f"beta must lie in (0, 1], got {beta}", "beta")
    two_m = 2.0 - beta
    A = (2.0 * math.pi * two_m * 2.0 ** (beta / two_m) * beta ** ((2.0 - 2.0 * beta) / two_m)) ** -0.5
    a = (2.0 * beta - 2.0) / (2.0 * two_m)
    b = two_m * 2.0 ** (-2.0 / two_m) * beta ** (beta / two_m)
    c = 2.0 / two_m
    return A, a, b, c


def mwright_asymptotic(beta: float, x):
    """Leading large-``x`` approximation ``2 A x^a exp(-b x^c)`` of ``M_{beta/2}(x)``."""
    xa = np.asarray(x, dtype=float)
    if np.any(xa <= 0):
        raise DomainError("mwright_asymptotic needs x > 0", "x")
    A, a, b, c = mwright_asymptotic_constants(beta)
    out = 2.0 * A * xa ** a * np.exp(-b * xa ** c)
    return out if out.ndim else float(out)


# ---------------------------------------------------------------------------
# Fox-Wright kernel of the distributed-order solution


def _reduced_closed_form(gamma, y):
    # sum_k (-y)^k/k! sin(theta (k+1)) = Im[e^{i theta} exp(-y e^{i theta})]
    theta = 0.5 * np.pi * gamma
    return np.exp(-y * np.cos(theta)) * np.sin(theta - y * np.sin(theta))


def fox_wright_reduced(gamma, y, policy: SeriesPolicy = DEFAULT_POLICY):
    """``F(y)/y = sum_k (-y)^k / k! sin(pi gamma (k+1) / 2)`` (arrays broadcast).

    Entries where the series cancels beyond ``policy.cancellation_limit`` or
    does not settle within ``policy.max_terms`` are taken from the summed
    exponential form ``Im[e^{i theta} exp(-y e^{i theta})]``,
    ``theta = pi gamma / 2``.
    """
    gamma, y = np.broadcast_arrays(np.asarray(gamma, dtype=float), np.asarray(y, dtype=float))
    if np.any(y < 0):
        raise DomainError("fox_wright_F needs y >= 0", "y")
    if np.any((gamma <= 0) | (gamma > 1)):
        raise DomainError("gamma must lie in (0, 1]", "gamma")
    g = gamma.ravel()
    yy = y.ravel()
    half_pi_g = 0.5 * np.pi * g
    total = np.zeros_like(yy)
    biggest = np.zeros_like(yy)
    power = np.ones_like(yy)  # (-y)^k / k!
    small = np.zeros(yy.shape, dtype=int)
    done = np.zeros(yy.shape, dtype=bool)
    for k in range(policy.max_terms):
        if k:
            power = power * (-yy) / k
        term = power * np.sin(half_pi_g * (k + 1))
        total = np.where(done, total, total + term)
        biggest = np.maximum(biggest, np.abs(term))
        # zero sine factors (gamma = 1) are not informative for the stop rule
        tiny = np.abs(power) <= policy.rel_tol * np.abs(total)
        small = np.where(tiny, small + 1, 0)
        done = done | (small >= 3)
        if np.all(done):
            break
    with np.errstate(divide="ignore", invalid="ignore"):
        bad = ~done | (biggest > policy.cancellation_limit * np.abs(total))
    if np.any(bad):
        total[bad] = _reduced_closed_form(g[bad], yy[bad])
    total = total.reshape(y.shape)
    return total if total.ndim else float(total)


def fox_wright_F(gamma, y, policy: SeriesPolicy = DEFAULT_POLICY):
    """Kernel ``F(y) = y sum_k (-y)^k/k! sin(pi gamma (k+1)/2)``.

    Equivalently ``pi y 0Psi2[(1-gamma/2, -gamma/2), (gamma/2, gamma/2); -y]``.
    ``gamma = 1`` gives ``y cos y``.
    """
    y_arr = np.asarray(y, dtype=float)
    out = y_arr * fox_wright_reduced(gamma, y_arr, policy)
    return out if np.ndim(out) else float(out)

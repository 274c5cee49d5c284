"""Fundamental solution of the time-fractional diffusion equation of one order.

For ``0 < beta <= 1`` the Green function is self-similar,
``u(x, t) = t^(-beta/2) U(|x| / t^(beta/2))`` with the reduced Green function
``U(x) = M_{beta/2}(|x|) / 2``.  Besides this series route the module offers
two independent routes: the Fourier cosine integral of the Mittag-Leffler
function and the Mellin-Barnes line integral.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import mellin
from .errors import ConvergenceError, DomainError
from .quad import alternating_extrapolate, integrate_adaptive
from .specfun import (
    DEFAULT_POLICY,
    SeriesPolicy,
    mittag_leffler_neg,
    mwright_asymptotic_constants,
    mwright_with_path,
    rgamma,
)

__all__ = [
    "FractionalOrder",
    "GreenEvaluation",
    "PATHS",
    "reduced_green",
    "green",
    "green_grid",
    "fourier_oracle_green",
    "moment",
    "tail_mass_bound",
    "normalization",
    "quadrature_moment",
]

PATHS = ("series", "integral", "fourier_oracle", "mellin_oracle")


@dataclass(frozen=True)
class FractionalOrder:
    """Order ``0 < nu <= 1`` of the time derivative."""

    nu: float

    def __post_init__(self):
        if not 0 < self.nu <= 1:
            raise DomainError(f"order must lie in (0, 1], got {self.nu}", "beta")


@dataclass
class GreenEvaluation:
    """Samples ``u(x, t)`` on a grid of ``x`` at fixed ``t``.

    ``path`` names the requested route; ``point_paths`` records the
    evaluator actually used at each point (the series route hands large
    ``|x|`` to the integral representation of the M-function).
    """

    xs: list
    t: float
    values: list
    path: str
    point_paths: list = field(default_factory=list)

    def __post_init__(self):
        if len(self.xs) != len(self.values):
            raise DomainError("xs and values differ in length", "values")
        if self.path not in PATHS:
            raise DomainError(f"unknown path {self.path!r}", "path")
        if not self.point_paths:
            self.point_paths = [self.path] * len(self.xs)


def _order(order) -> FractionalOrder:
    return order if isinstance(order, FractionalOrder) else FractionalOrder(float(order))


def _reduced_with_path(beta, x, policy):
    ax = np.abs(np.asarray(x, dtype=float))
    if ax.ndim == 0:
        values, paths = mwright_with_path(0.5 * beta, ax, policy)
        return 0.5 * values, paths
    # evaluate each |x| once so that u(x) and u(-x) are bitwise equal
    uniq, inverse = np.unique(ax, return_inverse=True)
    values, paths = mwright_with_path(0.5 * beta, uniq, policy)
    inverse = inverse.reshape(ax.shape)
    return 0.5 * values[inverse], paths[inverse]


def reduced_green(order, x, policy: SeriesPolicy = DEFAULT_POLICY):
    """Reduced Green function ``U(x) = M_{beta/2}(|x|) / 2``; even in ``x``."""
    return _reduced_with_path(_order(order).nu, x, policy)[0]


def _check_time(t):
    if not np.all(np.asarray(t) > 0):
        raise DomainError(
            "t must be positive; at t = 0 the solution is the Dirac delta u(x, 0) = delta(x)", "t"
        )


def green(order, x, t, policy: SeriesPolicy = DEFAULT_POLICY):
    """Green function ``u(x, t) = t^(-beta/2) U(x t^(-beta/2))``."""
    beta = _order(order).nu
    _check_time(t)
    scale = np.asarray(t, dtype=float) ** (-0.5 * beta)
    out = scale * reduced_green(beta, np.asarray(x, dtype=float) * scale, policy)
    return out if np.ndim(out) else float(out)


def green_grid(order, xs: Sequence[float], t: float, path: str = "series",
               policy: SeriesPolicy = DEFAULT_POLICY) -> GreenEvaluation:
    """Evaluate ``u(x, t)`` over ``xs`` by one of the routes in :data:`PATHS`."""
    beta = _order(order).nu
    _check_time(t)
    xs = [float(v) for v in xs]
    if path in ("series", "integral"):
        scale = t ** (-0.5 * beta)
        vals, paths = _reduced_with_path(beta, np.array(xs) * scale, policy)
        return GreenEvaluation(xs, t, list(scale * np.atleast_1d(vals)), "series",
                               [str(p) for p in np.atleast_1d(paths)])
    if path == "fourier_oracle":
        return GreenEvaluation(xs, t, [fourier_oracle_green(beta, x, t) for x in xs], path)
    if path == "mellin_oracle":
        vals = []
        scale = t ** (-0.5 * beta)
        for x in xs:
            if x == 0:
                # the line integral needs x > 0; U(0) = 1/(2 Gamma(1 - beta/2))
                vals.append(scale * 0.5 * rgamma(1.0 - 0.5 * beta))
            else:
                vals.append(scale * mellin.mb_reduced_green(beta, abs(x) * scale))
        return GreenEvaluation(xs, t, vals, path)
    raise DomainError(f"unknown path {path!r}; choose from {PATHS}", "path")


def fourier_oracle_green(order, x: float, t: float, rel_tol: float = 1e-11,
                         n_intervals: int = 40) -> float:
    """``u(x, t) = (1/pi) int_0^inf cos(k x) E_beta(-k^2 t^beta) dk``.

    The integral is split at the zeros of ``cos(k x)``; the alternating
    half-wave contributions are summed and the partial sums extrapolated by
    iterated averaging.  At ``x = 0`` the algebraic tail of ``E_beta`` is
    integrated analytically instead.
    """
    beta = _order(order).nu
    _check_time(t)
    x = abs(float(x))
    tb = t ** beta

    def integrand(k):
        return mittag_leffler_neg(beta, k * k * tb) * np.cos(k * x)

    if x == 0.0:
        return _fourier_at_origin(beta, tb, rel_tol) / math.pi

    half = math.pi / x
    edges = [0.0, 0.5 * half] + [(j + 0.5) * half for j in range(1, n_intervals + 1)]
    partial = []
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        total += integrate_adaptive(integrand, lo, hi, rel_tol=rel_tol, abs_tol=1e-16).value
        partial.append(total)
    if beta == 1.0 and abs(partial[-1] - partial[-2]) < 1e-15:
        return partial[-1] / math.pi
    try:
        value, err = alternating_extrapolate(partial[len(partial) // 4:], full_output=True)
    except ConvergenceError as exc:
        raise ConvergenceError(f"Fourier oracle failed at x={x}, t={t}: {exc}") from exc
    if err > 1e-7:
        raise ConvergenceError(f"Fourier oracle extrapolation unsettled at x={x}, t={t} (spread {err:.2e})")
    return value / math.pi


def _fourier_at_origin(beta, tb, rel_tol):
    # int_0^inf E_beta(-k^2 tb) dk: quadrature up to K, then the asymptotic
    # expansion E_beta(-z) ~ sum_{j>=1} (-1)^(j+1) z^(-j) / Gamma(1 - beta j)
    if beta == 1.0:
        return 0.5 * math.sqrt(math.pi / tb)
    K = 30.0 / math.sqrt(tb)
    body = integrate_adaptive(lambda k: mittag_leffler_neg(beta, k * k * tb), 0.0, K,
                              rel_tol=rel_tol).value
    tail = 0.0
    for j in range(1, 6):
        tail += (-1) ** (j + 1) * rgamma(1.0 - beta * j) * K ** (1 - 2 * j) / ((2 * j - 1) * tb ** j)
    return body + tail


def moment(order, n: int, t: float) -> float:
    """Even moment ``mu_{2n}(t) = Gamma(2n+1) / Gamma(beta n + 1) t^(beta n)``."""
    beta = _order(order).nu
    if n < 0 or int(n) != n:
        raise DomainError(f"moment index must be a non-negative integer, got {n}", "n")
    if t < 0:
        raise DomainError(f"t must be >= 0, got {t}", "t")
    n = int(n)
    if n == 0:
        return 1.0
    return math.exp(math.lgamma(2 * n + 1) - math.lgamma(beta * n + 1)) * t ** (beta * n)


def tail_mass_bound(order, X: float, t: float = 1.0) -> float:
    """Mass of ``u(., t)`` beyond ``|x| > X`` from the stretched-exponential asymptote."""
    beta = _order(order).nu
    A, a, b, c = mwright_asymptotic_constants(beta)
    Xs = X * t ** (-0.5 * beta)
    # int_Xs^inf A y^a exp(-b y^c) dy on a finite window; both sides counted
    upper = (Xs ** c + 80.0 / b) ** (1.0 / c)
    res = integrate_adaptive(lambda y: A * y ** a * np.exp(-b * y ** c), Xs, upper, rel_tol=1e-10)
    return 2.0 * res.value


def normalization(order, t: float, X: float = 12.0, policy: SeriesPolicy = DEFAULT_POLICY) -> float:
    """``int_{-X}^{X} u dx`` plus the asymptotic tail mass; should equal 1."""
    beta = _order(order).nu
    body = integrate_adaptive(lambda x: green(beta, x, t, policy), 0.0, X, rel_tol=1e-10)
    return 2.0 * body.value + tail_mass_bound(beta, X, t)


def quadrature_moment(order, n: int, t: float, policy: SeriesPolicy = DEFAULT_POLICY) -> float:
    """``int x^(2n) u(x, t) dx`` by quadrature over the whole line."""
    beta = _order(order).nu
    _, _, b, c = mwright_asymptotic_constants(beta)
    scale = t ** (0.5 * beta)
    # integrand negligible once b y^c exceeds ~ 60 + growth of y^(2n)
    upper = scale * ((70.0 + 8.0 * n) / b) ** (1.0 / c)
    res = integrate_adaptive(lambda x: x ** (2 * n) * green(beta, x, t, policy), 0.0, upper,
                             rel_tol=1e-11, points=[scale, 4 * scale])
    return 2.0 * res.value

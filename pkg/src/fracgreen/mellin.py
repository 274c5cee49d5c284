"""Mellin-Barnes integrals evaluated by quadrature on a vertical line.

These are independent of the power series in :mod:`fracgreen.specfun` and
serve as an oracle for them.  Along ``s = sigma + i y`` the integrands decay
exponentially in ``|y|`` and are analytic in the strip ``Re s < 1``, so the
trapezoidal rule in ``y`` converges geometrically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, TruncationError
from .specfun import _log_sin_pi, loggamma_complex

__all__ = ["ContourSpec", "mb_reduced_green", "mb_F_kernel"]

_ENDPOINT_RATIO = 1e-14
_TARGET_RATIO = 1e-16


@dataclass(frozen=True)
class ContourSpec:
    """Vertical contour ``Re s = sigma`` truncated to ``|Im s| <= half_span``.

    ``half_span`` and ``nodes`` may be left as ``None`` to have them chosen
    from the integrand: the span grows until the integrand has dropped below
    1e-16 of its peak, and the step is set from the distance to the nearest
    pole at ``s = 1``.
    """

    sigma: float = 0.5
    half_span: float | None = None
    nodes: int | None = None

    def __post_init__(self):
        if not 0 < self.sigma < 1:
            raise DomainError(f"contour abscissa must lie in (0, 1), got {self.sigma}", "sigma")
        if self.half_span is not None and not self.half_span > 0:
            raise DomainError("half_span must be positive", "half_span")
        if self.nodes is not None and self.nodes < 64:
            raise DomainError(f"need at least 64 nodes, got {self.nodes}", "nodes")


def _resolve(contour, log_integrand):
    span = contour.half_span
    if span is None:
        probe = np.linspace(-4.0, 4.0, 81)
        peak = float(np.max(log_integrand(contour.sigma + 1j * probe).real))
        span = 8.0
        while True:
            edge = float(np.max(log_integrand(contour.sigma + 1j * np.array([-span, span])).real))
            if edge < peak + math.log(_TARGET_RATIO):
                break
            span *= 1.5
            if span > 1e4:
                raise TruncationError("integrand does not decay along the contour")
    nodes = contour.nodes
    if nodes is None:
        h = (1.0 - contour.sigma) * 2.0 * math.pi / 45.0
        nodes = max(64, 2 * int(math.ceil(span / h)) + 1)
    return span, nodes


def _line_integral(log_integrand, contour, full_output):
    span, nodes = _resolve(contour, log_integrand)
    y = np.linspace(-span, span, nodes)
    h = y[1] - y[0]
    logf = log_integrand(contour.sigma + 1j * y)
    mags = logf.real
    peak = float(np.max(mags))
    if max(mags[0], mags[-1]) > peak + math.log(_ENDPOINT_RATIO):
        raise TruncationError(
            f"integrand at |Im s| = {span} is {math.exp(max(mags[0], mags[-1]) - peak):.2e} "
            "of its peak; widen half_span"
        )
    f = np.exp(logf)
    # (1/2 pi i) int f ds with ds = i dy; trapezoid (endpoints negligible)
    integral = h * (np.sum(f) - 0.5 * (f[0] + f[-1])) / (2.0 * math.pi)
    if full_output:
        info = {"imag": float(integral.imag), "half_span": float(span), "nodes": int(nodes)}
        return float(integral.real), info
    return float(integral.real)


def mb_reduced_green(beta: float, x: float, contour: ContourSpec = ContourSpec(), full_output=False):
    """Reduced Green function ``U(x)`` from its Mellin-Barnes integral.

    ``U(x) = 1/(2x) * (1/(2 pi i)) int Gamma(1-s) / Gamma(1 - beta s/2) x^s ds``
    along ``Re s = sigma``.  With ``full_output`` a dict holding the imaginary
    residue of the quadrature, the span and the node count is also returned.
    """
    if not 0 < beta <= 1:
        raise DomainError(f"beta must lie in (0, 1], got {beta}", "beta")
    if not x > 0:
        raise DomainError(f"x must be positive, got {x}", "x")
    logx = math.log(x)

    def log_integrand(s):
        return loggamma_complex(1.0 - s) - loggamma_complex(1.0 - 0.5 * beta * s) + s * logx

    res = _line_integral(log_integrand, contour, full_output)
    if full_output:
        value, info = res
        info["imag"] /= 2.0 * x
        return value / (2.0 * x), info
    return res / (2.0 * x)


def mb_F_kernel(gamma: float, y: float, contour: ContourSpec = ContourSpec(), full_output=False):
    """Kernel ``F(y) = (1/(2 pi i)) int Gamma(1-s) sin(pi gamma s / 2) y^s ds``."""
    if not 0 < gamma < 1:
        raise DomainError(f"gamma must lie in (0, 1), got {gamma}", "gamma")
    if not y > 0:
        raise DomainError(f"y must be positive, got {y}", "y")
    logy = math.log(y)

    def log_integrand(s):
        return loggamma_complex(1.0 - s) + _log_sin_pi(0.5 * gamma * s) + s * logy

    return _line_integral(log_integrand, contour, full_output)

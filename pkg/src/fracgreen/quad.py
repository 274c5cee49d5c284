"""Shared numerical kernels.

* :func:`integrate_adaptive` -- globally adaptive Gauss-Kronrod (7/15) quadrature
  on a finite interval.  Integrands are vectorised: ``f`` receives a 1-d array
  of nodes and returns an array whose *last* axis runs over the nodes, so a
  whole family of integrals sharing one interval can be computed in one call.
* :func:`talbot_invert` -- numerical Laplace inversion along an optimised
  Talbot contour.
* :func:`alternating_extrapolate` -- iterated averaging of the partial sums of
  an alternating series.

Semi-infinite integrals are reduced to finite ones by the caller, e.g.
``x = s / (1 - s)`` or ``x = exp(u)`` followed by truncation.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import ConvergenceError, DomainError, InstabilityError

__all__ = [
    "QuadResult",
    "integrate_adaptive",
    "gauss_kronrod",
    "talbot_invert",
    "alternating_extrapolate",
]

# Kronrod 15-point abscissae (positive half) and weights; the Gauss 7-point
# rule uses every second abscissa.
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KWEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GWEIGHTS = np.zeros(15)
_GWEIGHTS[1:7:2] = _WG[:3]
_GWEIGHTS[7] = _WG[3]
_GWEIGHTS[9:14:2] = _WG[2::-1]

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class QuadResult:
    """Outcome of a quadrature.

    ``value`` and ``abs_error_estimate`` are floats for scalar integrands and
    arrays for vectorised families.
    """

    value: float | np.ndarray
    abs_error_estimate: float | np.ndarray
    evaluations: int

    def __float__(self):
        return float(self.value)


def gauss_kronrod(f: Callable, a: float, b: float):
    """Apply the 7/15 Gauss-Kronrod pair once on ``[a, b]``.

    Returns ``(kronrod, gauss, kronrod_abs)`` where the last entry integrates
    ``|f|`` and is used as a round-off floor.
    """
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    y = np.asarray(f(c + h * _NODES), dtype=float)
    k = h * (y @ _KWEIGHTS)
    g = h * (y @ _GWEIGHTS)
    kabs = abs(h) * (np.abs(y) @ _KWEIGHTS)
    return k, g, kabs


def _panel_pair(f, a, m, b):
    # both halves of a bisected panel in one integrand call
    h1 = 0.5 * (m - a)
    h2 = 0.5 * (b - m)
    x = np.concatenate([0.5 * (a + m) + h1 * _NODES, 0.5 * (m + b) + h2 * _NODES])
    y = np.asarray(f(x), dtype=float)
    y1, y2 = y[..., :15], y[..., 15:]
    out = []
    for h, yy in ((h1, y1), (h2, y2)):
        out.append((h * (yy @ _KWEIGHTS), h * (yy @ _GWEIGHTS), abs(h) * (np.abs(yy) @ _KWEIGHTS)))
    return out


def integrate_adaptive(
    f: Callable,
    a: float,
    b: float,
    rel_tol: float = 1e-10,
    abs_tol: float = 0.0,
    points: Sequence[float] = (),
    max_intervals: int = 4000,
) -> QuadResult:
    """Globally adaptive Gauss-Kronrod quadrature of ``f`` over ``[a, b]``.

    Parameters
    ----------
    f : callable
        Vectorised integrand.  ``f(x)`` for a 1-d array ``x`` returns an array
        of shape ``(..., len(x))``.
    a, b : float
        Finite limits with ``a < b``.
    rel_tol, abs_tol : float
        Each component stops once its summed error estimate is below
        ``max(abs_tol, rel_tol * |value|)`` (or the round-off floor).
    points : sequence of float
        Interior break points used for the initial partition.
    max_intervals : int
        Subdivision budget; exceeding it raises :class:`ConvergenceError`.
    """
    if not (np.isfinite(a) and np.isfinite(b)):
        raise DomainError("integration limits must be finite; substitute first", "a,b")
    if not a < b:
        raise DomainError(f"need a < b, got a={a}, b={b}", "a,b")
    if rel_tol <= 0 and abs_tol <= 0:
        raise DomainError("need rel_tol > 0 or abs_tol > 0", "rel_tol")

    edges = [a] + sorted(p for p in points if a < p < b) + [b]
    panels = []
    evals = 0
    for lo, hi in zip(edges[:-1], edges[1:]):
        k, g, kabs = gauss_kronrod(f, lo, hi)
        evals += 15
        panels.append((lo, hi, k, np.abs(k - g), kabs))

    total = sum(p[2] for p in panels)
    err = sum(p[3] for p in panels)
    absint = sum(p[4] for p in panels)
    floor_scale = abs_tol / rel_tol if rel_tol > 0 else np.inf

    def priority(e, tot):
        scale = np.maximum(np.abs(tot), min(floor_scale, 1e300))
        scale = np.where(scale > 0, scale, 1.0)
        return float(np.max(e / scale))

    heap = []
    for i, p in enumerate(panels):
        heapq.heappush(heap, (-priority(p[3], total), i, p))
    counter = len(panels)

    while True:
        tol = np.maximum(abs_tol, rel_tol * np.abs(total))
        tol = np.maximum(tol, 50 * _EPS * absint)
        if np.all(err <= tol):
            break
        if len(heap) >= max_intervals:
            raise ConvergenceError(
                f"adaptive quadrature exceeded {max_intervals} intervals on [{a}, {b}]; "
                f"error estimate {np.max(err):.3g}"
            )
        _, _, (lo, hi, k, e, kabs) = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            raise ConvergenceError(f"interval [{lo}, {hi}] cannot be bisected further")
        (k1, g1, a1), (k2, g2, a2) = _panel_pair(f, lo, mid, hi)
        evals += 30
        e1, e2 = np.abs(k1 - g1), np.abs(k2 - g2)
        total = total - k + k1 + k2
        err = err - e + e1 + e2
        absint = absint - kabs + a1 + a2
        for child in ((lo, mid, k1, e1, a1), (mid, hi, k2, e2, a2)):
            heapq.heappush(heap, (-priority(child[3], total), counter, child))
            counter += 1

    # re-sum to shed the drift of the running updates
    items = [item[2] for item in heap]
    total = sum(p[2] for p in items)
    err = sum(p[3] for p in items)
    if np.ndim(total) == 0:
        total, err = float(total), float(err)
    return QuadResult(total, err, evals)


# Optimised Talbot contour z(theta) = (N/t) (C0 + C1 theta cot(C2 theta) + i C3 theta),
# midpoint rule in theta on (-pi, pi).
_TALBOT_C = (-0.6122, 0.5017, 0.6407, 0.2645)


def _talbot_sum(F, t, nodes):
    c0, c1, c2, c3 = _TALBOT_C
    theta = -np.pi + (np.arange(nodes) + 0.5) * (2.0 * np.pi / nodes)
    scale = nodes / t
    z = scale * (c0 + c1 * theta / np.tan(c2 * theta) + 1j * c3 * theta)
    dz = scale * (c1 / np.tan(c2 * theta) - c1 * c2 * theta / np.sin(c2 * theta) ** 2 + 1j * c3)
    values = np.asarray(F(z), dtype=complex)
    return float((np.sum(np.exp(z * t) * values * dz) / (1j * nodes)).real)


def talbot_invert(
    F: Callable,
    t: float,
    nodes: int = 32,
    check_nodes: int | None = None,
    rel_tol: float = 1e-8,
) -> float:
    """Inverse Laplace transform of ``F`` at time ``t``.

    ``F`` must be analytic off the closed negative real axis and accept a
    complex ndarray.  With ``check_nodes`` the inversion is repeated with a
    second node count and :class:`InstabilityError` is raised when the two
    results differ by more than ``rel_tol`` (relative, with an absolute floor
    of ``rel_tol``).
    """
    if not t > 0:
        raise DomainError(f"t must be positive, got {t}", "t")
    if nodes < 4:
        raise DomainError("need at least 4 Talbot nodes", "nodes")
    value = _talbot_sum(F, t, nodes)
    if check_nodes is not None:
        other = _talbot_sum(F, t, check_nodes)
        if not np.isfinite(value) or abs(value - other) > rel_tol * max(abs(value), 1.0):
            raise InstabilityError(
                f"Talbot self-check failed at t={t}: N={nodes} gives {value!r}, "
                f"N={check_nodes} gives {other!r}"
            )
    return value


def alternating_extrapolate(partial_sums, full_output: bool = False):
    """Limit of an eventually alternating series from its partial sums.

    The sequence is averaged pairwise until one value remains.  The spread of
    the last two values is returned as an error estimate when
    ``full_output`` is true.
    """
    s = np.asarray(partial_sums, dtype=float)
    if s.ndim != 1 or s.size < 4:
        raise DomainError("need at least 4 partial sums", "partial_sums")
    d = np.diff(s)
    tail = d[len(d) // 2:]
    nz = tail[tail != 0]
    if nz.size > 1 and np.any(np.sign(nz[1:]) == np.sign(nz[:-1])):
        raise ConvergenceError("partial sums are not alternating")
    while s.size > 2:
        s = 0.5 * (s[1:] + s[:-1])
    value = 0.5 * (s[0] + s[1])
    if full_output:
        return float(value), float(abs(s[1] - s[0]))
    return float(value)

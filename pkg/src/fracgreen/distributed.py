"""Time-fractional diffusion of distributed order.

The weight ``b(beta)`` over orders is a finite set of atoms plus an optional
uniform density on ``[0, 1]``.  In Laplace space everything is driven by
``B(s) = int_0^1 b(beta) s^beta dbeta``; on the negative real axis
``B(r e^{i pi}) = rho e^{i pi gamma}`` and the Green function is

    u(x, t) = 1/(2 pi) int_0^inf e^{-r t}/r rho^{1/2}
              sum_k (-rho^{1/2} |x|)^k / k! sin(pi gamma (k+1)/2) dr.

Exchanging sum and integral gives the series in ``x`` with coefficients
``phi_k(t)``.  The second moment is ``2/(s B(s))`` in Laplace space and is
inverted numerically.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import CancellationError, ConvergenceError, DomainError
from .quad import integrate_adaptive, talbot_invert
from .specfun import DEFAULT_POLICY, SeriesPolicy, fox_wright_reduced

__all__ = [
    "OrderWeight",
    "RayValue",
    "parse_weight",
    "b_transform",
    "ray_decompose",
    "kernel_K",
    "green_distributed",
    "phi_k",
    "green_distributed_series",
    "second_moment_laplace",
    "second_moment",
    "mass",
    "second_moment_asymptote",
]

_NORM_TOL = 1e-12


@dataclass(frozen=True)
class OrderWeight:
    """Distribution of fractional orders: atoms ``(beta_j, b_j)`` plus ``uniform`` mass.

    The uniform part is the density ``uniform`` on ``[0, 1]``; total mass must
    be one.
    """

    atoms: tuple = ()
    uniform: float = 0.0

    def __post_init__(self):
        atoms = tuple((float(b), float(w)) for b, w in self.atoms)
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "uniform", float(self.uniform))
        betas = [b for b, _ in atoms]
        for b, w in atoms:
            if not 0 < b <= 1:
                raise DomainError(f"atom order must lie in (0, 1], got {b}", "weight")
            if not w > 0:
                raise DomainError(f"atom weight must be positive, got {w} at beta={b}", "weight")
        if len(set(betas)) != len(betas):
            raise DomainError("atom orders must be distinct", "weight")
        if self.uniform < 0:
            raise DomainError("uniform weight must be >= 0", "weight")
        if not atoms and self.uniform == 0:
            raise DomainError("weight is empty", "weight")
        total = sum(w for _, w in atoms) + self.uniform
        if abs(total - 1.0) > _NORM_TOL:
            raise DomainError(
                f"weights sum to {total!r}, not 1 (pass normalize to rescale)", "weight"
            )

    @classmethod
    def normalized(cls, atoms: Sequence = (), uniform: float = 0.0) -> "OrderWeight":
        total = sum(w for _, w in atoms) + uniform
        if not total > 0:
            raise DomainError("weight has no mass", "weight")
        return cls(tuple((b, w / total) for b, w in atoms), uniform / total)

    @classmethod
    def single(cls, nu: float) -> "OrderWeight":
        return cls(((nu, 1.0),))

    @property
    def single_order(self) -> float | None:
        """``nu`` when the weight is the single atom ``delta(beta - nu)``."""
        if self.uniform == 0 and len(self.atoms) == 1:
            return self.atoms[0][0]
        return None

    def has_branch_cut(self) -> bool:
        return self.uniform > 0 or any(b < 1 for b, _ in self.atoms)

    def describe(self) -> str:
        parts = [f"{b:g}:{w:g}" for b, w in self.atoms]
        if self.uniform:
            parts.append(f"uniform:{self.uniform:g}")
        return ",".join(parts)


@dataclass(frozen=True)
class RayValue:
    """``B(r e^{i pi}) = rho e^{i pi gamma}``."""

    rho: float
    gamma: float

    def __post_init__(self):
        if not self.rho > 0:
            raise DomainError(f"rho must be positive, got {self.rho}", "rho")
        if not 0 < self.gamma <= 1:
            raise DomainError(f"gamma must lie in (0, 1], got {self.gamma}", "gamma")


def parse_weight(text: str, normalize: bool = False) -> OrderWeight:
    """Parse ``"beta:weight,...[,uniform:w]"`` into an :class:`OrderWeight`."""
    atoms = []
    uniform = 0.0
    for item in filter(None, (p.strip() for p in text.split(","))):
        try:
            key, value = (v.strip() for v in item.split(":"))
            w = float(value)
            if key.lower() == "uniform":
                uniform += w
            else:
                atoms.append((float(key), w))
        except ValueError:
            raise DomainError(
                f"cannot parse weight item {item!r}; expected 'beta:weight' or 'uniform:w'", "weight"
            ) from None
    if not atoms and not uniform:
        raise DomainError(f"empty weight specification {text!r}", "weight")
    if normalize:
        return OrderWeight.normalized(atoms, uniform)
    return OrderWeight(tuple(atoms), uniform)


def _uniform_part(s):
    # (s - 1)/log s, with its Taylor expansion about s = 1
    s = np.asarray(s, dtype=complex)
    w = s - 1.0
    near = np.abs(w) < 1e-3
    with np.errstate(divide="ignore", invalid="ignore"):
        direct = w / np.log(s)
    taylor = 1.0 + w / 2.0 - w ** 2 / 12.0 + w ** 3 / 24.0
    return np.where(near, taylor, direct)


def b_transform(weight: OrderWeight, s):
    """``B(s) = sum_j b_j s^beta_j + w (s - 1)/log s`` with principal branches."""
    s = np.asarray(s, dtype=complex)
    if np.any(s == 0):
        raise DomainError("B(s) is undefined at s = 0", "s")
    logs = np.log(s)
    out = np.zeros_like(s)
    for b, w in weight.atoms:
        out = out + w * np.exp(b * logs)
    if weight.uniform:
        out = out + weight.uniform * _uniform_part(s)
    return out if out.ndim else complex(out)


def _ray_log(weight: OrderWeight, logr):
    """Vectorised ``(log rho, gamma)`` along ``s = r e^{i pi}`` from ``log r``.

    Terms are combined relative to the largest modulus and with exact phases,
    so extreme ``r`` neither under- nor overflows.
    """
    logr = np.asarray(logr, dtype=float)
    nu = weight.single_order
    if nu is not None:
        return nu * logr, np.full_like(logr, nu)
    logmags, phases = [], []
    for b, w in weight.atoms:
        logmags.append(b * logr + math.log(w))
        phases.append(np.full_like(logr, math.pi * b))
    if weight.uniform:
        # (r + 1) e^{i pi} / (log r + i pi) = (r + 1) (-L + i pi) / (L^2 + pi^2)
        logmags.append(np.logaddexp(0.0, logr) - 0.5 * np.log(logr ** 2 + math.pi ** 2)
                       + math.log(weight.uniform))
        phases.append(np.arctan2(math.pi, -logr))
    logmags = np.array(logmags)
    top = np.max(logmags, axis=0)
    scaled = np.sum(np.exp(logmags - top) * np.exp(1j * np.array(phases)), axis=0)
    return top + np.log(np.abs(scaled)), np.angle(scaled) / math.pi


def _ray(weight: OrderWeight, r):
    logrho, gamma = _ray_log(weight, np.log(np.asarray(r, dtype=float)))
    return np.exp(logrho), gamma


def ray_decompose(weight: OrderWeight, r: float) -> RayValue:
    """Modulus and normalised argument of ``B`` on the branch cut at ``-r``."""
    if not r > 0:
        raise DomainError(f"r must be positive, got {r}", "r")
    rho, gamma = _ray(weight, r)
    return RayValue(float(rho), float(gamma))


def kernel_K(kappa, ray: RayValue):
    """Spectral kernel ``K(kappa, r)`` of the Fourier transform of ``u``.

    ``K = (1/pi) kappa^2 rho sin(pi gamma) / (kappa^4 + 2 kappa^2 rho cos(pi gamma) + rho^2)``.
    """
    if ray.gamma == 1.0:
        warnings.warn("gamma = 1: a normal-diffusion ray carries no branch-cut density",
                      RuntimeWarning, stacklevel=2)
    k2 = np.asarray(kappa, dtype=float) ** 2
    rho, pg = ray.rho, math.pi * ray.gamma
    out = k2 * rho * math.sin(pg) / (k2 * k2 + 2.0 * k2 * rho * math.cos(pg) + rho * rho) / math.pi
    return out if np.ndim(out) else float(out)


def _check(weight, t):
    if not isinstance(weight, OrderWeight):
        raise DomainError("weight must be an OrderWeight", "weight")
    if not weight.has_branch_cut():
        raise DomainError(
            "weight delta(beta - 1) has no branch cut; use the single-order solution with beta = 1",
            "weight",
        )
    if not np.all(np.asarray(t) > 0):
        raise DomainError("t must be positive", "t")


def _log_r_integral(integrand, t, upper_extra=0.0, rel_tol=1e-10, abs_tol=0.0):
    """``int_{-inf}^{u_hi} integrand(u) du`` in ``u = log r``.

    ``(-inf, a]`` is mapped to ``tau in (0, 1]`` by ``u = a + 1 - 1/tau^2``
    which keeps slowly (algebraically) decaying tails integrable smoothly.
    """
    a = -math.log(t) - 6.0
    hi = math.log((60.0 + upper_extra) / t)

    def lower(tau):
        return integrand(a + 1.0 - 1.0 / tau ** 2) * (2.0 / tau ** 3)

    # the central panel holds the bulk; the lower tail is a separate integral
    mid = integrate_adaptive(integrand, a, hi, rel_tol=rel_tol, abs_tol=abs_tol,
                             points=[-math.log(t)])
    tail = integrate_adaptive(lower, 0.0, 1.0, rel_tol=rel_tol, abs_tol=abs_tol)
    return mid.value + tail.value


def green_distributed(weight: OrderWeight, x, t: float, policy: SeriesPolicy = DEFAULT_POLICY,
                      rel_tol: float = 1e-10):
    """Green function by the Laplace-type integral over the branch cut.

    ``x`` may be an array; all points share one adaptive quadrature.
    """
    _check(weight, t)
    # each distinct |x| is integrated once, so u(x) and u(-x) are bitwise equal
    xa, inverse = np.unique(np.abs(np.atleast_1d(np.asarray(x, dtype=float))), return_inverse=True)

    def integrand(u):
        logrho, gamma = _ray_log(weight, u)
        sq = np.exp(0.5 * logrho)
        g = fox_wright_reduced(gamma[None, :], np.outer(xa, sq), policy)
        return np.exp(-t * np.exp(u)) * sq * g

    out = _log_r_integral(integrand, t, rel_tol=rel_tol, abs_tol=1e-14) / (2.0 * math.pi)
    out = out[inverse.reshape(np.shape(x))]
    return out if np.ndim(x) else float(out)


def phi_k(weight: OrderWeight, k, t: float, rel_tol: float = 1e-11):
    """``phi_k(t) = int_0^inf e^{-rt}/r sin(pi gamma (k+1)/2) rho^{(k+1)/2} dr``.

    ``k`` may be a sequence of non-negative integers.
    """
    _check(weight, t)
    ks = np.atleast_1d(np.asarray(k))
    if np.any(ks < 0) or np.any(ks != np.floor(ks)):
        raise DomainError("k must be non-negative integers", "k")
    kp1 = ks.astype(float) + 1.0

    def integrand(u):
        logrho, gamma = _ray_log(weight, u)
        with np.errstate(under="ignore"):
            mag = np.exp(np.outer(0.5 * kp1, logrho) - t * np.exp(u))
        return np.sin(0.5 * math.pi * np.outer(kp1, gamma)) * mag

    out = _log_r_integral(integrand, t, upper_extra=float(np.max(kp1)), rel_tol=rel_tol)
    return out if np.ndim(k) else float(out[0])


def green_distributed_series(weight: OrderWeight, x: float, t: float, kmax: int = 80,
                             policy: SeriesPolicy = DEFAULT_POLICY) -> float:
    """Green function from ``u = 1/(2 pi) sum_k (-|x|)^k / k! phi_k(t)``.

    Raises :class:`CancellationError` when the alternating sum loses more than
    ``policy.cancellation_limit`` in magnitude (large ``|x|``).
    """
    _check(weight, t)
    ax = abs(float(x))
    if ax == 0.0:
        return phi_k(weight, 0, t) / (2.0 * math.pi)
    phis = phi_k(weight, np.arange(kmax + 1), t)
    total = 0.0
    biggest = 0.0
    small = 0
    for k, ph in enumerate(phis):
        term = (-1) ** k * math.exp(k * math.log(ax) - math.lgamma(k + 1)) * ph
        total += term
        biggest = max(biggest, abs(term))
        if abs(term) <= policy.rel_tol * abs(total) or (k > 4 and abs(term) <= 1e-16 * biggest):
            small += 1
            if small >= 3:
                break
        else:
            small = 0
    else:
        raise ConvergenceError(f"phi_k series did not converge in {kmax} terms at x={x}, t={t}")
    if biggest > policy.cancellation_limit * abs(total):
        raise CancellationError(
            f"phi_k series cancels by {biggest / abs(total):.2e} at x={x}, t={t}; "
            "use green_distributed"
        )
    return total / (2.0 * math.pi)


def second_moment_laplace(weight: OrderWeight, s):
    """Laplace transform ``2 / (s B(s))`` of the second moment."""
    sa = np.asarray(s)
    if np.isrealobj(sa) and np.any(sa <= 0):
        raise DomainError("s must be positive", "s")
    out = 2.0 / (sa * b_transform(weight, sa))
    if np.isrealobj(sa):
        out = np.real(out)
    return out if np.ndim(out) else (float(out) if np.isrealobj(sa) else complex(out))


def second_moment(weight: OrderWeight, t: float, nodes: int = 32, check_nodes: int = 48,
                  rel_tol: float = 1e-8) -> float:
    """Mean-square displacement ``mu_2(t)`` by Talbot inversion of ``2/(s B(s))``.

    The inversion is repeated with ``check_nodes`` nodes and must agree to
    ``rel_tol``.
    """
    if not t > 0:
        raise DomainError("t must be positive", "t")

    def transform(s):
        return 2.0 / (s * b_transform(weight, s))

    return talbot_invert(transform, t, nodes=nodes, check_nodes=check_nodes, rel_tol=rel_tol)


def mass(weight: OrderWeight, t: float, X: float = 12.0, rel_tol: float = 1e-10) -> float:
    """``int_{-X}^{X} u(x, t) dx`` (should be 1 up to the mass beyond ``X``)."""
    edges = [p for p in (0.25, 0.5, 1.0, 2.0, 4.0, 8.0) if p < X]
    res = integrate_adaptive(lambda x: green_distributed(weight, x, t), 0.0, X,
                             rel_tol=rel_tol, abs_tol=1e-13, points=edges)
    return 2.0 * res.value


def second_moment_asymptote(weight: OrderWeight, t: float):
    """Leading behaviour of ``mu_2(t)`` and the regime it comes from.

    For ``t >= 1`` the lowest orders dominate ``B(s)`` as ``s -> 0``: a
    uniform part ``w`` gives ``2 log(t) / w``, otherwise the smallest atom
    ``(beta, b)`` gives ``2 t^beta / (b Gamma(beta + 1))``.  For ``t < 1`` the
    highest orders dominate: an atom at ``beta = 1`` gives ``2 t / b``, then a
    uniform part gives ``2 t log(1/t) / w``, then the largest atom.
    Returns ``(value, regime)``.
    """
    if not t > 0:
        raise DomainError("t must be positive", "t")

    def power(beta, b):
        return 2.0 * t ** beta / (b * math.gamma(beta + 1.0)), f"power:{beta:g}"

    atoms = sorted(weight.atoms)
    if t >= 1.0:
        if weight.uniform > 0:
            return 2.0 * math.log(t) / weight.uniform, "log"
        return power(*atoms[0])
    if atoms and atoms[-1][0] == 1.0:
        return power(*atoms[-1])
    if weight.uniform > 0:
        return 2.0 * t * math.log(1.0 / t) / weight.uniform, "log"
    return power(*atoms[-1])

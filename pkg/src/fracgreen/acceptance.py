"""Acceptance criteria shared by ``fracgreen selftest`` and the test suite.

Every check is deterministic: fixed grids, fixed node counts, and a report
whose numbers are printed with a fixed format.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import distributed as dist
from . import single_order as so
from .mellin import mb_reduced_green
from .specfun import mittag_leffler_neg, mwright


@dataclass(frozen=True)
class Outcome:
    name: str
    passed: bool
    detail: str


def airy_ai_maclaurin(z: float, terms: int = 80) -> float:
    """Airy ``Ai(z)`` from its Maclaurin series (reference for the checks)."""
    c1 = 1.0 / (3.0 ** (2.0 / 3.0) * math.gamma(2.0 / 3.0))
    c2 = 1.0 / (3.0 ** (1.0 / 3.0) * math.gamma(1.0 / 3.0))
    f_terms, g_terms = [1.0], [z]
    f, g = 1.0, z
    for k in range(1, terms):
        f *= z ** 3 / ((3 * k - 1) * (3 * k))
        g *= z ** 3 / ((3 * k) * (3 * k + 1))
        f_terms.append(f)
        g_terms.append(g)
    return c1 * math.fsum(f_terms) - c2 * math.fsum(g_terms)


def _rel(a, b):
    return abs(a - b) / abs(b)


def gaussian_limit() -> Outcome:
    worst = 0.0
    xs = np.linspace(-5.0, 5.0, 41)
    for t in (0.5, 1.0, 2.0):
        exact = np.exp(-xs ** 2 / (4.0 * t)) / (2.0 * math.sqrt(math.pi * t))
        got = so.green(1.0, xs, t)
        worst = max(worst, float(np.max(np.abs(got - exact) / exact)))
    return Outcome("gaussian_limit", worst <= 1e-10, f"max rel err {worst:.3e} (tol 1e-10)")


def mwright_identities() -> Outcome:
    xs = np.linspace(0.0, 10.0, 101)
    half = float(np.max(np.abs(mwright(0.5, xs) / (np.exp(-xs ** 2 / 4.0) / math.sqrt(math.pi)) - 1.0)))
    third = 0.0
    for x in np.linspace(0.0, 4.0, 41):
        ref = 3.0 ** (2.0 / 3.0) * airy_ai_maclaurin(x / 3.0 ** (1.0 / 3.0))
        third = max(third, _rel(mwright(1.0 / 3.0, x), ref))
    ok = half <= 1e-10 and third <= 1e-8
    return Outcome("mwright_identities", ok,
                   f"M_1/2 rel err {half:.3e} (tol 1e-10); M_1/3 rel err {third:.3e} (tol 1e-8)")


def mittag_leffler_closed_form() -> Outcome:
    worst = 0.0
    for t in np.linspace(0.0, 20.0, 81):
        ref = math.exp(t) * math.erfc(math.sqrt(t))
        worst = max(worst, _rel(mittag_leffler_neg(0.5, math.sqrt(t)), ref))
    return Outcome("mittag_leffler_closed_form", worst <= 1e-8, f"max rel err {worst:.3e} (tol 1e-8)")


def moments() -> Outcome:
    worst = 0.0
    for beta in (0.25, 0.5, 0.75):
        for t in (0.5, 1.0, 2.0):
            for n in (1, 2):
                worst = max(worst, _rel(so.quadrature_moment(beta, n, t), so.moment(beta, n, t)))
    return Outcome("moments", worst <= 1e-5, f"max rel err {worst:.3e} (tol 1e-5)")


def path_agreement() -> Outcome:
    worst = 0.0
    for beta in (0.5, 0.75):
        for x in (0.5, 1.0, 2.0, 3.0):
            series = so.green(beta, x, 1.0)
            fourier = so.fourier_oracle_green(beta, x, 1.0)
            mb = mb_reduced_green(beta, x)
            worst = max(worst, abs(series - fourier), abs(series - mb), abs(fourier - mb))
    return Outcome("path_agreement", worst <= 1e-6, f"max pairwise diff {worst:.3e} (tol 1e-6)")


def reduction() -> Outcome:
    worst = 0.0
    xs = np.linspace(0.0, 4.0, 17)
    for nu in (0.25, 0.5, 0.75):
        weight = dist.OrderWeight.single(nu)
        for t in (0.5, 1.0, 2.0):
            diff = dist.green_distributed(weight, xs, t) - so.green(nu, xs, t)
            worst = max(worst, float(np.max(np.abs(diff))))
    return Outcome("single_order_reduction", worst <= 1e-6, f"max abs diff {worst:.3e} (tol 1e-6)")


TWO_ATOMS = dist.OrderWeight(((0.25, 0.5), (0.75, 0.5)))
UNIFORM = dist.OrderWeight(uniform=1.0)


def distributed_paths() -> Outcome:
    worst = 0.0
    for x in np.linspace(-1.5, 1.5, 13):
        a = dist.green_distributed_series(TWO_ATOMS, x, 1.0)
        b = dist.green_distributed(TWO_ATOMS, x, 1.0)
        worst = max(worst, abs(a - b))
    return Outcome("distributed_series_vs_integral", worst <= 1e-5, f"max abs diff {worst:.3e} (tol 1e-5)")


def power_law_asymptotics() -> Outcome:
    (b1, w1), (b2, w2) = TWO_ATOMS.atoms
    late = dist.second_moment(TWO_ATOMS, 1e6) / (2.0 * 1e6 ** b1 / (w1 * math.gamma(b1 + 1.0)))
    early = dist.second_moment(TWO_ATOMS, 1e-6) / (2.0 * 1e-6 ** b2 / (w2 * math.gamma(b2 + 1.0)))
    ok = abs(late - 1.0) <= 0.05 and abs(early - 1.0) <= 0.05
    return Outcome("power_law_asymptotics", ok,
                   f"ratio t=1e6 {late:.6f}, t=1e-6 {early:.6f} (tol 5%)")


def log_asymptotics() -> Outcome:
    late = dist.second_moment(UNIFORM, 1e8) / (2.0 * math.log(1e8))
    early = dist.second_moment(UNIFORM, 1e-8) / (2.0 * 1e-8 * math.log(1e8))
    ok = abs(late - 1.0) <= 0.10 and abs(early - 1.0) <= 0.10
    return Outcome("log_asymptotics", ok, f"ratio t=1e8 {late:.6f}, t=1e-8 {early:.6f} (tol 10%)")


BATTERY = (
    dist.OrderWeight.single(0.5),
    dist.OrderWeight.single(0.25),
    TWO_ATOMS,
    UNIFORM,
    dist.OrderWeight(((0.5, 0.5),), 0.5),
    dist.OrderWeight(((0.5, 0.5), (1.0, 0.5))),
)


def normalization_positivity() -> Outcome:
    worst_mass = 0.0
    lowest = math.inf
    grid = np.linspace(0.0, 12.0, 121)
    for weight in BATTERY:
        for t in (0.5, 1.0):
            worst_mass = max(worst_mass, abs(dist.mass(weight, t) - 1.0))
            lowest = min(lowest, float(np.min(dist.green_distributed(weight, grid, t))))
    ok = worst_mass <= 1e-5 and lowest >= -1e-9
    return Outcome("normalization_positivity", ok,
                   f"max |mass - 1| {worst_mass:.3e} (tol 1e-5); min u {lowest:.3e} (floor -1e-9)")


CRITERIA: tuple[Callable[[], Outcome], ...] = (
    gaussian_limit,
    mwright_identities,
    mittag_leffler_closed_form,
    moments,
    path_agreement,
    reduction,
    distributed_paths,
    power_law_asymptotics,
    log_asymptotics,
    normalization_positivity,
)


def run_all() -> list[Outcome]:
    outcomes = []
    for check in CRITERIA:
        try:
            outcomes.append(check())
        except Exception as exc:  # a crash is a failed criterion, not an aborted run
            outcomes.append(Outcome(check.__name__, False, f"error: {type(exc).__name__}: {exc}"))
    return outcomes


def format_report(outcomes) -> str:
    width = max(len(o.name) for o in outcomes)
    lines = [f"{'criterion':<{width}}  status  detail"]
    for o in outcomes:
        lines.append(f"{o.name:<{width}}  {'PASS' if o.passed else 'FAIL':<6}  {o.detail}")
    passed = sum(o.passed for o in outcomes)
    lines.append(f"{passed}/{len(outcomes)} criteria passed")
    return "\n".join(lines) + "\n"

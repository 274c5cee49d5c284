import cmath
import math

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st
from scipy import special

from fracgreen import distributed as dist
from fracgreen import single_order as so
from fracgreen.errors import DomainError

from oracles import green_laplace_mp, second_moment_mp

TWO = dist.OrderWeight(((0.25, 0.5), (0.75, 0.5)))
UNIFORM = dist.OrderWeight(uniform=1.0)
MIXED = dist.OrderWeight(((0.5, 0.5),), 0.5)
WITH_ONE = dist.OrderWeight(((0.5, 0.5), (1.0, 0.5)))
BATTERY = [dist.OrderWeight.single(0.5), TWO, UNIFORM, MIXED, WITH_ONE]


# ---------------------------------------------------------------- weights


def test_parse_weight_grammar():
    w = dist.parse_weight("0.25:0.5, 0.75:0.25,uniform:0.25")
    assert w.atoms == ((0.25, 0.5), (0.75, 0.25))
    assert w.uniform == 0.25
    assert dist.parse_weight(w.describe()) == w


def test_parse_weight_normalize():
    w = dist.parse_weight("0.5:2,uniform:2", normalize=True)
    assert w.atoms == ((0.5, 0.5),) and w.uniform == 0.5


@pytest.mark.parametrize("text", ["", "0.5", "a:b", "0.5:1:2", "1.5:1", "0.5:-1", "0.5:0.6", "0.5:0.5,0.5:0.5"])
def test_parse_weight_rejects(text):
    with pytest.raises(DomainError) as info:
        dist.parse_weight(text)
    assert info.value.parameter == "weight"


def test_weight_normalization_tolerance():
    dist.OrderWeight(((0.5, 1.0 + 5e-13),))
    with pytest.raises(DomainError):
        dist.OrderWeight(((0.5, 1.0 + 1e-10),))


def test_weight_properties():
    assert dist.OrderWeight.single(0.3).single_order == 0.3
    assert TWO.single_order is None
    assert not dist.OrderWeight.single(1.0).has_branch_cut()
    assert WITH_ONE.has_branch_cut()


# ---------------------------------------------------------------- B(s) and the ray


@pytest.mark.parametrize("nu", [0.3, 0.5, 1.0])
def test_b_transform_single_atom(nu):
    s = np.array([0.5, 2.0, 3 + 4j, -2 + 0.1j])
    np.testing.assert_allclose(dist.b_transform(dist.OrderWeight.single(nu), s), s ** nu, rtol=1e-14)


def test_b_transform_uniform_examples():
    assert dist.b_transform(UNIFORM, 1.0) == pytest.approx(1.0, abs=1e-15)
    assert dist.b_transform(UNIFORM, cmath.exp(1j * math.pi)) == pytest.approx(2j / math.pi, abs=1e-14)
    for s in (0.2, 5.0, 2 + 1j):
        assert dist.b_transform(UNIFORM, s) == pytest.approx((s - 1) / cmath.log(s), rel=1e-14)


def test_b_transform_uniform_is_the_integral_of_powers():
    s = 2.5 + 0.7j
    from scipy.integrate import quad
    re = quad(lambda b: (s ** b).real, 0, 1, epsabs=0, epsrel=1e-13)[0]
    im = quad(lambda b: (s ** b).imag, 0, 1, epsabs=0, epsrel=1e-13)[0]
    assert dist.b_transform(UNIFORM, s) == pytest.approx(re + 1j * im, rel=1e-12)


def test_uniform_taylor_coefficients():
    w = sympy.symbols("w")
    series = sympy.series(w / sympy.log(1 + w), w, 0, 4).removeO()
    coeffs = [float(series.coeff(w, k)) for k in range(4)]
    assert coeffs == pytest.approx([1.0, 0.5, -1 / 12, 1 / 24], abs=1e-15)
    for eps in (1e-4, -3e-4, 5e-4j, 9e-4 * cmath.exp(0.3j)):
        s = 1 + eps
        ref = sum(c * eps ** k for k, c in enumerate(coeffs))
        assert dist.b_transform(UNIFORM, s) == pytest.approx(ref, abs=1e-15)


def test_b_transform_rejects_zero():
    with pytest.raises(DomainError):
        dist.b_transform(TWO, 0.0)


def test_b_transform_is_linear_in_weight():
    s = np.array([0.3, 4.0, 1 + 2j])
    mix = dist.b_transform(MIXED, s)
    np.testing.assert_allclose(mix, 0.5 * s ** 0.5 + 0.5 * dist.b_transform(UNIFORM, s), rtol=1e-14)


@settings(max_examples=30, deadline=None)
@given(nu=st.floats(0.05, 1.0), logr=st.floats(-20, 20))
def test_ray_single_atom(nu, logr):
    r = math.exp(logr)
    ray = dist.ray_decompose(dist.OrderWeight.single(nu), r)
    assert ray.gamma == nu
    assert ray.rho == pytest.approx(r ** nu, rel=1e-14)


def test_ray_examples():
    ray = dist.ray_decompose(WITH_ONE, 1.0)
    assert ray.rho == pytest.approx(0.7071067812, abs=1e-10)
    assert ray.gamma == pytest.approx(0.75, abs=1e-14)
    ray = dist.ray_decompose(UNIFORM, 1.0)
    assert ray.rho == pytest.approx(2 / math.pi, abs=1e-14)
    assert ray.rho == pytest.approx(0.6366197724, abs=1e-10)
    assert ray.gamma == pytest.approx(0.5, abs=1e-14)


@pytest.mark.parametrize("r", [1e-6, 0.3, 1.0, 7.0, 1e5])
@pytest.mark.parametrize("weight", [TWO, UNIFORM, MIXED, WITH_ONE])
def test_ray_matches_complex_arithmetic(weight, r):
    B = dist.b_transform(weight, r * cmath.exp(1j * math.pi))
    ray = dist.ray_decompose(weight, r)
    assert ray.rho == pytest.approx(abs(B), rel=1e-12)
    assert ray.gamma == pytest.approx(cmath.phase(B) / math.pi, abs=1e-12)


def test_ray_mixture_limits():
    assert dist.ray_decompose(TWO, 1e8).gamma == pytest.approx(0.75, abs=1e-3)
    assert dist.ray_decompose(TWO, 1e-8).gamma == pytest.approx(0.25, abs=1e-3)


def test_ray_extreme_r_stays_finite():
    for r in (1e-300, 1e300):
        ray = dist.ray_decompose(UNIFORM, r)
        assert 0 < ray.gamma < 1 and ray.rho > 0


def test_ray_rejects_nonpositive_r():
    with pytest.raises(DomainError):
        dist.ray_decompose(TWO, 0.0)


def test_ray_value_validation():
    with pytest.raises(DomainError):
        dist.RayValue(0.0, 0.5)
    with pytest.raises(DomainError):
        dist.RayValue(1.0, 0.0)


def test_kernel_examples():
    assert dist.kernel_K(1.0, dist.RayValue(1.0, 0.5)) == pytest.approx(1 / (2 * math.pi), abs=1e-15)
    assert dist.kernel_K(0.0, dist.RayValue(2.0, 0.3)) == 0.0


def test_kernel_is_branch_cut_jump():
    # K = -(1/pi) Im[kappa^2 / (kappa^2 + B)] with B = rho e^{i pi gamma}
    kappa, ray = 1.7, dist.RayValue(0.8, 0.4)
    B = ray.rho * cmath.exp(1j * math.pi * ray.gamma)
    ref = -(kappa ** 2 / (kappa ** 2 + B)).imag / math.pi
    assert dist.kernel_K(kappa, ray) == pytest.approx(ref, rel=1e-13)


def test_kernel_warns_on_normal_diffusion_ray():
    with pytest.warns(RuntimeWarning):
        dist.kernel_K(1.0, dist.RayValue(1.0, 1.0))


# ---------------------------------------------------------------- Green function


@pytest.mark.parametrize("nu", [0.25, 0.5, 0.75])
@pytest.mark.parametrize("t", [0.5, 1.0, 2.0])
def test_reduction_to_single_order(nu, t):
    xs = np.linspace(0, 4, 17)
    diff = dist.green_distributed(dist.OrderWeight.single(nu), xs, t) - so.green(nu, xs, t)
    assert np.max(np.abs(diff)) <= 1e-6


def test_single_atom_example():
    assert dist.green_distributed(dist.OrderWeight.single(0.5), 1.0, 1.0) == pytest.approx(
        so.green(0.5, 1.0, 1.0), abs=1e-12
    )


@pytest.mark.parametrize(
    "weight,x,t",
    [(TWO, 0.0, 1.0), (TWO, 1.0, 1.0), (TWO, 3.0, 0.1), (UNIFORM, 0.5, 1.0), (UNIFORM, 2.0, 50.0),
     (MIXED, 1.5, 0.3), (WITH_ONE, 0.7, 2.0), (WITH_ONE, 4.0, 1.0)],
)
def test_green_against_laplace_oracle(weight, x, t):
    ref = green_laplace_mp(weight.atoms, weight.uniform, x, t)
    assert dist.green_distributed(weight, x, t) == pytest.approx(ref, rel=1e-8, abs=1e-13)


@pytest.mark.parametrize("weight", BATTERY)
def test_normalization_and_positivity(weight):
    assert dist.mass(weight, 1.0) == pytest.approx(1.0, abs=1e-5)
    pos = np.linspace(0, 12, 49)
    grid = np.concatenate([-pos[:0:-1], pos])
    values = dist.green_distributed(weight, grid, 1.0)
    assert np.min(values) >= -1e-9
    np.testing.assert_array_equal(values, values[::-1])


def test_green_rejects_bad_inputs():
    with pytest.raises(DomainError):
        dist.green_distributed(dist.OrderWeight.single(1.0), 0.0, 1.0)
    with pytest.raises(DomainError):
        dist.green_distributed(TWO, 0.0, 0.0)
    with pytest.raises(DomainError):
        dist.green_distributed({"0.5": 1}, 0.0, 1.0)


# ---------------------------------------------------------------- phi_k and the series


def test_phi_k_single_atom_examples():
    half = dist.OrderWeight.single(0.5)
    assert dist.phi_k(half, 0, 1.0) == pytest.approx(math.sin(math.pi / 4) * special.gamma(0.25), rel=1e-10)
    assert abs(dist.phi_k(half, 3, 1.0)) <= 1e-12
    assert dist.phi_k(half, 1, 4.0) == pytest.approx(0.8862269255, abs=1e-10)


@pytest.mark.parametrize("nu", [0.3, 0.7])
def test_phi_k_single_atom_closed_form(nu):
    ks = np.arange(8)
    t = 1.7
    a = nu * (ks + 1) / 2
    ref = np.sin(np.pi * a) * special.gamma(a) / t ** a
    np.testing.assert_allclose(dist.phi_k(dist.OrderWeight.single(nu), ks, t), ref, rtol=1e-9, atol=1e-13)


def test_phi_k_rejects_bad_index():
    with pytest.raises(DomainError):
        dist.phi_k(TWO, -1, 1.0)
    with pytest.raises(DomainError):
        dist.phi_k(TWO, 1.5, 1.0)


def test_series_single_atom_at_origin():
    assert dist.green_distributed_series(dist.OrderWeight.single(0.5), 0.0, 1.0) == pytest.approx(
        0.5 * special.rgamma(0.75), rel=1e-10
    )


def test_series_single_atom_example():
    half = dist.OrderWeight.single(0.5)
    assert dist.green_distributed_series(half, 1.0, 1.0) == pytest.approx(
        dist.green_distributed(half, 1.0, 1.0), abs=1e-5
    )


@pytest.mark.parametrize("x", np.linspace(-1.5, 1.5, 7))
def test_series_matches_integral_two_atoms(x):
    assert dist.green_distributed_series(TWO, x, 1.0) == pytest.approx(dist.green_distributed(TWO, x, 1.0), abs=1e-5)


def test_series_is_even():
    assert dist.green_distributed_series(MIXED, 0.8, 1.0) == dist.green_distributed_series(MIXED, -0.8, 1.0)


def test_series_reports_cancellation():
    from fracgreen.errors import CancellationError
    with pytest.raises(CancellationError):
        dist.green_distributed_series(dist.OrderWeight.single(0.5), 8.0, 1.0)


# ---------------------------------------------------------------- second moment


def test_second_moment_laplace_examples():
    for nu in (0.3, 0.8):
        assert dist.second_moment_laplace(dist.OrderWeight.single(nu), 2.0) == pytest.approx(2 / 2 ** (nu + 1), rel=1e-14)
    s = 3.0
    assert dist.second_moment_laplace(TWO, s) == pytest.approx(2 / (0.5 * s ** 1.25 + 0.5 * s ** 1.75), rel=1e-14)
    assert dist.second_moment_laplace(UNIFORM, s) == pytest.approx(2 * math.log(s) / (s * (s - 1)), rel=1e-14)


def test_second_moment_single_atom():
    assert dist.second_moment(dist.OrderWeight.single(0.5), 1.0) == pytest.approx(2.2567583342, abs=1e-9)


@pytest.mark.parametrize("nu", [0.25, 0.5, 0.75])
@pytest.mark.parametrize("t", [0.1, 1.0, 10.0])
def test_second_moment_power_law(nu, t):
    ref = 2 * t ** nu / special.gamma(nu + 1)
    assert dist.second_moment(dist.OrderWeight.single(nu), t) == pytest.approx(ref, rel=1e-8)


@pytest.mark.parametrize("weight", [TWO, UNIFORM, MIXED, WITH_ONE])
@pytest.mark.parametrize("t", [1e-4, 1.0, 1e4])
def test_second_moment_against_mpmath(weight, t):
    ref = second_moment_mp(weight.atoms, weight.uniform, t)
    assert dist.second_moment(weight, t) == pytest.approx(ref, rel=1e-8)


def test_second_moment_two_atom_asymptotics():
    late = dist.second_moment(TWO, 1e6) / (2 * 1e6 ** 0.25 / (0.5 * special.gamma(1.25)))
    early = dist.second_moment(TWO, 1e-6) / (2 * 1e-6 ** 0.75 / (0.5 * special.gamma(1.75)))
    assert 0.95 <= late <= 1.05
    assert 0.95 <= early <= 1.05


def test_second_moment_uniform_asymptotics():
    late = dist.second_moment(UNIFORM, 1e8) / (2 * math.log(1e8))
    early = dist.second_moment(UNIFORM, 1e-8) / (2 * 1e-8 * math.log(1e8))
    assert 0.9 <= late <= 1.1
    assert 0.9 <= early <= 1.1


@pytest.mark.parametrize(
    "weight,t,regime",
    [(TWO, 1e6, "power:0.25"), (TWO, 1e-6, "power:0.75"), (UNIFORM, 1e8, "log"), (UNIFORM, 1e-8, "log"),
     (MIXED, 1e8, "log"), (WITH_ONE, 1e-8, "power:1")],
)
def test_second_moment_asymptote(weight, t, regime):
    value, got = dist.second_moment_asymptote(weight, t)
    assert got == regime
    assert dist.second_moment(weight, t) / value == pytest.approx(1.0, abs=0.1)


def test_second_moment_rejects_nonpositive_time():
    with pytest.raises(DomainError):
        dist.second_moment(TWO, 0.0)
    with pytest.raises(DomainError):
        dist.second_moment_asymptote(TWO, -1.0)

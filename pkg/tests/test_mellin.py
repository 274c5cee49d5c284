import math

import numpy as np
import pytest

from fracgreen import specfun as sf
from fracgreen.errors import DomainError, TruncationError
from fracgreen.mellin import ContourSpec, mb_F_kernel, mb_reduced_green

from oracles import fox_wright_mp, mwright_mp


def test_reduced_green_matches_series_oracle():
    assert mb_reduced_green(0.5, 1.0) == pytest.approx(0.5 * mwright_mp(0.25, 1.0), abs=1e-12)


def test_reduced_green_gaussian_limit():
    value = mb_reduced_green(1.0, 1.0)
    assert value == pytest.approx(math.exp(-0.25) / (2 * math.sqrt(math.pi)), abs=1e-12)


@pytest.mark.parametrize("beta,x", [(0.3, 0.5), (0.5, 2.0), (0.75, 3.0), (0.9, 1.0)])
def test_imaginary_residue_vanishes(beta, x):
    _, info = mb_reduced_green(beta, x, full_output=True)
    assert abs(info["imag"]) <= 1e-10


@pytest.mark.parametrize("beta", [0.25, 0.5, 0.75])
@pytest.mark.parametrize("x", [0.2, 1.0, 2.5, 4.0])
def test_reduced_green_against_high_precision(beta, x):
    assert mb_reduced_green(beta, x) == pytest.approx(0.5 * mwright_mp(beta / 2, x), rel=1e-10)


@pytest.mark.parametrize("sigma", [0.25, 0.4, 0.6, 0.75])
def test_contour_shift_invariance(sigma):
    base = mb_reduced_green(0.6, 1.7)
    assert mb_reduced_green(0.6, 1.7, ContourSpec(sigma=sigma)) == pytest.approx(base, abs=1e-8)
    kbase = mb_F_kernel(0.5, 2.0)
    assert mb_F_kernel(0.5, 2.0, ContourSpec(sigma=sigma)) == pytest.approx(kbase, abs=1e-8)


def test_node_doubling_self_convergence():
    _, info = mb_reduced_green(0.5, 2.0, full_output=True)
    span, nodes = info["half_span"], info["nodes"]
    coarse = mb_reduced_green(0.5, 2.0, ContourSpec(half_span=span, nodes=nodes))
    fine = mb_reduced_green(0.5, 2.0, ContourSpec(half_span=span, nodes=2 * nodes - 1))
    assert abs(fine - coarse) <= 1e-12


def test_F_kernel_matches_series():
    assert mb_F_kernel(0.5, 1.0) == pytest.approx(sf.fox_wright_F(0.5, 1.0), abs=1e-10)


@pytest.mark.parametrize("gamma", [0.2, 0.5, 0.8])
@pytest.mark.parametrize("y", [0.05, 1.0, 5.0])
def test_F_kernel_against_high_precision(gamma, y):
    assert mb_F_kernel(gamma, y) == pytest.approx(fox_wright_mp(gamma, y), rel=1e-9, abs=1e-13)


@pytest.mark.parametrize("y", [0.01, 0.001])
def test_F_kernel_small_argument(y):
    # F(y) = y sin(pi/4) (1 - y sqrt(2) + O(y^2)) at gamma = 1/2
    ratio = mb_F_kernel(0.5, y) / (y * math.sin(math.pi / 4))
    assert abs(ratio - 1) <= 1.5 * y


def test_F_kernel_imaginary_residue():
    _, info = mb_F_kernel(0.4, 2.0, full_output=True)
    assert abs(info["imag"]) <= 1e-10


def test_short_span_is_reported():
    with pytest.raises(TruncationError):
        mb_reduced_green(0.5, 1.0, ContourSpec(half_span=3.0, nodes=101))


@pytest.mark.parametrize(
    "kwargs,param", [({"sigma": 1.0}, "sigma"), ({"sigma": 0.0}, "sigma"), ({"nodes": 32}, "nodes"), ({"half_span": -1.0}, "half_span")]
)
def test_contour_validation(kwargs, param):
    with pytest.raises(DomainError) as info:
        ContourSpec(**kwargs)
    assert info.value.parameter == param


def test_argument_validation():
    with pytest.raises(DomainError):
        mb_reduced_green(0.5, 0.0)
    with pytest.raises(DomainError):
        mb_reduced_green(1.5, 1.0)
    with pytest.raises(DomainError):
        mb_F_kernel(1.0, 1.0)
    with pytest.raises(DomainError):
        mb_F_kernel(0.5, -2.0)

"""Single-kernel extremal functions: sandwich, interpolation, transforms."""

import math

import numpy as np
import pytest

from extremal import kernels, quadrature, specfun
from extremal.errors import DomainError
from extremal.verify import cos_window_integral


@pytest.mark.parametrize("lam", [0.1, 1.0, 10.0])
def test_sandwich(lam):
    xs = np.linspace(-25.0, 25.0, 10_000)
    e = np.exp(-lam * np.abs(xs))
    assert np.min(e - kernels.minorant_values(lam, xs)) >= -1e-11
    assert np.min(kernels.majorant_values(lam, xs) - e) >= -1e-11


@pytest.mark.parametrize("lam", [0.3, 1.0, 4.0])
def test_node_interpolation(lam):
    """Value and slope match the kernel on the interpolation lattices."""
    s = np.arange(0, 12, dtype=float) + 0.5       # minorant: half-integers
    n = np.arange(1, 12, dtype=float)             # majorant: integers
    assert np.max(np.abs(kernels.minorant_values(lam, s)
                         - np.exp(-lam * s))) <= 1e-10
    assert np.max(np.abs(kernels.majorant_values(lam, n)
                         - np.exp(-lam * n))) <= 1e-10
    h = 1e-6
    for x in (0.5, 2.5, 7.5):
        fd = (kernels.minorant_values(lam, x + h)
              - kernels.minorant_values(lam, x - h)) / (2.0 * h)
        assert abs(fd + lam * math.exp(-lam * x)) <= 1e-5 * (1.0 + lam)
    for x in (1.0, 3.0, 8.0):
        fd = (kernels.majorant_values(lam, x + h)
              - kernels.majorant_values(lam, x - h)) / (2.0 * h)
        assert abs(fd + lam * math.exp(-lam * x)) <= 1e-5 * (1.0 + lam)


def test_majorant_value_at_zero():
    # the majorant interpolates at 0 as well: M(lam, 0) = 1
    for lam in (0.2, 1.0, 5.0):
        assert abs(kernels.majorant_values(lam, 0.0) - 1.0) <= 1e-12


def test_evenness_bitwise():
    xs = np.linspace(0.0, 17.3, 257)
    for lam in (0.4, 2.0):
        l1 = kernels.minorant_values(lam, xs)
        l2 = kernels.minorant_values(lam, -xs)
        assert np.array_equal(l1, l2)
        m1 = kernels.majorant_values(lam, xs)
        m2 = kernels.majorant_values(lam, -xs)
        assert np.array_equal(m1, m2)


def test_transform_values_at_zero():
    """that(0) is the integral: csch(lam/2) for L, coth(lam/2) for M."""
    for lam in (0.25, 1.0, 6.0):
        assert abs(kernels.eval_Lhat(lam, 0.0)
                   - 1.0 / math.sinh(lam / 2.0)) <= 1e-13
        assert abs(kernels.eval_Mhat(lam, 0.0)
                   - 1.0 / math.tanh(lam / 2.0)) <= 1e-13
        total = 2.0 / lam
        assert kernels.eval_Lhat(lam, 0.0) == pytest.approx(
            total - specfun.defect_minorant(lam), abs=1e-12)
        assert kernels.eval_Mhat(lam, 0.0) == pytest.approx(
            total + specfun.defect_majorant(lam), abs=1e-12)


def test_transform_support():
    ts = np.array([-2.0, -1.5, -1.0000001, 1.0000001, 1.2, 5.0])
    assert np.all(kernels.eval_Lhat(1.0, ts) == 0.0)
    assert np.all(kernels.eval_Mhat(1.0, ts) == 0.0)


def test_transform_remark_bound():
    for lam in 10.0 ** np.linspace(-1, 1, 7):
        ts = np.linspace(-0.999, 0.999, 333)
        cap = 2.0 * lam / (lam * lam + 4.0 * math.pi ** 2 * ts ** 2)
        assert np.min(cap - kernels.eval_Lhat(lam, ts)) >= -1e-12


@pytest.mark.parametrize("lam,t", [(0.5, 0.3), (1.0, 0.7), (2.0, -0.45)])
def test_transform_vs_numeric_ft(lam, t):
    """Forward numeric Fourier integral reproduces the closed forms."""
    exp_ft = 2.0 * lam / (lam * lam + 4.0 * math.pi ** 2 * t * t)
    ft_dl = cos_window_integral(
        lambda x: np.exp(-lam * np.abs(x)) - kernels.minorant_values(lam, x), t)
    assert abs((exp_ft - ft_dl) - kernels.eval_Lhat(lam, t)) <= 1e-6
    ft_dm = cos_window_integral(
        lambda x: kernels.majorant_values(lam, x) - np.exp(-lam * np.abs(x)), t)
    assert abs((exp_ft + ft_dm) - kernels.eval_Mhat(lam, t)) <= 1e-6


def test_fourier_inversion():
    """L is band-limited: inverting Lhat over [-1, 1] recovers L(x)."""
    for lam, x in ((0.7, 0.2), (1.5, 3.3), (3.0, 0.75)):
        inv = 2.0 * quadrature.integrate_finite(
            lambda t: kernels.eval_Lhat(lam, t) * np.cos(2.0 * np.pi * x * t),
            0.0, 1.0, tol=1e-12).value
        assert abs(inv - kernels.minorant_values(lam, x)) <= 1e-9
        inv = 2.0 * quadrature.integrate_finite(
            lambda t: kernels.eval_Mhat(lam, t) * np.cos(2.0 * np.pi * x * t),
            0.0, 1.0, tol=1e-12).value
        assert abs(inv - kernels.majorant_values(lam, x)) <= 1e-9


def test_eval_point_wrappers():
    r = kernels.eval_L(1.0, -2.2)
    assert r.value == pytest.approx(kernels.minorant_values(1.0, 2.2), abs=0.0)
    assert r.tail_bound >= 0.0 and r.tail_bound <= 1e-12
    r = kernels.eval_M(1.0, 2.2)
    assert r.value == pytest.approx(kernels.majorant_values(1.0, 2.2), abs=0.0)


def test_lhat_haar_integral_bounds():
    assert kernels.lhat_haar_integral(1.0) == 0.0
    assert kernels.lhat_haar_integral(1.7) == 0.0
    for t in (0.1, 0.4, 0.9):
        v = kernels.lhat_haar_integral(t)
        assert 0.0 <= v <= 0.5 / t + 1e-12
    with pytest.raises(DomainError):
        kernels.lhat_haar_integral(0.0)


def test_defect_at_point_matches_direct():
    """Chebyshev small-lam branch agrees with the node series where the
    series is affordable, and stays positive down to extreme lam."""
    for kind in ("minorant", "majorant"):
        d = kernels.KernelDefectAtPoint(2.2, kind)
        lams = 10.0 ** np.linspace(-2, 1, 40)
        vals = d(lams)
        e = np.exp(-lams * 2.2)
        if kind == "minorant":
            direct = e - np.array([kernels.minorant_values(l, 2.2) for l in lams])
        else:
            direct = np.array([kernels.majorant_values(l, 2.2) for l in lams]) - e
        assert np.max(np.abs(vals - direct)) <= 1e-13
        tiny = d(10.0 ** np.linspace(-8, -2, 25))
        assert np.all(tiny > 0.0)
        assert np.all(vals > 0.0)


def test_lambda_validation():
    for bad in (0.0, -1.0, math.nan, math.inf):
        with pytest.raises(DomainError):
            kernels.minorant_values(bad, 1.0)
        with pytest.raises(DomainError):
            kernels.eval_Lhat(bad, 0.5)

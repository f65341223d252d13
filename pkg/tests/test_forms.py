"""Sharp Hermitian form constants, witnesses, and the HLS specialization."""

import math

import numpy as np
import pytest

from extremal import forms, measures
from extremal.errors import AdmissibilityError, DomainError

HAAR = measures.HaarLog()
PL05 = measures.PowerLaw(0.5)
PL15 = measures.PowerLaw(1.5)
ATOM = measures.Atomic((0.5, 2.0), (1.0, 0.25))

B_PL15 = 1.4738749600452898          # 2*Gamma(-1/2)*zeta(-1/2)


# -- form kernel r_mu ---------------------------------------------------------

def test_r_haar_closed_form():
    assert forms.r_mu(HAAR, 2.0) == 0.25
    ts = np.array([0.5, 1.0, 4.0])
    assert np.allclose(forms.r_mu(HAAR, ts), 0.5 / ts, rtol=0, atol=1e-15)
    assert forms.r_mu(HAAR, -2.0) == 0.25


def test_r_power_law_closed_form():
    s = 1.5
    C = math.pi / ((2.0 * math.pi) ** s * math.sin(math.pi * s / 2.0))
    for t in (0.5, 1.0, 3.0):
        assert abs(forms.r_mu(PL15, t) - C * t ** (-s)) <= 1e-15


def test_r_atomic_closed_form():
    lams, ws = ATOM.atoms
    t = 0.7
    expect = sum(2.0 * l * w / (l * l + 4.0 * math.pi ** 2 * t * t)
                 for l, w in zip(lams, ws))
    assert abs(forms.r_mu(ATOM, t) - expect) <= 1e-15


def test_r_weight_matches_quadrature():
    mu = measures.Weight(lambda lam: np.exp(-lam))
    t = 0.4
    val = forms.r_mu(mu, t, tol=1e-11)
    brute = measures.integrate(
        lambda lam: 2.0 * lam / (lam * lam + 4.0 * math.pi ** 2 * t * t),
        mu, tol=1e-12).value
    assert abs(val - brute) <= 1e-10


def test_r_divergence_sentinels():
    assert measures.is_plus_inf(forms.r_mu(HAAR, 0.0))
    assert measures.is_plus_inf(forms.r_mu(PL05, 0.0))
    with pytest.raises(DomainError):
        forms.r_mu(HAAR, np.array([0.0, 1.0]))
    # atomic r(0) is finite
    assert forms.r_mu(ATOM, 0.0) > 0.0


# -- sharp constants ----------------------------------------------------------

def test_lower_constant_haar():
    assert abs(forms.lower_constant_A(HAAR) - math.log(2.0)) <= 1e-14
    assert abs(forms.lower_constant_A(HAAR, delta=4.0)
               - math.log(2.0) / 4.0) <= 1e-14


@pytest.mark.parametrize("mu", [HAAR, PL05, PL15, ATOM],
                         ids=lambda m: m.family)
@pytest.mark.parametrize("delta", [0.5, 1.0, 3.0])
def test_lower_constant_dual_routes(mu, delta):
    closed = forms.lower_constant_A(mu, delta)
    quad = forms.lower_constant_A(mu, delta, method="quad")
    assert abs(closed - quad) <= 1e-8 * max(1.0, abs(closed))


@pytest.mark.parametrize("mu", [PL15, ATOM], ids=lambda m: m.family)
@pytest.mark.parametrize("delta", [0.5, 1.0, 3.0])
def test_upper_constant_dual_routes(mu, delta):
    closed = forms.upper_constant_B(mu, delta)
    quad = forms.upper_constant_B(mu, delta, method="quad")
    assert abs(closed - quad) <= 1e-8 * max(1.0, abs(closed))


def test_upper_constant_power15_value_and_scaling():
    assert abs(forms.upper_constant_B(PL15) - B_PL15) <= 1e-12
    assert abs(forms.upper_constant_B(PL15, delta=2.0)
               - B_PL15 / 2.0 ** 1.5) <= 1e-12


def test_upper_constant_rejects_divergent_families():
    with pytest.raises(AdmissibilityError):
        forms.upper_constant_B(HAAR)
    with pytest.raises(AdmissibilityError) as exc:
        forms.upper_constant_B(PL05)
    assert "cond31" in str(exc.value)


def test_form_bound_container():
    fb = forms.form_bound(PL15)
    assert fb.B is not None and fb.A > 0.0
    assert forms.form_bound(HAAR).B is None


# -- HLS specialization -------------------------------------------------------

def test_hls_sigma_one_is_log4():
    c = forms.hls_constants(1.0, delta=1.0)
    assert c.lower == math.log(4.0)
    assert c.upper is None
    assert forms.hls_constants(1.0, delta=2.0).lower == math.log(4.0) / 2.0


@pytest.mark.parametrize("sigma", [0.25, 0.5, 0.75, 1.25, 1.75])
def test_hls_dual_routes_agree(sigma):
    a = forms.hls_constants(sigma)
    b = forms.hls_gamma_route(sigma)
    assert abs(a.lower - b.lower) <= 1e-10 * max(1.0, abs(a.lower))
    if sigma > 1.0:
        assert abs(a.upper - b.upper) <= 1e-10 * max(1.0, abs(a.upper))
    else:
        assert a.upper is None and b.upper is None


def test_hls_sigma_two_continuity_extension():
    c = forms.hls_constants(2.0)
    assert c.continuity_extension is True
    assert abs(c.lower - math.pi ** 2 / 6.0) <= 1e-15
    assert abs(c.upper - math.pi ** 2 / 3.0) <= 1e-15
    assert forms.hls_constants(1.5).continuity_extension is False


def test_hls_validation():
    for bad in (0.0, -1.0, 2.5):
        with pytest.raises(DomainError):
            forms.hls_constants(bad)
    with pytest.raises(DomainError):
        forms.hls_gamma_route(1.0)


# -- form evaluation and bounds ----------------------------------------------

def test_two_point_alternating_form():
    for delta in (1.0, 2.0):
        ps = forms.PointSet((0.0, delta), delta)
        val = forms.evaluate_form(HAAR, ps, np.array([1.0, -1.0]))
        assert abs(val - (-1.0 / delta)) <= 1e-14


def test_form_matches_direct_double_sum():
    rng = np.random.default_rng(3)
    ps = forms.random_point_set(rng, 6, 1.0)
    a = rng.normal(size=6) + 1j * rng.normal(size=6)
    val = forms.evaluate_form(ATOM, ps, a)
    brute = 0.0
    for m in range(6):
        for n in range(6):
            if m != n:
                brute += (a[m] * np.conj(a[n])
                          * forms.r_mu(ATOM, ps.xi[m] - ps.xi[n])).real
    assert abs(val - brute) <= 1e-12 * max(1.0, abs(brute))


def test_form_single_point_is_zero():
    assert forms.evaluate_form(HAAR, forms.PointSet((1.0,), 1.0),
                               np.array([2.0 + 1j])) == 0.0


def test_form_coefficient_count_mismatch():
    ps = forms.PointSet((0.0, 1.0), 1.0)
    with pytest.raises(DomainError):
        forms.evaluate_form(HAAR, ps, np.array([1.0]))


@pytest.mark.parametrize("mu", [HAAR, PL05, PL15, ATOM],
                         ids=lambda m: m.family)
def test_lower_bound_holds_on_random_trials(mu):
    rng = np.random.default_rng(17)
    A = forms.lower_constant_A(mu)
    for _ in range(10):
        n = int(rng.integers(2, 20))
        ps = forms.random_point_set(rng, n, 1.0)
        a = rng.normal(size=n) + 1j * rng.normal(size=n)
        energy = float(np.sum(np.abs(a) ** 2))
        val = forms.evaluate_form(mu, ps, a)
        assert val >= -A * energy - 1e-9 * energy


@pytest.mark.parametrize("mu", [PL15, ATOM], ids=lambda m: m.family)
def test_upper_bound_holds_on_random_trials(mu):
    rng = np.random.default_rng(23)
    B = forms.upper_constant_B(mu)
    for _ in range(10):
        n = int(rng.integers(2, 20))
        ps = forms.random_point_set(rng, n, 1.0)
        a = rng.normal(size=n) + 1j * rng.normal(size=n)
        energy = float(np.sum(np.abs(a) ** 2))
        val = forms.evaluate_form(mu, ps, a)
        assert val <= B * energy + 1e-9 * energy


def test_witness_ratio_converges_to_sharp_constant():
    A = forms.lower_constant_A(HAAR)
    prev = 0.0
    for N in (10, 50, 200, 500):
        w = forms.sharpness_witness(HAAR, 1.0, N, kind="lower")
        assert prev < w <= A + 1e-12
        prev = w
    assert (A - prev) / A <= 0.01          # 0.14% gap at N = 500
    B = forms.upper_constant_B(PL15)
    wu = forms.sharpness_witness(PL15, 1.0, 500, kind="upper")
    assert wu <= B + 1e-12
    assert forms.sharpness_witness(HAAR, 1.0, 0) == 0.0
    with pytest.raises(DomainError):
        forms.sharpness_witness(HAAR, 1.0, 5, kind="middle")


def test_form_report_payload():
    ps = forms.PointSet((0.0, 1.0), 1.0)
    rep = forms.form_report(HAAR, 1.0, ps, np.array([1.0, -1.0]))
    assert set(rep) == {"bound", "form_value", "slack", "witness_ratio"}
    assert rep["slack"] >= 0.0
    assert abs(rep["form_value"] - (-1.0)) <= 1e-14
    # two alternating points attain 1/(2 log2) of the sharp constant
    assert abs(rep["witness_ratio"] - 0.5 / math.log(2.0)) <= 1e-12


# -- point sets ---------------------------------------------------------------

def test_point_set_validation():
    with pytest.raises(DomainError):
        forms.PointSet((), 1.0)
    with pytest.raises(DomainError):
        forms.PointSet((0.0, 0.5), 1.0)       # gap below declared delta
    with pytest.raises(DomainError):
        forms.PointSet((0.0, math.inf), 1.0)
    with pytest.raises(DomainError):
        forms.PointSet((0.0, 2.0), -1.0)


def test_random_point_set_separation():
    rng = np.random.default_rng(5)
    for _ in range(20):
        ps = forms.random_point_set(rng, 12, 0.7)
        assert len(ps.xi) == 12
        assert np.min(np.diff(np.sort(np.asarray(ps.xi)))) >= 0.7


def test_points_csv_round_trip_and_errors(tmp_path):
    good = tmp_path / "pts.csv"
    good.write_text("xi,re,im\n0.0,1.0,0.0\n1.5,-1.0,0.25\n")
    xi, a = forms.points_from_csv(str(good))
    assert np.array_equal(xi, [0.0, 1.5])
    assert a[1] == -1.0 + 0.25j
    bad = tmp_path / "bad.csv"
    bad.write_text("xi,re,im\n0.0,1.0,0.0\n1.5,oops,0.0\n")
    with pytest.raises(DomainError, match=":3:"):
        forms.points_from_csv(str(bad))
    empty = tmp_path / "empty.csv"
    empty.write_text("xi,re,im\n")
    with pytest.raises(DomainError):
        forms.points_from_csv(str(empty))

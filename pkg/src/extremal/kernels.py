"""Extremal band-limited minorant/majorant of e^{-lam|x|} and their transforms.

The minorant L(lam, .) interpolates e^{-lam|x|} and its derivative on the
half-integer lattice, the majorant M(lam, .) on the integers; both have
exponential type 2pi.  We evaluate the defining node series with terms
paired across +-s so the sum is exactly even in x and absolutely convergent:

    L(lam, x) = P(x) * sum_{s = 1/2, 3/2, ...} e^{-lam s}
                [ 1/(x-s)^2 + 1/(x+s)^2 - lam (1/(x-s) - 1/(x+s)) ]

with P(x) = (cos(pi x)/pi)^2, and analogously for M over integer nodes with
the extra unpaired s = 0 term.  P is computed as (sin(pi du)/pi)^2 from the
distance du to the nearest node, which keeps full relative accuracy near the
lattice, and the single offending term collapses to

    e^{-lam s*} sinc(du)^2 (1 - lam du)

so node interpolation is exact.  Truncation keeps K = ceil(|x|) +
ceil(log(1/eps)/lam) + 10 node pairs (eps = 1e-14).

The Fourier transforms (supported on [-1, 1]) have the closed forms

    Lhat = [(1-|t|) sinh(l/2) cos(pi t) + (l/2pi)|sin(pi t)| cosh(l/2)] / Dh
    Mhat = [(1-|t|) sinh(l/2) cosh(l/2) + (l/2pi)|sin(pi t)| cos(pi t)] / Dh
    Dh   = sinh(l/2)^2 + sin(pi t)^2

evaluated in e^{-l/2}-scaled form so nothing overflows for any lam > 0.

The one-sided kernel defects e^{-lam|x|} - L and M - e^{-lam|x|} are O(lam)
as lam -> 0 while the raw series needs ~32/lam terms, so measure integrals
refining toward lam = 0 use KernelDefectAtPoint: a per-x Chebyshev fit of
defect/lam on [0, 1/2] (the defect is analytic in |lam| < 2pi, making the
fit rounding-limited; ~1e-10 relative accuracy uniformly down to lam -> 0).
"""

import math

import numpy as np

from dataclasses import dataclass

from .errors import DomainError
from .quadrature import integrate_semiinfinite

_EPS_TAIL = 1e-14
_NODE_TOL = 1e-6


@dataclass(frozen=True)
class KernelEval:
    """One kernel evaluation with its truncation bookkeeping."""

    lam: float
    x: float
    value: float
    trunc_terms: int
    tail_bound: float


def _check_lam(lam):
    if not (isinstance(lam, (int, float)) and lam > 0.0 and math.isfinite(lam)):
        raise DomainError(f"kernel rate must be finite and positive, got {lam!r}")
    return float(lam)


def _trunc_terms(lam, ax_max):
    return int(math.ceil(ax_max)) + int(math.ceil(math.log(1.0 / _EPS_TAIL) / lam)) + 10


def _tail_bound(lam, ax_max, K, shift):
    """Crude bound on the dropped node-pair tail starting at s = K + shift."""
    s0 = K + shift
    gap = s0 - ax_max
    if gap <= 0.0:
        return math.inf
    geo = math.exp(-lam * s0) / -math.expm1(-lam)
    return geo * (2.0 / gap ** 2 + 2.0 * lam / gap) / math.pi ** 2


def minorant_values(lam, x):
    """L(lam, x) for an array (or scalar) of real x; even in x bit-for-bit."""
    lam = _check_lam(lam)
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    ax = np.abs(np.atleast_1d(x))
    K = _trunc_terms(lam, float(ax.max(initial=0.0)))
    s = np.arange(K, dtype=float) + 0.5
    E = np.exp(-lam * s)
    dx = ax[:, None] - s[None, :]
    px = ax[:, None] + s[None, :]
    i_near = np.floor(ax).astype(int)            # nearest node is i_near + 1/2
    du = ax - (i_near + 0.5)
    near = np.abs(du) < _NODE_TOL
    with np.errstate(divide="ignore", invalid="ignore"):
        direct = E[None, :] * (1.0 / dx ** 2 - lam / dx)
    mirror = E[None, :] * (1.0 / px ** 2 + lam / px)
    rows = np.nonzero(near)[0]
    if rows.size:
        cols = i_near[rows]
        direct[rows, cols] = 0.0
    P = (np.sin(np.pi * du) / np.pi) ** 2
    vals = P * np.sum(direct + mirror, axis=1)
    if rows.size:
        sn = cols + 0.5
        sinc2 = np.sinc(du[rows]) ** 2
        vals[rows] += np.exp(-lam * sn) * sinc2 * (1.0 - lam * du[rows])
    return float(vals[0]) if scalar else vals


def majorant_values(lam, x):
    """M(lam, x) for an array (or scalar) of real x; even in x bit-for-bit."""
    lam = _check_lam(lam)
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    ax = np.abs(np.atleast_1d(x))
    K = _trunc_terms(lam, float(ax.max(initial=0.0)))
    s = np.arange(1, K, dtype=float)
    E = np.exp(-lam * s)
    dx = ax[:, None] - s[None, :]
    px = ax[:, None] + s[None, :]
    i_near = np.rint(ax).astype(int)
    du = ax - i_near
    near = np.abs(du) < _NODE_TOL
    with np.errstate(divide="ignore", invalid="ignore"):
        direct = E[None, :] * (1.0 / dx ** 2 - lam / dx)
        zero_term = 1.0 / ax ** 2                # unpaired s = 0 node
    mirror = E[None, :] * (1.0 / px ** 2 + lam / px)
    rows = np.nonzero(near & (i_near >= 1))[0]
    if rows.size:
        cols = i_near[rows] - 1
        direct[rows, cols] = 0.0
    rows0 = np.nonzero(near & (i_near == 0))[0]
    if rows0.size:
        zero_term[rows0] = 0.0
    P = (np.sin(np.pi * du) / np.pi) ** 2
    vals = P * (zero_term + np.sum(direct + mirror, axis=1))
    if rows.size:
        sn = i_near[rows].astype(float)
        sinc2 = np.sinc(du[rows]) ** 2
        vals[rows] += np.exp(-lam * sn) * sinc2 * (1.0 - lam * du[rows])
    if rows0.size:
        vals[rows0] += np.sinc(ax[rows0]) ** 2
    return float(vals[0]) if scalar else vals


def eval_L(lam, x):
    """Extremal minorant of e^{-lam|.|} of type 2pi at a single point."""
    lam = _check_lam(lam)
    if not math.isfinite(x):
        raise DomainError(f"x must be finite, got {x!r}")
    ax = abs(float(x))
    K = _trunc_terms(lam, ax)
    return KernelEval(lam, float(x), minorant_values(lam, ax), K,
                      _tail_bound(lam, ax, K, 0.5))


def eval_M(lam, x):
    """Extremal majorant of e^{-lam|.|} of type 2pi at a single point."""
    lam = _check_lam(lam)
    if not math.isfinite(x):
        raise DomainError(f"x must be finite, got {x!r}")
    ax = abs(float(x))
    K = _trunc_terms(lam, ax)
    return KernelEval(lam, float(x), majorant_values(lam, ax), K,
                      _tail_bound(lam, ax, K, 0.0))


def eval_Lhat(lam, t):
    """Fourier transform of L(lam, .); identically 0 outside |t| <= 1."""
    lam = _check_lam(lam)
    t = np.asarray(t, dtype=float)
    scalar = t.ndim == 0
    at = np.abs(np.atleast_1d(t))
    E = math.exp(-0.5 * lam)
    one_m_E2 = -math.expm1(-lam)
    st = np.abs(np.sin(np.pi * at))
    ct = np.cos(np.pi * at)
    num = 2.0 * E * ((1.0 - at) * ct * one_m_E2
                     + (lam / (2.0 * math.pi)) * st * (1.0 + E * E))
    den = one_m_E2 ** 2 + 4.0 * E * E * st * st
    vals = np.where(at <= 1.0, num / den, 0.0)
    return float(vals[0]) if scalar else vals


def eval_Mhat(lam, t):
    """Fourier transform of M(lam, .); identically 0 outside |t| <= 1."""
    lam = _check_lam(lam)
    t = np.asarray(t, dtype=float)
    scalar = t.ndim == 0
    at = np.abs(np.atleast_1d(t))
    E = math.exp(-0.5 * lam)
    one_m_E2 = -math.expm1(-lam)
    one_m_E4 = -math.expm1(-2.0 * lam)
    st = np.abs(np.sin(np.pi * at))
    ct = np.cos(np.pi * at)
    num = (1.0 - at) * one_m_E4 + 4.0 * E * E * (lam / (2.0 * math.pi)) * st * ct
    den = one_m_E2 ** 2 + 4.0 * E * E * st * st
    vals = np.where(at <= 1.0, num / den, 0.0)
    return float(vals[0]) if scalar else vals


def lhat_haar_integral(t, tol=1e-10):
    """int_0^inf Lhat(lam, t) dlam/lam, in [0, 1/(2|t|)] for 0 < |t| <= 1.

    Vanishes at |t| = 1 (Lhat(., 1) is identically zero); the multiplicative
    Haar weight makes the integrand bounded at lam = 0 and exponentially
    small at infinity.  DomainError at t = 0 where the integral diverges.
    """
    at = abs(float(t))
    if at == 0.0:
        raise DomainError("lhat_haar_integral diverges at t = 0")
    if at > 1.0:
        return 0.0
    if at == 1.0:
        return 0.0
    res = integrate_semiinfinite(lambda lam: eval_Lhat_over_lam(lam, at), tol)
    return res.value


def eval_Lhat_over_lam(lam, t):
    """Lhat(lam, t)/lam, stable as lam -> 0 (finite positive limit)."""
    lam = np.asarray(lam, dtype=float)
    at = abs(float(t))
    st = abs(math.sin(math.pi * at))
    ct = math.cos(math.pi * at)
    E = np.exp(-0.5 * lam)
    one_m_E2 = -np.expm1(-lam)
    # (1 - e^-lam)/lam evaluated stably for small lam
    ratio = np.where(lam > 1e-8, one_m_E2 / np.where(lam == 0.0, 1.0, lam),
                     1.0 - 0.5 * lam)
    num = 2.0 * E * ((1.0 - at) * ct * ratio
                     + (st / (2.0 * math.pi)) * (1.0 + E * E))
    den = one_m_E2 ** 2 + 4.0 * E * E * st * st
    return num / den


class KernelDefectAtPoint:
    """One-sided kernel defect at fixed x, callable over arrays of lam.

    kind "minorant": e^{-lam|x|} - L(lam, x);  "majorant": M(lam, x) - e^{-lam|x|}.
    Above LAM_SWITCH the node series is cheap and used directly; below, a
    lazily built Chebyshev interpolant of defect/lam on [0, LAM_SWITCH]
    takes over (degree NFIT-1 on first-kind nodes, so the series evaluation
    is never needed at extreme lam).
    """

    LAM_SWITCH = 0.5
    NFIT = 12

    def __init__(self, x, kind="minorant"):
        if kind not in ("minorant", "majorant"):
            raise DomainError(f"unknown defect kind {kind!r}")
        self.x = abs(float(x))
        self.kind = kind
        self._coeffs = None

    def _direct(self, lam_arr):
        out = np.empty_like(lam_arr)
        for i, lam in enumerate(lam_arr):
            e = math.exp(-lam * self.x)
            if self.kind == "minorant":
                out[i] = e - minorant_values(lam, self.x)
            else:
                out[i] = majorant_values(lam, self.x) - e
        return out

    def _fit(self):
        n = self.NFIT
        i = np.arange(n)
        tk = np.cos((2 * i + 1) * np.pi / (2 * n))     # first-kind nodes
        lam = self.LAM_SWITCH * (tk + 1.0) / 2.0
        g = self._direct(lam) / lam
        self._coeffs = np.polynomial.chebyshev.chebfit(tk, g, n - 1)

    def __call__(self, lam):
        lam = np.asarray(lam, dtype=float)
        scalar = lam.ndim == 0
        lam = np.atleast_1d(lam)
        if np.any(lam <= 0.0):
            raise DomainError("kernel defect requires lam > 0")
        out = np.empty_like(lam)
        small = lam < self.LAM_SWITCH
        if np.any(small):
            if self._coeffs is None:
                self._fit()
            tk = 2.0 * lam[small] / self.LAM_SWITCH - 1.0
            out[small] = lam[small] * np.polynomial.chebyshev.chebval(tk, self._coeffs)
        if np.any(~small):
            out[~small] = self._direct(lam[~small])
        return float(out[0]) if scalar else out

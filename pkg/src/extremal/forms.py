"""Sharp constants and Hermitian-form bounds on separated point sets.

The form kernel of an admissible measure is

    r_mu(t) = int_0^inf 2 lam / (lam^2 + 4 pi^2 t^2) dmu(lam),

and for any points xi_0..xi_N with |xi_m - xi_n| >= delta and complex a,

    -A(delta,mu) sum|a|^2  <=  sum_{m != n} a_m conj(a_n) r_mu(xi_m - xi_n),

with the matching upper bound B(delta,mu) sum|a|^2 whenever the cond47
moment holds.  The sharp constants are measure integrals of the one-sided
kernel defects,

    A = (1/delta) int (2/lam - csch(lam/2)) |_{lam/delta} dmu,
    B = (1/delta) int (coth(lam/2) - 2/lam) |_{lam/delta} dmu,

with closed forms log2/delta for the multiplicative Haar measure and
(2 - 2^{2-s}) Gamma(1-s) zeta(1-s) / delta^s (lower), 2 Gamma(1-s) zeta(1-s)
/ delta^s (upper, 1 < s < 2) on the power-law scale.  Dividing by the
kernel normalization pi/((2 pi)^s sin(pi s/2)) and applying the zeta
functional equation turns these into the discrete Hardy-Littlewood-Sobolev
constants (2 - 2^{2-s}) zeta(s)/delta^s and 2 zeta(s)/delta^s for the
kernel |xi_m - xi_n|^{-s}; both routes are computed here and must agree.

Sharpness is witnessed on arithmetic progressions xi_n = delta n with
alternating (lower) or constant (upper) coefficients; the Rayleigh ratio
then telescopes to (N+1)^{-1} sum_{k != 0} (N+1-|k|) (+-1)^k r_mu(delta k).
"""

import csv
import math

import numpy as np

from dataclasses import dataclass
from typing import Optional, Tuple

from . import measures, quadrature, specfun
from .errors import AdmissibilityError, DomainError


@dataclass(frozen=True)
class PointSet:
    """Distinct reals with a declared minimum separation delta."""

    xi: Tuple[float, ...]
    delta: float

    def __post_init__(self):
        xs = tuple(float(v) for v in self.xi)
        if len(xs) == 0:
            raise DomainError("point set must be nonempty")
        if any(not math.isfinite(v) for v in xs):
            raise DomainError("points must be finite")
        measures._check_delta(self.delta)
        if len(xs) > 1:
            gap = float(np.min(np.diff(np.sort(np.asarray(xs)))))
            if gap < self.delta:
                raise DomainError(
                    f"minimum gap {gap!r} violates declared separation {self.delta!r}")
        object.__setattr__(self, "xi", xs)
        object.__setattr__(self, "delta", float(self.delta))


@dataclass(frozen=True)
class FormBound:
    """Sharp lower constant A and, when cond47 holds, upper constant B."""

    A: float
    B: Optional[float]


@dataclass(frozen=True)
class HlsConstants:
    """Sharp constants for the discrete form with kernel |xi_m - xi_n|^{-sigma}."""

    lower: float
    upper: Optional[float]
    continuity_extension: bool = False


def r_mu(measure, t, tol=1e-10):
    """Form kernel r_mu(t); vectorized in t, even, positive.

    Scalar t = 0 returns the PLUS_INF sentinel when the defining integral
    diverges (Haar, power-law); array input containing 0 then raises.
    """
    scalar = np.ndim(t) == 0
    at = np.abs(np.atleast_1d(np.asarray(t, dtype=float)))
    family = getattr(measure, "family", None)
    if family == "haar_log":
        if np.any(at == 0.0):
            if scalar:
                return measures.PLUS_INF
            raise DomainError("r diverges at t = 0; use the scalar path")
        out = 0.5 / at
    elif family == "power_law":
        if np.any(at == 0.0):
            if scalar:
                return measures.PLUS_INF
            raise DomainError("r diverges at t = 0; use the scalar path")
        s = measure.sigma
        C = measure.prefactor * math.pi / ((2.0 * math.pi) ** s
                                           * math.sin(math.pi * s / 2.0))
        out = C * at ** (-s)
    elif family == "atomic":
        lams, ws = measure.atoms
        out = (2.0 * lams * ws) @ (1.0 / (lams[None, :] ** 2
                                          + 4.0 * np.pi ** 2 * at[:, None] ** 2)).T
    else:
        out = np.empty(at.shape)
        cache = {}
        for i, tv in enumerate(at.ravel()):
            if tv not in cache:
                try:
                    cache[tv] = measures.integrate(
                        lambda lam, t2=4.0 * math.pi ** 2 * tv * tv:
                        2.0 * lam / (lam * lam + t2), measure, tol=tol).value
                except quadrature.ConvergenceError:
                    if scalar and tv == 0.0:
                        return measures.PLUS_INF
                    raise
            out.ravel()[i] = cache[tv]
    return float(out[0]) if scalar else out


def _defect_moment_over_delta(measure, delta, kind, tol):
    """(1/delta) int defect(lam/delta) dmu(lam), via the dilated measure."""
    dm = (specfun.defect_minorant if kind == "minorant"
          else specfun.defect_majorant)
    nu = measures.dilate(measure, delta)
    family = getattr(nu, "family", None)
    if family == "haar_log":
        if kind == "majorant":
            raise AdmissibilityError(
            "upper constant diverges for HaarLog() (no cond47 moment)")
        return math.log(2.0) / delta
    if family == "power_law":
        s = nu.sigma
        gz = specfun.gamma(1.0 - s) * specfun.zeta(1.0 - s)
        fac = (2.0 - 2.0 ** (2.0 - s)) if kind == "minorant" else 2.0
        return nu.prefactor * fac * gz / delta
    if family == "atomic":
        lams, ws = nu.atoms
        return float(sum(w * dm(l) for l, w in zip(lams, ws))) / delta
    return measures.integrate(dm, nu, tol=tol).value / delta


def lower_constant_A(measure, delta=1.0, tol=1e-10, method="auto"):
    """Sharp lower form constant A(delta, mu) (> 0 for admissible mu)."""
    measures._check_delta(delta)
    measure.classify()
    if method == "quad":
        return quadrature_route_A(measure, delta, tol)
    return _defect_moment_over_delta(measure, delta, "minorant", tol)


def upper_constant_B(measure, delta=1.0, tol=1e-10, method="auto"):
    """Sharp upper form constant B(delta, mu); needs the cond47 moment."""
    measures._check_delta(delta)
    adm = measure.classify()
    if not adm.cond47:
        raise AdmissibilityError(
            f"upper form constant requires the cond47 moment; "
            f"{measure!r} only satisfies cond31")
    if method == "quad":
        return quadrature_route_B(measure, delta, tol)
    return _defect_moment_over_delta(measure, delta, "majorant", tol)


def quadrature_route_A(measure, delta=1.0, tol=1e-10):
    """A(delta, mu) by direct measure quadrature (closed-form cross-check)."""
    return measures.integrate(
        lambda lam: specfun.defect_minorant(lam / delta) / delta,
        measure, tol=tol).value


def quadrature_route_B(measure, delta=1.0, tol=1e-10):
    """B(delta, mu) by direct measure quadrature (closed-form cross-check)."""
    return measures.integrate(
        lambda lam: specfun.defect_majorant(lam / delta) / delta,
        measure, tol=tol).value


def form_bound(measure, delta=1.0, tol=1e-10):
    """Both sharp constants; B is None when the cond47 moment fails."""
    A = lower_constant_A(measure, delta, tol)
    try:
        B = upper_constant_B(measure, delta, tol)
    except AdmissibilityError:
        B = None
    return FormBound(A, B)


def evaluate_form(measure, points, a, tol=1e-10):
    """Off-diagonal Hermitian form sum_{m != n} a_m conj(a_n) r_mu(xi_m - xi_n).

    Exactly real by conjugate symmetry; the rounding-level imaginary part
    is asserted small, then dropped.
    """
    xi = np.asarray(points.xi if isinstance(points, PointSet) else points,
                    dtype=float)
    a = np.asarray(a, dtype=complex)
    if a.shape != xi.shape:
        raise DomainError(
            f"coefficient count {a.shape} does not match points {xi.shape}")
    n = len(xi)
    if n < 2:
        return 0.0
    D = np.abs(xi[:, None] - xi[None, :])
    iu = np.triu_indices(n, k=1)
    dvals = D[iu]
    uniq, inv = np.unique(dvals, return_inverse=True)
    rvals = np.atleast_1d(np.asarray(r_mu(measure, uniq, tol=tol)))
    R = np.zeros((n, n))
    R[iu] = rvals[inv]
    R = R + R.T
    total = complex(np.conj(a) @ (R @ a))
    scale = max(1.0, float(np.sum(np.abs(a)) ** 2 * np.max(R, initial=0.0)))
    if abs(total.imag) > 1e-10 * scale:
        raise DomainError(f"form imaginary part {total.imag!r} beyond rounding")
    return total.real


def hls_constants(sigma, delta=1.0):
    """Sharp constants for the discrete form with kernel |xi_m - xi_n|^{-sigma}.

    Lower: (2 - 2^{2-sigma}) zeta(sigma)/delta^sigma, degenerating to
    log4/delta at sigma = 1.  Upper (1 < sigma < 2): 2 zeta(sigma)/delta^sigma.
    sigma = 2 is served as the continuity limit pi^2/(3 delta^2) and flagged.
    """
    measures._check_delta(delta)
    if not (isinstance(sigma, (int, float)) and 0.0 < sigma <= 2.0):
        raise DomainError(f"sigma must lie in (0, 2], got {sigma!r}")
    if sigma == 1.0:
        return HlsConstants(math.log(4.0) / delta, None)
    if sigma == 2.0:
        z2 = math.pi ** 2 / 6.0
        return HlsConstants(z2 / delta ** 2, 2.0 * z2 / delta ** 2,
                            continuity_extension=True)
    z = specfun.zeta(sigma)
    lower = (2.0 - 2.0 ** (2.0 - sigma)) * z / delta ** sigma
    upper = 2.0 * z / delta ** sigma if sigma > 1.0 else None
    return HlsConstants(lower, upper)


def hls_gamma_route(sigma, delta=1.0):
    """The same constants through A/B and the kernel normalization.

    Divides the Gamma(1-sigma) zeta(1-sigma) closed forms by
    pi/((2 pi)^sigma sin(pi sigma/2)); equal to hls_constants by the zeta
    functional equation, so the pair is a dual-route consistency check.
    """
    measures._check_delta(delta)
    if not (isinstance(sigma, (int, float)) and 0.0 < sigma < 2.0
            and sigma != 1.0):
        raise DomainError(
            f"gamma-route sigma must lie in (0, 2) excluding 1, got {sigma!r}")
    C = math.pi / ((2.0 * math.pi) ** sigma * math.sin(math.pi * sigma / 2.0))
    mu = measures.PowerLaw(sigma)
    lower = lower_constant_A(mu, delta) / C
    upper = upper_constant_B(mu, delta) / C if sigma > 1.0 else None
    return HlsConstants(lower, upper)


def sharpness_witness(measure, delta, N, kind="lower", tol=1e-10):
    """Rayleigh ratio of the extremizing witness on xi_n = delta n.

    kind "lower": alternating coefficients; returns
    -(N+1)^{-1} sum_{k != 0} (N+1-|k|)(-1)^k r_mu(delta k), increasing to
    A(delta, mu).  kind "upper": constant coefficients; the unsigned sum,
    increasing to B(delta, mu).  N = 0 gives 0 (no off-diagonal terms).
    """
    if kind not in ("lower", "upper"):
        raise DomainError(f"unknown witness kind {kind!r}")
    N = int(N)
    if N < 0:
        raise DomainError("N must be nonnegative")
    if N == 0:
        return 0.0
    k = np.arange(1, N + 1, dtype=float)
    r = np.atleast_1d(np.asarray(r_mu(measure, delta * k, tol=tol)))
    signs = (-1.0) ** k if kind == "lower" else np.ones_like(k)
    s = 2.0 / (N + 1.0) * float(np.sum((N + 1.0 - k) * signs * r))
    return -s if kind == "lower" else s


def form_report(measure, delta, points, a, tol=1e-10):
    """Lower-bound verdict payload: {bound, form_value, slack, witness_ratio}.

    bound = -A sum|a|^2, slack = form - bound (>= 0 by the sharp bound),
    witness_ratio = (-form/sum|a|^2)/A, the fraction of the sharp constant
    this particular (points, coefficients) pair attains (<= 1).
    """
    ps = points if isinstance(points, PointSet) else PointSet(tuple(points), delta)
    A = lower_constant_A(measure, delta, tol)
    a = np.asarray(a, dtype=complex)
    value = evaluate_form(measure, ps, a, tol)
    energy = float(np.sum(np.abs(a) ** 2))
    bound = -A * energy
    return {
        "bound": bound,
        "form_value": value,
        "slack": value - bound,
        "witness_ratio": (-value / energy) / A if energy > 0 else 0.0,
    }


def random_point_set(rng, count, delta):
    """count points with gaps delta*(1 + Exp(1)): guaranteed separation."""
    gaps = delta * (1.0 + rng.exponential(size=count - 1)) if count > 1 else []
    xi = np.concatenate([[0.0], np.cumsum(gaps)]) + rng.uniform(-1.0, 1.0)
    return PointSet(tuple(xi), delta)


def points_from_csv(path):
    """Read points and complex coefficients from CSV header ``xi,re,im``."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["xi", "re", "im"]:
            raise DomainError(f"{path}: expected header 'xi,re,im'")
        xi, a = [], []
        for ln, line in enumerate(reader, start=2):
            if not line:
                continue
            if len(line) != 3:
                raise DomainError(f"{path}:{ln}: malformed row {line!r}")
            try:
                xi.append(float(line[0]))
                a.append(complex(float(line[1]), float(line[2])))
            except ValueError:
                raise DomainError(f"{path}:{ln}: non-numeric row {line!r}")
    if not xi:
        raise DomainError(f"{path}: no data rows")
    return np.asarray(xi), np.asarray(a)

"""Superposed extremal approximants G_mu (minorant) and H_mu (majorant).

For an admissible measure mu on (0, inf) with kernel transform f_mu, the
extremal type-2pi minorant interpolates f_mu and f_mu' on the half-integer
lattice,

    G_mu(x) = P(x) * sum_{s in Z + 1/2} [ f_mu(s)/(x-s)^2 + f_mu'(s)/(x-s) ],
    P(x) = (cos(pi x)/pi)^2,

and the majorant H_mu does the same over the integers (no derivative term
at s = 0).  Terms are paired across +-s, which makes the sum absolutely
convergent for every admissible family; writing b(u) = 1/(x-u) - 1/(x+u)
the paired term is exactly (f_mu * b)'(s), so the truncated tail is

    sum_{k >= 0} g(a0 + k),   g = (f_mu b)',

which we evaluate by Euler-Maclaurin: the integral part telescopes to
-f_mu(a0) b(a0) exactly, and the correction g(a0)/2 - g'(a0)/12 +
g'''(a0)/720 uses closed-form derivatives of f_mu and b.  With horizon
a0 >= max(512, |x| + 96) the truncation error sits at the 1e-13 level even
for the slowest admissible decay (power-law exponents near 2); this was
validated against a 16384-node horizon.

Dilation: Minorant(mu, delta) evaluates G_nu(delta x) with nu(E) = mu(delta E),
the extremal type-2pi*delta minorant of f_mu(x) - f_mu(1/delta).

Node values are cached per instance (reads are pure; the cache only grows),
so grid sweeps reuse one instance.  The measure-integral route
int (kernel defect at x) dmu is exposed both as an independent evaluation
strategy and as the DefectProfile cross-check.
"""

import math
import threading

import numpy as np

from dataclasses import dataclass

from . import measures
from .errors import AdmissibilityError, DomainError
from .kernels import KernelDefectAtPoint

_NODE_TOL = 1e-6
_MIN_HORIZON = 512
_GAP = 96
_CHUNK = 2_000_000  # max matrix cells per vectorized block


def _bder(x, u, k):
    """k-th u-derivative of b(u) = 1/(x-u) - 1/(x+u)."""
    fk = math.factorial(k)
    return fk * (1.0 / (x - u) ** (k + 1) + (-1.0) ** (k + 1) / (x + u) ** (k + 1))


class _Superposed:
    """Shared machinery; subclasses fix the lattice and admissibility."""

    kind = None
    _offset = None     # node lattice is arange + offset

    def __init__(self, measure, delta=1.0):
        measures._check_delta(delta)
        adm = measure.classify()
        self._require(measure, adm)
        self.measure = measure
        self.delta = float(delta)
        self.nu = measures.dilate(measure, self.delta)
        self._lock = threading.Lock()
        self._f = np.empty(0)
        self._fp = np.empty(0)
        self._tail_cache = {}

    # -- node cache -------------------------------------------------------

    def _nodes(self, count):
        """f_nu and f_nu' on the first ``count`` positive lattice nodes."""
        if len(self._f) < count:
            with self._lock:
                if len(self._f) < count:
                    s = np.arange(len(self._f), count, dtype=float) + self._offset
                    self._f = np.concatenate([self._f, np.asarray(self.nu.f(s))])
                    self._fp = np.concatenate([self._fp, np.asarray(self.nu.f_prime(s))])
        return self._f[:count], self._fp[:count]

    def _tail(self, x, a0):
        """Euler-Maclaurin value of sum_{k>=0} (f b)'(a0 + k), vectorized in x."""
        if a0 not in self._tail_cache:
            with self._lock:
                if a0 not in self._tail_cache:
                    self._tail_cache[a0] = tuple(
                        float(np.atleast_1d(d)[0]) for d in self.nu.f_derivs(a0))
        f0, f1, f2, f3, f4 = self._tail_cache[a0]
        b0 = _bder(x, a0, 0)
        b1 = _bder(x, a0, 1)
        b2 = _bder(x, a0, 2)
        b3 = _bder(x, a0, 3)
        b4 = _bder(x, a0, 4)
        g = f0 * b1 + f1 * b0
        gp = f2 * b0 + 2.0 * f1 * b1 + f0 * b2
        g3 = f4 * b0 + 4.0 * f3 * b1 + 6.0 * f2 * b2 + 4.0 * f1 * b3 + f0 * b4
        return -f0 * b0 + 0.5 * g - gp / 12.0 + g3 / 720.0

    # -- evaluation -------------------------------------------------------

    def value(self, x):
        """The approximant at x (vectorized, even in x bit-for-bit)."""
        x = np.asarray(x, dtype=float)
        scalar = x.ndim == 0
        ax = np.abs(np.atleast_1d(x)).ravel()
        if not np.all(np.isfinite(ax)):
            raise DomainError("evaluation points must be finite")
        y = ax * self.delta
        out = np.empty_like(y)
        horizon = max(_MIN_HORIZON, int(math.ceil(y.max(initial=0.0))) + _GAP)
        rows = max(1, _CHUNK // horizon)
        for i in range(0, len(y), rows):
            out[i:i + rows] = self._value_block(y[i:i + rows], horizon)
        out = out.reshape(np.atleast_1d(x).shape)
        return float(out[0]) if scalar else out

    def _value_block(self, ax, horizon):
        raise NotImplementedError

    def target(self, x):
        """What the approximant one-sidedly approximates at x.

        delta = 1: f_mu(x).  General delta: f_mu(x) - f_mu(1/delta), i.e.
        f_nu(delta x).  Returns the PLUS_INF sentinel where divergent.
        """
        if np.ndim(x) == 0:
            return self.nu.f(self.delta * float(x))
        return self.nu.f(self.delta * np.asarray(x, dtype=float))

    def value_via_defect(self, x, tol=1e-9):
        """Independent evaluation through the kernel-defect measure integral."""
        x = float(x)
        prof = self.defect(x, tol)
        t = self.target(x)
        if measures.is_plus_inf(t):
            raise DomainError("defect strategy needs a finite target value")
        if self.kind == "minorant":
            return t - prof.integral_value
        return t + prof.integral_value

    def defect(self, x, tol=1e-9):
        """Both routes to the one-sided gap |approximant - target| at x."""
        x = float(x)
        t = self.target(x)
        if measures.is_plus_inf(t):
            raise DomainError("defect undefined where the target diverges")
        v = self.value(x)
        series = (t - v) if self.kind == "minorant" else (v - t)
        dk = KernelDefectAtPoint(self.delta * x, self.kind)
        res = measures.integrate(lambda u: dk(u), self.nu, tol=tol)
        return DefectProfile(series, res.value, abs(series - res.value)
                             + res.abs_err_est)


@dataclass(frozen=True)
class DefectProfile:
    """Series-route and integral-route values of a pointwise defect."""

    series_value: float
    integral_value: float
    abs_err: float


class Minorant(_Superposed):
    """G: extremal type-2pi*delta minorant of f_mu(.) - f_mu(1/delta)."""

    kind = "minorant"
    _offset = 0.5

    def _require(self, measure, adm):
        if not adm.cond31:
            raise AdmissibilityError(
                f"minorant requires the cond31 moment; got {measure!r}")

    def _value_block(self, ax, horizon):
        fs, fps = self._nodes(horizon)
        s = np.arange(horizon, dtype=float) + 0.5
        dx = ax[:, None] - s[None, :]
        px = ax[:, None] + s[None, :]
        i_near = np.floor(ax).astype(int)
        du = ax - (i_near + 0.5)
        near = np.abs(du) < _NODE_TOL
        with np.errstate(divide="ignore", invalid="ignore"):
            direct = fs[None, :] / dx ** 2 + fps[None, :] / dx
        mirror = fs[None, :] / px ** 2 - fps[None, :] / px
        rows = np.nonzero(near)[0]
        if rows.size:
            direct[rows, i_near[rows]] = 0.0
        P = (np.sin(np.pi * du) / np.pi) ** 2
        total = np.sum(direct + mirror, axis=1) + self._tail(ax, horizon + 0.5)
        vals = P * total
        if rows.size:
            sn = i_near[rows]
            sinc2 = np.sinc(du[rows]) ** 2
            vals[rows] += sinc2 * (fs[sn] + du[rows] * fps[sn])
        return vals


class Majorant(_Superposed):
    """H: extremal type-2pi*delta majorant of f_mu(.) - f_mu(1/delta)."""

    kind = "majorant"
    _offset = 1.0

    def _require(self, measure, adm):
        if not adm.cond47:
            raise AdmissibilityError(
                f"majorant requires the cond47 moment (finite f_mu(0)); "
                f"{measure!r} only satisfies cond31")

    def _value_block(self, ax, horizon):
        fs, fps = self._nodes(horizon - 1)      # nodes 1 .. horizon-1
        if not hasattr(self, "_f00"):
            self._f00 = self.nu.f(0.0)
        f00 = self._f00
        s = np.arange(1, horizon, dtype=float)
        dx = ax[:, None] - s[None, :]
        px = ax[:, None] + s[None, :]
        i_near = np.rint(ax).astype(int)
        du = ax - i_near
        near = np.abs(du) < _NODE_TOL
        with np.errstate(divide="ignore", invalid="ignore"):
            direct = fs[None, :] / dx ** 2 + fps[None, :] / dx
            zero_term = f00 / ax ** 2
        mirror = fs[None, :] / px ** 2 - fps[None, :] / px
        rows = np.nonzero(near & (i_near >= 1))[0]
        if rows.size:
            direct[rows, i_near[rows] - 1] = 0.0
        rows0 = np.nonzero(near & (i_near == 0))[0]
        if rows0.size:
            zero_term[rows0] = 0.0
        P = (np.sin(np.pi * du) / np.pi) ** 2
        total = zero_term + np.sum(direct + mirror, axis=1) + self._tail(ax, float(horizon))
        vals = P * total
        if rows.size:
            sn = i_near[rows]
            sinc2 = np.sinc(du[rows]) ** 2
            vals[rows] += sinc2 * (fs[sn - 1] + du[rows] * fps[sn - 1])
        if rows0.size:
            vals[rows0] += f00 * np.sinc(ax[rows0]) ** 2
        return vals


def eval_G(measure, x):
    """G_mu(x): extremal type-2pi minorant of f_mu."""
    return Minorant(measure).value(x)


def eval_H(measure, x):
    """H_mu(x): extremal type-2pi majorant of f_mu (needs cond47)."""
    return Majorant(measure).value(x)


def eval_G_dilated(measure, delta, x):
    """G_nu(delta x), nu = mu(delta .): type-2pi*delta minorant of f_mu - f_mu(1/delta)."""
    return Minorant(measure, delta).value(x)


def eval_H_dilated(measure, delta, x):
    """H_nu(delta x): type-2pi*delta majorant of f_mu - f_mu(1/delta)."""
    return Majorant(measure, delta).value(x)


def eval_U(x):
    """Band-limited majorant of log|x| of type 2pi: U = -G_{HaarLog}.

    log|x| <= U(x) everywhere with int (U - log|x|) dx = log 2.
    """
    vals = Minorant(measures.HaarLog()).value(x)
    return -vals


def defect(measure, kind, x, delta=1.0, tol=1e-9):
    """DefectProfile of the chosen one-sided approximant at x."""
    cls = Minorant if kind == "minorant" else Majorant
    if kind not in ("minorant", "majorant"):
        raise DomainError(f"unknown kind {kind!r}")
    return cls(measure, delta).defect(x, tol)

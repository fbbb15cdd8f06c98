"""Fourier-space view of the blow-up in logarithmic coordinates.

With ``tau = -log(t / t0)`` and ``xi = log k`` the approach to blow-up turns
into a wave travelling towards large ``xi`` at speed 3/2.  The n-th spatial
derivative of the solution grows like ``exp((3n/2 - 2) tau)`` and for
``n > 4/3`` it is localised, i.e. a solitary wave.

Amplitudes are magnitudes of the continuous transform
``U(k) = int u(x) exp(-i k x) dx`` approximated by ``dx * fft`` on a tapered
window, so they can be compared directly with :func:`universal_spectrum`.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Sequence

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from .errors import DomainError, FlatFieldError, PostBlowupError, RankError, WindowError
from .profile import UniversalProfile, eval_w

SOLITON_SPEED = 1.5
DEFAULT_TAUS = (0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0)
EDGE_TOL = 1e-6
FLAT_FRACTION = 0.8


@dataclass(frozen=True)
class GridSpec:
    """Sampling window ``[xmin, xmax)`` with ``n`` points, ``n`` a power of two."""

    xmin: float = -50.0
    xmax: float = 50.0
    n: int = 2**20

    def __post_init__(self):
        if not self.xmax > self.xmin:
            raise DomainError("empty window")
        if self.n < 8 or self.n & (self.n - 1):
            raise DomainError(f"number of points must be a power of two >= 8, got {self.n}")

    @property
    def dx(self) -> float:
        return (self.xmax - self.xmin) / self.n

    @property
    def xs(self) -> np.ndarray:
        return self.xmin + self.dx * np.arange(self.n)


@dataclass(frozen=True)
class LogFourierField:
    tau: float
    xis: np.ndarray
    amps: np.ndarray
    n: int

    def __post_init__(self):
        if not np.isfinite(self.tau):
            raise DomainError("tau must be finite")
        if np.any(np.diff(self.xis) <= 0):
            raise DomainError("xi grid must be strictly increasing")
        if not np.all(np.isfinite(self.amps)) or np.any(self.amps < 0):
            raise DomainError("amplitudes must be finite and non-negative")

    def compensated(self, decay_comp: float) -> np.ndarray:
        return np.exp(-decay_comp * self.tau) * self.amps


def growth_exponent(n: int) -> float:
    """Exponent of ``exp(g tau)`` for the n-th derivative: ``3n/2 - 2``."""
    return 1.5 * n - 2.0


def _smoothstep(s):
    s = np.clip(s, 0.0, 1.0)
    with np.errstate(divide="ignore", over="ignore"):
        a = np.where(s > 0, np.exp(-1.0 / np.where(s > 0, s, 1.0)), 0.0)
        b = np.where(s < 1, np.exp(-1.0 / np.where(s < 1, 1.0 - s, 1.0)), 0.0)
    return a / (a + b)


def taper(grid: GridSpec) -> np.ndarray:
    """C-infinity window: 1 on the central 80 %, falling to 0 at the ends."""
    half = 0.5 * (grid.xmax - grid.xmin)
    r = np.abs(grid.xs - (grid.xmin + half))
    return 1.0 - _smoothstep((r - FLAT_FRACTION * half) / ((1 - FLAT_FRACTION) * half))


def windowed_transform(values, dx: float, window) -> np.ndarray:
    """Full complex DFT of ``window * values`` scaled by ``dx``."""
    return dx * np.fft.fft(np.asarray(window) * np.asarray(values))


def sample_and_transform(solution, t: float, n: int, grid: GridSpec = GridSpec(),
                         edge_tol: Optional[float] = EDGE_TOL,
                         t0: Optional[float] = None) -> LogFourierField:
    """Amplitude spectrum of the n-th derivative of ``solution`` at time ``t``.

    ``solution`` needs ``derivative(t, x, order)`` for orders 1 and 2 and,
    unless ``t0`` is given, a ``t0`` attribute.  Orders 0 and above 2 are
    obtained from the transform of the first or second derivative, which
    decay at the window edges where ``u`` itself does not.
    """
    if n < 0:
        raise DomainError("derivative order must be non-negative")
    t0 = solution.t0 if t0 is None else t0
    if not (t0 <= t < 0 or 0 < t <= t0):
        raise PostBlowupError(f"t = {t} not in [t0, 0) with t0 = {t0}")
    tau = -np.log(t / t0)

    m = 1 if n == 0 else min(n, 2)
    xs = grid.xs
    values = np.asarray(solution.derivative(t, xs, m), dtype=float)
    if not np.all(np.isfinite(values)):
        raise PostBlowupError("non-finite derivative samples")
    win = taper(grid)
    if edge_tol is not None:
        peak = np.max(np.abs(values))
        edge = np.max(np.abs(values[win < 1]))
        if edge > edge_tol * peak:
            raise WindowError(f"field at window edge is {edge / peak:.2e} of its peak; "
                              "enlarge the window")

    spec = grid.dx * np.fft.rfft(win * values)
    k = 2 * np.pi * np.fft.rfftfreq(grid.n, grid.dx)
    keep = slice(1, grid.n // 2)
    k = k[keep]
    amps = np.abs(spec[keep]) * k ** (n - m)
    return LogFourierField(float(tau), np.log(k), amps, n)


def _sine_integral(profile: UniversalProfile, t: float, k: float, eps: float) -> float:
    # int_0^inf w(t,x) exp(-eps x) sin(k x) dx, integrating by parts twice past
    # the first half period so the remaining integrand decays like x**(-5/3)
    c = profile.c

    def g(x):
        return eval_w(profile, t, x) * np.exp(-eps * x)

    def g2(x):
        w = eval_w(profile, t, x)
        w1 = 1.0 / (t - 3.0 * c * w * w)
        w2 = 6.0 * c * w * w1**3
        return (w2 - 2.0 * eps * w1 + eps * eps * w) * np.exp(-eps * x)

    a = np.pi / k
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        head = quad(lambda x: g(x) * np.sin(k * x), 0.0, a, limit=200,
                    epsabs=0.0, epsrel=1e-12)[0]
        scale = abs(head) * k * k + 1e-300
        tail = quad(g2, a, np.inf, weight="sin", wvar=k, limlst=200,
                    epsabs=1e-13 * scale)[0]
    return head - g(a) / k - tail / (k * k)


def universal_spectrum(profile: UniversalProfile, n: int, xis, t: float = 0.0,
                       eps: Optional[float] = None) -> np.ndarray:
    """``exp(n xi) |W(t, k = exp(xi))|`` for the universal profile.

    ``W`` is the transform of ``w(t, .)`` damped by ``exp(-eps |x|)``; the
    damping regularises the ``|x|**(1/3)`` growth.  ``t = 0`` gives the
    pure cusp, ``t = t0 < 0`` the limiting solitary-wave shape.  By default
    ``eps`` is ``1e-4`` times the smallest wavenumber requested.
    """
    if t > 0:
        raise DomainError("universal profile needs t <= 0")
    xis = np.asarray(xis, dtype=float)
    ks = np.exp(xis)
    if eps is None:
        eps = 1e-4 * ks.min()
    amps = np.array([2.0 * abs(_sine_integral(profile, t, k, eps)) for k in ks.ravel()])
    return amps.reshape(ks.shape) * ks**n


def small_k_slope(profile: UniversalProfile, n: int = 0, xi_min: float = -4.0,
                  t: float = 0.0, eps: Optional[float] = None, points: int = 41):
    """Log-log slope of the universal spectrum over one decade above ``exp(xi_min)``.

    Returns ``(slope, slope_at_half_eps)``.
    """
    xis = np.linspace(xi_min, xi_min + np.log(10.0), points)
    eps = 1e-4 * np.exp(xi_min) if eps is None else eps
    slopes = []
    for e in (eps, 0.5 * eps):
        amps = universal_spectrum(profile, n, xis, t=t, eps=e)
        slopes.append(float(np.polyfit(xis, np.log(amps), 1)[0]))
    return slopes[0], slopes[1]


class TrackPoint(NamedTuple):
    tau: float
    xi_peak: float
    amp_peak: float
    amp_comp: float


def _vertex(xi, y):
    # parabola through three (possibly unevenly spaced) points
    a, b, c = np.polyfit(xi - xi[1], y, 2)
    if a >= 0:
        return xi[1], y[1]
    d = -b / (2 * a)
    return xi[1] + d, c - b * b / (4 * a)


def track_wave(fields: Sequence[LogFourierField], decay_comp: float,
               locate_order: Optional[int] = None) -> List[TrackPoint]:
    """Peak trajectory of a sequence of spectra.

    The peak is the global maximum of ``exp((locate_order - n) xi) * amps``,
    refined by a three-point quadratic in ``xi`` on the log amplitude.  For
    ``n <= 1`` the spectrum has no interior maximum, so a higher
    ``locate_order`` picks the comoving point while ``amp_peak`` still reports
    the order-``n`` amplitude there.  ``amp_comp`` is ``amp_peak`` times
    ``exp(-decay_comp tau)``.
    """
    if len(fields) < 3:
        raise DomainError("need at least three fields")
    n = fields[0].n
    if any(f.n != n for f in fields):
        raise DomainError("all fields must carry the same derivative order")
    order = n if locate_order is None else locate_order
    out = []
    for fld in fields:
        with np.errstate(divide="ignore"):
            logs = np.log(fld.amps) + (order - n) * fld.xis
        i = int(np.argmax(logs))
        if i == 0 or i == logs.size - 1:
            raise FlatFieldError(f"maximum at grid boundary for tau = {fld.tau}")
        xi, ylog = _vertex(fld.xis[i - 1:i + 2], logs[i - 1:i + 2])
        amp = float(np.exp(ylog - (order - n) * xi))
        out.append(TrackPoint(fld.tau, float(xi), amp, amp * float(np.exp(-decay_comp * fld.tau))))
    return out


@dataclass(frozen=True)
class WaveFit:
    speed: float
    growth: float
    speed_residuals: np.ndarray
    growth_residuals: np.ndarray

    def report(self, digits: int = 17) -> str:
        return (f"speed={self.speed:.{digits}g}\n"
                f"growth_exponent={self.growth:.{digits}g}\n"
                f"speed_rms_residual={np.sqrt(np.mean(self.speed_residuals**2)):.{digits}g}\n"
                f"growth_rms_residual={np.sqrt(np.mean(self.growth_residuals**2)):.{digits}g}\n")


def fit_speed_and_growth(trajectory: Sequence[TrackPoint]) -> WaveFit:
    """Least-squares lines ``xi_peak ~ tau`` and ``log amp_peak ~ tau``."""
    if len(trajectory) < 3:
        raise RankError("need at least three trajectory points")
    tau = np.array([p.tau for p in trajectory], dtype=float)
    if np.ptp(tau) == 0:
        raise RankError("all tau values coincide")
    X = np.column_stack([tau, np.ones_like(tau)])
    fits = []
    for y in (np.array([p.xi_peak for p in trajectory]),
              np.log([p.amp_peak for p in trajectory])):
        coef, *_ = np.linalg.lstsq(X, y, rcond=None)
        fits.append((float(coef[0]), y - X @ coef))
    return WaveFit(fits[0][0], fits[1][0], fits[0][1], fits[1][1])


def synthetic_wave(taus, xis, speed: float = SOLITON_SPEED, growth: float = 1.0,
                   width: float = 1.0, n: int = 2) -> List[LogFourierField]:
    """Gaussian bump ``exp(growth tau) s(xi - speed tau)`` sampled on ``xis``."""
    xis = np.asarray(xis, dtype=float)
    return [LogFourierField(float(tau), xis,
                            np.exp(growth * tau - 0.5 * ((xis - speed * tau) / width) ** 2), n)
            for tau in taus]

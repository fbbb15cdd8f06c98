"""Classical solutions of scalar conservation laws by characteristics.

A smooth solution of ``U_t + f(U)_x = 0`` with data ``U0`` at ``t0`` is

    x = x0 + f'(U0(x0)) (t - t0),    U = U0(x0),

and the Burgers equation is the case ``f(U) = U**2 / 2``.  Writing
``u0 = f' o U0`` every scalar law shares its characteristic geometry with a
Burgers problem, so the inversion and the blow-up analysis below work on the
speed function ``u0`` only.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import cached_property
from typing import Callable, Optional, Tuple

import numpy as np

from .errors import (BracketError, ConvergenceError, DegenerateError,
                     DomainError, NoBlowupError, PostBlowupError)

Func = Callable[[np.ndarray], np.ndarray]

DEFAULT_INTERVAL = (-50.0, 50.0)
FD_STEPS = (1e-5, 1e-4, 1e-3)
SCAN_POINTS = 4096
BRACKET_WIDTH = 1e-13
TOL_CHAR = 1e-12
TOL_FRAME = 1e-9
# pre-blow-up guard on t relative to the computed blow-up time
BLOWUP_GUARD = 1e-14


def _fd1(f, h):
    def d(x):
        x = np.asarray(x, dtype=float)
        return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h)
    return d


def _fd2(f, h):
    def d(x):
        x = np.asarray(x, dtype=float)
        return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x)
                + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h)
    return d


def _fd3(f, h):
    def d(x):
        x = np.asarray(x, dtype=float)
        return (-f(x + 3 * h) + 8 * f(x + 2 * h) - 13 * f(x + h)
                + 13 * f(x - h) - 8 * f(x - 2 * h) + f(x - 3 * h)) / (8 * h**3)
    return d


class InitialData:
    """Initial profile with derivatives up to third order.

    Missing derivatives are replaced by fourth-order central differences of
    ``u0`` with steps ``1e-5``, ``1e-4`` and ``1e-3`` for orders 1 to 3.
    All callables must accept and return numpy arrays.
    """

    def __init__(self, u0: Func, d1: Optional[Func] = None, d2: Optional[Func] = None,
                 d3: Optional[Func] = None, interval: Tuple[float, float] = DEFAULT_INTERVAL,
                 name: str = ""):
        self.u0 = u0
        self.d1 = d1 if d1 is not None else _fd1(u0, FD_STEPS[0])
        self.d2 = d2 if d2 is not None else _fd2(u0, FD_STEPS[1])
        self.d3 = d3 if d3 is not None else _fd3(u0, FD_STEPS[2])
        a, b = map(float, interval)
        if not a < b:
            raise DomainError(f"bad working interval {interval}")
        self.interval = (a, b)
        self.name = name

    def __call__(self, x):
        return self.u0(x)

    def __repr__(self):
        return f"InitialData({self.name or '<anonymous>'}, interval={self.interval})"

    @cached_property
    def steepest(self) -> Tuple[float, float]:
        """Location and value of the minimum of ``u0'`` on the working interval.

        Coarse scan on 4096 points, then safeguarded Newton on ``u0'' = 0``.
        """
        a, b = self.interval
        xs = np.linspace(a, b, SCAN_POINTS)
        slopes = self.d1(xs)
        i = int(np.argmin(slopes))
        x = xs[i]
        lo, hi = xs[max(i - 1, 0)], xs[min(i + 1, SCAN_POINTS - 1)]
        if self.d2(lo) < 0 < self.d2(hi):
            for _ in range(100):
                g = float(self.d2(x))
                if g == 0.0:
                    break
                if g < 0:
                    lo = x
                else:
                    hi = x
                h = float(self.d3(x))
                xn = x - g / h if h > 0 else 0.5 * (lo + hi)
                if not lo < xn < hi:
                    xn = 0.5 * (lo + hi)
                done = abs(xn - x) <= 1e-13 * max(1.0, abs(x)) or hi - lo <= 1e-14
                x = xn
                if done:
                    break
        return float(x), float(self.d1(x))

    def shifted(self, dx: float, du: float) -> "InitialData":
        """Data ``x -> u0(x + dx) - du`` on the correspondingly shifted interval."""
        u0, d1, d2, d3 = self.u0, self.d1, self.d2, self.d3
        a, b = self.interval
        return InitialData(lambda x: u0(np.asarray(x) + dx) - du,
                           lambda x: d1(np.asarray(x) + dx),
                           lambda x: d2(np.asarray(x) + dx),
                           lambda x: d3(np.asarray(x) + dx),
                           interval=(a - dx, b - dx), name=self.name)


@dataclass(frozen=True)
class FluxModel:
    """Flux ``f`` with derivatives and a local inverse of ``f'``."""

    f: Func
    df: Func
    d2f: Func
    d3f: Func
    invert_df: Func
    name: str = ""


def burgers_flux() -> FluxModel:
    return FluxModel(f=lambda u: 0.5 * np.asarray(u) ** 2,
                     df=lambda u: np.asarray(u, dtype=float),
                     d2f=lambda u: np.ones_like(np.asarray(u, dtype=float)),
                     d3f=lambda u: np.zeros_like(np.asarray(u, dtype=float)),
                     invert_df=lambda v: np.asarray(v, dtype=float),
                     name="burgers")


def speed_data(flux: Optional[FluxModel], ic: InitialData) -> InitialData:
    """Characteristic speed ``u0 = f'(U0(x))`` as :class:`InitialData`.

    First and second derivatives use the chain rule; the third is a central
    difference of the analytic second derivative.
    """
    if flux is None or flux.name == "burgers":
        return ic
    U0, D1, D2 = ic.u0, ic.d1, ic.d2
    df, d2f, d3f = flux.df, flux.d2f, flux.d3f

    def u0(x):
        return df(U0(x))

    def d1(x):
        return d2f(U0(x)) * D1(x)

    def d2(x):
        U, U1 = U0(x), D1(x)
        return d3f(U) * U1**2 + d2f(U) * D2(x)

    return InitialData(u0, d1, d2, _fd1(d2, FD_STEPS[0]), interval=ic.interval,
                       name=f"{flux.name}:{ic.name}")


@dataclass(frozen=True)
class BlowupFrame:
    """Shifts taking a raw problem to the blow-up frame.

    Raw coordinates relate to frame coordinates by
    ``t_raw = t + t_shift``, ``x_raw = x + x_shift + v_shift (t - t0)`` and
    ``U_raw = U + u_shift``.  In the frame the singularity sits at
    ``t = x = U = 0`` and ``t0 = 1/u0'(0) < 0``.
    """

    t0: float
    x_shift: float = 0.0
    u_shift: float = 0.0
    v_shift: float = 0.0
    c: float = 1.0
    t_shift: float = 0.0

    def to_raw(self, t, x):
        t = np.asarray(t, dtype=float)
        return t + self.t_shift, np.asarray(x) + self.x_shift + self.v_shift * (t - self.t0)


def blowup_time(ic: InitialData, t0: float) -> float:
    """First time at which characteristics of ``ic`` cross."""
    _, slope = ic.steepest
    if not slope < 0:
        raise NoBlowupError(f"u0' >= 0 on {ic.interval}; no blow-up")
    return t0 - 1.0 / slope


def invert_characteristics(speed: InitialData, s: float, x):
    """Feet ``x0`` of the characteristics through ``x`` after elapsed time ``s``.

    Solves ``x0 + speed(x0) s = x`` by bracketed bisection to a width of
    ``1e-13`` followed by a Newton polish.  ``s`` is a scalar, ``x`` any
    array.  Assumes ``s`` is before blow-up, so the map is increasing.
    """
    x = np.asarray(x, dtype=float)
    if s == 0:
        return x.copy()
    a, b = speed.interval
    u = speed.u0

    def G(y):
        return y + u(y) * s - x

    d = np.abs(u(np.clip(x, a, b)) * s) + 1e-6
    lo = np.clip(x - d, a, b)
    hi = np.clip(x + d, a, b)
    for _ in range(200):
        need_lo = G(lo) > 0
        need_hi = G(hi) < 0
        if not (need_lo.any() or need_hi.any()):
            break
        if np.any(need_lo & (lo <= a)) or np.any(need_hi & (hi >= b)):
            raise BracketError(f"characteristic foot outside working interval {speed.interval}")
        d = np.where(need_lo | need_hi, 2 * d, d)
        lo = np.where(need_lo, np.clip(x - d, a, b), lo)
        hi = np.where(need_hi, np.clip(x + d, a, b), hi)
    else:
        raise BracketError("bracket expansion did not terminate")

    for _ in range(200):
        if np.all(hi - lo <= BRACKET_WIDTH):
            break
        mid = 0.5 * (lo + hi)
        left = G(mid) <= 0
        lo = np.where(left, mid, lo)
        hi = np.where(left, hi, mid)

    x0 = 0.5 * (lo + hi)
    resid = np.abs(G(x0))
    for _ in range(3):
        dG = 1.0 + speed.d1(x0) * s
        if np.any(dG <= 0):
            raise PostBlowupError("characteristic map not monotone; past blow-up")
        xn = x0 - G(x0) / dG
        rn = np.abs(G(xn))
        better = rn < resid
        x0 = np.where(better, xn, x0)
        resid = np.where(better, rn, resid)
    if np.any(resid > TOL_CHAR * np.maximum(1.0, np.abs(x))):
        raise ConvergenceError(f"characteristic residual {resid.max():.3e} above tolerance")
    return x0


def _check_times(speed: InitialData, t0: float, t: float) -> float:
    if t < t0:
        raise DomainError(f"t = {t} precedes initial time t0 = {t0}")
    try:
        tb = blowup_time(speed, t0)
    except NoBlowupError:
        return t - t0
    if t >= tb - BLOWUP_GUARD * max(1.0, abs(tb)):
        raise PostBlowupError(f"t = {t} is not before blow-up at t = {tb}")
    return t - t0


def _scalar_out(x, y):
    return float(y) if np.ndim(x) == 0 else y


def solve_burgers(ic: InitialData, t0: float, t: float, x):
    """Burgers solution ``u(t, x)`` for data ``ic`` given at ``t0``."""
    s = _check_times(ic, t0, t)
    x0 = invert_characteristics(ic, s, x)
    return _scalar_out(x, ic.u0(x0))


def solve_general(flux: FluxModel, ic: InitialData, t0: float, t: float, x):
    """Solution ``U(t, x)`` of ``U_t + f(U)_x = 0`` with ``U(t0) = ic``."""
    return CharacteristicSolution(ic, t0, flux)(t, x)


def spatial_derivative(ic: InitialData, t0: float, t: float, x):
    """``du/dx = u0'(x0) / (1 + u0'(x0)(t - t0))`` for the Burgers problem."""
    return CharacteristicSolution(ic, t0).derivative(t, x, 1)


class CharacteristicSolution:
    """Evaluable classical solution of a scalar law.

    ``flux=None`` means Burgers.  Instances are immutable after construction
    and safe to share between threads.
    """

    def __init__(self, ic: InitialData, t0: float, flux: Optional[FluxModel] = None):
        self.ic = ic
        self.t0 = float(t0)
        self.flux = flux
        self.speed = speed_data(flux, ic)

    @cached_property
    def t_blowup(self) -> float:
        return blowup_time(self.speed, self.t0)

    def foot(self, t: float, x):
        s = _check_times(self.speed, self.t0, t)
        return invert_characteristics(self.speed, s, x), s

    def __call__(self, t: float, x):
        x0, _ = self.foot(t, x)
        return _scalar_out(x, self.ic.u0(x0))

    def derivative(self, t: float, x, order: int = 1):
        """Exact ``d^n U / dx^n`` for ``n <= 2`` along the characteristics."""
        x0, s = self.foot(t, x)
        if order == 0:
            return _scalar_out(x, self.ic.u0(x0))
        denom = 1.0 + self.speed.d1(x0) * s
        if np.any(denom <= 0):
            raise PostBlowupError("characteristics have crossed")
        U1 = self.ic.d1(x0)
        if order == 1:
            return _scalar_out(x, U1 / denom)
        if order == 2:
            out = self.ic.d2(x0) / denom**2 - U1 * self.speed.d2(x0) * s / denom**3
            return _scalar_out(x, out)
        raise DomainError(f"exact derivative of order {order} not available")


def normalize_frame(flux: Optional[FluxModel], ic_raw: InitialData,
                    t0_raw: float = 0.0) -> BlowupFrame:
    """Find the blow-up frame of a raw problem.

    The shifts are applied in a fixed order: locate the minimiser ``x*`` of
    ``u0'``, shift the state by ``U0(x*)``, remove the Galilean speed
    ``f'(U0(x*))`` and finally move the time origin to the blow-up time.
    """
    flux = flux if flux is not None else burgers_flux()
    speed = speed_data(flux, ic_raw)
    x_star, slope = speed.steepest
    if not slope < 0:
        raise NoBlowupError(f"u0' >= 0 on {speed.interval}; no blow-up")
    a, b = speed.interval
    curv = float(speed.d3(x_star))
    if not curv > 0 or x_star <= a or x_star >= b:
        raise DegenerateError(
            f"u0''' = {curv:.3e} at x* = {x_star:.6g}; not a generic cusp blow-up")

    u_shift = float(ic_raw.u0(x_star))
    v_shift = float(flux.df(u_shift))
    t0 = 1.0 / slope
    frame = BlowupFrame(t0=t0, x_shift=x_star, u_shift=u_shift, v_shift=v_shift,
                        c=curv / (6.0 * slope**4), t_shift=t0_raw - t0)

    u = speed_data(*apply_frame(flux, ic_raw, frame))
    resid = (abs(float(u.u0(0.0))), abs(float(u.d2(0.0))), abs(t0 * float(u.d1(0.0)) - 1.0))
    if max(resid) > TOL_FRAME:
        raise ConvergenceError(f"blow-up frame residuals {resid} above {TOL_FRAME}")
    return frame


def apply_frame(flux: Optional[FluxModel], ic: InitialData,
                frame: BlowupFrame) -> Tuple[FluxModel, InitialData]:
    """Flux and initial data expressed in the blow-up frame."""
    flux = flux if flux is not None else burgers_flux()
    rho, v = frame.u_shift, frame.v_shift
    if rho == 0 and v == 0:
        flux_n = flux
    else:
        f, df, d2f, d3f, g = flux.f, flux.df, flux.d2f, flux.d3f, flux.invert_df
        f_rho = float(f(rho))
        flux_n = replace(
            flux,
            f=lambda U: f(np.asarray(U) + rho) - f_rho - v * np.asarray(U),
            df=lambda U: df(np.asarray(U) + rho) - v,
            d2f=lambda U: d2f(np.asarray(U) + rho),
            d3f=lambda U: d3f(np.asarray(U) + rho),
            invert_df=lambda w: g(np.asarray(w) + v) - rho,
            name=flux.name + "*" if flux.name == "burgers" else flux.name,
        )
    return flux_n, ic.shifted(frame.x_shift, rho)

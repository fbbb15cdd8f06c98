"""Universal cusp profile ``w(t, x)``.

For ``t <= 0`` the profile is the unique real root of

    x = w t - c w**3,    c > 0,

which is a depressed cubic ``w**3 + p w + q = 0`` with ``p = -t/c >= 0`` and
``q = x/c``.  Since ``p >= 0`` the cubic is monotone in ``w`` and the real
root is given in closed form by the hyperbolic-sine branch of Cardano's
formula.  One or two Newton steps then bring the residual down to rounding.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError

TOL_RESIDUAL = 1e-12
MAX_NEWTON = 50
# |t|**3 < CUSP_SWITCH * c**2 * x**2 selects the t = 0 cube-root branch
CUSP_SWITCH = 1e-30


@dataclass(frozen=True)
class UniversalProfile:
    """Cusp profile with coefficient ``c``."""

    c: float = 1.0

    def __post_init__(self):
        if not np.isfinite(self.c) or self.c <= 0:
            raise DomainError(f"cusp coefficient must be positive, got {self.c}")

    def __call__(self, t, x):
        return eval_w(self, t, x)

    def dx(self, t, x, order=1):
        """Spatial derivative of ``w`` of order 0, 1 or 2."""
        return w_derivative(self, t, x, order)


def _check_time(t):
    t = np.asarray(t, dtype=float)
    if np.any(t > 0):
        raise DomainError("universal profile is only defined for t <= 0")
    return t


def eval_w(profile: UniversalProfile, t, x):
    """Evaluate the universal profile.

    Parameters
    ----------
    profile : UniversalProfile
    t : float or array_like
        Time(s), all ``<= 0``.
    x : float or array_like
        Position(s); broadcast against ``t``.

    Returns
    -------
    float or ndarray
        The real root ``w`` of ``x = w t - c w**3``.
    """
    c = profile.c
    t = _check_time(t)
    x = np.asarray(x, dtype=float)
    t, x = np.broadcast_arrays(t, x)
    scalar = t.ndim == 0

    p = -t / c
    q = x / c
    cusp = p**3 < CUSP_SWITCH * q**2
    cusp |= p == 0

    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        root_p = np.sqrt(p / 3.0)
        arg = 1.5 * q / p / root_p
        w = np.where(cusp, -np.cbrt(q), -2.0 * root_p * np.sinh(np.arcsinh(arg) / 3.0))

    # Newton polish on F(w) = w t - c w^3 - x, F' = t - 3 c w^2 < 0 off the origin
    scale = np.maximum(1.0, np.abs(x))
    for _ in range(MAX_NEWTON):
        resid = w * t - c * w**3 - x
        bad = np.abs(resid) > TOL_RESIDUAL * scale
        if not np.any(bad):
            break
        slope = t - 3.0 * c * w**2
        step = np.where(bad & (slope != 0), resid / np.where(slope == 0, 1.0, slope), 0.0)
        w = w - step
    else:
        resid = w * t - c * w**3 - x
        if np.any(np.abs(resid) > TOL_RESIDUAL * scale):
            raise ConvergenceError("cubic residual above tolerance after Newton polish")

    w = w + 0.0  # normalise -0.0
    return float(w) if scalar else w


def w_derivative(profile: UniversalProfile, t, x, order=1):
    """``d^n w / dx^n`` for ``n`` in ``{0, 1, 2}`` by implicit differentiation.

    ``w' = 1 / (t - 3 c w^2)`` and ``w'' = 6 c w (w')**3``.  Both are singular
    at ``t = x = 0``.
    """
    w = eval_w(profile, t, x)
    if order == 0:
        return w
    c = profile.c
    with np.errstate(divide="ignore"):
        w1 = 1.0 / (np.asarray(t, dtype=float) - 3.0 * c * np.asarray(w) ** 2)
    if order == 1:
        return w1
    if order == 2:
        return 6.0 * c * w * w1**3
    raise DomainError(f"derivative order {order} not available analytically")


def rescale_profile(profile: UniversalProfile, c_new: float) -> UniversalProfile:
    """Move along the scaling family of the profile.

    With ``kappa = c / c_new`` the two profiles are related by
    ``sqrt(kappa) * w_c(t, x / sqrt(kappa)) == w_{c_new}(t, x)``.
    """
    if not c_new > 0:
        raise DomainError(f"c_new must be positive, got {c_new}")
    return UniversalProfile(float(c_new))


def w_slope_at_origin(profile: UniversalProfile, t: float) -> float:
    """``dw/dx`` at ``x = 0``, which is ``1/t`` for every ``c``."""
    if t >= 0:
        raise DomainError("slope at the origin diverges at t = 0 (blow-up)")
    return 1.0 / t

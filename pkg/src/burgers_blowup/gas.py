"""Simple-wave compression in an ideal polytropic gas.

Along a simple wave the density is carried with speed

    s(rho) = (gamma + 1)/(gamma - 1) * sqrt(A gamma) * rho**((gamma - 1)/2),

which makes the density a solution of a scalar conservation law with
``f'(rho) = s(rho)``.  The frame constants ``(t0, x1, rho1, v1)`` are found
by :func:`~burgers_blowup.characteristics.normalize_frame`; nothing here is
tabulated.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .characteristics import (BlowupFrame, FluxModel, InitialData, apply_frame,
                              normalize_frame)
from .errors import DomainError
from .renorm import convergence_sweep

GAS_INTERVAL = (-20.0, 20.0)


def arctan_density(interval=GAS_INTERVAL) -> InitialData:
    """``rho0(x) = 2 - arctan(x)`` with analytic derivatives."""
    return InitialData(
        lambda x: 2.0 - np.arctan(x),
        lambda x: -1.0 / (1.0 + np.asarray(x) ** 2),
        lambda x: 2.0 * np.asarray(x) / (1.0 + np.asarray(x) ** 2) ** 2,
        lambda x: (2.0 - 6.0 * np.asarray(x) ** 2) / (1.0 + np.asarray(x) ** 2) ** 3,
        interval=interval, name="arctan")


@dataclass(frozen=True)
class GasParams:
    gamma: float = 5.0 / 3.0
    A: float = 3.0 / 5.0
    rho0: InitialData = field(default_factory=arctan_density)

    def __post_init__(self):
        if not self.gamma > 1:
            raise DomainError(f"gamma must exceed 1, got {self.gamma}")
        if not self.A > 0:
            raise DomainError(f"A must be positive, got {self.A}")

    @property
    def prefactor(self) -> float:
        g = self.gamma
        return (g + 1) / (g - 1) * np.sqrt(self.A * g)

    @property
    def exponent(self) -> float:
        return 0.5 * (self.gamma - 1)


def gas_characteristic_speed(p: GasParams, rho):
    rho = np.asarray(rho, dtype=float)
    if np.any(rho <= 0):
        raise DomainError("density must be positive")
    out = p.prefactor * rho**p.exponent
    return float(out) if out.ndim == 0 else out


def gas_flux(p: GasParams) -> FluxModel:
    """Density flux ``f`` with ``f'(rho) = s(rho)`` (raw, unshifted)."""
    K, m = p.prefactor, p.exponent
    return FluxModel(
        f=lambda r: K / (m + 1) * np.asarray(r, dtype=float) ** (m + 1),
        df=lambda r: K * np.asarray(r, dtype=float) ** m,
        d2f=lambda r: K * m * np.asarray(r, dtype=float) ** (m - 1),
        d3f=lambda r: K * m * (m - 1) * np.asarray(r, dtype=float) ** (m - 2),
        invert_df=lambda v: (np.asarray(v, dtype=float) / K) ** (1.0 / m),
        name="gas",
    )


def build_gas_problem(p: GasParams = GasParams()):
    """Density variation ``U`` in the blow-up frame.

    Returns ``(flux, ic, frame)`` where ``flux.df(U) = s(U + rho1) - v1``,
    ``ic(x) = rho0(x + x1) - rho1`` and the frame carries ``t0``,
    ``x_shift = x1``, ``u_shift = rho1`` and ``v_shift = v1``.
    """
    raw = gas_flux(p)
    frame = normalize_frame(raw, p.rho0, t0_raw=0.0)
    flux, ic = apply_frame(raw, p.rho0, frame)
    return flux, ic, frame


def frame_constants(frame: BlowupFrame) -> dict:
    return {"t0": frame.t0, "x1": frame.x_shift, "rho1": frame.u_shift,
            "v1": frame.v_shift, "c": frame.c}


def gas_convergence(p: GasParams, lambdas, t_eval, xs):
    flux, ic, frame = build_gas_problem(p)
    return convergence_sweep(flux, ic, frame, lambdas, t_eval, xs)

"""Renormalisation operator acting on solutions and fluxes.

In physical space ``G_lam u(t, x) = lam**(1/3) u(lam**(-2/3) t, x / lam)`` and
in Fourier space ``G_lam u(t, k) = lam**(4/3) u(lam**(-2/3) t, lam k)``.  The
operators compose multiplicatively, ``G_a G_b = G_{ab}``; in the logarithmic
parameter ``log(lam)`` the same law reads additively.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .characteristics import BlowupFrame, CharacteristicSolution, FluxModel, InitialData
from .errors import DegenerateError, DomainError
from .profile import UniversalProfile, eval_w


@dataclass(frozen=True)
class SampledField:
    """Profile at fixed ``t`` on a uniform grid."""

    t: float
    xs: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=float)
        vals = np.asarray(self.values)
        if xs.ndim != 1 or xs.size < 2 or vals.shape != xs.shape:
            raise DomainError("need at least two samples with matching values")
        dx = np.diff(xs)
        if not np.all(dx > 0):
            raise DomainError("grid must be strictly increasing")
        if np.max(np.abs(dx - dx.mean())) > 1e-12 * max(1.0, np.abs(xs).max()):
            raise DomainError("grid must be uniform")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "values", vals)

    @property
    def dx(self) -> float:
        return float(self.xs[1] - self.xs[0])


def _check_lambda(lam):
    if not lam > 0:
        raise DomainError(f"lambda must be positive, got {lam}")


def renorm_x(u, lam: float, t, x):
    """``lam**(1/3) * u(lam**(-2/3) t, x / lam)`` for a callable ``u(t, x)``.

    Sweeps use ``lam >= 1``; values in ``(0, 1)`` are accepted so that the
    group law can be exercised in both directions.
    """
    _check_lambda(lam)
    return lam ** (1.0 / 3.0) * u(lam ** (-2.0 / 3.0) * t, np.asarray(x, dtype=float) / lam)


def renorm_k(uk, lam: float, t, k):
    """``lam**(4/3) * uk(lam**(-2/3) t, lam k)`` for a k-space callable."""
    _check_lambda(lam)
    k = np.asarray(k, dtype=float)
    if np.any(k < 0):
        raise DomainError("wavenumbers must be non-negative")
    return lam ** (4.0 / 3.0) * uk(lam ** (-2.0 / 3.0) * t, lam * k)


def renorm_field(u, lam: float, t: float, xs) -> SampledField:
    return SampledField(t, xs, renorm_x(u, lam, t, xs))


def renorm_flux(flux: FluxModel, lam: float) -> FluxModel:
    """Flux of the renormalised solution, ``lam**(2/3) f(lam**(-1/3) U)``."""
    _check_lambda(lam)
    a = lam ** (-1.0 / 3.0)
    f, df, d2f, d3f, g = flux.f, flux.df, flux.d2f, flux.d3f, flux.invert_df
    return replace(
        flux,
        f=lambda U: f(a * np.asarray(U)) / a**2,
        df=lambda U: df(a * np.asarray(U)) / a,
        d2f=lambda U: d2f(a * np.asarray(U)),
        d3f=lambda U: a * d3f(a * np.asarray(U)),
        invert_df=lambda v: g(a * np.asarray(v)) / a,
    )


def convergence_errors(u, target, lambdas, t_eval: float, xs):
    """Sup-norm distance between ``G_lam u`` and ``target`` on ``xs``."""
    xs = np.asarray(xs, dtype=float)
    out = []
    for lam in lambdas:
        if lam < 1:
            raise DomainError(f"sweeps need lambda >= 1, got {lam}")
        diff = renorm_x(u, lam, t_eval, xs) - target
        out.append((float(lam), float(np.max(np.abs(diff)))))
    return out


def convergence_sweep(flux: FluxModel, ic: InitialData, frame: BlowupFrame,
                      lambdas, t_eval: float, xs):
    """Distance of the renormalised solution from the universal profile.

    ``flux`` and ``ic`` must already be in the blow-up frame.  The target is
    ``w(t_eval, x) / f''(0)`` with ``w`` at the frame's cusp coefficient.
    Returns a list of ``(lambda, sup_error)``.
    """
    f2 = float(flux.d2f(0.0))
    if abs(f2) < 1e-12:
        raise DegenerateError("f''(0) vanishes; no universal limit")
    if not frame.t0 <= t_eval < 0:
        raise DomainError(f"t_eval must lie in [t0, 0) = [{frame.t0}, 0)")
    solution = CharacteristicSolution(ic, frame.t0, flux)
    target = eval_w(UniversalProfile(frame.c), t_eval, xs) / f2
    return convergence_errors(solution, target, lambdas, t_eval, xs)

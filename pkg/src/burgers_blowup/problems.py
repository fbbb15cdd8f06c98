"""Built-in initial data and fluxes addressable by string id."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import Polynomial
from scipy.special import erf

from .characteristics import (BlowupFrame, FluxModel, InitialData, apply_frame,
                              burgers_flux, normalize_frame)
from .errors import DomainError
from .gas import GasParams, build_gas_problem

# wide enough that feet of characteristics through a [-50, 50] window stay inside
ERF_INTERVAL = (-64.0, 64.0)


def erf_data(interval=ERF_INTERVAL) -> InitialData:
    """``u0(x) = -(sqrt(pi)/2) erf(x)``, already in the blow-up frame with t0 = -1."""
    return InitialData(
        lambda x: -0.5 * np.sqrt(np.pi) * erf(x),
        lambda x: -np.exp(-np.asarray(x) ** 2),
        lambda x: 2.0 * np.asarray(x) * np.exp(-np.asarray(x) ** 2),
        lambda x: (2.0 - 4.0 * np.asarray(x) ** 2) * np.exp(-np.asarray(x) ** 2),
        interval=interval, name="erf")


def odd_poly_data(coeffs, interval=(-50.0, 50.0)) -> InitialData:
    """``u0(x) = c1 x + c3 x**3 + c5 x**5 + ...`` from the odd coefficients."""
    coeffs = [float(c) for c in coeffs]
    if not coeffs:
        raise DomainError("polynomial needs at least one coefficient")
    full = np.zeros(2 * len(coeffs))
    full[1::2] = coeffs
    P = Polynomial(full)
    d1, d2, d3 = P.deriv(1), P.deriv(2), P.deriv(3)
    label = "poly:" + ",".join(f"{c:g}" for c in coeffs)
    return InitialData(P, d1, d2, d3, interval=interval, name=label)


def parse_ic(spec: str) -> InitialData:
    if spec == "erf":
        return erf_data()
    if spec.startswith("poly:"):
        try:
            coeffs = [float(c) for c in spec[5:].split(",") if c.strip()]
        except ValueError as exc:
            raise DomainError(f"bad polynomial spec {spec!r}") from exc
        return odd_poly_data(coeffs)
    raise DomainError(f"unknown initial condition {spec!r}")


@dataclass(frozen=True)
class Problem:
    """A problem already expressed in its blow-up frame."""

    flux: FluxModel
    ic: InitialData
    frame: BlowupFrame
    label: str


def resolve_problem(ic: str = "erf", flux: str = "burgers", gamma: float = 5.0 / 3.0,
                    A: float = 3.0 / 5.0) -> Problem:
    if ic.startswith("burgers-"):
        ic = ic[len("burgers-"):]
    if ic == "gas" or flux == "gas":
        f, u0, frame = build_gas_problem(GasParams(gamma=gamma, A=A))
        return Problem(f, u0, frame, "gas")
    if flux != "burgers":
        raise DomainError(f"unknown flux {flux!r}")
    data = parse_ic(ic)
    t0_raw = -1.0 if ic == "erf" else 0.0
    frame = normalize_frame(burgers_flux(), data, t0_raw)
    f, u0 = apply_frame(burgers_flux(), data, frame)
    label = "burgers-erf" if ic == "erf" else f"burgers-{data.name}"
    return Problem(f, u0, frame, label)

import numpy as np
import pytest

from burgers_blowup.characteristics import CharacteristicSolution, speed_data
from burgers_blowup.problems import resolve_problem


@pytest.fixture(scope="session")
def erf_problem():
    return resolve_problem("erf")


@pytest.fixture(scope="session")
def gas_problem():
    return resolve_problem("gas")


@pytest.fixture(scope="session")
def erf_solution(erf_problem):
    p = erf_problem
    return CharacteristicSolution(p.ic, p.frame.t0, p.flux)


@pytest.fixture(scope="session")
def gas_solution(gas_problem):
    p = gas_problem
    return CharacteristicSolution(p.ic, p.frame.t0, p.flux)


def forward_map_oracle(flux, ic, t0, t, xq, x0_range=(-8.0, 8.0), npts=10**6):
    """Solution at ``xq`` from forward characteristics, no root finding.

    Push a dense grid of feet forward, then interpolate the carried value
    against the arrival point with a local four-point Lagrange cubic.
    """
    speed = speed_data(flux, ic)
    x0 = np.linspace(*x0_range, npts)
    xa = x0 + speed.u0(x0) * (t - t0)
    ua = ic.u0(x0)
    assert np.all(np.diff(xa) > 0)
    xq = np.atleast_1d(np.asarray(xq, dtype=float))
    j = np.clip(np.searchsorted(xa, xq) - 2, 0, npts - 4)
    idx = j[:, None] + np.arange(4)[None, :]
    X, U = xa[idx], ua[idx]
    out = np.zeros_like(xq)
    for a in range(4):
        L = np.ones_like(xq)
        for b in range(4):
            if a != b:
                L *= (xq - X[:, b]) / (X[:, a] - X[:, b])
        out += L * U[:, a]
    return out

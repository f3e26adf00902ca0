"""Shared fixtures: the expensive solves run once per session."""

import numpy as np
import pytest

import polaron as pl

# default and refinement resolutions used throughout the suite
DEFAULT_GRID = (3000, 30.0)
FINE_GRID = (6000, 40.0)
MOMENTUM_GRID = (4000, 10.0)

# independent grid for the imaginary-time cross-check; the explicit flow is
# stable for step < h²/2 = 8e-4 here (the Hartree potential only lowers the
# spectral radius)
ORACLE_GRID = (500, 20.0)
ORACLE_STEP = 7e-4


@pytest.fixture(scope="session")
def state_default():
    return pl.solve_pekar(pl.SolverOptions(grid=DEFAULT_GRID))


@pytest.fixture(scope="session")
def state_fine():
    return pl.solve_pekar(pl.SolverOptions(grid=FINE_GRID))


@pytest.fixture(scope="session")
def mp_default(state_default):
    return pl.momentum_profile(state_default, pl.build_grid(*MOMENTUM_GRID))


@pytest.fixture(scope="session")
def mp_fine(state_fine):
    return pl.momentum_profile(state_fine, pl.build_grid(*MOMENTUM_GRID))


@pytest.fixture(scope="session")
def oracle_pair():
    """(imaginary-time state, SCF state) on the same independent grid."""
    opts = pl.SolverOptions(grid=ORACLE_GRID, tol_energy=1e-12, max_iter=2_000_000)
    flow = pl.imaginary_time_oracle(opts, step=ORACLE_STEP)
    scf = pl.solve_pekar(pl.SolverOptions(grid=ORACLE_GRID))
    return flow, scf


@pytest.fixture(scope="session")
def gaussian_impostor_state():
    """Normalized Gaussian packaged as a PekarState; not a minimizer."""
    grid = pl.build_grid(*DEFAULT_GRID)
    r = grid.nodes
    psi_vals = np.pi**-0.75 * np.exp(-(r**2) / 2.0)
    psi = pl.RadialFunction(grid, psi_vals)
    nrm = np.sqrt(pl.integrate_3d(psi.with_values(psi_vals**2)))
    psi = psi.with_values(psi_vals / nrm)
    rho = psi.with_values(psi.values**2)
    dpsi = pl.radial_derivative(psi)
    T = pl.integrate_3d(dpsi.with_values(dpsi.values**2))
    D = pl.coulomb_bilinear(rho, rho)
    return pl.PekarState(psi=psi, rho=rho, T=T, D=D, eP=T - D, mu=2 * D - T,
                         iterations=0, residual=np.inf)

"""Batch front end: solve / verify / massbound subcommands.

All artifacts are deterministic for a fixed configuration: no timestamps,
fixed key order, 17-significant-digit numeric fields, and every file embeds
the resolved configuration plus its SHA-256 content hash.

Exit codes: 0 success, 1 verification failure, 2 config error,
3 numerical/convergence failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .config import ConfigError, RunConfig, load_config
from .errors import ConvergenceError, DomainError, NumericalError, StepSizeError
from .grid import build_grid
from .massbound import (
    CutoffSpec,
    bound_rhs,
    kinetic_term,
    mass_coefficient,
    pairing_term,
    potential_term,
)
from .momentum import el_residual_momentum, field_energy, density_expectation
from .momentum import MomentumProfile, RadialTestFunction, momentum_profile
from .solver import PekarState, SolverOptions, el_residual_position, solve_pekar

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def _artifact_header(cfg: RunConfig) -> str:
    flat = json.dumps(cfg.to_flat_dict(), sort_keys=True)
    return f"# config_hash={cfg.content_hash()}\n# config={flat}\n"


def run_solver(cfg: RunConfig) -> PekarState:
    opts = SolverOptions(
        grid=(cfg.grid_n, cfg.grid_rmax),
        mixing=cfg.solver_mixing,
        tol_energy=cfg.solver_tol_energy,
        tol_psi=cfg.solver_tol_psi,
        max_iter=cfg.solver_max_iter,
    )
    return solve_pekar(opts)


def run_pipeline(cfg: RunConfig) -> tuple[PekarState, MomentumProfile]:
    state = run_solver(cfg)
    pgrid = build_grid(cfg.momentum_n, cfg.momentum_pmax)
    return state, momentum_profile(state, pgrid)


def _write_state_json(cfg: RunConfig, state: PekarState, out: Path) -> None:
    doc = {
        "config": cfg.to_flat_dict(),
        "config_hash": cfg.content_hash(),
        "state": {
            "T": state.T,
            "D": state.D,
            "eP": state.eP,
            "mu": state.mu,
            "iterations": state.iterations,
            "residual": state.residual,
            "grid": {"n": state.psi.grid.n, "rmax": state.psi.grid.rmax, "h": state.psi.grid.h},
        },
    }
    (out / "pekar_state.json").write_text(
        json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def _write_profiles_csv(cfg: RunConfig, state: PekarState, mp: MomentumProfile, out: Path) -> None:
    from .coulomb import coulomb_potential

    phi_pos = coulomb_potential(state.rho)
    lines = [_artifact_header(cfg).rstrip("\n")]
    lines.append("r,psi,rho,Phi")
    g = state.psi.grid
    for i in range(g.n):
        lines.append(",".join(_fmt(v) for v in (
            g.nodes[i], state.psi.values[i], state.rho.values[i], phi_pos.values[i])))
    lines.append("")
    lines.append("p,psi_hat,dpsi_hat,phi")
    pg = mp.pgrid
    for i in range(pg.n):
        lines.append(",".join(_fmt(v) for v in (
            pg.nodes[i], mp.psi_hat.values[i], mp.dpsi_hat.values[i], mp.phi.values[i])))
    (out / "profiles.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")


def cmd_solve(cfg: RunConfig, out: Path) -> int:
    try:
        state, mp = run_pipeline(cfg)
    except ConvergenceError as exc:
        history = [{"energy": e, "dpsi": d} for e, d in exc.history]
        (out / "residual_history.json").write_text(
            json.dumps({"error": str(exc), "history": history}, indent=2) + "\n",
            encoding="utf-8",
        )
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (NumericalError, StepSizeError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    _write_state_json(cfg, state, out)
    _write_profiles_csv(cfg, state, mp, out)
    return EXIT_OK


def verification_rows(cfg: RunConfig, state: PekarState, mp: MomentumProfile,
                      psi_hat_ok: bool = True) -> list[tuple]:
    """(check_name, computed, expected, tolerance, pass) for the identity suite."""
    chi_one = CutoffSpec(eps=1.0, shape="one")
    R0 = pairing_term(mp, chi_one)
    Q10 = kinetic_term(mp, chi_one)
    Q20 = potential_term(mp, chi_one, cfg.quad_reduced_n, cfg.quad_angular_nodes)
    f0 = 1.0 + (Q10 - Q20) / 3.0 + 4.0 * R0 / 3.0
    one = RadialTestFunction(lambda p: np.ones_like(p), bounded=True, name="1")

    rows = [
        ("D=2T", state.D, 2.0 * state.T, 1e-4 * abs(2.0 * state.T)),
        ("eP=-T", state.eP, -state.T, 1e-4 * abs(state.T)),
        ("mu=3T", state.mu, 3.0 * state.T, 1e-4 * abs(3.0 * state.T)),
        ("psi_hat_positive", 1.0 if psi_hat_ok else 0.0, 1.0, 0.0),
        ("plancherel", density_expectation(mp, one), 1.0, 1e-5),
        ("field_energy=D", field_energy(mp), state.D, 1e-4 * abs(state.D)),
        ("el_residual_position", el_residual_position(state), 0.0, 1e-6),
        ("el_residual_momentum",
         el_residual_momentum(mp, cfg.quad_reduced_n, cfg.quad_angular_nodes), 0.0, 1e-3),
        ("R=-3/2", R0, -1.5, 1e-3),
        ("Q1-Q2=3", Q10 - Q20, 3.0, 1e-2),
        ("f=0", f0, 0.0, 2e-2),
    ]
    return [(name, comp, exp, tol, abs(comp - exp) <= tol) for name, comp, exp, tol in rows]


def cmd_verify(cfg: RunConfig, out: Path) -> int:
    try:
        state = run_solver(cfg)
    except (ConvergenceError, NumericalError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    pgrid = build_grid(cfg.momentum_n, cfg.momentum_pmax)
    try:
        mp = momentum_profile(state, pgrid)
        psi_hat_ok = True
    except DomainError:
        # diagnostics must still be tabulated; the row records the failure
        mp = momentum_profile(state, pgrid, tail_floor=float("inf"))
        psi_hat_ok = False
    rows = verification_rows(cfg, state, mp, psi_hat_ok)
    lines = [_artifact_header(cfg).rstrip("\n"), "check_name,computed,expected,tolerance,pass"]
    for name, comp, exp, tol, ok in rows:
        lines.append(f"{name},{_fmt(comp)},{_fmt(exp)},{_fmt(tol)},{_fmt(ok)}")
    (out / "verify.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    return EXIT_OK if all(ok for *_, ok in rows) else EXIT_VERIFY_FAILED


def cmd_massbound(cfg: RunConfig, out: Path) -> int:
    try:
        state, mp = run_pipeline(cfg)
    except (ConvergenceError, NumericalError, StepSizeError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    lines = [_artifact_header(cfg).rstrip("\n"), "eps,R,Q1,Q2,f,m_lower"]
    for eps in cfg.cutoff_eps_list:
        cut = CutoffSpec(eps=eps, shape=cfg.cutoff_shape)
        rep = bound_rhs(mp, cut, cfg.quad_reduced_n, cfg.quad_angular_nodes)
        lines.append(",".join(_fmt(v) for v in (eps, rep.R, rep.Q1, rep.Q2, rep.f, rep.m_lower)))
    endpoint = bound_rhs(mp, CutoffSpec(eps=1.0, shape="one"),
                         cfg.quad_reduced_n, cfg.quad_angular_nodes)
    lines.append(",".join(_fmt(v) for v in (
        0.0, endpoint.R, endpoint.Q1, endpoint.Q2, endpoint.f, endpoint.m_lower)))
    (out / "massbound.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="polaron",
        description="Pekar ground state, momentum observables and the "
                    "inverse-mass bound diagnostic.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("solve", "solve the ground state and write state/profile artifacts"),
        ("verify", "run the identity suite and write verify.csv"),
        ("massbound", "sweep the cutoff scale and write massbound.csv"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="path to the JSON config")
        p.add_argument("--out", default=None, help="output directory (overrides output.dir)")
    args = parser.parse_args(argv)

    try:
        cfg = load_config(args.config)
    except (ConfigError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    out = Path(args.out) if args.out else Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)

    handler = {"solve": cmd_solve, "verify": cmd_verify, "massbound": cmd_massbound}[args.command]
    return handler(cfg, out)


if __name__ == "__main__":
    raise SystemExit(main())

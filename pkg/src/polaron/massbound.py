"""Variational inverse-mass diagnostic built from the momentum profile.

The trial direction is the regularized logarithmic derivative of ψ̂,

    t(p) = (∇ψ̂(p)/ψ̂(p)) χ(εp) = p h(p),   h(p) = ψ̂'(p) χ(εp) / (p ψ̂(p)),

with χ a radial cutoff, χ(0) = 1.  Three functionals of the profile enter
the strong-coupling bound on the inverse effective mass:

    R(ε)  = ∫ ψ̂² p·t           = 4π ∫ p³ χ(εp) ψ̂ ψ̂' dp        →  −3/2
    Q1(ε) = ∫ χ² |∇ψ̂|² (p²+μ)  = 4π ∫ p² χ(εp)² ψ̂'² (p²+μ) dp
    Q2(ε) = (√2/π) ∬ (φ(k)/|k|) χ(ε|p+k|) ∇ψ̂(p+k) · χ(εp) ∇ψ̂(p) dk dp

with Q1 − Q2 → 3 as ε → 0 (a consequence of the momentum-space
Euler–Lagrange equation).  Their combination

    f(ε) = 1 + (Q1 − Q2)/3 + 4R/3

is the strong-coupling limit of the upper bound on 1/(2m); it vanishes as
ε → 0, which is exactly the mass-divergence statement.  m_lower = 1/(2f)
is the induced asymptotic lower-mass diagnostic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .grid import RadialFunction, build_grid, integrate_3d, value_at_zero
from .momentum import MomentumProfile, _CHUNK, _angular_nodes
from .solver import PekarState
from .transforms import interpolator


@dataclass
class CutoffSpec:
    """Radial cutoff χ(εp) with χ(0) = 1.

    shape 'bump' is the standard compactly supported mollifier
    exp(1 − 1/(1 − (s/s*)²)) on |s| < s*; 'gaussian' (not compactly
    supported, for sensitivity studies) is exp(−(s/s*)²); 'one' is the
    formal ε = 0 endpoint χ ≡ 1.
    """

    eps: float
    shape: str = "bump"
    support_radius: float = 1.0

    def __post_init__(self):
        if self.eps <= 0:
            raise ValueError(f"eps must be positive, got {self.eps}")
        if self.shape not in ("bump", "gaussian", "one"):
            raise ValueError(f"unknown cutoff shape {self.shape!r}")
        if self.support_radius <= 0:
            raise ValueError("support_radius must be positive")

    def chi(self, p: np.ndarray) -> np.ndarray:
        """χ evaluated at εp (vectorized; exact zeros outside a bump's support)."""
        s = np.asarray(self.eps * p, dtype=float) / self.support_radius
        if self.shape == "one":
            return np.ones_like(s)
        if self.shape == "gaussian":
            return np.exp(-(s**2))
        out = np.zeros_like(s)
        inside = np.abs(s) < 1.0
        with np.errstate(divide="ignore", over="ignore"):
            out[inside] = np.exp(1.0 - 1.0 / (1.0 - s[inside] ** 2))
        return out


@dataclass
class MassBoundReport:
    """One ε-slice of the inverse-mass bound plus the ε→0 identity values."""

    eps: float
    R: float
    Q1: float
    Q2: float
    f: float
    m_lower: float
    identity_neg32: float
    identity_3: float
    mass_coeff: float
    f_nonpositive: bool = False


_CHI_ONE = CutoffSpec(eps=1.0, shape="one")


def trial_profile(mp: MomentumProfile, cut: CutoffSpec) -> RadialFunction:
    """Radial scalar h(p) of the trial direction t(p) = p h(p).

    h(p) = ψ̂'(p) χ(εp) / (p ψ̂(p)).  As p → 0 the ratio ψ̂'(p)/p tends to
    ψ̂''(0) (quadratic extrapolation from the smallest nodes), so t itself
    vanishes at the origin.  Raises DomainError if ψ̂ is not strictly
    positive somewhere inside the cutoff's support.
    """
    p = mp.pgrid.nodes
    chi = cut.chi(p)
    support = chi != 0.0
    if np.any(mp.psi_hat.values[support] <= 0.0):
        raise DomainError("ψ̂ must be strictly positive on the cutoff support")
    vals = np.zeros_like(p)
    vals[support] = (
        mp.dpsi_hat.values[support] * chi[support] / (p[support] * mp.psi_hat.values[support])
    )
    return RadialFunction(mp.pgrid, vals, "even")


def pairing_term(mp: MomentumProfile, cut: CutoffSpec) -> float:
    """R(ε) = 4π ∫ p³ χ(εp) ψ̂(p) ψ̂'(p) dp; → −3/2 as ε → 0.

    Summed with compensated summation, so restricting the sum to the
    cutoff's support (where the integrand is not an exact zero) is
    bit-identical to the full-grid sum.
    """
    p = mp.pgrid.nodes
    integrand = p**3 * cut.chi(p) * mp.psi_hat.values * mp.dpsi_hat.values
    return 4.0 * np.pi * math.fsum(mp.pgrid.weights * integrand)


def kinetic_term(mp: MomentumProfile, cut: CutoffSpec) -> float:
    """Q1(ε) = 4π ∫ p² χ(εp)² ψ̂'(p)² (p² + μ) dp; positive wherever the
    cutoff's support meets the grid.  Compensated summation, as for R."""
    p = mp.pgrid.nodes
    integrand = p**2 * cut.chi(p) ** 2 * mp.dpsi_hat.values**2 * (p**2 + mp.mu)
    return 4.0 * np.pi * math.fsum(mp.pgrid.weights * integrand)


def potential_term(
    mp: MomentumProfile,
    cut: CutoffSpec,
    reduced_n: int = 400,
    angular_nodes: int = 64,
) -> float:
    """Q2(ε) by angular-reduced triple quadrature.

    After the reduction the integrand is

        8 ρ̂(k) · p² χ(εp) ψ̂'(p) · χ(εq) [ψ̂'(q)/q] (p + kc),
        q = sqrt(p² + k² + 2pkc),

    where k²·(φ(k)/k) = k φ(k) = ρ̂(k)/(√2 π) has absorbed the field profile
    (finite at k → 0), and ψ̂'(q)/q is interpolated as a ratio so that no
    small-q division occurs.
    """
    kgrid = build_grid(reduced_n, mp.pgrid.rmax)
    c, wc = _angular_nodes(angular_nodes)

    rho_hat_itp = interpolator(mp.rho_hat())
    ratio_grid = mp.dpsi_hat.with_values(mp.dpsi_hat.values / mp.pgrid.nodes, "even")
    ratio_itp = interpolator(ratio_grid, zero_value=value_at_zero(ratio_grid))

    k = kgrid.nodes
    k_factor = kgrid.weights * rho_hat_itp(k)

    p = kgrid.nodes
    chi_p = cut.chi(p)
    p_factor = kgrid.weights * p**2 * chi_p * interpolator(mp.dpsi_hat, zero_value=0.0)(p)

    if not np.any(chi_p != 0.0):
        return 0.0

    total = 0.0
    rows = max(1, _CHUNK // (p.size * c.size))
    for lo in range(0, k.size, rows):
        hi = min(lo + rows, k.size)
        kk = k[lo:hi, None, None]
        pp = p[None, :, None]
        cc = c[None, None, :]
        q = np.sqrt(np.maximum(kk**2 + pp**2 + 2.0 * kk * pp * cc, 0.0))
        inner = cut.chi(q) * ratio_itp(q) * (pp + kk * cc)
        angular = inner @ wc
        total += k_factor[lo:hi] @ (angular @ p_factor)
    return float(8.0 * total)


def mass_coefficient(state: PekarState) -> float:
    """Quartic-norm mass prefactor (8π/3) ∫ |ψ|⁴ d³x."""
    quartic = state.psi.with_values(state.psi.values**4)
    return float(8.0 * np.pi / 3.0 * integrate_3d(quartic))


def _mass_coefficient_momentum(mp: MomentumProfile) -> float:
    # Plancherel route: ∫ ρ² d³x = ∫_0^∞ k⁴ φ(k)² dk
    k = mp.pgrid.nodes
    return float(8.0 * np.pi / 3.0 * mp.pgrid.integrate(k**4 * mp.phi.values**2))


def bound_rhs(
    mp: MomentumProfile,
    cut: CutoffSpec,
    reduced_n: int = 400,
    angular_nodes: int = 64,
) -> MassBoundReport:
    """Assemble f(ε) = 1 + (Q1 − Q2)/3 + 4R/3 and the χ≡1 identity values.

    m_lower = 1/(2f) when f > 0; if quadrature noise pushes f ≤ 0 near the
    exact zero, m_lower is the +inf sentinel and the report is flagged.
    The mass coefficient is evaluated from the field profile (Plancherel
    route), keeping the report a pure function of the momentum data.
    """
    R = pairing_term(mp, cut)
    Q1 = kinetic_term(mp, cut)
    Q2 = potential_term(mp, cut, reduced_n=reduced_n, angular_nodes=angular_nodes)
    f = 1.0 + (Q1 - Q2) / 3.0 + 4.0 * R / 3.0
    nonpositive = f <= 0.0
    m_lower = math.inf if nonpositive else 1.0 / (2.0 * f)

    R0 = pairing_term(mp, _CHI_ONE)
    Q10 = kinetic_term(mp, _CHI_ONE)
    Q20 = potential_term(mp, _CHI_ONE, reduced_n=reduced_n, angular_nodes=angular_nodes)

    return MassBoundReport(
        eps=cut.eps,
        R=R,
        Q1=Q1,
        Q2=Q2,
        f=f,
        m_lower=m_lower,
        identity_neg32=R0,
        identity_3=Q10 - Q20,
        mass_coeff=_mass_coefficient_momentum(mp),
        f_nonpositive=nonpositive,
    )


def alpha_scaling(state: PekarState, coeff: float, alpha: float) -> tuple[float, float]:
    """Leading strong-coupling predictions (α² eP, α⁴ coeff)."""
    if alpha <= 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    return alpha**2 * state.eP, alpha**4 * coeff


def kinetic_term_position_oracle(state: PekarState) -> float:
    """Independent check of Q1(χ≡1) from position space:

        ∫ p²|∇ψ̂|² = ∫ r²|∇ψ|²  and  ∫ |∇ψ̂|² = ∫ r² ψ²,

    so Q1(0) = 4π ∫ r⁴ ψ'² dr + μ · 4π ∫ r⁴ ψ² dr.
    """
    from .grid import radial_derivative

    g = state.psi.grid
    r = g.nodes
    dpsi = radial_derivative(state.psi).values
    mu = state.mu
    return float(4.0 * np.pi * g.integrate(r**4 * (dpsi**2 + mu * state.psi.values**2)))


def potential_term_position_oracle(state: PekarState) -> float:
    """Independent check of Q2(χ≡1): ∫ dp ∇ψ̂(p+k)·∇ψ̂(p) is the raw
    transform of r²ρ, and closing the Coulomb kernel gives

        Q2(0) = 2 ∬ ρ(x) |y|² ρ(y) / |x−y| dx dy.
    """
    from .coulomb import coulomb_bilinear

    g = state.rho.grid
    weighted = state.rho.with_values(g.nodes**2 * state.rho.values)
    return 2.0 * coulomb_bilinear(state.rho, weighted)

"""Heat, work, and transport observables of the boundary-driven steady state.

The authoritative heat and work rates are trace formulas on the joint
system-bath space.  With ``v`` the (rate-rescaled) system-bath coupling,
``H_b`` the bath copy's Hamiltonian, ``H_s`` the chain Hamiltonian, and
``w_b`` the bath thermal state,

    qdot =  Tr( [v, [v, H_b]]       (rho (x) w_b) ) / 2
    wdot = -Tr( [v, [v, H_b + H_s]] (rho (x) w_b) ) / 2

The work rate is the part of the boundary energy flow spent switching the
coupling on and off; the remainder is heat drawn from the bath.  Their sum
equals the energy in-flow ``Tr(H_s D(rho))`` generated by that side's
dissipator, which is how the pair of rates is cross-checked.

Model-specific closed forms (polarization-driven xxz boundaries, and the
fully solvable three-site chain with opposite boundary polarizations) are
provided as independent fixtures against the general formulas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .bathops import CURRENT_MARGIN, CURRENT_TAIL, bath_copy, check_gibbs_tail
from .linalg import check_dense_dim
from .lindblad import dissipator_action, jump_ops
from .models import BathSpec, ChainSpec, bath_f, build_hamiltonian
from .operators import site_op, two_site_op
from .steady_state import SteadyState

REGIMES = ("Refrigerator", "Heater", "Engine", "Other")

FIRST_LAW_TOL = 1e-9
REGIME_TOL = 1e-12


@dataclass(frozen=True)
class CurrentReport:
    """Steady-state rates of one driven chain.

    Sign convention: positive heat/work flows into the chain.  ``f_energy``
    is the left-boundary energy current ``qdot_L + wdot_L``; in steady state
    it equals minus the right-boundary one.
    """

    qdot_L: float
    qdot_R: float
    wdot_L: float
    wdot_R: float
    f_energy: float
    wdot_total: float
    pi_ss: float
    j_spin: float
    regime: str


@dataclass(frozen=True)
class BoundaryRates:
    """Bare rate quadruple, for closed-form fixtures."""

    qdot_L: float
    qdot_R: float
    wdot_L: float
    wdot_R: float

    @property
    def f_energy(self) -> float:
        return self.qdot_L + self.wdot_L

    @property
    def wdot_total(self) -> float:
        return self.wdot_L + self.wdot_R


def _density(state) -> np.ndarray:
    if isinstance(state, SteadyState):
        return state.rho
    return np.asarray(state, dtype=complex)


def _joint_pieces(spec: ChainSpec, bath: BathSpec, rho: np.ndarray):
    """Extended-space (v, H_bath, H_sys, rho (x) gibbs) for one boundary.

    Factor order follows the global layout: a left bath sits before the
    chain, a right bath after it.
    """
    copy = bath_copy(bath, tail=CURRENT_TAIL, margin=CURRENT_MARGIN)
    if bath.kind == "bosonic":
        check_gibbs_tail(copy, 10.0 * CURRENT_TAIL)
    n = spec.n
    d_sys = spec.dim
    check_dense_dim(copy.dim * d_sys)
    eye_b = np.eye(copy.dim, dtype=complex)
    eye_s = np.eye(d_sys, dtype=complex)
    site = bath.boundary_site(n)
    h_sys = build_hamiltonian(spec)

    if bath.side == "L":
        pair = lambda b_op, s_op: np.kron(b_op, s_op)
    else:
        pair = lambda b_op, s_op: np.kron(s_op, b_op)

    v = np.zeros((copy.dim * d_sys,) * 2, dtype=complex)
    for b_op, kind in copy.couplings:
        v += pair(b_op, site_op(kind, site, n))
    v *= copy.prefactor
    h_bath = pair(copy.h_op, eye_s)
    h_sys_ext = pair(eye_b, h_sys)
    rho_tot = pair(copy.gibbs, rho)
    return v, h_bath, h_sys_ext, rho_tot


def _double_commutator_rate(v, h, rho_tot) -> float:
    inner = v @ h - h @ v
    outer = v @ inner - inner @ v
    return float(np.einsum("ij,ji->", outer, rho_tot).real)


def heat_rate_general(spec: ChainSpec, bath: BathSpec, state) -> float:
    """Heat absorbed from one bath per unit time, via the joint trace formula."""
    rho = _density(state)
    v, h_bath, _, rho_tot = _joint_pieces(spec, bath, rho)
    return 0.5 * _double_commutator_rate(v, h_bath, rho_tot)


def work_rate_general(spec: ChainSpec, bath: BathSpec, state) -> float:
    """Work injected by one bath's coupling switches per unit time."""
    rho = _density(state)
    v, h_bath, h_sys_ext, rho_tot = _joint_pieces(spec, bath, rho)
    return -0.5 * _double_commutator_rate(v, h_bath + h_sys_ext, rho_tot)


def energy_inflow(spec: ChainSpec, bath: BathSpec, state) -> float:
    """Energy current into the chain from one side, ``Tr(H_s D_side(rho))``.

    Needs only the reduced dynamics, so it works for f-only baths too.
    """
    rho = _density(state)
    h = build_hamiltonian(spec)
    d = dissipator_action(jump_ops(bath, spec.n), rho)
    return float(np.einsum("ij,ji->", h, d).real)


# ---------------------------------------------------------------------------
# closed forms for polarization-driven xxz boundaries


def _boundary_expectations(spec: ChainSpec, bath: BathSpec, rho: np.ndarray):
    n = spec.n
    if bath.side == "L":
        edge, inner, bond = 1, 2, 0
    else:
        edge, inner, bond = n, n - 1, n - 2
    z_edge = float(np.einsum("ij,ji->", site_op("z", edge, n), rho).real)
    z_inner = float(np.einsum("ij,ji->", site_op("z", inner, n), rho).real)
    zz = float(np.einsum("ij,ji->", two_site_op("z", edge, "z", inner, n), rho).real)
    hop_op = (
        two_site_op("x", edge, "x", inner, n) + two_site_op("y", edge, "y", inner, n)
    )
    hop = float(np.einsum("ij,ji->", hop_op, rho).real)
    return z_edge, z_inner, zz, hop, spec.bond_couplings[bond]


def heat_rate_xxz_closed(spec: ChainSpec, bath: BathSpec, state) -> float:
    """Boundary heat rate ``2 gamma h_bath (f - <z_edge>)`` for spin baths on xxz."""
    if spec.kind != "xxz" or bath.kind != "spin":
        raise ValueError("closed form applies to xxz chains with spin baths")
    if not bath.decomposable:
        raise ValueError("heat rate needs the bath's (beta, h)")
    rho = _density(state)
    z_edge = float(
        np.einsum("ij,ji->", site_op("z", bath.boundary_site(spec.n), spec.n), rho).real
    )
    return 2.0 * bath.gamma * bath.h * (bath_f(bath) - z_edge)


def work_rate_xxz_closed(spec: ChainSpec, bath: BathSpec, state) -> float:
    """Boundary work rate for spin baths on xxz chains, in closed form.

    Derived by evaluating the switching-work trace formula for the
    flip-flop coupling: a field mismatch term, minus the heat rate, plus
    boundary-bond terms.
    """
    if spec.kind != "xxz" or bath.kind != "spin":
        raise ValueError("closed form applies to xxz chains with spin baths")
    if not bath.decomposable:
        raise ValueError("work rate needs the bath's (beta, h)")
    rho = _density(state)
    f = bath_f(bath)
    gamma = bath.gamma
    z_edge, z_inner, zz, hop, coupling = _boundary_expectations(spec, bath, rho)
    h_site = spec.site_fields[bath.boundary_site(spec.n) - 1]
    out = 2.0 * h_site * gamma * (f - z_edge)
    out -= 2.0 * bath.h * gamma * (f - z_edge)
    out -= 2.0 * gamma * (spec.alpha * hop + coupling * zz)
    out -= 2.0 * gamma * coupling * zz
    out += 4.0 * gamma * coupling * f * z_inner
    return out


# ---------------------------------------------------------------------------
# fully solved three-site chain, opposite boundary polarizations

def energy_current_closed_form_3site(
    beta_L: float, h_L: float, beta_R: float, h_R: float
) -> float:
    """Left-boundary energy current of the isotropic-hopping three-site chain.

    Valid at alpha = delta = gamma = 1 and h = Delta = 0, where the steady
    state is solvable and the current depends on the baths only through
    ``x = beta_L h_L`` and ``y = beta_R h_R``:

        F = -160 (e^x - e^y)^2 /
            [ (e^x + 1)(e^y + 1)(121 e^x + 117 e^{x+y} + 121 e^y + 117) ]
    """
    ex = math.exp(beta_L * h_L)
    ey = math.exp(beta_R * h_R)
    denom = (ex + 1.0) * (ey + 1.0) * (121.0 * ex + 117.0 * ex * ey + 121.0 * ey + 117.0)
    return -160.0 * (ex - ey) ** 2 / denom


def _cf_numerator(a2, g2, d2, D2, f2):
    """Shared polynomial multiplying the bath fields in the 3-site rates."""
    f4 = f2 * f2
    gd = g2 + d2
    t8 = 9.0 * a2 ** 4
    t6 = a2 ** 3 * (72.0 * g2 + 4.0 * (5.0 * f2 + 9.0) * d2 + 3.0 * D2)
    t4 = 2.0 * a2 ** 2 * (
        99.0 * g2 ** 2
        + g2 * (2.0 * (7.0 * f2 + 48.0) * d2 + 3.0 * (5.0 - 2.0 * f2) * D2)
        + (2.0 * f4 - 6.0 * f2 + 15.0) * d2 ** 2
        - 3.0 * (f2 - 4.0) * d2 * D2
    )
    t2 = a2 * gd * (
        216.0 * g2 ** 2
        - 3.0 * g2 * (4.0 * d2 * (f2 - 9.0) + D2 * (16.0 * f2 - 27.0))
        - (2.0 * f2 - 3.0)
        * (D2 ** 2 + 4.0 * d2 ** 2 * (f2 + 1.0) + d2 * D2 * (13.0 - 4.0 * f2))
    )
    t0 = gd ** 2 * (
        81.0 * g2 ** 2
        - 18.0 * g2 * (2.0 * f2 - 3.0) * (d2 + D2)
        + (3.0 - 2.0 * f2) ** 2 * (d2 - D2) ** 2
    )
    return t8 + t6 + t4 + t2 + t0


def _cf_denominator(a2, g2, d2, D2, f2):
    f4 = f2 * f2
    gd = g2 + d2
    t10 = 9.0 * a2 ** 5
    t8 = a2 ** 4 * (81.0 * g2 + 3.0 * D2 + d2 * (20.0 * f2 + 39.0))
    t6 = 2.0 * a2 ** 3 * (
        135.0 * g2 ** 2
        + 3.0 * g2 * (7.0 * d2 * (f2 + 6.0) + D2 * (7.0 - 2.0 * f2))
        + d2 * D2 * (17.0 - 3.0 * f2)
        + d2 ** 2 * (2.0 * f4 - 3.0 * f2 + 21.0)
    )
    t4 = 2.0 * a2 ** 2 * (
        207.0 * g2 ** 3
        + g2 ** 2 * (d2 * (291.0 - 7.0 * f2) + 3.0 * D2 * (26.0 - 7.0 * f2))
        + g2
        * (
            -(D2 ** 2) * (f2 - 3.0)
            + d2 ** 2 * (-8.0 * f4 - 16.0 * f2 + 107.0)
            + d2 * D2 * (4.0 * f4 - 37.0 * f2 + 104.0)
        )
        - d2
        * (
            D2 ** 2 * (f2 - 3.0)
            + d2 ** 2 * (4.0 * f4 + f2 - 11.0)
            - 2.0 * d2 * D2 * (2.0 * f4 - 9.0 * f2 + 14.0)
        )
    )
    t2 = a2 * gd * (
        297.0 * g2 ** 3
        - 3.0 * g2 ** 2 * (d2 * (22.0 * f2 - 105.0) + 2.0 * D2 * (2.0 * f2 - 33.0))
        + g2
        * (
            d2 ** 2 * (20.0 * f4 - 44.0 * f2 + 111.0)
            - 4.0 * d2 * D2 * (6.0 * f4 + 2.0 * f2 - 33.0)
            + D2 ** 2 * (4.0 * f4 - 20.0 * f2 + 33.0)
        )
        + d2 ** 3 * (4.0 * f4 - 10.0 * f2 + 13.0)
        - 2.0 * d2 ** 2 * D2 * (4.0 * f4 - 14.0 * f2 + 1.0)
        + d2 * D2 ** 2 * (4.0 * f4 - 18.0 * f2 + 25.0)
    )
    t0 = gd ** 2 * (
        81.0 * g2 ** 3
        + g2 * (d2 ** 2 * (27.0 - 8.0 * f4) + 2.0 * d2 * D2 * (8.0 * f4 + 9.0) + D2 ** 2 * (27.0 - 8.0 * f4))
        + 9.0 * g2 ** 2 * (2.0 * f2 + 9.0) * (d2 + D2)
        - (2.0 * f2 - 3.0) * (d2 - D2) ** 2 * (d2 + D2)
    )
    return t10 + t8 + t6 + t4 + t2 + t0


def _cf_asym(a2, g2, d2, D2, f2, f, d):
    """Odd-in-delta polynomial entering only the work rates."""
    gd = g2 + d2
    t6 = -12.0 * D2 * a2 ** 3
    t4 = 4.0 * a2 ** 2 * (
        9.0 * g2 ** 2
        + 2.0 * (5.0 * d2 - 6.0 * f2 * D2) * g2
        + d2 ** 2
        - D2 ** 2
        - 2.0 * (f2 - 3.0) * d2 * D2
    )
    t2 = 4.0 * a2 * gd * (
        54.0 * g2 ** 2
        + 3.0 * (2.0 * (3.0 * f2 + 7.0) * d2 + (5.0 - 6.0 * f2) * D2) * g2
        + 2.0 * (f2 + 2.0) * d2 ** 2
        + (1.0 - 2.0 * f2) * D2 ** 2
        + 13.0 * d2 * D2
    )
    t0 = -4.0 * gd ** 2 * (
        -81.0 * g2 ** 2
        + 18.0 * ((f2 - 2.0) * d2 - f2 * D2) * g2
        + (2.0 * f2 - 3.0) * (d2 - D2) ** 2
    )
    return f * d * (t6 + t4 + t2 + t0)


def closed_form_currents_3site(
    alpha: float,
    gamma: float,
    delta: float,
    Delta: float,
    f: float,
    h_L: float,
    h_R: float,
    h: float = 0.0,
) -> BoundaryRates:
    """All four boundary rates of the three-site xxz chain at f_L = f = -f_R.

    The steady state of this configuration is solvable; the rates are
    rational functions of the chain parameters with a shared denominator.
    ``h`` is the uniform chain field, ``h_L`` and ``h_R`` the bath level
    splittings that realise the polarizations ``+f`` and ``-f``.
    """
    a2, g2, d2, D2, f2 = alpha ** 2, gamma ** 2, delta ** 2, Delta ** 2, f ** 2
    num = _cf_numerator(a2, g2, d2, D2, f2)
    den = _cf_denominator(a2, g2, d2, D2, f2)
    asym = _cf_asym(a2, g2, d2, D2, f2, f, delta)
    scale = 2.0 * f * a2 * gamma / den
    return BoundaryRates(
        qdot_L=scale * h_L * num,
        qdot_R=-scale * h_R * num,
        wdot_L=-scale * ((h_L - h) * num + asym),
        wdot_R=scale * ((h_R - h) * num + asym),
    )


# ---------------------------------------------------------------------------
# entropy, magnetization transport, operating regime


def von_neumann_entropy(state) -> float:
    """``-Tr(rho ln rho)`` with the 0 ln 0 = 0 convention."""
    rho = _density(state)
    eigs = np.linalg.eigvalsh(rho)
    eigs = eigs[eigs > 1e-15]
    return float(-np.sum(eigs * np.log(eigs)))


def entropy_production_rate(
    qdot_L: float, qdot_R: float, baths: Sequence[BathSpec]
) -> float:
    """Steady-state entropy production ``-(beta_L qdot_L + beta_R qdot_R)``."""
    by_side = {b.side: b for b in baths}
    for side in "LR":
        if side not in by_side or by_side[side].beta is None:
            raise ValueError("entropy production needs a temperature for each bath")
    return -(by_side["L"].beta * qdot_L + by_side["R"].beta * qdot_R)


def entropy_production(report: CurrentReport, baths: Sequence[BathSpec]) -> float:
    return entropy_production_rate(report.qdot_L, report.qdot_R, baths)


def spin_current(spec: ChainSpec, state, bond: int = 1) -> float:
    """Magnetization current through a bond, ``2 alpha <x_i y_{i+1} - y_i x_{i+1}>``.

    Defined for xxz chains; in steady state the value is the same on every
    bond.  The normalization matches the continuity equation of the local
    ``z`` polarization.
    """
    if spec.kind != "xxz":
        raise ValueError("the magnetization current is defined for xxz chains")
    if not 1 <= bond <= spec.n - 1:
        raise ValueError(f"bond {bond} outside 1..{spec.n - 1}")
    rho = _density(state)
    op = 2.0 * spec.alpha * (
        two_site_op("x", bond, "y", bond + 1, spec.n)
        - two_site_op("y", bond, "x", bond + 1, spec.n)
    )
    return float(np.einsum("ij,ji->", op, rho).real)


def classify_regime(
    report: CurrentReport, baths: Sequence[BathSpec], regime_tol: float = REGIME_TOL
) -> str:
    """Operating regime from the signs of the heat rates and the total work.

    The cold bath is the one with the larger beta.  Rates within
    ``regime_tol`` of zero are treated as zero, and any such marginal case,
    equal temperatures included, lands in "Other".
    """
    by_side = {b.side: b for b in baths}
    bl, br = by_side.get("L"), by_side.get("R")
    if bl is None or br is None or bl.beta is None or br.beta is None:
        return "Other"
    if bl.beta == br.beta:
        return "Other"
    if bl.beta > br.beta:
        q_cold, q_hot = report.qdot_L, report.qdot_R
    else:
        q_cold, q_hot = report.qdot_R, report.qdot_L
    w = report.wdot_total
    if min(abs(q_cold), abs(q_hot), abs(w)) <= regime_tol:
        return "Other"
    if q_cold > 0 and q_hot < 0 and w > 0:
        return "Refrigerator"
    if q_cold < 0 and q_hot > 0 and w > 0:
        return "Heater"
    if q_cold < 0 and q_hot > 0 and w < 0:
        return "Engine"
    return "Other"


def current_report(
    spec: ChainSpec,
    baths: Sequence[BathSpec],
    state,
    first_law_tol: float = FIRST_LAW_TOL,
    regime_tol: float = REGIME_TOL,
) -> CurrentReport:
    """Assemble all steady-state rates and validate the energy balance.

    Raises when the four rates do not sum to zero within ``first_law_tol``
    (relative to the largest rate), which would mean the state passed in is
    not stationary or the bath description is inconsistent.
    """
    by_side = {b.side: b for b in baths}
    if set(by_side) != {"L", "R"}:
        raise ValueError("a current report needs exactly one bath per side")
    rho = _density(state)
    q_l = heat_rate_general(spec, by_side["L"], rho)
    q_r = heat_rate_general(spec, by_side["R"], rho)
    w_l = work_rate_general(spec, by_side["L"], rho)
    w_r = work_rate_general(spec, by_side["R"], rho)
    total = q_l + q_r + w_l + w_r
    scale = max(abs(q_l), abs(q_r), abs(w_l), abs(w_r))
    if abs(total) > max(first_law_tol * scale, 1e-12):
        raise ValueError(
            f"first law violated: boundary rates sum to {total:.3e} against scale {scale:.3e}"
        )
    pi = entropy_production_rate(q_l, q_r, baths)
    j = spin_current(spec, rho) if spec.kind == "xxz" else 0.0
    report = CurrentReport(
        qdot_L=q_l,
        qdot_R=q_r,
        wdot_L=w_l,
        wdot_R=w_r,
        f_energy=q_l + w_l,
        wdot_total=w_l + w_r,
        pi_ss=pi,
        j_spin=j,
        regime="Other",
    )
    return replace(report, regime=classify_regime(report, baths, regime_tol))

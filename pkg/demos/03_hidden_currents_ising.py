"""Chains that carry nothing but still burn fuel.

A chain that is diagonal in the z basis cannot transport energy: every
local energy operator commutes with the Hamiltonian, so the net boundary
flow is zero in any steady state.  The master equation therefore shows a
dead wire.  The cycle picture shows something else entirely when the
reservoirs are bosonic: each coupling switch injects work g^2 omega per
unit time and the bath carries exactly that much away as heat.  Zero net
flow, nonzero dissipation, entropy production beta_L w_L + beta_R w_R.

With spin reservoirs instead, the steady state is a product of the bath
marginals and even the hidden currents vanish: nothing moves at all.
"""

from __future__ import annotations

import numpy as np

from spinheat import BathSpec, ChainSpec, current_report, steady_for


def show(title, spec, baths):
    state = steady_for(spec, baths)
    rep = current_report(spec, baths, state)
    print(title)
    print(f"  kernel dimension: {state.nullspace_dim}")
    print(f"  qdot_L = {rep.qdot_L:+.8f}   wdot_L = {rep.wdot_L:+.8f}")
    print(f"  qdot_R = {rep.qdot_R:+.8f}   wdot_R = {rep.wdot_R:+.8f}")
    print(f"  net boundary energy flow F = {rep.f_energy:+.2e}")
    print(f"  entropy production        = {rep.pi_ss:+.8f}")
    print()
    return state, rep


def main() -> None:
    print(__doc__)
    spec2 = ChainSpec(kind="ising", n=2, field=(0.6, 0.9), Delta=0.8)
    bosonic = [
        BathSpec(side="L", kind="bosonic", beta=1.0, omega=1.0, g=0.4),
        BathSpec(side="R", kind="bosonic", beta=2.0, omega=1.3, g=0.3),
    ]
    state, rep = show("two sites, bosonic reservoirs:", spec2, bosonic)
    print(f"  predicted: wdot_L = g_L^2 omega_L = {0.4 ** 2 * 1.0:.4f}, "
          f"wdot_R = g_R^2 omega_R = {0.3 ** 2 * 1.3:.4f}")
    print(f"  the steady state is the maximally mixed one: "
          f"max |rho - I/4| = {np.max(np.abs(state.rho - np.eye(4) / 4)):.1e}")
    print()

    spec3 = ChainSpec(
        kind="ising", n=3, field=(0.4, 0.3, 0.7), bond_Delta=(0.9, 1.1), Delta13=0.6
    )
    bosonic3 = [
        BathSpec(side="L", kind="bosonic", beta=0.8, omega=1.0, g=0.5),
        BathSpec(side="R", kind="bosonic", beta=1.7, omega=1.3, g=0.35),
    ]
    show("three sites with a 1-3 coupling, bosonic reservoirs:", spec3, bosonic3)
    print("  the middle spin is never flipped, so a whole line of steady states")
    print("  exists (kernel dimension 2); all of them carry these same currents.")
    print()

    spin = [
        BathSpec(side="L", beta=1.0, h=0.7, gamma=1.0),
        BathSpec(side="R", beta=2.0, h=-0.4, gamma=0.8),
    ]
    show("two sites, spin reservoirs:", spec2, spin)
    print("  a spin reservoir's fixed point passes through the diagonal chain")
    print("  untouched: the boundary spin just thermalizes to the bath marginal")
    print("  and every current, heat and work alike, is zero.")


if __name__ == "__main__":
    main()

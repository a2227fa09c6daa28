"""Same steady state, same energy current, different heat.

The boundary dissipator of a spin reservoir depends on beta and h only
through the polarization f = -tanh(beta h / 2).  Two reservoirs with the
same f produce identical chain dynamics and an identical total energy
current.  They do NOT deliver the same heat: the split of the boundary
energy flow into heat and work needs the bath's own energy scale, which
the master equation has already forgotten.

This script builds three left reservoirs with the same polarization but
different level splittings and shows the split move while F holds still.
It then prints the closed-form energy current of the solvable chain,
which only knows the products beta*h.
"""

from __future__ import annotations

import math

from spinheat import (
    BathSpec,
    ChainSpec,
    bath_f,
    current_report,
    energy_current_closed_form_3site,
    steady_for,
)


def main() -> None:
    print(__doc__)
    spec = ChainSpec(kind="xxz", n=3, alpha=1.0, Delta=0.0, delta=1.0, h=0.0)
    right = BathSpec(side="R", beta=2.0, h=-0.5, gamma=1.0)

    f_target = -math.tanh(0.5)  # the polarization every left bath will share
    print(f"left polarization in all three cases: f_L = {f_target:+.6f}\n")
    print(f"{'h_L':>6} {'beta_L':>8} | {'qdot_L':>12} {'wdot_L':>12} {'F':>12}")
    print("-" * 58)
    for h_L in (0.5, 1.0, 2.0):
        beta_L = 1.0 / h_L  # keeps beta_L * h_L = 1, hence f fixed
        left = BathSpec(side="L", beta=beta_L, h=h_L, gamma=1.0)
        assert abs(bath_f(left) - f_target) < 1e-15
        baths = [left, right]
        rep = current_report(spec, baths, steady_for(spec, baths))
        print(
            f"{h_L:6.2f} {beta_L:8.3f} | {rep.qdot_L:12.8f} {rep.wdot_L:12.8f} "
            f"{rep.f_energy:12.8f}"
        )

    closed = energy_current_closed_form_3site(1.0, 1.0, 2.0, -0.5)
    print(f"\nclosed form F(beta_L h_L = 1, beta_R h_R = -1) = {closed:.8f}")
    print("\nThe heat current scales with the bath splitting h_L while the work")
    print("picks up the difference; their sum never moves. A reservoir described")
    print("by f alone simply cannot answer the heat question, and the package")
    print("refuses to guess:")
    try:
        f_only = [BathSpec(side="L", f=f_target), right]
        current_report(spec, f_only, steady_for(spec, f_only))
    except ValueError as exc:
        print(f"\n  ValueError: {exc}")


if __name__ == "__main__":
    main()

"""Reading a spin chain as a thermal machine.

With both reservoirs thermal, the chain is a working medium: depending on
where the boundary fields sit, it pumps heat out of the cold bath
(refrigerator), dumps work into both baths (heater), or converts a heat
current into output work (engine).  The classification only needs the
signs of the cold/hot heat rates and of the total work.

This script sweeps the left boundary field across its interesting range
for two chains (free and interacting) and prints the regime bands.
"""

from __future__ import annotations

import numpy as np

from spinheat import BathSpec, ChainSpec, current_report, steady_for

MARKS = {"Refrigerator": "R", "Heater": "H", "Engine": "E", "Other": "."}


def sweep(Delta: float, h: float):
    spec = ChainSpec(kind="xxz", n=3, alpha=1.0, Delta=Delta, delta=1.0, h=h)
    grid = np.linspace(-2.0, 2.0, 81)
    regimes = []
    for h_L in grid:
        baths = [
            BathSpec(side="L", beta=2.0, h=float(h_L), gamma=1.0),
            BathSpec(side="R", beta=9.0, h=0.2, gamma=1.0),
        ]
        rep = current_report(spec, baths, steady_for(spec, baths))
        regimes.append(rep.regime)
    return grid, regimes


def bands(grid, regimes):
    out = []
    start = 0
    for i in range(1, len(regimes) + 1):
        if i == len(regimes) or regimes[i] != regimes[start]:
            out.append((regimes[start], grid[start], grid[i - 1]))
            start = i
    return out


def main() -> None:
    print(__doc__)
    for Delta, h, label in ((0.0, 0.0, "free chain"), (1.0, 1.0, "interacting chain")):
        grid, regimes = sweep(Delta, h)
        print(f"{label} (Delta = {Delta}, chain field = {h}), left bath hot, right bath cold:")
        print("  " + "".join(MARKS[r] for r in regimes))
        print(f"  h_L from {grid[0]:+.1f} to {grid[-1]:+.1f}  "
              f"(R refrigerator, H heater, E engine, . other)")
        for name, lo, hi in bands(grid, regimes):
            if name != "Other":
                print(f"    {name:<13} h_L in [{lo:+.2f}, {hi:+.2f}]")
        print()
    print("Band edges track sign changes of the three rates: the engine window")
    print("closes where the work output crosses zero, the refrigerator one where")
    print("the cold-side heat flow turns around.")


if __name__ == "__main__":
    main()

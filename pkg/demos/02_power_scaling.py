# Power output against the number of qubits
#
# Run one engine cycle for every odd N and compare with the E2LS
# prediction P = a_{1/2} P_{N=1} and with N independent engines.

import dataclasses

import numpy as np

from superabsorb import REFERENCE_CONFIG, sweep_n, to_natural

ns = list(range(9, 64, 6))

for f_cold in (0.7e9, 0.6e9, 0.55e9):
    params = to_natural(dataclasses.replace(REFERENCE_CONFIG, freq_qubit_cold=f_cold))
    res = sweep_n(params, ns)
    print(f"\ncold qubit frequency {f_cold / 1e9:.2f} GHz")
    print("   N   P_sim/P_E2LS   P_sim/P_sep")
    for n, p, pe, ps in zip(res.n, res.p_first_cycle, res.p_e2ls, res.p_separable):
        print(f"{n:4d}   {p / pe:12.5f}   {p / ps:11.3f}")
    # a fixed grid slope of (N+1)^2 is a bit under 2, the separable one is exactly 1
    print(f"log-log slopes: simulated {res.slope_simulated:.4f}, "
          f"E2LS {res.slope_e2ls:.4f}, separable {res.slope_separable:.4f}")

# The ratio to the separable engines grows linearly in N
print(np.round((np.array(ns) + 1) ** 2 / (4 * np.array(ns)), 2))

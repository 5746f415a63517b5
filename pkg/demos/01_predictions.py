# Closed-form predictions for a superabsorbing engine
#
# The working medium is a ring of N qubits whose collective states form a
# Dicke ladder. Cavity filtering makes the bath talk almost only to the
# central pair of levels |1/2> and |-1/2>, the effective two-level system
# (E2LS). Everything below comes from closed forms, no dynamics yet.

import warnings

from superabsorb import REFERENCE_CONFIG, predict, to_natural
from superabsorb.units import power_to_watts

params = to_natural(REFERENCE_CONFIG)

# The quoted configuration: 31 qubits, 1 GHz hot and 0.55 GHz cold
# frequencies, 31 MHz interaction, a 1 MHz cavity linewidth.
print(REFERENCE_CONFIG)

# predict() warns when the confinement factor is small; at these
# parameters it is not, but keep the warning visible anyway.
with warnings.catch_warnings():
    warnings.simplefilter("always")
    pr = predict(params)

print(f"Carnot efficiency       {pr.eta_carnot:.4f}")
print(f"E2LS efficiency deficit {pr.delta_eta_e2ls:.4f}")
print(f"confinement factor      {pr.chi_conf:.1f}")
print(f"cycles before leakage   {pr.n_conf_closed:.3g} (closed form), {pr.n_conf:.3g} (exact)")

# Power of one qubit, of N independent qubits, and of the collective
# engine. The collective gain is a_{1/2}/N = (N+1)^2/(4N).
for label, value in [("single qubit", pr.p_one_qubit),
                     ("N separable", pr.p_separable),
                     ("collective E2LS", pr.p_e2ls)]:
    print(f"{label:16s} {power_to_watts(value):.3e} W")
print(f"collective gain {pr.p_e2ls / pr.p_separable:.2f}x")

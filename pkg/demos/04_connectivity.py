# Where the N^2 comes from
#
# Lowering |1/2> to |-1/2> connects each excitation string to (N+1)/2
# strings one level down. Summed coherently over the symmetric state this
# gives the matrix element (N+1)/2 and a rate enhanced by its square.
# Here the matrix element is computed by brute force in the 2^N basis.

import math

from superabsorb import tfmodel
from superabsorb.oracle import connectivity, lowering_matrix_element

print("  N  <-1/2|J-|1/2>  (N+1)/2  connectivity")
for n in range(1, 14, 2):
    print(f"{n:3d} {lowering_matrix_element(n, 0.5):14.6f} {(n + 1) / 2:8.1f} {connectivity(n, 0.5):13d}")

# A generic degenerate model: N_d excited and N_d ground states joined by
# an all-to-all jump. The symmetric (bright) state decays N_d times
# faster than an incoherent mixture.
specs = [tfmodel.TFSpec.thermal(nd, 1.0, 1.0, 2.0) for nd in range(2, 9)]
for mode in ("bd", "sd"):
    print(mode, "decay-rate exponent", round(tfmodel.measure_rate_scaling(specs, mode), 4))

# Counting the full degenerate subspace instead would overshoot badly
n = 9
print("naive degeneracy vs a_1/2 at N=9:", math.comb(n, 5) ** 2, (n + 1) ** 2 // 4)

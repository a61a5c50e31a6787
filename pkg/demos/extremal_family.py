# A family whose amoeba complement grows quadratically with k.

import time

from padic_amoeba import assemble_amoeba, count_complement, extremal_family
from padic_amoeba.extremal import extremal_map, search_prime, target_components
from padic_amoeba.linalg import format_matrix

fam = extremal_family(3, 3)
print("D =\n" + format_matrix(fam.D))
print("A =\n" + format_matrix(fam.A))

# p = 2 falls one short for k = 3; p = 3 already works
for k in range(3, 7):
    t0 = time.perf_counter()
    found = search_prime(k)
    print(f"k={k}: target {target_components(k):3d}, tried {found.tried}, "
          f"smallest p = {found.prime} ({time.perf_counter() - t0:.2f}s)")

# growth for a fixed prime
for k in range(3, 8):
    G = assemble_amoeba(extremal_map(k, 5))
    c = count_complement(G, 2 * k - 1)
    print(f"p=5 k={k}: {c.total} components ({c.bounded} bounded), bound {c.bound_value}")

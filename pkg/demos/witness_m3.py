# Beyond the plane: for m = 3 there is no graph, but every exact image point
# is matched by a tropical form evaluated at a witness exponent.

import random
from fractions import Fraction

from padic_amoeba import eval_F_exact, eval_tropical, tropicalize, witness_index_set
from padic_amoeba.instances import random_kernel_instance, random_rational
from padic_amoeba.tropical import enumerate_index_sets, sup_distance

rng = random.Random(3)
F = random_kernel_instance(7, 3, 5, rng)
print("forms:", F.forms.coeffs.tolist())
print("index sets with a unique common zero:", len(enumerate_index_sets(F.forms)))

eps = Fraction(1, 4)
used = {}
for _ in range(200):
    lam = [random_rational(rng, 5) for _ in range(2)]
    if any(F.forms.evaluate(i, lam) == 0 for i in range(F.nforms)):
        continue
    w = witness_index_set(F, lam, eps)
    d = sup_distance(eval_tropical(tropicalize(w.transformed), w.exponents), eval_F_exact(F, lam))
    assert d <= w.bound
    used[w.index_set] = used.get(w.index_set, 0) + 1

print(f"all witnesses within b*eps = {w.bound}")
for I, k in sorted(used.items(), key=lambda kv: -kv[1]):
    print(f"  I = {I}: {k} points")

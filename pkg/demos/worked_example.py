# Three linear forms x-1, x-13, x-25 over Q_2: exact images against the
# tropical forms after each change of variables.

from fractions import Fraction

from padic_amoeba import eval_F_exact, eval_tropical, tropicalize, witness_index_set
from padic_amoeba.instances import worked_example, worked_example_shifted
from padic_amoeba.tropical import sup_distance

F = worked_example()
print("F(9) =", eval_F_exact(F, [9]))                      # valuations of 8, -4, -16 are 3, 2, 4
print("same point after x -> x+1:", eval_F_exact(worked_example_shifted(), [8]))

# one tropical form per choice of the form that becomes the new coordinate
for I in ([0], [1], [2]):
    G = F.change_variables(I)
    t = tropicalize(G)
    print(f"\nI = {I}: forms {G.forms.coeffs.tolist()}, valuations {t.val_table}")
    for r in range(0, 7):
        print(f"   phi({r}) = {tuple(map(str, eval_tropical(t, [r])))}")

# the image point (9, -129) only shows up on the last form;
# the witness procedure finds that choice on its own
for eps in (Fraction(1), Fraction(1, 2), Fraction(1, 10)):
    w = witness_index_set(F, [9], eps)
    phi = eval_tropical(tropicalize(w.transformed), w.exponents)
    print(f"\neps={eps}: I={w.index_set} l={w.exponents[0]} phi={tuple(map(str, phi))}"
          f" distance={sup_distance(phi, (9, -129))} <= {w.bound}")

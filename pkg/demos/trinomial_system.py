# The three-trinomial system over Q_3: an amoeba with two holes.
#
# Run from anywhere:  python3 demos/trinomial_system.py [output-dir]

import sys
import time
from pathlib import Path

from padic_amoeba import assemble_amoeba, build_digit_tree, build_ahat, count_complement, integer_kernel, zeros
from padic_amoeba.amoeba2d import branch_pieces
from padic_amoeba.instances import TRINOMIAL_KERNEL, TRINOMIAL_SUPPORT, trinomial_system
from padic_amoeba.linalg import same_column_span
from padic_amoeba.padic import digits
from padic_amoeba.render import emit_svg

out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path.cwd()

# support: three trinomials in three variables, six exponent vectors
print("A =")
for row in TRINOMIAL_SUPPORT.entries:
    print("   ", row)

# the kernel we compute is a different basis of the same lattice
B = integer_kernel(build_ahat(TRINOMIAL_SUPPORT))
print("computed kernel columns:", B.columns())
print("same span as the published basis:", same_column_span(B, TRINOMIAL_KERNEL))

dmap = trinomial_system(3)
Z = zeros(dmap)
print("\nzeros of the forms (None = constant form):", [str(z) if z is not None else None for z in Z.zeros])

# 3-adic digits from index -1, and the tree they induce
for i in Z.admissible:
    print(f"  z{i} = {str(Z.zeros[i]):>6}  digits[-1..2] = {digits(Z.zeros[i], 3, -1, 2)}")
tree = build_digit_tree(Z, 3)
print("tree:", tree.shape())

t0 = time.perf_counter()
G = assemble_amoeba(dmap)
count = count_complement(G, n=3)
dt = time.perf_counter() - t0

print(f"\n{len(G.vertices)} vertices, {len(G.segments)} segments, {len(G.rays)} rays")
for a, b in G.segment_points():
    print(f"  segment ({a[0]}, {a[1]}) -- ({b[0]}, {b[1]})")
for base, d in G.ray_points():
    print(f"  ray from ({base[0]}, {base[1]}) towards {d}")
print(f"complement: {count.total} components, {count.bounded} bounded ({dt * 1000:.1f} ms)")

svg = out_dir / "trinomial_system.svg"
svg.write_text(emit_svg(G, branches=branch_pieces(dmap)))
print("wrote", svg)

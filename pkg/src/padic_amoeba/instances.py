"""Fixture instances and random general-position generators."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .amoeba2d import is_generic
from .errors import DegenerateInputError
from .linalg import AffineFormSystem, Matrix, build_ahat, integer_kernel
from .tropical import DiscriminantMap

#: Support of the three-trinomial system (columns are exponent vectors).
TRINOMIAL_SUPPORT = Matrix([[6, 0, 0, 0, 3, 1], [0, 3, 1, 6, 0, 0], [1, 1, 1, 0, 0, 0]])

#: A reference kernel basis for it, one row per support point.
TRINOMIAL_KERNEL = Matrix([[-2, 35, -33, -12, 0, 12], [2, -11, 9, 4, -4, 0]]).T


def trinomial_system(p: int = 3) -> DiscriminantMap:
    return DiscriminantMap.from_kernel(TRINOMIAL_KERNEL, p)


WORKED_GAMMA = Matrix([[1, -1], [1, -13], [1, -25]])


def worked_example() -> DiscriminantMap:
    """Forms ``x - 1, x - 13, x - 25`` over Q_2, multipliers equal to the forms."""
    return DiscriminantMap(AffineFormSystem(WORKED_GAMMA), WORKED_GAMMA, 2)


def worked_example_shifted() -> DiscriminantMap:
    """The same map after ``x -> x + 1``: forms ``x, x - 12, x - 24``."""
    forms = AffineFormSystem(Matrix([[1, 0], [1, -12], [1, -24]]))
    return DiscriminantMap(forms, WORKED_GAMMA, 2)


def random_support(n: int, m: int, rng: random.Random, spread: int = 4) -> Matrix:
    return Matrix(
        [[rng.randint(-spread, spread) for _ in range(n + m + 1)] for _ in range(n)],
        ncols=n + m + 1,
    )


def random_planar_instance(
    n: int,
    p: int,
    rng: random.Random,
    spread: int = 4,
    generic: bool = True,
    max_tries: int = 1000,
) -> tuple[Matrix, DiscriminantMap]:
    """Random ``n x (n+3)`` support in general position and its m = 2 map.

    Rejects rank-deficient supports, kernels with a zero row, and (when
    ``generic``) instances failing :func:`is_generic`.
    """
    for _ in range(max_tries):
        A = random_support(n, 2, rng, spread)
        try:
            B = integer_kernel(build_ahat(A))
        except DegenerateInputError:
            continue
        if any(all(x == 0 for x in B.row(i)) for i in range(B.nrows)):
            continue
        dmap = DiscriminantMap.from_kernel(B, p)
        if generic and not is_generic(dmap):
            continue
        return A, dmap
    raise RuntimeError(f"no general-position instance found for n={n}, p={p}")


def random_kernel_instance(
    nforms: int, m: int, p: int, rng: random.Random, spread: int = 6
) -> DiscriminantMap:
    """Random integer ``B`` with zero column sums and no zero row (any m)."""
    while True:
        rows = [[rng.randint(-spread, spread) for _ in range(m)] for _ in range(nforms - 1)]
        last = [-sum(r[j] for r in rows) for j in range(m)]
        rows.append(last)
        if any(all(x == 0 for x in r) for r in rows):
            continue
        B = Matrix(rows)
        from .linalg import rank

        if rank(B) == m:
            return DiscriminantMap.from_kernel(B, p)


def random_rational(rng: random.Random, p: int, span: int = 6) -> Fraction:
    """A rational with a p-power factor of random sign, plus small unit noise."""
    num = rng.randint(-50, 50) or 1
    den = rng.randint(1, 30)
    return Fraction(num, den) * Fraction(p) ** rng.randint(-span, span)


def random_parameter_near_zeros(dmap: DiscriminantMap, rng: random.Random, span: int = 6) -> Fraction:
    """Random rational parameter, often p-adically close to one of the zeros."""
    zs = [-Fraction(b) / a for a, b in dmap.forms.coeffs.entries if a != 0]
    while True:
        if zs and rng.random() < 0.7:
            z = rng.choice(zs)
            lam = z + random_rational(rng, dmap.prime, span)
        else:
            lam = random_rational(rng, dmap.prime, span)
        if all(a * lam + b != 0 for a, b in dmap.forms.coeffs.entries):
            return lam

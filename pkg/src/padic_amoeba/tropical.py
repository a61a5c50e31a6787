"""Valuation-of-forms maps, their min-plus tropicalizations, and witnesses.

A :class:`DiscriminantMap` sends ``x in Q^(m-1)`` to the point whose coordinate
``l`` is ``sum_i gamma[i][l] * v_p(f_i(x))``.  For the reduced discriminant both
the forms and the multipliers ``gamma`` are the kernel matrix ``B``; after a
change of variables only the forms move.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import DegenerateFamilyError, UndefinedPointError, UndefinedTropicalFormError
from .linalg import AffineFormSystem, Matrix, affine_change, det
from .padic import INF, Val, check_prime, val_p

Point = tuple[Fraction, ...]


@dataclass(frozen=True)
class DiscriminantMap:
    forms: AffineFormSystem
    gamma: Matrix
    prime: int

    def __post_init__(self):
        check_prime(self.prime)
        if self.gamma.shape != self.forms.coeffs.shape:
            raise ValueError(
                f"gamma shape {self.gamma.shape} does not match forms {self.forms.coeffs.shape}"
            )

    @classmethod
    def from_kernel(cls, B: Matrix, prime: int) -> "DiscriminantMap":
        """The reduced discriminant map of a kernel matrix ``B`` (rows ``beta_i``)."""
        return cls(AffineFormSystem(B), B, prime)

    @property
    def m(self) -> int:
        return self.forms.m

    @property
    def nforms(self) -> int:
        return self.forms.nforms

    def with_forms(self, forms: AffineFormSystem) -> "DiscriminantMap":
        return DiscriminantMap(forms, self.gamma, self.prime)

    def change_variables(self, I: Sequence[int]) -> "DiscriminantMap":
        """``F_I``: same multipliers, forms after :func:`affine_change`."""
        return self.with_forms(affine_change(self.forms, I))


@dataclass(frozen=True)
class TropicalParametricMap:
    gamma: Matrix
    val_table: tuple[tuple[Val, ...], ...]


def eval_F_exact(dmap: DiscriminantMap, lam: Sequence[Fraction | int]) -> Point:
    """Exact value of the valuation map at a rational parameter."""
    lam = tuple(Fraction(x) for x in lam)
    vals = []
    for i in range(dmap.nforms):
        v = val_p(dmap.forms.evaluate(i, lam), dmap.prime)
        if v == INF:
            raise UndefinedPointError(f"form {i} vanishes at {lam}")
        vals.append(v)
    return tuple(
        sum((Fraction(dmap.gamma[i, l]) * vals[i] for i in range(dmap.nforms)), Fraction(0))
        for l in range(dmap.m)
    )


def tropicalize(dmap: DiscriminantMap) -> TropicalParametricMap:
    table = tuple(
        tuple(val_p(c, dmap.prime) for c in dmap.forms.form(i)) for i in range(dmap.nforms)
    )
    return TropicalParametricMap(dmap.gamma, table)


def eval_tropical(tmap: TropicalParametricMap, r: Sequence[Fraction | int]) -> Point:
    """Min-plus evaluation; ``r`` has one entry per variable."""
    r = tuple(Fraction(x) for x in r)
    mins = []
    for i, row in enumerate(tmap.val_table):
        if len(r) != len(row) - 1:
            raise ValueError(f"expected {len(row) - 1} parameters, got {len(r)}")
        terms = [v + rj for v, rj in zip(row, r) if v != INF]
        if row[-1] != INF:
            terms.append(row[-1])
        if not terms:
            raise UndefinedTropicalFormError(f"row {i} of the valuation table is all infinite")
        mins.append(min(terms))
    m = tmap.gamma.ncols
    return tuple(
        sum((Fraction(tmap.gamma[i, l]) * mins[i] for i in range(len(mins))), Fraction(0))
        for l in range(m)
    )


def enumerate_index_sets(F: AffineFormSystem) -> list[tuple[int, ...]]:
    """Sorted (m-1)-subsets of form indices with a unique common zero (0-based)."""
    k = F.m - 1
    out = []
    for I in combinations(range(F.nforms), k):
        minor = Matrix((F.coeffs.row(i)[:-1] for i in I), ncols=k) if k else None
        if k == 0 or det(minor) != 0:
            out.append(I)
    return out


def approximation_constant(gamma: Matrix) -> Fraction:
    """Sup-norm Lipschitz constant of the witness construction.

    Every elimination stage moves each form's valuation by less than epsilon,
    so a coordinate moves by at most ``(m - 1) * sum_i |gamma[i][l]|`` times
    epsilon.  For m = 2 this is the largest absolute column sum of gamma.
    """
    m = gamma.ncols
    col = max((sum(abs(Fraction(x)) for x in gamma.column(l)) for l in range(m)), default=0)
    return max(m - 1, 1) * Fraction(col)


@dataclass(frozen=True)
class Witness:
    index_set: tuple[int, ...]
    exponents: tuple[Fraction, ...]
    transformed: DiscriminantMap
    bound: Fraction


def _frac_part(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


def witness_index_set(
    dmap: DiscriminantMap, lam: Sequence[Fraction | int], eps: Fraction | int
) -> Witness:
    """Pick ``I`` and exponents ``l`` with ``phi_{F_I}(l)`` close to ``F(lam)``.

    Variables are eliminated one at a time.  At stage ``j`` each form with a
    nonzero ``x_j`` coefficient gets ``N_i = v(f_i(point)) - v(c_{i,j})``; the
    form with the largest ``N_i`` becomes ``x_j`` and the parameter is replaced
    by an element of valuation ``l_j`` just below that maximum.  Earlier
    replaced coordinates are handled symbolically: their valuations have
    pairwise distinct non-integer fractional parts, so every form valuation is
    an exact minimum of term valuations.

    The result satisfies ``|phi_{F_I}(l) - F(lam)|_inf <= b * eps`` with ``b``
    from :func:`approximation_constant`.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    p = dmap.prime
    m = dmap.m
    lam = [Fraction(x) for x in lam]
    if len(lam) != m - 1:
        raise ValueError(f"expected {m - 1} parameters, got {len(lam)}")
    for i in range(dmap.nforms):
        if dmap.forms.evaluate(i, lam) == 0:
            raise UndefinedPointError(f"form {i} vanishes at {tuple(lam)}")

    coeffs = [[Fraction(x) for x in row] for row in dmap.forms.coeffs.entries]
    exps: dict[int, Fraction] = {}  # variable -> valuation of its (symbolic) value
    chosen: list[int] = []

    def form_val(row: list[Fraction]) -> Fraction | float:
        rational = row[-1] + sum(
            (row[s] * lam[s] for s in range(m - 1) if s not in exps), Fraction(0)
        )
        terms = [val_p(row[s], p) + exps[s] for s in exps if row[s] != 0]
        v0 = val_p(rational, p)
        if v0 != INF:
            terms.append(Fraction(v0))
        return min(terms) if terms else INF

    for j in range(m - 1):
        cand = [i for i in range(len(coeffs)) if coeffs[i][j] != 0 and i not in chosen]
        if not cand:
            raise DegenerateFamilyError(
                f"no form depends on variable {j}; the parametrization is under-determined"
            )
        N = {i: form_val(coeffs[i]) - val_p(coeffs[i][j], p) for i in cand}
        i_star = max(cand, key=lambda i: (N[i], -i))
        top = N[i_star]
        avoid_vals = set(N.values())
        avoid_frac = {Fraction(0)} | {_frac_part(e) for e in exps.values()}
        k = 2
        while True:
            ell = top - eps / k
            if ell not in avoid_vals and _frac_part(ell) not in avoid_frac:
                break
            k += 1
        # substitute x_j -> (x_j - sum_{s != j} c_s x_s - c_m) / c_j so form i_star == x_j
        piv = coeffs[i_star]
        cj = piv[j]
        new = []
        for row in coeffs:
            f = row[j] / cj
            nr = [a - f * b for a, b in zip(row, piv)]
            nr[j] = f
            new.append(nr)
        coeffs = new
        exps[j] = ell + val_p(cj, p)
        chosen.append(i_star)

    transformed = dmap.change_variables(chosen)
    return Witness(
        index_set=tuple(chosen),
        exponents=tuple(exps[j] for j in range(m - 1)),
        transformed=transformed,
        bound=approximation_constant(dmap.gamma) * eps,
    )


def sup_distance(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return max((abs(x - y) for x, y in zip(a, b)), default=Fraction(0))


def sample_images(dmap: DiscriminantMap, params: Sequence[Sequence[Fraction]]) -> list[Point]:
    """Exact images of the given parameters, skipping points where a form vanishes.

    This is the only geometric access to the amoeba offered for m >= 3.
    """
    out = []
    for lam in params:
        try:
            out.append(eval_F_exact(dmap, lam))
        except UndefinedPointError:
            continue
    return out

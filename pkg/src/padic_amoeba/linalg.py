"""Exact integer and rational linear algebra.

Matrices are small and dense, so they are stored as immutable tuples of rows
holding ``int`` or ``Fraction`` entries.  Everything here is exact; there is no
floating point anywhere in this module.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence, Union

from .errors import (
    DegenerateSupportError,
    InvalidSupportError,
    NonTransversalIndexSetError,
    ParseError,
)

Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class Matrix:
    """Dense exact matrix, row-major."""

    entries: tuple[tuple[Scalar, ...], ...]
    ncols: int

    def __init__(self, rows: Iterable[Iterable[Scalar]], ncols: int | None = None):
        data = tuple(tuple(_normalize(x) for x in row) for row in rows)
        if ncols is None:
            if not data:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(data[0])
        for row in data:
            if len(row) != ncols:
                raise ValueError(f"ragged matrix: expected {ncols} columns, got {len(row)}")
        object.__setattr__(self, "entries", data)
        object.__setattr__(self, "ncols", ncols)

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, idx: tuple[int, int]) -> Scalar:
        i, j = idx
        return self.entries[i][j]

    def row(self, i: int) -> tuple[Scalar, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[Scalar, ...]:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[tuple[Scalar, ...]]:
        return [self.column(j) for j in range(self.ncols)]

    @property
    def T(self) -> "Matrix":
        if not self.nrows:
            return Matrix(([] for _ in range(self.ncols)), ncols=0)
        return Matrix(zip(*self.entries), ncols=self.nrows)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.columns()
        return Matrix(
            ([sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.entries),
            ncols=other.ncols,
        )

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def is_integral(self) -> bool:
        return all(isinstance(x, int) for row in self.entries for x in row)

    def tolist(self) -> list[list[Scalar]]:
        return [list(r) for r in self.entries]

    def __repr__(self) -> str:
        return f"Matrix({self.tolist()!r})"


def _normalize(x: Scalar) -> Scalar:
    if isinstance(x, bool):
        raise TypeError("booleans are not matrix entries")
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        return _normalize(Fraction(x))
    raise TypeError(f"unsupported matrix entry {x!r}")


def identity(n: int) -> Matrix:
    return Matrix(([int(i == j) for j in range(n)] for i in range(n)), ncols=n)


def rank(M: Matrix) -> int:
    rows = [[Fraction(x) for x in r] for r in M.entries]
    r = 0
    for c in range(M.ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(r + 1, len(rows)):
            if rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


def inverse(M: Matrix) -> Matrix:
    """Gauss-Jordan inverse over Q; raises ``ZeroDivisionError`` if singular."""
    n = M.nrows
    if n != M.ncols:
        raise ValueError("inverse of a non-square matrix")
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(M.entries)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[c], aug[piv] = aug[piv], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[c])]
    return Matrix((row[n:] for row in aug), ncols=n)


def det(M: Matrix) -> Fraction:
    n = M.nrows
    rows = [[Fraction(x) for x in r] for r in M.entries]
    out = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            out = -out
        out *= rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] / rows[c][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return out


# ---------------------------------------------------------------------------
# support matrices and kernels


def build_ahat(A: Matrix) -> Matrix:
    """Prepend a row of ones to the support matrix ``A``.

    ``A`` is ``n x (n+m+1)`` with ``m >= 1``; the result is ``(n+1) x (n+m+1)``.
    """
    n, cols = A.shape
    if not A.is_integral():
        raise InvalidSupportError("support matrix must have integer entries")
    if cols - n - 1 < 1:
        raise InvalidSupportError(
            f"support matrix {n}x{cols} has m = {cols - n - 1}; need at least n+2 columns"
        )
    return Matrix([(1,) * cols, *A.entries], ncols=cols)


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def integer_kernel(M: Matrix, reduce: bool = True) -> Matrix:
    """Integer basis of the right kernel lattice ``{x in Z^c : M x = 0}``.

    Unimodular column operations bring ``M`` to column echelon form while the
    same operations are applied to an identity matrix; the columns of the
    transform past the rank span the full (saturated) kernel lattice.  The
    basis is then LLL-reduced so entries stay small.

    Raises ``DegenerateSupportError`` when ``M`` lacks full row rank.
    """
    if not M.is_integral():
        raise ValueError("integer_kernel needs an integer matrix")
    r, c = M.shape
    work = [list(row) for row in M.entries]
    U = [[int(i == j) for j in range(c)] for i in range(c)]  # columns are tracked

    def colop(j1: int, j2: int, a: int, b: int, cc: int, d: int) -> None:
        # (col_j1, col_j2) <- (a col_j1 + b col_j2, cc col_j1 + d col_j2)
        for mat in (work, U):
            for row in mat:
                x, y = row[j1], row[j2]
                row[j1], row[j2] = a * x + b * y, cc * x + d * y

    pc = 0
    for i in range(r):
        if pc >= c:
            break
        for j in range(pc + 1, c):
            b = work[i][j]
            if b == 0:
                continue
            a = work[i][pc]
            g, x, y = _egcd(a, b)
            colop(pc, j, x, y, -b // g, a // g)
        if work[i][pc] != 0:
            pc += 1
    if pc < r:
        raise DegenerateSupportError(
            f"matrix of shape {r}x{c} has rank {pc} < {r}; support is not in general position"
        )
    basis = [[U[k][j] for k in range(c)] for j in range(pc, c)]
    if reduce and basis:
        basis = lll_reduce(basis)
    basis = [_primitive(v) for v in basis]
    out = Matrix(zip(*basis), ncols=len(basis)) if basis else Matrix(([] for _ in range(c)), ncols=0)
    if not (M @ out).is_zero():
        raise AssertionError("kernel check failed")
    return out


def _primitive(v: Sequence[int]) -> list[int]:
    g = math.gcd(*v)
    return [x // g for x in v] if g > 1 else list(v)


def lll_reduce(basis: list[list[int]], delta: Fraction = Fraction(3, 4)) -> list[list[int]]:
    """Textbook LLL on integer row vectors, exact rational Gram-Schmidt."""
    b = [list(v) for v in basis]
    n = len(b)

    def dot(u, v):
        return sum(x * y for x, y in zip(u, v))

    def gram_schmidt():
        bstar: list[list[Fraction]] = []
        mu = [[Fraction(0)] * n for _ in range(n)]
        norms: list[Fraction] = []
        for i in range(n):
            v = [Fraction(x) for x in b[i]]
            for j in range(i):
                mu[i][j] = dot(b[i], bstar[j]) / norms[j]
                v = [x - mu[i][j] * y for x, y in zip(v, bstar[j])]
            bstar.append(v)
            norms.append(dot(v, v))
        return mu, norms

    mu, norms = gram_schmidt()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                mu, norms = gram_schmidt()
        if norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            mu, norms = gram_schmidt()
            k = max(k - 1, 1)
    return b


def same_column_span(B1: Matrix, B2: Matrix) -> bool:
    """True when the columns of two matrices span the same subspace of Q^r."""
    if B1.nrows != B2.nrows:
        return False
    r1, r2 = rank(B1), rank(B2)
    joined = Matrix((a + b for a, b in zip(B1.entries, B2.entries)), ncols=B1.ncols + B2.ncols)
    return r1 == r2 == rank(joined)


# ---------------------------------------------------------------------------
# affine forms


@dataclass(frozen=True)
class AffineFormSystem:
    """Affine forms ``f_i(x) = c_{i,1} x_1 + ... + c_{i,m-1} x_{m-1} + c_{i,m}``.

    Row ``i`` of ``coeffs`` holds the variable coefficients followed by the
    constant term.
    """

    coeffs: Matrix

    def __post_init__(self):
        if self.coeffs.ncols < 1:
            raise InvalidSupportError("an affine form system needs m >= 1")

    @property
    def m(self) -> int:
        return self.coeffs.ncols

    @property
    def nforms(self) -> int:
        return self.coeffs.nrows

    def form(self, i: int) -> tuple[Scalar, ...]:
        return self.coeffs.row(i)

    def evaluate(self, i: int, x: Sequence[Scalar]) -> Fraction:
        row = self.coeffs.row(i)
        if len(x) != self.m - 1:
            raise ValueError(f"expected {self.m - 1} parameters, got {len(x)}")
        return sum((Fraction(c) * xv for c, xv in zip(row, x)), Fraction(row[-1]))

    def is_transversal(self, I: Sequence[int]) -> bool:
        if len(I) != self.m - 1 or len(set(I)) != len(I):
            return False
        minor = Matrix((self.coeffs.row(i)[:-1] for i in I), ncols=self.m - 1)
        return det(minor) != 0 if I else True


def affine_change(F: AffineFormSystem, I: Sequence[int]) -> AffineFormSystem:
    """Change variables so that form ``I[j]`` becomes the coordinate ``x_j``.

    The substitution is ``x -> S x`` in homogeneous coordinates, where ``S`` is
    the inverse of the matrix stacking the rows ``I`` over ``(0, ..., 0, 1)``.
    Indices are 0-based.
    """
    m = F.m
    I = list(I)
    if len(I) != m - 1:
        raise NonTransversalIndexSetError(f"index set must have {m - 1} entries, got {len(I)}")
    if not all(0 <= i < F.nforms for i in I):
        raise NonTransversalIndexSetError(f"index out of range in {I}")
    top = [F.coeffs.row(i) for i in I]
    last = tuple(int(j == m - 1) for j in range(m))
    try:
        S = inverse(Matrix([*top, last], ncols=m))
    except ZeroDivisionError:
        raise NonTransversalIndexSetError(
            f"forms {I} have no unique common zero"
        ) from None
    return AffineFormSystem(F.coeffs @ S)


def transversal_index_sets(F: AffineFormSystem) -> list[tuple[int, ...]]:
    return [I for I in combinations(range(F.nforms), F.m - 1) if F.is_transversal(I)]


# ---------------------------------------------------------------------------
# text / JSON matrix formats


def format_scalar(x: Scalar) -> str:
    return str(Fraction(x))


def parse_matrix(text: str) -> Matrix:
    """Parse either the plain text format or its JSON mirror.

    Text: first line ``rows cols``, then one row per line of space separated
    integers or ``p/q`` rationals.  JSON: ``{"rows": r, "cols": c, "entries": [...]}``.
    """
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty matrix input")
    if stripped.startswith("{"):
        try:
            obj = json.loads(stripped)
            r, c, entries = int(obj["rows"]), int(obj["cols"]), obj["entries"]
            rows = [[_parse_scalar(str(x)) for x in row] for row in entries]
        except (ValueError, KeyError, TypeError) as exc:
            raise ParseError(f"bad JSON matrix: {exc}") from exc
    else:
        lines = [ln.split("#", 1)[0].split() for ln in stripped.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines:
            raise ParseError("matrix input has no data lines")
        try:
            r, c = (int(t) for t in lines[0])
        except ValueError as exc:
            raise ParseError(f"bad header line {' '.join(lines[0])!r}; expected 'rows cols'") from exc
        rows = [[_parse_scalar(t) for t in ln] for ln in lines[1:]]
    if r < 0 or c < 0:
        raise ParseError("negative dimensions")
    if len(rows) != r or any(len(row) != c for row in rows):
        raise ParseError(f"matrix body does not match declared shape {r}x{c}")
    return Matrix(rows, ncols=c)


def _parse_scalar(tok: str) -> Scalar:
    try:
        return _normalize(Fraction(tok))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad matrix entry {tok!r}") from exc


def format_matrix(M: Matrix) -> str:
    lines = [f"{M.nrows} {M.ncols}"]
    lines += [" ".join(format_scalar(x) for x in row) for row in M.entries]
    return "\n".join(lines) + "\n"


def matrix_to_json(M: Matrix) -> dict:
    return {
        "rows": M.nrows,
        "cols": M.ncols,
        "entries": [[x if isinstance(x, int) else format_scalar(x) for x in row] for row in M.entries],
    }

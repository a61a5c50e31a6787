"""A family of planar supports whose amoebas have many complement components.

For ``k >= 2`` and a prime ``p`` the kernel matrix ``B = D^T`` has columns

    D[0] = (-k, -k, 1, 1, ..., 1)
    D[1] = (-1, 1, -p, p, -p^2, p^2, ..., -p^k, p^k)

so the zeros of the forms are ``-1/k, 1/k`` and ``-p^i, p^i``.  The support
``A`` is the matrix ``N`` orthogonal to ``D`` with its last row dropped.
"""

from __future__ import annotations

import warnings
from typing import NamedTuple, Optional

from .amoeba2d import assemble_amoeba
from .arrangement import ComplementCount, count_complement
from .errors import InvalidSupportError, InvariantError
from .linalg import Matrix
from .padic import check_prime
from .tropical import DiscriminantMap


class ExtremalFamily(NamedTuple):
    D: Matrix
    A: Matrix

    @property
    def B(self) -> Matrix:
        return self.D.T


def target_components(k: int) -> int:
    return k * k + k + 1


def extremal_family(k: int, p: int) -> ExtremalFamily:
    if not isinstance(k, int) or isinstance(k, bool) or k < 2:
        raise InvalidSupportError(f"k must be an integer >= 2, got {k!r}")
    check_prime(p)
    if k == 2:
        warnings.warn("k = 2 is below the range where the lower bound is proved", stacklevel=2)

    width = 2 * k + 2
    row0 = [-k, -k] + [1] * (2 * k)
    row1 = [-1, 1]
    for i in range(1, k + 1):
        row1 += [-(p**i), p**i]
    D = Matrix([row0, row1])

    N = []
    for i in range(1, k + 1):
        odd = [0] * width
        odd[0], odd[1], odd[2 * i] = -k * p**i + 1, k * p**i + 1, 2 * k
        even = [0] * width
        even[0], even[1], even[2 * i + 1] = k * p**i + 1, -k * p**i + 1, 2 * k
        N += [odd, even]
    N = Matrix(N)
    if not (N @ D.T).is_zero():
        raise InvariantError("extremal support is not orthogonal to D")
    return ExtremalFamily(D, Matrix(N.entries[:-1], ncols=width))


def extremal_map(k: int, p: int) -> DiscriminantMap:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        fam = extremal_family(k, p)
    return DiscriminantMap.from_kernel(fam.B, p)


class ExtremalSearch(NamedTuple):
    k: int
    prime: Optional[int]
    count: Optional[ComplementCount]
    tried: tuple[tuple[int, int], ...]  # (p, total) pairs


def search_prime(k: int, limit: int = 100) -> ExtremalSearch:
    """Smallest prime ``p <= limit`` whose family reaches ``k^2 + k + 1`` components."""
    from .padic import is_prime

    goal = target_components(k)
    tried = []
    for p in range(2, limit + 1):
        if not is_prime(p):
            continue
        count = count_complement(assemble_amoeba(extremal_map(k, p)), 2 * k - 1)
        tried.append((p, count.total))
        if count.total >= goal:
            return ExtremalSearch(k, p, count, tuple(tried))
    return ExtremalSearch(k, None, None, tuple(tried))

"""p-adic valuations and digit expansions of rational numbers.

Valuations are plain Python ints, with ``INF`` (``math.inf``) standing in for
the valuation of zero.  Digits follow the canonical expansion
``q = sum_{i >= v} d_i p**i`` with ``0 <= d_i < p``; negative rationals get the
usual infinite expansion (``-3 = 2*3 + 2*3**2 + ...`` in Q_3).
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .errors import InvalidPrimeError

INF = math.inf

Val = Union[int, float]
RationalLike = Union[int, Fraction]

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@lru_cache(maxsize=256)
def is_prime(p: int) -> bool:
    """Deterministic Miller-Rabin, exact for every ``p < 2**64``."""
    if p < 2:
        return False
    for q in _MR_BASES:
        if p % q == 0:
            return p == q
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


def check_prime(p: int) -> int:
    if isinstance(p, bool) or not isinstance(p, int):
        raise InvalidPrimeError(f"prime must be an integer, got {p!r}")
    if p >= 2**64:
        raise InvalidPrimeError(f"primes >= 2**64 are not supported (got {p})")
    if not is_prime(p):
        raise InvalidPrimeError(f"{p} is not prime")
    return p


def _int_val(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def val_p(q: RationalLike, p: int) -> Val:
    """Return the p-adic valuation of ``q`` (``INF`` for zero)."""
    check_prime(p)
    q = Fraction(q)
    if q == 0:
        return INF
    return _int_val(q.numerator, p) - _int_val(q.denominator, p)


def val_diff(q1: RationalLike, q2: RationalLike, p: int) -> Val:
    return val_p(Fraction(q1) - Fraction(q2), p)


class DigitStream:
    """Lazily expanded p-adic digits of a rational.

    Digits are memoized as they are produced.  Extension happens under a lock,
    so one stream may be shared between threads.
    """

    def __init__(self, source: RationalLike, prime: int):
        self.source = Fraction(source)
        self.prime = check_prime(prime)
        self.start_index = val_p(self.source, prime)
        self._digits: list[int] = []
        self._lock = threading.Lock()
        if self.source == 0:
            self._rest = Fraction(0)
        else:
            # unit part u = q / p**v, so digits of u at 0,1,... are the
            # digits of q at v, v+1, ...
            self._rest = self.source / Fraction(prime) ** self.start_index

    def _extend(self, count: int) -> None:
        p = self.prime
        with self._lock:
            rest = self._rest
            while len(self._digits) < count:
                num, den = rest.numerator, rest.denominator
                d = num * pow(den, -1, p) % p
                self._digits.append(d)
                rest = (rest - d) / p
            self._rest = rest

    def __getitem__(self, i: int) -> int:
        if self.source == 0 or i < self.start_index:
            return 0
        k = i - self.start_index
        if k >= len(self._digits):
            self._extend(k + 1)
        return self._digits[k]

    def window(self, lo: int, hi: int) -> list[int]:
        """Digits at indices ``lo`` .. ``hi`` inclusive."""
        return [self[i] for i in range(lo, hi + 1)]

    def partial_sum(self, upto: int) -> Fraction:
        """``sum_{v <= i <= upto} d_i p**i``."""
        if self.source == 0:
            return Fraction(0)
        p = Fraction(self.prime)
        return sum(
            (self[i] * p**i for i in range(self.start_index, upto + 1)),
            Fraction(0),
        )

    def __repr__(self) -> str:
        return f"DigitStream({self.source}, p={self.prime})"


@lru_cache(maxsize=4096)
def _stream(q: Fraction, p: int) -> DigitStream:
    return DigitStream(q, p)


def digit(q: RationalLike, p: int, i: int) -> int:
    """The digit of ``q`` at index ``i`` of its canonical p-adic expansion."""
    check_prime(p)
    return _stream(Fraction(q), p)[i]


def digits(q: RationalLike, p: int, lo: int, hi: int) -> list[int]:
    check_prime(p)
    return _stream(Fraction(q), p).window(lo, hi)

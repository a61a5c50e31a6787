import threading
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from padic_amoeba.errors import InvalidPrimeError
from padic_amoeba.padic import INF, DigitStream, check_prime, digit, digits, is_prime, val_p, val_diff

primes = st.sampled_from([2, 3, 5, 7, 11, 101])
nonzero_q = st.fractions(max_denominator=10**6).filter(lambda q: q != 0)


def test_small_primes():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_large_prime_and_carmichael():
    assert is_prime(2**61 - 1)
    assert not is_prime(561)
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7


@pytest.mark.parametrize("bad", [0, 1, -3, 4, 91, 2.0, "3", True, 2**64 + 13])
def test_check_prime_rejects(bad):
    with pytest.raises(InvalidPrimeError):
        check_prime(bad)


def test_valuation_examples():
    assert val_p(12, 2) == 2
    assert val_p(Fraction(3, 4), 2) == -2
    assert val_p(Fraction(-1, 27), 3) == -3
    assert val_p(7, 3) == 0
    assert val_p(0, 5) == INF
    assert val_diff(Fraction(1, 3), Fraction(1, 3), 3) == INF
    assert val_diff(1, Fraction(3, 11), 3) == 0


@given(nonzero_q, nonzero_q, primes)
def test_valuation_is_multiplicative(a, b, p):
    assert val_p(a * b, p) == val_p(a, p) + val_p(b, p)


@given(nonzero_q, nonzero_q, primes)
def test_valuation_is_ultrametric(a, b, p):
    assert val_p(a + b, p) >= min(val_p(a, p), val_p(b, p))


@given(st.fractions(max_denominator=10**4), primes, st.integers(0, 12))
def test_partial_sums_converge(q, p, extra):
    s = DigitStream(q, p)
    if q == 0:
        assert s.partial_sum(5) == 0
        return
    upto = s.start_index + extra
    assert val_p(q - s.partial_sum(upto), p) >= upto + 1


@given(st.fractions(max_denominator=1000), primes, st.integers(-6, 6))
def test_digits_in_range(q, p, i):
    assert 0 <= digit(q, p, i) < p


def test_negative_numbers_have_infinite_expansions():
    assert digits(-1, 3, 0, 5) == [2] * 6
    assert digits(Fraction(-1, 2), 3, 0, 3) == [1, 1, 1, 1]


def test_first_digit_sits_at_the_valuation():
    assert digits(Fraction(1, 3), 3, -2, 1) == [0, 1, 0, 0]
    assert digit(Fraction(1, 3), 3, val_p(Fraction(1, 3), 3)) != 0


def test_shared_stream_is_thread_safe():
    q, p = Fraction(11, 35), 3
    expected = DigitStream(q, p).window(-1, 400)
    shared = DigitStream(q, p)
    results = [None] * 8

    def worker(k):
        results[k] = [shared[i] for i in range(-1, 401)]

    threads = [threading.Thread(target=worker, args=(k,)) for k in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r == expected for r in results)

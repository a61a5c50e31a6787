import warnings
from fractions import Fraction

import pytest

from padic_amoeba.amoeba2d import zeros
from padic_amoeba.errors import InvalidPrimeError, InvalidSupportError
from padic_amoeba.extremal import extremal_family, extremal_map, search_prime, target_components
from padic_amoeba.linalg import build_ahat, integer_kernel, same_column_span


def test_k3_p2_matrix():
    fam = extremal_family(3, 2)
    assert fam.D.tolist() == [[-3, -3, 1, 1, 1, 1, 1, 1], [-1, 1, -2, 2, -4, 4, -8, 8]]
    assert fam.A.shape == (5, 8)
    assert fam.B.shape == (8, 2)


@pytest.mark.parametrize("k,p", [(2, 3), (3, 3), (4, 5), (5, 7)])
def test_support_is_orthogonal_and_kernel_matches(k, p):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        fam = extremal_family(k, p)
    assert (build_ahat(fam.A) @ fam.B).is_zero()
    assert same_column_span(integer_kernel(build_ahat(fam.A)), fam.B)


def test_zeros_of_k3_p3():
    Z = zeros(extremal_map(3, 3))
    expected = {Fraction(s, 3) for s in (-1, 1)} | {s * 3**i for s in (-1, 1) for i in (1, 2, 3)}
    assert set(Z.zeros) == expected


def test_k2_warns():
    with pytest.warns(UserWarning):
        extremal_family(2, 3)


@pytest.mark.parametrize("k", [1, 0, -2, 2.5, True])
def test_bad_k(k):
    with pytest.raises(InvalidSupportError):
        extremal_family(k, 3)


def test_bad_p():
    with pytest.raises(InvalidPrimeError):
        extremal_family(3, 9)


def test_search_finds_small_primes():
    assert target_components(3) == 13
    found = search_prime(3)
    assert found.prime == 3 and found.count.total >= 13
    assert found.tried == ((2, 12), (3, 14))
    assert search_prime(2).prime == 2

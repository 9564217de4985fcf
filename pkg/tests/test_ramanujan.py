from math import gcd

import pytest
from hypothesis import given, strategies as st

from hzneck import ramanujan
from hzneck.arith import divisors, euler_phi, mobius
from hzneck.ramanujan import (RamanujanTable, c_kld, c_kld_oracle, cohen_c, ramanujan_c,
                              root_of_unity_oracle)


@pytest.mark.parametrize("n, k, expected", [(0, 6, 2), (1, 6, 1), (4, 6, -1), (1, 4, 0), (2, 4, -2)])
def test_ramanujan_examples(n, k, expected):
    assert ramanujan_c(n, k) == expected


@pytest.mark.parametrize("n, k, r, expected", [(4, 2, 2, 3), (1, 2, 2, -1)])
def test_cohen_examples(n, k, r, expected):
    assert cohen_c(n, k, r) == expected


def test_specializations():
    for k in range(1, 51):
        assert ramanujan_c(0, k) == euler_phi(k)
        assert ramanujan_c(1, k) == mobius(k)
        assert cohen_c(7, k, 1) == ramanujan_c(7, k)


def test_cohen_matches_definition_on_grid():
    # the divisor form of c_r is derived, so check it against the exponential sum everywhere
    for r in range(1, 4):
        for k in range(1, 13):
            for n in range(51):
                assert cohen_c(n, k, r) == root_of_unity_oracle(n, k, r), (n, k, r)


@given(st.integers(0, 10**9), st.integers(1, 400))
def test_ramanujan_random_against_definition(n, k):
    assert ramanujan_c(n, k) == root_of_unity_oracle(n, k)


@given(st.integers(0, 500), st.integers(1, 20), st.integers(1, 20))
def test_multiplicative_in_k(n, k1, k2):
    if gcd(k1, k2) == 1:
        assert ramanujan_c(n, k1 * k2) == ramanujan_c(n, k1) * ramanujan_c(n, k2)


@given(st.integers(0, 200), st.integers(1, 60))
def test_depends_on_n_through_gcd(n, k):
    assert ramanujan_c(n, k) == ramanujan_c(gcd(n, k), k) == ramanujan_c(n + k, k)


@given(st.integers(1, 200))
def test_orthogonality_sum(k):
    # sum_{d | k} c(n, d) = k if k | n else 0
    for n in range(0, 2 * k + 1):
        assert sum(ramanujan_c(n, d) for d in divisors(k)) == (k if n % k == 0 else 0)


@pytest.mark.parametrize("k, l, d, expected", [(2, 1, 2, -1), (4, 1, 2, -2)])
def test_kld_examples(k, l, d, expected):
    assert c_kld(k, l, d) == expected


def test_kld_full_grid():
    for k in range(1, 25):
        for l in divisors(k):
            for d in divisors(k):
                assert c_kld_oracle(k, l, d) == c_kld(k, l, d) == ramanujan_c(k // d, k // l)
        for d in divisors(k):
            assert c_kld(k, k, d) == 1


def test_kld_requires_divisors():
    with pytest.raises(ValueError):
        c_kld(6, 4, 2)
    with pytest.raises(ValueError):
        c_kld(6, 2, 5)


def test_table_consistency():
    table = RamanujanTable.build(30, 30)
    table.check()
    assert table[(4, 6)] == -1
    RamanujanTable.build(20, 10, r=2).check()


def test_oracle_rounding_guard():
    with pytest.raises(ramanujan.OracleRoundingError):
        ramanujan._round_complex(complex(0.4, 0.0), "test")
    with pytest.raises(ValueError):
        root_of_unity_oracle(1, 101, 3)


@pytest.mark.parametrize("args", [(-1, 3), (1, 0)])
def test_invalid_arguments(args):
    with pytest.raises(ValueError):
        ramanujan_c(*args)

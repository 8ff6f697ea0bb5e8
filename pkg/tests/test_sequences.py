from math import gcd

import pytest
from hypothesis import given, strategies as st

from froblab.sequences import SequenceKind, fib, lucas, seq


def test_fib_seed_values():
    assert fib(0) == 0
    assert fib(1) == 1
    assert fib(2) == 1 == fib(1)


def test_fib_known_terms():
    assert fib(6) == 8
    assert fib(8) == 21
    assert fib(10) == 55


def test_lucas_seed_and_known_terms():
    assert lucas(0) == 2
    assert lucas(1) == 1
    assert [lucas(n) for n in range(6)] == [2, 1, 3, 4, 7, 11]


def test_recurrence_up_to_200():
    for n in range(2, 201):
        assert fib(n) == fib(n - 1) + fib(n - 2)
        assert lucas(n) == lucas(n - 1) + lucas(n - 2)


def test_triple_identity():
    # fib(i+k) = fib(i+2)*fib(k) - fib(i)*fib(k-2): the identity that turns
    # the grid value x*F_{i+2} + y*F_{i+k} into (x+y*F_k)*F_{i+2} - y*F_{k-2}*F_i.
    for i in range(3, 41):
        for k in range(3, 41):
            assert fib(i + k) == fib(i + 2) * fib(k) - fib(i) * fib(k - 2)


def test_lucas_shift_identity():
    for m in range(3, 41):
        for n in range(m, 41):
            assert lucas(n) == lucas(m) * fib(n - m + 1) + lucas(m - 1) * fib(n - m)


def test_coprimality_two_apart():
    for i in range(3, 41):
        assert gcd(fib(i), fib(i + 2)) == 1
        assert gcd(lucas(i), lucas(i + 2)) == 1


def test_seq_dispatch():
    assert seq(SequenceKind.FIBONACCI, 10) == 55
    assert seq("fib", 10) == 55
    assert seq("fibonacci", 0) == 0
    assert seq("lucas", 0) == 2
    assert seq("LUCAS", 5) == 11


def test_kind_parse_rejects_unknown():
    with pytest.raises(ValueError):
        SequenceKind.parse("tribonacci")


def test_negative_index_rejected():
    with pytest.raises(ValueError):
        fib(-1)
    with pytest.raises(ValueError):
        lucas(-3)


@given(st.integers(min_value=2, max_value=500))
def test_fib_lucas_product_identity(n):
    # L_n * F_n = F_2n, a classical cross-check that both caches stay sane.
    assert lucas(n) * fib(n) == fib(2 * n)


@given(st.integers(min_value=0, max_value=400))
def test_cached_terms_are_stable(n):
    assert fib(n) == fib(n)
    assert lucas(n) == lucas(n)

import pytest
from hypothesis import given, strategies as st

from gibtiles.sequences import (
    COMBINATORIAL, DOUBLING_THRESHOLD, FIBONACCI, LUCAS, MAX_INDEX, GibonacciParams,
    IndexOutOfRange, Terms, f_comb, fib, fib_doubling, fib_iterative, gib, gib_swapped, lucas,
)

ints = st.integers(min_value=-10**6, max_value=10**6)
idx = st.integers(min_value=-300, max_value=300)


def naive(g0, g1, n):
    # independent oracle: list-based forward/backward recurrence
    seq = {0: g0, 1: g1}
    for k in range(2, n + 1):
        seq[k] = seq[k - 1] + seq[k - 2]
    for k in range(-1, n - 1, -1):
        seq[k] = seq[k + 2] - seq[k + 1]
    return seq[n]


def test_named_values():
    assert (fib(0), fib(1), fib(10), fib(-4)) == (0, 1, 55, -3)
    assert (f_comb(1), f_comb(2), f_comb(0), f_comb(-1), f_comb(-2), f_comb(-3)) == (1, 2, 1, 0, 1, -1)
    assert (lucas(0), lucas(1), lucas(2), lucas(7)) == (2, 1, 3, 29)
    assert gib(LUCAS, -1) == -1
    assert gib_swapped(LUCAS) == GibonacciParams(1, 2)
    assert gib(GibonacciParams(1, 2), 5) == 13


def test_instances_agree():
    for n in range(-50, 51):
        assert gib(LUCAS, n) == lucas(n)
        assert gib(FIBONACCI, n) == fib(n)
        assert gib(COMBINATORIAL, n) == f_comb(n)


def test_negafibonacci():
    for n in range(0, 120):
        assert fib(-n) == (-1) ** (n + 1) * fib(n)


def test_paths_agree_across_threshold():
    for n in range(-3 * DOUBLING_THRESHOLD, 3 * DOUBLING_THRESHOLD):
        assert fib_iterative(n) == fib_doubling(n)
    for p in (LUCAS, GibonacciParams(7, -3)):
        for n in range(-150, 151):
            assert gib(p, n) == naive(p.g0, p.g1, n)


def test_large_index():
    # F_1000 has 209 digits; check the recurrence and Cassini at the top end
    n = 1000
    assert len(str(fib(n))) == 209
    assert fib(n + 1) == fib(n) + fib(n - 1)
    assert fib(n) ** 2 - fib(n + 1) * fib(n - 1) == (-1) ** (n + 1)


def test_index_bound():
    with pytest.raises(IndexOutOfRange):
        fib(MAX_INDEX + 1)
    with pytest.raises(IndexOutOfRange):
        gib(LUCAS, -MAX_INDEX - 1)


def test_terms_table():
    t = Terms(LUCAS)
    assert [t[k] for k in range(-2, 6)] == [lucas(k) for k in range(-2, 6)]


@given(ints, ints, idx)
def test_recurrence_holds_everywhere(g0, g1, n):
    p = GibonacciParams(g0, g1)
    assert gib(p, n) == gib(p, n - 1) + gib(p, n - 2)


@given(ints, ints, idx)
def test_linear_in_initial_values(g0, g1, n):
    # G_n = g0 F_{n-1} + g1 F_n
    assert gib(GibonacciParams(g0, g1), n) == g0 * fib(n - 1) + g1 * fib(n)


@given(ints, ints, ints, ints, idx)
def test_additive(a0, a1, b0, b1, n):
    p, q = GibonacciParams(a0, a1), GibonacciParams(b0, b1)
    assert gib(p + q, n) == gib(p, n) + gib(q, n)

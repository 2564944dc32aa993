import csv
import io

import pytest
from hypothesis import given, settings, strategies as st

from gibtiles import number_theory as nt
from gibtiles.rng import SplitMix64
from gibtiles.sequences import COMBINATORIAL, FIBONACCI, LUCAS, GibonacciParams, f_comb, fib, gib

P = GibonacciParams


def brute_period(p, m):
    # independent oracle: least x whose shifted window matches over two full periods
    seq = [gib(p, n) % m for n in range(6 * m * m + 2)]
    for x in range(1, 6 * m * m):
        if all(seq[n + x] == seq[n] for n in range(len(seq) - x)):
            return x


@pytest.mark.parametrize("m, x", [(2, 3), (3, 8), (5, 20), (7, 16), (11, 10), (29, 14)])
def test_reference_moduli(m, x):
    r = nt.universal_period(m)
    assert (r.modulus, r.period, r.universal) == (m, x, True)


def test_universal_period_holds_for_random_params():
    rng = SplitMix64(42)
    for _ in range(20):
        p = P(rng.next(), rng.next())
        assert all((gib(p, n + 16) - gib(p, n)) % 7 == 0 for n in range(65))


def test_sequence_period_examples():
    assert nt.sequence_period(P(0, 0), 9).period == 1
    assert nt.sequence_period(FIBONACCI, 7).period == 16
    assert nt.sequence_period(P(7, 7), 7).period == 1
    # Lucas mod 5 has a shorter cycle than Fibonacci
    assert nt.sequence_period(LUCAS, 5).period == 4


def test_periods_against_brute_force():
    for m in range(2, 14):
        assert nt.universal_period(m).period == brute_period(FIBONACCI, m)
        for p in (LUCAS, P(3, 7), P(0, 0)):
            assert nt.sequence_period(p, m).period == brute_period(p, m)


def test_sequence_period_divides_universal():
    rng = SplitMix64(3)
    for _ in range(50):
        p = P(rng.below(10**6), rng.below(10**6))
        for m in range(2, 51):
            assert nt.universal_period(m).period % nt.sequence_period(p, m).period == 0


def test_period_errors():
    with pytest.raises(ValueError):
        nt.universal_period(1)
    with pytest.raises(ValueError):
        nt.sequence_period(LUCAS, 0)


def test_period_table_csv():
    rows = list(csv.reader(io.StringIO(nt.period_table(range(2, 8)))))
    assert rows[0] == ["modulus", "universal_period"]
    assert rows[1:3] == [["2", "3"], ["3", "8"]]
    rows = list(csv.reader(io.StringIO(nt.period_table([5], LUCAS))))
    assert rows == [["modulus", "universal_period", "sequence_period"], ["5", "20", "4"]]


# -- supertile congruence ----------------------------------------------------


def test_congruence_examples():
    c = nt.supertile_congruence(LUCAS, 2, 3)
    assert (c.value, c.modulus, c.residue, c.predicted_residue) == (18, 3, 0, 0) and c.holds
    c = nt.supertile_congruence(LUCAS, 3, 2)
    assert (c.value, c.modulus, c.residue) == (18, 4, 2) and c.holds
    c = nt.supertile_congruence(FIBONACCI, 4, 3)
    assert c.holds and c.residue == fib(3) * fib(8) % fib(4)


def test_congruence_sweep():
    for g0 in range(6):
        for g1 in range(6):
            p = P(g0, g1)
            for m in range(1, 8):
                if gib(p, m) <= 1:
                    continue
                for r in range(2, 6):
                    c = nt.supertile_congruence(p, m, r)
                    assert c.holds and 0 <= c.residue < c.modulus


def test_congruence_rejects_small_modulus():
    with pytest.raises(ValueError):
        nt.supertile_congruence(FIBONACCI, 2, 3)  # F_2 = 1
    with pytest.raises(ValueError):
        nt.supertile_congruence(LUCAS, 3, 1)


# -- lacunary ---------------------------------------------------------------


def test_lacunary_examples():
    assert nt.lacunary_gib(COMBINATORIAL, 10, 3) == 89 == f_comb(10)
    assert nt.lacunary_gib(LUCAS, 7, 2) == 29
    assert nt.lacunary_fib(10, 4) == 55
    assert nt.lacunary_fib(10, 4, corrected=False) == 73


def test_lacunary_sweep():
    rng = SplitMix64(11)
    params = [P(rng.next(), rng.next()) for _ in range(5)] + [LUCAS, P(0, 0), P(-4, 9)]
    for N in range(2, 9):
        for n in range(N, 61):
            assert nt.lacunary_fib(n, N) == fib(n)
            for p in params:
                assert nt.lacunary_gib(p, n, N) == gib(p, n)


def test_lacunary_errors():
    with pytest.raises(ValueError):
        nt.lacunary_gib(LUCAS, 3, 1)
    with pytest.raises(ValueError):
        nt.lacunary_fib(2, 3)


# -- representations -------------------------------------------------------------


def test_represent_t5():
    sols = nt.represent(5, a_cap=2)
    fixed = {(s.n, s.a, s.b) for s in sols if not s.family}
    assert fixed == {(2, 1, 4), (2, 2, 3), (2, 3, 2), (2, 4, 1), (3, 1, 2), (3, 3, 1), (4, 1, 1)}
    fam = [s for s in sols if s.family]
    assert fam[0].a is None and fam[0].b == 5 and fam[0].n == 1
    assert [s.a for s in fam[1:]] == [1, 2]


def test_represent_t1():
    sols = nt.represent(1)
    assert len(sols) == 1 and sols[0].family and sols[0].a is None and sols[0].b == 1


def brute_represent(t):
    out = set()
    for n in range(2, nt.fib_bracket(t) + 1):
        for a in range(1, t + 1):
            for b in range(1, t + 1):
                if a * f_comb(n - 2) + b * f_comb(n - 1) == t:
                    out.add((n, a, b))
    return out


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 120))
def test_represent_complete(t):
    sols = nt.represent(t, a_cap=3)
    for s in sols:
        assert s.value() == t
        if s.a is not None:
            assert gib(P(s.a, s.b), s.n) == t
    assert {(s.n, s.a, s.b) for s in sols if not s.family} == brute_represent(t)


def test_represent_errors():
    with pytest.raises(ValueError):
        nt.represent(0)


def test_fib_bracket():
    assert nt.fib_bracket(5) == 5
    assert nt.fib_bracket(1) == 2
    for k in range(1, 31):
        assert nt.fib_bracket(f_comb(k)) == k + 1
    with pytest.raises(ValueError):
        nt.fib_bracket(0)

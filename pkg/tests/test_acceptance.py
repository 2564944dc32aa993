"""Acceptance gate: one test per criterion, each printing a single PASS/FAIL
line.  Every comparison is exact integer equality."""

import itertools
import subprocess
import sys
import time

import pytest

from gibtiles import identities as ids
from gibtiles import number_theory as nt
from gibtiles import tiling as tl
from gibtiles.bijections import OffsetPair, faults, supertile_census, tail_swap, unbreakable_census, verify_cassini
from gibtiles.rng import SplitMix64
from gibtiles.sequences import LUCAS, FIBONACCI, GibonacciParams, fib, gib, lucas

from oracles import SMALL, cases

pytestmark = pytest.mark.acceptance

ALLOWED_ERRATA = {"C13", "C14", "F4", "F5"}


def announce(capsys, number, ok, detail):
    with capsys.disabled():
        print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")


def random_pairs(seed, k):
    rng = SplitMix64(seed)
    return [GibonacciParams(rng.next(), rng.next()) for _ in range(k)]


def walk(g0, g1, n):
    # plain iteration in either direction, no closed forms
    a, b = g0, g1
    if n >= 0:
        for _ in range(n):
            a, b = b, a + b
        return a
    for _ in range(-n):
        a, b = b - a, a
    return a


def test_criterion_1_sequence_kernels(capsys):
    t0 = time.perf_counter()
    ok = all(gib(LUCAS, n) == lucas(n) and gib(FIBONACCI, n) == fib(n) for n in range(-50, 51))
    pairs = random_pairs(1, 100)
    bad = [(p, n) for p in pairs for n in range(-200, 201)
           if not (p.g0 * fib(n - 1) + p.g1 * fib(n) == gib(p, n) == walk(p.g0, p.g1, n))]
    elapsed = time.perf_counter() - t0
    ok = ok and not bad and elapsed < 1.0
    announce(capsys, 1, ok, f"instances |n|<=50, G_0F_(n-1)+G_1F_n=G_n on 100 random pairs, "
                            f"{len(bad)} mismatches, {elapsed:.2f}s")
    assert ok


def test_criterion_2_tiling_oracles(capsys):
    t0 = time.perf_counter()
    bad = []
    n_cases = 0
    for label, board, form in cases(max_cells=40, params=SMALL):
        n_cases += 1
        tilings = tl.enumerate_tilings(board)
        s = sum(t.weight for t in tilings)
        c = tl.count_tilings(board)
        if not s == c == form:
            bad.append((label, s, c, form))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 120
    announce(capsys, 2, ok, f"{n_cases} boards up to 40 cells, enumeration = DP = closed form, "
                            f"{len(bad)} mismatches, {elapsed:.1f}s")
    assert ok, bad[:5]


def test_criterion_3_identity_suite(capsys):
    t0 = time.perf_counter()
    reports = ids.verify_all(ids.desk_grid(seed=0))
    failed = [r.id for r in reports if not r.passed]
    applied = {r.id for r in reports if r.errata_applied}
    g = GibonacciParams(1, 1)
    witnesses = {
        "C13": ids.evaluate(ids.get("C13"), g, {"p": 2, "m": 5}, printed=True),
        "C14": ids.evaluate(ids.get("C14"), g, {"p": 2, "m": 5}, printed=True),
        "F4": ids.evaluate(ids.get("F4"), FIBONACCI, {"N": 4, "n": 10}, printed=True),
    }
    witnesses_ok = witnesses == {"C13": (7, 8), "C14": (7, 8), "F4": (73, 55)}
    elapsed = time.perf_counter() - t0
    extra = sorted(applied - ALLOWED_ERRATA)
    ok = not failed and witnesses_ok and applied == ALLOWED_ERRATA and elapsed < 180
    detail = (f"{len(reports)} entries, {len(failed)} with counterexamples, witnesses "
              f"{'reproduced' if witnesses_ok else witnesses}, {elapsed:.1f}s")
    if extra:
        detail += f"; errata also needed for {', '.join(extra)} (printed forms are false)"
    announce(capsys, 3, ok, detail)
    assert not failed and witnesses_ok
    assert applied == ALLOWED_ERRATA, f"errata outside the allowed set: {extra}"


def test_criterion_4_bijections(capsys):
    t0 = time.perf_counter()
    swapped = 0
    bad = []
    for params in (None, LUCAS, GibonacciParams(3, 2)):
        board = tl.plain_board if params is None else (lambda n, p=params: tl.gib_board(n, p))
        tilings = {n: tl.enumerate_tilings(board(n)) for n in range(1, 9)}
        for a, b, off in itertools.product(range(1, 9), range(1, 9), (0, 1, 2)):
            for t, u in itertools.product(tilings[a], tilings[b]):
                q = OffsetPair(t, u, off, params)
                fs = faults(q)
                if not fs or fs[-1].column < 1 + off:
                    continue
                s = tail_swap(q)
                swapped += 1
                if tail_swap(s) != q or s.weight != q.weight:
                    bad.append(q)
    cassini_bad = []
    for n in range(2, 9):
        for g0, g1 in itertools.product(range(4), repeat=2):
            p = GibonacciParams(g0, g1)
            r = verify_cassini(n, p)
            if not r.passed or r.correction != (-1) ** n * (g0 * gib(p, 2) - g1 * g1):
                cassini_bad.append((n, g0, g1))
    elapsed = time.perf_counter() - t0
    ok = not bad and not cassini_bad and elapsed < 120
    announce(capsys, 4, ok, f"{swapped} swaps involutive and weight-preserving ({len(bad)} bad), "
                            f"Cassini 2<=n<=8 x 16 params ({len(cassini_bad)} bad), {elapsed:.1f}s")
    assert ok


def test_criterion_5_supertiles_and_breakability(capsys):
    t0 = time.perf_counter()
    params = [GibonacciParams(a, b) for a in range(4) for b in range(4)]
    st_bad = [(m, r, p) for m in range(1, 5) for r in range(2, 5) for p in params
              if not supertile_census(m, r, p).passed]
    ub_bad = []
    for n in range(4):
        for p in params:
            rep = unbreakable_census(n, p)
            if not rep.passed or rep.groups["unbreakable"] != p.g1:
                ub_bad.append((n, p))
    elapsed = time.perf_counter() - t0
    ok = not st_bad and not ub_bad and elapsed < 120
    announce(capsys, 5, ok, f"supertile summands m<=4, r<=4 ({len(st_bad)} bad), unbreakable "
                            f"bucket = G_1 for n<=3 ({len(ub_bad)} bad), {elapsed:.1f}s")
    assert ok


def test_criterion_6_periods(capsys):
    expected = {2: 3, 3: 8, 5: 20, 7: 16, 11: 10, 29: 14}
    got = {m: nt.universal_period(m).period for m in expected}
    ok = got == expected
    announce(capsys, 6, ok, f"universal periods {got}")
    assert ok


def test_criterion_7_lacunary(capsys):
    pairs = random_pairs(7, 20)
    bad = [(p, n, N) for N in range(2, 9) for n in range(N, 61) for p in pairs
           if nt.lacunary_gib(p, n, N) != gib(p, n)]
    bad_f = [(n, N) for N in range(2, 9) for n in range(N, 61) if nt.lacunary_fib(n, N) != fib(n)]
    ok = not bad and not bad_f
    announce(capsys, 7, ok, f"lacunary_gib on 20 random pairs ({len(bad)} bad), corrected "
                            f"lacunary_fib ({len(bad_f)} bad), 2<=N<=8, N<=n<=60")
    assert ok


def test_criterion_8_determinism(capsys):
    cmd = [sys.executable, "-m", "gibtiles.cli", "verify", "--all", "--json", "--seed", "7"]
    runs = [subprocess.run(cmd, capture_output=True) for _ in range(2)]
    ok = runs[0].stdout == runs[1].stdout and runs[0].stdout.startswith(b"[")
    announce(capsys, 8, ok, f"two runs of verify --all --json --seed 7 byte-identical "
                            f"({len(runs[0].stdout)} bytes, exit {runs[0].returncode})")
    assert ok

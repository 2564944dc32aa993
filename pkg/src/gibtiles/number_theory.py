"""Periods mod m, the supertile congruence, lacunary formulas and the
representation problem ``a*f[n-2] + b*f[n-1] == t``."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from .identities import ballantine_merca, lacunary_gibonacci_terms
from .sequences import COMBINATORIAL, FIBONACCI, GibonacciParams, Terms, f_comb, fib, gib


@dataclass(frozen=True)
class PeriodResult:
    modulus: int
    period: int
    universal: bool


def _pair_period(a: int, b: int, m: int) -> int:
    start = (a % m, b % m)
    x, y = start
    # the pair map is invertible mod m, so the orbit of `start` is a pure cycle
    for k in range(1, m * m + 1):
        x, y = y, (x + y) % m
        if (x, y) == start:
            return k
    raise AssertionError(f"no return to {start} mod {m}; the pair map should be a permutation")


def universal_period(m: int) -> PeriodResult:
    """Least x with G_{n+x} = G_n (mod m) for every initial pair."""
    if m < 2:
        raise ValueError("modulus must be at least 2")
    return PeriodResult(m, _pair_period(0, 1, m), True)


def sequence_period(p: GibonacciParams, m: int) -> PeriodResult:
    if m < 2:
        raise ValueError("modulus must be at least 2")
    return PeriodResult(m, _pair_period(p.g0, p.g1, m), False)


def period_table(moduli, params: GibonacciParams | None = None) -> str:
    """CSV with one row per modulus."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if params is None:
        w.writerow(["modulus", "universal_period"])
        for m in moduli:
            w.writerow([m, universal_period(m).period])
    else:
        w.writerow(["modulus", "universal_period", "sequence_period"])
        for m in moduli:
            w.writerow([m, universal_period(m).period, sequence_period(params, m).period])
    return buf.getvalue()


@dataclass
class SupertileCongruence:
    params: GibonacciParams
    m: int
    r: int
    value: int                 # G_{mr}
    modulus: int               # G_m
    summands: dict[str, int]   # group label -> weighted count
    residue: int               # G_{mr} mod G_m
    predicted_residue: int     # G_{m-1} F_{(r-1)m} mod G_m

    @property
    def holds(self) -> bool:
        return sum(self.summands.values()) == self.value and self.residue == self.predicted_residue


def supertile_summands(p: GibonacciParams, m: int, r: int) -> dict[str, int]:
    """Terms of G_{mr} grouped by the first supertile closed on the left and
    open on the right (``"j=1"`` .. ``"j=r-1"``), or ``"closed"`` if none is."""
    gm = gib(p, m)
    out = {"j=1": gib(p, m - 1) * fib((r - 1) * m)}
    for j in range(2, r):
        out[f"j={j}"] = gm * fib(m + 1) ** (j - 2) * fib(m) * fib((r - j) * m)
    out["closed"] = gm * fib(m + 1) ** (r - 1)
    return out


def supertile_congruence(p: GibonacciParams, m: int, r: int) -> SupertileCongruence:
    if r < 2 or m < 1:
        raise ValueError("need m >= 1 and r >= 2")
    gm = gib(p, m)
    if gm <= 1:
        raise ValueError(f"G_{m} = {gm}; the congruence needs G_m > 1")
    value = gib(p, m * r)
    return SupertileCongruence(
        p, m, r, value, gm, supertile_summands(p, m, r),
        value % gm, gib(p, m - 1) * fib((r - 1) * m) % gm,
    )


def lacunary_gib(p: GibonacciParams, n: int, N: int) -> int:
    """G_n from G_{n-N}, G_{n-2N}, ... with the step-N expansion."""
    if N < 2 or n < N:
        raise ValueError("need N >= 2 and n >= N")
    # f_k = F_{k+1} is the Gibonacci sequence started at (1, 1)
    return lacunary_gibonacci_terms(Terms(p), Terms(COMBINATORIAL), n, N)


def lacunary_fib(n: int, N: int, corrected: bool = True) -> int:
    """Ballantine-Merca lacunary recurrence for F_n; ``corrected=False`` uses
    the exponent as printed, which is wrong whenever F_{N-1} > 1."""
    if N < 2 or n < N:
        raise ValueError("need N >= 2 and n >= N")
    return ballantine_merca(Terms(FIBONACCI), n, N, corrected)


@dataclass(frozen=True)
class RepresentationSolution:
    a: int | None
    b: int
    n: int
    family: bool = False

    def value(self) -> int:
        a = 0 if self.a is None else self.a
        return a * f_comb(self.n - 2) + self.b * f_comb(self.n - 1)


def represent(t: int, a_cap: int = 0) -> list[RepresentationSolution]:
    """All (a, b, n) with a, b >= 1 and a*f[n-2] + b*f[n-1] == t.

    For n = 1 the coefficient of ``a`` is f[-1] = 0, so every a works; that
    family is returned as one symbolic entry (``a=None``) followed by its
    members a = 1..a_cap.
    """
    if t < 1:
        raise ValueError("t must be a positive integer")
    out: list[RepresentationSolution] = []
    n = 2
    while f_comb(n) <= t:
        u, v = f_comb(n - 2), f_comb(n - 1)
        for a in range(1, (t - v) // u + 1):
            rest = t - a * u
            if rest >= v and rest % v == 0:
                out.append(RepresentationSolution(a, rest // v, n))
        n += 1
    out.append(RepresentationSolution(None, t, 1, family=True))
    out.extend(RepresentationSolution(a, t, 1, family=True) for a in range(1, a_cap + 1))
    return out


def fib_bracket(v: int) -> int:
    """The t >= 1 with f[t-1] <= v < f[t]."""
    if v < 1:
        raise ValueError("v must be a positive integer")
    t = 1
    while not (f_comb(t - 1) <= v < f_comb(t)):
        t += 1
    return t

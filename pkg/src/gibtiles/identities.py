"""Registry of Gibonacci identities and an exact verifier.

Every entry evaluates both sides with Python integers at each point of a
parameter grid.  Entries whose printed statement is wrong carry an
:class:`Errata`: the printed evaluator must fail at a recorded witness, and
the corrected evaluator (the entry's ``lhs``/``rhs``) must hold everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Iterator, Mapping, Sequence

from .rng import SplitMix64
from .sequences import FIBONACCI, LUCAS, COMBINATORIAL, GibonacciParams, Terms


def binom(x, r) -> int:
    """Binomial coefficient that is 0 unless ``x`` and ``r`` are nonnegative integers."""
    x, r = Fraction(x), Fraction(r)
    if x.denominator != 1 or r.denominator != 1 or x < 0 or r < 0:
        return 0
    return comb(int(x), int(r))


def half(k: int) -> Fraction:
    return Fraction(k, 2)


def residue(x: int, modulus: int) -> int:
    """``x mod |modulus|``; a zero modulus leaves ``x`` unchanged."""
    return x % abs(modulus) if modulus else x


class Tables:
    """Per-run term tables keyed by parameter pair."""

    def __init__(self):
        self._terms: dict[GibonacciParams, Terms] = {}

    def __call__(self, p: GibonacciParams) -> Terms:
        t = self._terms.get(p)
        if t is None:
            t = self._terms[p] = Terms(p)
        return t


class _Shift:
    __slots__ = ("base", "k")

    def __init__(self, base: Terms, k: int):
        self.base, self.k = base, k

    def __getitem__(self, n: int) -> int:
        return self.base[n + self.k]


class Point:
    """Evaluation context: sequence tables plus the bound index variables."""

    def __init__(self, tables: Tables, g: GibonacciParams, h: GibonacciParams | None,
                 values: Mapping[str, int]):
        self.G = tables(g)
        self.Gp = tables(g.swapped())
        self.H = tables(h) if h is not None else None
        self.F = tables(FIBONACCI)
        self.f = _Shift(self.F, 1)
        self.L = tables(LUCAS)
        self.g0, self.g1 = g.g0, g.g1
        self.h0, self.h1 = (h.g0, h.g1) if h is not None else (None, None)
        self.values = dict(values)
        for k, v in values.items():
            setattr(self, k, v)


Evaluator = Callable[[Point], int]


@dataclass(frozen=True)
class Var:
    """Index variable ranging over ``lo(env) .. hi(env, grid)`` inclusive.

    ``bound`` is a domain limit set by earlier variables (``N <= n``), as
    opposed to ``hi``, which also folds in the grid size.
    """

    name: str
    lo: Callable[[dict], int]
    hi: Callable[[dict, "Grid"], int]
    bound: Callable[[dict], int] | None = None


def _tied(name: str, lo: int, upper: Callable[[dict], int]) -> Var:
    return Var(name, lambda e, v=lo: v, lambda e, g: upper(e), upper)


def _n(name="n", lo=1, hi=None) -> Var:
    lo_f = lo if callable(lo) else (lambda e, v=lo: v)
    hi_f = hi if hi is not None else (lambda e, g: g.nmax)
    return Var(name, lo_f, hi_f)


def _m(lo=1) -> Var:
    return Var("m", lambda e, v=lo: v, lambda e, g: g.mmax)


@dataclass(frozen=True)
class Errata:
    printed_lhs: Evaluator
    printed_rhs: Evaluator
    witness: Mapping[str, int]
    witness_params: GibonacciParams | None
    witness_values: tuple[int, int]
    note: str


@dataclass(frozen=True)
class Identity:
    id: str
    anchor: str
    stated_domain: str
    variables: tuple[Var, ...]
    lhs: Evaluator
    rhs: Evaluator
    uses_g: bool = True
    uses_h: bool = False
    domain: Callable[[Point], bool] | None = None
    errata: Errata | None = None
    extended: tuple[Var, ...] | None = None
    domain_note: str = ""
    group: str = field(default="")

    def __post_init__(self):
        if not self.group:
            object.__setattr__(self, "group", self.id[0])


@dataclass
class Grid:
    params: Sequence[GibonacciParams]
    nmax: int = 20
    mmax: int = 20
    hparams: Sequence[GibonacciParams] | None = None


# -- identity helpers ---------------------------------------------------------


def _sum(rng, term) -> int:
    return sum((term(k) for k in rng), 0)


def _c7_lhs(c: Point) -> int:
    m, p, G, g0, g1 = c.m, c.p, c.G, c.g0, c.g1
    first = _sum(range(p, m), lambda k: 0 if (k - p) % 2 else
                 (g1 * binom(half(k + p - 4), p - 2) + g0 * binom(half(k + p - 4), p - 1)) * G[m - k])
    middle = (g1 * binom(half(m + p - 4), p - 2) + g0 * binom(half(m + p - 4), p - 1)) * g1
    tail = _sum(range(0, p), lambda t: 0 if (t - m) % 2 else
                g1 * g1 * binom(half(m + t - 4), t - 2)
                + 2 * g0 * g1 * binom(half(m + t - 4), t - 1)
                + g0 * g0 * binom(half(m + t - 4), t))
    return first + middle + tail


def _c8_lhs(c: Point) -> int:
    n, G, g0, g1 = c.n, c.G, c.g0, c.g1
    top = (n - 1) // 2
    s = (g1 - g0) * _sum(range(1, top + 1), lambda j: G[n - 2 * j])
    s += g0 * _sum(range(1, top + 1), lambda j: j * G[n - 2 * j])
    s += (g1 * binom(half(n - 2), 0) + g0 * binom(half(n - 2), 1)) * g1
    s += _sum(range(0, 2), lambda t: 0 if (t - n) % 2 else
              2 * g0 * g1 * t + g0 * g0 * binom(half(n + t - 4), t))
    return s


def _c9_lhs(c: Point) -> int:
    m, p, G, g0, g1 = c.m, c.p, c.G, c.g0, c.g1
    first = _sum(range(2 * p, m + 1), lambda k:
                 (g1 * binom(k - p - 2, p - 1) + g0 * binom(k - p - 2, p - 2)) * G[m - k])
    tail = _sum(range(0, p), lambda t:
                g1 * g1 * binom(m - t - 2, t)
                + 2 * g0 * g1 * binom(m - t - 2, t - 1)
                + g0 * g0 * binom(m - t - 2, t - 2))
    return first + tail


def _t_sum_half(c: Point, sign: int) -> int:
    """t-sum of the two vertical-domino theorems with upper index (m + sign*t - 2)/2."""
    m, p, g0, g1 = c.m, c.p, c.g0, c.g1
    return _sum(range(0, p), lambda t: 0 if (t - m) % 2 else
                g1 * binom(half(m + sign * t - 2), t - 1) + g0 * binom(half(m + sign * t - 2), t))


def _c13_first(c: Point) -> int:
    m, p, f, g0, g1 = c.m, c.p, c.f, c.g0, c.g1
    return _sum(range(p, m + 1), lambda k: 0 if (k - p) % 2 else
                (g1 * binom(half(k + p - 4), p - 2) + g0 * binom(half(k + p - 4), p - 1)) * f[m - k])


def _c14_first(c: Point) -> int:
    m, p, G = c.m, c.p, c.G
    s = _sum(range(p, m), lambda k: 0 if (k - p) % 2 else binom(half(k + p - 2), p - 1) * G[m - k])
    return s + binom(half(m + p - 2), p - 1) * c.g1


def _t_sum_full(c: Point) -> int:
    m, p, g0, g1 = c.m, c.p, c.g0, c.g1
    return _sum(range(0, p), lambda t: g1 * binom(m - t - 1, t) + g0 * binom(m - t - 1, t - 1))


def _c15_lhs(c: Point) -> int:
    m, p, f, g0, g1 = c.m, c.p, c.f, c.g0, c.g1
    return _sum(range(2 * p, m + 1), lambda k:
                (g1 * binom(k - p - 2, p - 1) + g0 * binom(k - p - 2, p - 2)) * f[m - k]) + _t_sum_full(c)


def _c16_lhs(c: Point) -> int:
    m, p, G = c.m, c.p, c.G
    return _sum(range(2 * p, m + 1), lambda k: binom(k - p - 1, p - 1) * G[m - k]) + _t_sum_full(c)


def _supertile_expansion(c: Point) -> int:
    m, r, G, F = c.m, c.r, c.G, c.F
    s = G[m] * _sum(range(2, r), lambda j: F[m + 1] ** (j - 2) * F[m] * F[(r - j) * m])
    return s + G[m] * F[m + 1] ** (r - 1) + G[m - 1] * F[(r - 1) * m]


def lacunary_gibonacci_terms(G, f, n: int, N: int) -> int:
    d = (n - N) // N + 1  # floor(n/N - 1) + 1
    s = G[n - N] * f[N]
    s += f[N - 1] ** 2 * _sum(range(2, d + 1), lambda i: G[n - i * N] * f[N - 2] ** (i - 2))
    s += f[N - 1] * G[n - d * N - 1] * f[N - 2] ** (d - 1)
    return s


def ballantine_merca(F, n: int, N: int, corrected: bool = True) -> int:
    """Lacunary Fibonacci formula; ``corrected=False`` uses the printed exponent."""
    d = (n - 1) // N
    exponent = d - 1 if corrected else d + 1
    lead = Fraction(F[N]) * Fraction(F[N - 1]) ** exponent * F[(n - 1) % N]
    if lead.denominator != 1:
        raise ArithmeticError(f"non-integral leading term at n={n}, N={N}")
    s = int(lead) + F[N + 1] * F[n - N]
    s += F[N] ** 2 * _sum(range(2, d + 1), lambda k: F[N - 1] ** (k - 2) * F[n - k * N])
    return s


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


# -- the registry -------------------------------------------------------------

_ALL_INT = lambda name, lo=None: Var(  # noqa: E731
    name, lambda e, v=lo: -20 if v is None else v, lambda e, g: g.nmax)

_N_UPTO = lambda lo=1: _tied("N", lo, lambda e: e["n"])  # noqa: E731


def _build() -> list[Identity]:
    n1 = _n(lo=1)
    reg: list[Identity] = []
    add = reg.append

    # A: Lucas board
    add(Identity("A1", "Lucas board 'f_n+f_{n-2}=L_n for all'", "n >= 1", (n1,),
                 lambda c: c.f[c.n] + c.f[c.n - 2], lambda c: c.L[c.n], uses_g=False))
    add(Identity("A2", "Identity 'L_n^2+f_n^2=f_{n-2}^2f_6'", "n >= 3", (_n(lo=3),),
                 lambda c: c.L[c.n] ** 2 + c.f[c.n] ** 2,
                 lambda c: c.f[c.n - 2] ** 2 * c.f[6] + 2 * c.f[c.n - 2] * c.f[c.n - 3] * c.f[4]
                 + c.f[c.n - 3] ** 2 * c.f[2], uses_g=False))

    def a3_lhs(c):
        L, f, n, m = c.L, c.f, c.n, c.m
        return L[n] ** 2 * f[m - 6] + 2 * L[n] * f[n] * f[m - 7] + f[n] ** 2 * f[m - 8]

    def a3_rhs(c):
        f, n, m = c.f, c.n, c.m
        return (f[n - 2] ** 2 * f[m] + 2 * f[n - 2] * f[n - 3] * f[m - 2]
                + f[n - 3] ** 2 * f[m - 4])

    add(Identity("A3", "Identity 'L_n^2f_{m-6}+2L_nf_nf_{m-7}'", "n >= 2, m >= 5",
                 (_n(lo=2), _m(lo=5)), a3_lhs, a3_rhs, uses_g=False,
                 extended=(_ALL_INT("n"), Var("m", lambda e: -20, lambda e, g: g.mmax))))

    # B: the two Gibonacci boards
    add(Identity("B1", "Gibonacci board 'G_1f_n+(G_0-G_1)f_{n-2}'", "n >= 1 (board needs G_0 > G_1)", (n1,),
                 lambda c: c.g1 * c.f[c.n] + (c.g0 - c.g1) * c.f[c.n - 2], lambda c: c.G[c.n]))
    add(Identity("B2", "Gibonacci board 'G_0f_{n-2}+G_1f_{n-1}'", "n >= 1", (n1,),
                 lambda c: c.g0 * c.f[c.n - 2] + c.g1 * c.f[c.n - 1], lambda c: c.G[c.n]))

    # C: one Gibonacci sequence
    add(Identity("C1", "Identity 'G_NG_{n-N}+G_{N-1}G_{n-N-1}'", "n >= 1, N <= n",
                 (n1, _N_UPTO()),
                 lambda c: c.G[c.N] * c.G[c.n - c.N] + c.G[c.N - 1] * c.G[c.n - c.N - 1],
                 lambda c: c.g1 * c.G[c.n - 1] + c.g0 * c.G[c.n - 2]))
    add(Identity("C2", "Corollary 'G_{n+1}^2+G_n^2=G_0G_{2n}+G_1G_{2n+1}'", "n >= 1", (n1,),
                 lambda c: c.G[c.n + 1] ** 2 + c.G[c.n] ** 2,
                 lambda c: c.g0 * c.G[2 * c.n] + c.g1 * c.G[2 * c.n + 1],
                 extended=(_ALL_INT("n"),)))
    add(Identity("C3", "Identity 'G_{n+2}^2-G_n^2=G_0G_{2n+1}+G_1G_{2n+2}'", "n >= 1", (n1,),
                 lambda c: c.G[c.n + 2] ** 2 - c.G[c.n] ** 2,
                 lambda c: c.g0 * c.G[2 * c.n + 1] + c.g1 * c.G[2 * c.n + 2],
                 extended=(_ALL_INT("n"),)))
    add(Identity("C4", "Corollary (Lucas) 'F_{n+1}^2-F_{n-1}^2=F_{2n}'", "n >= 1", (n1,),
                 lambda c: c.F[c.n + 1] ** 2 - c.F[c.n - 1] ** 2, lambda c: c.F[2 * c.n],
                 uses_g=False))

    def c5_lhs(c):
        n, G, g0, g1 = c.n, c.G, c.g0, c.g1
        return ((g1 - g0) * _sum(range(1, n), lambda j: G[2 * n - 1 - 2 * j])
                + g0 * _sum(range(1, n), lambda j: j * G[2 * n - 1 - 2 * j])
                + 2 * g0 * g1 + g0 * g0 * (n - 2))

    def c6_lhs(c):
        n, G, g0, g1 = c.n, c.G, c.g0, c.g1
        return ((g1 - g0) * _sum(range(1, n), lambda j: G[2 * n - 2 * j])
                + g0 * _sum(range(1, n), lambda j: j * G[2 * n - 2 * j])
                + g0 * g0 + (g1 + (n - 1) * g0) * g1)

    add(Identity("C5", "Identity '2G_0G_1+G^2_0(n-2)'", "n >= 2", (_n(lo=2),), c5_lhs,
                 lambda c: c.g1 * c.G[2 * c.n - 2] + c.g0 * c.G[2 * c.n - 3]))
    add(Identity("C6", "Identity, 2n version 'G_0^2+(G_1+(n-1)G_0)G_1'", "n >= 2",
                 (_n(lo=2),), c6_lhs,
                 lambda c: c.g1 * c.G[2 * c.n - 1] + c.g0 * c.G[2 * c.n - 2]))

    double_rhs = lambda c: c.g1 * c.G[c.m - 1] + c.g0 * c.G[c.m - 2]  # noqa: E731
    p_upto_m1 = _tied("p", 2, lambda e: e["m"] + 1)
    add(Identity("C7", "Theorem (p-th vertical) 'G_1\\binom{(k+p-4)/2}{p-2}'",
                 "p >= 2, m >= p-1", (_m(lo=3), p_upto_m1), _c7_lhs, double_rhs,
                 domain_note="fails for m in {1, 2}: the doubly marked board needs m >= 3"))
    add(Identity("C8", "Identity '2G_0G_1t+G_0^2\\binom{(n+t-4)/2}{t}'", "n >= 1",
                 (_n(lo=3),), _c8_lhs, lambda c: c.g1 * c.G[c.n - 1] + c.g0 * c.G[c.n - 2],
                 domain_note="fails for n in {1, 2}: the doubly marked board needs n >= 3"))
    add(Identity("C9", "Theorem (p-th horizontal) 'location of the p-th horizontal domino'",
                 "p >= 2, m >= p-1", (_m(lo=3), p_upto_m1), _c9_lhs, double_rhs,
                 domain_note="fails for m in {1, 2}: the doubly marked board needs m >= 3"))

    add(Identity("C10", "Identity 'f_{2n-1-2j}(G_1+(j-1)G_0)', odd form", "n >= 1", (n1,),
                 lambda c: _sum(range(1, c.n), lambda j: c.f[2 * c.n - 1 - 2 * j] * (c.g1 + (j - 1) * c.g0))
                 + c.g1 + (c.n - 1) * c.g0, lambda c: c.G[2 * c.n - 1]))
    add(Identity("C10.even", "Identity 'f_{2n-2j}(G_1+(j-1)G_0)+G_1+nG_0'", "n >= 1", (n1,),
                 lambda c: _sum(range(1, c.n), lambda j: c.f[2 * c.n - 2 * j] * (c.g1 + (j - 1) * c.g0))
                 + c.g1 + c.n * c.g0, lambda c: c.G[2 * c.n], group="C"))
    add(Identity("C11", "Identity 'jG_{2n-1-2j}+G_1+(n-1)G_0'", "n >= 1", (n1,),
                 lambda c: _sum(range(1, c.n), lambda j: j * c.G[2 * c.n - 1 - 2 * j])
                 + c.g1 + (c.n - 1) * c.g0, lambda c: c.G[2 * c.n - 1]))
    j_even = lambda c: _sum(range(1, c.n), lambda j: j * c.G[2 * c.n - 2 * j])  # noqa: E731
    add(Identity(
        "C11.even", "Identity 'jG_{2n-2j}+G_1+nG_0'", "n >= 1", (n1,),
        lambda c: j_even(c) + c.n * c.g1 + c.g0, lambda c: c.G[2 * c.n],
        errata=Errata(lambda c: j_even(c) + c.g1 + c.n * c.g0, lambda c: c.G[2 * c.n],
                      {"n": 2}, FIBONACCI, (2, 3),
                      "closing terms printed G_1+nG_0; with the marks at the right end the "
                      "second vertical domino in column 2n gives nG_1 and the all-horizontal "
                      "tiling gives G_0")))
    add(Identity("C12", "combined form 'f_{n-2j}(G_1+(j-1)G_0)+G_1+\\lfloor n/2\\rfloor G_0'",
                 "n >= 1", (n1,),
                 lambda c: _sum(range(1, (c.n - 1) // 2 + 1), lambda j: c.f[c.n - 2 * j] * (c.g1 + (j - 1) * c.g0))
                 + c.g1 + (c.n // 2) * c.g0, lambda c: c.G[c.n]))
    j_comb = lambda c: _sum(range(1, (c.n - 1) // 2 + 1), lambda j: j * c.G[c.n - 2 * j])  # noqa: E731
    add(Identity(
        "C12.j", "combined form 'jG_{n-2j}+G_1+\\lfloor n/2\\rfloor G_0'", "n >= 1", (n1,),
        lambda c: j_comb(c) + (c.g1 + (c.n // 2) * c.g0 if c.n % 2 else (c.n // 2) * c.g1 + c.g0),
        lambda c: c.G[c.n],
        errata=Errata(lambda c: j_comb(c) + c.g1 + (c.n // 2) * c.g0, lambda c: c.G[c.n],
                      {"n": 4}, FIBONACCI, (2, 3),
                      "inherits the C11.even misprint: for even n the closing terms are "
                      "(n/2)G_1+G_0")))

    gm = lambda c: c.G[c.m]  # noqa: E731
    mp = (_m(lo=1), p_upto_m1)
    c13_witness = {"p": 2, "m": 5}
    add(Identity(
        "C13", "Theorem 'G_1\\binom{(m-t-2)/2}{t-1}' with f_{m-k}", "p >= 2, m >= p-1", mp,
        lambda c: _c13_first(c) + _t_sum_half(c, +1), gm,
        errata=Errata(lambda c: _c13_first(c) + _t_sum_half(c, -1), gm, c13_witness,
                      COMBINATORIAL, (7, 8),
                      "t-sum upper index printed (m-t-2)/2; a tiling with t vertical dominoes "
                      "has (m+t)/2 blocks, so the index is (m+t-2)/2")))
    add(Identity(
        "C14", "Theorem '\\binom{(k+p-2)/2}{p-1}G_{m-k}' with the (m-t-2)/2 t-sum",
        "p >= 2, m >= p-1", mp,
        lambda c: _c14_first(c) + _t_sum_half(c, +1), gm,
        errata=Errata(lambda c: _c14_first(c) + _t_sum_half(c, -1), gm, c13_witness,
                      COMBINATORIAL, (7, 8),
                      "same t-sum misprint as C13: (m-t-2)/2 should read (m+t-2)/2")))
    add(Identity("C15", "Theorem 'G_1\\binom{m-t-1}{t}' with f_{m-k}", "p >= 2, m >= p-1", mp,
                 _c15_lhs, gm))
    add(Identity("C16", "Theorem '\\binom{k-p-1}{p-1}G_{m-k}' with 'G_1\\binom{m-t-1}{t}'",
                 "p >= 2, m >= p-1", mp, _c16_lhs, gm))

    # D: G and its swap G'
    add(Identity("D1", "Identity 'G_0(G_n-G'_{n-1})=G_1(G'_n-G_{n-1})'", "n >= 1", (n1,),
                 lambda c: c.g0 * (c.G[c.n] - c.Gp[c.n - 1]),
                 lambda c: c.g1 * (c.Gp[c.n] - c.G[c.n - 1])))
    add(Identity("D2", "Identity 'G_NG'_{n-N}+G_{N-1}G'_{n-N-1}'", "n >= 2, N <= n",
                 (_n(lo=2), _N_UPTO()),
                 lambda c: c.G[c.N] * c.Gp[c.n - c.N] + c.G[c.N - 1] * c.Gp[c.n - c.N - 1],
                 lambda c: c.g0 * c.G[c.n - 1] + c.g1 * c.G[c.n - 2]))
    add(Identity("D2.b", "Identity second equality 'G_1G'_{n-1}+G_0G'_{n-2}'", "n >= 2",
                 (_n(lo=2),),
                 lambda c: c.g0 * c.G[c.n - 1] + c.g1 * c.G[c.n - 2],
                 lambda c: c.g1 * c.Gp[c.n - 1] + c.g0 * c.Gp[c.n - 2]))
    add(Identity("D2.cor", "Corollary 'G_nG'_n+G_{n-1}G'_{n-1}=G_0G_{2n-1}+G_1G_{2n-2}'", "n >= 1",
                 (n1,),
                 lambda c: c.G[c.n] * c.Gp[c.n] + c.G[c.n - 1] * c.Gp[c.n - 1],
                 lambda c: c.g0 * c.G[2 * c.n - 1] + c.g1 * c.G[2 * c.n - 2]))
    add(Identity("D2.cor.b", "Corollary '=G_1G'_{2n-1}+G_0G'_{2n-2}'", "n >= 1", (n1,),
                 lambda c: c.G[c.n] * c.Gp[c.n] + c.G[c.n - 1] * c.Gp[c.n - 1],
                 lambda c: c.g1 * c.Gp[2 * c.n - 1] + c.g0 * c.Gp[2 * c.n - 2]))
    add(Identity("D3", "Identity 'G_n-G'_n=(G_1-G_0)f_{n-3}'", "n >= 3", (_n(lo=3),),
                 lambda c: c.G[c.n] - c.Gp[c.n], lambda c: (c.g1 - c.g0) * c.f[c.n - 3]))
    add(Identity("D3.mod_f", "Corollary 'G_n\\equiv G'_n \\pmod {f_{n-3}}'", "n >= 3",
                 (_n(lo=3),), lambda c: residue(c.G[c.n] - c.Gp[c.n], c.f[c.n - 3]), lambda c: 0))
    add(Identity("D3.mod_g", "Corollary 'G_n\\equiv G'_n \\pmod {G_1-G_0}'", "n >= 1", (n1,),
                 lambda c: residue(c.G[c.n] - c.Gp[c.n], c.g1 - c.g0), lambda c: 0))
    add(Identity("D4", "Identity '(G_1-G_0)G_{n-2}'", "n >= 2", (_n(lo=2),),
                 lambda c: c.g1 * (c.G[c.n] - c.Gp[c.n]) + c.g0 * (c.G[c.n - 1] - c.Gp[c.n - 1]),
                 lambda c: (c.g1 - c.g0) * c.G[c.n - 2]))
    add(Identity("D5", "Identity 'G_nf_{m-2}+G_0f_{n-2}f_{m-3}'", "m, n >= 3",
                 (_n(lo=3), _m(lo=3)),
                 lambda c: c.G[c.n] * c.f[c.m - 2] + c.g0 * c.f[c.n - 2] * c.f[c.m - 3],
                 lambda c: c.Gp[c.m] * c.f[c.n - 2] + c.g1 * c.f[c.n - 3] * c.f[c.m - 2]))

    def d6_lhs(c):
        G, n, m = c.G, c.n, c.m
        return (c.g1 * G[n - 1] + c.g0 * G[n - 2]) * G[m - 2] + c.g0 * G[n - 2] * G[m - 3]

    def d6_rhs(c):
        G, Gp, n, m = c.G, c.Gp, c.n, c.m
        return (c.g1 * Gp[m - 1] + c.g0 * Gp[m - 2]) * G[n - 2] + c.g1 * G[n - 3] * G[m - 2]

    add(Identity("D6", "Display '(G_1G_{n-1}+G_0G_{n-2})G_{m-2}'", "m, n >= 3",
                 (_n(lo=3), _m(lo=3)), d6_lhs, d6_rhs))
    add(Identity("D7", "Identity '(G_0G_n+G_1G_{n-1}-G_1G'_{n-2})G_{n-1}'", "n >= 2",
                 (_n(lo=2),),
                 lambda c: (c.g0 * c.G[c.n] + c.g1 * c.G[c.n - 1] - c.g1 * c.Gp[c.n - 2]) * c.G[c.n - 1],
                 lambda c: (c.g1 * c.Gp[c.n] + c.g0 * c.Gp[c.n - 1] - c.g0 * c.G[c.n - 2]) * c.Gp[c.n - 1]))

    # E: sums, Cassini and Catalan
    n0 = _n(lo=0)
    add(Identity("E1", "Identity 'G_0+G_1+G_2+\\dots+G_n=G_{n+2}-G_1'", "n >= 0", (n0,),
                 lambda c: _sum(range(c.n + 1), lambda i: c.G[i]), lambda c: c.G[c.n + 2] - c.g1))
    add(Identity("E2", "Identity 'G_0+G_2+G_4+\\dots+G_{2n}=G_{2n+1}-G_{-1}'", "n >= 0", (n0,),
                 lambda c: _sum(range(c.n + 1), lambda i: c.G[2 * i]),
                 lambda c: c.G[2 * c.n + 1] - c.G[-1]))
    add(Identity("E3", "Generalization '3G_n=G_{n+2}+G_{n-2}'", "n >= 1", (n1,),
                 lambda c: 3 * c.G[c.n], lambda c: c.G[c.n + 2] + c.G[c.n - 2]))
    add(Identity("E4", "Identity 'G_nG_{n+1}+G_0(G_0-G_1)'", "n >= 0", (n0,),
                 lambda c: _sum(range(c.n + 1), lambda i: c.G[i] ** 2),
                 lambda c: c.G[c.n] * c.G[c.n + 1] + c.g0 * (c.g0 - c.g1)))

    def e5_rhs(c):
        H, G, n = c.H, c.G, c.n
        if n % 2 == 0:
            return H[n + 1] * G[n] + (c.h0 - c.h1) * c.g0
        return H[n + 1] * G[n] + c.h0 * (c.g0 - c.g1)

    add(Identity("E5", "Identity 'H_{n+1}G_n+(H_0-H_1)G_0'", "n >= 0", (n0,),
                 lambda c: _sum(range(c.n + 1), lambda i: c.H[i] * c.G[i]), e5_rhs, uses_h=True))
    add(Identity("E6", "Identity 'G_n^2-G_1(G_1-G_0)'", "n >= 1", (n1,),
                 lambda c: _sum(range(1, c.n + 1), lambda i: c.G[i - 1] * c.G[i]),
                 lambda c: c.G[c.n] ** 2 - (c.g0 ** 2 if c.n % 2 == 0 else c.g1 * (c.g1 - c.g0))))
    add(Identity("E7", "Cassini-type theorem 'G_n^2=G_{n+1}G_{n-1}+(-1)^n(G_0G_2-G_1^2)'", "n >= 1", (n1,),
                 lambda c: c.G[c.n] ** 2,
                 lambda c: c.G[c.n + 1] * c.G[c.n - 1] + _sign(c.n) * (c.g0 * c.G[2] - c.g1 ** 2),
                 extended=(_ALL_INT("n"),)))

    def catalan_rhs(c, p):
        G, n = c.G, c.n
        return G[n + p] * G[n - p] + _sign(n + p - 1) * c.f[p - 1] * (c.g0 * G[p + 1] - c.g1 * G[p])

    add(Identity("E8", "Tail-swap theorem '(-1)^{n+p-1}f_{p-1}(G_0G_{p+1}-G_1G_p)'", "n >= 1, p <= n",
                 (n1, _tied("p", 1, lambda e: e["n"])),
                 lambda c: c.G[c.n] ** 2, lambda c: catalan_rhs(c, c.p),
                 extended=(_ALL_INT("n"), Var("p", lambda e: -10, lambda e, g: 10))))
    add(Identity("E9", "Corollary (p=2) 'G_n^2=G_{n+2}G_{n-2}+(-1)^{n+1}(G_0G_2-G_1^2)'", "n >= 1",
                 (n1,), lambda c: c.G[c.n] ** 2,
                 lambda c: c.G[c.n + 2] * c.G[c.n - 2] + _sign(c.n + 1) * (c.g0 * c.G[2] - c.g1 ** 2),
                 extended=(_ALL_INT("n"),)))
    add(Identity("E9.f", "Corollary (p=2) 'f_n^2=f_{n+2}f_{n-2}-(-1)^n'", "n >= 1", (n1,),
                 lambda c: c.f[c.n] ** 2, lambda c: c.f[c.n + 2] * c.f[c.n - 2] - _sign(c.n),
                 uses_g=False, extended=(_ALL_INT("n"),)))
    add(Identity("E10", "Corollary (p=n) 'G_n^2=G_{2n}G_0-f_{n-1}(G_0G_{n+1}-G_1G_n)'", "n >= 1",
                 (n1,), lambda c: c.G[c.n] ** 2,
                 lambda c: c.G[2 * c.n] * c.g0 - c.f[c.n - 1] * (c.g0 * c.G[c.n + 1] - c.g1 * c.G[c.n]),
                 extended=(_ALL_INT("n"),)))

    # F: supertiles, breakability, lacunary recurrences
    mr = (Var("m", lambda e: 1, lambda e, g: g.mmax), Var("r", lambda e: 1, lambda e, g: 6))
    add(Identity("F1", "Supertile expansion 'G_n=G_{mr}=G_m\\sum_{j=2}^{r-1}F_{m+1}^{j-2}F_mF_{(r-j)m}'",
                 "m >= 1, r >= 1", mr, lambda c: c.G[c.m * c.r], _supertile_expansion))
    add(Identity("F1.cong", "Supertile congruence 'G_n\\equiv G_{m-1}F_{(r-1)m} \\pmod {G_m}'", "G_m > 1, n = mr",
                 mr, lambda c: c.G[c.m * c.r] % c.G[c.m],
                 lambda c: c.G[c.m - 1] * c.F[(c.r - 1) * c.m] % c.G[c.m],
                 domain=lambda c: c.G[c.m] > 1))
    add(Identity("F2", "Identity '2\\sum_{j=0}^n G_{3j+2}=G_{3n+4}-G_1'", "n >= 0", (n0,),
                 lambda c: 2 * _sum(range(c.n + 1), lambda j: c.G[3 * j + 2]),
                 lambda c: c.G[3 * c.n + 4] - c.g1))
    nN = (Var("N", lambda e: 2, lambda e, g: 8), Var("n", lambda e: e["N"], lambda e, g: g.nmax))
    add(Identity("F3", "Lacunary expansion 'f_{N-1}G_{n-dN-1}f_{N-2}^{d-1}'", "N >= 2, n >= N", nN,
                 lambda c: lacunary_gibonacci_terms(c.G, c.f, c.n, c.N), lambda c: c.G[c.n]))
    add(Identity(
        "F4", "Lacunary theorem 'F_N\\cdot F_{N-1}^{\\lfloor \\frac{n-1}{N}\\rfloor +1}'", "N >= 2, n >= N",
        nN, lambda c: ballantine_merca(c.F, c.n, c.N), lambda c: c.F[c.n], uses_g=False,
        errata=Errata(lambda c: ballantine_merca(c.F, c.n, c.N, corrected=False),
                      lambda c: c.F[c.n], {"N": 4, "n": 10}, None, (73, 55),
                      "exponent printed floor((n-1)/N)+1; the derivation ends with "
                      "F_{N-1}^{d-1}, d = floor((n-1)/N)")))
    add(Identity(
        "F5", "Lacunary expansion 'G_n=G_{n-N}f_N+G_{n-N-1}f_{n-1}'", "N >= 2, n >= N", nN,
        lambda c: c.G[c.n], lambda c: c.G[c.n - c.N] * c.f[c.N] + c.G[c.n - c.N - 1] * c.f[c.N - 1],
        errata=Errata(lambda c: c.G[c.n],
                      lambda c: c.G[c.n - c.N] * c.f[c.N] + c.G[c.n - c.N - 1] * c.f[c.n - 1],
                      {"N": 2, "n": 4}, LUCAS, (7, 9),
                      "second factor printed f_{n-1}; breaking the board after column n-N "
                      "gives f_{N-1}")))
    return reg


_REGISTRY: tuple[Identity, ...] | None = None


def registry() -> list[Identity]:
    global _REGISTRY
    if _REGISTRY is None:
        _REGISTRY = tuple(_build())
    return list(_REGISTRY)


def get(identity_id: str) -> Identity:
    for ident in registry():
        if ident.id == identity_id:
            return ident
    raise KeyError(f"unknown identity {identity_id!r}")


# -- verification -------------------------------------------------------------


@dataclass
class VerificationReport:
    id: str
    anchor: str
    points: int
    status: str
    counterexample: dict | None
    errata_applied: bool

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "anchor": self.anchor,
            "points": self.points,
            "status": self.status,
            "counterexample": self.counterexample,
            "errata_applied": self.errata_applied,
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "VerificationReport":
        return cls(d["id"], d["anchor"], d["points"], d["status"], d["counterexample"],
                   d["errata_applied"])

    @property
    def passed(self) -> bool:
        return self.status == "pass"


class OutsideDomain(ValueError):
    pass


def _var_assignments(variables: Sequence[Var], grid: Grid) -> Iterator[dict]:
    def rec(i: int, env: dict):
        if i == len(variables):
            yield dict(env)
            return
        v = variables[i]
        for x in range(v.lo(env), v.hi(env, grid) + 1):
            env[v.name] = x
            yield from rec(i + 1, env)
        env.pop(v.name, None)

    yield from rec(0, {})


def grid_points(ident: Identity, grid: Grid, extended: bool = False
                ) -> Iterator[tuple[GibonacciParams, GibonacciParams | None, dict]]:
    variables = ident.extended if extended else ident.variables
    gs = grid.params if ident.uses_g else [FIBONACCI]
    hs = (grid.hparams if grid.hparams is not None else grid.params) if ident.uses_h else [None]
    for g in gs:
        for h in hs:
            for values in _var_assignments(variables, grid):
                yield g, h, values


def in_domain(ident: Identity, g: GibonacciParams, values: Mapping[str, int],
              tables: Tables | None = None, h: GibonacciParams | None = None) -> bool:
    env: dict = {}
    for v in ident.variables:
        if v.name not in values:
            return False
        x = values[v.name]
        if x < v.lo(env):
            return False
        env[v.name] = x
        if v.bound is not None and x > v.bound(env):
            return False
    if ident.domain is not None:
        return ident.domain(Point(tables or Tables(), g, h, values))
    return True


def _counterexample(g, h, values, lhs, rhs, ident: Identity) -> dict:
    ce: dict = {}
    if ident.uses_g:
        ce["g0"], ce["g1"] = g.g0, g.g1
    if h is not None:
        ce["h0"], ce["h1"] = h.g0, h.g1
    ce.update(values)
    ce["lhs"], ce["rhs"] = lhs, rhs
    return ce


def evaluate(ident: Identity, g: GibonacciParams, values: Mapping[str, int],
             h: GibonacciParams | None = None, printed: bool = False,
             tables: Tables | None = None, check_domain: bool = True) -> tuple[int, int]:
    """Both sides of ``ident`` at one point."""
    tables = tables or Tables()
    if check_domain and not in_domain(ident, g, values, tables, h):
        raise OutsideDomain(f"{ident.id}: {values} with {g} lies outside the domain")
    pt = Point(tables, g, h, values)
    if printed:
        if ident.errata is None:
            raise ValueError(f"{ident.id} has no errata; its printed form is the identity")
        return ident.errata.printed_lhs(pt), ident.errata.printed_rhs(pt)
    return ident.lhs(pt), ident.rhs(pt)


def iter_points(ident: Identity, points, printed: bool = False, tables: Tables | None = None,
                extended: bool = False):
    """Yield ``(g, h, values, lhs, rhs)`` for every in-domain point."""
    tables = tables or Tables()
    for g, h, values in points:
        pt = Point(tables, g, h, values)
        if not extended and ident.domain is not None and not ident.domain(pt):
            continue
        if printed:
            yield g, h, values, ident.errata.printed_lhs(pt), ident.errata.printed_rhs(pt)
        else:
            yield g, h, values, ident.lhs(pt), ident.rhs(pt)


def _sweep(ident: Identity, points, printed: bool, tables: Tables, extended: bool):
    count = 0
    first = None
    for g, h, values, lhs, rhs in iter_points(ident, points, printed, tables, extended):
        count += 1
        if lhs != rhs and first is None:
            first = _counterexample(g, h, values, lhs, rhs, ident)
    return count, first


def witness_point(ident: Identity):
    e = ident.errata
    g = e.witness_params if e.witness_params is not None else FIBONACCI
    return g, dict(e.witness)


def verify(ident: Identity | str, grid: Grid, printed: bool = False,
           points: Sequence[tuple] | None = None, extended: bool = False) -> VerificationReport:
    """Check one identity on every grid point (or on explicit ``points``).

    With errata present the report passes only if the printed form fails at
    its witness with the recorded values and the corrected form holds on the
    whole grid.  ``printed=True`` checks the printed form itself, witness first.
    """
    if isinstance(ident, str):
        ident = get(ident)
    tables = Tables()
    if points is not None:
        for g, h, values in points:
            if not in_domain(ident, g, values, tables, h):
                raise OutsideDomain(f"{ident.id}: {values} with {g} lies outside the domain")
        pts = list(points)
    else:
        if extended and ident.extended is None:
            raise ValueError(f"{ident.id} has no extended domain")
        pts = grid_points(ident, grid, extended)

    if printed:
        if ident.errata is None:
            raise ValueError(f"{ident.id} has no errata; its printed form is the identity")
        g, values = witness_point(ident)
        pts = [(g, None, values), *pts]
        count, ce = _sweep(ident, pts, True, tables, extended)
        return VerificationReport(ident.id, ident.anchor, count,
                                  "pass" if ce is None else "fail", ce, False)

    count, ce = _sweep(ident, pts, False, tables, extended)
    errata_applied = ident.errata is not None
    if errata_applied and ce is None:
        g, values = witness_point(ident)
        lhs, rhs = evaluate(ident, g, values, printed=True, tables=tables)
        if (lhs, rhs) != tuple(ident.errata.witness_values) or lhs == rhs:
            ce = _counterexample(g, None, values, lhs, rhs, ident)
            ce["printed_form"] = True
    return VerificationReport(ident.id, ident.anchor, count,
                              "pass" if ce is None else "fail", ce, errata_applied)


def verify_all(grid: Grid, ids: Sequence[str] | None = None, groups: str | None = None
               ) -> list[VerificationReport]:
    selected = registry()
    if ids:
        wanted = set(ids)
        unknown = wanted - {i.id for i in selected}
        if unknown:
            raise KeyError(f"unknown identity ids: {sorted(unknown)}")
        selected = [i for i in selected if i.id in wanted]
    if groups:
        selected = [i for i in selected if i.group in groups]
    return [verify(i, grid) for i in sorted(selected, key=lambda i: i.id)]


def verify_extended(grid: Grid) -> list[VerificationReport]:
    """Probe entries that hold on all integers at negative indices (not gating)."""
    return [verify(i, grid, extended=True) for i in registry() if i.extended is not None]


DESK_VALUES = (0, 1, 2, 3, 5)


def desk_grid(seed: int = 0, nmax: int = 20, mmax: int = 20, random_pairs: int = 8) -> Grid:
    """Small-value pairs plus ``random_pairs`` seeded 64-bit pairs."""
    rng = SplitMix64(seed)
    params = [GibonacciParams(a, b) for a in DESK_VALUES for b in DESK_VALUES]
    params += [GibonacciParams(rng.next(), rng.next()) for _ in range(random_pairs)]
    return Grid(params, nmax, mmax)

"""Exact Fibonacci, Lucas and Gibonacci terms for any integer index.

Negative indices follow the backward recurrence ``G[n-2] = G[n] - G[n-1]``,
so ``fib(-n) == (-1)**(n+1) * fib(n)`` and ``gib(p, -1) == p.g1 - p.g0``.
"""

from __future__ import annotations

from dataclasses import dataclass

MAX_INDEX = 10**6
DOUBLING_THRESHOLD = 64


class IndexOutOfRange(ValueError):
    pass


@dataclass(frozen=True)
class GibonacciParams:
    """Initial pair ``(G_0, G_1)`` of a Gibonacci sequence."""

    g0: int
    g1: int

    def swapped(self) -> "GibonacciParams":
        return GibonacciParams(self.g1, self.g0)

    def require_nonnegative(self) -> None:
        if self.g0 < 0 or self.g1 < 0:
            raise ValueError(f"colour counts must be nonnegative, got {self}")

    def __add__(self, other: "GibonacciParams") -> "GibonacciParams":
        return GibonacciParams(self.g0 + other.g0, self.g1 + other.g1)


FIBONACCI = GibonacciParams(0, 1)
COMBINATORIAL = GibonacciParams(1, 1)
LUCAS = GibonacciParams(2, 1)


def _check(n: int, bound: int = MAX_INDEX) -> None:
    if abs(n) > bound:
        raise IndexOutOfRange(f"|{n}| exceeds the index bound {bound}")


def _step(g_prev: int, g_cur: int, n: int) -> int:
    """Walk a pair (G_0, G_1) to G_n by plain iteration in either direction."""
    if n == 0:
        return g_prev
    a, b = g_prev, g_cur
    if n > 0:
        for _ in range(n - 1):
            a, b = b, a + b
        return b
    # (a, b) = (G_k, G_{k+1}) -> (G_{k-1}, G_k)
    for _ in range(-n):
        a, b = b - a, a
    return a


def fib_iterative(n: int) -> int:
    _check(n)
    return _step(0, 1, n)


def _fib_pair(n: int) -> tuple[int, int]:
    """(F_n, F_{n+1}) for n >= 0 by fast doubling."""
    if n == 0:
        return 0, 1
    a, b = _fib_pair(n >> 1)
    c = a * (2 * b - a)
    d = a * a + b * b
    if n & 1:
        return d, c + d
    return c, d


def fib_doubling(n: int) -> int:
    _check(n)
    value = _fib_pair(abs(n))[0]
    if n < 0 and n % 2 == 0:
        return -value
    return value


def fib(n: int) -> int:
    """F_n with F_0 = 0, F_1 = 1."""
    if abs(n) > DOUBLING_THRESHOLD:
        return fib_doubling(n)
    return fib_iterative(n)


def f_comb(n: int) -> int:
    """Number of domino tilings of a 2 x n board, ``f_n = F_{n+1}``."""
    _check(n)
    return fib(n + 1)


def lucas(n: int) -> int:
    _check(n)
    if abs(n) > DOUBLING_THRESHOLD:
        return fib(n - 1) + fib(n + 1)
    return _step(2, 1, n)


def gib(p: GibonacciParams, n: int) -> int:
    """G_n for the sequence started at ``(p.g0, p.g1)``."""
    _check(n)
    if abs(n) > DOUBLING_THRESHOLD:
        return p.g0 * fib(n - 1) + p.g1 * fib(n)
    return _step(p.g0, p.g1, n)


def gib_swapped(p: GibonacciParams) -> GibonacciParams:
    return p.swapped()


class Terms:
    """Lazily filled table of one sequence, used by evaluators that hit the
    same indices many times.  Local to its owner; nothing is cached globally."""

    __slots__ = ("params", "_values")

    def __init__(self, params: GibonacciParams):
        self.params = params
        self._values: dict[int, int] = {}

    def __getitem__(self, n: int) -> int:
        try:
            return self._values[n]
        except KeyError:
            value = self._values[n] = gib(self.params, n)
            return value


class ShiftedTerms(Terms):
    """``f``-style table: ``t[n] == base[n + shift]``."""

    __slots__ = ("shift",)

    def __init__(self, params: GibonacciParams, shift: int):
        super().__init__(params)
        self.shift = shift

    def __getitem__(self, n: int) -> int:
        return super().__getitem__(n + self.shift)

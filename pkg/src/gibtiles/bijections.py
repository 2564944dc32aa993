"""Faults, tail swapping, breakability and supertiles on 2-row tilings.

Columns are global: a pair stacks the top tiling on columns ``1..a`` and
the bottom tiling on ``offset+1..offset+b``.  A tiling is breakable at
column ``c`` when nothing crosses the line between ``c`` and ``c+1``; a
tiling counts as breakable everywhere outside its own span.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache

from .number_theory import supertile_summands
from .sequences import GibonacciParams, gib
from .tiling import Board, Placement, Tiling, enumerate_tilings, gib_board, plain_board


def _length(t: Tiling) -> int:
    rows = {c.row for d in t.dominoes for c in d}
    if rows != {1, 2}:
        raise ValueError(f"expected a tiling of a 2-row board (rows 1 and 2), got rows {sorted(rows)}")
    lo, hi = t.columns()
    if lo != 1:
        raise ValueError(f"2-row tilings must start at column 1, got {lo}")
    return hi


@dataclass(frozen=True)
class BreakabilityProfile:
    length: int
    breakable: frozenset[int]

    def __contains__(self, column: int) -> bool:
        return column in self.breakable


def breakable_columns(t: Tiling) -> BreakabilityProfile:
    n = _length(t)
    spanned = {d.a.col for d in t.dominoes if not d.vertical}
    return BreakabilityProfile(n, frozenset(c for c in range(1, n) if c not in spanned))


@lru_cache(maxsize=None)
def _board(n: int, params: GibonacciParams | None) -> Board:
    return plain_board(n) if params is None else gib_board(n, params)


def retile(dominoes, n: int, params: GibonacciParams | None) -> Tiling:
    """Tiling of the length-``n`` board with its weight recomputed."""
    ds = tuple(sorted(dominoes))
    return Tiling(ds, _board(n, params).weight_of(ds))


@dataclass(frozen=True)
class OffsetPair:
    top: Tiling
    bottom: Tiling
    offset: int = 0
    params: GibonacciParams | None = None

    def __post_init__(self):
        if self.offset < 0:
            raise ValueError("offset must be nonnegative")
        for name in ("top", "bottom"):
            t = getattr(self, name)
            object.__setattr__(self, name, Tiling(tuple(sorted(t.dominoes)), t.weight))
        _length(self.top)
        _length(self.bottom)

    @property
    def lengths(self) -> tuple[int, int]:
        return _length(self.top), _length(self.bottom)

    @property
    def weight(self) -> int:
        return self.top.weight * self.bottom.weight


@dataclass(frozen=True)
class Fault:
    column: int


def _breaks_at(profile: BreakabilityProfile, local: int) -> bool:
    return local <= 0 or local >= profile.length or local in profile


def faults(pair: OffsetPair) -> list[Fault]:
    top, bot = breakable_columns(pair.top), breakable_columns(pair.bottom)
    ends = (top.length, pair.offset + bot.length)
    # a cut at or beyond the longer board's right end separates nothing
    hi = min(min(ends), max(ends) - 1)
    return [
        Fault(c) for c in range(1, hi + 1)
        if _breaks_at(top, c) and _breaks_at(bot, c - pair.offset)
    ]


def tail_swap(pair: OffsetPair) -> OffsetPair:
    """Exchange everything right of the last fault between the two tilings."""
    fs = faults(pair)
    if not fs:
        raise ValueError("pair has no fault")
    c, off = fs[-1].column, pair.offset
    if c < 1 + off:
        # the bottom prefix would be empty and its marked left end lost
        raise ValueError(f"last fault at column {c} lies left of the bottom board")
    a, b = pair.lengths
    shift = lambda d, k: d.shifted(dcol=k)
    top = [d for d in pair.top.dominoes if d.b.col <= c]
    top += [shift(d, off) for d in pair.bottom.dominoes if d.a.col + off > c]
    bot = [d for d in pair.bottom.dominoes if d.b.col + off <= c]
    bot += [shift(d, -off) for d in pair.top.dominoes if d.a.col > c]
    return OffsetPair(
        retile(top, off + b, pair.params), retile(bot, a - off, pair.params), off, pair.params,
    )


# -- Cassini ----------------------------------------------------------------


@dataclass
class CassiniReport:
    n: int
    params: GibonacciParams
    buckets: dict[str, dict[str, int]]   # set -> bucket -> weighted count
    correction: int                     # unmatched(Set 1) - unmatched(Set 2)
    expected: int                       # (-1)^n (G_0 G_2 - G_1^2)
    bijective: bool
    weight_preserving: bool

    @property
    def passed(self) -> bool:
        totals_ok = (
            sum(self.buckets["set1"].values()) == gib(self.params, self.n) ** 2
            and sum(self.buckets["set2"].values())
            == gib(self.params, self.n + 1) * gib(self.params, self.n - 1)
        )
        return totals_ok and self.bijective and self.weight_preserving and self.correction == self.expected

    def to_dict(self) -> dict:
        return {
            "n": self.n, "g0": self.params.g0, "g1": self.params.g1,
            "buckets": self.buckets, "correction": self.correction,
            "expected": self.expected, "bijective": self.bijective,
            "weight_preserving": self.weight_preserving, "passed": self.passed,
        }


def _classify(pair: OffsetPair) -> str:
    fs = faults(pair)
    if not fs:
        return "fault_free"
    return "column_1" if fs[-1].column < 1 + pair.offset else "matched"


def _pairs(la: int, lb: int, p: GibonacciParams):
    tops, bots = enumerate_tilings(_board(la, p)), enumerate_tilings(_board(lb, p))
    return [OffsetPair(t, b, 1, p) for t in tops for b in bots]


def verify_cassini(n: int, p: GibonacciParams) -> CassiniReport:
    """Tail-swap Set (1) = two n-boards onto Set (2) = (n+1)- over (n-1)-board,
    both stacked with the bottom board shifted one column right."""
    if not 2 <= n <= 30:
        raise ValueError("n must lie in 2..30")
    p.require_nonnegative()
    set1, set2 = _pairs(n, n, p), _pairs(n + 1, n - 1, p)
    buckets = {"set1": defaultdict(int), "set2": defaultdict(int)}
    matched2 = set()
    for q in set2:
        kind = _classify(q)
        buckets["set2"][kind] += q.weight
        if kind == "matched":
            matched2.add((q.top.dominoes, q.bottom.dominoes))
    images = set()
    matched1 = 0
    weight_ok = True
    for q in set1:
        kind = _classify(q)
        buckets["set1"][kind] += q.weight
        if kind == "matched":
            matched1 += 1
            s = tail_swap(q)
            weight_ok &= s.weight == q.weight and tail_swap(s) == q
            images.add((s.top.dominoes, s.bottom.dominoes))
    bijective = images == matched2 and len(images) == matched1
    out = {k: {b: v.get(b, 0) for b in ("matched", "column_1", "fault_free")} for k, v in buckets.items()}
    unmatched = lambda s: out[s]["column_1"] + out[s]["fault_free"]
    g0, g1, g2 = p.g0, p.g1, gib(p, 2)
    return CassiniReport(
        n, p, out, unmatched("set1") - unmatched("set2"),
        (-1) ** n * (g0 * g2 - g1 * g1), bijective, weight_ok,
    )


# -- supertiles -------------------------------------------------------------


@dataclass(frozen=True)
class SupertileDecomposition:
    m: int
    segments: tuple[tuple[Placement, ...], ...]   # a domino belongs to the segment of its left cell
    open: tuple[bool, ...]                        # open[j-1] for junction j = 1..r-1

    def reassemble(self) -> tuple[Placement, ...]:
        return tuple(sorted(d for seg in self.segments for d in seg))

    def group(self) -> str:
        """Label of the first supertile closed on the left and open on the right."""
        for j, is_open in enumerate(self.open, start=1):
            if is_open:
                return f"j={j}"
        return "closed"


def supertile_decompose(t: Tiling, m: int) -> SupertileDecomposition:
    n = _length(t)
    if m < 1 or n % m:
        raise ValueError(f"board length {n} is not a multiple of m={m}")
    r = n // m
    segs: list[list[Placement]] = [[] for _ in range(r)]
    for d in sorted(t.dominoes):
        segs[(d.a.col - 1) // m].append(d)
    spans = {(d.a.row, d.a.col) for d in t.dominoes if not d.vertical}
    flags = []
    for j in range(1, r):
        top, bottom = (1, j * m) in spans, (2, j * m) in spans
        if top != bottom:
            raise AssertionError(f"junction {j} is spanned in one row only")
        flags.append(top)
    return SupertileDecomposition(m, tuple(tuple(s) for s in segs), tuple(flags))


@dataclass
class CensusReport:
    params: GibonacciParams
    groups: dict[str, int]      # census, weighted
    expected: dict[str, int]    # closed-form summands
    total: int
    expected_total: int

    @property
    def passed(self) -> bool:
        return self.groups == self.expected and self.total == self.expected_total

    def to_dict(self) -> dict:
        return {
            "g0": self.params.g0, "g1": self.params.g1, "groups": self.groups,
            "expected": self.expected, "total": self.total,
            "expected_total": self.expected_total, "passed": self.passed,
        }


def supertile_census(m: int, r: int, p: GibonacciParams) -> CensusReport:
    if m < 1 or r < 2:
        raise ValueError("need m >= 1 and r >= 2")
    expected = supertile_summands(p, m, r)
    groups = dict.fromkeys(expected, 0)
    for t in enumerate_tilings(gib_board(m * r, p)):
        groups[supertile_decompose(t, m).group()] += t.weight
    return CensusReport(p, groups, expected, sum(groups.values()), gib(p, m * r))


def unbreakable_census(n: int, p: GibonacciParams) -> CensusReport:
    """Group tilings of the 2 x (3n+4) board by the last breakable column of
    the form 3j+2; those breakable at none form the ``unbreakable`` bucket."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    board = gib_board(3 * n + 4, p)
    groups = {f"j={j}": 0 for j in range(n + 1)}
    groups["unbreakable"] = 0
    for t in enumerate_tilings(board):
        prof = breakable_columns(t)
        hits = [j for j in range(n + 1) if 3 * j + 2 in prof]
        groups[f"j={hits[-1]}" if hits else "unbreakable"] += t.weight
    expected = {f"j={j}": 2 * gib(p, 3 * j + 2) for j in range(n + 1)}
    expected["unbreakable"] = p.g1
    return CensusReport(p, groups, expected, sum(groups.values()), gib(p, 3 * n + 4))

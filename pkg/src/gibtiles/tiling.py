"""Weighted domino tilings of finite cell regions.

A board is a set of ``(row, col)`` cells (rows grow downward) plus a marking
that attaches a colour count to particular domino placements.  The weighted
count of a board is the sum over its tilings of the product of the weights
of the placements used; unmarked placements weigh 1.

Two independent counters are provided: :func:`enumerate_tilings` is the
exhaustive oracle, :func:`count_tilings` runs a broken-profile dynamic
program along the longer side of the bounding box.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, NamedTuple

from .sequences import GibonacciParams

ENUMERATION_CAP = 64
PROFILE_WIDTH_CAP = 12


class Cell(NamedTuple):
    row: int
    col: int


class Placement(NamedTuple):
    """A domino position; ``a < b`` and the two cells are edge-adjacent."""

    a: Cell
    b: Cell

    @classmethod
    def of(cls, u: tuple[int, int], v: tuple[int, int]) -> "Placement":
        u, v = Cell(*u), Cell(*v)
        if abs(u.row - v.row) + abs(u.col - v.col) != 1:
            raise ValueError(f"cells {u} and {v} are not edge-adjacent")
        return cls(u, v) if u < v else cls(v, u)

    @property
    def vertical(self) -> bool:
        return self.a.col == self.b.col

    def shifted(self, drow: int = 0, dcol: int = 0) -> "Placement":
        return Placement(
            Cell(self.a.row + drow, self.a.col + dcol),
            Cell(self.b.row + drow, self.b.col + dcol),
        )


class TooLarge(ValueError):
    """Region exceeds what the requested counting method can handle."""


@dataclass(frozen=True)
class Board:
    cells: frozenset[Cell]
    marking: Mapping[Placement, int] = field(default_factory=dict)
    name: str = "board"

    def __post_init__(self) -> None:
        if not self.cells:
            raise ValueError("a board needs at least one cell")
        for placement, weight in self.marking.items():
            if weight < 0:
                raise ValueError(f"negative weight {weight} on {placement}")
            if placement.a not in self.cells or placement.b not in self.cells:
                raise ValueError(f"marked placement {placement} leaves the region")

    def weight_of(self, dominoes: Iterable[Placement]) -> int:
        w = 1
        for d in dominoes:
            w *= self.marking.get(d, 1)
        return w

    def bounding_box(self) -> tuple[int, int, int, int]:
        rows = [c.row for c in self.cells]
        cols = [c.col for c in self.cells]
        return min(rows), max(rows), min(cols), max(cols)

    def unweighted(self) -> "Board":
        return Board(self.cells, {}, self.name + "/plain")


@dataclass(frozen=True)
class Tiling:
    dominoes: tuple[Placement, ...]
    weight: int

    def cells(self) -> set[Cell]:
        return {c for d in self.dominoes for c in d}

    def columns(self) -> tuple[int, int]:
        cols = [c.col for d in self.dominoes for c in d]
        return min(cols), max(cols)


# -- counting ---------------------------------------------------------------


def _iter_tilings(cells: frozenset[Cell]) -> Iterator[list[Placement]]:
    order = sorted(cells)
    covered: set[Cell] = set()
    chosen: list[Placement] = []

    def walk(i: int) -> Iterator[list[Placement]]:
        while i < len(order) and order[i] in covered:
            i += 1
        if i == len(order):
            yield list(chosen)
            return
        cell = order[i]
        # vertical partner first, then horizontal
        for other in (Cell(cell.row + 1, cell.col), Cell(cell.row, cell.col + 1)):
            if other in cells and other not in covered:
                covered.add(cell)
                covered.add(other)
                chosen.append(Placement(cell, other))
                yield from walk(i + 1)
                chosen.pop()
                covered.discard(cell)
                covered.discard(other)

    yield from walk(0)


def enumerate_tilings(board: Board, cap: int = ENUMERATION_CAP) -> list[Tiling]:
    """All tilings in a fixed order, each annotated with its weight.

    The first uncovered cell in (row, col) order is always paired next, with
    its lower neighbour tried before its right neighbour.
    """
    if len(board.cells) > cap:
        raise TooLarge(f"{len(board.cells)} cells exceeds the enumeration cap {cap}")
    if len(board.cells) % 2:
        return []
    return [
        Tiling(tuple(ds), board.weight_of(ds)) for ds in _iter_tilings(board.cells)
    ]


def _profile_count(board: Board) -> int:
    r0, r1, c0, c1 = board.bounding_box()
    height, width = r1 - r0 + 1, c1 - c0 + 1
    # the profile runs across the narrow side; `along` steps down the long one
    if width <= height:
        def cell(along: int, across: int) -> Cell:
            return Cell(r0 + along, c0 + across)
        length, breadth = height, width
    else:
        def cell(along: int, across: int) -> Cell:
            return Cell(r0 + across, c0 + along)
        length, breadth = width, height

    cells, marking = board.cells, board.marking
    states: dict[int, int] = {0: 1}
    for i in range(length):
        for j in range(breadth):
            here = cell(i, j)
            bit = 1 << j
            present = here in cells
            nxt_along = cell(i + 1, j)
            nxt_across = cell(i, j + 1) if j + 1 < breadth else None
            w_along = marking.get(Placement.of(here, nxt_along), 1) if present else 0
            w_across = (
                marking.get(Placement.of(here, nxt_across), 1)
                if present and nxt_across is not None
                else 0
            )
            out: dict[int, int] = {}
            for mask, ways in states.items():
                if not present:
                    # nothing may have been pushed into a missing cell
                    out[mask] = out.get(mask, 0) + ways
                    continue
                if mask & bit:
                    key = mask & ~bit
                    out[key] = out.get(key, 0) + ways
                    continue
                if nxt_along in cells and w_along:
                    key = mask | bit
                    out[key] = out.get(key, 0) + ways * w_along
                if (
                    nxt_across is not None
                    and nxt_across in cells
                    and not mask & (bit << 1)
                    and w_across
                ):
                    key = mask | (bit << 1)
                    out[key] = out.get(key, 0) + ways * w_across
            states = out
    return states.get(0, 0)


def count_tilings(board: Board, cap: int = ENUMERATION_CAP) -> int:
    """Weighted number of tilings."""
    if len(board.cells) % 2:
        return 0
    r0, r1, c0, c1 = board.bounding_box()
    if min(r1 - r0, c1 - c0) + 1 <= PROFILE_WIDTH_CAP:
        return _profile_count(board)
    if len(board.cells) <= cap:
        return sum(t.weight for t in enumerate_tilings(board, cap))
    raise TooLarge("region is too wide for the profile DP and too large to enumerate")


# -- constructors -----------------------------------------------------------


def _rect(rows: Iterable[int], cols: Iterable[int]) -> set[Cell]:
    cols = list(cols)
    return {Cell(r, c) for r in rows for c in cols}


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


def _left_marks(n: int, p: GibonacciParams) -> dict[Placement, int]:
    # vertical domino in column 1 gets G_1 colours, the top horizontal G_0
    marks = {Placement.of((1, 1), (2, 1)): p.g1}
    if n >= 2:
        marks[Placement.of((1, 1), (1, 2))] = p.g0
    return marks


def plain_board(n: int) -> Board:
    _need(n >= 1, "plain_board needs n >= 1")
    return Board(frozenset(_rect((1, 2), range(1, n + 1))), {}, f"plain({n})")


def lucas_board(n: int) -> Board:
    _need(n >= 1, "lucas_board needs n >= 1")
    cells = _rect((1, 2), range(1, n + 1)) | {Cell(0, 1), Cell(0, 2)}
    return Board(frozenset(cells), {}, f"lucas({n})")


def gib_board(n: int, p: GibonacciParams) -> Board:
    """2 x n board whose tilings weigh up to ``G_n``.

    Lengths 1 and 2 are accepted (they give ``G_1`` and ``G_2``) because the
    Cassini pairing needs boards one column shorter than the smallest ``n``.
    """
    _need(n >= 1, "gib_board needs n >= 1")
    p.require_nonnegative()
    cells = _rect((1, 2), range(1, n + 1))
    return Board(frozenset(cells), _left_marks(n, p), f"gib({n},{p.g0},{p.g1})")


def gib_board_case1(n: int, p: GibonacciParams) -> Board:
    _need(n >= 2, "gib_board_case1 needs n >= 2")
    p.require_nonnegative()
    _need(p.g0 >= p.g1, "gib_board_case1 needs g0 >= g1")
    marks = {
        Placement.of((0, 1), (0, 2)): p.g1,
        Placement.of((0, 1), (1, 1)): p.g0 - p.g1,
    }
    return Board(lucas_board(n).cells, marks, f"gib1({n},{p.g0},{p.g1})")


def double_marked_board(n: int, p: GibonacciParams) -> Board:
    _need(n >= 4, "double_marked_board needs n >= 4")
    p.require_nonnegative()
    marks = _left_marks(n, p)
    marks[Placement.of((1, n), (2, n))] = p.g1
    marks[Placement.of((1, n - 1), (1, n))] = p.g0
    cells = _rect((1, 2), range(1, n + 1))
    return Board(frozenset(cells), marks, f"double({n},{p.g0},{p.g1})")


def mixed_board(n: int, p: GibonacciParams) -> Board:
    """2 x (n+1) board, left end marked for G and right end for G'."""
    _need(n >= 3, "mixed_board needs n >= 3")
    p.require_nonnegative()
    marks = _left_marks(n + 1, p)
    marks[Placement.of((1, n + 1), (2, n + 1))] = p.g0
    marks[Placement.of((1, n), (1, n + 1))] = p.g1
    cells = _rect((1, 2), range(1, n + 2))
    return Board(frozenset(cells), marks, f"mixed({n},{p.g0},{p.g1})")


def h_board_general(n: int, m: int) -> Board:
    """m rows: rows 1, 2, m-1, m span columns 1..n, the others columns 1..2."""
    _need(n >= 3, "h_board needs n >= 3")
    _need(m >= 6, "h_board_general needs m >= 6")
    cells = _rect((1, 2, m - 1, m), range(1, n + 1)) | _rect(range(3, m - 1), (1, 2))
    return Board(frozenset(cells), {}, f"h({n},{m})")


def h_board(n: int) -> Board:
    return h_board_general(n, 6)


def l_board(n: int, p: GibonacciParams, arm: int | None = None) -> Board:
    """2 x n strip with its first two columns extended down to row ``arm``.

    ``arm`` defaults to ``n``; other values give the unequal-arm variant.
    """
    arm = n if arm is None else arm
    _need(n >= 3 and arm >= 3, "l_board needs n >= 3 and arm >= 3")
    p.require_nonnegative()
    cells = _rect((1, 2), range(1, n + 1)) | _rect(range(3, arm + 1), (1, 2))
    return Board(frozenset(cells), _left_marks(n, p), f"l({n},{arm},{p.g0},{p.g1})")


# -- rendering --------------------------------------------------------------

_LETTERS = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"


def _grid(board_cells: Iterable[Cell], fill: Mapping[Cell, str], blank: str) -> str:
    cells = set(board_cells)
    r0 = min(c.row for c in cells)
    r1 = max(c.row for c in cells)
    c0 = min(c.col for c in cells)
    c1 = max(c.col for c in cells)
    lines = []
    for r in range(r0, r1 + 1):
        row = "".join(
            fill.get(Cell(r, c), blank) if Cell(r, c) in cells else " "
            for c in range(c0, c1 + 1)
        )
        lines.append(row.rstrip())
    return "\n".join(lines)


def render_board(board: Board) -> str:
    """Cells as ``#``; marked placements listed underneath with their weights."""
    out = [_grid(board.cells, {}, "#")]
    for pl, w in sorted(board.marking.items()):
        out.append(f"  ({pl.a.row},{pl.a.col})-({pl.b.row},{pl.b.col}) x{w}")
    return "\n".join(out)


def render_tiling(board: Board, tiling: Tiling) -> str:
    fill = {}
    for i, d in enumerate(tiling.dominoes):
        ch = _LETTERS[i % len(_LETTERS)]
        fill[d.a] = fill[d.b] = ch
    return _grid(board.cells, fill, "?") + f"\n  weight {tiling.weight}"

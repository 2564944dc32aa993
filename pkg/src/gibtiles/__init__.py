"""Gibonacci numbers as weighted domino tilings, with an exact identity checker."""

from .sequences import (
    COMBINATORIAL, FIBONACCI, LUCAS, GibonacciParams, IndexOutOfRange, f_comb, fib, gib,
    gib_swapped, lucas,
)
from .tiling import (
    Board, Cell, Placement, Tiling, TooLarge, count_tilings, double_marked_board,
    enumerate_tilings, gib_board, gib_board_case1, h_board, h_board_general, l_board,
    lucas_board, mixed_board, plain_board,
)
from .identities import Grid, VerificationReport, desk_grid, registry, verify, verify_all
from .bijections import (
    OffsetPair, breakable_columns, faults, supertile_census, supertile_decompose, tail_swap,
    unbreakable_census, verify_cassini,
)
from .number_theory import (
    fib_bracket, lacunary_fib, lacunary_gib, represent, sequence_period, supertile_congruence,
    universal_period,
)

__version__ = "0.1.0"

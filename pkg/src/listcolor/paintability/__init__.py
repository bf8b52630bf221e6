"""The paint game: exact solving, paint numbers and strategy trees."""
from .game import (ALICE_WON, BOB_WON, alice_moves, bob_responses, canonicalize_position,
                   uniform_position)
from .kernel import (KERNEL_NAME, Solver, dump_memo, load_memo, make_kernel, paint_number,
                     solve_position)

__all__ = [
    "ALICE_WON", "BOB_WON", "alice_moves", "bob_responses", "canonicalize_position",
    "uniform_position", "KERNEL_NAME", "Solver", "make_kernel", "dump_memo", "load_memo",
    "solve_position", "paint_number",
]

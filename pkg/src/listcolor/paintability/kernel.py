"""Kernel selection, the solver facade and memo persistence."""
from __future__ import annotations

import logging
import os
import struct
from typing import BinaryIO, Sequence

from .game import (ALICE_WON, BOB_WON, Position, canonicalize_position, decode_position,
                   encode_position, uniform_position)
from ._pykernel import PyKernel

log = logging.getLogger(__name__)

try:
    from ._ckernel import CKernel
except ImportError:  # extension not built
    CKernel = None

MAGIC = b"PAINTMEMO1\n"


def make_kernel(kind: str = "auto"):
    """``auto`` picks the compiled kernel when built; ``LISTCOLOR_KERNEL=python`` forces the fallback."""
    if kind == "auto":
        kind = os.environ.get("LISTCOLOR_KERNEL", "auto")
    if kind == "python":
        return PyKernel()
    if kind == "compiled":
        if CKernel is None:
            raise RuntimeError("compiled kernel is not available")
        return CKernel()
    if kind != "auto":
        raise ValueError(f"unknown kernel {kind!r}")
    return CKernel() if CKernel is not None else PyKernel()


KERNEL_NAME = make_kernel().name


def winner_name(alice: bool) -> str:
    return "alice" if alice else "bob"


class Solver:
    """Memoized game values; positions are canonicalized on entry."""

    def __init__(self, kernel=None):
        self.kernel = kernel if kernel is not None else make_kernel()

    def alice_wins(self, pos) -> bool:
        pos = canonicalize_position(pos)
        if pos == ALICE_WON:
            return True
        if pos == BOB_WON:
            return False
        return bool(self.kernel.solve(pos))

    def solve_position(self, pos) -> str:
        return winner_name(self.alice_wins(pos))

    def paint_number(self, shape: Sequence[int], start: int | None = None) -> int:
        """Least uniform budget with which Bob wins, scanning upward from ``start``."""
        t = max(1, start if start is not None else len(shape))
        if t > 1 and not self.alice_wins(uniform_position(shape, t - 1)):
            raise ValueError(f"start {t} is above the paint number")
        while self.alice_wins(uniform_position(shape, t)):
            t += 1
        # Bob keeps winning with more tokens
        if self.alice_wins(uniform_position(shape, t + 1)):
            raise AssertionError("paint game value is not monotone in the budget")
        return t

    def __len__(self):
        return len(self.kernel)

    def dump(self, fh: BinaryIO) -> int:
        return dump_memo(self.kernel, fh)

    def load(self, fh: BinaryIO) -> int:
        return load_memo(self.kernel, fh)


def dump_memo(kernel, fh: BinaryIO) -> int:
    """Write entries sorted by key so the file is reproducible."""
    entries = sorted((encode_position(p), v) for p, v in kernel.items())
    fh.write(MAGIC)
    fh.write(struct.pack("<Q", len(entries)))
    for key, v in entries:
        fh.write(struct.pack("<HB", len(key), 1 if v else 0))
        fh.write(key)
    return len(entries)


def load_memo(kernel, fh: BinaryIO) -> int:
    if fh.read(len(MAGIC)) != MAGIC:
        raise ValueError("not a paint memo file")
    (n,) = struct.unpack("<Q", fh.read(8))
    for _ in range(n):
        head = fh.read(3)
        if len(head) != 3:
            raise ValueError("truncated paint memo file")
        size, v = struct.unpack("<HB", head)
        key = fh.read(size)
        if len(key) != size:
            raise ValueError("truncated paint memo file")
        kernel.insert(decode_position(key), bool(v))
    return n


def solve_position(pos, solver: Solver | None = None) -> str:
    return (solver or Solver()).solve_position(pos)


def paint_number(shape: Sequence[int], solver: Solver | None = None,
                 start: int | None = None) -> int:
    if start is None:
        start = len(shape)
    return (solver or Solver()).paint_number(shape, start)


__all__ = ["MAGIC", "make_kernel", "KERNEL_NAME", "Solver", "dump_memo", "load_memo",
           "solve_position", "paint_number", "winner_name", "Position"]

"""Exact dense integer matrices and block/tensor assembly.

Everything downstream certifies with exact arithmetic (integer
characteristic polynomials, permutation replays), so this module uses
arbitrary-precision Python ints throughout and never touches floats.
Matrices here are tiny (tens of rows), hence dense row-major storage.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import PreconditionError


def _as_entries(rows: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    out = []
    for row in rows:
        checked = []
        for x in row:
            if not isinstance(x, int):  # bool is fine, floats are not
                raise ValueError(f"non-integer entry {x!r}")
            checked.append(int(x))
        out.append(tuple(checked))
    return tuple(out)


@dataclass(frozen=True)
class IntMatrix:
    """Immutable row-major matrix of Python ints."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not self.entries or not self.entries[0]:
            raise ValueError("matrix needs at least one row and one column")
        width = len(self.entries[0])
        if any(len(row) != width for row in self.entries):
            raise ValueError("ragged rows")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        return cls(_as_entries(rows))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def ones(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(tuple((1,) * cols for _ in range(rows)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        return self.entries[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.entries)

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.entries)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise PreconditionError(
                f"cannot multiply {self.shape} by {other.shape}"
            )
        cols = tuple(zip(*other.entries))
        return IntMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
                for row in self.entries
            )
        )

    def trace(self) -> int:
        if self.rows != self.cols:
            raise PreconditionError("trace of a non-square matrix")
        return sum(self.entries[i][i] for i in range(self.rows))

    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(r) for r in self.entries)

    def col_sums(self) -> tuple[int, ...]:
        return tuple(sum(c) for c in zip(*self.entries))

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square() and self == self.T

    def is_binary(self) -> bool:
        return all(x in (0, 1) for row in self.entries for x in row)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def has_zero_diagonal(self) -> bool:
        return self.is_square() and all(
            self.entries[i][i] == 0 for i in range(self.rows)
        )

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def __str__(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.entries)


def kron(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    """Kronecker product: the block matrix (a[i][j] * b)."""
    return IntMatrix(
        tuple(
            tuple(av * bv for av in arow for bv in brow)
            for arow in a.entries
            for brow in b.entries
        )
    )


def _check_grid(blocks: tuple[tuple[IntMatrix, ...], ...]) -> None:
    """Require equal heights along block rows and equal widths down block columns."""
    heights = [row[0].rows for row in blocks]
    widths = [blk.cols for blk in blocks[0]]
    for bi, row in enumerate(blocks):
        for bj, blk in enumerate(row):
            if blk.rows != heights[bi] or blk.cols != widths[bj]:
                raise PreconditionError(
                    f"block ({bi},{bj}) has shape {blk.shape}, expected "
                    f"({heights[bi]}, {widths[bj]})"
                )


def _assemble(blocks: tuple[tuple[IntMatrix, ...], ...]) -> IntMatrix:
    _check_grid(blocks)
    flat: list[tuple[int, ...]] = []
    for brow in blocks:
        for i in range(brow[0].rows):
            row: tuple[int, ...] = ()
            for blk in brow:
                row += blk.entries[i]
            flat.append(row)
    return IntMatrix(tuple(flat))


@dataclass(frozen=True)
class Block2:
    """A conformal 2x2 grid of integer matrices."""

    blocks: tuple[tuple[IntMatrix, IntMatrix], tuple[IntMatrix, IntMatrix]]

    def __post_init__(self) -> None:
        _check_grid(self.blocks)

    @classmethod
    def of(cls, tl: IntMatrix, tr: IntMatrix, bl: IntMatrix, br: IntMatrix) -> "Block2":
        return cls(((tl, tr), (bl, br)))

    def flatten(self) -> IntMatrix:
        return _assemble(self.blocks)


@dataclass(frozen=True)
class Block3:
    """A conformal 3x3 grid of integer matrices."""

    blocks: tuple[tuple[IntMatrix, IntMatrix, IntMatrix], ...]

    def __post_init__(self) -> None:
        if len(self.blocks) != 3 or any(len(r) != 3 for r in self.blocks):
            raise ValueError("Block3 needs a 3x3 grid")
        _check_grid(self.blocks)

    @classmethod
    def of(cls, rows: Sequence[Sequence[IntMatrix]]) -> "Block3":
        return cls(tuple(tuple(r) for r in rows))

    def flatten(self) -> IntMatrix:
        return _assemble(self.blocks)


def ptp2(m: Block2, h: Block2) -> tuple[IntMatrix, tuple[int, int]]:
    """Partitioned tensor product of two 2x2 block matrices.

    Assembles [[U@A, V@B], [W@C, X@D]] (@ = Kronecker) into one flat
    matrix, and returns it together with the canonical row-partition
    sizes induced by the diagonal blocks.
    """
    grid = tuple(
        tuple(kron(m.blocks[i][j], h.blocks[i][j]) for j in range(2))
        for i in range(2)
    )
    mat = _assemble(grid)
    return mat, (grid[0][0].rows, grid[1][0].rows)


def ptp3(l: Block3, a: Block3) -> tuple[IntMatrix, tuple[int, int, int]]:
    """3x3 analogue of ptp2: blockwise Kronecker products, flattened."""
    grid = tuple(
        tuple(kron(l.blocks[i][j], a.blocks[i][j]) for j in range(3))
        for i in range(3)
    )
    mat = _assemble(grid)
    return mat, (grid[0][0].rows, grid[1][0].rows, grid[2][0].rows)


def partial_transpose(m: IntMatrix, block_size: int) -> IntMatrix:
    """Transpose each block_size x block_size block of m in place.

    m must be square with block_size dividing its dimension; applying
    the operation twice returns the input.
    """
    if not m.is_square():
        raise PreconditionError("partial transpose needs a square matrix")
    if block_size < 1 or m.rows % block_size != 0:
        raise PreconditionError(
            f"block size {block_size} does not divide dimension {m.rows}"
        )
    b = block_size
    n = m.rows
    return IntMatrix(
        tuple(
            tuple(
                m.entries[(i // b) * b + (j % b)][(j // b) * b + (i % b)]
                for j in range(n)
            )
            for i in range(n)
        )
    )


def block_diag(parts: Sequence[IntMatrix]) -> IntMatrix:
    """Place matrices along the diagonal with zero fill."""
    if not parts:
        raise ValueError("need at least one block")
    k = len(parts)
    grid = tuple(
        tuple(
            parts[i] if i == j else IntMatrix.zeros(parts[i].rows, parts[j].cols)
            for j in range(k)
        )
        for i in range(k)
    )
    return _assemble(grid)


def block_antidiag(v: IntMatrix, w: IntMatrix) -> IntMatrix:
    """Assemble [[0, v], [w, 0]] with zero blocks sized to fit."""
    grid = (
        (IntMatrix.zeros(v.rows, w.cols), v),
        (w, IntMatrix.zeros(w.rows, v.cols)),
    )
    return _assemble(grid)

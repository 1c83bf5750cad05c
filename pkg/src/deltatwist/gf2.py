"""Exact linear algebra over GF(2) and over the integers.

GF(2) matrices pack each row into a Python int (bit j of row i is entry
(i, j)), so row elimination is a word-wide XOR.  Integer determinants use
Bareiss fraction-free elimination; no floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence, Union

from .errors import DimensionMismatch
from .limits import SUBSET_GUARD, check_size


class Gf2Matrix:
    """Square matrix over the two-element field, one bitmask per row."""

    __slots__ = ("order", "rows")

    def __init__(self, order: int, rows: Iterable[int]):
        rows = tuple(rows)
        if order < 0:
            raise DimensionMismatch("negative order")
        if len(rows) != order:
            raise DimensionMismatch(f"expected {order} rows, got {len(rows)}")
        mask = (1 << order) - 1
        for r in rows:
            if r < 0 or r & ~mask:
                raise DimensionMismatch("row bits outside the matrix order")
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @classmethod
    def from_entries(cls, entries: Sequence[Sequence[int]]) -> "Gf2Matrix":
        n = len(entries)
        rows = []
        for row in entries:
            if len(row) != n:
                raise DimensionMismatch("matrix is not square")
            bits = 0
            for j, e in enumerate(row):
                if e not in (0, 1):
                    raise ValueError(f"entry {e!r} is not a bit")
                bits |= e << j
            rows.append(bits)
        return cls(n, rows)

    def entry(self, i: int, j: int) -> int:
        if not (0 <= i < self.order and 0 <= j < self.order):
            raise IndexError("entry index out of range")
        return (self.rows[i] >> j) & 1

    def to_entries(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.order)] for r in self.rows]

    def __eq__(self, other) -> bool:
        if isinstance(other, Gf2Matrix):
            return self.order == other.order and self.rows == other.rows
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.order, self.rows))

    def __repr__(self) -> str:
        return f"{type(self).__name__}.from_entries({self.to_entries()!r})"


class Gf2SymMatrix(Gf2Matrix):
    """Symmetric GF(2) matrix; symmetry is enforced at construction.

    This is the adjacency-matrix type: diagonal bits mark loops.
    """

    def __init__(self, order: int, rows: Iterable[int]):
        super().__init__(order, rows)
        for i in range(order):
            for j in range(i + 1, order):
                if (self.rows[i] >> j) & 1 != (self.rows[j] >> i) & 1:
                    raise DimensionMismatch(f"matrix is not symmetric at ({i},{j})")


def _rank_bits(rows: Iterable[int]) -> int:
    """Rank of a collection of bitmask rows over GF(2)."""
    basis: list[int] = []
    rank = 0
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
            rank += 1
    return rank


def rank_gf2(m: Gf2Matrix) -> int:
    """Row rank over GF(2); 0 for the empty matrix."""
    return _rank_bits(m.rows)


def det_gf2(m: Gf2Matrix) -> int:
    """1 iff nonsingular over GF(2); the 0x0 matrix counts as nonsingular."""
    return 1 if _rank_bits(m.rows) == m.order else 0


def principal_submatrix(m: Gf2Matrix, indices: Iterable[int]) -> Gf2Matrix:
    """The submatrix on the given index subset, relative order preserved.

    Returns the same matrix class as the input (a principal submatrix of a
    symmetric matrix is symmetric).
    """
    idx = sorted(set(indices))
    for i in idx:
        if not (0 <= i < m.order):
            raise IndexError(f"index {i} out of range for order {m.order}")
    rows = []
    for i in idx:
        bits = 0
        for new_j, j in enumerate(idx):
            bits |= ((m.rows[i] >> j) & 1) << new_j
        rows.append(bits)
    return type(m)(len(idx), rows)


def max_nonsingular_principal_order(m: Gf2Matrix, max_n: int | None = None) -> int:
    """Largest |S| with M[S] nonsingular, by exhaustive search over subsets.

    Brute-force oracle for ``rank_gf2`` on symmetric matrices; guarded
    because the search is 2^n.
    """
    check_size(m.order, max_n, SUBSET_GUARD, "max_nonsingular_principal_order")
    for size in range(m.order, 0, -1):
        for idx in combinations(range(m.order), size):
            if det_gf2(principal_submatrix(m, idx)):
                return size
    return 0  # M[emptyset] is nonsingular by convention


# ---------------------------------------------------------------------------
# Exact integer matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntMatrix:
    """Rectangular matrix with exact integer entries."""

    rows: tuple[tuple[int, ...], ...]

    def __init__(self, rows: Iterable[Iterable[int]]):
        rows = tuple(tuple(int(e) for e in row) for row in rows)
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            raise DimensionMismatch("rows have differing lengths")
        object.__setattr__(self, "rows", rows)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0


def det_int(m: IntMatrix) -> int:
    """Exact determinant by Bareiss fraction-free elimination; 0x0 gives 1."""
    n = m.nrows
    if n != m.ncols:
        raise DimensionMismatch(f"determinant of a {n}x{m.ncols} matrix")
    if n == 0:
        return 1
    a = [list(r) for r in m.rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # Exact by the Desnanot-Jacobi identity underlying Bareiss.
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Almost-block-diagonal join determinant identity
# ---------------------------------------------------------------------------

BlockMatrix = Union[Gf2SymMatrix, IntMatrix]


@dataclass(frozen=True)
class JoinBlocks:
    """Blocks of the (n+m+1)-square matrix [[A, u, 0], [v^T, c, x^T], [0, y, B]].

    ``a`` and ``b`` are the two corner blocks, ``c`` the overlap scalar,
    ``u``/``v`` the length-n borders of the top block and ``x``/``y`` the
    length-m borders of the bottom block.  Both blocks must live in the
    same scalar domain: ``Gf2SymMatrix`` for GF(2), ``IntMatrix`` for
    exact integers.
    """

    a: BlockMatrix
    u: tuple[int, ...]
    v: tuple[int, ...]
    c: int
    x: tuple[int, ...]
    y: tuple[int, ...]
    b: BlockMatrix

    def __post_init__(self):
        object.__setattr__(self, "u", tuple(self.u))
        object.__setattr__(self, "v", tuple(self.v))
        object.__setattr__(self, "x", tuple(self.x))
        object.__setattr__(self, "y", tuple(self.y))
        gf2 = isinstance(self.a, Gf2Matrix)
        if gf2 != isinstance(self.b, Gf2Matrix):
            raise DimensionMismatch("blocks live in different scalar domains")
        n = self.a.order if gf2 else _square_order(self.a, "a")
        m = self.b.order if gf2 else _square_order(self.b, "b")
        if len(self.u) != n or len(self.v) != n:
            raise DimensionMismatch("u and v must have the top block's order")
        if len(self.x) != m or len(self.y) != m:
            raise DimensionMismatch("x and y must have the bottom block's order")
        if gf2:
            for e in (*self.u, *self.v, *self.x, *self.y, self.c):
                if e not in (0, 1):
                    raise DimensionMismatch(f"GF(2) entry {e!r} is not a bit")

    @property
    def is_gf2(self) -> bool:
        return isinstance(self.a, Gf2Matrix)


def _square_order(m: IntMatrix, name: str) -> int:
    if m.nrows != m.ncols:
        raise DimensionMismatch(f"block {name} is not square")
    return m.nrows


def _gf2_bordered(block: Gf2Matrix, col: tuple[int, ...], row: tuple[int, ...],
                  corner: int, corner_first: bool) -> Gf2Matrix:
    """Adjoin a final (or leading) row/column to a GF(2) block."""
    n = block.order
    if corner_first:
        rows = [corner | sum(row[j] << (j + 1) for j in range(n))]
        rows += [col[i] | (block.rows[i] << 1) for i in range(n)]
    else:
        rows = [block.rows[i] | (col[i] << n) for i in range(n)]
        rows.append(sum(row[j] << j for j in range(n)) | (corner << n))
    return Gf2Matrix(n + 1, rows)


def _int_bordered(block: IntMatrix, col: tuple[int, ...], row: tuple[int, ...],
                  corner: int, corner_first: bool) -> IntMatrix:
    n = block.nrows
    if corner_first:
        rows = [[corner, *row]]
        rows += [[col[i], *block.rows[i]] for i in range(n)]
    else:
        rows = [[*block.rows[i], col[i]] for i in range(n)]
        rows.append([*row, corner])
    return IntMatrix(rows)


def assemble_join(blocks: JoinBlocks):
    """The full (n+m+1)-square matrix with the two blocks overlapping in c."""
    n = len(blocks.u)
    m = len(blocks.x)
    if blocks.is_gf2:
        rows = [blocks.a.rows[i] | (blocks.u[i] << n) for i in range(n)]
        mid = sum(blocks.v[j] << j for j in range(n)) | (blocks.c << n)
        mid |= sum(blocks.x[j] << (n + 1 + j) for j in range(m))
        rows.append(mid)
        rows += [(blocks.y[i] << n) | (blocks.b.rows[i] << (n + 1)) for i in range(m)]
        return Gf2Matrix(n + m + 1, rows)
    rows = [[*blocks.a.rows[i], blocks.u[i], *([0] * m)] for i in range(n)]
    rows.append([*blocks.v, blocks.c, *blocks.x])
    rows += [[*([0] * n), blocks.y[i], *blocks.b.rows[i]] for i in range(m)]
    return IntMatrix(rows)


@dataclass(frozen=True)
class DetIdentityCheck:
    lhs: int
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def check_det_identity(blocks: JoinBlocks) -> DetIdentityCheck:
    """Compare det(assembled) with det A det B' + det A' det B - c det A' det B'.

    Here A' and B' are the corner blocks and A, B the bordered blocks that
    include the overlap scalar c.  Computed over GF(2) or over exact
    integers according to the blocks' domain.
    """
    full = assemble_join(blocks)
    if blocks.is_gf2:
        big_a = _gf2_bordered(blocks.a, blocks.u, blocks.v, blocks.c, corner_first=False)
        big_b = _gf2_bordered(blocks.b, blocks.y, blocks.x, blocks.c, corner_first=True)
        da, db = det_gf2(big_a), det_gf2(big_b)
        dap, dbp = det_gf2(blocks.a), det_gf2(blocks.b)
        rhs = (da * dbp + dap * db - blocks.c * dap * dbp) % 2
        return DetIdentityCheck(det_gf2(full), rhs)
    big_a = _int_bordered(blocks.a, blocks.u, blocks.v, blocks.c, corner_first=False)
    big_b = _int_bordered(blocks.b, blocks.y, blocks.x, blocks.c, corner_first=True)
    da, db = det_int(big_a), det_int(big_b)
    dap, dbp = det_int(blocks.a), det_int(blocks.b)
    rhs = da * dbp + dap * db - blocks.c * dap * dbp
    return DetIdentityCheck(det_int(full), rhs)

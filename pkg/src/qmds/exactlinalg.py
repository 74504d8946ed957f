"""
Exact dense linear algebra over F_{q^2}.

Matrices hold exponent-coded field elements (see ``qmds.gf``). Elimination
uses the first nonzero pivot in each column.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

from qmds.gf import ZERO, FieldContext


class DimensionError(ValueError):
    """Operand shapes do not fit the operation."""


@dataclass(frozen=True)
class NoSolution:
    """Result of solving an inconsistent system."""

    reason: str = "inconsistent system"


@dataclass(frozen=True)
class Underdetermined:
    """A consistent system with free variables; ``witness`` sets each free variable to 1."""

    witness: Tuple[int, ...]
    free_columns: Tuple[int, ...]


SolveOutcome = Union[List[int], NoSolution, Underdetermined]


@dataclass(frozen=True, eq=False)
class Matrix:
    """Row-major matrix over the field of ``ctx``."""

    ctx: FieldContext
    rows: int
    cols: int
    entries: Tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionError(f"negative shape {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix")
        for x in self.entries:
            if x != ZERO and not 0 <= x < self.ctx.mult_order:
                raise DimensionError(f"entry {x} is not a valid element of F_{self.ctx.order2}")

    @classmethod
    def from_rows(cls, ctx: FieldContext, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise DimensionError("column count is required for a matrix without rows")
            cols = len(rows[0])
        for r in rows:
            if len(r) != cols:
                raise DimensionError(f"ragged row of length {len(r)}, expected {cols}")
        return cls(ctx, len(rows), cols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def identity(cls, ctx: FieldContext, n: int) -> "Matrix":
        return cls.from_rows(ctx, [[ctx.one if i == j else ZERO for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, ctx: FieldContext, rows: int, cols: int) -> "Matrix":
        return cls(ctx, rows, cols, (ZERO,) * (rows * cols))

    def __getitem__(self, index: Tuple[int, int]) -> int:
        i, j = index
        return self.entries[i * self.cols + j]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def row(self, i: int) -> List[int]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def column(self, j: int) -> List[int]:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def to_rows(self) -> List[List[int]]:
        return [self.row(i) for i in range(self.rows)]

    def delete_column(self, k: int) -> "Matrix":
        return Matrix.from_rows(self.ctx, [r[:k] + r[k + 1:] for r in self.to_rows()], cols=self.cols - 1)

    def replace_column(self, k: int, values: Sequence[int]) -> "Matrix":
        if len(values) != self.rows:
            raise DimensionError(f"column of length {len(values)} for {self.rows} rows")
        rows = self.to_rows()
        for r, value in zip(rows, values):
            r[k] = value
        return Matrix.from_rows(self.ctx, rows, cols=self.cols)

    def select_columns(self, columns: Sequence[int]) -> "Matrix":
        return Matrix.from_rows(self.ctx, [[r[c] for c in columns] for r in self.to_rows()], cols=len(columns))

    def stack(self, other: "Matrix") -> "Matrix":
        if other.cols != self.cols:
            raise DimensionError(f"cannot stack {self.cols} and {other.cols} columns")
        return Matrix(self.ctx, self.rows + other.rows, self.cols, self.entries + other.entries)

    def frobenius(self) -> "Matrix":
        """Entrywise q-th power."""
        return Matrix(self.ctx, self.rows, self.cols, tuple(self.ctx.frobenius(x) for x in self.entries))

    def matvec(self, vector: Sequence[int]) -> List[int]:
        if len(vector) != self.cols:
            raise DimensionError(f"vector of length {len(vector)} for {self.cols} columns")
        ctx = self.ctx
        return [ctx.sum(ctx.mul(a, x) for a, x in zip(self.row(i), vector)) for i in range(self.rows)]


def _rref(ctx: FieldContext, rows: List[List[int]], ncols: int) -> Tuple[List[List[int]], List[int]]:
    """Reduced row echelon form, pivoting only within the first ``ncols`` columns."""
    a = [list(r) for r in rows]
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r == len(a):
            break
        pivot = next((i for i in range(r, len(a)) if a[i][c] != ZERO), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        scale = ctx.inv(a[r][c])
        a[r] = [ctx.mul(x, scale) for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != ZERO:
                factor = a[i][c]
                a[i] = [ctx.sub(x, ctx.mul(factor, y)) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def determinant(M: Matrix) -> int:
    """Exact determinant by Gaussian elimination."""
    if M.rows != M.cols:
        raise DimensionError(f"determinant of a non-square {M.rows}x{M.cols} matrix")
    ctx = M.ctx
    a = M.to_rows()
    n = M.rows
    det = ctx.one
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != ZERO), None)
        if pivot is None:
            return ZERO
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = ctx.neg(det)
        pivot_value = a[col][col]
        det = ctx.mul(det, pivot_value)
        scale = ctx.inv(pivot_value)
        for r in range(col + 1, n):
            if a[r][col] != ZERO:
                factor = ctx.mul(a[r][col], scale)
                a[r] = [ctx.sub(x, ctx.mul(factor, y)) for x, y in zip(a[r], a[col])]
    return det


def rank(M: Matrix) -> int:
    return len(_rref(M.ctx, M.to_rows(), M.cols)[1])


def solve(M: Matrix, b: Sequence[int]) -> SolveOutcome:
    """Solve M u = b exactly.

    Returns:
        The unique solution as a list, an Underdetermined witness with free
        variables set to 1, or NoSolution
    """
    if len(b) != M.rows:
        raise DimensionError(f"right-hand side of length {len(b)} for {M.rows} rows")
    ctx = M.ctx
    augmented = [r + [bi] for r, bi in zip(M.to_rows(), b)]
    reduced, pivots = _rref(ctx, augmented, M.cols)
    for r in reduced[len(pivots):]:
        if r[-1] != ZERO:
            return NoSolution()

    free = [c for c in range(M.cols) if c not in pivots]
    u = [ZERO] * M.cols
    for c in free:
        u[c] = ctx.one
    for i, c in enumerate(pivots):
        value = reduced[i][-1]
        for f in free:
            value = ctx.sub(value, reduced[i][f])
        u[c] = value
    if free:
        return Underdetermined(witness=tuple(u), free_columns=tuple(free))
    return u


def _normalized_solution(M: Matrix) -> Optional[List[int]]:
    """Solve [1 ... 1; M] x = (1, 0, ..., 0)."""
    ctx = M.ctx
    ones = Matrix.from_rows(ctx, [[ctx.one] * M.cols], cols=M.cols)
    outcome = solve(ones.stack(M), [ctx.one] + [ZERO] * M.rows)
    if isinstance(outcome, NoSolution):
        return None
    if isinstance(outcome, Underdetermined):
        return list(outcome.witness)
    return outcome


def kernel_vector_nonzero_coords(M: Matrix) -> Optional[List[int]]:
    """Kernel vector of M with every coordinate nonzero.

    Solves the two column-deleted subsystems (first and last column removed),
    each normalized so its coordinates sum to 1, and combines them as
    (0, x) - lambda (y, 0) with the first lambda = g^{(q+1)i} that leaves no
    coordinate zero. When M is row-equivalent to its entrywise q-th power the
    coordinates lie in F_q.

    Returns:
        The kernel vector, or None when no qualifying vector is found
    """
    ctx = M.ctx
    h = M.cols
    if h == 0 or rank(M) >= h:
        return None
    if h == 1:
        return [ctx.one]

    x = _normalized_solution(M.delete_column(0))
    y = _normalized_solution(M.delete_column(h - 1))
    if x is None or y is None:
        return None

    for lam in ctx.base_field_elements():
        u = [ctx.mul(ctx.neg(lam), y[0])]
        u += [ctx.sub(x[k - 1], ctx.mul(lam, y[k])) for k in range(1, h - 1)]
        u.append(x[h - 2])
        if all(c != ZERO for c in u) and all(c == ZERO for c in M.matvec(u)):
            return u
    return None

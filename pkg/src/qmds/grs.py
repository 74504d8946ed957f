"""
Generalized Reed-Solomon codes over F_{q^2} and their Hermitian self-orthogonality.

GRS_d(a, v) = {(v_1 f(a_1), ..., v_n f(a_n)) : deg f <= d - 1}. The code is
Hermitian self-orthogonal iff <a^{qi+j}, v^{q+1}> = 0 for all 0 <= i, j <= d - 1.
Power sums use the convention 0^0 = 1.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from qmds.config import resolve_budget
from qmds.exactlinalg import Matrix
from qmds.gf import ZERO, FieldContext, FieldError, field_from_dict

# upper bound on (rows x coordinates) materialized per vectorized step
_CHUNK_ELEMENTS = 2 ** 20


class CodeError(ValueError):
    """Invalid GRS code data or code parameters."""


class BudgetExceededError(RuntimeError):
    """A brute-force enumeration would exceed the configured budget."""


@dataclass(frozen=True, eq=False)
class GrsCode:
    """GRS_d(a, v): evaluation points ``a``, column multipliers ``v``, dimension ``d``."""

    ctx: FieldContext
    a: Tuple[int, ...]
    v: Tuple[int, ...]
    d: int

    def __post_init__(self):
        n = len(self.a)
        if len(self.v) != n:
            raise CodeError(f"a has {n} coordinates but v has {len(self.v)}")
        if not 1 <= self.d <= n:
            raise CodeError(f"dimension d={self.d} outside 1..n={n}")
        if n > self.ctx.order2:
            raise CodeError(f"length {n} exceeds the field size {self.ctx.order2}")
        for x in self.a + self.v:
            if x != ZERO and not 0 <= x < self.ctx.mult_order:
                raise CodeError(f"{x} is not an element of F_{self.ctx.order2}")
        if len(set(self.a)) != n:
            raise CodeError("evaluation points are not pairwise distinct")
        if ZERO in self.v:
            raise CodeError("column multipliers must be nonzero")

    @property
    def n(self) -> int:
        return len(self.a)

    @cached_property
    def a_array(self) -> np.ndarray:
        return np.asarray(self.a, dtype=np.int64)

    @cached_property
    def v_array(self) -> np.ndarray:
        return np.asarray(self.v, dtype=np.int64)

    @cached_property
    def norms(self) -> np.ndarray:
        """v^{q+1} coordinatewise."""
        return (self.v_array * (self.ctx.q + 1)) % self.ctx.mult_order

    def with_dimension(self, d: int) -> "GrsCode":
        return GrsCode(self.ctx, self.a, self.v, d)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GrsCode):
            return NotImplemented
        return (
            (self.ctx.p, self.ctx.e) == (other.ctx.p, other.ctx.e)
            and self.a == other.a
            and self.v == other.v
            and self.d == other.d
        )

    __hash__ = None


@dataclass(frozen=True)
class QuantumParams:
    """An [[n, k, dmin]]_q triple."""

    n: int
    k: int
    dmin: int
    q: int

    def __str__(self) -> str:
        return f"[[{self.n},{self.k},{self.dmin}]]_{self.q}"

    def to_dict(self) -> Dict[str, int]:
        return {"n": self.n, "k": self.k, "dmin": self.dmin, "q": self.q}


def quantum_params(n: int, d: int, q: int) -> QuantumParams:
    """Parameters [[n, n-2d, d+1]]_q from an [n, d, n-d+1]_{q^2} Hermitian self-orthogonal code."""
    if d < 1 or 2 * d > n:
        raise CodeError(f"quantum parameters need 1 <= d and 2d <= n, got n={n}, d={d}")
    qp = QuantumParams(n=n, k=n - 2 * d, dmin=d + 1, q=q)
    assert qp.k == qp.n - 2 * qp.dmin + 2
    return qp


# -- generator matrix and encoding ---------------------------------------------


def generator_exponents(code: GrsCode) -> np.ndarray:
    """G_d(a, v) as a (d, n) exponent-coded array; row i is (v_k a_k^i)_k."""
    ctx = code.ctx
    rows = np.arange(code.d, dtype=np.int64)[:, None]
    a = code.a_array[None, :]
    powers = np.where(a < 0, np.where(rows == 0, ctx.one, ZERO), (a * rows) % ctx.mult_order)
    return ctx.vec_mul(powers, code.v_array[None, :])


def generator_matrix(code: GrsCode) -> Matrix:
    return Matrix.from_rows(code.ctx, generator_exponents(code).tolist(), cols=code.n)


def encode(code: GrsCode, coeffs: Sequence[int]) -> List[int]:
    """Codeword (v_k f(a_k))_k for f = coeffs[0] + coeffs[1] x + ... (Horner)."""
    if len(coeffs) != code.d:
        raise CodeError(f"expected {code.d} coefficients, got {len(coeffs)}")
    ctx = code.ctx
    word = []
    for a_k, v_k in zip(code.a, code.v):
        acc = ZERO
        for c in reversed(coeffs):
            acc = ctx.add(ctx.mul(acc, a_k), c)
        word.append(ctx.mul(v_k, acc))
    return word


def hermitian_inner(ctx: FieldContext, x: Sequence[int], y: Sequence[int]) -> int:
    """<x, y>_H = sum x_i y_i^q."""
    if len(x) != len(y):
        raise CodeError(f"length mismatch: {len(x)} vs {len(y)}")
    return ctx.sum(ctx.mul(xi, ctx.frobenius(yi)) for xi, yi in zip(x, y))


# -- power sums ----------------------------------------------------------------


def _power_terms(ctx: FieldContext, a: np.ndarray, norms: np.ndarray, exponents: np.ndarray) -> np.ndarray:
    raw = np.asarray(exponents, dtype=np.int64)[:, None]
    a = a[None, :]
    powers = np.where(
        a < 0,
        np.where(raw == 0, ctx.one, ZERO),
        (a * (raw % ctx.mult_order)) % ctx.mult_order,
    )
    return ctx.vec_mul(powers, norms[None, :])


def power_sum_values(ctx: FieldContext, a: np.ndarray, norms: np.ndarray, exponents: Sequence[int]) -> np.ndarray:
    """sum_k a_k^E norms_k for each exponent E."""
    exponents = np.asarray(exponents, dtype=np.int64)
    out = np.empty(len(exponents), dtype=np.int64)
    chunk = max(1, _CHUNK_ELEMENTS // max(1, len(a)))
    for start in range(0, len(exponents), chunk):
        block = exponents[start:start + chunk]
        out[start:start + len(block)] = ctx.vec_sum(_power_terms(ctx, a, norms, block), axis=-1)
    return out


def power_sum_grid(
    ctx: FieldContext,
    a: np.ndarray,
    norms: np.ndarray,
    bound: int,
    threads: int = 1,
) -> np.ndarray:
    """Matrix of <a^{qi+j}, norms> for 0 <= i, j <= bound.

    Rows are independent, so they are spread over ``threads`` workers; the
    result does not depend on the worker count.
    """
    if bound < 0:
        return np.empty((0, 0), dtype=np.int64)
    js = np.arange(bound + 1, dtype=np.int64)

    def row(i: int) -> np.ndarray:
        return power_sum_values(ctx, a, norms, ctx.q * i + js)

    if threads > 1 and bound > 0:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(row, range(bound + 1)))
    else:
        rows = [row(i) for i in range(bound + 1)]
    return np.vstack(rows)


def first_nonzero(grid: np.ndarray) -> Optional[Tuple[int, int, int]]:
    """First (i, j, value) in row-major order with a nonzero value."""
    hits = np.argwhere(grid != ZERO)
    if len(hits) == 0:
        return None
    i, j = (int(x) for x in hits[0])
    return i, j, int(grid[i, j])


def power_sum(code: GrsCode, i: int, j: int) -> int:
    """<a^{qi+j}, v^{q+1}>."""
    if i < 0 or j < 0:
        raise CodeError(f"power sum indices must be non-negative, got ({i}, {j})")
    values = power_sum_values(code.ctx, code.a_array, code.norms, [code.ctx.q * i + j])
    return int(values[0])


def criterion_counterexample(code: GrsCode, threads: int = 1) -> Optional[Tuple[int, int, int]]:
    grid = power_sum_grid(code.ctx, code.a_array, code.norms, code.d - 1, threads=threads)
    return first_nonzero(grid)


def is_hermitian_self_orthogonal(code: GrsCode, threads: int = 1) -> bool:
    """Power-sum criterion over 0 <= i, j <= d - 1."""
    return criterion_counterexample(code, threads=threads) is None


def gram_matrix(code: GrsCode) -> np.ndarray:
    """(d, d) matrix of Hermitian inner products of generator-matrix rows."""
    ctx = code.ctx
    G = generator_exponents(code)
    conj = ctx.vec_frobenius(G)
    gram = np.empty((code.d, code.d), dtype=np.int64)
    chunk = max(1, _CHUNK_ELEMENTS // code.n)
    for i in range(code.d):
        for start in range(0, code.d, chunk):
            block = conj[start:start + chunk]
            gram[i, start:start + len(block)] = ctx.vec_sum(ctx.vec_mul(G[i][None, :], block), axis=-1)
    return gram


def gram_check(code: GrsCode) -> bool:
    """Row-pair inner products of G_d all vanish; independent of the power-sum route."""
    return bool(np.all(gram_matrix(code) == ZERO))


# -- minimum distance ----------------------------------------------------------


def brute_min_distance(code: GrsCode, budget: Optional[int] = None) -> int:
    """Exact minimum weight over all nonzero codewords.

    Raises:
        BudgetExceededError: if q^{2d} exceeds the enumeration budget
    """
    ctx = code.ctx
    budget = resolve_budget(budget)
    total = ctx.order2 ** code.d
    if total > budget:
        raise BudgetExceededError(f"{total} codewords exceed the enumeration budget {budget}")

    G = generator_exponents(code)
    place = ctx.order2 ** np.arange(code.d, dtype=np.int64)
    chunk = max(1, _CHUNK_ELEMENTS // (code.d * code.n))
    best = code.n
    for start in range(1, total, chunk):
        index = np.arange(start, min(total, start + chunk), dtype=np.int64)
        # message digit w encodes ZERO for w = 0 and g^{w-1} otherwise
        coeffs = (index[:, None] // place) % ctx.order2 - 1
        terms = ctx.vec_mul(coeffs[:, :, None], G[None, :, :])
        words = ctx.to_digits(terms).sum(axis=1) % ctx.p
        weights = np.count_nonzero(words.any(axis=2), axis=1)
        best = min(best, int(weights.min()))
    return best


# -- serialization -------------------------------------------------------------


def code_to_dict(code: GrsCode, provenance: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    data = code.ctx.to_dict()
    data["a"] = [code.ctx.serialize(x) for x in code.a]
    data["v"] = [code.ctx.serialize(x) for x in code.v]
    data["d"] = code.d
    if provenance is not None:
        data["provenance"] = provenance
    return data


def code_from_dict(data: Dict[str, Any]) -> Tuple[GrsCode, Optional[Dict[str, Any]]]:
    try:
        ctx = field_from_dict(data)
        a = tuple(ctx.parse(x) for x in data["a"])
        v = tuple(ctx.parse(x) for x in data["v"])
        d = data["d"]
    except (KeyError, TypeError, FieldError) as exc:
        raise CodeError(f"malformed code data: {exc}") from exc
    if isinstance(d, bool) or not isinstance(d, int):
        raise CodeError(f"malformed dimension {d!r}")
    return GrsCode(ctx, a, v, d), data.get("provenance")


def save_code(code: GrsCode, file_path: str, provenance: Optional[Dict[str, Any]] = None) -> None:
    """Write the code (and optional provenance) as JSON."""
    path = Path(file_path)
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(code_to_dict(code, provenance), indent=2) + "\n")


def load_code(file_path: str) -> Tuple[GrsCode, Optional[Dict[str, Any]]]:
    try:
        data = json.loads(Path(file_path).read_text())
    except json.JSONDecodeError as exc:
        raise CodeError(f"{file_path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise CodeError(f"{file_path} does not hold a code object")
    return code_from_dict(data)

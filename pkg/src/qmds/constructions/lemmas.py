"""
The small linear systems whose solutions fix the norms on the first component.

Each system has h unknowns u_0..u_{h-1} and one row per mu in a range around
s/2. With h-1 rows the system is completed by sum(u) = 1 and solved directly
when that is consistent; otherwise, and with h-2 rows, a kernel vector with
nonzero coordinates is taken instead. Every
solution is checked by substitution before it is returned.
"""

from typing import Callable, List, Optional

from qmds.constructions.params import ParameterError
from qmds.exactlinalg import Matrix, NoSolution, Underdetermined, kernel_vector_nonzero_coords, solve
from qmds.gf import ZERO, FieldContext


class LemmaSolveError(RuntimeError):
    """A solver result failed the nonzero, F_q or substitution checks."""


def _mu_range(s: int, h: int) -> range:
    """mu from ceil((s-h)/2)+1 to floor((s+h)/2)-1."""
    return range(-((h - s) // 2) + 1, (s + h) // 2)


def _system(ctx: FieldContext, mus: range, h: int, exponent: Callable[[int, int], int]) -> Matrix:
    rows = [[exponent(k, mu) % ctx.mult_order for k in range(h)] for mu in mus]
    return Matrix.from_rows(ctx, rows, cols=h)


def lemma6_system(ctx: FieldContext, s: int, h: int) -> Matrix:
    """Rows (g^{k mu l})_k for mu = (s-h)/2+1 .. (s+h)/2-1."""
    l = ctx.mult_order // s
    return _system(ctx, range((s - h) // 2 + 1, (s + h) // 2), h, lambda k, mu: k * mu * l)


def lemma9_system(ctx: FieldContext, s: int, h: int) -> Matrix:
    l = ctx.mult_order // s
    return _system(ctx, _mu_range(s, h), h, lambda k, mu: k * (mu * l - ctx.q - 1))


def lemma12_system(ctx: FieldContext, s: int, h: int) -> Matrix:
    l = ctx.mult_order // s
    return _system(ctx, _mu_range(s, h), h, lambda k, mu: (2 * k + 1) * (mu * l - ctx.q - 1))


def _check(ctx: FieldContext, A: Matrix, u: List[int], normalized: bool, name: str) -> List[int]:
    if any(x == ZERO for x in u):
        raise LemmaSolveError(f"{name}: solution has a zero coordinate")
    if not all(ctx.in_base_field(x) for x in u):
        raise LemmaSolveError(f"{name}: solution leaves F_{ctx.q}")
    if any(x != ZERO for x in A.matvec(u)):
        raise LemmaSolveError(f"{name}: solution does not satisfy the system")
    if normalized and ctx.sum(u) != ctx.one:
        raise LemmaSolveError(f"{name}: solution coordinates do not sum to 1")
    return u


def _homogeneous_solution(A: Matrix) -> Optional[List[int]]:
    outcome = solve(A, [ZERO] * A.rows)
    if not isinstance(outcome, Underdetermined):
        return None
    u = list(outcome.witness)
    if all(x != ZERO for x in u):
        return u
    return kernel_vector_nonzero_coords(A)


def solve_system(ctx: FieldContext, A: Matrix, name: str) -> List[int]:
    """Solve a lemma system, dispatching on its row count.

    With h-1 rows the normalization sum(u) = 1 is tried first. When the
    all-ones row already lies in the row space (mu l = q + 1 makes it a row
    of the system) the normalized system is inconsistent and a kernel vector
    of the homogeneous system is taken instead.
    """
    h = A.cols
    if A.rows == h - 1:
        ones = Matrix.from_rows(ctx, [[ctx.one] * h], cols=h)
        outcome = solve(ones.stack(A), [ctx.one] + [ZERO] * A.rows)
        if not isinstance(outcome, (NoSolution, Underdetermined)):
            return _check(ctx, A, outcome, True, name)
        u = _homogeneous_solution(A)
        if u is None:
            raise LemmaSolveError(f"{name}: no solution with nonzero coordinates")
        return _check(ctx, A, u, False, name)
    if A.rows == h - 2:
        u = kernel_vector_nonzero_coords(A)
        if u is None:
            raise LemmaSolveError(f"{name}: no kernel vector with nonzero coordinates")
        return _check(ctx, A, u, False, name)
    raise LemmaSolveError(f"{name}: unexpected system shape {A.rows}x{h}")


def _require(violations: List[str]):
    if violations:
        raise ParameterError(violations)


def _base_checks(q: int, s: int, h: int, odd_s: bool, h_ok: bool, h_rule: str) -> List[str]:
    violations = []
    if s < 1 or (q + 1) % s or (s % 2 == 1) != odd_s:
        parity = "odd" if odd_s else "even"
        violations.append(f"lemma system needs {parity} s | q+1, got s={s}")
    if not h_ok:
        violations.append(f"lemma system needs {h_rule}, got h={h}")
    return violations


def lemma6_solve(ctx: FieldContext, s: int, h: int) -> List[int]:
    """u in (F_q^*)^h with sum(u) = 1 and sum_k g^{k mu l} u_k = 0."""
    _require(_base_checks(ctx.q, s, h, True, 1 <= h < s and h % 2 == 1, "odd h <= s-1"))
    return solve_system(ctx, lemma6_system(ctx, s, h), "lemma6")


def lemma9_solve(ctx: FieldContext, s: int, h: int) -> List[int]:
    """u in (F_q^*)^h with sum_k g^{k(mu l - q - 1)} u_k = 0."""
    _require(_base_checks(ctx.q, s, h, True, 1 <= h < s, "1 <= h <= s-1"))
    return solve_system(ctx, lemma9_system(ctx, s, h), "lemma9")


def lemma12_solve(ctx: FieldContext, s: int, h: int) -> List[int]:
    """u in (F_q^*)^h with sum_k g^{(2k+1)(mu l - q - 1)} u_k = 0."""
    _require(_base_checks(ctx.q, s, h, False, 1 <= 2 * h <= s, "1 <= h <= s/2"))
    return solve_system(ctx, lemma12_system(ctx, s, h), "lemma12")

"""
Coset bookkeeping on F_{q^2}^* by discrete logarithm.

A = {x : dlog(x) mod s < h} is a union of cosets of <delta>, B = {x : dlog(x) mod t < r}
a union of cosets of <theta>. For the disjoint variant the first component uses
odd residues mod s and the second even residues mod t.
"""

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from qmds.constructions.params import ConstructionParams
from qmds.gf import ZERO, FieldContext


class ConstructionError(RuntimeError):
    """An internal consistency check of a construction failed."""


@dataclass(frozen=True)
class CosetSets:
    """Exponent sets A minus B, B minus A and A intersect B, each sorted by dlog."""

    a_only: Tuple[int, ...]
    b_only: Tuple[int, ...]
    both: Tuple[int, ...]

    @property
    def a(self) -> Tuple[int, ...]:
        return tuple(sorted(self.a_only + self.both))

    @property
    def b(self) -> Tuple[int, ...]:
        return tuple(sorted(self.b_only + self.both))


def coset_masks(params: ConstructionParams) -> Tuple[np.ndarray, np.ndarray]:
    """Membership masks of A and B indexed by dlog."""
    dl = np.arange(params.ctx.mult_order, dtype=np.int64)
    if params.theorem == "t6":
        res_s, res_t = dl % params.s, dl % params.t
        in_a = (res_s % 2 == 1) & (res_s // 2 < params.h)
        in_b = (res_t % 2 == 0) & (res_t // 2 < params.r)
    else:
        in_a = dl % params.s < params.h
        in_b = dl % params.t < params.r
    return in_a, in_b


def coset_sets(params: ConstructionParams) -> CosetSets:
    """Split F_{q^2}^* into A minus B, B minus A and A intersect B.

    Raises:
        ConstructionError: if the intersection size differs from (q^2-1)/(st)*hr
    """
    in_a, in_b = coset_masks(params)

    def exps(mask: np.ndarray) -> Tuple[int, ...]:
        return tuple(int(x) for x in np.flatnonzero(mask))

    sets = CosetSets(a_only=exps(in_a & ~in_b), b_only=exps(in_b & ~in_a), both=exps(in_a & in_b))
    if len(sets.both) != params.overlap:
        raise ConstructionError(
            f"{params.label()}: |A & B| = {len(sets.both)}, expected {params.overlap}"
        )
    return sets


def count_coset_collisions(ctx: FieldContext, s: int, t: int, alpha: int, beta: int) -> int:
    """Number of (i, j), 0 <= i < (q^2-1)/s, 0 <= j < (q^2-1)/t, with alpha + si = beta + tj mod q^2-1."""
    order = ctx.mult_order
    i = np.arange(order // s, dtype=np.int64)
    gap = (alpha + s * i - beta) % order
    return int(np.count_nonzero(gap % t == 0))


def choose_lambda(ctx: FieldContext, f1_vals: Sequence[int], f2_vals: Sequence[int]) -> Optional[int]:
    """First lambda = g^{(q+1)i} with every f1_k + lambda f2_k nonzero; 1 for an empty overlap."""
    if len(f1_vals) != len(f2_vals):
        raise ConstructionError(f"{len(f1_vals)} f1 values against {len(f2_vals)} f2 values")
    if not f1_vals:
        return ctx.one
    f1 = ctx.as_array(f1_vals)
    f2 = ctx.as_array(f2_vals)
    for lam in ctx.base_field_elements():
        merged = ctx.vec_sum(np.stack([f1, ctx.vec_mul(f2, lam)]), axis=0)
        if not np.any(merged == ZERO):
            return lam
    return None

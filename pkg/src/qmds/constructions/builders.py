"""
Builders for the three coset constructions.

Each builder lays out the evaluation points by coset, assigns every coordinate a
target norm in F_q, and lifts the norms to column multipliers with solve_norm.
Norm arithmetic is exponent arithmetic on whole numpy arrays.
"""

from typing import Callable, List, Optional

import numpy as np

from qmds.constructions.base_builder import BaseBuilder, Construction, WitnessVectors
from qmds.constructions.cosets import ConstructionError, choose_lambda, coset_masks, coset_sets
from qmds.constructions.lemmas import lemma6_solve, lemma9_solve, lemma12_solve
from qmds.constructions.params import ConstructionParams
from qmds.gf import ZERO, FieldContext
from qmds.grs import GrsCode

__all__ = [
    "ConstructionError",
    "T4Builder",
    "T5Builder",
    "T6Builder",
    "build_t4",
    "build_t5",
    "build_t6",
    "first_component_norms",
    "second_component_norms",
]


def first_component_norms(params: ConstructionParams, exps: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Norms on the first component: u_alpha, times delta^{i(q+1)} outside T4."""
    ctx, s = params.ctx, params.s
    alpha, i = exps % s, exps // s
    if params.theorem == "t6":
        alpha = alpha // 2
    base = u[alpha]
    if params.theorem == "t4":
        return base
    return (base + s * i * (params.q + 1)) % ctx.mult_order


def second_component_norms(params: ConstructionParams, exps: np.ndarray) -> np.ndarray:
    """theta^{j(q+1)/2} at g^beta theta^j."""
    j = exps // params.t
    return (params.t * j * ((params.q + 1) // 2)) % params.ctx.mult_order


def _lift(ctx: FieldContext, norms: np.ndarray, label: str) -> np.ndarray:
    if np.any(norms == ZERO):
        raise ConstructionError(f"{label}: zero target norm")
    if np.any(norms % (ctx.q + 1)):
        raise ConstructionError(f"{label}: target norm outside F_{ctx.q}")
    return norms // (ctx.q + 1)


def _assemble(params: ConstructionParams, d: int, a: np.ndarray, norms: np.ndarray) -> GrsCode:
    label = params.label()
    if len(a) != params.n:
        raise ConstructionError(f"{label}: built {len(a)} coordinates, expected n = {params.n}")
    if len(np.unique(a)) != len(a):
        raise ConstructionError(f"{label}: evaluation points are not distinct")
    v = _lift(params.ctx, norms, label)
    return GrsCode(params.ctx, tuple(int(x) for x in a), tuple(int(x) for x in v), d)


def _as_tuple(values) -> tuple:
    return tuple(int(x) for x in values)


def _provenance(params: ConstructionParams, d: int, lemma: str, witness: WitnessVectors) -> dict:
    ctx = params.ctx
    data = params.to_dict(d)
    data.update({
        "d_max": params.d_max,
        "lemma": lemma,
        "u": [ctx.serialize(x) for x in witness.u],
        "lambda": ctx.serialize(witness.lam),
        "e": None if witness.e is None else ctx.serialize(witness.e),
    })
    return data


class _CosetUnionBuilder(BaseBuilder):
    """A and B overlap; norms on the overlap are merged as f1 + lambda f2."""

    theorem = ""
    lemma = ""
    with_zero = False

    def __init__(self, name: str, solve_lemma: Callable[[FieldContext, int, int], List[int]], debug: bool = False):
        super().__init__(name, debug)
        self.solve_lemma = solve_lemma

    def should_handle(self, params: ConstructionParams) -> bool:
        return params.theorem == self.theorem

    def build(self, params: ConstructionParams, d: Optional[int] = None) -> Construction:
        d = params.check_dimension(d)
        ctx = params.ctx
        self._debug_print(f"{params.label()}: n={params.n}, d={d}, d_max={params.d_max}")

        u = np.asarray(self.solve_lemma(ctx, params.s, params.h), dtype=np.int64)
        self._debug_print(f"{self.lemma} solution u = {u.tolist()}")

        sets = coset_sets(params)
        a_only, b_only, both = (np.asarray(x, dtype=np.int64) for x in (sets.a_only, sets.b_only, sets.both))

        f1_both = first_component_norms(params, both, u)
        f2_both = second_component_norms(params, both)
        lam = choose_lambda(ctx, f1_both.tolist(), f2_both.tolist())
        if lam is None:
            raise ConstructionError(f"{params.label()}: no lambda in F_{ctx.q}^* keeps the overlap nonzero")
        self._debug_print(f"lambda = g^{lam} over |A & B| = {len(both)}")

        merged = ctx.vec_sum(np.stack([f1_both, ctx.vec_mul(f2_both, lam)]), axis=0)
        a_parts = [a_only, b_only, both]
        norm_parts = [
            first_component_norms(params, a_only, u),
            ctx.vec_mul(second_component_norms(params, b_only), lam),
            merged,
        ]

        e = None
        zero_norm = ZERO
        if self.with_zero:
            zero_norm = ctx.from_int(-params.l)
            e = ctx.solve_norm(zero_norm)
            a_parts.insert(0, np.asarray([ZERO], dtype=np.int64))
            norm_parts.insert(0, np.asarray([zero_norm], dtype=np.int64))

        code = _assemble(params, d, np.concatenate(a_parts), np.concatenate(norm_parts))

        a1 = np.asarray(sets.a, dtype=np.int64)
        a2 = np.asarray(sets.b, dtype=np.int64)
        norms1 = first_component_norms(params, a1, u)
        if self.with_zero:
            a1 = np.concatenate([[ZERO], a1])
            norms1 = np.concatenate([[zero_norm], norms1])
        witness = WitnessVectors(
            a1=_as_tuple(a1),
            v1=_as_tuple(_lift(ctx, norms1, params.label())),
            a2=_as_tuple(a2),
            v2=_as_tuple(_lift(ctx, second_component_norms(params, a2), params.label())),
            lam=lam,
            u=_as_tuple(u),
            e=e,
        )
        return Construction(params, d, code, witness, _provenance(params, d, self.lemma, witness))


class T4Builder(_CosetUnionBuilder):
    theorem = "t4"
    lemma = "lemma6"
    with_zero = True

    def __init__(self, debug: bool = False):
        super().__init__("t4_builder", lemma6_solve, debug)


class T5Builder(_CosetUnionBuilder):
    theorem = "t5"
    lemma = "lemma9"

    def __init__(self, debug: bool = False):
        super().__init__("t5_builder", lemma9_solve, debug)


class T6Builder(BaseBuilder):
    """Odd-residue cosets of <delta> and even-residue cosets of <theta>; the two never meet."""

    def __init__(self, debug: bool = False):
        super().__init__("t6_builder", debug)

    def should_handle(self, params: ConstructionParams) -> bool:
        return params.theorem == "t6"

    def build(self, params: ConstructionParams, d: Optional[int] = None) -> Construction:
        d = params.check_dimension(d)
        ctx = params.ctx
        self._debug_print(f"{params.label()}: n={params.n}, d={d}, d_max={params.d_max}")

        u = np.asarray(lemma12_solve(ctx, params.s, params.h), dtype=np.int64)
        self._debug_print(f"lemma12 solution u = {u.tolist()}")

        in_a, in_b = coset_masks(params)
        if np.any(in_a & in_b):
            raise ConstructionError(f"{params.label()}: square and nonsquare components overlap")
        a1, a2 = np.flatnonzero(in_a), np.flatnonzero(in_b)
        norms1 = first_component_norms(params, a1, u)
        norms2 = second_component_norms(params, a2)

        code = _assemble(params, d, np.concatenate([a1, a2]), np.concatenate([norms1, norms2]))
        witness = WitnessVectors(
            a1=_as_tuple(a1),
            v1=_as_tuple(_lift(ctx, norms1, params.label())),
            a2=_as_tuple(a2),
            v2=_as_tuple(_lift(ctx, norms2, params.label())),
            lam=ctx.one,
            u=_as_tuple(u),
        )
        return Construction(params, d, code, witness, _provenance(params, d, "lemma12", witness))


def _build_with(builder: BaseBuilder, params: ConstructionParams, d: Optional[int]) -> GrsCode:
    if not builder.should_handle(params):
        raise ConstructionError(f"{builder.name} cannot build {params.label()}")
    return builder.build(params, d).code


def build_t4(params: ConstructionParams, d: Optional[int] = None) -> GrsCode:
    return _build_with(T4Builder(), params, d)


def build_t5(params: ConstructionParams, d: Optional[int] = None) -> GrsCode:
    return _build_with(T5Builder(), params, d)


def build_t6(params: ConstructionParams, d: Optional[int] = None) -> GrsCode:
    return _build_with(T6Builder(), params, d)

"""
Independent verification of constructed codes and of the counting and
vanishing identities behind the constructions.

Every check produces a CheckResult; a failed check always carries a concrete
counterexample. Reports serialize to JSON first and render to text second.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from qmds.constructions.cosets import count_coset_collisions, coset_masks
from qmds.constructions.params import ConstructionParams, ParameterError, lemma_bounds
from qmds.gf import ZERO, FieldContext
from qmds.grs import (
    CodeError,
    GrsCode,
    QuantumParams,
    brute_min_distance,
    first_nonzero,
    gram_matrix,
    power_sum_grid,
    power_sum_values,
)

LEVELS = ("criterion", "gram", "lemma_ranges", "brute_distance")


@dataclass
class CheckResult:
    name: str
    range: str
    passed: bool
    counterexample: Optional[List[Any]] = None
    detail: Dict[str, Any] = field(default_factory=dict)
    seconds: float = 0.0

    def to_dict(self, include_timings: bool = False) -> Dict[str, Any]:
        data: Dict[str, Any] = {"name": self.name, "range": self.range, "pass": self.passed}
        if self.counterexample is not None:
            data["counterexample"] = self.counterexample
        data.update(self.detail)
        if include_timings:
            data["seconds"] = round(self.seconds, 6)
        return data


@dataclass
class VerificationReport:
    """Pass/fail evidence for one subject, with counterexamples for failures."""

    subject: str
    checks: List[CheckResult] = field(default_factory=list)
    meta: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def check(self, name: str) -> Optional[CheckResult]:
        return next((c for c in self.checks if c.name == name), None)

    def add(self, check: CheckResult) -> CheckResult:
        if not check.passed and check.counterexample is None:
            raise ValueError(f"failed check {check.name!r} has no counterexample")
        self.checks.append(check)
        return check

    def to_dict(self, include_timings: bool = False) -> Dict[str, Any]:
        return {
            "subject": self.subject,
            "checks": [c.to_dict(include_timings) for c in self.checks],
            "meta": self.meta,
        }

    def to_json(self, include_timings: bool = False) -> str:
        return json.dumps(self.to_dict(include_timings), indent=2) + "\n"

    def render(self) -> str:
        lines = [f"📋 {self.subject}"]
        for c in self.checks:
            mark = "✅" if c.passed else "❌"
            line = f"   {mark} {c.name} [{c.range}]"
            if c.detail:
                line += " " + ", ".join(f"{k}={v}" for k, v in c.detail.items())
            if c.counterexample is not None:
                line += f" counterexample={c.counterexample}"
            lines.append(line)
        lines.append("✅ all checks passed" if self.passed else "❌ verification failed")
        return "\n".join(lines)


def _timed(run: Callable[[], CheckResult]) -> CheckResult:
    start = time.perf_counter()
    result = run()
    result.seconds = time.perf_counter() - start
    return result


def _grid_check(ctx: FieldContext, name: str, a: np.ndarray, norms: np.ndarray, bound: int, threads: int) -> CheckResult:
    grid = power_sum_grid(ctx, a, norms, bound, threads=threads)
    hit = first_nonzero(grid)
    counterexample = None if hit is None else [hit[0], hit[1], ctx.serialize(hit[2])]
    return CheckResult(name, f"0 <= i, j <= {bound}", hit is None, counterexample)


def component_vectors(code: GrsCode, provenance: Dict[str, Any]) -> Tuple[Tuple[np.ndarray, np.ndarray], Tuple[np.ndarray, np.ndarray]]:
    """Recover (a1, v1^{q+1}) and (a2, v2^{q+1}) from a built code and its provenance.

    Coordinates are assigned to components by their dlog residues; on the
    overlap the merged norm f1 + lambda f2 is split using the closed form of f2.
    """
    ctx = code.ctx
    try:
        theorem = provenance["theorem"]
        s, t, h, r = (int(provenance[k]) for k in ("s", "t", "h", "r"))
        lam = ctx.one if theorem == "t6" else ctx.parse(provenance["lambda"])
    except (KeyError, TypeError, ValueError) as exc:
        raise CodeError(f"provenance does not identify a construction: {exc}") from exc

    a, norms = code.a_array, code.norms
    nonzero = a >= 0
    dl = np.where(nonzero, a, 0)
    if theorem == "t6":
        res_s, res_t = dl % s, dl % t
        in_a = nonzero & (res_s % 2 == 1) & (res_s // 2 < h)
        in_b = nonzero & (res_t % 2 == 0) & (res_t // 2 < r)
        return (a[in_a], norms[in_a]), (a[in_b], norms[in_b])

    if lam == ZERO:
        raise CodeError("provenance lambda must be nonzero")
    in_a = nonzero & (dl % s < h)
    in_b = nonzero & (dl % t < r)
    both = in_a & in_b
    f2 = (t * (dl // t) * ((ctx.q + 1) // 2)) % ctx.mult_order

    lam_f2 = ctx.vec_mul(f2, lam)
    first = np.where(both, ctx.vec_sum(np.stack([norms, ctx.vec_mul(lam_f2, ctx.neg(ctx.one))]), axis=0), norms)
    second = np.where(both, f2, ctx.vec_mul(norms, ctx.inv(lam)))

    first_mask = in_a | ~nonzero
    return (a[first_mask], first[first_mask]), (a[in_b], second[in_b])


def verify_code(
    code: GrsCode,
    levels: Sequence[str] = ("criterion",),
    provenance: Optional[Dict[str, Any]] = None,
    budget: Optional[int] = None,
    threads: int = 1,
) -> VerificationReport:
    """Run the selected checks on ``code``.

    Args:
        code: The code to verify
        levels: Any of criterion, gram, lemma_ranges, brute_distance
        provenance: Construction data, required for lemma_ranges
        budget: Codeword budget for brute_distance
        threads: Worker count for power-sum grids

    Returns:
        VerificationReport with one entry per check
    """
    unknown = [lv for lv in levels if lv not in LEVELS]
    if unknown:
        raise ValueError(f"unknown verification level(s): {', '.join(unknown)}")
    ctx = code.ctx
    subject = f"GRS code n={code.n} d={code.d} over F_{ctx.order2}"
    meta: Dict[str, Any] = {"q": ctx.q, "n": code.n, "d": code.d}
    if provenance:
        meta["theorem"] = provenance.get("theorem")
        meta["params"] = {k: provenance[k] for k in ("s", "t", "h", "r") if k in provenance}
    report = VerificationReport(subject, meta=meta)

    if "criterion" in levels:
        report.add(_timed(lambda: _grid_check(ctx, "criterion", code.a_array, code.norms, code.d - 1, threads)))

    if "gram" in levels:
        def gram() -> CheckResult:
            hit = first_nonzero(gram_matrix(code))
            counterexample = None if hit is None else [hit[0], hit[1], ctx.serialize(hit[2])]
            return CheckResult("gram", f"rows 0..{code.d - 1}", hit is None, counterexample)

        report.add(_timed(gram))

    if "lemma_ranges" in levels:
        if not provenance or "theorem" not in provenance:
            raise CodeError("lemma_ranges needs the construction provenance of the code")
        (a1, n1), (a2, n2) = component_vectors(code, provenance)
        first, second = lemma_bounds(ctx.q, provenance["theorem"], int(provenance["s"]),
                                     int(provenance["t"]), int(provenance["h"]))
        report.add(_timed(lambda: _grid_check(ctx, "lemma_range_component1", a1, n1, first, threads)))
        report.add(_timed(lambda: _grid_check(ctx, "lemma_range_component2", a2, n2, second, threads)))

    if "brute_distance" in levels:
        def distance() -> CheckResult:
            found = brute_min_distance(code, budget=budget)
            expected = code.n - code.d + 1
            passed = found == expected
            return CheckResult(
                "brute_distance",
                f"all {ctx.order2}^{code.d} codewords",
                passed,
                None if passed else [found, expected],
                {"min_distance": found},
            )

        report.add(_timed(distance))
    return report


def verify_lemma3(params: ConstructionParams) -> VerificationReport:
    """Collision counts of alpha + si = beta + tj and the size of A & B."""
    if params.theorem == "t6":
        raise ParameterError(["coset counting applies to overlapping constructions only"])
    ctx, s, t = params.ctx, params.s, params.t
    expected = ctx.mult_order // (s * t)
    report = VerificationReport(f"coset counting {params.label()}", meta={"q": ctx.q, "theorem": params.theorem,
                                                                         "params": params.to_dict()})

    def collisions() -> CheckResult:
        for alpha in range(s):
            for beta in range(t):
                count = count_coset_collisions(ctx, s, t, alpha, beta)
                if count != expected:
                    return CheckResult("collision_count", f"0 <= alpha < {s}, 0 <= beta < {t}", False,
                                       [alpha, beta, count], {"expected": expected})
        return CheckResult("collision_count", f"0 <= alpha < {s}, 0 <= beta < {t}", True, None,
                           {"expected": expected})

    def intersection() -> CheckResult:
        in_a, in_b = coset_masks(params)
        count = int(np.count_nonzero(in_a & in_b))
        passed = count == params.overlap
        return CheckResult("intersection_count", "F_{q^2}^*", passed, None if passed else [count, params.overlap],
                           {"count": count})

    report.add(_timed(collisions))
    report.add(_timed(intersection))
    return report


def divisibility_sets(ctx: FieldContext, s: int, h: int) -> Dict[str, Tuple[set, set]]:
    """Exhaustive and closed-form index sets for l | qi+j+q+1 and l | qi+j."""
    q = ctx.q
    l = ctx.mult_order // s
    c = (q + 1) // s
    mus = range(-((h - s) // 2) + 1, (s + h) // 2)

    shifted_bound = (s + h) // 2 * c - 3
    plain_bound = (s + h) // 2 * c - 2

    def exhaustive(bound: int, offset: int, skip_origin: bool) -> set:
        if bound < 0:
            return set()
        i, j = np.meshgrid(np.arange(bound + 1), np.arange(bound + 1), indexing="ij")
        hits = np.argwhere((q * i + j + offset) % l == 0)
        return {(int(a), int(b)) for a, b in hits if not (skip_origin and a == 0 and b == 0)}

    return {
        "shifted": (exhaustive(shifted_bound, q + 1, False), {(mu * c - 2, q - mu * c - 1) for mu in mus}),
        "plain": (exhaustive(plain_bound, 0, True), {(mu * c - 1, q - mu * c) for mu in mus}),
    }


def verify_lemma4(ctx: FieldContext, s: int, h: int) -> VerificationReport:
    """Both divisibility characterisations, exhaustively against their closed forms."""
    q = ctx.q
    if s < 1 or (q + 1) % s or not 1 <= h <= s - 1:
        raise ParameterError([f"divisibility check needs s | q+1 and 1 <= h <= s-1, got s={s}, h={h}"])
    c = (q + 1) // s
    report = VerificationReport(f"divisibility q={q} s={s} h={h}", meta={"q": q, "params": {"s": s, "h": h}})
    sets = divisibility_sets(ctx, s, h)
    bounds = {"shifted": (s + h) // 2 * c - 3, "plain": (s + h) // 2 * c - 2}
    for key, (found, closed) in sets.items():
        extra = sorted(found ^ closed)
        report.add(CheckResult(
            f"divisibility_{key}",
            f"0 <= i, j <= {bounds[key]}",
            not extra,
            [list(pair) for pair in extra] or None,
            {"solutions": len(found)},
        ))
    return report


def verify_lemma5(ctx: FieldContext, t: int) -> VerificationReport:
    """sum_{nu < m} theta^{nu(qi+j+(q+1)/2)} = 0 on the stated grid, plus a witness just outside it."""
    q = ctx.q
    if t < 2 or t % 2 or (q - 1) % t:
        raise ParameterError([f"hypothesis 'even t | q-1' fails: t={t}, q-1={q - 1}"])
    m = ctx.mult_order // t
    bound = (q + 1) // 2 + (q - 1) // t - 2
    points = (t * np.arange(m, dtype=np.int64)) % ctx.mult_order
    ones = np.zeros(m, dtype=np.int64)
    half = (q + 1) // 2
    report = VerificationReport(f"theta power sums q={q} t={t}", meta={"q": q, "params": {"t": t}})

    def vanishing() -> CheckResult:
        js = np.arange(bound + 1, dtype=np.int64)
        for i in range(bound + 1):
            row = power_sum_values(ctx, points, ones, q * i + js + half)
            nz = np.flatnonzero(row != ZERO)
            if len(nz):
                j = int(nz[0])
                return CheckResult("vanishing", f"0 <= i, j <= {bound}", False, [i, j, ctx.serialize(int(row[j]))])
        return CheckResult("vanishing", f"0 <= i, j <= {bound}", True)

    def sharpness() -> CheckResult:
        edge = bound + 1
        pairs = [(edge, j) for j in range(edge + 1)] + [(i, edge) for i in range(edge)]
        sums = power_sum_values(ctx, points, ones, [q * i + j + half for i, j in pairs])
        nz = np.flatnonzero(sums != ZERO)
        if len(nz) == 0:
            return CheckResult("sharpness", f"max(i, j) = {edge}", False, [edge, edge, "0"])
        i, j = pairs[int(nz[0])]
        return CheckResult("sharpness", f"max(i, j) = {edge}", True, None,
                           {"witness": [i, j, ctx.serialize(int(sums[nz[0]]))]})

    report.add(_timed(vanishing))
    report.add(_timed(sharpness))
    return report


def verify_quantum_params(qp: QuantumParams) -> bool:
    """Quantum Singleton equality k = n - 2 dmin + 2 with k >= 0 and dmin >= 1."""
    return qp.k == qp.n - 2 * qp.dmin + 2 and qp.k >= 0 and qp.dmin >= 1

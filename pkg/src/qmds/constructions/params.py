"""
Parameter tuples (q, theorem, s, t, h, r) of the three coset constructions.

Every hypothesis of a construction is checked up front; a violated hypothesis
is reported by name rather than clamped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from qmds.gf import FieldContext, make_field

THEOREMS = ("t4", "t5", "t6")


class ParameterError(ValueError):
    """One or more construction hypotheses do not hold."""

    def __init__(self, violations: List[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


def _fail(hypothesis: str, detail: str) -> str:
    return f"hypothesis '{hypothesis}' fails: {detail}"


def theorem_length(q: int, theorem: str, s: int, t: int, h: int, r: int) -> int:
    """Code length n from the construction's own formula."""
    order = q * q - 1
    l, m = order // s, order // t
    if theorem == "t6":
        return l * h + m * r
    overlap = order // (s * t) * h * r
    n = l * h + m * r - overlap
    return n + 1 if theorem == "t4" else n


def theorem_d_max(q: int, theorem: str, s: int, t: int, h: int, r: int) -> int:
    """Largest admissible dimension d."""
    second = (q + 1) // 2 + (q - 1) // t - 1
    if theorem == "t4":
        first = (s + h) // 2 * ((q + 1) // s) - 1
    else:
        first = (s + h) // 2 * ((q + 1) // s) - 2
    return min(first, second)


def lemma_bounds(q: int, theorem: str, s: int, t: int, h: int) -> Tuple[int, int]:
    """Upper index bounds of the vanishing identities for the two components."""
    if theorem == "t4":
        first = (s + h) // 2 * ((q + 1) // s) - 2
    else:
        first = (s + h) // 2 * ((q + 1) // s) - 3
    second = (q + 1) // 2 + (q - 1) // t - 2
    return first, second


def check_hypotheses(q: int, theorem: str, s: int, t: int, h: int, r: int) -> List[str]:
    """All violated hypotheses for the tuple, empty when it is valid."""
    if theorem not in THEOREMS:
        return [f"theorem must be one of {', '.join(THEOREMS)}, got {theorem!r}"]

    violations = []
    if s < 1 or (q + 1) % s:
        violations.append(_fail("s | q+1", f"s={s}, q+1={q + 1}"))
    if theorem == "t6":
        if s % 2:
            violations.append(_fail("even s", f"s={s}"))
    elif s % 2 == 0:
        violations.append(_fail("odd s", f"s={s}"))
    if t < 2 or t % 2 or (q - 1) % t:
        violations.append(_fail("even t | q-1", f"t={t}, q-1={q - 1}"))

    if theorem == "t4":
        if not (1 <= h <= s - 1 and h % 2 == 1):
            violations.append(_fail("odd h <= s-1", f"h={h}, s={s}"))
    elif theorem == "t5":
        if not 1 <= h <= s - 1:
            violations.append(_fail("1 <= h <= s-1", f"h={h}, s={s}"))
    elif not 1 <= 2 * h <= s:
        violations.append(_fail("1 <= h <= s/2", f"h={h}, s={s}"))

    if theorem == "t6":
        if not 1 <= 2 * r <= t:
            violations.append(_fail("1 <= r <= t/2", f"r={r}, t={t}"))
    elif not 1 <= r <= t:
        violations.append(_fail("1 <= r <= t", f"r={r}, t={t}"))

    if violations:
        return violations

    if theorem != "t6":
        if math.gcd(s, t) != 1:
            violations.append(_fail("gcd(s, t) = 1", f"s={s}, t={t}"))
        overlap = (q * q - 1) // (s * t) * h * r
        if not q - 1 > overlap:
            violations.append(_fail("q-1 > (q^2-1)/(st)*hr", f"q-1={q - 1}, overlap={overlap}"))

    d_max = theorem_d_max(q, theorem, s, t, h, r)
    if d_max < 1:
        violations.append(_fail("d_max >= 1", f"d_max={d_max}"))
    return violations


@dataclass(frozen=True)
class ConstructionParams:
    """A validated parameter tuple over the field of ``ctx``."""

    ctx: FieldContext
    theorem: str
    s: int
    t: int
    h: int
    r: int

    def __post_init__(self):
        violations = check_hypotheses(self.ctx.q, self.theorem, self.s, self.t, self.h, self.r)
        if violations:
            raise ParameterError(violations)

    @property
    def q(self) -> int:
        return self.ctx.q

    @property
    def l(self) -> int:
        return self.ctx.mult_order // self.s

    @property
    def m(self) -> int:
        return self.ctx.mult_order // self.t

    @property
    def delta(self) -> int:
        return self.s % self.ctx.mult_order

    @property
    def theta(self) -> int:
        return self.t % self.ctx.mult_order

    @property
    def overlap(self) -> int:
        if self.theorem == "t6":
            return 0
        return self.ctx.mult_order // (self.s * self.t) * self.h * self.r

    @property
    def n(self) -> int:
        return theorem_length(self.q, self.theorem, self.s, self.t, self.h, self.r)

    @property
    def d_max(self) -> int:
        return theorem_d_max(self.q, self.theorem, self.s, self.t, self.h, self.r)

    @property
    def lemma_bounds(self) -> Tuple[int, int]:
        return lemma_bounds(self.q, self.theorem, self.s, self.t, self.h)

    def check_dimension(self, d: Optional[int]) -> int:
        """Resolve ``d`` (default d_max) and reject it outside 1..d_max."""
        if d is None:
            return self.d_max
        if not 1 <= d <= self.d_max:
            raise ParameterError([_fail("1 <= d <= d_max", f"d={d}, d_max={self.d_max}")])
        return d

    def label(self) -> str:
        return f"{self.theorem.upper()} q={self.q} (s,t,h,r)=({self.s},{self.t},{self.h},{self.r})"

    def to_dict(self, d: Optional[int] = None) -> Dict[str, Any]:
        data = {
            "p": self.ctx.p,
            "e": self.ctx.e,
            "theorem": self.theorem,
            "s": self.s,
            "t": self.t,
            "h": self.h,
            "r": self.r,
        }
        if d is not None:
            data["d"] = d
        return data


def d_max(params: ConstructionParams) -> int:
    return params.d_max


def make_params(p: int, e: int, theorem: str, s: int, t: int, h: int, r: int) -> ConstructionParams:
    return ConstructionParams(make_field(p, e), theorem.lower(), s, t, h, r)


def params_from_dict(data: Dict[str, Any]) -> Tuple[ConstructionParams, Optional[int]]:
    try:
        params = make_params(
            int(data["p"]), int(data["e"]), str(data["theorem"]),
            int(data["s"]), int(data["t"]), int(data["h"]), int(data["r"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParameterError):
            raise
        raise ParameterError([f"malformed parameter data: {exc}"]) from exc
    d = data.get("d")
    return params, params.check_dimension(None if d is None else int(d))

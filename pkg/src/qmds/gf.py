"""
Exact arithmetic in F_q and F_{q^2} with exponent-coded elements.

A field element is a plain ``int``: ``k`` in ``[0, q^2 - 2]`` stands for ``g^k``,
where ``g`` is the class of the polynomial variable modulo the canonical
primitive modulus, and ``ZERO`` (``-1``) is the zero element. Multiplication is
exponent arithmetic, addition goes through a Zech logarithm table, and vector
sums go through a digit table of polynomial coefficients over F_p.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, Iterable, List, Sequence, Tuple

import numpy as np
import sympy

ZERO = -1

# q is capped at 2^16; the exp/log tables additionally have to fit MAX_TABLE_SIZE
MAX_Q = 2 ** 16
MAX_TABLE_SIZE = 2 ** 24


class FieldError(ValueError):
    """Invalid field parameters or an undefined field operation."""


def _debug_print(message: str, debug: bool = False):
    """Print debug message if debug mode is enabled."""
    if debug:
        print(f"gf           | {message}")


def _poly_mulmod(a: List[int], b: List[int], f_low: List[int], p: int) -> List[int]:
    degree = len(f_low)
    prod = [0] * (2 * degree - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    prod[i + j] = (prod[i + j] + ai * bj) % p
    # x^D = -(f_0 + f_1 x + ... + f_{D-1} x^{D-1})
    for k in range(2 * degree - 2, degree - 1, -1):
        c = prod[k]
        if c:
            prod[k] = 0
            for i in range(degree):
                prod[k - degree + i] = (prod[k - degree + i] - c * f_low[i]) % p
    return prod[:degree]


def _poly_powmod(base: List[int], exponent: int, f_low: List[int], p: int) -> List[int]:
    result = [1] + [0] * (len(f_low) - 1)
    while exponent:
        if exponent & 1:
            result = _poly_mulmod(result, base, f_low, p)
        base = _poly_mulmod(base, base, f_low, p)
        exponent >>= 1
    return result


def is_primitive_polynomial(f_low: Sequence[int], p: int) -> bool:
    """Check whether x has multiplicative order p^D - 1 modulo the monic polynomial.

    Args:
        f_low: Non-leading coefficients of the monic polynomial, constant term first
        p: Prime characteristic

    Returns:
        True if the polynomial is primitive over F_p
    """
    f_low = list(f_low)
    degree = len(f_low)
    if f_low[0] % p == 0:
        return False
    order = p ** degree - 1
    one = [1] + [0] * (degree - 1)
    x = [0, 1] + [0] * (degree - 2)
    if _poly_powmod(x, order, f_low, p) != one:
        return False
    for r in sympy.factorint(order):
        if _poly_powmod(x, order // r, f_low, p) == one:
            return False
    return True


def find_primitive_modulus(p: int, degree: int) -> Tuple[int, ...]:
    """Lexicographically smallest monic primitive polynomial of the given degree.

    Candidates are scanned by their non-leading coefficients, highest degree
    first, in ascending order.

    Returns:
        Coefficient tuple from the leading 1 down to the constant term
    """
    for high_to_low in itertools.product(range(p), repeat=degree):
        f_low = list(reversed(high_to_low))
        if is_primitive_polynomial(f_low, p):
            return (1,) + tuple(high_to_low)
    raise FieldError(f"no primitive polynomial of degree {degree} over F_{p}")


@dataclass(frozen=True, eq=False)
class FieldContext:
    """The arithmetic universe F_{q^2} with q = p^e and a fixed primitive element g."""

    p: int
    e: int
    q: int
    order2: int
    modulus: Tuple[int, ...]
    exp_table: np.ndarray
    log_table: np.ndarray
    digits: np.ndarray
    zech: Tuple[int, ...]
    g_index: int = 1

    @property
    def mult_order(self) -> int:
        """Order of the cyclic group F_{q^2}^*, i.e. q^2 - 1."""
        return self.order2 - 1

    @property
    def one(self) -> int:
        return 0

    @property
    def g(self) -> int:
        return self.g_index

    # -- scalar operations ---------------------------------------------------

    def from_int(self, c: int) -> int:
        """Embed an integer into the prime subfield."""
        c %= self.p
        return ZERO if c == 0 else int(self.log_table[c])

    def from_poly(self, poly: int) -> int:
        """Element whose coefficient vector, read as base-p digits, equals ``poly``."""
        if not 0 <= poly < self.order2:
            raise FieldError(f"polynomial index {poly} outside F_{self.order2}")
        return int(self.log_table[poly])

    def to_poly(self, x: int) -> int:
        return 0 if x == ZERO else int(self.exp_table[x])

    def dlog(self, x: int) -> int:
        if x == ZERO:
            raise FieldError("discrete log of ZERO is undefined")
        return x

    def exp(self, k: int) -> int:
        return k % self.mult_order

    def add(self, x: int, y: int) -> int:
        if x == ZERO:
            return y
        if y == ZERO:
            return x
        z = self.zech[(y - x) % self.mult_order]
        return ZERO if z == ZERO else (x + z) % self.mult_order

    def neg(self, x: int) -> int:
        if x == ZERO or self.p == 2:
            return x
        return (x + self.mult_order // 2) % self.mult_order

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if x == ZERO or y == ZERO:
            return ZERO
        return (x + y) % self.mult_order

    def inv(self, x: int) -> int:
        if x == ZERO:
            raise FieldError("inversion of ZERO")
        return (-x) % self.mult_order

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def pow(self, x: int, k: int) -> int:
        if x == ZERO:
            if k < 0:
                raise FieldError("negative power of ZERO")
            return self.one if k == 0 else ZERO
        return (x * k) % self.mult_order

    def frobenius(self, x: int) -> int:
        """x^q."""
        return x if x == ZERO else (x * self.q) % self.mult_order

    def norm(self, x: int) -> int:
        """x^{q+1}, an element of F_q."""
        return x if x == ZERO else (x * (self.q + 1)) % self.mult_order

    def in_base_field(self, x: int) -> bool:
        return x == ZERO or x % (self.q + 1) == 0

    def solve_norm(self, u: int) -> int:
        """Canonical v with v^{q+1} = u for u in F_q^*."""
        if u == ZERO or not self.in_base_field(u):
            raise FieldError(f"solve_norm needs an element of F_{self.q}^*, got {self.serialize(u)}")
        return u // (self.q + 1)

    def sum(self, values: Iterable[int]) -> int:
        total = ZERO
        for value in values:
            total = self.add(total, value)
        return total

    def base_field_elements(self) -> List[int]:
        """F_q^* in canonical order g^{(q+1)i}, i = 0, 1, ..."""
        return [(self.q + 1) * i for i in range(self.q - 1)]

    # -- vector operations ---------------------------------------------------

    def as_array(self, values: Iterable[int]) -> np.ndarray:
        if not isinstance(values, np.ndarray):
            values = list(values)
        return np.asarray(values, dtype=np.int64)

    def to_digits(self, values: np.ndarray) -> np.ndarray:
        """Coefficient digits over F_p, shape ``values.shape + (2e,)``."""
        index = np.where(values < 0, self.mult_order, values)
        return self.digits[index]

    def from_digits(self, digits: np.ndarray) -> np.ndarray:
        powers = self.p ** np.arange(2 * self.e, dtype=np.int64)
        return self.log_table[(digits % self.p) @ powers]

    def vec_sum(self, values: np.ndarray, axis: int = -1) -> np.ndarray:
        """Field sum along ``axis`` of an exponent-coded array."""
        return self.from_digits(self.to_digits(values).sum(axis=axis if axis >= 0 else axis - 1))

    def vec_mul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.where((x < 0) | (y < 0), ZERO, (x + y) % self.mult_order)

    def vec_pow(self, x: np.ndarray, k: int) -> np.ndarray:
        if k < 0:
            raise FieldError("negative vector power")
        zero_value = self.one if k == 0 else ZERO
        return np.where(x < 0, zero_value, (x * k) % self.mult_order)

    def vec_frobenius(self, x: np.ndarray) -> np.ndarray:
        return np.where(x < 0, ZERO, (x * self.q) % self.mult_order)

    # -- serialization -------------------------------------------------------

    def serialize(self, x: int) -> Any:
        return "0" if x == ZERO else int(x)

    def parse(self, token: Any) -> int:
        if token == "0":
            return ZERO
        if isinstance(token, bool) or not isinstance(token, int):
            raise FieldError(f"malformed field element {token!r}")
        if not 0 <= token < self.mult_order:
            raise FieldError(f"exponent {token} outside [0, {self.mult_order - 1}]")
        return token

    def to_dict(self) -> Dict[str, Any]:
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus)}

    def describe(self) -> str:
        return f"F_{self.order2} (p={self.p}, e={self.e}, modulus={list(self.modulus)})"


def build_field(p: int, e: int, debug: bool = False) -> FieldContext:
    """Build a fresh FieldContext for F_{q^2}, q = p^e.

    Args:
        p: Prime characteristic
        e: Extension degree of F_q over F_p
        debug: Print table construction progress

    Returns:
        Immutable FieldContext with exp/log/digit/Zech tables
    """
    if not isinstance(p, int) or not isinstance(e, int):
        raise FieldError("p and e must be integers")
    if e < 1:
        raise FieldError(f"extension degree must be >= 1, got {e}")
    if not sympy.isprime(p):
        raise FieldError(f"p = {p} is not prime")
    q = p ** e
    if q > MAX_Q:
        raise FieldError(f"q = {q} exceeds the table budget q <= {MAX_Q}")
    if q * q > MAX_TABLE_SIZE:
        raise FieldError(
            f"q = {q} exceeds the table cap q^2 <= {MAX_TABLE_SIZE} (q <= {math.isqrt(MAX_TABLE_SIZE)}), "
            f"which is stricter than q <= {MAX_Q}"
        )

    degree = 2 * e
    modulus = find_primitive_modulus(p, degree)
    f_low = list(reversed(modulus[1:]))
    _debug_print(f"F_{q * q}: modulus {list(modulus)}", debug)

    order = q * q - 1
    weights = [p ** i for i in range(degree)]
    exp_list = [0] * order
    current = [1] + [0] * (degree - 1)
    for k in range(order):
        exp_list[k] = sum(c * w for c, w in zip(current, weights))
        top = current[-1]
        current = [0] + current[:-1]
        if top:
            current = [(c - top * fi) % p for c, fi in zip(current, f_low)]

    exp_table = np.asarray(exp_list, dtype=np.int64)
    log_table = np.full(q * q, ZERO, dtype=np.int64)
    log_table[exp_table] = np.arange(order, dtype=np.int64)
    if np.count_nonzero(log_table == ZERO) != 1:
        raise FieldError(f"modulus {list(modulus)} does not generate F_{q * q}^*")

    powers = np.asarray(weights, dtype=np.int64)
    exp_digits = (exp_table[:, None] // powers) % p
    digits = np.vstack([exp_digits, np.zeros((1, degree), dtype=np.int64)])

    plus_one = exp_digits.copy()
    plus_one[:, 0] = (plus_one[:, 0] + 1) % p
    zech = log_table[plus_one @ powers]

    for table in (exp_table, log_table, digits):
        table.setflags(write=False)
    _debug_print(f"F_{q * q}: tables ready ({order} nonzero elements)", debug)

    return FieldContext(
        p=p,
        e=e,
        q=q,
        order2=q * q,
        modulus=modulus,
        exp_table=exp_table,
        log_table=log_table,
        digits=digits,
        zech=tuple(int(z) for z in zech),
    )


@lru_cache(maxsize=None)
def make_field(p: int, e: int) -> FieldContext:
    """Shared FieldContext for (p, e); identical inputs return the same object."""
    return build_field(p, e)


def field_from_dict(data: Dict[str, Any]) -> FieldContext:
    """Rebuild a context from its serialized form and check the stored modulus."""
    try:
        ctx = make_field(int(data["p"]), int(data["e"]))
    except (KeyError, TypeError) as exc:
        raise FieldError(f"malformed field context: {exc}") from exc
    modulus = data.get("modulus")
    if modulus is not None and tuple(modulus) != ctx.modulus:
        raise FieldError(f"modulus {modulus} does not match canonical {list(ctx.modulus)}")
    return ctx


def prime_power(q: int) -> Tuple[int, int]:
    """Factor q = p^e, raising FieldError when q is not a prime power."""
    if q < 2:
        raise FieldError(f"q = {q} is not a prime power")
    factors = sympy.factorint(q)
    if len(factors) != 1:
        raise FieldError(f"q = {q} is not a prime power")
    ((p, e),) = factors.items()
    return int(p), int(e)

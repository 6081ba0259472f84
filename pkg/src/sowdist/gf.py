"""Finite fields GF(p^r) with table-driven arithmetic.

Elements are plain integers ``0..q-1``.  The integer ``sum(c_j * p**j)``
stands for the polynomial ``sum(c_j * alpha**j)`` in the defining root
``alpha``, so the constant coordinate is the least significant digit and the
prime subfield occupies indices ``0..p-1``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from itertools import product

import numpy as np

MAX_ORDER = 256

# Moduli are listed constant coefficient first.
DEFAULT_MODULI: dict[int, tuple[int, ...]] = {
    4: (1, 1, 1),  # a^2 + a + 1
    8: (1, 1, 0, 1),  # a^3 + a + 1
    9: (1, 0, 1),  # a^2 + 1
    16: (1, 1, 0, 0, 1),  # a^4 + a + 1
    25: (2, 1, 1),  # a^2 + a + 2
    27: (1, 2, 0, 1),  # a^3 + 2a + 1
}


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % k for k in range(2, math.isqrt(n) + 1))


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q`` as ``(p, r)`` with ``q == p**r``; raise if impossible."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            break
    r, rest = 0, q
    while rest % p == 0:
        rest //= p
        r += 1
    if rest != 1:
        raise FieldError(f"{q} is not a prime power")
    return p, r


def _poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    # remainder of a by monic-or-not b over F_p, coefficient lists low-to-high
    a = [x % p for x in a]
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        coef = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        if coef:
            for j, bj in enumerate(b):
                a[shift + j] = (a[shift + j] - coef * bj) % p
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return a


def is_irreducible(modulus: tuple[int, ...] | list[int], p: int) -> bool:
    """Exhaustive check: no monic factor of degree 1..r//2 divides ``modulus``."""
    r = len(modulus) - 1
    if r < 1 or modulus[-1] % p == 0:
        return False
    for deg in range(1, r // 2 + 1):
        for low in product(range(p), repeat=deg):
            if not _poly_mod(list(modulus), list(low) + [1], p):
                return False
    return True


def first_irreducible(p: int, r: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree ``r`` in index order of its low coefficients."""
    for low in product(range(p), repeat=r):
        cand = tuple(reversed(low)) + (1,)
        if is_irreducible(cand, p):
            return cand
    raise FieldError(f"no irreducible polynomial of degree {r} over F_{p}")


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """A concrete finite field of order ``q = p**r``.

    Arithmetic goes through dense ``q x q`` tables, which are also exposed as
    numpy arrays (``add_table``, ``mul_table``) for vectorised callers.
    """

    p: int
    r: int
    modulus: tuple[int, ...]
    q: int = field(init=False)
    add_table: np.ndarray = field(init=False, repr=False)
    mul_table: np.ndarray = field(init=False, repr=False)
    neg_table: np.ndarray = field(init=False, repr=False)
    inv_table: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        q = self.p**self.r
        object.__setattr__(self, "q", q)
        p, r = self.p, self.r
        digits = [self._digits(a) for a in range(q)]
        add = np.empty((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(q):
                add[a, b] = self._index([(x + y) % p for x, y in zip(digits[a], digits[b])])
        mul = np.empty((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(a, q):
                prod = [0] * (2 * r - 1)
                for i, x in enumerate(digits[a]):
                    if x:
                        for j, y in enumerate(digits[b]):
                            prod[i + j] += x * y
                red = _poly_mod(prod, list(self.modulus), p) if r > 1 else [prod[0] % p]
                mul[a, b] = mul[b, a] = self._index(red + [0] * (r - len(red)))
        neg = np.array([int(np.nonzero(add[a] == 0)[0][0]) for a in range(q)], dtype=np.int64)
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = int(np.nonzero(mul[a] == 1)[0][0])
        for name, table in (("add_table", add), ("mul_table", mul), ("neg_table", neg), ("inv_table", inv)):
            table.setflags(write=False)
            object.__setattr__(self, name, table)

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.r):
            a, d = divmod(a, self.p)
            out.append(d)
        return out

    def _index(self, digits) -> int:
        return sum(d * self.p**j for j, d in enumerate(digits))

    # element-level arithmetic on integer indices

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.add_table[a, self.neg_table[b]])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.q)
        return int(self.inv_table[a])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        out = 1
        while e:
            if e & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            e >>= 1
        return out

    def trace(self, v: int) -> int:
        """Absolute trace ``v + v^p + ... + v^(p^(r-1))``; always lands in ``0..p-1``."""
        acc, term = 0, v
        for _ in range(self.r):
            acc = self.add(acc, term)
            term = self.pow(term, self.p)
        return acc

    def character(self, v: int) -> complex:
        """Canonical additive character ``exp(2*pi*i*tr(v)/p)``."""
        return cmath.exp(2j * math.pi * self.trace(v) / self.p)

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    def render(self, a: int) -> str:
        """Polynomial string for an element, e.g. ``a^2+1``."""
        if self.r == 1:
            return str(a)
        parts = []
        for j, d in reversed(list(enumerate(self._digits(a)))):
            if not d:
                continue
            mono = "1" if j == 0 else ("a" if j == 1 else f"a^{j}")
            if d != 1:
                mono = str(d) if j == 0 else f"{d}{mono}"
            parts.append(mono)
        return "+".join(parts) or "0"

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (self.p, self.r, self.modulus) == (other.p, other.r, other.modulus)

    def __hash__(self):
        return hash((self.p, self.r, self.modulus))

    def __repr__(self):
        return f"GF({self.q})"

    def __call__(self, index: int) -> "FieldElement":
        return FieldElement(self, index)


@dataclass(frozen=True)
class FieldElement:
    """Operator-friendly wrapper around an element index."""

    field: FieldSpec
    index: int

    def __post_init__(self):
        if not 0 <= self.index < self.field.q:
            raise FieldError(f"index {self.index} out of range for {self.field!r}")

    def _wrap(self, idx):
        return FieldElement(self.field, idx)

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError("elements of different fields")
            return other.index
        return int(other)

    def __add__(self, other):
        return self._wrap(self.field.add(self.index, self._other(other)))

    def __sub__(self, other):
        return self._wrap(self.field.sub(self.index, self._other(other)))

    def __mul__(self, other):
        return self._wrap(self.field.mul(self.index, self._other(other)))

    def __truediv__(self, other):
        return self._wrap(self.field.div(self.index, self._other(other)))

    def __neg__(self):
        return self._wrap(self.field.neg(self.index))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.index, e))

    def inverse(self):
        return self._wrap(self.field.inv(self.index))

    def trace(self):
        return self._wrap(self.field.trace(self.index))

    def character(self) -> complex:
        return self.field.character(self.index)

    def __int__(self):
        return self.index

    def __str__(self):
        return self.field.render(self.index)


def make_field(p: int, r: int = 1, modulus=None, max_order: int = MAX_ORDER) -> FieldSpec:
    """Build GF(p^r).

    Without an explicit ``modulus`` the documented default for that order is
    used (``DEFAULT_MODULI``), falling back to the first irreducible
    polynomial found by ``first_irreducible``.
    """
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if r < 1:
        raise FieldError("extension degree must be >= 1")
    q = p**r
    if q > max_order:
        raise FieldError(f"field order {q} exceeds bound {max_order}")
    if modulus is None:
        if r == 1:
            modulus = (0, 1)
        else:
            modulus = DEFAULT_MODULI.get(q) or first_irreducible(p, r)
    else:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != r + 1 or modulus[-1] != 1:
            raise FieldError("modulus must be monic of degree r (coefficients low to high)")
        if not is_irreducible(modulus, p):
            raise FieldError(f"modulus {modulus} is reducible over F_{p}")
    return FieldSpec(p, r, tuple(modulus))


_FIELD_CACHE: dict[int, FieldSpec] = {}


def field_of_order(q: int) -> FieldSpec:
    """Default field of order ``q`` (cached; FieldSpec is immutable)."""
    if q not in _FIELD_CACHE:
        p, r = prime_power(q)
        _FIELD_CACHE[q] = make_field(p, r)
    return _FIELD_CACHE[q]

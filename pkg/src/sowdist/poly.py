"""Sparse multivariate polynomials with exact rational coefficients.

An :class:`Enumerator` stores integer numerators keyed by exponent tuples over
one shared positive denominator, which keeps products in integer arithmetic.
Variable ``s`` corresponds to orbit ``s`` of an :class:`~sowdist.orbits.OrbitTable`
when the polynomial is a second-order weight enumerator.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import kernels
from .errors import InfeasibleError
from .orbits import E00, E01, E10, OrbitTable

DEFAULT_TERM_LIMIT = 5_000_000


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact coefficients")
    return Fraction(x)


def format_fraction(x: Fraction) -> str:
    x = to_fraction(x)
    return f"{x.numerator}/{x.denominator}"


def multinomial(n: int, i: Sequence[int]) -> int:
    """n! / prod(i_s!)."""
    if any(c < 0 for c in i) or sum(i) != n:
        raise ValueError(f"multinomial: parts {tuple(i)} do not sum to {n}")
    out, left = 1, n
    for c in i:
        out *= math.comb(left, c)
        left -= c
    return out


def monomial_count_bound(degree: int, nvars: int) -> int:
    """Number of monomials of total degree ``degree`` in ``nvars`` variables."""
    return math.comb(degree + nvars - 1, nvars - 1)


class Enumerator:
    """Immutable sparse polynomial in ``nvars`` variables over Q."""

    __slots__ = ("nvars", "_num", "_den")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], object] | None = None):
        self.nvars = nvars
        if not terms:
            self._num, self._den = {}, 1
            return
        fracs = {}
        for exp, c in terms.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent vector {exp} for {nvars} variables")
            fracs[exp] = fracs.get(exp, 0) + to_fraction(c)
        den = 1
        for c in fracs.values():
            den = den * c.denominator // math.gcd(den, c.denominator)
        num = {e: int(c * den) for e, c in fracs.items()}
        self._num, self._den = _normalize(num, den)

    @classmethod
    def _raw(cls, nvars: int, num: dict, den: int) -> "Enumerator":
        out = cls.__new__(cls)
        out.nvars = nvars
        out._num, out._den = _normalize(num, den)
        return out

    @classmethod
    def constant(cls, nvars: int, c=1) -> "Enumerator":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, s: int) -> "Enumerator":
        exp = [0] * nvars
        exp[s] = 1
        return cls(nvars, {tuple(exp): 1})

    @classmethod
    def monomial(cls, exp: Sequence[int], c=1) -> "Enumerator":
        return cls(len(exp), {tuple(exp): c})

    @classmethod
    def linear_form(cls, coefs: Sequence) -> "Enumerator":
        """sum_s coefs[s] * x_s."""
        nv = len(coefs)
        terms = {}
        for s, c in enumerate(coefs):
            if c:
                exp = [0] * nv
                exp[s] = 1
                terms[tuple(exp)] = c
        return cls(nv, terms)

    # inspection

    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return {e: Fraction(c, self._den) for e, c in sorted(self._num.items())}

    @property
    def denominator(self) -> int:
        return self._den

    def items(self):
        return self.terms.items()

    def __len__(self):
        return len(self._num)

    def is_zero(self) -> bool:
        return not self._num

    def degree(self) -> int:
        return max((sum(e) for e in self._num), default=0)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._num}) <= 1

    def max_exponent(self) -> int:
        return max((max(e, default=0) for e in self._num), default=0)

    def coefficient(self, exp: Sequence[int]) -> Fraction:
        exp = tuple(exp)
        if len(exp) != self.nvars:
            raise ValueError(f"exponent vector has length {len(exp)}, expected {self.nvars}")
        return Fraction(self._num.get(exp, 0), self._den)

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError(f"point has length {len(point)}, expected {self.nvars}")
        pt = [to_fraction(x) for x in point]
        total = Fraction(0)
        for exp, c in self._num.items():
            val = Fraction(c)
            for x, e in zip(pt, exp):
                if e:
                    val *= x**e
            total += val
        return total / self._den

    # arithmetic

    def _check(self, other: "Enumerator"):
        if not isinstance(other, Enumerator):
            raise TypeError(f"expected Enumerator, got {type(other).__name__}")
        if other.nvars != self.nvars:
            raise ValueError(f"nvars mismatch: {self.nvars} != {other.nvars}")

    def __eq__(self, other):
        if not isinstance(other, Enumerator):
            return NotImplemented
        return self.nvars == other.nvars and self._den == other._den and self._num == other._num

    def __hash__(self):
        return hash((self.nvars, self._den, frozenset(self._num.items())))

    def __add__(self, other):
        if not isinstance(other, Enumerator):
            other = Enumerator.constant(self.nvars, other)
        self._check(other)
        den = self._den * other._den // math.gcd(self._den, other._den)
        fa, fb = den // self._den, den // other._den
        num = {e: c * fa for e, c in self._num.items()}
        for e, c in other._num.items():
            num[e] = num.get(e, 0) + c * fb
        return Enumerator._raw(self.nvars, num, den)

    __radd__ = __add__

    def __neg__(self):
        return Enumerator._raw(self.nvars, {e: -c for e, c in self._num.items()}, self._den)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Enumerator":
        c = to_fraction(c)
        return Enumerator._raw(
            self.nvars, {e: v * c.numerator for e, v in self._num.items()}, self._den * c.denominator
        )

    def __mul__(self, other):
        if isinstance(other, Enumerator):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, other):
        return self.scale(1 / to_fraction(other))

    def __pow__(self, k: int):
        return power(self, k)

    def __repr__(self):
        if not self._num:
            return f"Enumerator({self.nvars}, 0)"
        parts = []
        for exp, c in self.terms.items():
            mono = "*".join(f"x{s}^{e}" if e > 1 else f"x{s}" for s, e in enumerate(exp) if e)
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    # serialisation

    def to_json_obj(self) -> dict:
        return {
            "nvars": self.nvars,
            "terms": [{"exp": list(e), "coef": format_fraction(c)} for e, c in self.terms.items()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "Enumerator":
        nv = int(obj["nvars"])
        return cls(nv, {tuple(t["exp"]): Fraction(t["coef"]) for t in obj["terms"]})

    @classmethod
    def from_json(cls, text: str) -> "Enumerator":
        return cls.from_json_obj(json.loads(text))


def _normalize(num: dict, den: int):
    num = {e: c for e, c in num.items() if c}
    if den < 0:
        num = {e: -c for e, c in num.items()}
        den = -den
    if not num:
        return {}, 1
    g = den
    for c in num.values():
        g = math.gcd(g, c)
        if g == 1:
            break
    if g > 1:
        num = {e: c // g for e, c in num.items()}
        den //= g
    return num, den


def _guard(A: Enumerator, B: Enumerator, limit: int):
    if A.is_homogeneous() and B.is_homogeneous() and A._num and B._num:
        bound = monomial_count_bound(A.degree() + B.degree(), A.nvars)
        if bound > limit and len(A) * len(B) > limit:
            raise InfeasibleError(f"product may have up to {bound} monomials (limit {limit})")


def multiply(A: Enumerator, B: Enumerator, limit: int = DEFAULT_TERM_LIMIT) -> Enumerator:
    """Exact product; exponent vectors are packed into integers for the inner kernel."""
    A._check(B)
    if not A._num or not B._num:
        return Enumerator(A.nvars)
    _guard(A, B, limit)
    radix = A.max_exponent() + B.max_exponent() + 1
    weights = [radix**s for s in range(A.nvars)]

    def pack(num):
        keys, coefs = [], []
        for e, c in num.items():
            keys.append(sum(w * x for w, x in zip(weights, e)))
            coefs.append(c)
        return keys, coefs

    ka, ca = pack(A._num)
    kb, cb = pack(B._num)
    if len(ka) < len(kb):
        ka, ca, kb, cb = kb, cb, ka, ca
    prod = kernels.poly_mul(ka, ca, kb, cb)
    num = {}
    for k, c in prod.items():
        exp = []
        for _ in range(A.nvars):
            k, r = divmod(k, radix)
            exp.append(r)
        num[tuple(exp)] = c
    return Enumerator._raw(A.nvars, num, A._den * B._den)


def power(A: Enumerator, k: int, limit: int = DEFAULT_TERM_LIMIT) -> Enumerator:
    """A**k by binary exponentiation; A**0 == 1."""
    if k < 0:
        raise ValueError("negative exponent")
    if A.is_homogeneous() and A._num and len(A) > 1:
        bound = monomial_count_bound(A.degree() * k, A.nvars)
        if bound > limit:
            raise InfeasibleError(f"power may have up to {bound} monomials (limit {limit})")
    result = Enumerator.constant(A.nvars, 1)
    base = A
    while k:
        if k & 1:
            result = multiply(result, base, limit)
        k >>= 1
        if k:
            base = multiply(base, base, limit)
    return result


def coefficient(A: Enumerator, i: Sequence[int]) -> Fraction:
    return A.coefficient(i)


def evaluate(A: Enumerator, point: Sequence) -> Fraction:
    return A.evaluate(point)


class Substitution:
    """The linear change of variables ``x_s <- sum_t x_t * M[t][s]``.

    Powers of the image linear forms and images of whole monomials are cached,
    so repeated substitutions through the same matrix share work.
    """

    def __init__(self, M: Sequence[Sequence]):
        nv = len(M)
        if any(len(row) != nv for row in M):
            raise ValueError("substitution matrix must be square")
        self.nvars = nv
        self.matrix = tuple(tuple(to_fraction(x) for x in row) for row in M)
        self._forms = [Enumerator.linear_form([self.matrix[t][s] for t in range(nv)]) for s in range(nv)]
        self._powers: dict[tuple[int, int], Enumerator] = {}
        self._images: dict[tuple[int, ...], Enumerator] = {}

    def form_power(self, s: int, e: int) -> Enumerator:
        key = (s, e)
        if key not in self._powers:
            self._powers[key] = power(self._forms[s], e)
        return self._powers[key]

    def image(self, exp: tuple[int, ...]) -> Enumerator:
        """Image of the monomial x^exp."""
        out = self._images.get(exp)
        if out is None:
            out = Enumerator.constant(self.nvars, 1)
            for s, e in enumerate(exp):
                if e:
                    out = multiply(out, self.form_power(s, e))
            self._images[exp] = out
        return out

    def __call__(self, A: Enumerator) -> Enumerator:
        if A.nvars != self.nvars:
            raise ValueError(f"size mismatch: matrix {self.nvars}, polynomial {A.nvars}")
        return combine(((c, self.image(e)) for e, c in A.terms.items()), self.nvars)


def combine(pairs: Iterable[tuple[object, Enumerator]], nvars: int | None = None) -> Enumerator:
    """sum of c * P over (c, P) pairs, accumulated in one pass."""
    acc: dict[tuple, Fraction] = {}
    nv = nvars
    for c, P in pairs:
        nv = P.nvars
        c = to_fraction(c)
        for e, v in P._num.items():
            acc[e] = acc.get(e, 0) + c * Fraction(v, P._den)
    if nv is None:
        raise ValueError("cannot infer nvars from an empty combination")
    return Enumerator(nv, acc)


def linear_substitute(A: Enumerator, M: Sequence[Sequence] | Substitution) -> Enumerator:
    sub = M if isinstance(M, Substitution) else Substitution(M)
    return sub(A)


def complete_enumerator(table: OrbitTable, n: int) -> Enumerator:
    """[x_00 + (q-1) * sum_{S != 00} x_S]^n, the enumerator of F_q^n x F_q^n."""
    q = table.q
    base = Enumerator.linear_form([1] + [q - 1] * (table.nvars - 1))
    return power(base, n)


def bivariate_projection(A: Enumerator, table: OrbitTable) -> Enumerator:
    """Collapse each orbit to x^wt(first) y^wt(second); result has variables (x, y)."""
    image = [(0, 0)] * table.nvars
    image[E01] = (0, 1)
    image[E10] = (1, 0)
    for s in table.pi11:
        image[s] = (1, 1)
    acc: dict[tuple[int, int], Fraction] = {}
    for exp, c in A.terms.items():
        a = sum(e * image[s][0] for s, e in enumerate(exp))
        b = sum(e * image[s][1] for s, e in enumerate(exp))
        acc[(a, b)] = acc.get((a, b), 0) + c
    return Enumerator(2, acc)


def second_moment_pair(dist: Mapping[Sequence[int], object], j: int, k: int, n: int, table: OrbitTable) -> Fraction:
    """sum over l and over i with i_10 = j-l, i_01 = k-l, sum_{Pi11} i_S = l of dist[i]."""
    total = Fraction(0)
    for i, val in dist.items():
        if sum(i) != n:
            raise ValueError(f"index {tuple(i)} does not sum to {n}")
        l = sum(i[s] for s in table.pi11)
        if l > min(j, k):
            continue
        if i[E10] == j - l and i[E01] == k - l and i[E00] == n - j - k + l:
            total += to_fraction(val)
    return total

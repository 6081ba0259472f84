"""Expected second-order weight distributions of regular LDPC ensembles.

Ensemble I (Gallager) intersects ``c`` independently permuted-and-scaled
copies of ``n/d`` single-symbol check codes.  Ensemble II (bipartite graph)
is the kernel of ``check o monomial map o repetition`` on ``c*n`` sockets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from typing import Iterator

from .gf import FieldSpec
from .macwilliams import KMatrix, build_k_matrix
from .orbits import E00, E01, E10, OrbitTable, build_orbit_table
from .poly import Enumerator, format_fraction, multinomial, power, second_moment_pair

KINDS = ("I", "II")


@dataclass(frozen=True)
class EnsembleSpec:
    kind: str
    field: FieldSpec
    c: int
    d: int
    n: int

    def __post_init__(self):
        kind = {"one": "I", "two": "II", "1": "I", "2": "II"}.get(str(self.kind), str(self.kind))
        object.__setattr__(self, "kind", kind)
        if kind not in KINDS:
            raise ValueError(f"unknown ensemble kind {self.kind!r}")
        if min(self.c, self.d, self.n) < 1:
            raise ValueError("c, d, n must be positive")
        if kind == "I" and self.n % self.d:
            raise ValueError(f"ensemble I needs d | n (d={self.d}, n={self.n})")
        if kind == "II" and (self.c * self.n) % self.d:
            raise ValueError(f"ensemble II needs d | c*n (c={self.c}, d={self.d}, n={self.n})")

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def checks(self) -> int:
        """Number of parity-check rows."""
        return self.c * self.n // self.d


@dataclass
class EnsembleDistribution:
    """Expected A_i(C, C) per sow vector i; absent indices are zero."""

    spec: EnsembleSpec
    values: dict[tuple[int, ...], Fraction] = field(default_factory=dict)

    def __getitem__(self, i) -> Fraction:
        return self.values.get(tuple(i), Fraction(0))

    def items(self):
        return self.values.items()

    def __len__(self):
        return len(self.values)

    def total(self) -> Fraction:
        """E[|C|^2]."""
        return sum(self.values.values(), Fraction(0))

    def enumerator(self) -> Enumerator:
        return Enumerator(self.spec.q + 2, self.values)

    def to_json_obj(self, table: OrbitTable | None = None, decimal: int | None = None) -> dict:
        table = table or build_orbit_table(self.spec.field)
        entries = []
        for i, v in self.values.items():
            e = {"i": list(i), "value": format_fraction(v)}
            if decimal is not None:
                e["decimal"] = round(float(v), decimal)
            entries.append(e)
        return {
            "kind": self.spec.kind,
            "q": self.spec.q,
            "c": self.spec.c,
            "d": self.spec.d,
            "n": self.spec.n,
            "orbit_order": table.labels(),
            "entries": entries,
        }

    @classmethod
    def from_json_obj(cls, obj, field: FieldSpec) -> "EnsembleDistribution":
        spec = EnsembleSpec(obj["kind"], field, obj["c"], obj["d"], obj["n"])
        return cls(spec, {tuple(e["i"]): Fraction(e["value"]) for e in obj["entries"]})


def repetition_enumerator(c: int, table: OrbitTable) -> Enumerator:
    """x_00^c + (q-1) * sum_{S != 00} x_S^c."""
    if c < 1:
        raise ValueError("c must be >= 1")
    nv = table.nvars
    terms = {}
    for s in range(nv):
        exp = [0] * nv
        exp[s] = c
        terms[tuple(exp)] = 1 if s == E00 else table.q - 1
    return Enumerator(nv, terms)


def check_enumerator(d: int, table: OrbitTable, K: KMatrix | None = None) -> Enumerator:
    """(1/q^2) [ (x K)_00^d + (q-1) sum_{T != 00} (x K)_T^d ]."""
    if d < 1:
        raise ValueError("d must be >= 1")
    K = K or build_k_matrix(table)
    q = table.q
    acc = power(Enumerator.linear_form(K.column(E00)), d)
    for t in range(1, table.nvars):
        acc = acc + power(Enumerator.linear_form(K.column(t)), d).scale(q - 1)
    return acc.scale(Fraction(1, q * q))


def full_pair_count(n: int, i, q: int) -> int:
    """A_i(F_q^n, F_q^n) = multinomial(n; i) (q-1)^(n - i_00)."""
    return multinomial(n, i) * (q - 1) ** (n - i[E00])


def ldpc1_expected(spec: EnsembleSpec, table: OrbitTable | None = None) -> EnsembleDistribution:
    if spec.kind != "I":
        raise ValueError("ldpc1_expected needs an ensemble I spec")
    table = table or build_orbit_table(spec.field)
    W = power(check_enumerator(spec.d, table), spec.n // spec.d)
    values = {}
    for i, coef in W.terms.items():
        values[i] = coef**spec.c / Fraction(full_pair_count(spec.n, i, spec.q)) ** (spec.c - 1)
    return EnsembleDistribution(spec, dict(sorted(values.items())))


def ldpc2_expected(spec: EnsembleSpec, table: OrbitTable | None = None) -> EnsembleDistribution:
    if spec.kind != "II":
        raise ValueError("ldpc2_expected needs an ensemble II spec")
    table = table or build_orbit_table(spec.field)
    c, n, q = spec.c, spec.n, spec.q
    W = power(check_enumerator(spec.d, table), c * n // spec.d)
    values = {}
    for ci, coef in W.terms.items():
        if any(e % c for e in ci):
            continue
        i = tuple(e // c for e in ci)
        values[i] = (multinomial(n, i) * coef) / (multinomial(c * n, ci) * (q - 1) ** ((c - 1) * (n - i[E00])))
    return EnsembleDistribution(spec, dict(sorted(values.items())))


def expected_distribution(spec: EnsembleSpec, table: OrbitTable | None = None) -> EnsembleDistribution:
    return ldpc1_expected(spec, table) if spec.kind == "I" else ldpc2_expected(spec, table)


def expected_second_moment(dist: EnsembleDistribution, j: int, k: int, table: OrbitTable | None = None) -> Fraction:
    """E[A_j(C) A_k(C)]."""
    n = dist.spec.n
    if not (0 <= j <= n and 0 <= k <= n):
        raise ValueError("weights must lie in 0..n")
    table = table or build_orbit_table(dist.spec.field)
    return second_moment_pair(dist.values, j, k, n, table)


def second_moment_matrix(dist: EnsembleDistribution, table: OrbitTable | None = None) -> list[list[Fraction]]:
    """All E[A_j A_k] at once, by one pass over the distribution."""
    table = table or build_orbit_table(dist.spec.field)
    n = dist.spec.n
    out = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
    for i, v in dist.values.items():
        both = sum(i[s] for s in table.pi11)
        out[i[E10] + both][i[E01] + both] += v
    return out


# q = 2 closed forms, kept as an independent cross-check path


def binary_g(d: int) -> Enumerator:
    """g_d over variables (00, 01, 10, 11), expanded from its four signed sums."""
    signs = [(1, 1, 1, 1), (1, -1, 1, -1), (1, 1, -1, -1), (1, -1, -1, 1)]
    acc = Enumerator(4)
    for sg in signs:
        acc = acc + power(Enumerator.linear_form(sg), d)
    return acc.scale(Fraction(1, 4))


@lru_cache(maxsize=32)
def _g_power(d: int, e: int) -> Enumerator:
    return power(binary_g(d), e)


def _split(n: int, j: int, k: int) -> Iterator[tuple[int, tuple[int, int, int, int]]]:
    for l in range(min(j, k) + 1):
        rest = n - j - k + l
        if rest < 0:
            continue
        # exponents of x00, x01, x10, x11
        yield l, (rest, k - l, j - l, l)


def binary_second_moment_I(c: int, d: int, n: int, j: int, k: int) -> Fraction:
    gpow = _g_power(d, n // d)
    total = Fraction(0)
    for l, exp in _split(n, j, k):
        m = multinomial(n, (l, j - l, k - l, n - j - k + l))
        total += gpow.coefficient(exp) ** c / Fraction(m) ** (c - 1)
    return total


def binary_second_moment_II(c: int, d: int, n: int, j: int, k: int) -> Fraction:
    gpow = _g_power(d, c * n // d)
    total = Fraction(0)
    for l, exp in _split(n, j, k):
        parts = (l, j - l, k - l, n - j - k + l)
        cexp = tuple(c * e for e in exp)
        total += Fraction(multinomial(n, parts), multinomial(c * n, tuple(c * x for x in parts))) * gpow.coefficient(cexp)
    return total

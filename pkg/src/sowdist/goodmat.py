"""k-good random matrices and the enumerators of the codes they generate."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import InfeasibleError
from .gf import FieldSpec, field_of_order, make_field
from .linalg import MatrixGF, matmul, rank
from .orbits import E00, OrbitTable, build_orbit_table, sow
from .poly import Enumerator, combine, multinomial, power

DEFAULT_SCAN_LIMIT = 10_000_000


@dataclass(frozen=True, eq=False)
class MatrixEnsemble:
    """Uniform distribution over an explicit set of m x n matrices."""

    field: FieldSpec
    m: int
    n: int
    support: tuple[MatrixGF, ...]

    def __post_init__(self):
        if not self.support:
            raise ValueError("support must be nonempty")
        seen = set()
        for A in self.support:
            if A.field != self.field or A.shape != (self.m, self.n):
                raise ValueError("support matrices must share field and shape")
            key = A.data.tobytes()
            if key in seen:
                raise ValueError("duplicate matrix in support")
            seen.add(key)

    @classmethod
    def from_matrices(cls, mats: Sequence[MatrixGF]) -> "MatrixEnsemble":
        if not mats:
            raise ValueError("support must be nonempty")
        F, (m, n) = mats[0].field, mats[0].shape
        return cls(F, m, n, tuple(mats))

    @classmethod
    def full(cls, field: FieldSpec, m: int, n: int, limit: int = DEFAULT_SCAN_LIMIT) -> "MatrixEnsemble":
        if field.q ** (m * n) > limit:
            raise InfeasibleError(f"F_{field.q}^({m}x{n}) has more than {limit} members")
        mats = tuple(MatrixGF(field, np.array(v, dtype=np.int64).reshape(m, n)) for v in itertools.product(range(field.q), repeat=m * n))
        return cls(field, m, n, mats)

    def __len__(self):
        return len(self.support)

    def stacked(self) -> np.ndarray:
        return np.stack([A.data for A in self.support])


def _batched_left_mul(F: FieldSpec, U: np.ndarray, stack: np.ndarray) -> np.ndarray:
    """U @ A for every A in ``stack`` (s, m, n) -> (s, k, n)."""
    if F.r == 1:
        return np.einsum("km,smn->skn", U, stack) % F.p
    s, m, n = stack.shape
    out = np.zeros((s, U.shape[0], n), dtype=np.int64)
    for j in range(m):
        out = F.add_table[out, F.mul_table[U[None, :, j, None], stack[:, None, j, :]]]
    return out


def full_rank_matrices(F: FieldSpec, k: int, m: int):
    for vals in itertools.product(range(F.q), repeat=k * m):
        U = np.array(vals, dtype=np.int64).reshape(k, m)
        if rank(MatrixGF(F, U)) == k:
            yield U


def is_k_good(E: MatrixEnsemble, k: int, limit: int = DEFAULT_SCAN_LIMIT) -> bool:
    """True iff U A is uniform over F_q^(k x n) for every rank-k U in F_q^(k x m)."""
    F, m, n = E.field, E.m, E.n
    if not 1 <= k <= min(m, n):
        raise ValueError(f"k must satisfy 1 <= k <= min(m, n) = {min(m, n)}")
    cells = F.q ** (k * n)
    if len(E) % cells:
        return False
    if len(E) * F.q ** (k * m) > limit:
        raise InfeasibleError("exhaustive k-goodness scan exceeds limit")
    stack = E.stacked()
    expected = len(E) // cells
    place = F.q ** np.arange(k * n, dtype=np.int64)
    for U in full_rank_matrices(F, k, m):
        prods = _batched_left_mul(F, U, stack).reshape(len(E), k * n)
        counts = np.bincount(prods @ place, minlength=cells)
        if counts.min() != expected or counts.max() != expected:
            return False
    return True


def theorem4_generator(q: int, m: int, n: int, table: OrbitTable | None = None) -> Enumerator:
    """E[W_{C,C}(x) / |C|^2] for the code generated by a 2-good m x n matrix."""
    if not 0 < m < n:
        raise ValueError("need 0 < m < n")
    table = table or build_orbit_table(field_of_order(q))
    nv = table.nvars
    qm = q**m
    terms = [(Fraction(1, qm * qm), Enumerator.monomial(_unit(nv, E00, n)))]
    for s in range(1, nv):
        coefs = [0] * nv
        coefs[E00] = Fraction(1, q)
        coefs[s] = Fraction(q - 1, q)
        terms.append((Fraction(qm - 1, qm * qm), power(Enumerator.linear_form(coefs), n)))
    third = [Fraction(1, q * q)] + [Fraction(q - 1, q * q)] * (nv - 1)
    terms.append((Fraction((qm - 1) * (qm - q), qm * qm), power(Enumerator.linear_form(third), n)))
    return combine(terms)


def theorem4_parity(q: int, m: int, n: int, table: OrbitTable | None = None) -> Enumerator:
    """E[W_{B,B}(x)] for the kernel B of a 2-good m x n parity-check matrix."""
    if not 0 < m < n:
        raise ValueError("need 0 < m < n")
    table = table or build_orbit_table(field_of_order(q))
    nv = table.nvars
    qm = q**m
    terms = [(Fraction((qm - 1) * (qm - q), qm * qm), Enumerator.monomial(_unit(nv, E00, n)))]
    for s in range(1, nv):
        coefs = [0] * nv
        coefs[E00] = 1
        coefs[s] = q - 1
        terms.append((Fraction(qm - 1, qm * qm), power(Enumerator.linear_form(coefs), n)))
    terms.append((Fraction(1, qm * qm), power(Enumerator.linear_form([1] + [q - 1] * (nv - 1)), n)))
    return combine(terms)


def _unit(nv: int, s: int, e: int) -> tuple[int, ...]:
    exp = [0] * nv
    exp[s] = e
    return tuple(exp)


def pairwise_probs(W: Enumerator, u: Sequence[int], v: Sequence[int], table: OrbitTable) -> Fraction:
    """P{u, v both in a randomly monomial-mapped code} read off its expected enumerator."""
    if not W.is_homogeneous():
        raise ValueError("enumerator must be homogeneous")
    i = sow(u, v, table)
    n = len(u)
    if W.degree() != n and not W.is_zero():
        raise ValueError(f"enumerator degree {W.degree()} does not match length {n}")
    full = multinomial(n, i) * (table.q - 1) ** (n - i[E00])
    return W.coefficient(i) / full


def intersecting_report(q: int, m: int, n: int) -> dict:
    """Bounds for the random code with 2-good (n-m) x n parity checks (dimension about m)."""
    if not 0 < m < n:
        raise ValueError("need 0 < m < n")
    qf = Fraction(q)
    union = Fraction((2 * q - 1) ** n) * qf ** (2 * (m - n))
    expected = qf**m + 1 - qf ** (m - n)
    variance = qf ** (m - n) * (q - 1) * (q**n - 1) * (1 - qf ** (m - n))
    return {
        "q": q,
        "m": m,
        "n": n,
        "union_bound": union,
        "rate_bound": 1 - 0.5 * math.log(2 * q - 1, q),
        "rate": Fraction(m, n),
        "expected_size": expected,
        "variance": variance,
        "variance_bound": qf ** (m + 1),
        "chebyshev_deviation": 2 * n * q ** ((m + 1) / 2),
        "chebyshev_bound": Fraction(1, n * n),
    }


def _f8_column(F: FieldSpec, x: int) -> list[int]:
    # coordinates of x relative to 1, a, a^2 (index digits)
    return [(x >> b) & 1 for b in range(3)]


def mrd_examples() -> tuple[MatrixEnsemble, MatrixEnsemble]:
    """The 8- and 64-element sets of 3x3 binary matrices built from GF(8), a^3 = a + 1."""
    F8 = make_field(2, 3)
    F2 = field_of_order(2)
    a = 2
    row1 = [1, a, F8.pow(a, 2)]
    row2 = [1, F8.pow(a, 2), F8.pow(a, 4)]

    def as_matrix(entries):
        cols = [_f8_column(F8, e) for e in entries]
        return MatrixGF(F2, np.array(cols, dtype=np.int64).T)

    A1 = [as_matrix([F8.mul(x, g) for g in row1]) for x in range(8)]
    A2 = [
        as_matrix([F8.add(F8.mul(x, g), F8.mul(y, h)) for g, h in zip(row1, row2)])
        for x in range(8)
        for y in range(8)
    ]
    return MatrixEnsemble.from_matrices(A1), MatrixEnsemble.from_matrices(A2)


# uniform random matrices


def classify_pair(F: FieldSpec, x: Sequence[int], xp: Sequence[int]):
    """('zero', None) | ('first_zero', None) | ('second_zero', None) | ('multiple', a) | ('independent', None)."""
    xz = not any(x)
    xpz = not any(xp)
    if xz and xpz:
        return "zero", None
    if xz:
        return "first_zero", None
    if xpz:
        return "second_zero", None
    piv = next(i for i, c in enumerate(x) if c)
    a = F.div(xp[piv], x[piv])
    if all(F.mul(a, c) == cp for c, cp in zip(x, xp)):
        return "multiple", a
    return "independent", None


def corollary1_distribution(F: FieldSpec, m: int, n: int, x, xp, limit: int = DEFAULT_SCAN_LIMIT) -> dict:
    """Exact joint law of (x G, x' G) over all G in F_q^(m x n)."""
    total = F.q ** (m * n)
    if total > limit:
        raise InfeasibleError(f"{total} matrices exceed limit {limit}")
    X = np.array([x, xp], dtype=np.int64).reshape(2, m)
    counts: dict = {}
    for vals in itertools.product(range(F.q), repeat=m * n):
        G = np.array(vals, dtype=np.int64).reshape(m, n)
        Y = matmul(F, X, G)
        key = (tuple(Y[0].tolist()), tuple(Y[1].tolist()))
        counts[key] = counts.get(key, 0) + 1
    return {k: Fraction(c, total) for k, c in sorted(counts.items())}


def pair_law_table(F: FieldSpec, n: int, x, xp) -> dict:
    """The five-case closed form for P{xG = y, x'G = y'} (nonzero entries only)."""
    q = F.q
    kind, a = classify_pair(F, x, xp)
    zero = (0,) * n
    vecs = list(itertools.product(range(q), repeat=n))
    if kind == "zero":
        return {(zero, zero): Fraction(1)}
    if kind == "first_zero":
        return {(zero, y): Fraction(1, q**n) for y in vecs}
    if kind == "second_zero":
        return {(y, zero): Fraction(1, q**n) for y in vecs}
    if kind == "multiple":
        return {(y, tuple(F.mul(a, c) for c in y)): Fraction(1, q**n) for y in vecs}
    return {(y, yp): Fraction(1, q ** (2 * n)) for y in vecs for yp in vecs}


def row_operation_uniformity(F: FieldSpec, m: int, n: int, limit: int = DEFAULT_SCAN_LIMIT) -> bool:
    """For every invertible U, G -> U G permutes F_q^(m x n)."""
    total = F.q ** (m * n)
    if total * F.q ** (m * m) > limit:
        raise InfeasibleError("exhaustive scan exceeds limit")
    stack = np.array(list(itertools.product(range(F.q), repeat=m * n)), dtype=np.int64).reshape(total, m, n)
    place = F.q ** np.arange(m * n, dtype=np.int64)
    for U in full_rank_matrices(F, m, m):
        keys = _batched_left_mul(F, U, stack).reshape(total, m * n) @ place
        if np.bincount(keys, minlength=total).max() != 1:
            return False
    return True

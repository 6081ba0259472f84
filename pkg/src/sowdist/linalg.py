"""Matrices and linear codes over GF(q), plus brute-force second-order weight distributions."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import kernels
from .errors import InfeasibleError
from .gf import FieldSpec, field_of_order
from .orbits import OrbitTable, sow

DEFAULT_PAIR_LIMIT = 1 << 20
DEFAULT_WORD_LIMIT = 1 << 20


class MatrixGF:
    """A dense matrix over a finite field; entries are element indices."""

    __slots__ = ("field", "data")

    def __init__(self, field: FieldSpec, data):
        arr = np.array(data, dtype=np.int64)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1) if arr.size else arr.reshape(0, 0)
        if arr.ndim != 2:
            raise ValueError("matrix data must be two-dimensional")
        if arr.size and (arr.min() < 0 or arr.max() >= field.q):
            raise ValueError(f"entries must lie in 0..{field.q - 1}")
        arr.setflags(write=False)
        self.field = field
        self.data = arr

    @classmethod
    def zeros(cls, field, rows, cols):
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field, m):
        return cls(field, np.eye(m, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self):
        return self.data.shape

    def __eq__(self, other):
        return isinstance(other, MatrixGF) and self.field == other.field and np.array_equal(self.data, other.data)

    def __hash__(self):
        return hash((self.field, self.data.shape, self.data.tobytes()))

    def __repr__(self):
        return f"MatrixGF({self.field!r}, {self.data.tolist()})"

    def tolist(self):
        return self.data.tolist()

    def __matmul__(self, other: "MatrixGF") -> "MatrixGF":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        return MatrixGF(self.field, matmul(self.field, self.data, other.data))

    def transpose(self) -> "MatrixGF":
        return MatrixGF(self.field, self.data.T)

    T = property(transpose)


def matmul(F: FieldSpec, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Field product of integer-index arrays."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if F.r == 1:
        return (A @ B) % F.p
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    mul, add = F.mul_table, F.add_table
    for k in range(A.shape[1]):
        out = add[out, mul[A[:, k][:, None], B[k][None, :]]]
    return out


def rref(F: FieldSpec, M) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form (zero rows dropped) and pivot columns."""
    A = np.array(M, dtype=np.int64, copy=True)
    if A.ndim != 2:
        A = A.reshape(0, 0) if A.size == 0 else A.reshape(1, -1)
    rows, cols = A.shape
    mul, add, neg, inv = F.mul_table, F.add_table, F.neg_table, F.inv_table
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = mul[inv[A[r, c]], A[r]]
        for i in range(rows):
            if i != r and A[i, c]:
                A[i] = add[A[i], mul[neg[A[i, c]], A[r]]]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def nullspace_from_rref(F: FieldSpec, R: np.ndarray, pivots: list[int], cols: int) -> np.ndarray:
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for i, pc in enumerate(pivots):
            basis[t, pc] = F.neg_table[R[i, f]]
    return basis


def rref_rank_nullspace(M: MatrixGF) -> tuple[MatrixGF, int, MatrixGF]:
    """(rref without zero rows, rank, basis of {v : M v^T = 0})."""
    F = M.field
    R, piv = rref(F, M.data)
    N = nullspace_from_rref(F, R, piv, M.cols)
    return MatrixGF(F, R.reshape(len(piv), M.cols)), len(piv), MatrixGF(F, N.reshape(-1, M.cols))


def rank(M: MatrixGF) -> int:
    return len(rref(M.field, M.data)[1])


def span_words(F: FieldSpec, basis: np.ndarray, n: int, limit: int = DEFAULT_WORD_LIMIT) -> np.ndarray:
    """All F-linear combinations of the rows of ``basis`` (duplicates kept if rows are dependent)."""
    k = basis.shape[0]
    if F.q**k > limit:
        raise InfeasibleError(f"{F.q}^{k} codewords exceed limit {limit}")
    words = np.zeros((1, n), dtype=np.int64)
    mul, add = F.mul_table, F.add_table
    for row in basis:
        scaled = mul[np.arange(F.q)[:, None], row[None, :]]  # (q, n)
        words = add[words[:, None, :], scaled[None, :, :]].reshape(-1, n)
    return words


class LinearCode:
    """A subspace of F_q^n held as a reduced row-echelon basis."""

    __slots__ = ("field", "n", "basis", "_pivots")

    def __init__(self, field: FieldSpec, n: int, generators=None):
        self.field = field
        self.n = n
        gens = np.zeros((0, n), dtype=np.int64) if generators is None else np.array(generators, dtype=np.int64).reshape(-1, n)
        R, piv = rref(field, gens) if gens.shape[0] else (gens, [])
        R = R.reshape(len(piv), n)
        R.setflags(write=False)
        self.basis = R
        self._pivots = tuple(piv)

    @classmethod
    def from_generator(cls, G: MatrixGF) -> "LinearCode":
        return cls(G.field, G.cols, G.data)

    @classmethod
    def from_parity_check(cls, H: MatrixGF) -> "LinearCode":
        _, _, N = rref_rank_nullspace(H)
        return cls(H.field, H.cols, N.data)

    @classmethod
    def full(cls, field, n):
        return cls(field, n, np.eye(n, dtype=np.int64))

    @classmethod
    def zero(cls, field, n):
        return cls(field, n)

    @property
    def k(self) -> int:
        return self.basis.shape[0]

    @property
    def size(self) -> int:
        return self.field.q**self.k

    def generator(self) -> MatrixGF:
        return MatrixGF(self.field, self.basis.reshape(self.k, self.n))

    def codewords(self, limit: int = DEFAULT_WORD_LIMIT) -> np.ndarray:
        return span_words(self.field, self.basis, self.n, limit)

    def contains(self, v: Sequence[int]) -> bool:
        stacked = np.vstack([self.basis, np.asarray(v, dtype=np.int64).reshape(1, self.n)])
        return len(rref(self.field, stacked)[1]) == self.k

    def dual(self) -> "LinearCode":
        F = self.field
        N = nullspace_from_rref(F, self.basis, list(self._pivots), self.n)
        return LinearCode(F, self.n, N)

    def __eq__(self, other):
        return (
            isinstance(other, LinearCode)
            and self.field == other.field
            and self.n == other.n
            and np.array_equal(self.basis, other.basis)
        )

    def __hash__(self):
        return hash((self.field, self.n, self.basis.tobytes()))

    def __repr__(self):
        return f"LinearCode(GF({self.field.q}), n={self.n}, k={self.k})"


def dual(C: LinearCode) -> LinearCode:
    return C.dual()


def codewords(C: LinearCode, limit: int = DEFAULT_WORD_LIMIT) -> list[tuple[int, ...]]:
    return [tuple(w) for w in C.codewords(limit).tolist()]


def repetition_code(c: int, field: FieldSpec) -> LinearCode:
    """Image of v -> (v, ..., v) in F_q^c."""
    if c < 1:
        raise ValueError("repetition length must be >= 1")
    return LinearCode(field, c, np.ones((1, c), dtype=np.int64))


def check_code(d: int, field: FieldSpec) -> LinearCode:
    """Kernel of v -> sum(v_i) on F_q^d."""
    if d < 1:
        raise ValueError("check length must be >= 1")
    return LinearCode.from_parity_check(MatrixGF(field, np.ones((1, d), dtype=np.int64)))


def atomic_codes(kind: str, param: int, field: FieldSpec) -> LinearCode:
    if kind == "repetition":
        return repetition_code(param, field)
    if kind == "check":
        return check_code(param, field)
    raise ValueError(f"unknown atomic code kind {kind!r}")


def all_subspaces(field: FieldSpec, n: int, dims: Iterable[int] | None = None) -> Iterator[LinearCode]:
    """Every subspace of F_q^n exactly once, enumerated by reduced echelon form."""
    q = field.q
    for k in range(n + 1) if dims is None else dims:
        for pivots in itertools.combinations(range(n), k):
            free_slots = [(i, c) for i, p in enumerate(pivots) for c in range(p + 1, n) if c not in pivots]
            for vals in itertools.product(range(q), repeat=len(free_slots)):
                B = np.zeros((k, n), dtype=np.int64)
                for i, p in enumerate(pivots):
                    B[i, p] = 1
                for (i, c), v in zip(free_slots, vals):
                    B[i, c] = v
                yield LinearCode(field, n, B)


def random_subspace(field: FieldSpec, n: int, rng: np.random.Generator, k: int | None = None) -> LinearCode:
    if k is None:
        k = int(rng.integers(0, n + 1))
    G = rng.integers(0, field.q, size=(k, n))
    return LinearCode(field, n, G)


# monomial maps


@dataclass(frozen=True)
class MonomialMap:
    """v -> (c_1 v_{sigma^-1(1)}, ..., c_n v_{sigma^-1(n)}); ``perm[i]`` is sigma(i)."""

    scalars: tuple[int, ...]
    perm: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError("perm is not a permutation")
        if len(self.scalars) != len(self.perm) or any(c == 0 for c in self.scalars):
            raise ValueError("scalars must be nonzero and match the permutation length")

    @property
    def n(self) -> int:
        return len(self.perm)

    def inverse_perm(self) -> tuple[int, ...]:
        inv = [0] * self.n
        for i, s in enumerate(self.perm):
            inv[s] = i
        return tuple(inv)

    def apply(self, field: FieldSpec, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.n:
            raise ValueError("length mismatch")
        inv = self.inverse_perm()
        return tuple(field.mul(self.scalars[i], v[inv[i]]) for i in range(self.n))

    def apply_rows(self, field: FieldSpec, V: np.ndarray) -> np.ndarray:
        """Apply to every row of a 2-D index array."""
        inv = np.array(self.inverse_perm(), dtype=np.int64)
        return field.mul_table[np.array(self.scalars)[None, :], np.asarray(V)[:, inv]]

    def matrix(self, field: FieldSpec) -> MatrixGF:
        """P with xi(v) = v P for row vectors v."""
        P = np.zeros((self.n, self.n), dtype=np.int64)
        for i, s in enumerate(self.inverse_perm()):
            P[s, i] = self.scalars[i]
        return MatrixGF(field, P)


def apply_monomial(m: MonomialMap, v: Sequence[int], field: FieldSpec) -> tuple[int, ...]:
    return m.apply(field, v)


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Counter-based generator keyed by (seed, stream); independent of scheduling."""
    ss = np.random.SeedSequence(entropy=int(seed) & ((1 << 64) - 1), spawn_key=(int(stream),))
    return np.random.Generator(np.random.Philox(ss))


def sample_monomial(n: int, field: FieldSpec, seed: int | np.random.Generator, stream: int = 0) -> MonomialMap:
    rng = seed if isinstance(seed, np.random.Generator) else make_rng(seed, stream)
    perm = tuple(int(x) for x in rng.permutation(n))
    scalars = tuple(int(x) for x in rng.integers(1, field.q, size=n))
    return MonomialMap(scalars, perm)


def all_monomial_maps(n: int, field: FieldSpec) -> Iterator[MonomialMap]:
    for perm in itertools.permutations(range(n)):
        for scalars in itertools.product(range(1, field.q), repeat=n):
            yield MonomialMap(scalars, perm)


def monomial_map_count(n: int, q: int) -> int:
    return math.factorial(n) * (q - 1) ** n


# brute-force second-order weight distributions


def _words(X, field: FieldSpec, limit: int) -> np.ndarray:
    if isinstance(X, LinearCode):
        return X.codewords(limit)
    arr = np.asarray(X, dtype=np.int64)
    return arr.reshape(len(arr), -1) if arr.size else arr.reshape(len(arr), 0)


def sow_tally(U: np.ndarray, V: np.ndarray, table: OrbitTable) -> dict[tuple[int, ...], int]:
    """Counts of sow(u, v) over all rows u of U and v of V."""
    n = U.shape[1] if U.ndim == 2 else 0
    nv = table.nvars
    radix = n + 1
    if U.shape[0] == 0 or V.shape[0] == 0:
        return {}
    if radix ** nv >= 1 << 62:
        out: dict[tuple[int, ...], int] = {}
        for u in U.tolist():
            for v in V.tolist():
                i = sow(u, v, table)
                out[i] = out.get(i, 0) + 1
        return out
    weights = np.array([radix**s for s in range(nv)], dtype=np.int64)
    keys = kernels.sow_keys(U, V, table.lookup, table.q, weights)
    uniq, counts = np.unique(keys, return_counts=True)
    return {unpack_key(int(k), radix, nv): int(c) for k, c in zip(uniq, counts)}


def unpack_key(key: int, radix: int, nvars: int) -> tuple[int, ...]:
    exp = []
    for _ in range(nvars):
        key, r = divmod(key, radix)
        exp.append(r)
    return tuple(exp)


def sow_distribution(U, V, table: OrbitTable, limit: int = DEFAULT_PAIR_LIMIT) -> dict[tuple[int, ...], int]:
    """A_i(U, V) = #{(u, v) in U x V : sow(u, v) = i} by enumeration.

    ``U`` and ``V`` are codes or explicit lists of vectors; the result is
    keyed by sow vectors in lexicographic order.
    """
    F = table.field
    Uw = _words(U, F, limit)
    Vw = _words(V, F, limit)
    if Uw.shape[0] * Vw.shape[0] > limit:
        raise InfeasibleError(f"{Uw.shape[0]} x {Vw.shape[0]} pairs exceed limit {limit}")
    if Uw.shape[1:] != Vw.shape[1:]:
        raise ValueError("U and V have different lengths")
    return dict(sorted(sow_tally(Uw, Vw, table).items()))


def weight_distribution(C, field: FieldSpec, limit: int = DEFAULT_WORD_LIMIT) -> list[int]:
    """Classical Hamming weight distribution A_0..A_n."""
    W = _words(C, field, limit)
    n = W.shape[1]
    wts = np.count_nonzero(W, axis=1)
    return np.bincount(wts, minlength=n + 1).tolist()


# matrix text format: "q rows cols" header, then row-major entries


def format_matrix(M: MatrixGF) -> str:
    lines = [f"{M.field.q} {M.rows} {M.cols}"]
    lines += [" ".join(str(int(x)) for x in row) for row in M.data]
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> MatrixGF:
    tokens = text.split()
    if len(tokens) < 3:
        raise ValueError("matrix text needs a 'q rows cols' header")
    q, rows, cols = (int(t) for t in tokens[:3])
    body = [int(t) for t in tokens[3:]]
    if len(body) != rows * cols:
        raise ValueError(f"expected {rows * cols} entries, found {len(body)}")
    F = field_of_order(q)
    return MatrixGF(F, np.array(body, dtype=np.int64).reshape(rows, cols))


def format_support(mats: Sequence[MatrixGF]) -> str:
    return "\n".join(format_matrix(M) for M in mats)


def parse_support(text: str) -> list[MatrixGF]:
    blocks = [b for b in text.replace("\r\n", "\n").split("\n\n") if b.strip()]
    return [parse_matrix(b) for b in blocks]

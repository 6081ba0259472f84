"""The second-order MacWilliams transform."""

from __future__ import annotations

from fractions import Fraction

from .gf import FieldSpec
from .orbits import OrbitTable
from .poly import Enumerator, Substitution

_SUBSTITUTIONS: dict[FieldSpec, Substitution] = {}


class KMatrix:
    """Integer (q+2)x(q+2) transform matrix, rows and columns in orbit order.

    ``K[S][T]`` is ``|S|`` when every pair in orbit T is orthogonal to every
    pair in S, and -1 otherwise.
    """

    def __init__(self, table: OrbitTable):
        F = table.field
        self.table = table
        rows = []
        for s, rep in enumerate(table.reps):
            row = []
            for t in range(table.nvars):
                inside = all(
                    F.add(F.mul(rep[0], a), F.mul(rep[1], b)) == 0 for a, b in table.members[t]
                )
                row.append(len(table.members[s]) if inside else -1)
            rows.append(tuple(row))
        self.entries = tuple(rows)

    def __getitem__(self, idx):
        return self.entries[idx]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def column(self, t: int) -> list[int]:
        return [row[t] for row in self.entries]

    def substitution(self) -> Substitution:
        """Cached x -> xK substitution for this field."""
        F = self.table.field
        sub = _SUBSTITUTIONS.get(F)
        if sub is None:
            sub = _SUBSTITUTIONS[F] = Substitution(self.entries)
        return sub


def build_k_matrix(table: OrbitTable) -> KMatrix:
    return KMatrix(table)


def transform(W: Enumerator, size_u: int, size_v: int, K: KMatrix) -> Enumerator:
    """W_{U-perp, V-perp}(x) = W_{U,V}(xK) / (|U| |V|)."""
    if not W.is_homogeneous():
        raise ValueError("transform needs a homogeneous enumerator")
    if W.nvars != K.table.nvars:
        raise ValueError(f"enumerator has {W.nvars} variables, K has {K.table.nvars}")
    return K.substitution()(W).scale(Fraction(1, size_u * size_v))


def enumerator_from_distribution(dist, nvars: int) -> Enumerator:
    return Enumerator(nvars, dict(dist))


def dual_sizes(size_u: int, size_v: int, n: int, q: int) -> tuple[int, int]:
    return q**n // size_u, q**n // size_v

"""Orbits of the scalar action of F_q^* on F_q^2 and second-order weights."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .gf import FieldSpec

E00, E01, E10 = 0, 1, 2


@dataclass(frozen=True, eq=False)
class OrbitTable:
    """The q+2 orbits of ``c*(u, v)`` (c nonzero) on F_q^2, in canonical order.

    Index 0 is {(0,0)}, 1 is the orbit of (0,1), 2 the orbit of (1,0), then
    the orbits of (1,a) for a = 1..q-1.  ``lookup[u*q + v]`` gives the orbit
    index of the pair (u, v).
    """

    field: FieldSpec
    reps: tuple[tuple[int, int], ...] = field(init=False)
    members: tuple[tuple[tuple[int, int], ...], ...] = field(init=False)
    lookup: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        F = self.field
        q = F.q
        reps = [(0, 0), (0, 1), (1, 0)] + [(1, a) for a in F.nonzero()]
        lookup = np.full(q * q, -1, dtype=np.int64)
        members = []
        for s, (a, b) in enumerate(reps):
            orbit = sorted({(F.mul(c, a), F.mul(c, b)) for c in F.nonzero()})
            for u, v in orbit:
                if lookup[u * q + v] != -1:
                    raise AssertionError("orbits overlap")
                lookup[u * q + v] = s
            members.append(tuple(orbit))
        assert (lookup >= 0).all()
        lookup.setflags(write=False)
        object.__setattr__(self, "reps", tuple(reps))
        object.__setattr__(self, "members", tuple(members))
        object.__setattr__(self, "lookup", lookup)

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def nvars(self) -> int:
        return self.field.q + 2

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(m) for m in self.members)

    @property
    def pi11(self) -> range:
        """Orbits with both components nonzero."""
        return range(3, self.nvars)

    def labels(self) -> list[str]:
        return [f"({a},{b})" for a, b in self.reps]

    def orbit_of(self, u: int, v: int) -> int:
        return int(self.lookup[u * self.q + v])

    def __eq__(self, other):
        return isinstance(other, OrbitTable) and other.field == self.field

    def __hash__(self):
        return hash(("orbits", self.field))


def build_orbit_table(field: FieldSpec) -> OrbitTable:
    return OrbitTable(field)


def _check_lengths(u, v):
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} != {len(v)}")


def sow(u: Sequence[int], v: Sequence[int], table: OrbitTable) -> tuple[int, ...]:
    """Second-order weight: per orbit, the number of positions i with (u_i, v_i) in it."""
    _check_lengths(u, v)
    counts = [0] * table.nvars
    for a, b in zip(u, v):
        counts[table.orbit_of(a, b)] += 1
    return tuple(counts)


def independent_from_sow(i: Sequence[int]) -> bool:
    """True iff more than one orbit other than {(0,0)} is hit, i.e. the pair is linearly independent."""
    return sum(1 for c in i[1:] if c > 0) > 1


def joint_weight(u: Sequence[int], v: Sequence[int]) -> tuple[int, int, int, int]:
    """The coarser 4-tuple (w00, w10, w01, w11) by zero/nonzero pattern."""
    _check_lengths(u, v)
    w = {(0, 0): 0, (1, 0): 0, (0, 1): 0, (1, 1): 0}
    for a, b in zip(u, v):
        w[(int(a != 0), int(b != 0))] += 1
    return w[(0, 0)], w[(1, 0)], w[(0, 1)], w[(1, 1)]


def compositions(n: int, parts: int):
    """All tuples of ``parts`` nonnegative integers summing to ``n``, in descending lexicographic order."""
    if parts == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in compositions(n - first, parts - 1):
            yield (first,) + rest

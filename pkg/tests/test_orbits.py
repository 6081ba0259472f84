import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sowdist.gf import field_of_order
from sowdist.orbits import build_orbit_table, compositions, independent_from_sow, joint_weight, sow


def test_q3_representatives(tables):
    assert tables[3].reps == ((0, 0), (0, 1), (1, 0), (1, 1), (1, 2))


def test_q2_singletons(tables):
    assert tables[2].sizes == (1, 1, 1, 1)


def test_q4_sizes(tables):
    assert tables[4].sizes == (1, 3, 3, 3, 3, 3)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 8, 9])
def test_partition(q, tables):
    t = tables[q]
    F = t.field
    assert sum(t.sizes) == q * q
    members = [m for orb in t.members for m in orb]
    assert sorted(members) == sorted(itertools.product(range(q), repeat=2))
    for s, rep in enumerate(t.reps):
        first = next((c for c in rep if c), 1)
        assert first == 1
        for a in F.nonzero():
            assert t.orbit_of(F.mul(a, rep[0]), F.mul(a, rep[1])) == s


def test_sow_examples(tables):
    t = tables[3]
    assert sow((1, 2, 0), (2, 1, 0), t) == (1, 0, 0, 0, 2)
    assert sow((1, 1, 0), (2, 1, 0), t) == (1, 0, 0, 1, 1)
    assert sow((0,) * 4, (0,) * 4, t) == (4, 0, 0, 0, 0)


def test_independence_and_joint_weight(tables):
    t = tables[3]
    assert not independent_from_sow(sow((1, 2, 0), (2, 1, 0), t))
    assert independent_from_sow(sow((1, 1, 0), (2, 1, 0), t))
    assert not independent_from_sow((3, 0, 0, 0, 0))
    assert joint_weight((1, 2, 0), (2, 1, 0)) == (1, 0, 0, 2)
    assert joint_weight((1, 1, 0), (2, 1, 0)) == (1, 0, 0, 2)
    assert joint_weight((0, 0), (0, 0)) == (2, 0, 0, 0)


def test_length_mismatch(tables):
    with pytest.raises(ValueError):
        sow((1, 0), (1,), tables[2])


def test_compositions():
    got = list(compositions(3, 2))
    assert got == [(3, 0), (2, 1), (1, 2), (0, 3)]
    assert len(list(compositions(4, 5))) == 70


@given(st.sampled_from([2, 3, 4, 5]), st.data())
def test_sow_properties(q, data):
    F = field_of_order(q)
    t = build_orbit_table(F)
    n = data.draw(st.integers(1, 6))
    vec = st.lists(st.integers(0, q - 1), min_size=n, max_size=n)
    u, v = data.draw(vec), data.draw(vec)
    a = data.draw(st.integers(1, q - 1))
    perm = data.draw(st.permutations(range(n)))
    i = sow(u, v, t)
    assert sum(i) == n
    # invariant under a common nonzero scalar and a common permutation
    assert sow([F.mul(a, x) for x in u], [F.mul(a, x) for x in v], t) == i
    assert sow([u[p] for p in perm], [v[p] for p in perm], t) == i
    # the joint weight is a coarsening of the sow vector
    pi11 = sum(i[s] for s in t.pi11)
    assert joint_weight(u, v) == (i[0], i[2], i[1], pi11)
    # independence read off the sow vector agrees with a direct rank test
    dep = not any(u) or not any(v) or any(
        all(F.mul(c, x) == y for x, y in zip(u, v)) for c in F.nonzero()
    )
    assert independent_from_sow(i) == (not dep)

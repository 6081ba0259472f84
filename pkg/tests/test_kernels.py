import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sowdist import _pykernels, kernels
from sowdist.gf import field_of_order
from sowdist.orbits import build_orbit_table, sow

try:
    from sowdist import _kernels
except ImportError:  # extension not built
    _kernels = None

needs_ext = pytest.mark.skipif(_kernels is None, reason="compiled extension not built")


def _keys_reference(U, V, t, weights):
    return np.array([sum(int(weights[s]) * c for s, c in enumerate(sow(u, v, t))) for u in U for v in V])


@given(st.sampled_from([2, 3, 4, 5]), st.data())
def test_fallback_sow_keys_match_definition(q, data):
    t = build_orbit_table(field_of_order(q))
    n = data.draw(st.integers(1, 5))
    rows = st.lists(st.lists(st.integers(0, q - 1), min_size=n, max_size=n), min_size=1, max_size=6)
    U, V = np.array(data.draw(rows)), np.array(data.draw(rows))
    w = np.array([(n + 1) ** s for s in range(t.nvars)], dtype=np.int64)
    got = _pykernels.sow_keys(U, V, t.lookup, q, w)
    assert (np.asarray(got) == _keys_reference(U.tolist(), V.tolist(), t, w)).all()


@needs_ext
@given(st.sampled_from([2, 3, 4, 8]), st.data())
def test_backends_agree_on_sow_keys(q, data):
    t = build_orbit_table(field_of_order(q))
    n = data.draw(st.integers(1, 6))
    seed = data.draw(st.integers(0, 2**32))
    rng = np.random.default_rng(seed)
    U = rng.integers(0, q, size=(data.draw(st.integers(1, 40)), n))
    V = rng.integers(0, q, size=(data.draw(st.integers(1, 40)), n))
    w = np.array([(n + 1) ** s for s in range(t.nvars)], dtype=np.int64)
    a = np.asarray(_kernels.sow_keys(U, V, t.lookup, q, w))
    b = np.asarray(_pykernels.sow_keys(U, V, t.lookup, q, w))
    assert (a == b).all()


@needs_ext
@given(
    st.dictionaries(st.integers(0, 500), st.integers(-50, 50), max_size=12),
    st.dictionaries(st.integers(0, 500), st.integers(-50, 50), max_size=12),
)
def test_backends_agree_on_poly_mul(a, b):
    args = (list(a), list(a.values()), list(b), list(b.values()))
    assert dict(_kernels.poly_mul(*args)) == dict(_pykernels.poly_mul(*args))


def test_poly_mul_big_coefficients():
    big = 10**40
    out = dict(_pykernels.poly_mul([0, 1], [big, 1], [0], [big]))
    assert out == {0: big * big, 1: big}
    out = dict(kernels.poly_mul([0, 1], [big, 1], [0], [big]))
    assert out == {0: big * big, 1: big}


def test_backend_flag():
    assert kernels.BACKEND in ("cython", "python")


def test_pure_switch_selects_fallback():
    code = "from sowdist import kernels; print(kernels.BACKEND)"
    env = dict(os.environ, SOWDIST_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"

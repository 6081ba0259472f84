"""Reference implementations of the hot kernels (numpy / plain Python).

These are used when the compiled ``_kernels`` extension is unavailable, or
when ``SOWDIST_PURE=1`` is set.  The compiled versions must agree with these
bit for bit.
"""

import numpy as np

# rows of U processed per block, to bound the (rows, |V|, n) temporary
_BLOCK_ELEMS = 1 << 22


def sow_keys(U, V, lookup, q, weights):
    """Packed second-order weight of every pair (U[a], V[b]), row-major in (a, b).

    ``weights[s]`` is the packing weight of orbit ``s`` (a power of the radix),
    so a pair's key is the sum of ``weights[orbit(u_i, v_i)]`` over positions.
    """
    U = np.ascontiguousarray(U, dtype=np.int64)
    V = np.ascontiguousarray(V, dtype=np.int64)
    weights = np.asarray(weights, dtype=np.int64)
    lookup = np.asarray(lookup, dtype=np.int64)
    a, n = U.shape
    b = V.shape[0]
    out = np.empty(a * b, dtype=np.int64)
    if a == 0 or b == 0:
        return out
    step = max(1, _BLOCK_ELEMS // max(1, b * max(n, 1)))
    wl = weights[lookup]
    Vq = V
    for start in range(0, a, step):
        blk = U[start:start + step] * q
        keys = wl[blk[:, None, :] + Vq[None, :, :]].sum(axis=2)
        out[start * b:(start + blk.shape[0]) * b] = keys.ravel()
    return out


def poly_mul(keys_a, coefs_a, keys_b, coefs_b):
    """Product of two packed sparse polynomials with integer coefficients."""
    out = {}
    get = out.get
    for kb, cb in zip(keys_b, coefs_b):
        for ka, ca in zip(keys_a, coefs_a):
            k = ka + kb
            out[k] = get(k, 0) + ca * cb
    return {k: c for k, c in out.items() if c}

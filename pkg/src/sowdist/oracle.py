"""Brute-force and Monte Carlo verification of the closed forms.

Nothing here builds enumerators through the closed-form routines: exact
oracles enumerate codes, maps and matrices directly and tally second-order
weights pair by pair.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import kernels
from .errors import InfeasibleError
from .gf import FieldSpec
from .ldpc import EnsembleDistribution, EnsembleSpec
from .linalg import (
    LinearCode,
    MatrixGF,
    all_monomial_maps,
    make_rng,
    monomial_map_count,
    nullspace_from_rref,
    rref,
    sow_distribution,
    span_words,
    unpack_key,
)
from .macwilliams import build_k_matrix, transform
from .orbits import OrbitTable, build_orbit_table, sow
from .poly import Enumerator, format_fraction

DEFAULT_CONFIG_LIMIT = 1_000_000


def report(check: str, params: dict, max_abs_error, status: bool | str, **extra) -> dict:
    if isinstance(status, bool):
        status = "pass" if status else "fail"
    err = str(Fraction(max_abs_error)) if isinstance(max_abs_error, (Fraction, int)) else repr(float(max_abs_error))
    return {"check": check, "params": params, "max_abs_error": err, "status": status, **extra}


def max_abs_diff(a: Enumerator, b: Enumerator) -> Fraction:
    keys = set(a.terms) | set(b.terms)
    return max((abs(a.coefficient(k) - b.coefficient(k)) for k in keys), default=Fraction(0))


# monomial-map probabilities


def lemma4_exact(U: LinearCode, V: LinearCode, u: Sequence[int], v: Sequence[int], table: OrbitTable, limit: int = DEFAULT_CONFIG_LIMIT):
    """(P{u in xi(U), v in xi(V)} over all monomial maps xi, A_sow(U,V) / A_sow(F^n,F^n))."""
    F = table.field
    n = len(u)
    nmaps = monomial_map_count(n, F.q)
    if nmaps > limit or F.q ** (2 * n) > limit:
        raise InfeasibleError(f"{nmaps} monomial maps exceed limit {limit}")
    Uset = {tuple(w) for w in U.codewords().tolist()}
    Vset = {tuple(w) for w in V.codewords().tolist()}
    hits = 0
    for xi in all_monomial_maps(n, F):
        # xi^{-1}(w)_j = c_{sigma(j)}^{-1} w_{sigma(j)}
        pre_u = tuple(F.div(u[xi.perm[j]], xi.scalars[xi.perm[j]]) for j in range(n))
        if pre_u not in Uset:
            continue
        pre_v = tuple(F.div(v[xi.perm[j]], xi.scalars[xi.perm[j]]) for j in range(n))
        if pre_v in Vset:
            hits += 1
    lhs = Fraction(hits, nmaps)
    i = sow(u, v, table)
    num = sum(1 for a in Uset for b in Vset if sow(a, b, table) == i)
    everything = list(itertools.product(range(F.q), repeat=n))
    den = sum(1 for a in everything for b in everything if sow(a, b, table) == i)
    return lhs, Fraction(num, den)


def monomial_probability_scan(U: LinearCode, V: LinearCode, table: OrbitTable, limit: int = DEFAULT_CONFIG_LIMIT) -> tuple[Fraction, int]:
    """Largest |lhs - rhs| of :func:`lemma4_exact` over every (u, v) in F_q^n x F_q^n, and the pair count."""
    F = table.field
    n = U.n
    nmaps = monomial_map_count(n, F.q)
    Uw, Vw = U.codewords(), V.codewords()
    if nmaps * len(Uw) * len(Vw) > limit * 16 or F.q ** (2 * n) > limit:
        raise InfeasibleError("monomial-map scan exceeds limit")
    hits: dict[tuple, int] = {}
    for xi in all_monomial_maps(n, F):
        imgU = [tuple(r) for r in xi.apply_rows(F, Uw).tolist()]
        imgV = [tuple(r) for r in xi.apply_rows(F, Vw).tolist()]
        for a in imgU:
            for b in imgV:
                hits[(a, b)] = hits.get((a, b), 0) + 1
    A = sow_distribution(U, V, table)
    space = np.array(list(itertools.product(range(F.q), repeat=n)), dtype=np.int64).reshape(-1, n)
    full = sow_distribution(space, space, table, limit=limit)
    worst = Fraction(0)
    for a in space.tolist():
        for b in space.tolist():
            i = sow(a, b, table)
            lhs = Fraction(hits.get((tuple(a), tuple(b)), 0), nmaps)
            rhs = Fraction(A.get(i, 0), full[i])
            worst = max(worst, abs(lhs - rhs))
    return worst, len(space) ** 2


# LDPC ensembles


def _check_rows_I(F: FieldSpec, d: int, n: int, scalars, perm) -> np.ndarray:
    H = np.zeros((n // d, n), dtype=np.int64)
    inv = [0] * n
    for i, s in enumerate(perm):
        inv[s] = i
    for j in range(n):
        H[j // d, inv[j]] = scalars[j]
    return H


def _check_rows_II(F: FieldSpec, c: int, d: int, n: int, scalars, perm) -> np.ndarray:
    N = c * n
    H = np.zeros((N // d, n), dtype=np.int64)
    inv = [0] * N
    for i, s in enumerate(perm):
        inv[s] = i
    for j in range(N):
        t = inv[j] // c
        H[j // d, t] = F.add(int(H[j // d, t]), scalars[j])
    return H


def kernel_words(F: FieldSpec, H: np.ndarray, n: int, limit: int) -> np.ndarray:
    R, piv = rref(F, H)
    N = nullspace_from_rref(F, R.reshape(len(piv), n), piv, n)
    return span_words(F, N, n, limit)


def ldpc_exact_expectation(spec: EnsembleSpec, limit: int = DEFAULT_CONFIG_LIMIT, table: OrbitTable | None = None) -> EnsembleDistribution:
    """E[A_i(C, C)] by enumerating every monomial-map configuration of the ensemble."""
    F, c, d, n = spec.field, spec.c, spec.d, spec.n
    table = table or build_orbit_table(F)
    if spec.kind == "I":
        total = monomial_map_count(n, F.q) ** c
    else:
        total = monomial_map_count(c * n, F.q)
    if total > limit:
        raise InfeasibleError(f"{total} configurations exceed limit {limit}")

    # distinct parity-check blocks with multiplicities
    blocks: dict[bytes, list] = {}
    if spec.kind == "I":
        for xi in all_monomial_maps(n, F):
            H = _check_rows_I(F, d, n, xi.scalars, xi.perm)
            blocks.setdefault(H.tobytes(), [H, 0])[1] += 1
        combos = []
        for choice in itertools.product(list(blocks.values()), repeat=c):
            mult = math.prod(b[1] for b in choice)
            combos.append((np.vstack([b[0] for b in choice]), mult))
    else:
        for xi in all_monomial_maps(c * n, F):
            H = _check_rows_II(F, c, d, n, xi.scalars, xi.perm)
            blocks.setdefault(H.tobytes(), [H, 0])[1] += 1
        combos = [(H, mult) for H, mult in blocks.values()]

    acc: dict[tuple[int, ...], int] = {}
    cache: dict[bytes, dict] = {}
    for H, mult in combos:
        R, piv = rref(F, H)
        key = R.tobytes() + bytes(piv)
        dist = cache.get(key)
        if dist is None:
            W = kernel_words(F, H, n, limit)
            dist = cache[key] = sow_distribution(W, W, table, limit=limit * 16)
        for i, cnt in dist.items():
            acc[i] = acc.get(i, 0) + cnt * mult
    values = {i: Fraction(v, total) for i, v in sorted(acc.items())}
    return EnsembleDistribution(spec, values)


def sample_parity_check(spec: EnsembleSpec, rng: np.random.Generator) -> np.ndarray:
    F, c, d, n = spec.field, spec.c, spec.d, spec.n
    if spec.kind == "I":
        blocks = []
        for _ in range(c):
            perm = rng.permutation(n).tolist()
            scalars = rng.integers(1, F.q, size=n).tolist()
            blocks.append(_check_rows_I(F, d, n, scalars, perm))
        return np.vstack(blocks)
    perm = rng.permutation(c * n).tolist()
    scalars = rng.integers(1, F.q, size=c * n).tolist()
    return _check_rows_II(F, c, d, n, scalars, perm)


@dataclass
class MonteCarloResult:
    spec: EnsembleSpec
    trials: int
    seed: int
    sums: dict[tuple[int, ...], int] = field(default_factory=dict)
    sumsq: dict[tuple[int, ...], int] = field(default_factory=dict)
    mass_sum: int = 0
    mass_sumsq: int = 0

    def mean(self, i) -> float:
        return self.sums.get(tuple(i), 0) / self.trials

    def se(self, i) -> float:
        return _se(self.sums.get(tuple(i), 0), self.sumsq.get(tuple(i), 0), self.trials)

    def mass_mean(self) -> float:
        return self.mass_sum / self.trials

    def mass_se(self) -> float:
        return _se(self.mass_sum, self.mass_sumsq, self.trials)


def _se(s: int, ss: int, t: int) -> float:
    if t < 2:
        return 0.0
    var = Fraction(ss * t - s * s, t * t * (t - 1))  # unbiased sample variance / t
    return math.sqrt(var) if var > 0 else 0.0


def _mc_chunk(spec: EnsembleSpec, table: OrbitTable, seed: int, start: int, stop: int, word_limit: int):
    F, n = spec.field, spec.n
    radix = n + 1
    weights = np.array([radix**s for s in range(table.nvars)], dtype=np.int64)
    sums: dict[int, int] = {}
    sumsq: dict[int, int] = {}
    mass = [0, 0]
    for t in range(start, stop):
        rng = make_rng(seed, t)
        H = sample_parity_check(spec, rng)
        W = kernel_words(F, H, n, word_limit)
        keys = kernels.sow_keys(W, W, table.lookup, F.q, weights)
        uniq, counts = np.unique(keys, return_counts=True)
        for k, cnt in zip(uniq.tolist(), counts.tolist()):
            sums[k] = sums.get(k, 0) + cnt
            sumsq[k] = sumsq.get(k, 0) + cnt * cnt
        m = len(W) ** 2
        mass[0] += m
        mass[1] += m * m
    return sums, sumsq, mass


def monte_carlo_ldpc(spec: EnsembleSpec, trials: int, seed: int, threads: int = 1, word_limit: int = 1 << 14, table: OrbitTable | None = None) -> MonteCarloResult:
    """Per-index sample mean and standard error of A_i(C, C) over sampled codes.

    Trial t draws from its own generator keyed by (seed, t), so any prefix of
    trials reproduces regardless of ``threads``.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    table = table or build_orbit_table(spec.field)
    if (spec.n + 1) ** table.nvars >= 1 << 62:
        raise InfeasibleError("sow keys do not fit in 64 bits")
    threads = max(1, int(threads))
    nchunks = max(1, min(trials, threads * 4))
    bounds = [trials * k // nchunks for k in range(nchunks + 1)]
    jobs = [(spec, table, seed, bounds[k], bounds[k + 1], word_limit) for k in range(nchunks)]
    if threads == 1:
        parts = [_mc_chunk(*j) for j in jobs]
    else:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(lambda j: _mc_chunk(*j), jobs))
    res = MonteCarloResult(spec, trials, seed)
    radix, nv = spec.n + 1, table.nvars
    sums: dict[int, int] = {}
    sumsq: dict[int, int] = {}
    for s, ss, mass in parts:
        for k, v in s.items():
            sums[k] = sums.get(k, 0) + v
        for k, v in ss.items():
            sumsq[k] = sumsq.get(k, 0) + v
        res.mass_sum += mass[0]
        res.mass_sumsq += mass[1]
    for k in sorted(sums):
        i = unpack_key(k, radix, nv)
        res.sums[i] = sums[k]
        res.sumsq[i] = sumsq[k]
    res.sums = dict(sorted(res.sums.items()))
    res.sumsq = dict(sorted(res.sumsq.items()))
    return res


def integer_se_floor(mu: Fraction, trials: int) -> float:
    """Smallest possible standard error of the mean of an integer-valued variable with mean ``mu``."""
    f = mu - math.floor(mu)
    return math.sqrt(f * (1 - f) / trials)


def compare_monte_carlo(mc: MonteCarloResult, dist: EnsembleDistribution, z: float = 5.0) -> dict:
    """Check every index (and the total mass) lies within ``z`` standard errors.

    The standard error used is the sample one, but never below the minimum a
    nonnegative integer-valued variable with the analytic mean can have;
    this only matters for rare indices that were never observed.
    """
    worst = 0.0
    failures = []
    keys = sorted(set(mc.sums) | set(dist.values))
    for i in keys:
        mu = dist[i]
        se = max(mc.se(i), integer_se_floor(mu, mc.trials))
        dev = abs(mc.mean(i) - float(mu))
        score = dev / se if se > 0 else (0.0 if dev == 0 else math.inf)
        worst = max(worst, score)
        if score > z:
            failures.append({"i": list(i), "analytic": float(mu), "mean": mc.mean(i), "se": se})
    mu_mass = dist.total()
    se_mass = max(mc.mass_se(), integer_se_floor(mu_mass, mc.trials))
    mass_dev = abs(mc.mass_mean() - float(mu_mass))
    mass_score = mass_dev / se_mass if se_mass > 0 else (0.0 if mass_dev == 0 else math.inf)
    if mass_score > z:
        failures.append({"i": "total", "analytic": float(mu_mass), "mean": mc.mass_mean(), "se": se_mass})
    return {
        "indices": len(keys),
        "max_z": max(worst, mass_score),
        "mass_z": mass_score,
        "failures": failures,
        "pass": not failures,
    }


# character identities


def character_checks(F: FieldSpec, V: LinearCode, vprime: Sequence[int], pairs: Sequence | None = None, table: OrbitTable | None = None):
    """Residuals of the indicator/character-average identity and of the
    character-sum form of (xK)^sow(u,v), in floating point.

    ``pairs`` lists the (u, v) to test for the second identity; by default all
    of F_q^n x F_q^n.
    """
    n = V.n
    table = table or build_orbit_table(F)
    if F.q ** (2 * n) > 20_000:
        raise InfeasibleError("character checks need q^(2n) <= 20000")
    chi = np.array([F.character(a) for a in range(F.q)])

    def dot(a, b):
        acc = 0
        for x, y in zip(a, b):
            acc = F.add(acc, F.mul(x, y))
        return acc

    words = [tuple(w) for w in V.codewords().tolist()]
    avg = sum(chi[dot(w, vprime)] for w in words) / len(words)
    indicator = 1.0 if all(dot(w, vprime) == 0 for w in words) else 0.0
    ind_res = abs(indicator - avg)

    space = list(itertools.product(range(F.q), repeat=n))
    N = len(space)
    D = np.array([[dot(a, b) for b in space] for a in space], dtype=np.int64)
    sub = build_k_matrix(table).substitution()
    # sow key of every (u', v')
    radix = n + 1
    weights = np.array([radix**s for s in range(table.nvars)], dtype=np.int64)
    S = np.array(space, dtype=np.int64).reshape(N, n)
    keys = kernels.sow_keys(S, S, table.lookup, F.q, weights).reshape(N, N)
    uniq, inverse = np.unique(keys, return_inverse=True)
    inverse = inverse.reshape(N, N)
    if pairs is None:
        pairs = [(a, b) for a in range(N) for b in range(N)]
    else:
        index = {w: t for t, w in enumerate(space)}
        pairs = [(index[tuple(a)], index[tuple(b)]) for a, b in pairs]
    exp_res = 0.0
    for a, b in pairs:
        vals = chi[F.add_table[D[a][:, None], D[b][None, :]]]
        poly = np.zeros(len(uniq), dtype=complex)
        np.add.at(poly, inverse.ravel(), vals.ravel())
        exact = sub.image(sow(space[a], space[b], table))
        expect = np.zeros(len(uniq), dtype=complex)
        pos = {int(k): t for t, k in enumerate(uniq.tolist())}
        extra = 0.0
        for exp, c in exact.terms.items():
            k = sum(e * radix**s for s, e in enumerate(exp))
            if k in pos:
                expect[pos[k]] = float(c)
            else:
                extra = max(extra, abs(float(c)))
        exp_res = max(exp_res, float(np.max(np.abs(poly - expect))), extra)
    return ind_res, exp_res


# MacWilliams


def macwilliams_brute(U: LinearCode, V: LinearCode, table: OrbitTable) -> tuple[Enumerator, Enumerator]:
    """(transform of the enumerated W_{U,V}, directly enumerated W_{U-perp, V-perp})."""
    nv = table.nvars
    W = Enumerator(nv, sow_distribution(U, V, table))
    transformed = transform(W, U.size, V.size, build_k_matrix(table))
    direct = Enumerator(nv, sow_distribution(U.dual(), V.dual(), table))
    return transformed, direct


# exhaustive averages over uniform matrices


def _all_matrices(F: FieldSpec, m: int, n: int, limit: int):
    if F.q ** (m * n) > limit:
        raise InfeasibleError(f"{F.q ** (m * n)} matrices exceed limit {limit}")
    for vals in itertools.product(range(F.q), repeat=m * n):
        yield MatrixGF(F, np.array(vals, dtype=np.int64).reshape(m, n))


def generator_average(F: FieldSpec, m: int, n: int, table: OrbitTable | None = None, limit: int = DEFAULT_CONFIG_LIMIT) -> Enumerator:
    """Average of W_{C,C} / |C|^2 over all generator matrices in F_q^(m x n)."""
    table = table or build_orbit_table(F)
    acc: dict = {}
    count = 0
    cache: dict = {}
    for G in _all_matrices(F, m, n, limit):
        C = LinearCode.from_generator(G)
        if C not in cache:
            cache[C] = {i: Fraction(v, C.size**2) for i, v in sow_distribution(C, C, table).items()}
        for i, v in cache[C].items():
            acc[i] = acc.get(i, 0) + v
        count += 1
    return Enumerator(table.nvars, {i: v / count for i, v in acc.items()})


def parity_average(F: FieldSpec, m: int, n: int, table: OrbitTable | None = None, limit: int = DEFAULT_CONFIG_LIMIT) -> Enumerator:
    """Average of W_{B,B} over kernels B of all matrices in F_q^(m x n)."""
    table = table or build_orbit_table(F)
    acc: dict = {}
    count = 0
    cache: dict = {}
    for H in _all_matrices(F, m, n, limit):
        B = LinearCode.from_parity_check(H)
        if B not in cache:
            cache[B] = sow_distribution(B, B, table)
        for i, v in cache[B].items():
            acc[i] = acc.get(i, 0) + v
        count += 1
    return Enumerator(table.nvars, {i: Fraction(v, count) for i, v in acc.items()})


def kernel_size_moments(F: FieldSpec, m: int, n: int, limit: int = DEFAULT_CONFIG_LIMIT) -> tuple[Fraction, Fraction]:
    """(E|B|, E|B|^2) over kernels of all m x n matrices."""
    sizes = [LinearCode.from_parity_check(H).size for H in _all_matrices(F, m, n, limit)]
    t = len(sizes)
    return Fraction(sum(sizes), t), Fraction(sum(s * s for s in sizes), t)

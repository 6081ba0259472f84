import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from sowdist.errors import InfeasibleError
from sowdist.gf import field_of_order
from sowdist.goodmat import (
    MatrixEnsemble,
    classify_pair,
    corollary1_distribution,
    pair_law_table,
    intersecting_report,
    is_k_good,
    mrd_examples,
    pairwise_probs,
    theorem4_generator,
    theorem4_parity,
    row_operation_uniformity,
)
from sowdist.linalg import MatrixGF
from sowdist.oracle import generator_average, kernel_size_moments, parity_average
from sowdist.poly import Enumerator

F2, F3 = field_of_order(2), field_of_order(3)


def test_mrd_sets():
    A1, A2 = mrd_examples()
    assert len(A1) == 8 and len(A2) == 64
    assert is_k_good(A1, 1) and not is_k_good(A1, 2)
    assert is_k_good(A2, 1) and is_k_good(A2, 2)
    assert set(A1.support) < set(A2.support)


def test_full_ensemble_is_good():
    E = MatrixEnsemble.full(F2, 2, 3)
    assert is_k_good(E, 1) and is_k_good(E, 2)


def test_degenerate_ensembles_are_not_good():
    zero = MatrixEnsemble.from_matrices([MatrixGF.zeros(F2, 2, 2)])
    assert not is_k_good(zero, 1)
    with pytest.raises(ValueError):
        is_k_good(zero, 3)
    with pytest.raises(ValueError):
        MatrixEnsemble.from_matrices([MatrixGF.zeros(F2, 2, 2)] * 2)


def test_parity_small_case_and_all_ones(tables):
    t = tables[2]
    lf = Enumerator.linear_form
    want = (lf([1, 1, 0, 0]) ** 2 + lf([1, 0, 1, 0]) ** 2 + lf([1, 0, 0, 1]) ** 2 + lf([1, 1, 1, 1]) ** 2).scale(Fraction(1, 4))
    W = theorem4_parity(2, 1, 2, t)
    assert W == want
    # average of |kernel|^2 over the four 1 x 2 matrices: (16 + 4 + 4 + 4) / 4
    assert W.evaluate([1] * 4) == 7 == kernel_size_moments(F2, 1, 2)[1]


@pytest.mark.parametrize("q,m,n", [(2, 1, 2), (2, 1, 3), (2, 2, 3), (3, 1, 2)])
def test_good_matrix_enumerators_against_exhaustive_averages(q, m, n, tables):
    t = tables[q]
    assert theorem4_parity(q, m, n, t) == parity_average(t.field, m, n, t)
    assert theorem4_generator(q, m, n, t) == generator_average(t.field, m, n, t)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_generator_normalization(q, tables):
    for n in range(2, 7):
        for m in range(1, n):
            if (q + 2) * n > 40:
                continue
            assert theorem4_generator(q, m, n, tables[q]).evaluate([1] * (q + 2)) == 1


@pytest.mark.parametrize("q,m,n", [(2, 1, 3), (2, 2, 4), (3, 1, 3), (3, 2, 3), (4, 1, 2)])
def test_pairwise_probabilities(q, m, n, tables):
    t = tables[q]
    F = t.field
    W = theorem4_parity(q, m, n, t)
    zero = (0,) * n
    assert pairwise_probs(W, zero, zero, t) == 1
    vecs = list(itertools.product(range(q), repeat=n))
    for u in vecs[1:]:
        assert pairwise_probs(W, u, zero, t) == Fraction(1, q**m)
    for u, v in itertools.islice(itertools.combinations(vecs[1:], 2), 200):
        kind, _ = classify_pair(F, u, v)
        if kind == "independent":
            assert pairwise_probs(W, u, v, t) == Fraction(1, q ** (2 * m))


def test_intersecting_report_q2():
    rec = intersecting_report(2, 3, 16)
    assert abs(rec["rate_bound"] - 0.20751875) < 1e-8
    assert abs(intersecting_report(3, 1, 4)["rate_bound"] - (1 - 0.5 * math.log(5, 3))) < 1e-12
    small = intersecting_report(2, 1, 2)
    assert small["expected_size"] == Fraction(5, 2) == kernel_size_moments(F2, 1, 2)[0]


def test_uniform_pair_law_cases():
    x0, x1, x2 = (0, 0), (1, 0), (0, 1)
    assert classify_pair(F2, x0, x0)[0] == "zero"
    assert classify_pair(F3, x1, (2, 0)) == ("multiple", 2)
    assert classify_pair(F2, x1, x2)[0] == "independent"
    ind = corollary1_distribution(F2, 2, 2, x1, x2)
    assert len(ind) == 16 and set(ind.values()) == {Fraction(1, 16)}
    assert corollary1_distribution(F2, 2, 2, x0, x0) == {((0, 0), (0, 0)): 1}
    mult = corollary1_distribution(F3, 2, 2, x1, (2, 0))
    assert all(yp == tuple(2 * c % 3 for c in y) for y, yp in mult)
    assert mult == pair_law_table(F3, 2, x1, (2, 0))


@pytest.mark.parametrize("m,n", [(2, 2), (2, 3)])
def test_uniform_pair_law_exhaustive(m, n):
    for x in itertools.product(range(2), repeat=m):
        for xp in itertools.product(range(2), repeat=m):
            assert corollary1_distribution(F2, m, n, x, xp) == pair_law_table(F2, n, x, xp)
    assert row_operation_uniformity(F2, m, n)


def test_scan_limits():
    with pytest.raises(InfeasibleError):
        MatrixEnsemble.full(F3, 4, 4, limit=1000)
    with pytest.raises(InfeasibleError):
        row_operation_uniformity(F3, 3, 3, limit=1000)

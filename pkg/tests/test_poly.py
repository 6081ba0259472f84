import itertools
import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sowdist.errors import InfeasibleError
from sowdist.ldpc import binary_g
from sowdist.linalg import LinearCode, repetition_code, sow_distribution, weight_distribution
from sowdist.poly import (
    Enumerator,
    bivariate_projection,
    coefficient,
    complete_enumerator,
    evaluate,
    format_fraction,
    linear_substitute,
    multinomial,
    multiply,
    power,
    second_moment_pair,
    to_fraction,
)


def var(nv, s):
    return Enumerator.variable(nv, s)


def test_multinomial_values():
    assert multinomial(4, (1, 1, 1, 1)) == 24
    assert multinomial(5, (5, 0, 0, 0)) == 1
    assert multinomial(6, (2, 2, 2, 0)) == 90
    with pytest.raises(ValueError):
        multinomial(3, (1, 1))


def test_simple_products_and_powers():
    x00, x01 = var(4, 0), var(4, 1)
    assert multiply(x00, x01) == Enumerator.monomial((1, 1, 0, 0))
    assert power(x00 + x01, 2) == Enumerator(4, {(2, 0, 0, 0): 1, (1, 1, 0, 0): 2, (0, 2, 0, 0): 1})
    A = x00.scale(Fraction(2, 3)) + x01
    assert power(A, 0) == Enumerator.constant(4, 1)
    assert power(A, 1) == A


def test_full_space_product(tables):
    t = tables[3]
    W1 = complete_enumerator(t, 1)
    assert multiply(W1, W1) == complete_enumerator(t, 2)
    assert W1 == Enumerator(5, {(1, 0, 0, 0, 0): 1, (0, 1, 0, 0, 0): 2, (0, 0, 1, 0, 0): 2, (0, 0, 0, 1, 0): 2, (0, 0, 0, 0, 1): 2})


def test_complete_enumerator_small(tables):
    t = tables[2]
    assert complete_enumerator(t, 1) == sum((var(4, s) for s in range(1, 4)), var(4, 0))
    assert complete_enumerator(t, 2).coefficient((1, 1, 0, 0)) == 2
    for q in (2, 3, 4):
        for n in range(4):
            assert evaluate(complete_enumerator(tables[q], n), [1] * (q + 2)) == q ** (2 * n)


def test_repetition_square_matches_brute_force(tables):
    t = tables[2]
    R2 = repetition_code(2, t.field)
    W = Enumerator(4, sow_distribution(R2, R2, t))
    R2R2 = LinearCode(t.field, 4, [[1, 1, 0, 0], [0, 0, 1, 1]])
    assert multiply(W, W) == Enumerator(4, sow_distribution(R2R2, R2R2, t))


def test_coefficients_and_evaluation():
    g2 = binary_g(2)
    assert coefficient(g2, (2, 0, 0, 0)) == 1
    assert coefficient(g2, (1, 0, 0, 1)) == 0
    assert coefficient(Enumerator.constant(4, 1), (0, 0, 0, 0)) == 1
    assert evaluate(Enumerator.monomial((2, 0, 0, 0)), [0, 1, 1, 1]) == 0
    with pytest.raises(ValueError):
        g2.coefficient((1, 1))


def test_linear_substitution_identity_and_diagonal():
    A = Enumerator(3, {(2, 1, 0): Fraction(1, 2), (0, 0, 3): 5})
    eye = [[int(i == j) for j in range(3)] for i in range(3)]
    assert linear_substitute(A, eye) == A
    c = (2, Fraction(1, 3), -1)
    diag = [[c[i] if i == j else 0 for j in range(3)] for i in range(3)]
    mono = Enumerator.monomial((2, 1, 3))
    assert linear_substitute(mono, diag) == mono.scale(4 * Fraction(1, 3) * -1)


def test_bivariate_projection_examples(tables):
    t = tables[2]
    proj = bivariate_projection(complete_enumerator(t, 1), t)
    assert proj == Enumerator(2, {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1})
    assert bivariate_projection(Enumerator.monomial((5, 0, 0, 0)), t) == Enumerator.constant(2, 1)
    C = repetition_code(2, t.field)
    proj = bivariate_projection(Enumerator(4, sow_distribution(C, C, t)), t)
    one_plus = Enumerator(2, {(0, 0): 1, (2, 0): 1})
    other = Enumerator(2, {(0, 0): 1, (0, 2): 1})
    assert proj == one_plus * other


def test_second_moment_pair_examples(tables):
    t = tables[2]
    C = repetition_code(2, t.field)
    dist = sow_distribution(C, C, t)
    assert second_moment_pair(dist, 2, 2, 2, t) == 1
    assert second_moment_pair(dist, 0, 0, 2, t) == dist[(2, 0, 0, 0)]
    full = LinearCode.full(t.field, 2)
    assert second_moment_pair(sow_distribution(full, full, t), 1, 1, 2, t) == 4


def test_json_round_trip_and_canonical_form():
    A = Enumerator(3, {(1, 0, 2): Fraction(-3, 4), (0, 3, 0): 2})
    text = A.to_json()
    assert Enumerator.from_json(text) == A
    obj = json.loads(text)
    assert obj["nvars"] == 3
    assert all("/" in t["coef"] for t in obj["terms"])
    assert Enumerator.from_json(json.dumps(obj)).to_json() == text


def test_rationals():
    assert format_fraction(Fraction(0)) == "0/1"
    assert format_fraction(Fraction(-6, 4)) == "-3/2"
    assert to_fraction("7/21") == Fraction(1, 3)
    with pytest.raises(TypeError):
        to_fraction(0.5)


def test_growth_guard():
    big = Enumerator.linear_form([1] * 9)
    with pytest.raises(InfeasibleError):
        power(big, 60, limit=10_000)


def test_variable_count_mismatch():
    with pytest.raises(ValueError):
        var(3, 0) + var(4, 0)


polys = st.dictionaries(
    st.tuples(*[st.integers(0, 3)] * 3),
    st.fractions(min_value=-20, max_value=20, max_denominator=7),
    max_size=5,
).map(lambda d: Enumerator(3, d))
points = st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=5), min_size=3, max_size=3)


@given(polys, polys, polys)
def test_ring_laws(A, B, C):
    assert A * B == B * A
    assert (A * B) * C == A * (B * C)
    assert A * (B + C) == A * B + A * C
    assert A - A == Enumerator(3)


@given(polys, polys, points)
def test_evaluation_is_a_ring_map(A, B, pt):
    assert evaluate(A * B, pt) == evaluate(A, pt) * evaluate(B, pt)
    assert evaluate(A + B, pt) == evaluate(A, pt) + evaluate(B, pt)


@given(polys, st.integers(0, 4), points)
def test_power_matches_repeated_product(A, k, pt):
    P = Enumerator.constant(3, 1)
    for _ in range(k):
        P = P * A
    assert power(A, k) == P
    assert evaluate(power(A, k), pt) == evaluate(A, pt) ** k


@given(polys, st.lists(st.lists(st.integers(-2, 2), min_size=3, max_size=3), min_size=3, max_size=3), points)
def test_substitution_commutes_with_evaluation(A, M, pt):
    # x_s <- sum_t x_t M[t][s], so evaluating the image at pt equals evaluating A at pt M
    image_pt = [sum(pt[t] * M[t][s] for t in range(3)) for s in range(3)]
    assert evaluate(linear_substitute(A, M), pt) == evaluate(A, image_pt)


@given(polys)
def test_json_round_trip_property(A):
    assert Enumerator.from_json(A.to_json()) == A


def test_projection_factors_on_random_codes(tables):
    import numpy as np

    from sowdist.linalg import random_subspace

    rng = np.random.default_rng(3)
    for q in (2, 3):
        t = tables[q]
        for n in (2, 3):
            U, V = random_subspace(t.field, n, rng), random_subspace(t.field, n, rng)
            proj = bivariate_projection(Enumerator(t.nvars, sow_distribution(U, V, t)), t)
            wu = Enumerator(2, {(w, 0): a for w, a in enumerate(weight_distribution(U, t.field))})
            wv = Enumerator(2, {(0, w): a for w, a in enumerate(weight_distribution(V, t.field))})
            assert proj == wu * wv

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_force_orthogonal, euclid_gcd, rational_rank
from torus_xray.exceptions import DimensionError, InvalidDirectionError
from torus_xray.lattice import (DirectionTuple, dot, enumerate_tuples, integer_rank,
                                is_primitive, kernel_basis, linearly_independent,
                                orthogonal_tuple)

vectors = st.integers(2, 4).flatmap(
    lambda n: st.lists(st.integers(-6, 6), min_size=n, max_size=n))


def test_is_primitive_examples():
    assert is_primitive((1, 0))
    assert not is_primitive((2, 4))
    # Euclid oracle: gcd(gcd(3, 5), 7) == 1
    assert euclid_gcd(euclid_gcd(3, 5), 7) == 1
    assert is_primitive((3, 5, 7))


def test_is_primitive_rejects_zero():
    with pytest.raises(InvalidDirectionError):
        is_primitive((0, 0, 0))


@given(vectors)
def test_is_primitive_symmetric_under_sign_and_permutation(v):
    if not any(v):
        return
    ref = is_primitive(v)
    assert is_primitive([-c for c in v]) == ref
    for perm in itertools.islice(itertools.permutations(v), 6):
        assert is_primitive(perm) == ref


def test_linearly_independent_examples():
    assert linearly_independent([(1, 0), (0, 1)])
    assert not linearly_independent([(1, 2), (2, 4)])
    # third row = first - second
    assert not linearly_independent([(1, 1, 0), (0, 1, 1), (1, 0, -1)])


def test_linearly_independent_dimension_mismatch():
    with pytest.raises(DimensionError):
        linearly_independent([(1, 0), (0, 1, 0)])


@settings(max_examples=60)
@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=1, max_size=4))
def test_integer_rank_matches_rational_elimination(rows):
    assert integer_rank(rows) == rational_rank(rows)


def test_enumerate_tuples_small_case():
    tuples = enumerate_tuples(2, 1, 1)
    assert [A.vectors for A in tuples] == [((0, 1),), ((1, -1),), ((1, 0),), ((1, 1),)]


def test_enumerate_tuples_zero_norm_is_empty():
    assert enumerate_tuples(2, 1, 0) == []


def test_enumerate_tuples_rejects_full_dimension():
    with pytest.raises(DimensionError):
        enumerate_tuples(3, 3, 1)


def test_enumerate_tuples_pairs_are_independent_and_unique():
    tuples = enumerate_tuples(3, 2, 1)
    assert all(linearly_independent(A.vectors) for A in tuples)
    assert len({frozenset(A.vectors) for A in tuples}) == len(tuples)
    assert tuples == sorted(tuples)
    # brute force: sign classes of {-1,0,1}^3 minus 0 number 13; independent pairs
    classes = brute_force_orthogonal((0, 0, 0), 1)
    expected = [p for p in itertools.combinations(classes, 2)
                if rational_rank(p) == 2]
    assert len(tuples) == len(expected)


def test_orthogonal_tuple_examples():
    assert orthogonal_tuple((0, 0), 1).vectors == ((1, 0),)
    # brute-force search over |v| <= 2 finds only the class of (2, -1)
    assert brute_force_orthogonal((1, 2), 2) == [(2, -1)]
    assert orthogonal_tuple((1, 2), 1).vectors == ((2, -1),)
    A = orthogonal_tuple((1, 1, 1), 2)
    assert all(dot(v, (1, 1, 1)) == 0 for v in A)
    assert linearly_independent(A.vectors)


def test_orthogonal_tuple_rejects_bad_d():
    with pytest.raises(DimensionError):
        orthogonal_tuple((1, 2), 2)


@settings(max_examples=200)
@given(vectors, st.data())
def test_orthogonal_tuple_properties(k, data):
    n = len(k)
    d = data.draw(st.integers(1, n - 1))
    A = orthogonal_tuple(k, d)
    assert A.d == d
    assert all(dot(v, k) == 0 for v in A)
    assert linearly_independent(A.vectors)
    assert orthogonal_tuple(k, d) == A  # deterministic


@settings(max_examples=100)
@given(vectors)
def test_kernel_basis_spans_the_kernel_lattice(k):
    if not any(k):
        return
    basis = kernel_basis(k)
    assert len(basis) == len(k) - 1
    assert integer_rank(basis) == len(k) - 1
    # a lattice basis of the primitive kernel: adjoining a vector u with k.u = gcd(k)
    # gives a unimodular matrix, i.e. |det| = 1
    g = 0
    for c in k:
        g = euclid_gcd(g, c)
    u = _bezout_vector(k, g)
    import sympy

    assert abs(sympy.Matrix(basis + [u]).det()) == 1


def _bezout_vector(k, g):
    # brute force small u with k.u = g
    n = len(k)
    for r in range(1, 8):
        for u in itertools.product(range(-r, r + 1), repeat=n):
            if dot(u, k) == g:
                return list(u)
    raise AssertionError("no Bezout vector found")


def test_direction_tuple_validation():
    with pytest.raises(InvalidDirectionError):
        DirectionTuple.of([(1, 2), (-1, -2)])
    with pytest.raises(InvalidDirectionError):
        DirectionTuple.of([(1, 0, 0), (2, 0, 0)])
    assert DirectionTuple.of([(0, -1, 0), (-1, 1, 0)]).vectors == ((0, 1, 0), (1, -1, 0))

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import direct_sum
from torus_xray.exceptions import AliasingError, TorusXrayError
from torus_xray.spectral import (GridFunction, TrigPolynomial, evaluate, fejer_reconstruct,
                                 from_grid, grid_points, make_phantom, sobolev_norm, to_grid)

seeds = st.integers(0, 2 ** 31 - 1)


def test_evaluate_characters():
    assert evaluate(TrigPolynomial.character((0, 0)), (0.3, 0.9)) == 1
    assert abs(evaluate(TrigPolynomial.character((1, 0)), (0.25, 0.7)) - 1j) < 1e-15


@settings(max_examples=25)
@given(seeds)
def test_evaluate_matches_direct_summation(seed):
    rng = np.random.default_rng(seed)
    f = make_phantom(2, 3, "random-complex", seed)
    x = rng.random(2)
    assert abs(evaluate(f, x) - direct_sum(f.as_dict(), x)) < 1e-12


@settings(max_examples=25)
@given(seeds, st.integers(0, 2))
def test_evaluate_is_periodic(seed, j):
    f = make_phantom(3, 2, "random-complex", seed)
    x = np.random.default_rng(seed).random(3)
    shifted = x.copy()
    shifted[j] += 1.0
    assert abs(evaluate(f, x) - evaluate(f, shifted)) < 1e-12


def test_grid_round_trip_single_mode():
    f = TrigPolynomial.character((1, 1))
    g = from_grid(to_grid(f, 5), 1)
    assert g.max_abs_diff(f) < 1e-15


def test_constant_grid_gives_zero_mode():
    g = from_grid(GridFunction(2, 6, np.ones((6, 6), dtype=complex)), 2)
    assert abs(g.coefficient((0, 0)) - 1) < 1e-15
    assert np.abs(g.drop_zeros(1e-15).values).size == 1


@pytest.mark.parametrize("n", [1, 2, 3])
def test_grid_round_trip_random(n):
    f = make_phantom(n, 3, "random-complex", 11)
    assert from_grid(to_grid(f, 7), 3).max_abs_diff(f) < 1e-12


def test_to_grid_matches_pointwise_evaluation():
    f = make_phantom(2, 2, "random-complex", 2)
    g = to_grid(f, 6)
    np.testing.assert_allclose(g.samples.reshape(-1), evaluate(f, grid_points(2, 6)),
                               atol=1e-12)


def test_aliasing_rejected():
    f = make_phantom(2, 3, "random-complex", 0)
    with pytest.raises(AliasingError):
        to_grid(f, 6)
    with pytest.raises(AliasingError):
        from_grid(GridFunction(2, 6, np.zeros((6, 6))), 3)


@settings(max_examples=20)
@given(seeds, st.integers(5, 9))
def test_parseval(seed, N):
    f = make_phantom(2, 2, "random-complex", seed)
    g = to_grid(f, N)
    lhs = sobolev_norm(f, 0.0) ** 2
    rhs = np.sum(np.abs(g.samples) ** 2) / N ** 2
    assert abs(lhs - rhs) <= 1e-10 * lhs


def test_fejer_examples():
    e0 = TrigPolynomial.character((0, 0))
    assert fejer_reconstruct(e0, 3).max_abs_diff(e0) == 0
    out = fejer_reconstruct({(1, 0): 1.0}, 2)
    assert out.coefficient((1, 0)) == 0.5
    assert out.K == 1


def test_fejer_rejects_order_zero():
    with pytest.raises(TorusXrayError):
        fejer_reconstruct({(0, 0): 1.0}, 0)


@settings(max_examples=20)
@given(seeds, st.integers(1, 6))
def test_fejer_never_increases_l2_norm(seed, N):
    f = make_phantom(2, 4, "random-complex", seed)
    assert sobolev_norm(fejer_reconstruct(f, N), 0) <= sobolev_norm(f, 0) + 1e-12


def test_fejer_sup_error_decreases_for_bump():
    f = make_phantom(2, 8, "separable-bump", 3)
    fine = to_grid(f, 64).samples
    errs = [np.abs(to_grid(fejer_reconstruct(f, N), 64).samples - fine).max()
            for N in (4, 8, 16, 32)]
    assert all(a > b for a, b in zip(errs, errs[1:]))


def test_sobolev_examples():
    assert sobolev_norm(TrigPolynomial.character((0, 0)), 3.7) == 1
    assert sobolev_norm(TrigPolynomial.character((1, 0)), 0.0) == 1
    f = TrigPolynomial.from_dict(2, {(1, 0): 1, (0, 2): 1})
    # (1 + 1)^1 + (1 + 4)^1 = 7
    assert abs(sobolev_norm(f, 1.0) - math.sqrt(7)) < 1e-15


def test_phantom_real_is_real():
    f = make_phantom(2, 3, "random-real", 5)
    x = np.random.default_rng(0).random((100, 2))
    assert np.abs(evaluate(f, x).imag).max() < 1e-12
    assert f.max_abs_diff(f.conj_reflect()) == 0


def test_phantom_determinism_and_count():
    a = make_phantom(2, 2, "random-complex", 42)
    b = make_phantom(2, 2, "random-complex", 42)
    assert a.as_dict() == b.as_dict()
    assert len(a) == 25 and np.all(a.values != 0)


def test_phantom_bump_peaks_at_one():
    f = make_phantom(2, 8, "separable-bump", 1)
    samples = to_grid(f, 128).samples
    assert abs(samples.real.max() - 1) < 0.05
    assert np.abs(samples.imag).max() < 1e-12
    assert samples.real.min() > -1e-12  # product of Fejer kernels is nonnegative


def test_phantom_unknown_kind():
    with pytest.raises(TorusXrayError):
        make_phantom(2, 2, "gaussian", 0)


def test_algebra_absent_means_zero():
    f = TrigPolynomial.from_dict(2, {(1, 0): 2.0})
    g = TrigPolynomial.from_dict(2, {(1, 0): 2.0, (0, 1): 0.0})
    assert f.max_abs_diff(g) == 0
    h = f + TrigPolynomial.from_dict(2, {(0, -1): 1j})
    assert h.coefficient((0, -1)) == 1j and h.coefficient((1, 0)) == 2
    assert (h - h).max_abs_diff(TrigPolynomial.zero(2)) == 0


def test_keys_are_canonically_sorted():
    f = TrigPolynomial.from_dict(2, {(1, 0): 1, (-1, 2): 1, (0, -1): 1, (-1, -2): 1})
    assert [tuple(k) for k in f.keys] == sorted(f.as_dict())


def test_band_enforced():
    with pytest.raises(AliasingError):
        TrigPolynomial.from_dict(2, {(3, 0): 1}, K=2)

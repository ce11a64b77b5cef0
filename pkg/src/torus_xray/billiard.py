"""Periodic broken rays (billiard trajectories) in a rectangular box.

After rescaling every side to 1/2, the box is [0, 1/2]^n and the fold

    zeta(x) = (|x_1|, ..., |x_n|),   x in [-1/2, 1/2)^n = T^n,

maps each straight periodic geodesic of the torus onto a periodic billiard
trajectory.  A function f on the box therefore lifts to the even function
f o zeta on the torus, and billiard integrals of f are torus X-ray integrals
of the lift.  Tensor fields lift the same way, with each index picking up the
sign of the corresponding coordinate (the Jacobian of zeta).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .exceptions import DimensionError, TorusXrayError
from .lattice import DirectionTuple, as_vector
from .spectral import GridFunction, TrigPolynomial, evaluate, from_grid
from .tensor import SymmetricTensorField, evaluate_field, exponent
from .xray import RadonData, invert

WALL_TOL = 1e-12


@dataclass(frozen=True)
class Box:
    """Rectangular box prod_i [0, L_i]."""

    L: tuple[float, ...]

    def __post_init__(self):
        L = tuple(float(x) for x in self.L)
        if not L or any(x <= 0 for x in L):
            raise TorusXrayError(f"box side lengths must be positive, got {L}")
        object.__setattr__(self, "L", L)

    @property
    def n(self) -> int:
        return len(self.L)


def normalize(box: Box, x, v) -> tuple[np.ndarray, np.ndarray]:
    """Rescale a point and direction of ``box`` to the box [0, 1/2]^n."""
    x = np.asarray(x, dtype=float)
    v = np.asarray(v, dtype=float)
    L = np.array(box.L)
    if x.shape[-1] != box.n or v.shape[-1] != box.n:
        raise DimensionError(f"expected {box.n}-dimensional point and direction")
    if np.any(x < -WALL_TOL * L) or np.any(x > L * (1 + WALL_TOL)):
        raise TorusXrayError(f"point {x} lies outside the box {box.L}")
    return x / (2 * L), v / (2 * L)


def denormalize(box: Box, x, v) -> tuple[np.ndarray, np.ndarray]:
    L = np.array(box.L)
    return np.asarray(x, dtype=float) * 2 * L, np.asarray(v, dtype=float) * 2 * L


def fold(y) -> np.ndarray:
    """The map zeta on torus coordinates: distance to the nearest integer."""
    y = np.asarray(y, dtype=float)
    return np.abs(y - np.round(y))


def orthant_signs(y) -> np.ndarray:
    """Sign of each coordinate of y in [-1/2, 1/2); +1 on the wall at 0."""
    y = np.asarray(y, dtype=float)
    r = y - np.floor(y + 0.5)
    return np.where(r < 0, -1.0, 1.0)


def billiard_point(x0, v, t) -> np.ndarray:
    """Position at time t of the billiard started at x0 with velocity v.

    ``t`` may be a scalar or an array; the result has shape (..., n).
    """
    x0 = np.asarray(x0, dtype=float)
    v = np.asarray(v, dtype=float)
    t = np.asarray(t, dtype=float)
    return fold(x0 + t[..., None] * v)


@dataclass(frozen=True)
class BoxGrid:
    """Samples on the box grid {0, 1/N, ..., floor(N/2)/N}^n.

    ``N`` is the resolution of the torus grid the samples extend to.
    """

    n: int
    N: int
    samples: np.ndarray

    def __post_init__(self):
        shape = (self.N // 2 + 1,) * self.n
        if self.samples.shape != shape:
            raise DimensionError(f"box samples shape {self.samples.shape} != {shape}")


def box_grid_points(n: int, N: int) -> np.ndarray:
    idx = np.indices((N // 2 + 1,) * n).reshape(n, -1).T
    return idx / N


def restrict_to_box(f: TrigPolynomial, N: int) -> BoxGrid:
    """Sample a torus function on the box grid."""
    vals = evaluate(f, box_grid_points(f.n, N))
    return BoxGrid(f.n, N, vals.reshape((N // 2 + 1,) * f.n))


def _fold_index(N: int) -> np.ndarray:
    j = np.arange(N)
    return np.minimum(j, N - j)


def _grid_signs(N: int) -> np.ndarray:
    """Orthant sign of each torus grid index, 0 on the walls 0 and 1/2."""
    j = np.arange(N)
    s = np.where(2 * j < N, 1.0, -1.0)
    s[0] = 0.0
    if N % 2 == 0:
        s[N // 2] = 0.0
    return s


def _reflect_samples(samples: np.ndarray, N: int, counts: Sequence[int]) -> np.ndarray:
    """Extend box samples to the torus grid with parity ``(-1)^counts[j]``."""
    n = samples.ndim
    fi = _fold_index(N)
    out = samples[np.ix_(*([fi] * n))].astype(np.complex128)
    sg = _grid_signs(N)
    for axis, c in enumerate(counts):
        if c % 2:
            shape = [1] * n
            shape[axis] = N
            out = out * sg.reshape(shape)
    return out


def parity_project(f: TrigPolynomial, counts: Sequence[int]) -> TrigPolynomial:
    """Average of fhat over coordinate sign flips, weighted by parity.

    The result satisfies fhat(flip_j k) = (-1)^counts[j] fhat(k) exactly;
    ``counts`` all even gives the even (cosine) projection.
    """
    K = f.K
    dense = f.dense()
    acc = np.zeros_like(dense)
    for flips in itertools.product((False, True), repeat=f.n):
        term = dense
        sign = 1.0
        for axis, flip in enumerate(flips):
            if flip:
                term = np.flip(term, axis=axis)
                if counts[axis] % 2:
                    sign = -sign
        acc += sign * term
    return TrigPolynomial.from_dense(acc / 2 ** f.n).drop_zeros().with_band(K)


def even_projection(f: TrigPolynomial) -> TrigPolynomial:
    return parity_project(f, (0,) * f.n)


def is_even(f: TrigPolynomial, tol: float = 1e-12) -> bool:
    return f.max_abs_diff(even_projection(f)) <= tol


def unfold_scalar(grid: BoxGrid, K: int) -> TrigPolynomial:
    """Band-K coefficients of the even lift f o zeta from box samples."""
    if grid.N < 2 * K + 1:
        raise TorusXrayError(f"box grid with N={grid.N} cannot resolve band K={K}")
    torus = _reflect_samples(grid.samples, grid.N, (0,) * grid.n)
    return even_projection(from_grid(GridFunction(grid.n, grid.N, torus), K))


def unfold_tensor(components: Mapping[Sequence[int], BoxGrid], m: int,
                  K: int) -> SymmetricTensorField:
    """Lift a symmetric tensor field given by box samples to the torus.

    On the orthant with signs s, component (i_1..i_m) is multiplied by
    s_{i_1} ... s_{i_m}.  Components odd in some coordinate take the value 0
    on the walls of that coordinate, where the lift is continuous only if
    they vanish.
    """
    comps = {}
    n = N = None
    for idx, grid in components.items():
        idx = tuple(sorted(int(i) for i in idx))
        if len(idx) != m:
            raise DimensionError(f"index {idx} has length != m={m}")
        n, N = grid.n, grid.N
        if N < 2 * K + 1:
            raise TorusXrayError(f"box grid with N={N} cannot resolve band K={K}")
        counts = exponent(idx, n)
        torus = _reflect_samples(grid.samples, N, counts)
        comps[idx] = parity_project(from_grid(GridFunction(n, N, torus), K), counts)
    if n is None:
        raise DimensionError("unfold_tensor needs at least one component")
    return SymmetricTensorField(n, m, K, comps)


def parity_project_tensor(f: SymmetricTensorField) -> SymmetricTensorField:
    """Project every component onto the parity class of a lifted box field."""
    return SymmetricTensorField(
        f.n, f.m, f.K,
        {I: parity_project(p, exponent(I, f.n)) for I, p in f.components.items()})


def broken_ray_forward(f: TrigPolynomial, x0, v, M: int) -> complex:
    """Rectangle-rule integral of the box function over one billiard period.

    ``f`` is the even torus lift; only its values on the box are used.
    """
    t = np.arange(M) / M
    return complex(np.mean(evaluate(f, billiard_point(x0, v, t))))


def broken_ray_tensor_forward(f: SymmetricTensorField, x0, v, M: int) -> complex:
    """Billiard integral of f(zeta(g(t)))(dzeta v, ..., dzeta v), g(t) = x0 + tv."""
    t = np.arange(M) / M
    y = np.asarray(x0, dtype=float) + t[:, None] * np.asarray(v, dtype=float)
    w = orthant_signs(y) * np.asarray(v, dtype=float)
    return complex(np.mean(evaluate_field(f, fold(y), w)))


def broken_ray_samples(f: TrigPolynomial, directions: Sequence[Sequence[int]],
                       N: int, M: int) -> list[tuple[tuple[int, ...], tuple[int, ...], complex]]:
    """Billiard integrals for every torus grid start point and direction.

    The torus line through y = j/N with direction v is the billiard started
    at zeta(y) with velocity s(y) * v, where s(y) are the orthant signs.
    Rows are ``(box grid index of zeta(y), s(y) * v, integral)``, one per
    distinct billiard, in a deterministic order.
    """
    n = f.n
    fi = _fold_index(N)
    sg = np.where(2 * np.arange(N) < N, 1, -1)
    rows = {}
    for v in directions:
        v = as_vector(v)
        for j in itertools.product(range(N), repeat=n):
            i = tuple(int(fi[a]) for a in j)
            w = tuple(int(sg[a]) * c for a, c in zip(j, v))
            if (i, w) not in rows:
                rows[(i, w)] = broken_ray_forward(f, np.array(i) / N, w, M)
    return [(i, w, val) for (i, w), val in sorted(rows.items())]


def radon_data_from_samples(rows, directions: Sequence[Sequence[int]], N: int,
                            K: int) -> RadonData:
    """Assemble torus X-ray data from billiard samples on the N-grid."""
    table = {(tuple(i), tuple(w)): val for i, w, val in rows}
    n = len(next(iter(table))[0]) if table else len(directions[0])
    fi = _fold_index(N)
    sg = np.where(2 * np.arange(N) < N, 1, -1)
    entries = {}
    for v in directions:
        A = DirectionTuple.of([v])
        v = A.vectors[0]
        samples = np.zeros((N,) * n, dtype=np.complex128)
        for j in itertools.product(range(N), repeat=n):
            key = (tuple(int(fi[a]) for a in j),
                   tuple(int(sg[a]) * c for a, c in zip(j, v)))
            if key not in table:
                raise TorusXrayError(f"missing billiard sample {key}")
            samples[j] = table[key]
        entries[A] = from_grid(GridFunction(n, N, samples), K)
    return RadonData(n, 1, K, entries)


def broken_ray_invert(data: RadonData, K: int) -> TrigPolynomial:
    """Even lift of the box function from X-ray data of the lift.

    Evaluate the result on the box (e.g. :func:`restrict_to_box`) to get f.
    """
    return even_projection(invert(data, K))

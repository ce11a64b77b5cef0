"""Band-limited functions on the flat torus R^n / Z^n.

A :class:`TrigPolynomial` stores finitely many Fourier coefficients of

    f(x) = sum_k fhat(k) exp(2 pi i k.x),

with frequencies ``k`` in Z^n.  This single convention is used everywhere in
the package, so every derivative factor downstream is ``2 pi i k_j``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .exceptions import AliasingError, DimensionError, TorusXrayError


def _canonical_order(keys: np.ndarray) -> np.ndarray:
    # lexicographic on rows; np.lexsort sorts by the last key first
    return np.lexsort(keys.T[::-1]) if keys.size else np.arange(len(keys))


def band_keys(n: int, K: int) -> np.ndarray:
    """All frequencies with sup-norm <= K, in canonical order."""
    return np.array(list(itertools.product(range(-K, K + 1), repeat=n)),
                    dtype=np.int64).reshape(-1, n)


class TrigPolynomial:
    """Finite Fourier series on T^n.

    Frequencies are held in ``keys`` (int array, rows sorted
    lexicographically, unique) with matching complex ``values``.  Absent
    frequencies have coefficient zero.  Instances are treated as immutable.
    """

    __slots__ = ("n", "K", "keys", "values", "_index")

    def __init__(self, n: int, keys, values, K: int | None = None):
        keys = np.asarray(keys, dtype=np.int64).reshape(-1, n)
        values = np.asarray(values, dtype=np.complex128).reshape(-1)
        if len(keys) != len(values):
            raise DimensionError("keys and values have different lengths")
        order = _canonical_order(keys)
        keys, values = keys[order], values[order]
        if len(keys) > 1 and np.any(np.all(keys[1:] == keys[:-1], axis=1)):
            raise TorusXrayError("duplicate frequencies")
        band = int(np.abs(keys).max()) if keys.size else 0
        if K is None:
            K = band
        elif band > K:
            raise AliasingError(f"frequency with sup-norm {band} exceeds band {K}")
        keys.setflags(write=False)
        values.setflags(write=False)
        self.n = int(n)
        self.K = int(K)
        self.keys = keys
        self.values = values
        self._index = None

    # -- construction -----------------------------------------------------

    @classmethod
    def from_dict(cls, n: int, coeffs: Mapping[Sequence[int], complex],
                  K: int | None = None) -> "TrigPolynomial":
        items = list(coeffs.items())
        keys = [tuple(k) for k, _ in items]
        if any(len(k) != n for k in keys):
            raise DimensionError(f"frequency of wrong dimension for n={n}")
        return cls(n, keys, [complex(c) for _, c in items], K)

    @classmethod
    def zero(cls, n: int, K: int = 0) -> "TrigPolynomial":
        return cls(n, np.zeros((0, n), dtype=np.int64), [], K)

    @classmethod
    def character(cls, k: Sequence[int], c: complex = 1.0) -> "TrigPolynomial":
        """The single mode ``c * e_k``."""
        return cls(len(k), [tuple(k)], [c])

    @classmethod
    def from_dense(cls, arr: np.ndarray) -> "TrigPolynomial":
        """Inverse of :meth:`dense`: ``arr[k + K]`` is the coefficient at k."""
        K = (arr.shape[0] - 1) // 2
        n = arr.ndim
        keys = band_keys(n, K)
        return cls(n, keys, arr[tuple((keys + K).T)], K)

    # -- access -----------------------------------------------------------

    def as_dict(self) -> dict[tuple[int, ...], complex]:
        return {tuple(int(c) for c in k): complex(v)
                for k, v in zip(self.keys, self.values)}

    def dense(self, K: int | None = None) -> np.ndarray:
        """Coefficient cube of side 2K+1 with the zero frequency at the center."""
        K = self.K if K is None else K
        if self.keys.size and np.abs(self.keys).max() > K:
            raise AliasingError(f"band {self.K} does not fit in dense band {K}")
        out = np.zeros((2 * K + 1,) * self.n, dtype=np.complex128)
        out[tuple((self.keys + K).T)] = self.values
        return out

    def coefficient(self, k: Sequence[int]) -> complex:
        if self._index is None:
            self._index = {tuple(int(c) for c in kk): i
                           for i, kk in enumerate(self.keys)}
        i = self._index.get(tuple(int(c) for c in k))
        return 0j if i is None else complex(self.values[i])

    def coefficients_at(self, keys: np.ndarray) -> np.ndarray:
        """Vectorized lookup; frequencies outside the band read as zero."""
        keys = np.asarray(keys, dtype=np.int64).reshape(-1, self.n)
        out = np.zeros(len(keys), dtype=np.complex128)
        inside = np.all(np.abs(keys) <= self.K, axis=1)
        out[inside] = self.dense()[tuple((keys[inside] + self.K).T)]
        return out

    def __len__(self):
        return len(self.keys)

    def __repr__(self):
        return f"TrigPolynomial(n={self.n}, K={self.K}, modes={len(self)})"

    # -- algebra ----------------------------------------------------------

    def _combine(self, other: "TrigPolynomial", a: complex, b: complex):
        if other.n != self.n:
            raise DimensionError(f"dimension {self.n} vs {other.n}")
        K = max(self.K, other.K)
        keys = np.concatenate([self.keys, other.keys])
        uniq, inv = np.unique(keys, axis=0, return_inverse=True)
        vals = np.zeros(len(uniq), dtype=np.complex128)
        m = len(self.keys)
        inv = inv.reshape(-1)
        np.add.at(vals, inv[:m], a * self.values)
        np.add.at(vals, inv[m:], b * other.values)
        return TrigPolynomial(self.n, uniq, vals, K)

    def __add__(self, other):
        return self._combine(other, 1.0, 1.0)

    def __sub__(self, other):
        return self._combine(other, 1.0, -1.0)

    def __mul__(self, c):
        return TrigPolynomial(self.n, self.keys, c * self.values, self.K)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    def __truediv__(self, c):
        return TrigPolynomial(self.n, self.keys, self.values / c, self.K)

    def max_abs_diff(self, other: "TrigPolynomial") -> float:
        """Largest coefficient difference, absent frequencies counting as 0."""
        diff = self - other
        return float(np.abs(diff.values).max()) if len(diff) else 0.0

    def drop_zeros(self, tol: float = 0.0) -> "TrigPolynomial":
        keep = np.abs(self.values) > tol
        return TrigPolynomial(self.n, self.keys[keep], self.values[keep], self.K)

    def with_band(self, K: int) -> "TrigPolynomial":
        """Same coefficients, declared band ``K`` (must still contain them)."""
        return TrigPolynomial(self.n, self.keys, self.values, K)

    def conj_reflect(self) -> "TrigPolynomial":
        """Coefficients of the complex conjugate function."""
        return TrigPolynomial(self.n, -self.keys, np.conj(self.values), self.K)


@dataclass(frozen=True)
class GridFunction:
    """Samples on the uniform grid {0, 1/N, ..., (N-1)/N}^n."""

    n: int
    N: int
    samples: np.ndarray

    def __post_init__(self):
        if self.samples.shape != (self.N,) * self.n:
            raise DimensionError(
                f"samples shape {self.samples.shape} != {(self.N,) * self.n}")

    def points(self) -> np.ndarray:
        """Grid points, shape (N**n, n), in C order of ``samples``."""
        return grid_points(self.n, self.N)


def grid_points(n: int, N: int) -> np.ndarray:
    idx = np.indices((N,) * n).reshape(n, -1).T
    return idx / N


def evaluate(f: TrigPolynomial, x) -> complex | np.ndarray:
    """Value of ``f`` at a point, or at each row of an (m, n) array."""
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    pts = x.reshape(-1, f.n)
    if not len(f):
        out = np.zeros(len(pts), dtype=np.complex128)
    else:
        # reduce phases mod 1 before exponentiating to keep arguments small
        phase = pts @ f.keys.T.astype(float)
        phase -= np.floor(phase)
        out = np.exp(2j * np.pi * phase) @ f.values
    return complex(out[0]) if single else out


def to_grid(f: TrigPolynomial, N: int) -> GridFunction:
    """Sample ``f`` on the N-point grid per axis (needs N >= 2K+1)."""
    if N < 2 * f.K + 1:
        raise AliasingError(f"N={N} < 2K+1={2 * f.K + 1}")
    spec = np.zeros((N,) * f.n, dtype=np.complex128)
    spec[tuple((f.keys % N).T)] = f.values
    samples = np.fft.ifftn(spec) * N ** f.n
    return GridFunction(f.n, N, samples)


def from_grid(g: GridFunction, K: int) -> TrigPolynomial:
    """Band-K coefficients from grid samples by the discrete Fourier sum."""
    if g.N < 2 * K + 1:
        raise AliasingError(f"N={g.N} < 2K+1={2 * K + 1}")
    spec = np.fft.fftn(g.samples) / g.N ** g.n
    keys = band_keys(g.n, K)
    return TrigPolynomial(g.n, keys, spec[tuple((keys % g.N).T)], K)


def fejer_weights(keys: np.ndarray, N: int) -> np.ndarray:
    """Product Fejer multipliers prod_j max(0, 1 - |k_j|/N)."""
    return np.prod(np.clip(1.0 - np.abs(keys) / N, 0.0, None), axis=1)


def fejer_reconstruct(coefficients, N: int) -> TrigPolynomial:
    """Order-N product Fejer mean of a Fourier series.

    ``coefficients`` is a TrigPolynomial or a mapping k -> coefficient.
    The result has band N-1 and converges uniformly to any continuous
    function as N grows.
    """
    if N < 1:
        raise TorusXrayError(f"Fejer order must be >= 1, got {N}")
    if not isinstance(coefficients, TrigPolynomial):
        if not coefficients:
            raise TorusXrayError("empty coefficient mapping; dimension unknown")
        n = len(next(iter(coefficients)))
        coefficients = TrigPolynomial.from_dict(n, coefficients)
    f = coefficients
    w = fejer_weights(f.keys, N)
    keep = w > 0
    return TrigPolynomial(f.n, f.keys[keep], f.values[keep] * w[keep], N - 1)


def sobolev_weights(keys: np.ndarray, s: float) -> np.ndarray:
    """(1 + |k|^2)^s for each row of ``keys``."""
    return (1.0 + np.sum(keys.astype(float) ** 2, axis=1)) ** s


def sobolev_norm(f: TrigPolynomial, s: float) -> float:
    """H^s norm sqrt(sum_k (1+|k|^2)^s |fhat(k)|^2)."""
    terms = sobolev_weights(f.keys, s) * np.abs(f.values) ** 2
    # keys are canonically ordered, so this sum is reproducible
    return float(np.sqrt(np.sum(terms)))


PHANTOM_KINDS = ("random-complex", "random-real", "separable-bump")


def make_phantom(n: int, K: int, kind: str = "random-complex",
                 seed: int = 0) -> TrigPolynomial:
    """Deterministic band-K test function.

    ``random-complex`` fills every slot with a standard complex normal,
    ``random-real`` additionally enforces fhat(-k) = conj(fhat(k)), and
    ``separable-bump`` is a product of one-dimensional Fejer kernels of
    band K centered at a seed-derived point, normalized to peak value 1.
    """
    rng = np.random.default_rng(seed)
    keys = band_keys(n, K)
    if kind == "random-complex":
        vals = rng.standard_normal(len(keys)) + 1j * rng.standard_normal(len(keys))
    elif kind == "random-real":
        raw = rng.standard_normal(len(keys)) + 1j * rng.standard_normal(len(keys))
        dense = raw.reshape((2 * K + 1,) * n)
        # reversing every axis maps k to -k
        mirrored = np.conj(dense[(slice(None, None, -1),) * n])
        vals = (0.5 * (dense + mirrored)).reshape(-1)
    elif kind == "separable-bump":
        center = rng.random(n)
        L = K + 1
        one_d = 1.0 - np.abs(np.arange(-K, K + 1)) / L
        # each one-dimensional kernel peaks at L
        weights = np.prod(one_d[keys + K], axis=1) / L ** n
        vals = weights * np.exp(-2j * np.pi * (keys @ center))
    else:
        raise TorusXrayError(f"unknown phantom kind {kind!r}; expected one of {PHANTOM_KINDS}")
    return TrigPolynomial(n, keys, vals, K)

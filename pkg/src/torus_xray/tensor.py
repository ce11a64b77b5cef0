"""Symmetric tensor fields on the torus and their X-ray transform.

A symmetric m-tensor field is stored by its components on sorted multi-indices
(i_1 <= ... <= i_m), each a :class:`TrigPolynomial`.  At a fixed frequency k
the field is equivalently a homogeneous degree-m polynomial in the direction
variable v,

    fhat(k, v) = sum_{i_1..i_m} fhat_{i_1..i_m}(k) v^{i_1} ... v^{i_m},

and the polynomial coefficient of the monomial v^alpha is the component
value times the multinomial count m!/alpha! returned by :func:`multiplicity`.
:func:`poly_to_tensor` and :func:`tensor_to_poly` convert between monomial
coefficients and full symmetric coefficient arrays.

Indices are 0-based.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .exceptions import (DimensionError, InvalidDirectionError, NotInKernelError,
                         NotSolenoidallyExactError)
from .lattice import as_vector, integer_rank
from .spectral import TrigPolynomial, evaluate, make_phantom, sobolev_norm

Index = tuple[int, ...]

DEFAULT_TOL = 1e-9
TWO_PI_I = 2j * np.pi


def multi_indices(n: int, m: int) -> list[Index]:
    """Sorted multi-indices of length m over range(n), in lexicographic order."""
    return list(itertools.combinations_with_replacement(range(n), m))


def exponent(index: Sequence[int], n: int) -> tuple[int, ...]:
    alpha = [0] * n
    for i in index:
        alpha[i] += 1
    return tuple(alpha)


def index_of(alpha: Sequence[int]) -> Index:
    return tuple(i for i, a in enumerate(alpha) for _ in range(a))


def multiplicity(index: Sequence[int]) -> int:
    """Number of distinct arrangements of ``index``: m! / prod(alpha_j!)."""
    counts = {}
    for i in index:
        counts[i] = counts.get(i, 0) + 1
    out = math.factorial(len(index))
    for c in counts.values():
        out //= math.factorial(c)
    return out


@dataclass
class SymmetricTensorField:
    """Order-m symmetric tensor field on T^n with band-limited components."""

    n: int
    m: int
    K: int
    components: dict[Index, TrigPolynomial] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for idx, comp in self.components.items():
            idx = tuple(int(i) for i in idx)
            if len(idx) != self.m:
                raise DimensionError(f"index {idx} has length != m={self.m}")
            if list(idx) != sorted(idx):
                raise DimensionError(f"index {idx} is not sorted")
            if idx and not 0 <= idx[-1] < self.n or idx and idx[0] < 0:
                raise DimensionError(f"index {idx} out of range for n={self.n}")
            if comp.n != self.n or comp.K > self.K:
                raise DimensionError(f"component {idx} has n={comp.n}, K={comp.K}")
            clean[idx] = comp
        self.components = dict(sorted(clean.items()))

    def component(self, index: Sequence[int]) -> TrigPolynomial:
        idx = tuple(sorted(index))
        return self.components.get(idx, TrigPolynomial.zero(self.n, self.K))

    def stacked(self) -> tuple[np.ndarray, list[Index], np.ndarray]:
        """Union of frequencies, all sorted indices, and the value matrix.

        Row r of the matrix holds component ``indices[r]`` at every key.
        """
        indices = multi_indices(self.n, self.m)
        parts = [c.keys for c in self.components.values()]
        if parts:
            keys = np.unique(np.concatenate(parts), axis=0)
        else:
            keys = np.zeros((0, self.n), dtype=np.int64)
        mat = np.zeros((len(indices), len(keys)), dtype=np.complex128)
        for r, idx in enumerate(indices):
            if idx in self.components:
                mat[r] = self.components[idx].coefficients_at(keys)
        return keys, indices, mat

    @classmethod
    def from_stacked(cls, n: int, m: int, K: int, keys, indices, mat):
        comps = {idx: TrigPolynomial(n, keys, mat[r], K)
                 for r, idx in enumerate(indices)}
        return cls(n, m, K, comps)

    def _combine(self, other, a, b):
        if (self.n, self.m) != (other.n, other.m):
            raise DimensionError("tensor fields of different shape")
        K = max(self.K, other.K)
        comps = {}
        for idx in multi_indices(self.n, self.m):
            comps[idx] = (self.component(idx) * a)._combine(other.component(idx), 1.0, b)
        return SymmetricTensorField(self.n, self.m, K, comps)

    def __add__(self, other):
        return self._combine(other, 1.0, 1.0)

    def __sub__(self, other):
        return self._combine(other, 1.0, -1.0)

    def __mul__(self, c):
        return SymmetricTensorField(self.n, self.m, self.K,
                                    {i: c * p for i, p in self.components.items()})

    __rmul__ = __mul__

    def max_abs_diff(self, other) -> float:
        diff = self - other
        return max((float(np.abs(p.values).max()) for p in diff.components.values()
                    if len(p)), default=0.0)


@dataclass
class HomogeneousPolynomial:
    """Homogeneous polynomial of degree m in n variables.

    ``coeffs`` maps exponent tuples alpha (|alpha| = m) to complex numbers.
    """

    n: int
    m: int
    coeffs: dict[tuple[int, ...], complex] = field(default_factory=dict)

    def __post_init__(self):
        for alpha in self.coeffs:
            if len(alpha) != self.n or sum(alpha) != self.m or min(alpha, default=0) < 0:
                raise DimensionError(f"exponent {alpha} invalid for n={self.n}, m={self.m}")

    def coefficient_vector(self) -> np.ndarray:
        """Coefficients in the order of ``multi_indices(n, m)``."""
        return np.array([self.coeffs.get(exponent(I, self.n), 0j)
                         for I in multi_indices(self.n, self.m)], dtype=np.complex128)

    @classmethod
    def from_vector(cls, n: int, m: int, vec) -> "HomogeneousPolynomial":
        return cls(n, m, {exponent(I, n): complex(c)
                          for I, c in zip(multi_indices(n, m), vec)})

    def max_abs_diff(self, other: "HomogeneousPolynomial") -> float:
        a, b = self.coefficient_vector(), other.coefficient_vector()
        return float(np.abs(a - b).max()) if len(a) else 0.0


def evaluate_polynomial(P: HomogeneousPolynomial, v) -> complex | np.ndarray:
    """P(v) for one vector, or for each row of an (r, n) array."""
    v = np.asarray(v, dtype=float)
    single = v.ndim == 1
    vs = v.reshape(-1, P.n)
    if not P.coeffs:
        out = np.zeros(len(vs), dtype=np.complex128)
    else:
        alphas = np.array(list(P.coeffs), dtype=np.int64)
        c = np.array(list(P.coeffs.values()), dtype=np.complex128)
        out = np.prod(vs[:, None, :] ** alphas[None, :, :], axis=2) @ c
    return complex(out[0]) if single else out


def poly_to_tensor(P: HomogeneousPolynomial) -> np.ndarray:
    """Symmetric coefficient array T with P(v) = T[i..] v^i ... (n^m entries)."""
    T = np.zeros((P.n,) * P.m, dtype=np.complex128)
    for alpha, c in P.coeffs.items():
        idx = index_of(alpha)
        share = c / multiplicity(idx)
        for perm in set(itertools.permutations(idx)):
            T[perm] = share
    return T


def tensor_to_poly(T: np.ndarray, n: int) -> HomogeneousPolynomial:
    """Inverse of :func:`poly_to_tensor` for a symmetric array."""
    m = T.ndim
    if m == 0:
        return HomogeneousPolynomial(n, 0, {(0,) * n: complex(T)})
    return HomogeneousPolynomial(
        n, m, {exponent(I, n): complex(multiplicity(I) * T[I]) for I in multi_indices(n, m)})


def _change_variables(T: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Array of P(B w) in the variable w, given the array T of P(v)."""
    for axis in range(T.ndim):
        T = np.moveaxis(np.tensordot(T, B, axes=([axis], [0])), -1, axis)
    return T


def field_polynomial(f: SymmetricTensorField, k: Sequence[int]) -> HomogeneousPolynomial:
    """The degree-m polynomial v -> fhat(k, v)."""
    return HomogeneousPolynomial(
        f.n, f.m, {exponent(I, f.n): multiplicity(I) * f.component(I).coefficient(k)
                   for I in multi_indices(f.n, f.m)})


def multiply_by_linear_form(Q: HomogeneousPolynomial, k: Sequence[int]) -> HomogeneousPolynomial:
    """(k.v) * Q(v), by direct monomial arithmetic."""
    out: dict[tuple[int, ...], complex] = {}
    for alpha, c in Q.coeffs.items():
        for j, kj in enumerate(k):
            if kj:
                beta = list(alpha)
                beta[j] += 1
                beta = tuple(beta)
                out[beta] = out.get(beta, 0j) + kj * c
    return HomogeneousPolynomial(Q.n, Q.m + 1, out)


def orthonormal_frame(k: Sequence[int]) -> np.ndarray:
    """Orthonormal matrix whose first column is k/|k|.

    Remaining columns come from Gram-Schmidt over the standard basis, always
    taking the basis vector with the largest residual norm next.
    """
    k = np.asarray(k, dtype=float)
    n = len(k)
    cols = [k / np.linalg.norm(k)]
    remaining = list(range(n))
    while len(cols) < n:
        Qm = np.array(cols).T
        best, best_res = None, None
        for j in remaining:
            e = np.zeros(n)
            e[j] = 1.0
            r = e - Qm @ (Qm.T @ e)
            if best_res is None or np.linalg.norm(r) > np.linalg.norm(best_res) + 1e-14:
                best, best_res = j, r
        remaining.remove(best)
        # second pass keeps orthogonality tight
        best_res = best_res - Qm @ (Qm.T @ best_res)
        cols.append(best_res / np.linalg.norm(best_res))
    return np.array(cols).T


def divide_by_linear_form(P: HomogeneousPolynomial, k: Sequence[int],
                          tol: float = DEFAULT_TOL,
                          scale: float | None = None) -> HomogeneousPolynomial:
    """G with P(v) = (k.v) G(v), for P vanishing on the hyperplane k.v = 0.

    P is rewritten in an orthonormal frame whose first coordinate is
    v_par = k.v/|k|.  Monomials free of v_par must vanish (checked against
    ``tol`` times ``scale``, default the largest coefficient of P); the rest
    are divided by v_par and by |k|, then mapped back.
    """
    k = as_vector(k)
    if len(k) != P.n:
        raise DimensionError(f"k has dimension {len(k)}, polynomial has {P.n}")
    if not any(k):
        raise InvalidDirectionError("cannot divide by the zero linear form")
    if P.m == 0:
        raise DimensionError("a degree-0 polynomial has no linear factor")
    n, m = P.n, P.m
    B = orthonormal_frame(k)
    W = _change_variables(poly_to_tensor(P), B)  # coefficients in w = B^T v
    Pw = tensor_to_poly(W, n)
    ref = max((abs(c) for c in Pw.coeffs.values()), default=0.0)
    if scale is not None:
        ref = max(ref, scale)
    residual = max((abs(c) for a, c in Pw.coeffs.items() if a[0] == 0), default=0.0)
    if residual > tol * ref:
        raise NotInKernelError(k, residual)
    knorm = math.sqrt(sum(c * c for c in k))
    Gw = {}
    for alpha, c in Pw.coeffs.items():
        if alpha[0] == 0:
            continue
        beta = (alpha[0] - 1,) + alpha[1:]
        Gw[beta] = c / knorm
    Gt = poly_to_tensor(HomogeneousPolynomial(n, m - 1, Gw))
    # G(v) = Gw(B^T v)
    return tensor_to_poly(_change_variables(Gt, B.T), n)


def symmetrize(components: Mapping[Sequence[int], TrigPolynomial],
               n: int | None = None) -> SymmetricTensorField:
    """Symmetric part of a tensor given on arbitrary (unsorted) multi-indices.

    The sorted component J is the average over all m! index permutations;
    arrangements absent from the input count as zero.
    """
    items = [(tuple(int(i) for i in idx), p) for idx, p in components.items()]
    if not items:
        raise DimensionError("symmetrize needs at least one component")
    m = len(items[0][0])
    if any(len(idx) != m for idx, _ in items):
        raise DimensionError("multi-indices of inconsistent length")
    if n is None:
        n = items[0][1].n
    K = max(p.K for _, p in items)
    sums: dict[Index, TrigPolynomial] = {}
    for idx, p in items:
        J = tuple(sorted(idx))
        sums[J] = sums[J] + p if J in sums else p
    comps = {J: s / multiplicity(J) for J, s in sums.items()}
    return SymmetricTensorField(n, m, K, comps)


def gradient(h: SymmetricTensorField) -> SymmetricTensorField:
    """Symmetrized gradient of an order-(m-1) field; result has order m.

    Component I of the result is (1/m) sum_p d_{I_p} h_{I without I_p},
    with d_j acting on coefficients as multiplication by 2 pi i k_j.
    """
    n, m = h.n, h.m + 1
    keys, indices, mat = h.stacked()
    row = {idx: r for r, idx in enumerate(indices)}
    out_indices = multi_indices(n, m)
    out = np.zeros((len(out_indices), len(keys)), dtype=np.complex128)
    for r, I in enumerate(out_indices):
        for p in range(m):
            rest = I[:p] + I[p + 1:]
            out[r] += TWO_PI_I * keys[:, I[p]] * mat[row[rest]]
        out[r] /= m
    return SymmetricTensorField.from_stacked(n, m, h.K, keys, out_indices, out)


def _direction_weights(indices: list[Index], v) -> np.ndarray:
    v = np.asarray(v)
    return np.array([multiplicity(I) * np.prod([v[i] for i in I]) for I in indices])


def tensor_xray_forward(f: SymmetricTensorField, v: Sequence[int]) -> TrigPolynomial:
    """X-ray transform x -> int_0^1 f(x + t v)(v, ..., v) dt."""
    v = as_vector(v)
    if len(v) != f.n:
        raise DimensionError(f"direction has dimension {len(v)}, field has {f.n}")
    if not any(v):
        raise InvalidDirectionError("the zero vector is not a direction")
    keys, indices, mat = f.stacked()
    mask = keys @ np.array(v, dtype=np.int64) == 0
    vals = _direction_weights(indices, v) @ mat[:, mask]
    return TrigPolynomial(f.n, keys[mask], vals, f.K)


def evaluate_field(f: SymmetricTensorField, x, v) -> complex | np.ndarray:
    """f(x)(v, ..., v) at one point or each row of ``x``.

    ``v`` is a single vector or one vector per row of ``x``.
    """
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    pts = x.reshape(-1, f.n)
    vs = np.broadcast_to(np.asarray(v, dtype=float), pts.shape)
    out = np.zeros(len(pts), dtype=np.complex128)
    for I, comp in f.components.items():
        w = multiplicity(I) * np.prod(vs[:, list(I)], axis=1) if I else 1.0
        out += w * evaluate(comp, pts)
    return complex(out[0]) if single else out


def solenoidal_decompose(f: SymmetricTensorField,
                         tol: float = DEFAULT_TOL) -> SymmetricTensorField:
    """Potential h of order m-1 with sigma grad h = f.

    Works frequency by frequency: fhat(k, .) must vanish on k.v = 0, is
    divided by k.v, and the quotient divided by 2 pi i gives hhat(k, .).
    The zero frequency must vanish outright; hhat(0, .) = 0.  Raises
    :class:`NotSolenoidallyExactError` naming the first offending k.
    """
    if f.m < 1:
        raise DimensionError("solenoidal decomposition needs order m >= 1")
    n, m = f.n, f.m
    keys, indices, mat = f.stacked()
    mult = np.array([multiplicity(I) for I in indices], dtype=float)
    polys = mat * mult[:, None]  # monomial coefficients, one column per key
    scale = float(np.abs(polys).max()) if polys.size else 0.0
    out_indices = multi_indices(n, m - 1)
    out_mult = np.array([multiplicity(I) for I in out_indices], dtype=float)
    out = np.zeros((len(out_indices), len(keys)), dtype=np.complex128)
    for j, k in enumerate(keys):
        col = polys[:, j]
        if not np.any(col):
            continue
        if not np.any(k):
            residual = float(np.abs(col).max())
            if residual > tol * scale:
                raise NotSolenoidallyExactError(k, residual)
            continue
        P = HomogeneousPolynomial.from_vector(n, m, col)
        try:
            G = divide_by_linear_form(P, k, tol, scale)
        except NotInKernelError as err:
            raise NotSolenoidallyExactError(k, err.residual) from None
        out[:, j] = G.coefficient_vector() / out_mult / TWO_PI_I
    return SymmetricTensorField.from_stacked(n, m - 1, f.K, keys, out_indices, out)


def kernel_dimension_bruteforce(n: int, m: int, k: Sequence[int]) -> tuple[int, int]:
    """Exact dimensions of the kernel and the image at one frequency.

    The kernel is the space of degree-m homogeneous polynomials vanishing at
    every integer v with k.v = 0 and |v|_inf <= m(|k|_inf + 1) + 1; the image
    is (k.v) times all degree-(m-1) polynomials.  Equality is solenoidal
    injectivity at k.  Ranks are computed in exact integer arithmetic.
    """
    k = as_vector(k)
    if len(k) != n:
        raise DimensionError(f"k has dimension {len(k)}, expected {n}")
    if not any(k):
        raise InvalidDirectionError("kernel_dimension_bruteforce needs k != 0")
    B = m * (max(abs(c) for c in k) + 1) + 1
    monos = [exponent(I, n) for I in multi_indices(n, m)]
    rows = []
    for v in itertools.product(range(-B, B + 1), repeat=n):
        if sum(a * b for a, b in zip(k, v)) == 0:
            rows.append([math.prod(vi ** ai for vi, ai in zip(v, a)) for a in monos])
    dim_kernel = len(monos) - integer_rank(rows)
    col = {a: i for i, a in enumerate(monos)}
    image_rows = []
    for J in multi_indices(n, m - 1):
        r = [0] * len(monos)
        beta = exponent(J, n)
        for j, kj in enumerate(k):
            a = list(beta)
            a[j] += 1
            r[col[tuple(a)]] += kj
        image_rows.append(r)
    return dim_kernel, integer_rank(image_rows)


def tensor_sobolev_norm(f: SymmetricTensorField, s: float) -> float:
    """sqrt of the sum of squared H^s norms of the stored components."""
    return math.sqrt(sum(sobolev_norm(c, s) ** 2 for c in f.components.values()))


def random_tensor_field(n: int, m: int, K: int, seed: int = 0,
                        zero_mean: bool = False) -> SymmetricTensorField:
    """Random complex symmetric field, one independent phantom per component."""
    rng = np.random.default_rng(seed)
    comps = {}
    for I in multi_indices(n, m):
        p = make_phantom(n, K, "random-complex", int(rng.integers(2 ** 31)))
        if zero_mean:
            keep = np.any(p.keys != 0, axis=1)
            p = TrigPolynomial(n, p.keys[keep], p.values[keep], K)
        comps[I] = p
    return SymmetricTensorField(n, m, K, comps)


def constant_field(n: int, m: int, values: Mapping[Sequence[int], complex],
                   K: int = 0) -> SymmetricTensorField:
    comps = {tuple(sorted(I)): TrigPolynomial.character((0,) * n, c).with_band(K)
             for I, c in values.items()}
    return SymmetricTensorField(n, m, K, comps)


def directions_up_to(n: int, max_norm: int) -> list[tuple[int, ...]]:
    """Sign-normalized nonzero integer directions with sup-norm <= max_norm."""
    from .lattice import enumerate_tuples

    return [A.vectors[0] for A in enumerate_tuples(n, 1, max_norm)]


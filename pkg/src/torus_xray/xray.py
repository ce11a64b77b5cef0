"""The d-plane Radon transform on the torus and its exact inversion.

For a direction tuple A = {v_1, ..., v_d} the transform averages f over the
periodic d-plane x + t_1 v_1 + ... + t_d v_d, t in [0,1]^d.  On Fourier
coefficients it is a mask: the coefficient at k survives unchanged when k is
orthogonal to every v in A and is killed otherwise.  Everything below is built
on that identity.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .exceptions import DimensionError, IncompleteDataError
from .lattice import DirectionTuple, orthogonal_tuple
from .spectral import TrigPolynomial, band_keys, evaluate, sobolev_weights

DEFAULT_TOL = 1e-9


@dataclass
class RadonData:
    """Transform data: for each stored tuple A, the torus function R_d f(., A).

    ``entries`` is kept sorted in canonical tuple order.
    """

    n: int
    d: int
    K: int
    entries: dict[DirectionTuple, TrigPolynomial] = field(default_factory=dict)

    def __post_init__(self):
        for A, F in self.entries.items():
            if A.n != self.n or A.d != self.d:
                raise DimensionError(f"tuple {A.vectors} does not match n={self.n}, d={self.d}")
            if F.n != self.n or F.K > self.K:
                raise DimensionError(f"entry for {A.vectors} has n={F.n}, K={F.K}")
        self.entries = dict(sorted(self.entries.items()))

    @property
    def tuples(self) -> list[DirectionTuple]:
        return list(self.entries)


def _orthogonal_mask(keys: np.ndarray, A: DirectionTuple) -> np.ndarray:
    vs = np.array(A.vectors, dtype=np.int64)
    return np.all(keys @ vs.T == 0, axis=1)


def forward_spectral(f: TrigPolynomial, A: DirectionTuple) -> TrigPolynomial:
    """R_d f(., A) computed on Fourier coefficients (exact integer test)."""
    if A.n != f.n:
        raise DimensionError(f"tuple dimension {A.n} != function dimension {f.n}")
    keep = _orthogonal_mask(f.keys, A)
    return TrigPolynomial(f.n, f.keys[keep], f.values[keep], f.K)


def forward_quadrature(f: TrigPolynomial, x: Sequence[float], A: DirectionTuple,
                       M: int) -> complex:
    """R_d f(x, A) by the composite rectangle rule with M nodes per axis.

    The integrand is a trigonometric polynomial in each t_i of degree at most
    K * n * max|v|, so the rule is exact once M exceeds that.
    """
    if A.n != f.n:
        raise DimensionError(f"tuple dimension {A.n} != function dimension {f.n}")
    t = np.arange(M) / M
    nodes = np.array(list(itertools.product(t, repeat=A.d)))
    vs = np.array(A.vectors, dtype=float)
    pts = np.asarray(x, dtype=float)[None, :] + nodes @ vs
    return complex(np.mean(evaluate(f, pts)))


def quadrature_exactness_bound(K: int, A: DirectionTuple) -> int:
    """Smallest node count for which :func:`forward_quadrature` is exact."""
    return K * max(max(abs(c) for c in v) for v in A.vectors) * A.n + 1


def default_tuples(n: int, d: int, K: int) -> list[DirectionTuple]:
    """Acquisition set {orthogonal_tuple(k, d) : |k|_inf <= K}, de-duplicated."""
    return sorted({orthogonal_tuple(tuple(k), d) for k in band_keys(n, K)})


def forward_all(f: TrigPolynomial, tuples: Iterable[DirectionTuple]) -> RadonData:
    tuples = list(tuples)
    if not tuples:
        raise DimensionError("forward_all needs at least one direction tuple")
    d = tuples[0].d
    return RadonData(f.n, d, f.K, {A: forward_spectral(f, A) for A in tuples})


def _first_orthogonal(keys: np.ndarray, tuples: list[DirectionTuple]) -> np.ndarray:
    """Index into ``tuples`` of the first tuple orthogonal to each key, or -1."""
    choice = np.full(len(keys), -1)
    for i, A in enumerate(tuples):
        open_ = choice < 0
        if not open_.any():
            break
        hit = open_.copy()
        hit[open_] = _orthogonal_mask(keys[open_], A)
        choice[hit] = i
    return choice


def invert(data: RadonData, K: int) -> TrigPolynomial:
    """Recover fhat(k) for all |k|_inf <= K from the Radon data.

    Each coefficient is read off the first stored tuple orthogonal to k in
    canonical order.  Raises :class:`IncompleteDataError` naming the first
    frequency no stored tuple is orthogonal to.
    """
    keys = band_keys(data.n, K)
    tuples = data.tuples
    choice = _first_orthogonal(keys, tuples)
    missing = np.flatnonzero(choice < 0)
    if len(missing):
        raise IncompleteDataError(keys[missing[0]])
    values = np.zeros(len(keys), dtype=np.complex128)
    for i in np.unique(choice):
        sel = choice == i
        values[sel] = data.entries[tuples[i]].coefficients_at(keys[sel])
    return TrigPolynomial(data.n, keys, values, K)


@dataclass
class Conflict:
    """A violation of the range condition at frequency ``k`` on tuple ``A``.

    ``kind`` is ``"off-slice"`` when A is not orthogonal to k yet carries a
    nonzero coefficient there, or ``"disagreement"`` when the coefficient
    differs from the consensus among tuples orthogonal to k.
    """

    k: tuple[int, ...]
    A: DirectionTuple
    kind: str
    magnitude: float


@dataclass
class RangeReport:
    consistent: bool
    witness: TrigPolynomial | None
    conflicts: list[Conflict]

    def to_json(self) -> dict:
        from .formats import trig_to_json

        return {
            "consistent": self.consistent,
            "witness": trig_to_json(self.witness) if self.witness is not None else None,
            "conflicts": [
                {"k": list(c.k), "A": c.A.tolist(), "kind": c.kind,
                 "magnitude": c.magnitude}
                for c in self.conflicts
            ],
        }


def _consensus(values: np.ndarray, tol: float) -> int:
    """Index of the value agreeing (within tol) with the most others."""
    close = np.abs(values[:, None] - values[None, :]) <= tol
    return int(np.argmax(close.sum(axis=1)))


def validate_range(data: RadonData, tol: float = DEFAULT_TOL) -> RangeReport:
    """Check that ``data`` is the transform of some band-limited function.

    The data are in the range iff every coefficient off the slice
    {k : k.v = 0 for all v in A} vanishes and all tuples orthogonal to the
    same k agree on its coefficient.  When consistent, the witness is the
    function assembled from those common values.
    """
    conflicts: list[Conflict] = []
    tuples = data.tuples
    keys = band_keys(data.n, data.K)
    table = np.zeros((len(tuples), len(keys)), dtype=np.complex128)
    ortho = np.zeros((len(tuples), len(keys)), dtype=bool)
    for i, A in enumerate(tuples):
        F = data.entries[A]
        table[i] = F.coefficients_at(keys)
        ortho[i] = _orthogonal_mask(keys, A)
        off = ~ortho[i] & (np.abs(table[i]) > tol)
        for j in np.flatnonzero(off):
            conflicts.append(Conflict(tuple(int(c) for c in keys[j]), A,
                                      "off-slice", float(abs(table[i, j]))))
    witness_vals = np.zeros(len(keys), dtype=np.complex128)
    for j in range(len(keys)):
        rows = np.flatnonzero(ortho[:, j])
        if not len(rows):
            continue
        vals = table[rows, j]
        ref = vals[_consensus(vals, tol)]
        witness_vals[j] = ref
        for r, val in zip(rows, vals):
            if abs(val - ref) > tol:
                conflicts.append(Conflict(tuple(int(c) for c in keys[j]), tuples[r],
                                          "disagreement", float(abs(val - ref))))
    if conflicts:
        return RangeReport(False, None, conflicts)
    witness = TrigPolynomial(data.n, keys, witness_vals, data.K)
    return RangeReport(True, witness, [])


def stability_norm(data: RadonData, s: float) -> float:
    """Norm sqrt(sum_k (1+|k|^2)^s max_A |F(k, A)|^2) over stored tuples.

    When the stored tuples include one orthogonal to every frequency in the
    band, this equals the H^s norm of the underlying function.
    """
    keys = band_keys(data.n, data.K)
    best = np.zeros(len(keys))
    for F in data.entries.values():
        np.maximum(best, np.abs(F.coefficients_at(keys)), out=best)
    return float(np.sqrt(np.sum(sobolev_weights(keys, s) * best ** 2)))

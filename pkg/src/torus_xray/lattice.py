"""Integer-lattice combinatorics for directions and direction tuples.

Directions are nonzero integer vectors; a direction tuple is an unordered set
of ``d`` linearly independent directions and parametrizes a periodic d-plane
through each point of the torus.  All arithmetic here is exact (Python ints).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .exceptions import DimensionError, InvalidDirectionError

Vector = tuple[int, ...]


def as_vector(v: Iterable) -> Vector:
    out = []
    for c in v:
        if int(c) != c:
            raise InvalidDirectionError(f"non-integer entry {c!r} in {v!r}")
        out.append(int(c))
    return tuple(out)


def sign_normalize(v: Sequence[int]) -> Vector:
    """Flip ``v`` so that its first nonzero entry is positive."""
    v = as_vector(v)
    for c in v:
        if c != 0:
            return v if c > 0 else tuple(-x for x in v)
    raise InvalidDirectionError("the zero vector is not a direction")


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(int(x) * int(y) for x, y in zip(a, b))


def sup_norm(v: Sequence[int]) -> int:
    return max((abs(int(c)) for c in v), default=0)


def is_primitive(v: Sequence[int]) -> bool:
    """True iff the entries of ``v`` have no common divisor other than 1."""
    v = as_vector(v)
    if not any(v):
        raise InvalidDirectionError("the zero vector is not a direction")
    return math.gcd(*v) == 1


def integer_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    a = [list(map(int, r)) for r in rows]
    if not a:
        return 0
    ncols = len(a[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(a)) if a[r][col] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        p = a[rank][col]
        for r in range(rank + 1, len(a)):
            q = a[r][col]
            a[r] = [(p * a[r][j] - q * a[rank][j]) // prev for j in range(ncols)]
        prev = p
        rank += 1
        if rank == len(a):
            break
    return rank


def linearly_independent(vectors: Sequence[Sequence[int]]) -> bool:
    """Exact rational linear independence of integer row vectors."""
    rows = [as_vector(v) for v in vectors]
    if not rows:
        return True
    n = len(rows[0])
    if any(len(r) != n for r in rows):
        raise DimensionError("vectors have different dimensions")
    if any(not any(r) for r in rows):
        raise InvalidDirectionError("the zero vector is not a direction")
    return integer_rank(rows) == len(rows)


@dataclass(frozen=True, order=True)
class DirectionTuple:
    """Canonical form of an element of the discrete Grassmannian.

    ``vectors`` is sorted lexicographically after sign normalization, so two
    tuples spanning the same sign-classes of vectors compare equal.  Use
    :meth:`of` to construct from arbitrary input.
    """

    vectors: tuple[Vector, ...]

    @classmethod
    def of(cls, vectors: Iterable[Sequence[int]]) -> "DirectionTuple":
        vs = [sign_normalize(v) for v in vectors]
        if not vs:
            raise InvalidDirectionError("a direction tuple needs at least one vector")
        n = len(vs[0])
        if any(len(v) != n for v in vs):
            raise DimensionError("vectors have different dimensions")
        if len(set(vs)) != len(vs):
            raise InvalidDirectionError(f"duplicate vectors in {vs}")
        if len(vs) >= n:
            raise DimensionError(f"need d < n, got d={len(vs)}, n={n}")
        if not linearly_independent(vs):
            raise InvalidDirectionError(f"vectors {vs} are linearly dependent")
        return cls(tuple(sorted(vs)))

    @property
    def n(self) -> int:
        return len(self.vectors[0])

    @property
    def d(self) -> int:
        return len(self.vectors)

    def is_orthogonal_to(self, k: Sequence[int]) -> bool:
        return all(dot(v, k) == 0 for v in self.vectors)

    def tolist(self) -> list[list[int]]:
        return [list(v) for v in self.vectors]

    def __iter__(self):
        return iter(self.vectors)

    def __len__(self):
        return len(self.vectors)


def _nonzero_classes(n: int, max_norm: int) -> list[Vector]:
    """All sign-normalized nonzero vectors with sup-norm <= max_norm, sorted."""
    rng = range(-max_norm, max_norm + 1)
    out = set()
    for v in itertools.product(rng, repeat=n):
        if any(v):
            out.add(sign_normalize(v))
    return sorted(out)


def enumerate_tuples(n: int, d: int, max_norm: int) -> list[DirectionTuple]:
    """Every direction tuple in Z^n with entries bounded by ``max_norm``.

    Each unordered tuple appears once, in canonical order.
    """
    if not 1 <= d < n:
        raise DimensionError(f"need 1 <= d < n, got d={d}, n={n}")
    if max_norm < 1:
        return []
    vecs = _nonzero_classes(n, max_norm)
    # combinations of a sorted list come out sorted, hence canonical
    return [
        DirectionTuple(combo)
        for combo in itertools.combinations(vecs, d)
        if d == 1 or linearly_independent(combo)
    ]


def kernel_basis(k: Sequence[int]) -> list[Vector]:
    """Integer basis of the lattice {v in Z^n : k.v = 0} for k != 0.

    Unimodular column operations reduce the row ``k`` to ``(g, 0, ..., 0)``;
    the columns of the accumulated transform that land on zeros span the
    kernel lattice.  A greedy size reduction then shortens the basis.
    """
    k = as_vector(k)
    n = len(k)
    if not any(k):
        raise InvalidDirectionError("kernel_basis needs k != 0")
    a = list(k)
    u = [[int(i == j) for j in range(n)] for i in range(n)]  # columns of U
    while sum(1 for c in a if c != 0) > 1:
        p = min((i for i in range(n) if a[i] != 0), key=lambda i: (abs(a[i]), i))
        for j in range(n):
            if j != p and a[j] != 0:
                q = a[j] // a[p]
                a[j] -= q * a[p]
                u[j] = [x - q * y for x, y in zip(u[j], u[p])]
    p = next(i for i in range(n) if a[i] != 0)
    basis = [u[j] for j in range(n) if j != p]
    return [sign_normalize(b) for b in _size_reduce(basis)]


def _norm2(v):
    return sum(x * x for x in v)


def _size_reduce(basis: list[list[int]]) -> list[list[int]]:
    basis = [list(b) for b in basis]
    changed = True
    while changed:
        changed = False
        for i in range(len(basis)):
            for j in range(len(basis)):
                if i == j:
                    continue
                bj = basis[j]
                q = round(dot(basis[i], bj) / _norm2(bj))
                if q:
                    cand = [x - q * y for x, y in zip(basis[i], bj)]
                    if _norm2(cand) < _norm2(basis[i]):
                        basis[i] = cand
                        changed = True
    return sorted(basis, key=lambda b: (_norm2(b), sign_normalize(b)))


def orthogonal_tuple(k: Sequence[int], d: int) -> DirectionTuple:
    """A direction tuple all of whose vectors are orthogonal to ``k``."""
    k = as_vector(k)
    n = len(k)
    if not 1 <= d < n:
        raise DimensionError(f"need 1 <= d < n, got d={d}, n={n}")
    if not any(k):
        return DirectionTuple.of(
            [tuple(int(i == j) for j in range(n)) for i in range(d)]
        )
    return DirectionTuple.of(kernel_basis(k)[:d])

"""Linear algebra over GF(2) with vectors packed into Python ints.

Coordinate ``i`` of a vector lives in bit ``i``.  A matrix is a sequence of
such ints together with its column count.  Over GF(2) every projective point
has exactly one nonzero representative, so points are plain ints as well.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

MAX_DIM = 64


def vec(coords: Iterable[int]) -> int:
    """Pack a coordinate sequence ``(x0, x1, ...)`` into an int."""
    v = 0
    for i, c in enumerate(coords):
        if c & 1:
            v |= 1 << i
    return v


def coords(v: int, dim: int) -> tuple[int, ...]:
    """Unpack ``v`` into ``dim`` coordinates."""
    return tuple((v >> i) & 1 for i in range(dim))


def fmt(v: int, dim: int) -> str:
    """Coordinate string, e.g. ``"110100"``."""
    return "".join(str(c) for c in coords(v, dim))


def unit(i: int) -> int:
    return 1 << i


def dot(a: int, b: int) -> int:
    """Standard dot product over GF(2)."""
    return (a & b).bit_count() & 1


def _check_dim(dim: int) -> None:
    if not 1 <= dim <= MAX_DIM:
        raise ValueError(f"dimension {dim} outside 1..{MAX_DIM}")


def _check_rows(rows: Sequence[int], dim: int) -> None:
    _check_dim(dim)
    for r in rows:
        if r < 0 or r >> dim:
            raise ValueError(f"row {r:#x} does not fit in dimension {dim}")


def _pivot(v: int) -> int:
    # first nonzero coordinate
    return (v & -v).bit_length() - 1


def _rref(rows: Iterable[int]) -> list[int]:
    basis: list[int] = []
    for r in rows:
        for b in basis:
            if r >> _pivot(b) & 1:
                r ^= b
        if r:
            p = _pivot(r)
            basis = [b ^ r if b >> p & 1 else b for b in basis]
            basis.append(r)
    basis.sort(key=_pivot)
    return basis


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of GF(2)^ambient_dim held by its reduced echelon basis.

    Equality and hashing go through the basis, which is canonical.
    """

    ambient_dim: int
    basis: tuple[int, ...]

    @property
    def dim(self) -> int:
        """Vector-space dimension (projective dimension + 1)."""
        return len(self.basis)

    def __contains__(self, v: int) -> bool:
        for b in self.basis:
            if v >> _pivot(b) & 1:
                v ^= b
        return v == 0

    def __repr__(self) -> str:
        rows = ",".join(fmt(b, self.ambient_dim) for b in self.basis)
        return f"Subspace({self.ambient_dim}, [{rows}])"

    def label(self) -> str:
        return "/".join(fmt(b, self.ambient_dim) for b in self.basis)


def echelon_basis(rows: Sequence[int], dim: int) -> Subspace:
    """Reduced row-echelon basis of the row span of ``rows``.

    Pivots sit at the lowest coordinate index of each row and increase
    down the basis; every pivot column holds a single 1.
    """
    _check_rows(rows, dim)
    return Subspace(dim, tuple(_rref(rows)))


def rank(rows: Sequence[int], dim: int | None = None) -> int:
    """GF(2) row rank."""
    if dim is not None:
        _check_rows(rows, dim)
    return len(_rref(rows))


def transpose(rows: Sequence[int], dim: int) -> list[int]:
    """Transpose an ``len(rows) x dim`` matrix."""
    return [vec((r >> j) & 1 for r in rows) for j in range(dim)]


def span(s: Subspace, t: Subspace) -> Subspace:
    if s.ambient_dim != t.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    return Subspace(s.ambient_dim, tuple(_rref(s.basis + t.basis)))


def intersect(s: Subspace, t: Subspace) -> Subspace:
    """Intersection via the Zassenhaus sum-intersection trick."""
    if s.ambient_dim != t.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    d = s.ambient_dim
    low = (1 << d) - 1
    rows = [b | (b << d) for b in s.basis] + list(t.basis)
    # pivots on the low half come first, so rows with an empty low half
    # carry the intersection in their high half
    inter = [r >> d for r in _rref(rows) if not r & low]
    return Subspace(d, tuple(_rref(inter)))


def nullspace(rows: Sequence[int], dim: int) -> Subspace:
    """All ``x`` with ``dot(r, x) == 0`` for every row ``r``."""
    _check_rows(rows, dim)
    basis = _rref(rows)
    pivots = {_pivot(b): b for b in basis}
    out = []
    for f in range(dim):
        if f in pivots:
            continue
        x = 1 << f
        for p, b in pivots.items():
            if b >> f & 1:
                x |= 1 << p
        out.append(x)
    return Subspace(dim, tuple(_rref(out)))


def subspace_points(s: Subspace) -> list[int]:
    """All nonzero vectors of ``s`` in increasing integer order."""
    pts = []
    for mask in range(1, 1 << s.dim):
        v = 0
        for i, b in enumerate(s.basis):
            if mask >> i & 1:
                v ^= b
        pts.append(v)
    pts.sort()
    return pts


def all_points(dim: int) -> list[int]:
    """The ``2**dim - 1`` points of PG(dim-1, 2) in increasing order."""
    _check_dim(dim)
    return list(range(1, 1 << dim))


def subspaces(dim: int, k: int) -> list[Subspace]:
    """Every ``k``-dimensional subspace of GF(2)^dim (small ``dim`` only)."""
    _check_dim(dim)
    seen: set[Subspace] = set()
    for rows in combinations(all_points(dim), k):
        s = echelon_basis(rows, dim)
        if s.dim == k:
            seen.add(s)
    return sorted(seen, key=lambda s: s.basis)

"""Quadrics, the Klein correspondence and the Veronese picture over GF(2).

Points are packed ints as in :mod:`polarlab.gf2core`.  A line of PG(d,2)
spanned by ``a`` and ``b`` is the point triple ``{a, b, a ^ b}``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from polarlab import gf2core
from polarlab.gf2core import Subspace, all_points, echelon_basis, intersect


class LineType(enum.IntEnum):
    """Number of quadric points on a line."""

    EXTERNAL = 0
    TANGENT = 1
    SECANT = 2
    CONTAINED = 3


class GeneratorFamily(enum.Enum):
    LATIN = "latin"
    GREEK = "greek"


class ConicOrbit(enum.IntEnum):
    O1 = 1
    O2 = 2
    O3 = 3
    O4 = 4


@dataclass(frozen=True)
class QuadraticForm:
    """``Q(x) = sum_{i<=j} c_ij x_i x_j`` over GF(2).

    ``upper[i]`` is the bitmask of the ``j >= i`` with ``c_ij = 1``.
    """

    dim: int
    upper: tuple[int, ...]

    def __post_init__(self):
        if len(self.upper) != self.dim:
            raise ValueError("need one coefficient row per coordinate")
        for i, row in enumerate(self.upper):
            if row & ((1 << i) - 1) or row >> self.dim:
                raise ValueError(f"row {i} has coefficients outside i <= j < dim")

    @classmethod
    def from_terms(cls, dim: int, terms) -> "QuadraticForm":
        upper = [0] * dim
        for i, j in terms:
            i, j = min(i, j), max(i, j)
            upper[i] ^= 1 << j
        return cls(dim, tuple(upper))

    def coeff(self, i: int, j: int) -> int:
        i, j = min(i, j), max(i, j)
        return self.upper[i] >> j & 1

    def __call__(self, x: int) -> int:
        return eval_form(self, x)

    def polar_rows(self) -> list[int]:
        """Gram matrix rows of the polarized form (alternating)."""
        rows = [0] * self.dim
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                if self.upper[i] >> j & 1:
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
        return rows

    def radical(self) -> Subspace:
        return gf2core.nullspace(self.polar_rows(), self.dim)

    def __str__(self) -> str:
        terms = []
        for i in range(self.dim):
            for j in range(i, self.dim):
                if self.coeff(i, j):
                    terms.append(f"x{i}^2" if i == j else f"x{i}x{j}")
        return " + ".join(terms) or "0"


def hyperbolic_form(n: int) -> QuadraticForm:
    """``x0 x_{2n-1} + x1 x_{2n-2} + ... + x_{n-1} x_n`` on GF(2)^{2n}."""
    if not 2 <= n <= 4:
        raise ValueError(f"n={n} outside 2..4")
    d = 2 * n
    return QuadraticForm.from_terms(d, [(i, d - 1 - i) for i in range(n)])


def eval_form(q: QuadraticForm, p: int) -> int:
    if p >> q.dim:
        raise ValueError("point does not fit the form's dimension")
    acc = 0
    x = p
    while x:
        i = (x & -x).bit_length() - 1
        acc += (q.upper[i] & p).bit_count()
        x &= x - 1
    return acc & 1


def bilinear(q: QuadraticForm, a: int, b: int) -> int:
    """Polarization ``Q(a+b) + Q(a) + Q(b)``."""
    return eval_form(q, a ^ b) ^ eval_form(q, a) ^ eval_form(q, b)


def quadric_points(q: QuadraticForm) -> list[int]:
    return [p for p in all_points(q.dim) if eval_form(q, p) == 0]


def third_point(a: int, b: int) -> int:
    if a == b:
        raise ValueError("a line needs two distinct points")
    return a ^ b


def line_type(q: QuadraticForm, a: int, b: int) -> LineType:
    c = third_point(a, b)
    on = 3 - eval_form(q, a) - eval_form(q, b) - eval_form(q, c)
    return LineType(on)


def is_totally_singular(q: QuadraticForm, s: Subspace) -> bool:
    return all(eval_form(q, p) == 0 for p in gf2core.subspace_points(s))


def polar_vector(q: QuadraticForm, a: int) -> int:
    """``w`` with ``bilinear(q, a, x) == dot(w, x)`` for every ``x``."""
    rows = q.polar_rows()
    w = 0
    for i in range(q.dim):
        if a >> i & 1:
            w ^= rows[i]
    return w


def generators(q: QuadraticForm) -> list[Subspace]:
    """Maximal totally singular subspaces, grown one point at a time.

    Each level keeps the canonical totally singular subspaces of one
    dimension; a subspace is extended by any singular point orthogonal to
    all of it.  Growth stops when no subspace extends.
    """
    return list(_generators(q))


@lru_cache(maxsize=None)
def _generators(q: QuadraticForm) -> tuple[Subspace, ...]:
    singular = quadric_points(q)
    perp = {p: polar_vector(q, p) for p in singular}
    level = {echelon_basis([p], q.dim) for p in singular}
    while True:
        nxt: set[Subspace] = set()
        for s in level:
            ws = [perp[b] for b in s.basis]
            for p in singular:
                if any(gf2core.dot(w, p) for w in ws) or p in s:
                    continue
                nxt.add(echelon_basis(s.basis + (p,), q.dim))
        if not nxt:
            break
        level = nxt
    return tuple(sorted(level, key=lambda s: s.basis))


def split_families(gens: list[Subspace]) -> tuple[list[Subspace], list[Subspace]]:
    """Split generators into (Latin, Greek).

    Two generators of vector dimension ``n`` share a family iff their
    intersection dimension is congruent to ``n`` mod 2.  The family holding
    ``span(e_0, ..., e_{n-1})`` is called Latin; for the Klein quadric this
    is the image of the lines through ``(1,0,0,0)``.
    """
    if not gens:
        raise ValueError("no generators")
    n = gens[0].dim
    same = lambda s, t: (intersect(s, t).dim - n) % 2 == 0
    first = [g for g in gens if same(gens[0], g)]
    other = [g for g in gens if not same(gens[0], g)]
    for fam in (first, other):
        for s, t in combinations(fam, 2):
            if not same(s, t):
                raise ValueError(f"parity relation is not an equivalence: {s} vs {t}")
    for s in first:
        for t in other:
            if same(s, t):
                raise ValueError(f"parity relation is not an equivalence: {s} vs {t}")
    anchor = echelon_basis([1 << i for i in range(n)], gens[0].ambient_dim)
    if anchor in other:
        first, other = other, first
    elif anchor not in first:
        raise ValueError("span(e_0..e_{n-1}) is not a generator of this form")
    return first, other


# -- Klein correspondence ------------------------------------------------

PLUCKER_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def klein_map(x: int, y: int) -> int:
    """Plucker point ``(p01, p02, p03, p12, p13, p23)`` of the line ``<x, y>`` of PG(3,2)."""
    if x == y:
        raise ValueError("a line needs two distinct points")
    if x >> 4 or y >> 4 or not x or not y:
        raise ValueError("points must lie in PG(3,2)")
    out = 0
    for k, (i, j) in enumerate(PLUCKER_PAIRS):
        pij = ((x >> i) & (y >> j) ^ (x >> j) & (y >> i)) & 1
        out |= pij << k
    return out


def klein_image(line: Subspace) -> int:
    a, b = line.basis
    return klein_map(a, b)


def lines_pg3() -> list[Subspace]:
    """The 35 lines of PG(3,2)."""
    return gf2core.subspaces(4, 2)


def planes_pg3() -> list[Subspace]:
    """The 15 planes of PG(3,2)."""
    return gf2core.subspaces(4, 3)


# -- Veronese surface and symmetric matrices ------------------------------


def veronese_map(p: int) -> int:
    """``(x1,x2,x3) -> (x1^2, x2^2, x3^2, x1x2, x1x3, x2x3)``; squares are identity over GF(2)."""
    if not p or p >> 3:
        raise ValueError("point must lie in PG(2,2)")
    x1, x2, x3 = gf2core.coords(p, 3)
    return gf2core.vec((x1, x2, x3, x1 & x2, x1 & x3, x2 & x3))


@dataclass(frozen=True)
class SymMatrix3:
    """Symmetric 3x3 matrix over GF(2) from the six coordinates X1..X6.

    Diagonal ``(X1, X2, X3)``; ``X4`` at (1,2), ``X5`` at (1,3), ``X6`` at (2,3).
    """

    bits: int

    def rows(self) -> list[int]:
        x1, x2, x3, x4, x5, x6 = gf2core.coords(self.bits, 6)
        return [gf2core.vec(r) for r in ((x1, x4, x5), (x4, x2, x6), (x5, x6, x3))]

    def to_array(self) -> np.ndarray:
        return np.array([gf2core.coords(r, 3) for r in self.rows()], dtype=np.uint8)

    @classmethod
    def from_array(cls, m) -> "SymMatrix3":
        m = np.asarray(m) % 2
        if not (m == m.T).all():
            raise ValueError("matrix is not symmetric")
        return cls(gf2core.vec((m[0, 0], m[1, 1], m[2, 2], m[0, 1], m[0, 2], m[1, 2])))

    def point(self) -> int:
        return self.bits

    def __add__(self, other: "SymMatrix3") -> "SymMatrix3":
        return SymMatrix3(self.bits ^ other.bits)

    @property
    def diagonal(self) -> int:
        return self.bits & 0b111


def sym_from_point(p: int) -> SymMatrix3:
    if p < 0 or p >> 6:
        raise ValueError("point must lie in PG(5,2)")
    return SymMatrix3(p)


def det3(m: SymMatrix3) -> int:
    """Determinant over GF(2): ``X1X2X3 + X1X6 + X2X5 + X3X4``."""
    x1, x2, x3, x4, x5, x6 = gf2core.coords(m.bits, 6)
    return (x1 & x2 & x3) ^ (x1 & x6) ^ (x2 & x5) ^ (x3 & x4)


def conic_orbit(m: SymMatrix3) -> ConicOrbit:
    """Orbit by matrix rank; rank 2 splits into alternating (O2) and not (O3)."""
    if m.bits == 0:
        raise ValueError("zero matrix is not a projective point")
    r = gf2core.rank(m.rows(), 3)
    if r == 1:
        return ConicOrbit.O1
    if r == 3:
        return ConicOrbit.O4
    return ConicOrbit.O2 if m.diagonal == 0 else ConicOrbit.O3


def secant_variety() -> list[int]:
    """Points of PG(5,2) whose matrix is singular."""
    return [p for p in all_points(6) if det3(SymMatrix3(p)) == 0]


def congruence_orbits() -> list[list[int]]:
    """Orbits of GL(3,2) on nonzero symmetric matrices under ``m -> A^T m A``.

    Brute force over all 168 invertible matrices; independent of rank.
    """
    gl = []
    for rows in np.ndindex(*(8,) * 3):
        a = np.array([gf2core.coords(r, 3) for r in rows], dtype=np.int64)
        if gf2core.rank(list(rows), 3) == 3:
            gl.append(a)
    seen: set[int] = set()
    orbits = []
    for p in all_points(6):
        if p in seen:
            continue
        m = SymMatrix3(p).to_array().astype(np.int64)
        orb = sorted({SymMatrix3.from_array(a.T @ m @ a % 2).bits for a in gl})
        seen.update(orb)
        orbits.append(orb)
    return orbits


# -- conics of PG(2,2) -----------------------------------------------------


def conic_form(p: int) -> QuadraticForm:
    """Read ``(a,b,c,d,e,f)`` as ``aZ1^2 + bZ2^2 + cZ3^2 + dZ1Z2 + eZ1Z3 + fZ2Z3``."""
    if not p or p >> 6:
        raise ValueError("point must lie in PG(5,2)")
    a, b, c, d, e, f = gf2core.coords(p, 6)
    upper = (a | d << 1 | e << 2, b << 1 | f << 2, c << 2)
    return QuadraticForm(3, upper)


def conic_point_set(p: int) -> frozenset[int]:
    q = conic_form(p)
    return frozenset(z for z in all_points(3) if eval_form(q, z) == 0)


def conic_discriminant(p: int) -> int:
    """Half-discriminant ``def + af + be + cd`` of the ternary form; 1 iff nonsingular."""
    a, b, c, d, e, f = gf2core.coords(p, 6)
    return (d & e & f) ^ (a & f) ^ (b & e) ^ (c & d)


def nonsingular_conics() -> list[int]:
    return [p for p in all_points(6) if conic_discriminant(p)]


def reverse6(p: int) -> int:
    """Reverse the six coordinates; carries ``det3`` onto ``conic_discriminant``."""
    return gf2core.vec(reversed(gf2core.coords(p, 6)))


def conic_nucleus(p: int) -> int:
    """The point spanning the radical of the conic's polarized form."""
    if not conic_discriminant(p):
        raise ValueError(f"conic {gf2core.fmt(p, 6)} is singular")
    rad = conic_form(p).radical()
    if rad.dim != 1:
        raise ValueError(f"conic {gf2core.fmt(p, 6)} has a {rad.dim}-dimensional radical")
    return rad.basis[0]


def line_dual(line_points: frozenset[int]) -> int:
    """Dual coordinates ``h`` of a line of PG(2,2): the line is ``{z : h.z = 0}``."""
    ns = gf2core.nullspace(list(line_points), 3)
    if ns.dim != 1:
        raise ValueError("points are not a line")
    return ns.basis[0]


def conic_antiflag(p: int) -> tuple[int, int]:
    """``(nucleus, dual of the complementary line)`` of a nonsingular conic."""
    n = conic_nucleus(p)
    rest = frozenset(all_points(3)) - conic_point_set(p) - {n}
    h = line_dual(rest)
    if gf2core.dot(h, n) != 1:
        raise ValueError("nucleus lies on the complementary line")
    return n, h


# -- hyperbolic quadrics through the alternating plane ----------------------


@lru_cache(maxsize=1)
def quadrics_meeting_secant_in_plane() -> tuple[QuadraticForm, ...]:
    """Hyperbolic quadrics of PG(5,2) meeting the secant variety exactly in O2.

    O2 is the plane ``X1 = X2 = X3 = 0``; a form vanishes on it iff none of
    its monomials uses only coordinates 3, 4, 5.  All such forms are
    enumerated and kept when they are nondegenerate with 35 zeros and their
    zeros on the secant variety are exactly O2.
    """
    o2 = {p for p in all_points(6) if conic_orbit(SymMatrix3(p)) == ConicOrbit.O2}
    sec = set(secant_variety())
    free = [(i, j) for i in range(6) for j in range(i, 6) if i < 3 or j < 3]
    pts = np.array(all_points(6), dtype=np.int64)
    bit = (pts[:, None] >> np.arange(6)) & 1
    monos = np.stack([bit[:, i] & bit[:, j] for i, j in free], axis=1)
    masks = np.arange(1 << len(free), dtype=np.int64)
    sel = (masks[:, None] >> np.arange(len(free))) & 1
    values = (sel @ monos.T) % 2
    zero_sets = values == 0
    want = np.array([p in o2 for p in pts.tolist()])
    in_sec = np.array([p in sec for p in pts.tolist()])
    ok = (zero_sets.sum(axis=1) == 35) & ((zero_sets & in_sec) == want).all(axis=1)
    found = []
    for mask in np.flatnonzero(ok).tolist():
        q = QuadraticForm.from_terms(6, [free[t] for t in range(len(free)) if mask >> t & 1])
        if q.radical().dim == 0:
            found.append(q)
    return tuple(found)


# -- Klein dictionary -------------------------------------------------------


def klein_dictionary() -> dict[str, dict]:
    """Check every row of the line/point dictionary exhaustively over PG(3,2).

    Each entry records how many configurations were checked, whether all
    passed, and the first failing configuration.
    """
    q = hyperbolic_form(3)
    lines = lines_pg3()
    image = {l: klein_image(l) for l in lines}
    latin, greek = split_families(generators(q))
    latin, greek = set(latin), set(greek)
    out: dict[str, dict] = {}

    def record(name, items, test, show):
        checked = 0
        for item in items:
            checked += 1
            if not test(item):
                out[name] = {"checked": checked, "ok": False, "witness": show(item)}
                return
        out[name] = {"checked": checked, "ok": True, "witness": None}

    pair_show = lambda lr: [lr[0].label(), lr[1].label()]
    pairs = list(combinations(lines, 2))
    record(
        "bijection_onto_quadric",
        [None],
        lambda _: sorted(image.values()) == quadric_points(q),
        lambda _: sorted(image.values()),
    )
    record(
        "plucker_relation",
        lines,
        lambda l: eval_form(q, image[l]) == 0,
        lambda l: l.label(),
    )
    record(
        "skew_lines_non_orthogonal",
        [lr for lr in pairs if intersect(*lr).dim == 0],
        lambda lr: bilinear(q, image[lr[0]], image[lr[1]]) == 1,
        pair_show,
    )
    record(
        "meeting_lines_orthogonal",
        [lr for lr in pairs if intersect(*lr).dim == 1],
        lambda lr: bilinear(q, image[lr[0]], image[lr[1]]) == 0,
        pair_show,
    )

    planes = planes_pg3()
    pencils = []
    for pl in planes:
        for p in gf2core.subspace_points(pl):
            pencils.append((p, pl, [l for l in lines if p in l and all(b in pl for b in l.basis)]))

    def pencil_ok(item):
        _, _, ls = item
        pts = sorted(image[l] for l in ls)
        s = echelon_basis(pts, 6)
        return len(ls) == 3 and s.dim == 2 and is_totally_singular(q, s)

    record(
        "pencil_to_quadric_line",
        pencils,
        pencil_ok,
        lambda item: [gf2core.fmt(item[0], 4), item[1].label()],
    )

    def image_plane(ls):
        s = echelon_basis([image[l] for l in ls], 6)
        return s if len(ls) == 7 and s.dim == 3 and is_totally_singular(q, s) else None

    stars = [(p, [l for l in lines if p in l]) for p in all_points(4)]
    record(
        "star_to_latin_plane",
        stars,
        lambda item: image_plane(item[1]) in latin,
        lambda item: gf2core.fmt(item[0], 4),
    )
    ruled = [(pl, [l for l in lines if all(b in pl for b in l.basis)]) for pl in planes]
    record(
        "plane_to_greek_plane",
        ruled,
        lambda item: image_plane(item[1]) in greek,
        lambda item: item[0].label(),
    )
    return out


def o2_is_plane() -> bool:
    """The seven alternating matrices are closed under taking third points."""
    o2 = {p for p in all_points(6) if conic_orbit(SymMatrix3(p)) == ConicOrbit.O2}
    return len(o2) == 7 and all(a ^ b in o2 for a, b in combinations(sorted(o2), 2))

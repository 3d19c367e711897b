"""Builders for the realizations of NO+(2n,2) and the quadric-with-a-hole graphs."""

from __future__ import annotations

import enum
from itertools import product

import numpy as np

from polarlab import gf2core, projgeom
from polarlab.gf2core import Subspace, all_points, echelon_basis, fmt, intersect
from polarlab.graphcore import AssociationScheme, LabeledGraph, SrgParams, complement
from polarlab.projgeom import LineType, SymMatrix3, bilinear, det3, eval_form, line_type


class ConstructionId(enum.Enum):
    NO_PLUS = "no_plus"
    HOLE = "hole"
    HOLE_COMPLEMENT = "hole_complement"
    KLEIN_GREEK = "klein_greek"
    KLEIN_LATIN = "klein_latin"
    ANTIFLAG = "antiflag"
    CONICS = "conics"
    SECANT = "secant"
    SYMMAT = "symmat"


AMBIENT = {
    ConstructionId.NO_PLUS: "PG(2n-1,2)",
    ConstructionId.HOLE: "PG(2n-1,2)",
    ConstructionId.HOLE_COMPLEMENT: "PG(2n-1,2)",
    ConstructionId.KLEIN_GREEK: "PG(3,2)",
    ConstructionId.KLEIN_LATIN: "PG(3,2)",
    ConstructionId.ANTIFLAG: "PG(n-1,2)",
    ConstructionId.CONICS: "PG(2,2)",
    ConstructionId.SECANT: "PG(5,2)",
    ConstructionId.SYMMAT: "S_3(GF(2))",
}


def ambient(cid: ConstructionId, n: int) -> str:
    return AMBIENT[cid].replace("2n-1", str(2 * n - 1)).replace("n-1", str(n - 1))


VERTEX_SETS = {
    ConstructionId.NO_PLUS: "points off the hyperbolic quadric",
    ConstructionId.HOLE: "quadric points off a generator (lines-in-X adjacency)",
    ConstructionId.HOLE_COMPLEMENT: "quadric points off a generator",
    ConstructionId.KLEIN_GREEK: "lines not on a fixed plane",
    ConstructionId.KLEIN_LATIN: "lines not through a fixed point",
    ConstructionId.ANTIFLAG: "point-hyperplane antiflags",
    ConstructionId.CONICS: "nonsingular conics",
    ConstructionId.SECANT: "points off the secant variety",
    ConstructionId.SYMMAT: "nonsingular symmetric 3x3 matrices",
}

SUPPORTED_N = {
    ConstructionId.NO_PLUS: (2, 3, 4),
    ConstructionId.HOLE: (2, 3, 4),
    ConstructionId.HOLE_COMPLEMENT: (2, 3, 4),
    ConstructionId.ANTIFLAG: (3, 4),
}

# the eight constructions claimed to give srg(28,15,6,10)
EQUIVALENT_28 = (
    ConstructionId.NO_PLUS,
    ConstructionId.HOLE_COMPLEMENT,
    ConstructionId.KLEIN_GREEK,
    ConstructionId.KLEIN_LATIN,
    ConstructionId.ANTIFLAG,
    ConstructionId.CONICS,
    ConstructionId.SECANT,
    ConstructionId.SYMMAT,
)


class ConstructionError(RuntimeError):
    """Two descriptions of the same graph disagree."""


# -- parameter formulas -----------------------------------------------------


def no_plus_params(n: int) -> SrgParams:
    if n < 2:
        raise ValueError("n must be at least 2")
    return SrgParams(
        2 ** (2 * n - 1) - 2 ** (n - 1),
        2 ** (2 * n - 2) - 1,
        2 ** (2 * n - 3) - 2,
        2 ** (2 * n - 3) + 2 ** (n - 2),
    )


def _gauss(m: int, q: int) -> int:
    # (q^m - 1)/(q - 1)
    return (q**m - 1) // (q - 1)


def hole_params(n: int, q: int) -> SrgParams:
    if n < 2 or q < 2:
        raise ValueError("need n >= 2 and q >= 2")
    base = q ** (n - 1)
    return SrgParams(
        base * _gauss(n, q),
        base * _gauss(n - 1, q),
        base * _gauss(n - 2, q) + q ** (n - 2) * (q - 1),
        base * _gauss(n - 2, q),
    )


# -- NO+(2n,2) --------------------------------------------------------------


def build_no_plus(n: int) -> LabeledGraph:
    """Points off Q+(2n-1,2); adjacent when the joining line is tangent."""
    q = projgeom.hyperbolic_form(n)
    d = q.dim
    verts = [p for p in all_points(d) if eval_form(q, p)]

    def adjacent(a, b):
        tangent = line_type(q, a, b) is LineType.TANGENT
        if tangent != (eval_form(q, a ^ b) == 0) or tangent != (bilinear(q, a, b) == 0):
            raise ConstructionError(f"tangent rule disagrees at ({fmt(a, d)}, {fmt(b, d)})")
        return tangent

    return LabeledGraph.from_predicate(verts, adjacent, lambda p: f"no_plus:{fmt(p, d)}")


# -- quadric with a hole ----------------------------------------------------


def hole_relation(q, pi: Subspace, a: int, b: int) -> str:
    """Classify a pair of X = Q \\ pi: 'line-in-X', 'secant' or 'meets-pi'."""
    t = line_type(q, a, b)
    if t is LineType.SECANT:
        return "secant"
    if t is not LineType.CONTAINED:
        raise ConstructionError("two quadric points span a tangent or external line")
    return "meets-pi" if (a ^ b) in pi else "line-in-X"


def build_hole(n: int, complement_graph: bool = False, generator: Subspace | None = None) -> LabeledGraph:
    """The graph on X = Q+(2n-1,2) minus a generator.

    Without the flag, edges are lines contained in X.  With it, the
    complement is returned after checking it equals the union of the
    secant and meets-the-generator relations.
    """
    q = projgeom.hyperbolic_form(n)
    d = q.dim
    pi = generator if generator is not None else projgeom.generators(q)[0]
    verts = [p for p in projgeom.quadric_points(q) if p not in pi]
    bar = LabeledGraph.from_predicate(
        verts, lambda a, b: hole_relation(q, pi, a, b) == "line-in-X", lambda p: f"hole:{fmt(p, d)}"
    )
    if not complement_graph:
        return bar
    g = complement(bar)
    two_rel = LabeledGraph.from_predicate(
        verts, lambda a, b: hole_relation(q, pi, a, b) in ("secant", "meets-pi")
    )
    if two_rel.rows != g.rows:
        i = next(i for i in range(len(verts)) if two_rel.rows[i] != g.rows[i])
        raise ConstructionError(f"complement and secant/meets-generator rule differ at vertex {g.labels[i]}")
    return g.with_labels([f"hole_complement:{fmt(p, d)}" for p in verts])


# -- Klein correspondence ---------------------------------------------------

FIXED_PLANE = echelon_basis([0b0001, 0b0010, 0b0100], 4)  # x3 = 0
FIXED_POINT = 0b0001  # (1,0,0,0)


def klein_vertices(variant: str) -> list[Subspace]:
    lines = projgeom.lines_pg3()
    if variant == "greek":
        verts = [l for l in lines if intersect(l, FIXED_PLANE).dim != 2]
        for l in verts:
            if intersect(l, FIXED_PLANE).dim != 1:
                raise ConstructionError(f"line {l.label()} misses the fixed plane")
        return verts
    if variant == "latin":
        return [l for l in lines if FIXED_POINT not in l]
    raise ValueError(f"unknown Klein variant {variant!r}")


def klein_relation(variant: str, l: Subspace, r: Subspace) -> int:
    """1 for skew lines, 2 for the variant's second rule, 0 otherwise."""
    meet = intersect(l, r)
    if meet.dim == 0:
        return 1
    if variant == "greek":
        return 2 if meet.dim == 1 and meet.basis[0] in FIXED_PLANE else 0
    join = gf2core.span(l, echelon_basis([FIXED_POINT], 4))
    return 2 if all(b in join for b in r.basis) else 0


def build_klein(variant: str) -> LabeledGraph:
    """Lines of PG(3,2) off a fixed plane (greek) or missing a fixed point (latin)."""
    verts = klein_vertices(variant)
    return LabeledGraph.from_predicate(
        verts, lambda l, r: klein_relation(variant, l, r) > 0, lambda l: f"klein_{variant}:{l.label()}"
    )


def klein_degree_split(variant: str) -> list[tuple[int, int]]:
    """Per vertex, the number of neighbours through each of the two rules."""
    verts = klein_vertices(variant)
    out = []
    for l in verts:
        rel = [klein_relation(variant, l, r) for r in verts if r != l]
        out.append((rel.count(1), rel.count(2)))
    return out


# -- antiflags --------------------------------------------------------------

RELATION_NAMES = ("A0", "A1", "A2", "A3", "A4")


def antiflags(n: int) -> list[tuple[int, int]]:
    """Pairs (point, hyperplane) of PG(n-1,2) with the point off the hyperplane.

    Hyperplanes are stored by dual coordinates ``h``: ``{x : h.x = 0}``.
    """
    pts = all_points(n)
    return [(p, h) for p in pts for h in pts if gf2core.dot(p, h)]


def antiflag_relation(a: tuple[int, int], b: tuple[int, int]) -> int:
    """Relation index with precedence A0 > A3 > A1 > A2 > A4."""
    (p, h), (p2, h2) = a, b
    if p == p2 and h == h2:
        return 0
    if p == p2 or h == h2:
        return 3
    p_in_h2 = not gf2core.dot(p, h2)
    p2_in_h = not gf2core.dot(p2, h)
    if p_in_h2 != p2_in_h:
        return 1
    return 2 if p_in_h2 else 4


def literal_relations(a: tuple[int, int], b: tuple[int, int]) -> set[int]:
    """Every relation whose defining condition holds, read without precedence."""
    (p, h), (p2, h2) = a, b
    p_in_h2 = not gf2core.dot(p, h2)
    p2_in_h = not gf2core.dot(p2, h)
    out = set()
    if p == p2 and h == h2:
        out.add(0)
    if p_in_h2 != p2_in_h:
        out.add(1)
    if p_in_h2 and p2_in_h:
        out.add(2)
    if (p == p2) != (h == h2):
        out.add(3)
    if not p_in_h2 and not p2_in_h:
        out.add(4)
    return out


def _antiflag_label(n: int, f: tuple[int, int]) -> str:
    return f"antiflag:{fmt(f[0], n)}|{fmt(f[1], n)}"


def build_antiflag_scheme(n: int) -> AssociationScheme:
    if n not in (3, 4):
        raise ValueError(f"antiflag scheme needs n in (3, 4), got {n}")
    flags = antiflags(n)
    m = len(flags)
    rel = np.zeros((m, m), dtype=np.int64)
    for i, j in product(range(m), repeat=2):
        rel[i, j] = antiflag_relation(flags[i], flags[j])
    return AssociationScheme(tuple(_antiflag_label(n, f) for f in flags), rel, RELATION_NAMES)


def build_antiflag_graph(n: int) -> LabeledGraph:
    """Antiflags joined by relations A2, A3 and A4."""
    return build_antiflag_scheme(n).graph((2, 3, 4))


# -- conics, secant variety, symmetric matrices -------------------------------


def conic_antiflag_map() -> dict[int, tuple[int, int]]:
    """Nonsingular conic -> (nucleus, complementary line); checked to be a bijection."""
    conics = projgeom.nonsingular_conics()
    m = {c: projgeom.conic_antiflag(c) for c in conics}
    if sorted(m.values()) != sorted(antiflags(3)):
        raise ConstructionError("conics do not correspond one-to-one with antiflags")
    return m


def build_conics() -> LabeledGraph:
    m = conic_antiflag_map()
    conics = sorted(m)
    return LabeledGraph.from_predicate(
        conics,
        lambda a, b: antiflag_relation(m[a], m[b]) in (2, 3, 4),
        lambda c: f"conics:{fmt(c, 6)}",
    )


def _on_secant(p: int) -> bool:
    return det3(SymMatrix3(p)) == 0


def build_secant_graph() -> LabeledGraph:
    """Points off the secant variety; adjacent when the joining line meets it once."""
    verts = [p for p in all_points(6) if not _on_secant(p)]

    def adjacent(a, b):
        hits = sum(_on_secant(x) for x in (a, b, a ^ b))
        return hits == 1

    return LabeledGraph.from_predicate(verts, adjacent, lambda p: f"secant:{fmt(p, 6)}")


def _matrix_label(m: SymMatrix3) -> str:
    return "/".join(fmt(r, 3) for r in m.rows())


def build_symmetric_graph() -> LabeledGraph:
    """Nonsingular symmetric 3x3 matrices; adjacent when the sum is singular."""
    verts = [SymMatrix3(p) for p in all_points(6)]
    verts = [m for m in verts if det3(m)]
    return LabeledGraph.from_predicate(
        verts, lambda a, b: det3(a + b) == 0, lambda m: f"symmat:{_matrix_label(m)}"
    )


def build(cid: ConstructionId | str, n: int = 3) -> LabeledGraph:
    cid = ConstructionId(cid)
    allowed = SUPPORTED_N.get(cid, (3,))
    if n not in allowed:
        raise ValueError(f"construction {cid.value} is not available for n={n} (supported: {allowed})")
    if cid is ConstructionId.NO_PLUS:
        return build_no_plus(n)
    if cid is ConstructionId.HOLE:
        return build_hole(n)
    if cid is ConstructionId.HOLE_COMPLEMENT:
        return build_hole(n, complement_graph=True)
    if cid is ConstructionId.KLEIN_GREEK:
        return build_klein("greek")
    if cid is ConstructionId.KLEIN_LATIN:
        return build_klein("latin")
    if cid is ConstructionId.ANTIFLAG:
        return build_antiflag_graph(n)
    if cid is ConstructionId.CONICS:
        return build_conics()
    if cid is ConstructionId.SECANT:
        return build_secant_graph()
    return build_symmetric_graph()

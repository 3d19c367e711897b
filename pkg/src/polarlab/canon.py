"""Canonical labeling by individualization-refinement.

The search tree follows the usual scheme: refine the ordered partition to an
equitable one, pick the first smallest non-singleton cell, and branch on each
of its vertices.  Every node records the trace of its refinement; the
canonical leaf minimises ``(traces along the path, relabeled adjacency
rows)``.  Leaves that reproduce the first or best leaf yield automorphisms,
which prune sibling branches and give the group order by orbit-stabilizer
counting along the first path.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Sequence

from polarlab.graphcore import LabeledGraph, encode_graph6

DEFAULT_NODE_BUDGET = 10**8


class BudgetExceeded(RuntimeError):
    """The search tree grew past the node cap."""


def node_budget() -> int:
    env = os.environ.get("POLARLAB_NODE_BUDGET")
    if env is None:
        return DEFAULT_NODE_BUDGET
    try:
        value = int(env)
    except ValueError:
        raise ValueError(f"POLARLAB_NODE_BUDGET must be an integer, got {env!r}") from None
    if value < 1:
        raise ValueError("POLARLAB_NODE_BUDGET must be positive")
    return value


def _mask(cell: Sequence[int]) -> int:
    m = 0
    for v in cell:
        m |= 1 << v
    return m


def refine(rows: Sequence[int], cells: list[list[int]], pending: list[bool] | None = None):
    """Coarsest equitable refinement of an ordered partition.

    ``pending`` flags the cells still to be used as splitters (all of them
    when omitted).  A split cell is replaced in place by its parts, ordered
    by increasing neighbour count.  Returns ``(cells, trace)``; the trace
    lists every split as ``(position, ((count, size), ...))`` and is an
    isomorphism invariant of the input pair.
    """
    cells = [list(c) for c in cells]
    pending = [True] * len(cells) if pending is None else list(pending)
    trace = []
    n = sum(len(c) for c in cells)
    while len(cells) < n:
        try:
            w = pending.index(True)
        except ValueError:
            break
        pending[w] = False
        wmask = _mask(cells[w])
        k = 0
        while k < len(cells):
            cell = cells[k]
            if len(cell) == 1:
                k += 1
                continue
            groups: dict[int, list[int]] = {}
            for v in cell:
                groups.setdefault((rows[v] & wmask).bit_count(), []).append(v)
            if len(groups) == 1:
                k += 1
                continue
            counts = sorted(groups)
            parts = [groups[c] for c in counts]
            trace.append((k, tuple((c, len(groups[c])) for c in counts)))
            if pending[k]:
                flags = [True] * len(parts)
            else:
                big = max(range(len(parts)), key=lambda t: (len(parts[t]), -t))
                flags = [t != big for t in range(len(parts))]
            cells[k:k + 1] = parts
            pending[k:k + 1] = flags
            if w > k:
                w += len(parts) - 1
            k += len(parts)
    return cells, tuple(trace)


def equitable_partition(g: LabeledGraph, cells: list[list[int]] | None = None) -> list[list[int]]:
    if cells is None:
        cells = [list(range(g.order))]
    return refine(g.rows, cells)[0]


@dataclass
class _Leaf:
    seq: tuple[int, ...]
    traces: tuple
    lab: list[int]
    key: tuple[int, ...]


@dataclass(frozen=True)
class CanonResult:
    """Outcome of one search: canonical labeling plus what was learned about Aut(g)."""

    certificate: bytes
    labeling: tuple[int, ...]  # labeling[i] = vertex placed at canonical position i
    generators: tuple[tuple[int, ...], ...]
    group_order: int
    nodes: int
    base: tuple[int, ...] = field(default=())
    orbit_sizes: tuple[int, ...] = field(default=())


class _Search:
    def __init__(self, g: LabeledGraph, budget: int):
        self.rows = g.rows
        self.n = g.order
        self.budget = budget
        self.nodes = 0
        self.first: _Leaf | None = None
        self.best: _Leaf | None = None
        self.gens: list[tuple[int, ...]] = []
        self.orbit_sizes: dict[int, int] = {}

    # -- group bookkeeping ----------------------------------------------

    def _orbits(self, fixed: Sequence[int]) -> list[int]:
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for gen in self.gens:
            if any(gen[v] != v for v in fixed):
                continue
            for x, y in enumerate(gen):
                rx, ry = find(x), find(y)
                if rx != ry:
                    parent[max(rx, ry)] = min(rx, ry)
        return [find(x) for x in range(self.n)]

    def _add_generator(self, a: _Leaf, b: _Leaf) -> None:
        gamma = [0] * self.n
        for x, y in zip(a.lab, b.lab):
            gamma[x] = y
        gamma = tuple(gamma)
        for v in range(self.n):
            row = 0
            for u in _bits(self.rows[v]):
                row |= 1 << gamma[u]
            if row != self.rows[gamma[v]]:
                raise AssertionError("leaf match produced a non-automorphism")
        if any(gamma[x] != x for x in range(self.n)):
            self.gens.append(gamma)

    # -- tree -------------------------------------------------------------

    def _leaf_key(self, cells: list[list[int]]) -> tuple[list[int], tuple[int, ...]]:
        lab = [c[0] for c in cells]
        pos = [0] * self.n
        for i, v in enumerate(lab):
            pos[v] = i
        key = []
        for v in lab:
            r = 0
            for u in _bits(self.rows[v]):
                r |= 1 << pos[u]
            key.append(r)
        return lab, tuple(key)

    @staticmethod
    def _diverge(a: Sequence[int], b: Sequence[int]) -> int:
        for k, (x, y) in enumerate(zip(a, b)):
            if x != y:
                return k
        return min(len(a), len(b))

    def leaf(self, cells, seq, traces, eq_first, cmp_best) -> int:
        level = len(seq)
        lab, key = self._leaf_key(cells)
        leaf = _Leaf(tuple(seq), tuple(traces), lab, key)
        if self.first is None:
            self.first = self.best = leaf
            return level - 1
        if eq_first and key == self.first.key:
            self._add_generator(self.first, leaf)
            return self._diverge(seq, self.first.seq)
        if cmp_best == 0 and key == self.best.key:
            self._add_generator(self.best, leaf)
            return self._diverge(seq, self.best.seq)
        if cmp_best < 0 or (cmp_best == 0 and key < self.best.key):
            self.best = leaf
        return level - 1

    def visit(self, cells, seq, traces, eq_first, cmp_best) -> int:
        """Explore the subtree at this node; return the level that should resume."""
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(f"canonical search exceeded {self.budget} nodes")
        level = len(seq)
        if len(cells) == self.n:
            return self.leaf(cells, seq, traces, eq_first, cmp_best)
        size = min(len(c) for c in cells if len(c) > 1)
        target = next(t for t, c in enumerate(cells) if len(c) == size)
        cell = sorted(cells[target])
        explored: list[int] = []
        ngens = -1
        orbit = None
        for v in cell:
            if ngens != len(self.gens):
                orbit = self._orbits(seq)
                ngens = len(self.gens)
            if any(orbit[v] == orbit[u] for u in explored):
                continue
            explored.append(v)
            child = cells[:target] + [[v], [u for u in cells[target] if u != v]] + cells[target + 1:]
            pending = [False] * len(child)
            pending[target] = True
            child, tr = refine(self.rows, child, pending)
            depth = level + 1
            c_first = eq_first and self.first is not None and (
                len(self.first.traces) > depth and tr == self.first.traces[depth]
            )
            if self.first is None:
                c_first, c_best = True, 0
            elif cmp_best == 0:
                ref = self.best.traces[depth] if len(self.best.traces) > depth else None
                c_best = 0 if tr == ref else (-1 if ref is None or tr < ref else 1)
            else:
                c_best = cmp_best
            if not c_first and c_best > 0:
                continue
            back = self.visit(child, seq + [v], traces + [tr], c_first, c_best)
            if back < level:
                return back
        if self.first is not None and tuple(seq) == self.first.seq[:level]:
            orbit = self._orbits(seq)
            rep = orbit[self.first.seq[level]]
            self.orbit_sizes[level] = sum(1 for v in cell if orbit[v] == rep)
        return level - 1

    def run(self) -> CanonResult:
        n = self.n
        if n == 0:
            return CanonResult(encode_graph6(LabeledGraph((), ())), (), (), 1, 0)
        cells, tr = refine(self.rows, [list(range(n))])
        self.visit(cells, [], [tr], True, 0)
        best = self.best
        relabeled = LabeledGraph(tuple(str(i) for i in range(n)), best.key)
        order = 1
        for level in sorted(self.orbit_sizes):
            order *= self.orbit_sizes[level]
        base = self.first.seq
        return CanonResult(
            certificate=encode_graph6(relabeled),
            labeling=tuple(best.lab),
            generators=tuple(self.gens),
            group_order=order,
            nodes=self.nodes,
            base=base,
            orbit_sizes=tuple(self.orbit_sizes[k] for k in range(len(base))),
        )


def _bits(x: int):
    while x:
        yield (x & -x).bit_length() - 1
        x &= x - 1


def canonical_form(g: LabeledGraph, budget: int | None = None) -> CanonResult:
    """Run the full search once; see :class:`CanonResult`."""
    return _Search(g, node_budget() if budget is None else budget).run()


def certificate(g: LabeledGraph, budget: int | None = None) -> bytes:
    """graph6 string of the canonically relabeled graph."""
    return canonical_form(g, budget).certificate


def automorphism_order(g: LabeledGraph, budget: int | None = None) -> int:
    return canonical_form(g, budget).group_order


def verify_isomorphism(g: LabeledGraph, h: LabeledGraph, phi: Sequence[int]) -> bool:
    """Pair-by-pair check that ``phi`` maps ``g`` onto ``h``."""
    n = g.order
    if h.order != n or sorted(phi) != list(range(n)):
        return False
    return all(
        g.adjacent(x, y) == h.adjacent(phi[x], phi[y]) for x in range(n) for y in range(x + 1, n)
    )


def isomorphism(g: LabeledGraph, h: LabeledGraph, budget: int | None = None) -> tuple[int, ...] | None:
    """A vertex bijection ``phi`` with ``g ~ h`` under ``phi``, or ``None``.

    Cheap invariants (order, degree sequence) reject first; otherwise the
    canonical forms decide.  A returned witness is always re-verified.
    """
    if g.order != h.order or sorted(g.degrees()) != sorted(h.degrees()):
        return None
    cg = canonical_form(g, budget)
    ch = canonical_form(h, budget)
    if cg.certificate != ch.certificate:
        return None
    phi = [0] * g.order
    for x, y in zip(cg.labeling, ch.labeling):
        phi[x] = y
    if not verify_isomorphism(g, h, phi):
        raise AssertionError("equal certificates but the induced map is not an isomorphism")
    return tuple(phi)

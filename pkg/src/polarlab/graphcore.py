"""Graphs with packed adjacency rows, SRG certification, schemes and graph6."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np


@dataclass(frozen=True)
class LabeledGraph:
    """Simple undirected graph; ``rows[i]`` is the neighbour bitmask of vertex ``i``."""

    labels: tuple[str, ...]
    rows: tuple[int, ...]

    def __post_init__(self):
        n = len(self.rows)
        if len(self.labels) != n:
            raise ValueError(f"{len(self.labels)} labels for {n} vertices")
        for i, r in enumerate(self.rows):
            if r >> i & 1:
                raise ValueError(f"loop at vertex {i}")
            if r >> n:
                raise ValueError(f"row {i} points past vertex {n - 1}")
            x = r
            while x:
                j = (x & -x).bit_length() - 1
                if not self.rows[j] >> i & 1:
                    raise ValueError(f"asymmetric adjacency at ({i}, {j})")
                x &= x - 1

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], labels: Sequence[str] | None = None):
        rows = [0] * n
        for i, j in edges:
            if i == j:
                raise ValueError(f"loop at vertex {i}")
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        if labels is None:
            labels = [str(i) for i in range(n)]
        return cls(tuple(labels), tuple(rows))

    @classmethod
    def from_predicate(cls, items: Sequence, adjacent: Callable, label: Callable = str):
        """Graph on ``items`` with an edge wherever ``adjacent(a, b)`` holds."""
        n = len(items)
        rows = [0] * n
        for i in range(n):
            for j in range(i + 1, n):
                if adjacent(items[i], items[j]):
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
        return cls(tuple(label(x) for x in items), tuple(rows))

    @classmethod
    def from_matrix(cls, adj, labels: Sequence[str] | None = None):
        a = np.asarray(adj, dtype=bool)
        n = a.shape[0]
        rows = tuple(sum(1 << j for j in np.flatnonzero(a[i]).tolist()) for i in range(n))
        if labels is None:
            labels = [str(i) for i in range(n)]
        return cls(tuple(labels), rows)

    @property
    def order(self) -> int:
        return len(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def adjacent(self, i: int, j: int) -> bool:
        return bool(self.rows[i] >> j & 1)

    def neighbors(self, i: int) -> list[int]:
        r, out = self.rows[i], []
        while r:
            out.append((r & -r).bit_length() - 1)
            r &= r - 1
        return out

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.order) for j in self.neighbors(i) if i < j]

    def num_edges(self) -> int:
        return sum(self.degrees()) // 2

    def matrix(self) -> np.ndarray:
        n = self.order
        a = np.zeros((n, n), dtype=bool)
        for i in range(n):
            a[i, self.neighbors(i)] = True
        return a

    def relabel(self, perm: Sequence[int]) -> "LabeledGraph":
        """Move vertex ``i`` to position ``perm[i]``."""
        n = self.order
        rows = [0] * n
        labels = [""] * n
        for i in range(n):
            r = 0
            for j in self.neighbors(i):
                r |= 1 << perm[j]
            rows[perm[i]] = r
            labels[perm[i]] = self.labels[i]
        return LabeledGraph(tuple(labels), tuple(rows))

    def with_labels(self, labels: Sequence[str]) -> "LabeledGraph":
        return LabeledGraph(tuple(labels), self.rows)


@dataclass(frozen=True)
class SrgParams:
    v: int
    k: int
    lam: int
    mu: int

    def astuple(self) -> tuple[int, int, int, int]:
        return (self.v, self.k, self.lam, self.mu)

    def feasible(self) -> bool:
        return self.v > self.k and self.k * (self.k - self.lam - 1) == (self.v - self.k - 1) * self.mu

    def __str__(self) -> str:
        return f"srg({self.v},{self.k},{self.lam},{self.mu})"


class SrgError(ValueError):
    """Strong regularity fails; ``kind`` is one of degenerate/irregular/lambda/mu."""

    def __init__(self, kind: str, message: str, witness: tuple[int, ...] = ()):
        super().__init__(message)
        self.kind = kind
        self.witness = witness


def srg_params(g: LabeledGraph) -> SrgParams:
    """Certify ``g`` strongly regular and return its parameters.

    Raises :class:`SrgError` naming the first violating vertex or pair.
    """
    n = g.order
    if n < 2:
        raise SrgError("degenerate", "need at least two vertices")
    deg = g.degrees()
    k = deg[0]
    if k == 0 or k == n - 1:
        raise SrgError("degenerate", "graph is empty or complete")
    for i, d in enumerate(deg):
        if d != k:
            raise SrgError("irregular", f"vertex {i} has degree {d}, vertex 0 has {k}", (i,))
    lam = mu = None
    for i in range(n):
        ri = g.rows[i]
        for j in range(i + 1, n):
            c = (ri & g.rows[j]).bit_count()
            if ri >> j & 1:
                if lam is None:
                    lam = c
                elif c != lam:
                    raise SrgError("lambda", f"edge ({i},{j}) has {c} common neighbours, expected {lam}", (i, j))
            else:
                if mu is None:
                    mu = c
                elif c != mu:
                    raise SrgError("mu", f"non-edge ({i},{j}) has {c} common neighbours, expected {mu}", (i, j))
    return SrgParams(n, k, lam, mu)


def complement(g: LabeledGraph) -> LabeledGraph:
    full = (1 << g.order) - 1
    return LabeledGraph(g.labels, tuple(full ^ r ^ (1 << i) for i, r in enumerate(g.rows)))


def complement_params(p: SrgParams) -> SrgParams:
    """``srg(v, v-k-1, v-2k+mu-2, v-2k+lam)``."""
    v, k, lam, mu = p.astuple()
    out = SrgParams(v, v - k - 1, v - 2 * k + mu - 2, v - 2 * k + lam)
    if min(out.astuple()) < 0:
        raise ValueError(f"{p} is infeasible: complement would be {out.astuple()}")
    return out


# -- association schemes ---------------------------------------------------


@dataclass(frozen=True)
class AssociationScheme:
    """Relation index for every ordered pair; relation 0 must be the diagonal."""

    labels: tuple[str, ...]
    relation: np.ndarray
    names: tuple[str, ...] = ()

    @property
    def order(self) -> int:
        return self.relation.shape[0]

    @property
    def classes(self) -> int:
        return int(self.relation.max())

    def valencies(self) -> tuple[int, ...]:
        return tuple(int((self.relation[0] == i).sum()) for i in range(1, self.classes + 1))

    def graph(self, relations: Iterable[int]) -> LabeledGraph:
        """Graph whose edges are the pairs in any of ``relations``."""
        return LabeledGraph.from_matrix(np.isin(self.relation, list(relations)), self.labels)


class SchemeError(ValueError):
    def __init__(self, axiom: str, message: str, witness: tuple[int, ...] = ()):
        super().__init__(message)
        self.axiom = axiom
        self.witness = witness


def verify_scheme(s: AssociationScheme) -> np.ndarray:
    """Check the association-scheme axioms exhaustively.

    Returns ``p`` with ``p[k, i, j] = |{z : (x,z) in A_i, (z,y) in A_j}|`` for
    any ``(x, y)`` in ``A_k``.
    """
    r = np.asarray(s.relation)
    n = r.shape[0]
    if r.shape != (n, n):
        raise SchemeError("partition", "relation table is not square")
    d = int(r.max())
    diag = np.diag(r)
    if (diag != 0).any():
        x = int(np.flatnonzero(diag != 0)[0])
        raise SchemeError("diagonal", f"pair ({x},{x}) is not in relation 0", (x, x))
    off = r.copy()
    np.fill_diagonal(off, -1)
    if (off == 0).any():
        x, y = map(int, np.argwhere(off == 0)[0])
        raise SchemeError("diagonal", f"off-diagonal pair ({x},{y}) in relation 0", (x, y))
    if (r < 0).any():
        x, y = map(int, np.argwhere(r < 0)[0])
        raise SchemeError("partition", f"pair ({x},{y}) has no relation", (x, y))
    for i in range(1, d + 1):
        if not (r == i).any():
            raise SchemeError("partition", f"relation {i} is empty")
    if (r != r.T).any():
        x, y = map(int, np.argwhere(r != r.T)[0])
        raise SchemeError("symmetry", f"pair ({x},{y}) in A{r[x, y]} but ({y},{x}) in A{r[y, x]}", (x, y))
    mats = np.stack([(r == i).astype(np.int64) for i in range(d + 1)])
    # prod[i, j, x, y] = number of z with (x,z) in A_i and (z,y) in A_j
    prod = mats[:, None] @ mats[None, :]
    p = np.zeros((d + 1, d + 1, d + 1), dtype=np.int64)
    for k in range(d + 1):
        xs, ys = np.nonzero(mats[k])
        vals = prod[:, :, xs, ys]
        ref = vals[:, :, :1]
        bad = vals != ref
        if bad.any():
            i, j, t = map(int, np.argwhere(bad)[0])
            x, y = int(xs[t]), int(ys[t])
            raise SchemeError(
                "intersection",
                f"p^{k}_{{{i}{j}}} is {vals[i, j, t]} at ({x},{y}) but {ref[i, j, 0]} at ({xs[0]},{ys[0]})",
                (k, i, j, x, y),
            )
        p[k] = ref[:, :, 0]
    return p


# -- interchange formats ----------------------------------------------------

GRAPH6_HEADER = b">>graph6<<"


def _size_bytes(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126, (n >> 12 & 63) + 63, (n >> 6 & 63) + 63, (n & 63) + 63])
    raise ValueError(f"graph6 order {n} not supported")


def graph6_body(rows: Sequence[int]) -> bytes:
    """Upper-triangle bits in column order, six per byte, offset by 63."""
    n = len(rows)
    out = bytearray()
    acc = nbits = 0
    for j in range(1, n):
        for i in range(j):
            acc = acc << 1 | (rows[i] >> j & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return bytes(out)


def encode_graph6(g: LabeledGraph) -> bytes:
    return _size_bytes(g.order) + graph6_body(g.rows)


def decode_graph6(data: bytes | str, labels: Sequence[str] | None = None) -> LabeledGraph:
    """Inverse of :func:`encode_graph6`; one graph, optional header and final newline."""
    if isinstance(data, str):
        data = data.encode("ascii")
    if data.startswith(GRAPH6_HEADER):
        data = data[len(GRAPH6_HEADER):]
    if data.endswith(b"\n"):
        data = data[:-1]
    if not data:
        raise ValueError("empty graph6 string")
    for pos, c in enumerate(data):
        if not 63 <= c <= 126:
            raise ValueError(f"byte {c} at offset {pos} outside graph6 range 63..126")
    if data[0] == 126:
        if len(data) >= 2 and data[1] == 126:
            raise ValueError("8-byte graph6 order header not supported")
        if len(data) < 4:
            raise ValueError("truncated graph6 order header")
        n = (data[1] - 63) << 12 | (data[2] - 63) << 6 | (data[3] - 63)
        if n <= 62:
            raise ValueError("long-form order header used for a small graph")
        body = data[4:]
    else:
        n = data[0] - 63
        body = data[1:]
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) < need:
        raise ValueError(f"graph6 body has {len(body)} bytes, need {need}")
    if len(body) > need:
        raise ValueError(f"{len(body) - need} trailing bytes after graph6 body")
    rows = [0] * n
    t = 0
    for j in range(1, n):
        for i in range(j):
            if (body[t // 6] - 63) >> (5 - t % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            t += 1
    if nbits % 6 and (body[-1] - 63) & ((1 << (6 - nbits % 6)) - 1):
        raise ValueError("nonzero padding bits in graph6 body")
    if labels is None:
        labels = [str(i) for i in range(n)]
    return LabeledGraph(tuple(labels), tuple(rows))


def edge_list(g: LabeledGraph) -> str:
    """``"v e"`` header then one sorted ``"i j"`` line per edge."""
    lines = [f"{g.order} {g.num_edges()}"]
    lines += [f"{i} {j}" for i, j in g.edges()]
    return "\n".join(lines) + "\n"


def labels_json(g: LabeledGraph) -> str:
    return json.dumps({"labels": list(g.labels)}, indent=1) + "\n"


def read_labels_json(text: str) -> list[str]:
    data = json.loads(text)
    labels = data.get("labels") if isinstance(data, dict) else None
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise ValueError('label sidecar must be {"labels": [string, ...]}')
    return labels

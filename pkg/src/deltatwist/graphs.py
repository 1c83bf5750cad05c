"""Looped simple graphs: vertex operations, file format, named families.

At most one edge per unordered pair; loops are per-vertex flags, never
edge entries.  Label order is the canonical matrix index order, so two
graphs are equal only when labels, edges and loops all agree.
"""

from __future__ import annotations

import random
from typing import Iterable, Sequence

from .errors import (
    BadParams,
    DuplicateEdge,
    LoopStatusMismatch,
    MissingVerticesLine,
    ParseError,
    SelfEdgeViaEdgeLine,
    UnknownLabel,
)
from .gf2 import Gf2SymMatrix


def fresh_name(base: str, taken) -> str:
    """``base`` itself, else ``base_2``, ``base_3``, ... first not in taken.

    Shared by every operation that relabels on collision (joins, unions,
    set-system direct sums) so cross-module label agreement is exact.
    """
    if base not in taken:
        return base
    k = 2
    while f"{base}_{k}" in taken:
        k += 1
    return f"{base}_{k}"


class LoopedGraph:
    """Vertex-labelled graph with at most one edge per pair plus loop flags."""

    __slots__ = ("labels", "edges", "loops", "_index")

    def __init__(self, labels: Iterable[str], edges: Iterable[Iterable[str]] = (),
                 loops: Iterable[str] = ()):
        labels = tuple(labels)
        if len(set(labels)) != len(labels):
            raise ValueError("vertex labels must be distinct")
        index = {v: i for i, v in enumerate(labels)}
        loop_set = frozenset(loops)
        for v in loop_set:
            if v not in index:
                raise UnknownLabel(f"loop at unknown vertex {v!r}")
        edge_set = set()
        for pair in edges:
            u, w = pair
            if u not in index:
                raise UnknownLabel(f"edge endpoint {u!r} is not a vertex")
            if w not in index:
                raise UnknownLabel(f"edge endpoint {w!r} is not a vertex")
            if u == w:
                raise ValueError(f"self-edge at {u!r}; use a loop flag instead")
            edge_set.add(frozenset((u, w)))
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "edges", frozenset(edge_set))
        object.__setattr__(self, "loops", loop_set)
        object.__setattr__(self, "_index", index)

    def __setattr__(self, name, value):
        raise AttributeError("LoopedGraph is immutable")

    # -- queries -------------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.labels)

    def index(self, v: str) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise UnknownLabel(f"unknown vertex {v!r}") from None

    def has_edge(self, u: str, w: str) -> bool:
        return frozenset((u, w)) in self.edges

    def has_loop(self, v: str) -> bool:
        self.index(v)
        return v in self.loops

    def edge_pairs(self) -> list[tuple[str, str]]:
        """Edges as (u, w) tuples ordered by vertex index."""
        pairs = []
        for e in self.edges:
            u, w = sorted(e, key=self.index)
            pairs.append((u, w))
        pairs.sort(key=lambda p: (self.index(p[0]), self.index(p[1])))
        return pairs

    def __eq__(self, other) -> bool:
        if isinstance(other, LoopedGraph):
            return (self.labels == other.labels and self.edges == other.edges
                    and self.loops == other.loops)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.labels, self.edges, self.loops))

    def __repr__(self) -> str:
        return (f"LoopedGraph({list(self.labels)!r}, {self.edge_pairs()!r}, "
                f"{sorted(self.loops)!r})")

    def adjacency_matrix(self) -> Gf2SymMatrix:
        """Symmetric 0/1 matrix in label order; diagonal 1 marks a loop."""
        n = self.order
        rows = [0] * n
        for e in self.edges:
            u, w = tuple(e)
            i, j = self._index[u], self._index[w]
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        for v in self.loops:
            i = self._index[v]
            rows[i] |= 1 << i
        return Gf2SymMatrix(n, rows)

    # -- vertex operations ---------------------------------------------------

    def loop_complement(self, v: str) -> "LoopedGraph":
        """Toggle the loop flag at v (an involution)."""
        self.index(v)
        loops = self.loops ^ {v}
        return LoopedGraph(self.labels, self.edges, loops)

    def delete_vertex(self, v: str) -> "LoopedGraph":
        """Remove v with its incident edges and loop."""
        self.index(v)
        labels = tuple(w for w in self.labels if w != v)
        edges = (e for e in self.edges if v not in e)
        return LoopedGraph(labels, edges, self.loops - {v})

    def one_point_join(self, v1: str, other: "LoopedGraph", v2: str) -> "LoopedGraph":
        """Disjoint union with v1 and v2 identified into a vertex named v1.

        The join vertices must carry the same loop status; labels of
        ``other`` are suffix-renamed on collision.
        """
        self.index(v1)
        other.index(v2)
        if (v1 in self.loops) != (v2 in other.loops):
            raise LoopStatusMismatch(
                f"{v1!r} and {v2!r} must be both looped or both unlooped")
        taken = set(self.labels)
        rename = {v2: v1}
        new_labels = list(self.labels)
        for w in other.labels:
            if w == v2:
                continue
            name = fresh_name(w, taken)
            rename[w] = name
            taken.add(name)
            new_labels.append(name)
        edges = {tuple(e) for e in self.edges}
        edges.update(tuple(rename[x] for x in e) for e in other.edges)
        loops = set(self.loops) | {rename[w] for w in other.loops}
        return LoopedGraph(new_labels, edges, loops)

    def disjoint_union(self, other: "LoopedGraph") -> "LoopedGraph":
        """Disjoint union, suffix-renaming ``other``'s labels on collision."""
        taken = set(self.labels)
        rename = {}
        new_labels = list(self.labels)
        for w in other.labels:
            name = fresh_name(w, taken)
            rename[w] = name
            taken.add(name)
            new_labels.append(name)
        edges = {tuple(e) for e in self.edges}
        edges.update(tuple(rename[x] for x in e) for e in other.edges)
        loops = set(self.loops) | {rename[w] for w in other.loops}
        return LoopedGraph(new_labels, edges, loops)

    # -- serialization -------------------------------------------------------

    def serialize(self) -> str:
        lines = ["vertices: " + " ".join(self.labels)]
        if self.loops:
            lines.append("loops: " + " ".join(v for v in self.labels if v in self.loops))
        for u, w in self.edge_pairs():
            lines.append(f"edge: {u} {w}")
        return "\n".join(lines) + "\n"


def parse_graph(text: str) -> LoopedGraph:
    """Parse the line-oriented graph format (see ``LoopedGraph.serialize``).

    Format: a 'vertices:' line first, an optional 'loops:' line, then
    'edge: u v' lines.  '#' starts a comment; tokens are whitespace
    separated.
    """
    labels: list[str] | None = None
    loops: list[str] = []
    edges: list[tuple[str, str]] = []
    seen_edges: set[frozenset[str]] = set()
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, rest = line.partition(":")
        if not sep:
            raise ParseError(f"expected 'key: values', got {raw!r}")
        key = head.strip()
        tokens = rest.split()
        if key == "vertices":
            if labels is not None:
                raise ParseError("duplicate vertices line")
            if len(set(tokens)) != len(tokens):
                raise ParseError("repeated vertex label")
            labels = tokens
        elif key == "loops":
            if labels is None:
                raise MissingVerticesLine("loops line before vertices line")
            for v in tokens:
                if v not in labels:
                    raise UnknownLabel(f"loop at unknown vertex {v!r}")
                if v in loops:
                    raise ParseError(f"vertex {v!r} listed twice in loops")
                loops.append(v)
        elif key == "edge":
            if labels is None:
                raise MissingVerticesLine("edge line before vertices line")
            if len(tokens) != 2:
                raise ParseError(f"edge line needs two endpoints: {raw!r}")
            u, w = tokens
            if u == w:
                raise SelfEdgeViaEdgeLine(f"edge {u!r} {w!r}; use the loops line")
            for t in (u, w):
                if t not in labels:
                    raise UnknownLabel(f"edge endpoint {t!r} is not a vertex")
            pair = frozenset((u, w))
            if pair in seen_edges:
                raise DuplicateEdge(f"edge {u!r} {w!r} appears twice")
            seen_edges.add(pair)
            edges.append((u, w))
        else:
            raise ParseError(f"unknown line kind {key!r}")
    if labels is None:
        raise MissingVerticesLine("no vertices line")
    return LoopedGraph(labels, edges, loops)


# ---------------------------------------------------------------------------
# Named families
# ---------------------------------------------------------------------------


def complete_graph(n: int) -> LoopedGraph:
    if n < 0:
        raise BadParams("complete(n) needs n >= 0")
    labels = [f"v{i}" for i in range(1, n + 1)]
    edges = [(labels[i], labels[j]) for i in range(n) for j in range(i + 1, n)]
    return LoopedGraph(labels, edges)


def path_graph(n: int) -> LoopedGraph:
    if n < 0:
        raise BadParams("path(n) needs n >= 0")
    labels = [f"v{i}" for i in range(1, n + 1)]
    edges = [(labels[i], labels[i + 1]) for i in range(n - 1)]
    return LoopedGraph(labels, edges)


def star_graph(n: int) -> LoopedGraph:
    """Star on n vertices: hub v1 plus n - 1 leaves."""
    if n < 0:
        raise BadParams("star(n) needs n >= 0")
    labels = [f"v{i}" for i in range(1, n + 1)]
    edges = [(labels[0], labels[i]) for i in range(1, n)]
    return LoopedGraph(labels, edges)


def windmill_graph(n: int, m: int) -> LoopedGraph:
    """m copies of the complete graph on n vertices sharing one hub."""
    if n < 2 or m < 1:
        raise BadParams("windmill(n, m) needs n >= 2 and m >= 1")
    labels = ["h"]
    edges = []
    for i in range(1, m + 1):
        copy = [f"c{i}v{j}" for j in range(1, n)]
        labels.extend(copy)
        verts = ["h", *copy]
        edges.extend((verts[a], verts[b])
                     for a in range(n) for b in range(a + 1, n))
    return LoopedGraph(labels, edges)


def random_graph(n: int, edge_prob: float, loop_prob: float,
                 rng: random.Random) -> LoopedGraph:
    """Independent edge and loop coin flips driven by the given generator."""
    if n < 0:
        raise BadParams("random(n, ...) needs n >= 0")
    if not (0.0 <= edge_prob <= 1.0 and 0.0 <= loop_prob <= 1.0):
        raise BadParams("probabilities must lie in [0, 1]")
    labels = [f"v{i}" for i in range(1, n + 1)]
    edges = [(labels[i], labels[j])
             for i in range(n) for j in range(i + 1, n)
             if rng.random() < edge_prob]
    loops = [v for v in labels if rng.random() < loop_prob]
    return LoopedGraph(labels, edges, loops)


def generate(family: str, *params, seed: int = 0) -> LoopedGraph:
    """Build a named family: complete(n), windmill(n, m), path(n), star(n),
    or random(n, edge_prob, loop_prob); deterministic for fixed seed."""
    try:
        if family == "complete":
            (n,) = params
            return complete_graph(int(n))
        if family == "path":
            (n,) = params
            return path_graph(int(n))
        if family == "star":
            (n,) = params
            return star_graph(int(n))
        if family == "windmill":
            n, m = params
            return windmill_graph(int(n), int(m))
        if family == "random":
            n, edge_prob, loop_prob = params
            return random_graph(int(n), float(edge_prob), float(loop_prob),
                                random.Random(seed))
    except (TypeError, ValueError) as exc:
        raise BadParams(f"bad parameters for family {family!r}: {exc}") from exc
    raise BadParams(f"unknown family {family!r}")

"""Bouquets (one-vertex ribbon graphs) as signed rotation systems.

A bouquet is a cyclic word of 2e half-edge tokens around the single
vertex disc plus a set of twisted edges.  Boundary components of any
spanning ribbon subgraph are counted by a direct boundary walk, which
serves as the independent topological oracle against the delta-matroid
route: the two must agree subset by subset.
"""

from __future__ import annotations

import random
from typing import Iterable

from .deltamatroid import SetSystem
from .errors import LabelCountNotTwo, ParseError, UnknownEdgeLabel, UnknownTwistLabel
from .graphs import LoopedGraph
from .limits import BOUQUET_GUARD, check_size
from .poly import IntPoly


class Bouquet:
    """Signed rotation system: cyclic half-edge word plus twisted edge set.

    The rotation is normalized to its lexicographically least cyclic
    shift at construction (reflection is not normalized), so equality is
    deterministic without claiming canonical forms up to homeomorphism.
    """

    __slots__ = ("rotation", "twisted", "_positions")

    def __init__(self, rotation: Iterable[str], twisted: Iterable[str] = ()):
        rotation = tuple(rotation)
        counts: dict[str, int] = {}
        for tok in rotation:
            counts[tok] = counts.get(tok, 0) + 1
        for tok, c in counts.items():
            if c != 2:
                raise LabelCountNotTwo(f"edge {tok!r} appears {c} times, need 2")
        twisted = frozenset(twisted)
        for tok in twisted:
            if tok not in counts:
                raise UnknownTwistLabel(f"twisted edge {tok!r} is not in the rotation")
        if rotation:
            k = len(rotation)
            rotation = min(rotation[s:] + rotation[:s] for s in range(k))
        positions: dict[str, tuple[int, int]] = {}
        first: dict[str, int] = {}
        for p, tok in enumerate(rotation):
            if tok in first:
                positions[tok] = (first[tok], p)
            else:
                first[tok] = p
        object.__setattr__(self, "rotation", rotation)
        object.__setattr__(self, "twisted", twisted)
        object.__setattr__(self, "_positions", positions)

    def __setattr__(self, name, value):
        raise AttributeError("Bouquet is immutable")

    @property
    def num_edges(self) -> int:
        return len(self.rotation) // 2

    @property
    def edge_labels(self) -> tuple[str, ...]:
        """Edge labels in order of first occurrence in the rotation."""
        seen = []
        for tok in self.rotation:
            if tok not in seen:
                seen.append(tok)
        return tuple(seen)

    def __eq__(self, other) -> bool:
        if isinstance(other, Bouquet):
            return self.rotation == other.rotation and self.twisted == other.twisted
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.rotation, self.twisted))

    def __repr__(self) -> str:
        return f"Bouquet({list(self.rotation)!r}, {sorted(self.twisted)!r})"

    # -- boundary walk ---------------------------------------------------------

    def boundary_components(self, edges: Iterable[str]) -> int:
        """Boundary curves of the spanning subgraph with the given edges.

        The vertex circle is split into 2e arcs between consecutive
        half-edge attachments.  Walk states are directed arcs: (p, 0)
        runs along arc p with the rotation, (p, 1) against it.  Arriving
        at an attachment of an absent edge the walk passes straight
        through; at a present edge it crosses the ribbon to the other
        attachment, staying on the same side for an untwisted edge and
        swapping sides (reversing direction) for a twisted one.  Each
        boundary curve is one walk orbit together with its mirror orbit
        (the same curve traversed backwards), and the two never share a
        directed arc, so components = started walks.
        """
        present = frozenset(edges)
        for tok in present:
            if tok not in self._positions:
                raise UnknownEdgeLabel(f"unknown edge {tok!r}")
        k = len(self.rotation)
        if k == 0:
            return 1  # the bare vertex disc
        rot = self.rotation
        other = {}
        for tok, (p, q) in self._positions.items():
            other[p] = q
            other[q] = p
        twisted = self.twisted

        def step(p: int, d: int) -> tuple[int, int]:
            if d == 0:
                s = (p + 1) % k
                tok = rot[s]
                if tok not in present:
                    return s, 0
                t = other[s]
                if tok in twisted:
                    return (t - 1) % k, 1
                return t, 0
            tok = rot[p]
            if tok not in present:
                return (p - 1) % k, 1
            t = other[p]
            if tok in twisted:
                return t, 0
            return (t - 1) % k, 1

        seen = [False] * (2 * k)
        components = 0
        for start_p in range(k):
            for start_d in (0, 1):
                if seen[2 * start_p + start_d]:
                    continue
                components += 1
                p, d = start_p, start_d
                while True:
                    seen[2 * p + d] = True
                    seen[2 * p + (1 - d)] = True  # mirror arc, same curve
                    p, d = step(p, d)
                    if seen[2 * p + d]:
                        break
        return components

    # -- derived structures ------------------------------------------------------

    def intersection_graph(self) -> LoopedGraph:
        """Vertices are edges; adjacency is interleaving; loops are twists."""
        labels = self.edge_labels
        edges = []
        for i in range(len(labels)):
            p1, p2 = self._positions[labels[i]]
            for j in range(i + 1, len(labels)):
                q1, q2 = self._positions[labels[j]]
                inside = (p1 < q1 < p2) + (p1 < q2 < p2)
                if inside == 1:
                    edges.append((labels[i], labels[j]))
        return LoopedGraph(labels, edges, self.twisted)

    def quasi_tree_delta_matroid(self, max_n: int | None = None) -> SetSystem:
        """Feasible sets are the edge subsets with one boundary component."""
        labels = self.edge_labels
        check_size(len(labels), max_n, BOUQUET_GUARD, "quasi_tree_delta_matroid")
        masks = []
        for mask in range(1 << len(labels)):
            subset = [labels[i] for i in range(len(labels)) if (mask >> i) & 1]
            if self.boundary_components(subset) == 1:
                masks.append(mask)
        return SetSystem.from_masks(labels, masks)

    def euler_genus(self) -> int:
        """1 + e - (boundary components of the whole bouquet)."""
        return 1 + self.num_edges - self.boundary_components(self.edge_labels)

    def partial_dual_genus_poly(self, max_n: int | None = None) -> IntPoly:
        """Sum of z^(Euler genus of the partial dual) over all edge subsets.

        The genus of the dual along A is counted as
        e + 2 - bc(A) - bc(A^c) without ever building the dual rotation
        system; the test suite certifies this against the twist
        polynomial of the intersection graph on every run.
        """
        labels = self.edge_labels
        e = len(labels)
        check_size(e, max_n, BOUQUET_GUARD, "partial_dual_genus_poly")
        bc = []
        for mask in range(1 << e):
            subset = [labels[i] for i in range(e) if (mask >> i) & 1]
            bc.append(self.boundary_components(subset))
        full = (1 << e) - 1
        hist: dict[int, int] = {}
        for mask in range(1 << e):
            genus = e + 2 - bc[mask] - bc[full ^ mask]
            hist[genus] = hist.get(genus, 0) + 1
        return IntPoly.from_width_histogram(hist)

    def partial_petrial(self, edges: Iterable[str]) -> "Bouquet":
        """Half-twist each named edge: twisted set XOR, rotation unchanged."""
        flip = frozenset(edges)
        for tok in flip:
            if tok not in self._positions:
                raise UnknownEdgeLabel(f"unknown edge {tok!r}")
        return Bouquet(self.rotation, self.twisted ^ flip)

    # -- serialization -----------------------------------------------------------

    def serialize(self) -> str:
        lines = ["rotation: " + " ".join(self.rotation)]
        if self.twisted:
            order = self.edge_labels
            lines.append("twisted: " + " ".join(t for t in order if t in self.twisted))
        return "\n".join(lines) + "\n"


def parse_bouquet(text: str) -> Bouquet:
    """Parse 'rotation:' plus optional 'twisted:' lines ('#' comments allowed)."""
    rotation: list[str] | None = None
    twisted: list[str] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, rest = line.partition(":")
        if not sep:
            raise ParseError(f"expected 'key: values', got {raw!r}")
        key = head.strip()
        tokens = rest.split()
        if key == "rotation":
            if rotation is not None:
                raise ParseError("duplicate rotation line")
            rotation = tokens
        elif key == "twisted":
            if rotation is None:
                raise ParseError("twisted line before rotation line")
            for tok in tokens:
                if tok in twisted:
                    raise ParseError(f"edge {tok!r} listed twice in twisted")
                twisted.append(tok)
        else:
            raise ParseError(f"unknown line kind {key!r}")
    if rotation is None:
        raise ParseError("no rotation line")
    return Bouquet(rotation, twisted)


def random_bouquet(num_edges: int, twist_prob: float,
                   rng: random.Random) -> Bouquet:
    """Shuffle the doubled label multiset; independent twist coin per edge."""
    labels = [f"e{i}" for i in range(1, num_edges + 1)]
    word = labels * 2
    rng.shuffle(word)
    twisted = [tok for tok in labels if rng.random() < twist_prob]
    return Bouquet(word, twisted)

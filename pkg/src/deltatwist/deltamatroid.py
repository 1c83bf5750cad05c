"""Set systems and delta-matroids.

A set system is a ground sequence plus a family of feasible subsets,
stored as a sorted, duplicate-free list of bitmasks over the ground
order.  Canonical storage makes cross-module equality checks exact: two
systems compare equal iff their grounds and mask lists agree.

The graph correspondence lives here too: ``from_graph`` builds the
system whose feasible sets are the vertex subsets with nonsingular
principal adjacency submatrix, and ``to_graph`` applies the recovery
rules (loop at v iff {v} feasible; edge by the XOR-of-cases rule) to any
normal system.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple

from .errors import (
    DuplicateFeasible,
    NotNormal,
    NotProper,
    ParseError,
    PreconditionError,
    SingletonStatusMismatch,
    UnknownElement,
)
from .gf2 import _rank_bits
from .graphs import LoopedGraph, fresh_name
from .limits import SUBSET_GUARD, check_size


class SetSystem:
    """Ground set plus feasible family (canonical bitmask storage)."""

    __slots__ = ("ground", "feasible", "_index")

    def __init__(self, ground: Iterable[str],
                 feasible: Iterable[Iterable[str]] = ()):
        ground = tuple(ground)
        if len(set(ground)) != len(ground):
            raise ValueError("ground elements must be distinct")
        index = {e: i for i, e in enumerate(ground)}
        masks = []
        for subset in feasible:
            mask = 0
            for e in subset:
                i = index.get(e)
                if i is None:
                    raise UnknownElement(f"feasible set names unknown element {e!r}")
                mask |= 1 << i
            masks.append(mask)
        if len(set(masks)) != len(masks):
            raise DuplicateFeasible("feasible family contains a duplicate set")
        object.__setattr__(self, "ground", ground)
        object.__setattr__(self, "feasible", tuple(sorted(masks)))
        object.__setattr__(self, "_index", index)

    def __setattr__(self, name, value):
        raise AttributeError("SetSystem is immutable")

    @classmethod
    def from_masks(cls, ground: Iterable[str], masks: Iterable[int]) -> "SetSystem":
        self = cls.__new__(cls)
        ground = tuple(ground)
        masks = tuple(sorted(set(masks)))
        object.__setattr__(self, "ground", ground)
        object.__setattr__(self, "feasible", masks)
        object.__setattr__(self, "_index", {e: i for i, e in enumerate(ground)})
        return self

    # -- queries -------------------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.ground)

    @property
    def is_proper(self) -> bool:
        return bool(self.feasible)

    @property
    def is_normal(self) -> bool:
        return 0 in self.feasible

    def mask_of(self, subset: Iterable[str]) -> int:
        mask = 0
        for e in subset:
            i = self._index.get(e)
            if i is None:
                raise UnknownElement(f"unknown element {e!r}")
            mask |= 1 << i
        return mask

    def names_of(self, mask: int) -> frozenset[str]:
        return frozenset(e for i, e in enumerate(self.ground) if (mask >> i) & 1)

    def feasible_sets(self) -> tuple[frozenset[str], ...]:
        return tuple(self.names_of(m) for m in self.feasible)

    def __eq__(self, other) -> bool:
        if isinstance(other, SetSystem):
            return self.ground == other.ground and self.feasible == other.feasible
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ground, self.feasible))

    def __repr__(self) -> str:
        fam = [sorted(s) for s in self.feasible_sets()]
        return f"SetSystem({list(self.ground)!r}, {fam!r})"

    def same_members(self, other: "SetSystem") -> bool:
        """Equality ignoring ground order (families compared as name sets)."""
        if set(self.ground) != set(other.ground):
            return False
        return set(self.feasible_sets()) == set(other.feasible_sets())

    # -- core operations -------------------------------------------------------

    def twist(self, subset: Iterable[str]) -> "SetSystem":
        """Symmetric-difference every feasible set with the given subset."""
        a = self.mask_of(subset)
        return SetSystem.from_masks(self.ground, (f ^ a for f in self.feasible))

    def width(self) -> int:
        """Max feasible cardinality minus min feasible cardinality."""
        if not self.feasible:
            raise NotProper("width of an improper set system")
        sizes = [f.bit_count() for f in self.feasible]
        return max(sizes) - min(sizes)

    def rank(self, subset: Iterable[str]) -> int:
        """|ground| minus the least symmetric-difference distance to the family."""
        if not self.feasible:
            raise NotProper("rank of an improper set system")
        a = self.mask_of(subset)
        return self.size - min((a ^ f).bit_count() for f in self.feasible)

    def _drop_position(self, mask: int, i: int) -> int:
        low = mask & ((1 << i) - 1)
        return low | ((mask >> (i + 1)) << i)

    def _delete_plain(self, i: int) -> "SetSystem":
        bit = 1 << i
        ground = self.ground[:i] + self.ground[i + 1:]
        masks = (self._drop_position(f, i) for f in self.feasible if not f & bit)
        return SetSystem.from_masks(ground, masks)

    def _contract_plain(self, i: int) -> "SetSystem":
        bit = 1 << i
        ground = self.ground[:i] + self.ground[i + 1:]
        masks = (self._drop_position(f, i) for f in self.feasible if f & bit)
        return SetSystem.from_masks(ground, masks)

    def delete(self, e: str) -> "SetSystem":
        """Remove e, keeping feasible sets avoiding it.

        When e is a coloop (contained in every feasible set) the plain rule
        would empty the family, so deletion falls back to contraction.
        """
        i = self._index.get(e)
        if i is None:
            raise UnknownElement(f"unknown element {e!r}")
        if not self.feasible:
            raise NotProper("minors of an improper set system")
        bit = 1 << i
        if all(f & bit for f in self.feasible):
            return self._contract_plain(i)
        return self._delete_plain(i)

    def contract(self, e: str) -> "SetSystem":
        """Remove e from the feasible sets containing it.

        When e is a loop (in no feasible set) contraction falls back to
        deletion.
        """
        i = self._index.get(e)
        if i is None:
            raise UnknownElement(f"unknown element {e!r}")
        if not self.feasible:
            raise NotProper("minors of an improper set system")
        bit = 1 << i
        if not any(f & bit for f in self.feasible):
            return self._delete_plain(i)
        return self._contract_plain(i)

    def restrict(self, subset: Iterable[str]) -> "SetSystem":
        """Delete everything outside the subset (order-independent)."""
        keep = self.names_of(self.mask_of(subset))
        out = self
        for e in self.ground:
            if e not in keep:
                out = out.delete(e)
        return out

    def direct_sum(self, other: "SetSystem") -> "SetSystem":
        """All pairwise unions; other's ground is suffix-renamed on collision."""
        taken = set(self.ground)
        new_ground = list(self.ground)
        for e in other.ground:
            name = fresh_name(e, taken)
            taken.add(name)
            new_ground.append(name)
        n = self.size
        masks = [f1 | (f2 << n) for f1 in self.feasible for f2 in other.feasible]
        return SetSystem.from_masks(new_ground, masks)

    def loop_complement(self, e: str) -> "SetSystem":
        """Set-system loop complementation at e.

        A set F containing e is feasible afterwards iff exactly one of F,
        F - e was feasible before; sets avoiding e are untouched.  An
        involution at each fixed e.
        """
        i = self._index.get(e)
        if i is None:
            raise UnknownElement(f"unknown element {e!r}")
        bit = 1 << i
        family = set(self.feasible)
        out = {f for f in self.feasible if not f & bit}
        for f in self.feasible:
            if f & bit:
                if (f ^ bit) not in family:
                    out.add(f)
            elif (f | bit) not in family:
                out.add(f | bit)
        return SetSystem.from_masks(self.ground, out)

    def one_point_join(self, e1: str, other: "SetSystem", e2: str) -> "SetSystem":
        """Join two set systems by identifying e1 with e2.

        The identified element keeps e1's name; other labels are
        suffix-renamed on collision, mirroring the graph join.  A set F is
        feasible iff, writing F1/F2 for its preimages with the identified
        element translated back and F1'/F2' for the preimages without it:

        * e not in F:  F1 feasible and F2 feasible;
        * e in F:      an odd number of [F1 feasible and F2' feasible],
                       [F1' feasible and F2 feasible],
                       [{e1} feasible and F1' feasible and F2' feasible].

        Requires {e1} and {e2} to be feasible in both systems or in
        neither.
        """
        j1 = self._index.get(e1)
        if j1 is None:
            raise UnknownElement(f"unknown element {e1!r}")
        j2 = other._index.get(e2)
        if j2 is None:
            raise UnknownElement(f"unknown element {e2!r}")
        single1 = (1 << j1) in self.feasible
        single2 = (1 << j2) in other.feasible
        if single1 != single2:
            raise SingletonStatusMismatch(
                f"{{{e1!r}}} and {{{e2!r}}} must have equal feasibility")

        taken = set(self.ground)
        new_ground = list(self.ground)
        other_positions = []  # other's ground index per appended element
        for k, e in enumerate(other.ground):
            if k == j2:
                continue
            name = fresh_name(e, taken)
            taken.add(name)
            new_ground.append(name)
            other_positions.append(k)
        n1 = self.size
        total = len(new_ground)
        check_size(total, None, SUBSET_GUARD, "one_point_join")

        fam1 = set(self.feasible)
        fam2 = set(other.feasible)
        bit_e = 1 << j1
        masks = []
        for f in range(1 << total):
            f1_prime = f & ((1 << n1) - 1) & ~bit_e
            f2_prime = 0
            for pos, k in enumerate(other_positions):
                if (f >> (n1 + pos)) & 1:
                    f2_prime |= 1 << k
            if f & bit_e:
                f1 = f1_prime | bit_e
                f2 = f2_prime | (1 << j2)
                val = ((f1 in fam1) and (f2_prime in fam2))
                val ^= ((f1_prime in fam1) and (f2 in fam2))
                val ^= (single1 and (f1_prime in fam1) and (f2_prime in fam2))
                if val:
                    masks.append(f)
            else:
                if f1_prime in fam1 and f2_prime in fam2:
                    masks.append(f)
        return SetSystem.from_masks(new_ground, masks)

    # -- serialization -------------------------------------------------------

    def serialize(self) -> str:
        lines = ["ground: " + " ".join(self.ground)]
        for mask in self.feasible:
            names = [e for i, e in enumerate(self.ground) if (mask >> i) & 1]
            lines.append(("feasible: " + " ".join(names)) if names else "feasible:")
        return "\n".join(lines) + "\n"


def parse_set_system(text: str) -> SetSystem:
    """Parse 'ground:' plus 'feasible:' lines; an empty list means the empty set."""
    ground: list[str] | None = None
    masks: list[int] = []
    index: dict[str, int] = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, rest = line.partition(":")
        if not sep:
            raise ParseError(f"expected 'key: values', got {raw!r}")
        key = head.strip()
        tokens = rest.split()
        if key == "ground":
            if ground is not None:
                raise ParseError("duplicate ground line")
            if len(set(tokens)) != len(tokens):
                raise ParseError("repeated ground element")
            ground = tokens
            index = {e: i for i, e in enumerate(ground)}
        elif key == "feasible":
            if ground is None:
                raise ParseError("feasible line before ground line")
            mask = 0
            for e in tokens:
                if e not in index:
                    raise UnknownElement(f"feasible set names unknown element {e!r}")
                mask |= 1 << index[e]
            if mask in masks:
                raise DuplicateFeasible(f"feasible set {tokens!r} appears twice")
            masks.append(mask)
        else:
            raise ParseError(f"unknown line kind {key!r}")
    if ground is None:
        raise ParseError("no ground line")
    return SetSystem.from_masks(ground, masks)


# ---------------------------------------------------------------------------
# Delta-matroid axiom
# ---------------------------------------------------------------------------


def check_symmetric_exchange(system: SetSystem):
    """Brute-force the symmetric exchange axiom.

    For all feasible X, Y and all u in X (symmetric difference) Y there
    must be v in the same difference, possibly v = u, with X toggled at
    {u, v} again feasible.  Returns ``(True, None)`` or ``(False,
    (X, Y, u))`` with the first counterexample found in canonical order.
    """
    if not system.is_proper:
        raise NotProper("symmetric exchange on an improper set system")
    family = set(system.feasible)
    for x in system.feasible:
        for y in system.feasible:
            diff = x ^ y
            rest = diff
            while rest:
                bu = rest & -rest
                rest ^= bu
                cand = diff
                found = False
                while cand:
                    bv = cand & -cand
                    cand ^= bv
                    if (x ^ (bu | bv)) in family:
                        found = True
                        break
                if not found:
                    u = system.ground[bu.bit_length() - 1]
                    return False, (system.names_of(x), system.names_of(y), u)
    return True, None


# ---------------------------------------------------------------------------
# Graph correspondence
# ---------------------------------------------------------------------------


def from_graph(graph: LoopedGraph, max_n: int | None = None) -> SetSystem:
    """The delta-matroid of a looped simple graph.

    Ground is the vertex sequence; a subset is feasible iff its principal
    adjacency submatrix is nonsingular over GF(2) (the empty submatrix
    counts as nonsingular, so the result is always normal).  Enumerates
    all 2^n principal minors directly; this is the semantic ground truth
    the faster rank-table route is checked against.
    """
    n = graph.order
    check_size(n, max_n, SUBSET_GUARD, "from_graph")
    rows = graph.adjacency_matrix().rows
    masks = []
    for mask in range(1 << n):
        popcount = mask.bit_count()
        sub = [rows[i] & mask for i in range(n) if (mask >> i) & 1]
        if _rank_bits(sub) == popcount:
            masks.append(mask)
    return SetSystem.from_masks(graph.labels, masks)


def to_graph(system: SetSystem) -> LoopedGraph:
    """Recover a looped simple graph from a normal set system.

    Applies the recovery rules verbatim: loop at v iff {v} is feasible;
    edge uv iff {u, v} feasible XOR both singletons feasible.  The rules
    are total on normal systems; whether the result inverts
    ``from_graph`` is a round-trip property, not a precondition.
    """
    if not system.is_normal:
        raise NotNormal("graph recovery needs the empty set feasible")
    family = set(system.feasible)
    ground = system.ground
    loops = [e for i, e in enumerate(ground) if (1 << i) in family]
    edges = []
    for i in range(len(ground)):
        for j in range(i + 1, len(ground)):
            pair_feasible = ((1 << i) | (1 << j)) in family
            both_single = (1 << i) in family and (1 << j) in family
            if pair_feasible != both_single:
                edges.append((ground[i], ground[j]))
    return LoopedGraph(ground, edges, loops)


# ---------------------------------------------------------------------------
# Distance witnesses and width probes
# ---------------------------------------------------------------------------


def find_nearest_feasible(system: SetSystem, x: Iterable[str],
                          y: Iterable[str], z: Iterable[str]):
    """Search for a feasible set through Y, avoiding Z, nearest to X.

    Requires Y inside X and Z inside X's complement.  Returns ``None``
    when no feasible set satisfies the constraints.  Among constrained
    sets the one at least symmetric-difference distance from X is
    returned (ties broken by canonical order); on a delta-matroid that
    distance always equals the unconstrained minimum, which is exactly
    the property the ``nearest-feasible`` identity check exercises.
    """
    if not system.is_proper:
        raise NotProper("nearest-feasible on an improper set system")
    mx = system.mask_of(x)
    my = system.mask_of(y)
    mz = system.mask_of(z)
    if my & ~mx:
        raise PreconditionError("Y must be a subset of X")
    if mz & mx:
        raise PreconditionError("Z must avoid X")
    candidates = [f for f in system.feasible if not (my & ~f) and not (mz & f)]
    if not candidates:
        return None
    best = min(candidates, key=lambda f: ((mx ^ f).bit_count(), f))
    return system.names_of(best)


class WidthRestrictionCheck(NamedTuple):
    lhs: int  # width of the restriction
    rhs: int  # |A| minus least distance from A to the family


def width_restriction_check(system: SetSystem,
                            subset: Iterable[str]) -> WidthRestrictionCheck:
    """Both sides of the restriction-width formula for a normal system."""
    if not system.is_normal:
        raise NotNormal("width probe needs a normal set system")
    a = system.mask_of(subset)
    lhs = system.restrict(system.names_of(a)).width()
    rhs = a.bit_count() - min((a ^ f).bit_count() for f in system.feasible)
    return WidthRestrictionCheck(lhs, rhs)

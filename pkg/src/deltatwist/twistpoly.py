"""Twist polynomials by two independent routes, plus every recursion.

Route one sums z^(width of the twisted system) over all subsets of the
ground set, straight from the definition.  Route two works on a looped
simple graph and sums z^(rank M[A] + rank M[A^c]) using one memoized
rank table over all 2^n subsets, so each subset costs a pair of table
lookups.  The two routes must agree; the test suite holds them against
each other.

All recursion formulas certify their divisibility with exact division
and raise ``NonzeroRemainder`` instead of returning a truncated
quotient: a failed division is a falsified identity instance and must be
loud.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .deltamatroid import SetSystem, from_graph
from .errors import BadParams, HypothesisViolated, NotProper, UnknownElement
from .graphs import LoopedGraph
from .limits import RANK_TABLE_GUARD, SUBSET_GUARD, check_size
from .poly import IntPoly, Z

_CHUNK = 1 << 15


def twist_poly_setsystem(system: SetSystem, max_n: int | None = None) -> IntPoly:
    """Sum of z^(width of the system twisted by A) over all subsets A."""
    if not system.is_proper:
        raise NotProper("twist polynomial of an improper set system")
    n = system.size
    check_size(n, max_n, SUBSET_GUARD, "twist_poly_setsystem")
    feasible = system.feasible
    hist: Counter[int] = Counter()
    for a in range(1 << n):
        lo = hi = (feasible[0] ^ a).bit_count()
        for f in feasible[1:]:
            c = (f ^ a).bit_count()
            if c < lo:
                lo = c
            elif c > hi:
                hi = c
        hist[hi - lo] += 1
    return IntPoly.from_width_histogram(hist)


def rank_table(rows, n: int, threads: int = 1) -> bytearray:
    """GF(2) rank of the masked principal submatrix, for every subset mask.

    ``rows`` are the adjacency bitmasks.  Workers fill disjoint index
    ranges, so the table is identical for any worker count.
    """
    size = 1 << n
    table = bytearray(size)

    def fill(lo: int, hi: int) -> None:
        for mask in range(lo, hi):
            basis = [0] * n
            rank = 0
            m = mask
            while m:
                low = m & -m
                i = low.bit_length() - 1
                m ^= low
                r = rows[i] & mask
                while r:
                    t = r.bit_length() - 1
                    b = basis[t]
                    if not b:
                        basis[t] = r
                        rank += 1
                        break
                    r ^= b
            table[mask] = rank

    if threads <= 1 or size <= _CHUNK:
        fill(0, size)
    else:
        bounds = list(range(0, size, _CHUNK)) + [size]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(fill, lo, hi)
                       for lo, hi in zip(bounds, bounds[1:])]
            for fut in futures:
                fut.result()
    return table


def _width_histogram(table: bytearray, n: int, threads: int = 1) -> Counter:
    size = 1 << n
    full = size - 1

    def tally(lo: int, hi: int) -> Counter:
        c: Counter[int] = Counter()
        for mask in range(lo, hi):
            c[table[mask] + table[full ^ mask]] += 1
        return c

    if threads <= 1 or size <= _CHUNK:
        return tally(0, size)
    bounds = list(range(0, size, _CHUNK)) + [size]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(lambda b: tally(*b), zip(bounds, bounds[1:])))
    hist: Counter[int] = Counter()
    for part in parts:  # merge in chunk order: worker count never changes output
        hist.update(part)
    return hist


def twist_poly_graph(graph: LoopedGraph, max_n: int | None = None,
                     threads: int = 1) -> IntPoly:
    """Sum of z^(rank M[A] + rank M[A^c]) over all vertex subsets A.

    Equals ``twist_poly_setsystem(from_graph(graph))``; the rank route is
    the fast path (one rank table, then 2^n lookup pairs).
    """
    n = graph.order
    check_size(n, max_n, RANK_TABLE_GUARD, "twist_poly_graph")
    rows = graph.adjacency_matrix().rows
    table = rank_table(rows, n, threads=threads)
    hist = _width_histogram(table, n, threads=threads)
    return IntPoly.from_width_histogram(hist)


# ---------------------------------------------------------------------------
# One-point join recursions
# ---------------------------------------------------------------------------

# 2z^2 - z - 1 and its double: the certified denominators of the join
# coefficients.
_HALF_DEN = 2 * Z**2 - Z - 1
_FULL_DEN = 2 * _HALF_DEN


@dataclass(frozen=True)
class JoinRecursionInput:
    """Twist polynomials of both join factors and their vertex variants.

    For factor i: the polynomial of G_i, of G_i with the join vertex's
    loop toggled, and of G_i with the join vertex deleted.
    """

    t1: IntPoly
    t1_plus: IntPoly
    t1_minus: IntPoly
    t2: IntPoly
    t2_plus: IntPoly
    t2_minus: IntPoly


def join_coefficients(t1: IntPoly, t1_plus: IntPoly,
                      t1_minus: IntPoly) -> tuple[IntPoly, IntPoly, IntPoly]:
    """Coefficients (q1, q2, q3) of the one-point-join expansion.

    For a fixed first factor, the joined twist polynomial is
    q1*T(G2) + q2*T(G2 with loop toggled at the join vertex) + q3*T(G2
    minus the join vertex).  Each quotient is certified exact; a
    ``NonzeroRemainder`` signals inputs that do not arise from a genuine
    (graph, vertex) pair.
    """
    z2 = 2 * Z**2
    q1 = (z2 * t1_minus - (Z + 1) * t1 + Z * t1_plus).exact_div(_FULL_DEN)
    q2 = (z2 * t1_minus - (Z + 1) * t1_plus + Z * t1).exact_div(_FULL_DEN)
    q3 = (Z**2 * (t1 + t1_plus) - 2 * (Z**3 + Z**2) * t1_minus).exact_div(_HALF_DEN)
    return q1, q2, q3


# The bilinear form pairing the two factors' polynomial triples; dividing
# it by 4z^2 - 2z - 2 yields the joined twist polynomial.
_JOIN_MATRIX = (
    (-(Z + 1), Z, 2 * Z**2),
    (Z, -(Z + 1), 2 * Z**2),
    (2 * Z**2, 2 * Z**2, -4 * Z**2 * (Z + 1)),
)


def join_recursion_looped(inp: JoinRecursionInput) -> IntPoly:
    """Twist polynomial of a one-point join from the six factor polynomials."""
    row = (inp.t1, inp.t1_plus, inp.t1_minus)
    col = (inp.t2, inp.t2_plus, inp.t2_minus)
    acc = IntPoly.zero()
    for i in range(3):
        for j in range(3):
            acc = acc + row[i] * _JOIN_MATRIX[i][j] * col[j]
    return acc.exact_div(_FULL_DEN)


def join_recursion_unlooped(t1: IntPoly, t1_minus: IntPoly,
                            t2: IntPoly, t2_minus: IntPoly) -> IntPoly:
    """Simpler join recursion when a factor minus its join vertex is unlooped."""
    z2 = 2 * Z**2
    num = z2 * t1 * t2_minus + z2 * t1_minus * t2 - t1 * t2 \
        - 4 * Z**2 * t1_minus * t2_minus
    return num.exact_div(2 * Z**2 - 2)


def leaf_recursion(t2: IntPoly, t2_plus: IntPoly, t2_minus: IntPoly,
                   leaf_looped: bool) -> IntPoly:
    """Join with a single pendant vertex hanging off the join vertex.

    Unlooped pendant: T + 2z^2 * T(minus join vertex).
    Looped pendant:   z*T + z*T(loop toggled at join vertex).
    """
    if leaf_looped:
        return Z * t2 + Z * t2_plus
    return t2 + 2 * Z**2 * t2_minus


def minus_half_defect(graph: LoopedGraph, v: str) -> Fraction:
    """T_G(-1/2) + T_(G with loop toggled)(-1/2) - T_(G minus v)(-1/2).

    Computed exactly with rationals; always zero.
    """
    graph.index(v)
    at = Fraction(-1, 2)
    t = twist_poly_graph(graph).eval_rational(at)
    t_plus = twist_poly_graph(graph.loop_complement(v)).eval_rational(at)
    t_minus = twist_poly_graph(graph.delete_vertex(v)).eval_rational(at)
    return t + t_plus - t_minus


def loopcomp_formula(t_g: IntPoly, t_g_minus: IntPoly) -> IntPoly:
    """Twist polynomial after adding a loop at v, for unlooped graphs.

    (z*T(G) + 2z^2*T(G - v)) / (z + 1); the caller guarantees G is
    unlooped, and a looped input shows up as ``NonzeroRemainder`` or a
    wrong value.
    """
    return (Z * t_g + 2 * Z**2 * t_g_minus).exact_div(Z + 1)


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------


def closed_form_complete(n: int) -> IntPoly:
    """Twist polynomial of the complete graph on n vertices."""
    if n < 1:
        raise BadParams("closed_form_complete needs n >= 1")
    if n % 2 == 0:
        return IntPoly.monomial(n, 2 ** (n - 1)) + IntPoly.monomial(n - 2, 2 ** (n - 1))
    return IntPoly.monomial(n - 1, 2 ** n)


def closed_form_windmill(n: int, m: int) -> IntPoly:
    """Twist polynomial of m complete graphs on n vertices sharing a hub."""
    if n < 2 or m < 1:
        raise BadParams("closed_form_windmill needs n >= 2 and m >= 1")
    scale = 2 ** (m * (n - 2) + 1)
    if n % 2 == 0:
        bracket = (2 ** m - 1) * Z**2 + 1
        return scale * IntPoly.monomial(m * (n - 2)) * bracket
    bracket = (Z**2 + 1) ** m - IntPoly.monomial(2 * m) + IntPoly.monomial(2 * m - 2)
    return scale * IntPoly.monomial(m * (n - 3) + 2) * bracket


# ---------------------------------------------------------------------------
# Leaf recursion at the set-system level
# ---------------------------------------------------------------------------


def dm_leaf_recursion(system: SetSystem, e1: str, e2: str,
                      max_n: int | None = None) -> IntPoly:
    """Pendant-element recursion for a normal set system.

    Hypotheses, each checked structurally rather than trusted:
    the system is normal; {e1, e2} is feasible; and deleting e2 splits
    off e1 as an isolated never-feasible element, i.e.
    delete(e2) = ({e1}, {empty set}) (+) delete(e1, e2).
    Then T = T(delete e1) + 2z^2 * T(delete e1 and e2).
    """
    for e in (e1, e2):
        if e not in system.ground:
            raise UnknownElement(f"unknown element {e!r}")
    if e1 == e2:
        raise UnknownElement("e1 and e2 must be distinct")
    if not system.is_normal:
        raise HypothesisViolated("the system is not normal")
    if system.mask_of((e1, e2)) not in system.feasible:
        raise HypothesisViolated(f"{{{e1}, {e2}}} is not feasible")
    minus_e1 = system.delete(e1)
    minus_both = minus_e1.delete(e2)
    expected = SetSystem((e1,), [()]).direct_sum(minus_both)
    if not system.delete(e2).same_members(expected):
        raise HypothesisViolated(
            f"deleting {e2!r} does not split off {e1!r} as an isolated element")
    return (twist_poly_setsystem(minus_e1, max_n=max_n)
            + 2 * Z**2 * twist_poly_setsystem(minus_both, max_n=max_n))


# ---------------------------------------------------------------------------
# Convenience wrappers used by the CLI and identity checks
# ---------------------------------------------------------------------------


def graph_triple(graph: LoopedGraph, v: str,
                 threads: int = 1) -> tuple[IntPoly, IntPoly, IntPoly]:
    """Twist polynomials of G, G with the loop toggled at v, and G minus v."""
    return (twist_poly_graph(graph, threads=threads),
            twist_poly_graph(graph.loop_complement(v), threads=threads),
            twist_poly_graph(graph.delete_vertex(v), threads=threads))


def twist_poly_of_dm_via_graph(system: SetSystem, threads: int = 1) -> IntPoly:
    """Rank-table route for a set system, via certified graph recovery.

    Recovers the graph with the standard rules and insists the round trip
    reproduces the system exactly, so a non-binary or non-normal input
    errors out instead of silently computing the wrong polynomial.
    """
    from .deltamatroid import to_graph

    graph = to_graph(system)
    if from_graph(graph) != system:
        raise HypothesisViolated(
            "set system is not the delta-matroid of any looped simple graph")
    return twist_poly_graph(graph, threads=threads)

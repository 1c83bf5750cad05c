import random
from fractions import Fraction

import pytest

from deltatwist.deltamatroid import SetSystem, from_graph
from deltatwist.errors import (
    BadParams,
    HypothesisViolated,
    NonzeroRemainder,
    NotProper,
    TooLarge,
)
from deltatwist.graphs import LoopedGraph, complete_graph, generate, parse_graph
from deltatwist.poly import IntPoly, Z
from deltatwist.twistpoly import (
    JoinRecursionInput,
    closed_form_complete,
    closed_form_windmill,
    dm_leaf_recursion,
    graph_triple,
    join_coefficients,
    join_recursion_looped,
    join_recursion_unlooped,
    leaf_recursion,
    loopcomp_formula,
    minus_half_defect,
    rank_table,
    twist_poly_graph,
    twist_poly_of_dm_via_graph,
    twist_poly_setsystem,
)

P3 = parse_graph("vertices: a v b\nedge: a v\nedge: v b\n")
LOOPED_EDGE = LoopedGraph(("w", "v"), [("w", "v")], ("w",))


def random_graph(rng, max_n, loop_prob=0.4):
    return generate("random", rng.randint(1, max_n), rng.uniform(0.2, 0.8),
                    loop_prob, seed=rng.randint(0, 10**6))


def test_setsystem_route_examples():
    assert twist_poly_setsystem(SetSystem(("v",), [()])) == IntPoly((2,))
    assert twist_poly_setsystem(SetSystem(("v",), [(), ("v",)])) == 2 * Z
    assert twist_poly_setsystem(from_graph(P3)) == IntPoly((2, 0, 6))
    with pytest.raises(NotProper):
        twist_poly_setsystem(SetSystem(("v",), []))
    with pytest.raises(TooLarge):
        twist_poly_setsystem(SetSystem(tuple(f"e{i}" for i in range(21)), [()]))


def test_graph_route_examples():
    assert twist_poly_graph(complete_graph(4)) == IntPoly((0, 0, 8, 0, 8))
    assert twist_poly_graph(complete_graph(3)) == IntPoly((0, 0, 8))
    assert twist_poly_graph(LOOPED_EDGE) == IntPoly((0, 2, 2))
    assert twist_poly_graph(LoopedGraph(())) == IntPoly((1,))


def test_routes_agree_on_random_graphs():
    rng = random.Random(17)
    for _ in range(30):
        g = random_graph(rng, 6)
        assert twist_poly_graph(g) == twist_poly_setsystem(from_graph(g))


def test_twist_invariance():
    rng = random.Random(18)
    for _ in range(20):
        d = from_graph(random_graph(rng, 5))
        a = [e for e in d.ground if rng.random() < 0.5]
        assert twist_poly_setsystem(d.twist(a)) == twist_poly_setsystem(d)


def test_eval_at_one_counts_subsets():
    rng = random.Random(19)
    for _ in range(15):
        g = random_graph(rng, 6)
        assert twist_poly_graph(g).eval_rational(1) == 2 ** g.order


def test_rank_table_thread_invariance():
    rng = random.Random(20)
    rows = []
    n = 9
    g = generate("random", n, 0.5, 0.5, seed=5)
    rows = g.adjacency_matrix().rows
    single = rank_table(rows, n, threads=1)
    multi = rank_table(rows, n, threads=4)
    assert bytes(single) == bytes(multi)
    assert twist_poly_graph(g, threads=1) == twist_poly_graph(g, threads=3)


def test_join_coefficients_examples():
    q1, q2, q3 = join_coefficients(IntPoly((2, 0, 2)), IntPoly((0, 2, 2)),
                                   IntPoly((2,)))
    assert (q1, q2, q3) == (IntPoly((1,)), IntPoly.zero(), 2 * Z**2)
    q1, q2, q3 = join_coefficients(IntPoly((0, 2, 2)), IntPoly((0, 2, 2)),
                                   IntPoly((0, 2)))
    assert (q1, q2, q3) == (Z, Z, IntPoly.zero())
    # single-vertex first factor: the join is the second factor itself
    q1, q2, q3 = join_coefficients(IntPoly((2,)), 2 * Z, IntPoly((1,)))
    assert (q1, q2, q3) == (IntPoly((1,)), IntPoly.zero(), IntPoly.zero())
    with pytest.raises(NonzeroRemainder):
        join_coefficients(Z, Z, Z)


def test_join_recursion_looped():
    k2_triple = (IntPoly((2, 0, 2)), IntPoly((0, 2, 2)), IntPoly((2,)))
    got = join_recursion_looped(JoinRecursionInput(*k2_triple, *k2_triple))
    assert got == IntPoly((2, 0, 6))
    # second factor a single vertex: reproduces the first factor
    k1_triple = (IntPoly((2,)), 2 * Z, IntPoly((1,)))
    got = join_recursion_looped(JoinRecursionInput(*k2_triple, *k1_triple))
    assert got == IntPoly((2, 0, 2))


def test_join_recursion_unlooped():
    t_k2, t_k1 = IntPoly((2, 0, 2)), IntPoly((1,))
    t_k1_full = IntPoly((2,))
    assert join_recursion_unlooped(t_k2, t_k1_full, t_k2, t_k1_full) \
        == IntPoly((2, 0, 6))
    assert join_recursion_unlooped(t_k2, t_k1_full, t_k1_full, t_k1) == t_k2


def test_join_recursions_match_brute_force():
    rng = random.Random(21)
    for _ in range(25):
        g1, g2 = random_graph(rng, 5), random_graph(rng, 5)
        v1 = rng.choice(g1.labels)
        v2 = rng.choice(g2.labels)
        if (v1 in g1.loops) != (v2 in g2.loops):
            g2 = g2.loop_complement(v2)
        joined = g1.one_point_join(v1, g2, v2)
        expected = twist_poly_graph(joined)
        t1 = graph_triple(g1, v1)
        t2 = graph_triple(g2, v2)
        assert join_recursion_looped(JoinRecursionInput(*t1, *t2)) == expected
        q1, q2, q3 = join_coefficients(*t1)
        assert q1 * t2[0] + q2 * t2[1] + q3 * t2[2] == expected
        if not (set(g1.loops) - {v1}):
            assert join_recursion_unlooped(t1[0], t1[2], t2[0], t2[2]) == expected


def test_leaf_recursion_examples():
    t_k1 = (IntPoly((2,)), 2 * Z, IntPoly((1,)))
    assert leaf_recursion(*t_k1, leaf_looped=False) == IntPoly((2, 0, 2))
    assert leaf_recursion(*t_k1, leaf_looped=True) == IntPoly((0, 2, 2))
    # growing a path one pendant at a time
    t_k2 = (IntPoly((2, 0, 2)), IntPoly((0, 2, 2)), IntPoly((2,)))
    assert leaf_recursion(*t_k2, leaf_looped=False) == IntPoly((2, 0, 6))


def test_minus_half_defect_examples():
    assert minus_half_defect(complete_graph(1), "v1") == 0
    assert minus_half_defect(complete_graph(2), "v1") == 0
    single = twist_poly_graph(complete_graph(2)).eval_rational(Fraction(-1, 2))
    assert single == Fraction(5, 2)  # sanity on one term of the K_2 case


def test_loopcomp_formula_examples():
    assert loopcomp_formula(IntPoly((2,)), IntPoly((1,))) == 2 * Z
    assert loopcomp_formula(IntPoly((2, 0, 2)), IntPoly((2,))) == IntPoly((0, 2, 2))
    k3 = complete_graph(3)
    got = loopcomp_formula(twist_poly_graph(k3),
                           twist_poly_graph(k3.delete_vertex("v1")))
    assert got == twist_poly_graph(k3.loop_complement("v1"))
    with pytest.raises(NonzeroRemainder):
        # single looped vertex: the unlooped-only formula must not divide
        loopcomp_formula(2 * Z, IntPoly((1,)))


def test_closed_forms():
    assert closed_form_complete(4) == IntPoly((0, 0, 8, 0, 8))
    assert closed_form_complete(3) == IntPoly((0, 0, 8))
    assert closed_form_complete(1) == IntPoly((2,))
    assert closed_form_windmill(2, 2) == IntPoly((2, 0, 6))
    assert closed_form_windmill(3, 2) == IntPoly((0, 0, 8, 0, 24))
    for n in range(1, 8):
        assert closed_form_complete(n) == twist_poly_graph(complete_graph(n))
    with pytest.raises(BadParams):
        closed_form_complete(0)
    with pytest.raises(BadParams):
        closed_form_windmill(2, 0)


def test_windmill_closed_form_matches_brute_force():
    for n, m in ((2, 1), (2, 3), (3, 1), (3, 2), (4, 1)):
        g = generate("windmill", n, m)
        assert closed_form_windmill(n, m) == twist_poly_graph(g)


def test_dm_leaf_recursion_examples():
    d_p3 = SetSystem(("a", "v", "b"), [(), ("a", "v"), ("v", "b")])
    assert dm_leaf_recursion(d_p3, "a", "v") == IntPoly((2, 0, 6))
    d_k2 = SetSystem(("u", "v"), [(), ("u", "v")])
    assert dm_leaf_recursion(d_k2, "u", "v") == IntPoly((2, 0, 2))

    # pair not feasible
    with pytest.raises(HypothesisViolated):
        dm_leaf_recursion(SetSystem(("a", "b"), [()]), "a", "b")
    # feasible pair but no pendant decomposition (triangle)
    with pytest.raises(HypothesisViolated):
        dm_leaf_recursion(from_graph(complete_graph(3)), "v1", "v2")
    with pytest.raises(HypothesisViolated):
        dm_leaf_recursion(SetSystem(("a", "b"), [("a", "b")]), "a", "b")


def test_multiplicativity_over_disjoint_union():
    rng = random.Random(22)
    for _ in range(15):
        g1, g2 = random_graph(rng, 4), random_graph(rng, 4)
        assert twist_poly_graph(g1.disjoint_union(g2)) \
            == twist_poly_graph(g1) * twist_poly_graph(g2)


def test_dm_via_graph_route():
    d_p3 = from_graph(P3)
    assert twist_poly_of_dm_via_graph(d_p3) == IntPoly((2, 0, 6))
    # a twist of a graph system is generally not normal: recovery must balk
    twisted = d_p3.twist(("a",))
    with pytest.raises(Exception):
        twist_poly_of_dm_via_graph(twisted)


def test_coefficients_nonnegative_and_degree_bounded():
    rng = random.Random(23)
    for _ in range(20):
        g = random_graph(rng, 6)
        t = twist_poly_graph(g)
        assert all(c >= 0 for c in t.coeffs)
        assert t.degree <= 2 * g.order

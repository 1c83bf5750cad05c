import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deltatwist.deltamatroid import (
    SetSystem,
    check_symmetric_exchange,
    find_nearest_feasible,
    from_graph,
    parse_set_system,
    to_graph,
    width_restriction_check,
)
from deltatwist.errors import (
    DuplicateFeasible,
    NotNormal,
    NotProper,
    SingletonStatusMismatch,
    TooLarge,
    UnknownElement,
)
from deltatwist.graphs import LoopedGraph, generate, parse_graph

K2 = parse_graph("vertices: u v\nedge: u v\n")
P3 = parse_graph("vertices: a v b\nedge: a v\nedge: v b\n")
D_K2 = SetSystem(("u", "v"), [(), ("u", "v")])
D_P3 = SetSystem(("a", "v", "b"), [(), ("a", "v"), ("v", "b")])


def random_system(rng, max_n=6):
    g = generate("random", rng.randint(1, max_n), rng.uniform(0.2, 0.8), 0.4,
                 seed=rng.randint(0, 10**6))
    return from_graph(g)


def test_exchange_axiom_examples():
    ok, witness = check_symmetric_exchange(SetSystem(("a", "b"), [(), ("a", "b")]))
    assert ok and witness is None
    ok, witness = check_symmetric_exchange(
        SetSystem(("a", "b", "c"), [(), ("a", "b", "c")]))
    assert not ok
    x, y, u = witness
    assert {x, y} == {frozenset(), frozenset("abc")} and u in "abc"
    ok, _ = check_symmetric_exchange(SetSystem(("a", "b"), [("a",), ("b",)]))
    assert ok
    with pytest.raises(NotProper):
        check_symmetric_exchange(SetSystem(("a",), []))


def test_twist():
    assert D_K2.twist(("u",)) == SetSystem(("u", "v"), [("u",), ("v",)])
    assert D_P3.twist(()) == D_P3
    rng = random.Random(0)
    for _ in range(20):
        d = random_system(rng)
        a = [e for e in d.ground if rng.random() < 0.5]
        b = [e for e in d.ground if rng.random() < 0.5]
        ab = set(a) ^ set(b)
        assert d.twist(a).twist(b) == d.twist(ab)
        assert d.twist(a).twist(a) == d


def test_width():
    assert D_K2.width() == 2
    assert SetSystem(("a", "b"), [("a",), ("b",)]).width() == 0
    assert D_K2.twist(("u",)).width() == 0
    with pytest.raises(NotProper):
        SetSystem(("a",), []).width()


def test_rank():
    assert D_K2.rank(("u",)) == 1
    assert D_P3.rank(()) == 3  # normal: distance 0 to the empty set
    assert D_K2.rank(("u", "v")) == 2
    with pytest.raises(UnknownElement):
        D_K2.rank(("zz",))


def test_delete_contract():
    assert D_P3.delete("v") == SetSystem(("a", "b"), [()])
    assert D_P3.contract("v") == SetSystem(("a", "b"), [("a",), ("b",)])
    # coloop: fall back to contraction
    coloop = SetSystem(("a", "b"), [("a",), ("a", "b")])
    assert coloop.delete("a") == coloop.contract("a")
    # dm-loop: contraction falls back to deletion
    dmloop = SetSystem(("a", "b"), [(), ("b",)])
    assert dmloop.contract("a") == dmloop.delete("a")


def test_minor_order_independence():
    rng = random.Random(1)
    for _ in range(30):
        d = random_system(rng, max_n=5)
        ops = [(e, rng.choice(("delete", "contract"))) for e in d.ground
               if rng.random() < 0.6]
        results = set()
        for _ in range(4):
            rng.shuffle(ops)
            out = d
            for e, kind in ops:
                out = out.delete(e) if kind == "delete" else out.contract(e)
            results.add(out)
        assert len(results) <= 1


def test_restrict():
    assert D_P3.restrict(("a", "v")) == SetSystem(("a", "v"), [(), ("a", "v")])
    assert D_P3.restrict(D_P3.ground) == D_P3
    empty = D_P3.restrict(())
    assert empty.ground == () and empty.feasible == (0,)


def test_direct_sum():
    d1 = SetSystem(("a",), [()])
    assert d1.direct_sum(SetSystem(("b",), [()])) == SetSystem(("a", "b"), [()])
    w = SetSystem(("w",), [(), ("w",)])
    assert len(D_K2.direct_sum(w).feasible) == 4
    unit = SetSystem((), [()])
    assert D_K2.direct_sum(unit) == D_K2
    # collision renaming mirrors the graph convention
    both = D_K2.direct_sum(D_K2)
    assert both.ground == ("u", "v", "u_2", "v_2")


def test_loop_complement():
    assert SetSystem(("v",), [()]).loop_complement("v") == \
        SetSystem(("v",), [(), ("v",)])
    assert D_K2.loop_complement("u") == \
        SetSystem(("u", "v"), [(), ("u",), ("u", "v")])
    rng = random.Random(2)
    for _ in range(20):
        d = random_system(rng)
        e = rng.choice(d.ground)
        assert d.loop_complement(e).loop_complement(e) == d


def test_from_graph_examples():
    assert from_graph(K2) == D_K2
    assert from_graph(P3) == D_P3
    looped = LoopedGraph(("v",), (), ("v",))
    assert from_graph(looped) == SetSystem(("v",), [(), ("v",)])
    assert from_graph(LoopedGraph(())).feasible == (0,)
    with pytest.raises(TooLarge):
        from_graph(LoopedGraph(tuple(f"x{i}" for i in range(21))))
    assert from_graph(P3, max_n=3) == D_P3  # explicit guard wins


def test_from_graph_always_normal_and_exchange():
    rng = random.Random(3)
    for _ in range(40):
        d = random_system(rng)
        assert d.is_normal
        assert check_symmetric_exchange(d)[0]


def test_to_graph_examples():
    assert to_graph(SetSystem(("v",), [(), ("v",)])) == LoopedGraph(("v",), (), ("v",))
    assert to_graph(D_K2) == K2
    with pytest.raises(NotNormal):
        to_graph(SetSystem(("a",), [("a",)]))


def test_to_graph_roundtrip_exhaustive_small():
    for n in range(4):
        pairs = [(i, j) for i in range(n) for j in range(i, n)]
        for bits in range(1 << len(pairs)):
            labels = tuple(f"v{i}" for i in range(n))
            edges = []
            loops = []
            for k, (i, j) in enumerate(pairs):
                if (bits >> k) & 1:
                    if i == j:
                        loops.append(labels[i])
                    else:
                        edges.append((labels[i], labels[j]))
            g = LoopedGraph(labels, edges, loops)
            assert to_graph(from_graph(g)) == g


def test_one_point_join_examples():
    joined = D_K2.one_point_join("v", D_K2, "u")
    assert joined.ground == ("u", "v", "v_2")
    assert joined.feasible_sets() == (frozenset(), frozenset(("u", "v")),
                                      frozenset(("v", "v_2")))
    with pytest.raises(SingletonStatusMismatch):
        SetSystem(("e",), [(), ("e",)]).one_point_join("e", D_K2, "u")
    # joining the trivial one-element system relabels the other factor
    trivial = SetSystem(("e1",), [()])
    out = trivial.one_point_join("e1", D_K2, "u")
    assert out.same_members(SetSystem(("e1", "v"), [(), ("e1", "v")]))


def test_find_nearest_feasible():
    assert find_nearest_feasible(D_P3, ("a",), (), ()) == frozenset()
    assert find_nearest_feasible(D_P3, ("a", "v"), ("a",), ()) == frozenset(("a", "v"))
    assert find_nearest_feasible(SetSystem(("a", "b"), [(), ("a",)]),
                                 ("b",), ("b",), ()) is None


def test_width_restriction_check():
    lhs, rhs = width_restriction_check(D_K2, ("u",))
    assert lhs == rhs == 0
    lhs, rhs = width_restriction_check(D_P3, ())
    assert lhs == rhs == 0
    lhs, rhs = width_restriction_check(D_P3, ("a", "v"))
    assert lhs == rhs == 2
    with pytest.raises(NotNormal):
        width_restriction_check(SetSystem(("a",), [("a",)]), ())


def test_width_of_twist_formula():
    rng = random.Random(4)
    for _ in range(40):
        d = random_system(rng)
        a = [e for e in d.ground if rng.random() < 0.5]
        comp = [e for e in d.ground if e not in a]
        assert d.twist(a).width() == d.restrict(a).width() + d.restrict(comp).width()


def test_serialize_roundtrip():
    text = D_P3.serialize()
    assert text == "ground: a v b\nfeasible:\nfeasible: a v\nfeasible: v b\n"
    assert parse_set_system(text) == D_P3
    improper = parse_set_system("ground: a b\n")
    assert improper.feasible == ()


def test_parse_errors():
    with pytest.raises(DuplicateFeasible):
        parse_set_system("ground: a\nfeasible: a\nfeasible: a\n")
    with pytest.raises(UnknownElement):
        parse_set_system("ground: a\nfeasible: b\n")
    with pytest.raises(Exception):
        parse_set_system("feasible: a\n")


@st.composite
def small_system(draw):
    n = draw(st.integers(min_value=1, max_value=4))
    ground = tuple(f"e{i}" for i in range(n))
    masks = draw(st.sets(st.integers(min_value=0, max_value=(1 << n) - 1),
                         min_size=1, max_size=1 << n))
    return SetSystem.from_masks(ground, masks)


@given(small_system(), st.randoms(use_true_random=False))
@settings(max_examples=100, deadline=None)
def test_twist_preserves_family_size(system, rnd):
    subset = [e for e in system.ground if rnd.random() < 0.5]
    assert len(system.twist(subset).feasible) == len(system.feasible)

"""Seeded identity checks behind the ``verify`` command.

Every checker draws its randomness from a generator seeded with
``"<seed>:<identity>"``, so sub-streams are reproducible and independent
of each other.  A report lists trials attempted, trials passed, and the
first counterexample serialized as complete re-runnable input files.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable

from . import deltamatroid as dm
from . import graphs, ribbon, twistpoly
from .errors import DeltaTwistError, NonzeroRemainder
from .gf2 import (
    Gf2SymMatrix,
    IntMatrix,
    JoinBlocks,
    check_det_identity,
    max_nonsingular_principal_order,
    principal_submatrix,
    rank_gf2,
)
from .poly import IntPoly


@dataclass
class VerifyReport:
    identity: str
    attempted: int
    passed: int
    counterexample: str | None
    seconds: float

    @property
    def ok(self) -> bool:
        return self.passed == self.attempted


def _rng(seed: int, name: str) -> random.Random:
    return random.Random(f"{seed}:{name}")


def _random_graph(rng: random.Random, max_n: int, min_n: int = 1,
                  loop_prob: float = 0.4) -> graphs.LoopedGraph:
    n = rng.randint(min_n, max_n)
    return graphs.random_graph(n, rng.uniform(0.2, 0.8), loop_prob, rng)


def _graph_block(title: str, g: graphs.LoopedGraph) -> str:
    return f"{title}:\n{g.serialize()}"


def _sym_bits(rng: random.Random, n: int) -> Gf2SymMatrix:
    rows = [0] * n
    for i in range(n):
        for j in range(i, n):
            if rng.random() < 0.5:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return Gf2SymMatrix(n, rows)


def _enumerate_sym_bits(n: int):
    """All symmetric GF(2) matrices of order n, by upper-triangle bits."""
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    for bits in range(1 << len(pairs)):
        rows = [0] * n
        for k, (i, j) in enumerate(pairs):
            if (bits >> k) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
        yield Gf2SymMatrix(n, rows)


def _graph_from_matrix(m: Gf2SymMatrix) -> graphs.LoopedGraph:
    labels = [f"v{i}" for i in range(1, m.order + 1)]
    edges = [(labels[i], labels[j])
             for i in range(m.order) for j in range(i + 1, m.order)
             if m.entry(i, j)]
    loops = [labels[i] for i in range(m.order) if m.entry(i, i)]
    return graphs.LoopedGraph(labels, edges, loops)


def _matched_join_pair(rng: random.Random, max_n: int):
    """Two random graphs plus join vertices with matched loop status."""
    g1 = _random_graph(rng, max_n)
    g2 = _random_graph(rng, max_n)
    v1 = rng.choice(g1.labels)
    v2 = rng.choice(g2.labels)
    if (v1 in g1.loops) != (v2 in g2.loops):
        g2 = g2.loop_complement(v2)
    return g1, v1, g2, v2


def _join_case_text(g1, v1, g2, v2) -> str:
    return (_graph_block("first factor", g1) + f"join vertex: {v1}\n"
            + _graph_block("second factor", g2) + f"join vertex: {v2}\n")


# ---------------------------------------------------------------------------
# Individual checkers.  Each yields one boolean per trial via _Failure.
# ---------------------------------------------------------------------------


def _check_looped_recursion(trials, max_n, seed, threads):
    rng = _rng(seed, "looped-recursion")
    passed = 0
    counterexample = None
    for _ in range(trials):
        g1, v1, g2, v2 = _matched_join_pair(rng, max_n)
        joined = g1.one_point_join(v1, g2, v2)
        expected = twistpoly.twist_poly_graph(joined, threads=threads)
        inp = twistpoly.JoinRecursionInput(
            *twistpoly.graph_triple(g1, v1, threads),
            *twistpoly.graph_triple(g2, v2, threads))
        try:
            got = twistpoly.join_recursion_looped(inp)
            ok = got == expected
        except NonzeroRemainder:
            ok = False
        if ok:
            passed += 1
        elif counterexample is None:
            counterexample = _join_case_text(g1, v1, g2, v2)
    return trials, passed, counterexample


def _check_unlooped_recursion(trials, max_n, seed, threads):
    rng = _rng(seed, "unlooped-recursion")
    passed = 0
    counterexample = None
    for _ in range(trials):
        g1, v1, g2, v2 = _matched_join_pair(rng, max_n)
        for w in g1.labels:  # make G1 minus the join vertex unlooped
            if w != v1 and w in g1.loops:
                g1 = g1.loop_complement(w)
        joined = g1.one_point_join(v1, g2, v2)
        expected = twistpoly.twist_poly_graph(joined, threads=threads)
        t1 = twistpoly.twist_poly_graph(g1, threads=threads)
        t1m = twistpoly.twist_poly_graph(g1.delete_vertex(v1), threads=threads)
        t2 = twistpoly.twist_poly_graph(g2, threads=threads)
        t2m = twistpoly.twist_poly_graph(g2.delete_vertex(v2), threads=threads)
        try:
            ok = twistpoly.join_recursion_unlooped(t1, t1m, t2, t2m) == expected
        except NonzeroRemainder:
            ok = False
        if ok:
            passed += 1
        elif counterexample is None:
            counterexample = _join_case_text(g1, v1, g2, v2)
    return trials, passed, counterexample


def _check_leaf(trials, max_n, seed, threads):
    rng = _rng(seed, "leaf")
    passed = 0
    counterexample = None
    for _ in range(trials):
        g2 = _random_graph(rng, max_n)
        v2 = rng.choice(g2.labels)
        t2, t2p, t2m = twistpoly.graph_triple(g2, v2, threads)
        ok = True
        for leaf_looped in (False, True):
            loops = ["w"] if leaf_looped else []
            if v2 in g2.loops:
                loops.append("v1")
            g1 = graphs.LoopedGraph(("w", "v1"), [("w", "v1")], loops)
            joined = g1.one_point_join("v1", g2, v2)
            expected = twistpoly.twist_poly_graph(joined, threads=threads)
            if twistpoly.leaf_recursion(t2, t2p, t2m, leaf_looped) != expected:
                ok = False
        if ok:
            passed += 1
        elif counterexample is None:
            counterexample = _graph_block("second factor", g2) + f"join vertex: {v2}\n"
    return trials, passed, counterexample


def _check_minus_half(trials, max_n, seed, threads):
    rng = _rng(seed, "minus-half")
    passed = 0
    counterexample = None
    for _ in range(trials):
        g = _random_graph(rng, max_n)
        v = rng.choice(g.labels)
        if twistpoly.minus_half_defect(g, v) == 0:
            passed += 1
        elif counterexample is None:
            counterexample = _graph_block("graph", g) + f"vertex: {v}\n"
    return trials, passed, counterexample


def _check_loopcomp_unlooped(trials, max_n, seed, threads):
    rng = _rng(seed, "loopcomp-unlooped")
    passed = 0
    counterexample = None
    for _ in range(trials):
        g = _random_graph(rng, max_n, loop_prob=0.0)
        v = rng.choice(g.labels)
        t = twistpoly.twist_poly_graph(g, threads=threads)
        tm = twistpoly.twist_poly_graph(g.delete_vertex(v), threads=threads)
        expected = twistpoly.twist_poly_graph(g.loop_complement(v), threads=threads)
        try:
            ok = twistpoly.loopcomp_formula(t, tm) == expected
        except NonzeroRemainder:
            ok = False
        if ok:
            passed += 1
        elif counterexample is None:
            counterexample = _graph_block("graph", g) + f"vertex: {v}\n"
    # Expected-fail control: a looped input must not satisfy the formula.
    control = graphs.LoopedGraph(("v",), (), ("v",))
    t = twistpoly.twist_poly_graph(control)
    tm = twistpoly.twist_poly_graph(control.delete_vertex("v"))
    expected = twistpoly.twist_poly_graph(control.loop_complement("v"))
    try:
        control_ok = twistpoly.loopcomp_formula(t, tm) != expected
    except NonzeroRemainder:
        control_ok = True
    if control_ok:
        passed += 1
    elif counterexample is None:
        counterexample = ("expected-fail control unexpectedly satisfied the "
                          "formula:\n" + _graph_block("graph", control))
    return trials + 1, passed, counterexample


def _check_closed_forms(trials, max_n, seed, threads):
    cases = []
    for n in range(1, 8):
        cases.append((f"complete {n}", graphs.complete_graph(n),
                      twistpoly.closed_form_complete(n)))
    for n, m in ((2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (4, 1), (4, 2), (5, 1)):
        cases.append((f"windmill {n} {m}", graphs.windmill_graph(n, m),
                      twistpoly.closed_form_windmill(n, m)))
    passed = 0
    counterexample = None
    for name, g, closed in cases:
        if twistpoly.twist_poly_graph(g, threads=threads) == closed:
            passed += 1
        elif counterexample is None:
            counterexample = f"family: {name}\n" + _graph_block("graph", g)
    return len(cases), passed, counterexample


def _check_join_setsystem(trials, max_n, seed, threads):
    rng = _rng(seed, "join-setsystem")
    passed = 0
    counterexample = None
    for _ in range(trials):
        g1, v1, g2, v2 = _matched_join_pair(rng, max_n)
        direct = dm.from_graph(g1.one_point_join(v1, g2, v2))
        joined = dm.from_graph(g1).one_point_join(v1, dm.from_graph(g2), v2)
        if direct == joined:
            passed += 1
        elif counterexample is None:
            counterexample = _join_case_text(g1, v1, g2, v2)
    return trials, passed, counterexample


def _check_loopcomp_correspondence(trials, max_n, seed, threads):
    rng = _rng(seed, "loopcomp-correspondence")
    passed = 0
    counterexample = None
    attempted = 0
    for n in range(5):  # exhaustive over all graphs on at most 4 vertices
        for m in _enumerate_sym_bits(n):
            g = _graph_from_matrix(m)
            attempted += 1
            bad = None
            for v in g.labels:
                if dm.from_graph(g.loop_complement(v)) != dm.from_graph(g).loop_complement(v):
                    bad = v
                    break
            if bad is None:
                passed += 1
            elif counterexample is None:
                counterexample = _graph_block("graph", g) + f"vertex: {bad}\n"
    for _ in range(trials):
        g = _random_graph(rng, max_n)
        v = rng.choice(g.labels)
        attempted += 1
        if dm.from_graph(g.loop_complement(v)) == dm.from_graph(g).loop_complement(v):
            passed += 1
        elif counterexample is None:
            counterexample = _graph_block("graph", g) + f"vertex: {v}\n"
    return attempted, passed, counterexample


def _check_boundary_corank(trials, max_n, seed, threads):
    rng = _rng(seed, "boundary-corank")
    passed = 0
    counterexample = None
    for _ in range(trials):
        b = ribbon.random_bouquet(rng.randint(0, max_n), rng.random(), rng)
        adj = b.intersection_graph().adjacency_matrix()
        labels = b.edge_labels
        ok = True
        subset: list[str] = []
        for mask in range(1 << len(labels)):
            idx = [i for i in range(len(labels)) if (mask >> i) & 1]
            subset = [labels[i] for i in idx]
            corank = len(idx) - rank_gf2(principal_submatrix(adj, idx))
            if b.boundary_components(subset) != corank + 1:
                ok = False
                break
        if ok:
            passed += 1
        elif counterexample is None:
            counterexample = "bouquet:\n" + b.serialize() \
                + "subset: " + " ".join(subset) + "\n"
    return trials, passed, counterexample


def _check_quasitree(trials, max_n, seed, threads):
    rng = _rng(seed, "quasitree")
    passed = 0
    counterexample = None
    for _ in range(trials):
        b = ribbon.random_bouquet(rng.randint(0, max_n), rng.random(), rng)
        ig = b.intersection_graph()
        qt = b.quasi_tree_delta_matroid()
        ok = (qt == dm.from_graph(ig)
              and b.partial_dual_genus_poly() == twistpoly.twist_poly_graph(ig)
              and b.euler_genus() == qt.width())
        if ok:
            passed += 1
        elif counterexample is None:
            counterexample = "bouquet:\n" + b.serialize()
    return trials, passed, counterexample


def _check_exchange_axiom(trials, max_n, seed, threads):
    rng = _rng(seed, "exchange-axiom")
    passed = 0
    counterexample = None
    for _ in range(trials):
        g = _random_graph(rng, max_n)
        holds, witness = dm.check_symmetric_exchange(dm.from_graph(g))
        if holds:
            passed += 1
        elif counterexample is None:
            counterexample = _graph_block("graph", g) + f"witness: {witness!r}\n"
    # Expected-fail control: this family violates the axiom.
    control = dm.SetSystem(("a", "b", "c"), [(), ("a", "b", "c")])
    holds, _witness = dm.check_symmetric_exchange(control)
    if not holds:
        passed += 1
    elif counterexample is None:
        counterexample = ("expected-fail control passed the axiom:\n"
                          + control.serialize())
    return trials + 1, passed, counterexample


def _check_det_identity(trials, max_n, seed, threads):
    rng = _rng(seed, "det-identity")
    passed = 0
    counterexample = None
    attempted = 0
    for _ in range(trials):  # GF(2) instances
        n = rng.randint(0, max_n)
        m = rng.randint(0, max_n)
        blocks = JoinBlocks(
            a=_sym_bits(rng, n),
            u=tuple(rng.randint(0, 1) for _ in range(n)),
            v=tuple(rng.randint(0, 1) for _ in range(n)),
            c=rng.randint(0, 1),
            x=tuple(rng.randint(0, 1) for _ in range(m)),
            y=tuple(rng.randint(0, 1) for _ in range(m)),
            b=_sym_bits(rng, m))
        attempted += 1
        if check_det_identity(blocks).holds:
            passed += 1
        elif counterexample is None:
            counterexample = f"gf2 blocks: {blocks!r}\n"
    for _ in range(max(1, trials // 5)):  # exact-integer instances
        n = rng.randint(0, max_n)
        m = rng.randint(0, max_n)
        rand_mat = lambda k: IntMatrix(
            [[rng.randint(-3, 3) for _ in range(k)] for _ in range(k)])
        blocks = JoinBlocks(
            a=rand_mat(n),
            u=tuple(rng.randint(-3, 3) for _ in range(n)),
            v=tuple(rng.randint(-3, 3) for _ in range(n)),
            c=rng.randint(-3, 3),
            x=tuple(rng.randint(-3, 3) for _ in range(m)),
            y=tuple(rng.randint(-3, 3) for _ in range(m)),
            b=rand_mat(m))
        attempted += 1
        if check_det_identity(blocks).holds:
            passed += 1
        elif counterexample is None:
            counterexample = f"integer blocks: {blocks!r}\n"
    return attempted, passed, counterexample


def _check_dm_leaf(trials, max_n, seed, threads):
    rng = _rng(seed, "dm-leaf")
    passed = 0
    counterexample = None
    attempted = 0
    for _ in range(trials):
        base = _random_graph(rng, max_n - 1)
        hub = rng.choice(base.labels)
        leaf = graphs.fresh_name("w", set(base.labels))
        g = graphs.LoopedGraph((*base.labels, leaf),
                               [*base.edge_pairs(), (hub, leaf)], base.loops)
        system = dm.from_graph(g)
        attempted += 1
        try:
            got = twistpoly.dm_leaf_recursion(system, leaf, hub)
            ok = got == twistpoly.twist_poly_setsystem(system)
        except DeltaTwistError:
            ok = False
        if ok:
            passed += 1
        elif counterexample is None:
            counterexample = ("set system:\n" + system.serialize()
                              + f"pendant: {leaf}\nneighbor: {hub}\n")
    # The two hand-checked cases: a path of length two and a single edge.
    hand = [
        (dm.SetSystem(("a", "v", "b"), [(), ("a", "v"), ("v", "b")]), "a", "v",
         IntPoly((2, 0, 6))),
        (dm.SetSystem(("u", "v"), [(), ("u", "v")]), "u", "v",
         IntPoly((2, 0, 2))),
    ]
    for system, e1, e2, expected in hand:
        attempted += 1
        try:
            ok = twistpoly.dm_leaf_recursion(system, e1, e2) == expected
        except DeltaTwistError:
            ok = False
        if ok:
            passed += 1
        elif counterexample is None:
            counterexample = "set system:\n" + system.serialize()
    return attempted, passed, counterexample


def _check_nearest_feasible(trials, max_n, seed, threads):
    rng = _rng(seed, "nearest-feasible")
    passed = 0
    counterexample = None
    for _ in range(trials):
        g = _random_graph(rng, max_n)
        system = dm.from_graph(g)
        ground = system.ground
        x = frozenset(e for e in ground if rng.random() < 0.5)
        anchor = system.names_of(rng.choice(system.feasible))
        y = frozenset(e for e in x & anchor if rng.random() < 0.5)
        z = frozenset(e for e in ground
                      if e not in x and e not in anchor and rng.random() < 0.5)
        found = dm.find_nearest_feasible(system, x, y, z)
        global_min = min((system.mask_of(x) ^ f).bit_count()
                         for f in system.feasible)
        ok = (found is not None and y <= found and not (z & found)
              and len(x ^ found) == global_min)
        if ok:
            passed += 1
        elif counterexample is None:
            counterexample = ("set system:\n" + system.serialize()
                              + f"X: {sorted(x)}\nY: {sorted(y)}\nZ: {sorted(z)}\n")
    # Control: unsatisfiable constraints report no witness.
    control = dm.SetSystem(("a", "b"), [(), ("a",)])
    if dm.find_nearest_feasible(control, ("b",), ("b",), ()) is None:
        passed += 1
    elif counterexample is None:
        counterexample = "no-witness control returned a set:\n" + control.serialize()
    return trials + 1, passed, counterexample


def _check_rank_principal(trials, max_n, seed, threads):
    passed = 0
    counterexample = None
    attempted = 0
    for n in range(max_n + 1):
        for m in _enumerate_sym_bits(n):
            attempted += 1
            if rank_gf2(m) == max_nonsingular_principal_order(m):
                passed += 1
            elif counterexample is None:
                counterexample = f"matrix: {m.to_entries()!r}\n"
    return attempted, passed, counterexample


def _check_direct_sum(trials, max_n, seed, threads):
    rng = _rng(seed, "direct-sum")
    passed = 0
    counterexample = None
    for _ in range(trials):
        g1 = _random_graph(rng, max_n)
        g2 = _random_graph(rng, max_n)
        d1 = dm.from_graph(g1)
        d2 = dm.from_graph(g2)
        product = twistpoly.twist_poly_setsystem(d1) * twistpoly.twist_poly_setsystem(d2)
        ok = (twistpoly.twist_poly_setsystem(d1.direct_sum(d2)) == product
              and twistpoly.twist_poly_graph(g1.disjoint_union(g2)) == product)
        if ok:
            passed += 1
        elif counterexample is None:
            counterexample = _graph_block("first", g1) + _graph_block("second", g2)
    return trials, passed, counterexample


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

Checker = Callable[[int, int, int, int], tuple[int, int, str | None]]

#: identity -> (checker, default trials, default max size)
REGISTRY: dict[str, tuple[Checker, int, int]] = {
    "looped-recursion": (_check_looped_recursion, 300, 6),
    "unlooped-recursion": (_check_unlooped_recursion, 300, 6),
    "leaf": (_check_leaf, 200, 8),
    "minus-half": (_check_minus_half, 300, 8),
    "loopcomp-unlooped": (_check_loopcomp_unlooped, 200, 8),
    "closed-forms": (_check_closed_forms, 15, 7),
    "join-setsystem": (_check_join_setsystem, 200, 6),
    "loopcomp-correspondence": (_check_loopcomp_correspondence, 100, 7),
    "boundary-corank": (_check_boundary_corank, 200, 8),
    "quasitree": (_check_quasitree, 200, 8),
    "exchange-axiom": (_check_exchange_axiom, 200, 6),
    "det-identity": (_check_det_identity, 1000, 6),
    "dm-leaf": (_check_dm_leaf, 100, 8),
    "nearest-feasible": (_check_nearest_feasible, 200, 6),
    "rank-principal": (_check_rank_principal, 1, 5),
    "direct-sum": (_check_direct_sum, 100, 6),
}


def identity_names() -> list[str]:
    return list(REGISTRY)


def run_identity(name: str, trials: int | None = None, max_n: int | None = None,
                 seed: int = 0, threads: int = 1) -> VerifyReport:
    """Run one identity check and time it."""
    if name not in REGISTRY:
        raise KeyError(name)
    checker, default_trials, default_max_n = REGISTRY[name]
    start = time.perf_counter()
    attempted, passed, counterexample = checker(
        trials if trials is not None else default_trials,
        max_n if max_n is not None else default_max_n,
        seed, threads)
    elapsed = time.perf_counter() - start
    return VerifyReport(name, attempted, passed, counterexample, elapsed)


def run_all(trials: int | None = None, max_n: int | None = None, seed: int = 0,
            threads: int = 1) -> list[VerifyReport]:
    return [run_identity(name, trials, max_n, seed, threads) for name in REGISTRY]

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from boxkit.boxrep import verify
from boxkit.graph import Graph, induced_subgraph
from boxkit.interval import enumerate_canonical_models, intersect_models, is_consistent, model_to_graph
from boxkit.pathdp import (BrokenContiguity, InvalidDecomposition, PathDecomposition, UncoveredEdge,
                           UncoveredVertex, approx_boxicity, dp_feasible, optimal_path_decomposition,
                           reconstruct, star_model, validate_pd, window_pd)
from oracles import atlas, box, min_bandwidth_labeling, pathwidth_bruteforce, random_graph

X, Y, V1, V2 = 0, 1, 2, 3
C4 = Graph(range(4), [(X, V1), (X, V2), (Y, V1), (Y, V2)])
C4_PD = PathDecomposition.of([{X, V1, Y}, {X, V2, Y}])
P4 = Graph(range(4), [(0, 1), (1, 2), (2, 3)])
P4_PD = PathDecomposition.of([{0, 1}, {1, 2}, {2, 3}])


def literal_layer_counts(g: Graph, pd: PathDecomposition, d: int) -> list[int]:
    """Layer sizes by enumerating every tuple of canonical models per bag."""
    counts = []
    prev = None
    for bag in pd.bags:
        h = induced_subgraph(g, bag)
        cands = [m for m in enumerate_canonical_models(bag) if h.edges <= model_to_graph(m).edges]
        layer = [t for t in itertools.product(cands, repeat=d) if intersect_models(list(t)) == h]
        if prev is not None:
            layer = [t for t in layer
                     if any(all(is_consistent(a, b) for a, b in zip(p, t)) for p in prev)]
        counts.append(len(layer))
        if not layer:
            break
        prev = layer
    return counts


def test_validate_pd_examples():
    assert validate_pd(C4, C4_PD) == 2
    assert validate_pd(P4, P4_PD) == 1
    with pytest.raises(UncoveredVertex) as err:
        validate_pd(P4, PathDecomposition.of([{0, 1}, {1, 2}]))
    assert err.value.witness == 3
    with pytest.raises(UncoveredEdge) as err:
        validate_pd(P4, PathDecomposition.of([{0, 1}, {1, 2}, {3}]))
    assert err.value.witness == (2, 3)
    with pytest.raises(BrokenContiguity) as err:
        validate_pd(P4, PathDecomposition.of([{0, 1}, {1, 2}, {2, 3}, {1}]))
    assert err.value.witness[0] == 1
    with pytest.raises(InvalidDecomposition):
        validate_pd(P4, PathDecomposition.of([{0, 1, 2, 3, 9}]))


def test_text_round_trip_and_errors():
    text = "# two bags\n0 1 2\n\n0 2 3  # tail\n"
    pd = PathDecomposition.from_text(text)
    assert pd.bags == (frozenset({0, 1, 2}), frozenset({0, 2, 3}))
    assert PathDecomposition.from_text(pd.to_text()) == pd
    with pytest.raises(InvalidDecomposition):
        PathDecomposition.from_text("0 1\nx 2\n")


def test_normalized_drops_redundant_bags():
    pd = PathDecomposition.of([{0}, {0, 1}, set(), {1}, {1, 2}, {1, 2}])
    assert pd.normalized().bags == (frozenset({0, 1}), frozenset({1, 2}))


def test_star_model_examples():
    assert model_to_graph(star_model(C4_PD)) == Graph(range(4), set(Graph.complete(range(4)).edges) - {(V1, V2)})
    assert model_to_graph(star_model(P4_PD)) == P4


def test_star_model_is_a_supergraph(small_graphs):
    for g in small_graphs:
        pd = optimal_path_decomposition(g)
        sm = model_to_graph(star_model(pd))
        assert g.edges <= sm.edges
        assert sm.edges == {(u, v) for u, v in itertools.combinations(g.sorted_vertices(), 2)
                            if any(u in b and v in b for b in pd.bags)}


def test_window_pd_examples():
    pd = window_pd(P4, {0: 1, 1: 2, 2: 3, 3: 4}, 1)
    assert pd == P4_PD
    assert window_pd(P4, {0: 1, 1: 2, 2: 3, 3: 4}, 5).bags == (frozenset(range(4)),)
    with pytest.raises(InvalidDecomposition):
        window_pd(C4, {v: v for v in range(4)}, 1)


def test_optimal_decomposition_width(small_graphs):
    for g in small_graphs:
        pd = optimal_path_decomposition(g)
        if g.n:
            assert validate_pd(g, pd) == pathwidth_bruteforce(g)


def test_c4_is_feasible_at_d_1():
    chain = dp_feasible(C4, C4_PD, 1)
    assert chain is not None
    rep = reconstruct(chain)
    assert rep.d == 2 and verify(C4, rep)


def test_p4_approximation():
    res = approx_boxicity(P4, P4_PD)
    assert res.d == 1 and res.rep.d == 2 and verify(P4, res.rep)


def test_complete_graph_gives_d_zero():
    k4 = Graph.complete(range(4))
    res = approx_boxicity(k4, PathDecomposition.of([range(4)]))
    assert res.d == 0 and verify(k4, res.rep)


def test_d_must_be_positive():
    with pytest.raises(ValueError):
        dp_feasible(P4, P4_PD, 0)


def test_dp_brackets_boxicity():
    for g in atlas(5):
        if g.is_complete():
            continue
        b = box(g)
        pd = optimal_path_decomposition(g)
        assert dp_feasible(g, pd, b) is not None
        if b >= 3:
            assert dp_feasible(g, pd, b - 2) is None
        res = approx_boxicity(g, pd)
        assert res.d <= b <= res.d + 1
        assert verify(g, res.rep) and res.rep.d == res.d + 1


def test_box3_graph_is_infeasible_at_d_1():
    g = Graph(range(6), [(a, b) for a, b in itertools.combinations(range(6), 2) if b != a + 3])
    assert dp_feasible(g, optimal_path_decomposition(g), 1) is None


def test_feasibility_is_monotone_in_d():
    rng = random.Random(8)
    for _ in range(60):
        g = random_graph(rng, rng.randint(2, 6))
        if g.is_complete():
            continue
        pd = optimal_path_decomposition(g)
        feasible = [dp_feasible(g, pd, d) is not None for d in range(1, box(g) + 1)]
        assert feasible == sorted(feasible)
        assert feasible[-1]


def test_answer_does_not_depend_on_the_decomposition():
    rng = random.Random(21)
    for _ in range(40):
        g = random_graph(rng, rng.randint(3, 6))
        if g.is_complete():
            continue
        lab = {v: i for i, v in enumerate(g.sorted_vertices())}
        perm = g.sorted_vertices()
        rng.shuffle(perm)
        other = {v: i for i, v in enumerate(perm)}
        answers = set()
        for labeling in (lab, other):
            pd = window_pd(g, labeling, g.n - 1)
            answers.add(approx_boxicity(g, pd).d)
        answers.add(approx_boxicity(g, optimal_path_decomposition(g)).d)
        assert max(answers) - min(answers) <= 1
        assert all(a <= box(g) <= a + 1 for a in answers)


def test_exhaustive_counts_match_literal_enumeration():
    cases = [(C4, C4_PD, 1), (C4, C4_PD, 2), (P4, P4_PD, 1), (P4, P4_PD, 2)]
    rng = random.Random(4)
    for _ in range(15):
        g = random_graph(rng, rng.randint(3, 5))
        bw, lab = min_bandwidth_labeling(g)
        cases.append((g, window_pd(g, lab, max(bw, 1)), rng.randint(1, 2)))
    for g, pd, d in cases:
        pd = pd.normalized()
        expected = literal_layer_counts(g, pd, d)
        chain = dp_feasible(g, pd, d, exhaustive=True)
        if chain is None:
            assert expected[-1] == 0
        else:
            assert [L.tuple_count for L in chain.layers] == expected


def test_exhaustive_and_search_modes_agree():
    rng = random.Random(13)
    for _ in range(40):
        g = random_graph(rng, rng.randint(2, 6))
        if g.is_complete():
            continue
        pd = optimal_path_decomposition(g)
        for d in (1, 2):
            a = dp_feasible(g, pd, d) is not None
            b = dp_feasible(g, pd, d, exhaustive=True)
            assert a == (b is not None)
            if b is not None:
                assert verify(g, reconstruct(b))


def test_report_shape():
    chain = dp_feasible(P4, P4_PD, 1, exhaustive=True)
    report = chain.report()
    assert report["d"] == 1 and len(report["layers"]) == 3
    assert all(L["tuples"] > 0 for L in report["layers"])
    res = approx_boxicity(P4, P4_PD)
    assert set(res.report()) >= {"d", "rep_dimension", "tried", "wall_time"}


@given(st.randoms(use_true_random=False))
@settings(max_examples=40, deadline=None)
def test_reconstruction_verifies_on_random_graphs(rnd):
    g = random_graph(rnd, rnd.randint(1, 7))
    bw, lab = min_bandwidth_labeling(g)
    pd = window_pd(g, lab, bw)
    res = approx_boxicity(g, pd)
    assert verify(g, res.rep)
    assert res.d <= pd.width + 2

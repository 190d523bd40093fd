"""Data model and validator behavior on small hand-checked instances."""

from fractions import Fraction

import pytest

from hypermatch.core import (
    FractionalAssignment,
    Matching,
    build_fractional_assignment,
    build_graph,
    build_hypergraph,
    graph_to_hypergraph,
    induced_subgraph,
    induced_subhypergraph,
    is_dyadic,
    is_power_of_two,
    line_graph,
    next_power_of_two,
    unblocked_edges,
    validate_edge_coloring,
    validate_fractional_matching,
    validate_independent_set,
    validate_matching,
    validate_vertex_coloring,
    vertex_loads,
)


def triangle():
    return build_hypergraph(3, [{0, 1}, {1, 2}, {0, 2}])


def test_power_of_two_helpers():
    assert [is_power_of_two(k) for k in (1, 2, 3, 4, 6, 8)] == [
        True, True, False, True, False, True,
    ]
    assert next_power_of_two(0) == 1
    assert next_power_of_two(1) == 1
    assert next_power_of_two(5) == 8
    assert next_power_of_two(8) == 8
    assert is_dyadic(Fraction(3, 8))
    assert not is_dyadic(Fraction(1, 3))


def test_build_hypergraph_single_edge():
    h = build_hypergraph(3, [{0, 1, 2}])
    assert h.rank == 3
    assert h.max_degree == 1
    assert h.m == 1


def test_build_hypergraph_triangle():
    h = triangle()
    assert h.rank == 2
    assert h.max_degree == 2
    assert h.incident_edges(1) == (0, 1)


def test_build_hypergraph_parallel_edges_keep_ids():
    h = build_hypergraph(2, [{0, 1}, {0, 1}])
    assert h.m == 2
    assert h.max_degree == 2
    assert h.edges[0] == h.edges[1]


@pytest.mark.parametrize(
    "n,edges",
    [
        (2, [[]]),
        (3, [[0, 0, 1]]),
        (2, [[0, 2]]),
        (-1, []),
    ],
)
def test_build_hypergraph_rejects_bad_input(n, edges):
    with pytest.raises(ValueError):
        build_hypergraph(n, edges)


def test_build_graph_normalizes_and_rejects():
    g = build_graph(4, [(2, 0), (1, 3)])
    assert g.edges == ((0, 2), (1, 3))
    assert g.edge_id(3, 1) == 1
    assert g.has_edge(0, 2) and not g.has_edge(0, 1)
    with pytest.raises(ValueError):
        build_graph(3, [(0, 0)])
    with pytest.raises(ValueError):
        build_graph(3, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        build_graph(2, [(0, 5)])


def test_line_graph_single_hyperedge_is_isolated_vertex():
    lg = line_graph(build_hypergraph(3, [{0, 1, 2}]))
    assert lg.n == 1
    assert lg.m == 0


def test_line_graph_of_star_is_complete():
    h = build_hypergraph(4, [{0, 1}, {0, 2}, {0, 3}])
    lg = line_graph(h)
    assert lg.n == 3
    assert lg.m == 3  # all pairs meet at the center


def test_line_graph_path_plus_isolated():
    h = build_hypergraph(8, [{0, 1, 2}, {2, 3, 4}, {5, 6, 7}])
    lg = line_graph(h)
    assert lg.edges == ((0, 1),)


def test_graph_to_hypergraph_keeps_edge_ids():
    g = build_graph(3, [(0, 1), (1, 2)])
    h = graph_to_hypergraph(g)
    assert h.edges == (frozenset({0, 1}), frozenset({1, 2}))
    assert h.rank == 2


def test_matching_validation_on_triangle():
    h = triangle()
    assert validate_matching(h, Matching(frozenset({0})), require_maximal=True).ok
    bad = validate_matching(h, Matching(frozenset({0, 1})))
    assert not bad.ok
    assert "share vertex 1" in bad.reason


def test_matching_validation_flags_missed_edge():
    h = build_hypergraph(4, [{0, 1}, {2, 3}])
    verdict = validate_matching(h, Matching(frozenset({0})), require_maximal=True)
    assert not verdict.ok
    assert "edge 1" in verdict.reason


def test_fractional_assignment_builder():
    x = build_fractional_assignment(
        {0: Fraction(1, 2), 1: Fraction(0)}, Fraction(1, 4)
    )
    assert x.support() == (0,)
    assert x.get(1) == 0
    assert x.total() == Fraction(1, 2)
    with pytest.raises(ValueError):
        build_fractional_assignment({0: Fraction(1, 3)}, Fraction(1, 4))
    with pytest.raises(ValueError):
        build_fractional_assignment({0: Fraction(1, 8)}, Fraction(1, 4))
    with pytest.raises(ValueError):
        build_fractional_assignment({}, Fraction(0))


def test_fractional_validation_zero_assignment():
    h = triangle()
    x = FractionalAssignment(values={}, floor=Fraction(1, 2))
    verdict = validate_fractional_matching(h, x)
    assert verdict.ok
    assert verdict.half_tight == frozenset()


def test_fractional_validation_half_on_triangle():
    h = triangle()
    x = build_fractional_assignment(
        {eid: Fraction(1, 2) for eid in range(3)}, Fraction(1, 2)
    )
    verdict = validate_fractional_matching(h, x)
    assert verdict.ok
    assert verdict.half_tight == frozenset({0, 1, 2})
    assert vertex_loads(h, x) == [Fraction(1)] * 3


def test_fractional_validation_overloaded_center():
    # four edges at one center carrying 1/3 each: the center sums to 4/3
    h = build_hypergraph(5, [{0, 1}, {0, 2}, {0, 3}, {0, 4}])
    x = FractionalAssignment(
        values={eid: Fraction(1, 3) for eid in range(4)}, floor=Fraction(1, 3)
    )
    verdict = validate_fractional_matching(h, x)
    assert not verdict.ok
    assert "vertex 0" in verdict.reason


def test_unblocked_edges():
    h = triangle()
    assert unblocked_edges(h, Matching(frozenset())) == frozenset({0, 1, 2})
    assert unblocked_edges(h, Matching(frozenset({0}))) == frozenset()


def test_induced_subhypergraph_maps_ids():
    h = build_hypergraph(6, [{0, 1}, {2, 3}, {4, 5}])
    sub, old = induced_subhypergraph(h, [2, 0])
    assert old == (0, 2)
    assert sub.m == 2
    assert sub.n == h.n
    assert sub.edges[1] == frozenset({4, 5})


def test_induced_subgraph_relabels():
    g = build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    sub, old = induced_subgraph(g, [1, 2, 4])
    assert old == (1, 2, 4)
    assert sub.n == 3
    assert sub.edges == ((0, 1),)


def test_independent_set_validation():
    g = build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
    assert validate_independent_set(g, frozenset({0, 2})).ok
    assert not validate_independent_set(g, frozenset({0, 1})).ok
    missed = validate_independent_set(g, frozenset({0}), require_maximal=True)
    assert not missed.ok
    assert "could be added" in missed.reason
    assert validate_independent_set(g, frozenset({0, 2}), require_maximal=True).ok


def test_edge_coloring_validation():
    g = build_graph(3, [(0, 1), (1, 2), (0, 2)])
    good = {0: 1, 1: 2, 2: 3}
    assert validate_edge_coloring(g, good, palette=3).ok
    conflict = validate_edge_coloring(g, {0: 1, 1: 1, 2: 2})
    assert not conflict.ok
    assert "share color 1" in conflict.reason
    assert not validate_edge_coloring(g, {0: 1, 1: 2}).ok
    assert not validate_edge_coloring(g, good, palette=2).ok
    assert not validate_edge_coloring(g, good, lists={0: (1,), 1: (2,), 2: (9,)}).ok


def test_vertex_coloring_validation():
    g = build_graph(3, [(0, 1), (1, 2)])
    assert validate_vertex_coloring(g, [1, 2, 1]).ok
    assert not validate_vertex_coloring(g, [1, 1, 2]).ok
    assert not validate_vertex_coloring(g, [1, 2]).ok
    lists = {0: (1, 2), 1: (2, 3), 2: (1, 3)}
    assert validate_vertex_coloring(g, [1, 2, 3], lists).ok
    assert not validate_vertex_coloring(g, [2, 3, 2], {0: (2,), 1: (3,), 2: (9,)}).ok

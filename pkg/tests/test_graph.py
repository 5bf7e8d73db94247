import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import CYCLE6, K4, PATH5, PETERSEN, SPIDER3, C, A2, B2, D2, to_nx
from corpus import corpus
from extremal_diam.errors import DisconnectedGraphError, GraphInputError
from extremal_diam.graph import (
    UNREACHABLE,
    Graph,
    bfs,
    bfs_tree,
    components_after_removing,
    distance_matrix,
    eccentricity,
    eccentricity_oracle,
    interval_test,
    is_connected,
    multi_source_bfs,
    require_connected,
    shortest_path,
)
from extremal_diam.stats import tracking


@st.composite
def graphs(draw, max_n=14, connected=False):
    n = draw(st.integers(1, max_n))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    if connected:
        chosen = list(set(chosen) | {(i, i + 1) for i in range(n - 1)})
    return Graph(n, chosen)


class TestConstruction:
    def test_rejects_self_loop(self):
        with pytest.raises(GraphInputError):
            Graph(3, [(1, 1)])

    def test_rejects_duplicate_in_either_orientation(self):
        with pytest.raises(GraphInputError):
            Graph(3, [(0, 1), (1, 0)])

    def test_rejects_out_of_range(self):
        with pytest.raises(GraphInputError):
            Graph(2, [(0, 2)])
        with pytest.raises(GraphInputError):
            Graph(-1, [])

    def test_dedupe_option(self):
        g = Graph.from_edges(3, [(0, 1), (1, 0), (1, 2)], dedupe=True)
        assert g.m == 2

    def test_adjacency_sorted_and_symmetric(self):
        g = Graph(5, [(4, 0), (2, 0), (0, 1), (3, 2)])
        assert g.adj[0] == [1, 2, 4]
        for u in range(g.n):
            for v in g.adj[u]:
                assert u in g.adj[v]

    def test_from_adjacency_requires_symmetry(self):
        with pytest.raises(GraphInputError):
            Graph.from_adjacency([[1], []])
        assert Graph.from_adjacency([[1], [0, 2], [1]]) == PATH5.induced_subgraph([0, 1, 2])[0]

    def test_csr_matches_lists(self):
        g = PETERSEN
        for v in range(g.n):
            assert list(g.indices[g.indptr[v]:g.indptr[v + 1]]) == g.adj[v]

    def test_disconnected_graph_is_constructible(self):
        g = Graph(4, [(0, 1), (2, 3)])
        assert not is_connected(g)
        with pytest.raises(DisconnectedGraphError) as err:
            require_connected(g)
        assert {err.value.u, err.value.v} & {2, 3}


class TestBfs:
    def test_path_distances(self):
        assert bfs(PATH5, 0) == [0, 1, 2, 3, 4]

    def test_complete(self):
        assert bfs(K4, 0) == [0, 1, 1, 1]

    def test_petersen_eccentricity_two(self):
        for s in range(10):
            assert max(bfs(PETERSEN, s)) == 2

    def test_out_of_range_source(self):
        with pytest.raises(GraphInputError):
            bfs(PATH5, 5)

    def test_unreachable_sentinel(self):
        g = Graph(3, [(0, 1)])
        assert bfs(g, 0)[2] == UNREACHABLE
        with pytest.raises(DisconnectedGraphError):
            eccentricity(g, 0)

    def test_multi_source(self):
        assert multi_source_bfs(PATH5, [0, 4]) == [0, 1, 2, 1, 0]
        assert multi_source_bfs(CYCLE6, [0]) == bfs(CYCLE6, 0)
        assert multi_source_bfs(SPIDER3, [A2, B2, D2])[C] == 2

    def test_multi_source_empty(self):
        with pytest.raises(GraphInputError):
            multi_source_bfs(PATH5, [])

    def test_bfs_tree_paths_are_shortest(self):
        dist, parent, order = bfs_tree(PETERSEN, 3)
        assert order[0] == 3
        for v in range(10):
            p = shortest_path(parent, v)
            assert p[0] == v and p[-1] == 3 and len(p) == dist[v] + 1
            assert all(PETERSEN.has_edge(a, b) for a, b in zip(p, p[1:]))

    def test_counters(self):
        with tracking() as w:
            bfs(PETERSEN, 0)
            multi_source_bfs(PETERSEN, [0, 1])
        assert w.bfs_runs == 2
        assert w.edges_scanned == 2 * 2 * PETERSEN.m

    def test_agrees_with_reference_on_corpus(self):
        rng = random.Random(5)
        for e in corpus()[::4]:
            g = e.graph
            h = to_nx(g)
            for s in rng.sample(range(g.n), min(3, g.n)):
                ref = nx.single_source_shortest_path_length(h, s)
                assert bfs(g, s) == [ref[v] for v in range(g.n)]

    @settings(max_examples=60, deadline=None)
    @given(graphs(max_n=12, connected=True), st.data())
    def test_triangle_inequality(self, g, data):
        u, v, w = (data.draw(st.integers(0, g.n - 1)) for _ in range(3))
        du, dv = bfs(g, u), bfs(g, v)
        assert du[w] <= du[v] + dv[w]

    @settings(max_examples=60, deadline=None)
    @given(graphs(max_n=12))
    def test_edge_distance_gap(self, g):
        d = bfs(g, 0)
        for a, b in g.edges():
            if d[a] >= 0:
                assert abs(d[a] - d[b]) <= 1


class TestOracle:
    def test_path(self):
        t = eccentricity_oracle(PATH5)
        assert (t.diameter, t.radius, t.center) == (4, 2, [2])

    def test_cycle(self):
        assert eccentricity_oracle(CYCLE6).ecc == [3] * 6

    def test_spider(self):
        t = eccentricity_oracle(SPIDER3)
        assert (t.diameter, t.radius, t.center) == (4, 2, [C])
        a, b = t.pair
        assert bfs(SPIDER3, a)[b] == 4

    def test_disconnected(self):
        with pytest.raises(DisconnectedGraphError):
            eccentricity_oracle(Graph(4, [(0, 1), (2, 3)]))

    def test_matches_networkx(self):
        for e in corpus()[::7]:
            h = to_nx(e.graph)
            ecc = nx.eccentricity(h)
            t = e.oracle
            assert t.ecc == [ecc[v] for v in range(e.graph.n)]
            a, b = t.pair
            assert nx.shortest_path_length(h, a, b) == t.diameter

    def test_distance_matrix(self):
        d = distance_matrix(CYCLE6)
        assert d[0].tolist() == [0, 1, 2, 3, 2, 1]


class TestComponents:
    def test_spider_minus_center_ball(self):
        comps = components_after_removing(SPIDER3, SPIDER3.closed_neighborhood([C]))
        assert sorted(map(sorted, comps)) == [[A2], [B2], [D2]]

    def test_path_minus_middle(self):
        comps = components_after_removing(PATH5, {2})
        assert sorted(map(sorted, comps)) == [[0, 1], [3, 4]]

    def test_cycle_minus_ball(self):
        comps = components_after_removing(CYCLE6, CYCLE6.closed_neighborhood([0]))
        assert [sorted(c) for c in comps] == [[2, 3, 4]]

    def test_nothing_removed(self):
        for e in corpus()[::25]:
            comps = components_after_removing(e.graph, set())
            assert len(comps) == 1 and len(comps[0]) == e.graph.n

    @settings(max_examples=50, deadline=None)
    @given(graphs(max_n=12), st.data())
    def test_matches_networkx(self, g, data):
        removed = set(data.draw(st.lists(st.integers(0, g.n - 1), max_size=g.n)))
        h = to_nx(g)
        h.remove_nodes_from(removed)
        ref = sorted(sorted(c) for c in nx.connected_components(h))
        got = sorted(sorted(c) for c in components_after_removing(g, removed))
        assert got == ref


class TestIntervalTest:
    def test_examples(self):
        assert interval_test(PATH5, 0, 4, 2, bfs(PATH5, 0), bfs(PATH5, 4))
        assert interval_test(CYCLE6, 0, 3, 1, bfs(CYCLE6, 0), bfs(CYCLE6, 3))
        assert not interval_test(CYCLE6, 0, 2, 4, bfs(CYCLE6, 0), bfs(CYCLE6, 2))

    def test_matches_all_shortest_paths(self):
        h = to_nx(PETERSEN)
        for u, v in itertools.combinations(range(10), 2):
            on = set().union(*map(set, nx.all_shortest_paths(h, u, v)))
            du, dv = bfs(PETERSEN, u), bfs(PETERSEN, v)
            assert {w for w in range(10) if interval_test(PETERSEN, u, v, w, du, dv)} == on

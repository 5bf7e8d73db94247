import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import PATH5, SPIDER3, A2, B2, D2
from corpus import dominating_edge_suite
from extremal_diam.domtarget import diameter_dominating_target, greedy_cover
from extremal_diam.errors import GraphInputError
from extremal_diam.extremities import all_extremities_oracle, is_dominating_target
from extremal_diam.generators import (
    gen_dominating_edge,
    gen_gnp_prime,
    gen_interval,
    gen_spider,
    largest_component,
)
from extremal_diam.graph import Graph, eccentricity_oracle
from extremal_diam.modular import quotient_graph
from test_graph import graphs


def small_target(g: Graph, limit: int = 3):
    """A dominating target of size <= limit, or None.

    Tries maximal nonadjacent extremity sets first, then brute force on small graphs.
    """
    ext = all_extremities_oracle(g).extremities
    D: list[int] = []
    for x in ext:
        if all(not g.has_edge(x, y) for y in D):
            D.append(x)
    if len(D) <= limit and is_dominating_target(g, D):
        return D
    if g.n <= 16:
        for size in range(1, limit + 1):
            for cand in itertools.combinations(range(g.n), size):
                if is_dominating_target(g, cand):
                    return list(cand)
    return None


def verified_instances():
    out = []
    for seed in range(12):
        g, _ = largest_component(gen_interval(30 + 10 * seed, 2.5, seed))
        out.append(g)
    for seed in range(12):
        out.append(gen_gnp_prime(10 + seed % 5, 0.4, seed))
    for legs in (3,):
        out.append(gen_spider(legs, 3))
    found = []
    for g in out:
        D = small_target(g)
        if D is not None:
            found.append((g, D))
    return found


class TestExamples:
    def test_spider(self):
        assert is_dominating_target(SPIDER3, {A2, B2, D2})
        r = diameter_dominating_target(SPIDER3, 3)
        assert r.value == 4 and r.verified and not r.promise_violated

    def test_path(self):
        r = diameter_dominating_target(PATH5, 2)
        assert r.value == 4 and not r.promise_violated

    def test_trivial(self):
        assert diameter_dominating_target(Graph(1, [])).value == 0

    def test_bad_hint(self):
        with pytest.raises(GraphInputError):
            diameter_dominating_target(SPIDER3, 0)

    def test_promise_violation(self):
        g = gen_spider(8, 2)
        r = diameter_dominating_target(g, 2)
        assert r.promise_violated and r.stats["rounds"] > 2
        assert r.value == 4 and r.verified
        assert not diameter_dominating_target(g).promise_violated

    def test_dominating_edge_hubs(self):
        g = gen_dominating_edge(50, seed=3)
        assert is_dominating_target(g, {0, 1})


class TestDominatingEdgeSuite:
    def test_matches_oracle(self):
        for e in dominating_edge_suite():
            if e.graph.n > 400:
                continue
            r = diameter_dominating_target(e.graph, 2)
            assert r.value == e.oracle.diameter, e.name
            assert not r.promise_violated and r.stats["rounds"] <= 2
            assert r.stats["cover_size"] <= 2 * 2 * (math.log(e.graph.n) + 1)


@pytest.fixture(scope="module")
def instances():
    found = verified_instances()
    assert len(found) >= 15
    return found


class TestVerifiedTargets:
    def test_matches_oracle(self, instances):
        for g, D in instances:
            k = len(D)
            r = diameter_dominating_target(g, k)
            assert r.value == eccentricity_oracle(g).diameter
            assert r.stats["rounds"] <= k and not r.promise_violated

    def test_cover_size(self, instances):
        for g, D in instances:
            r = diameter_dominating_target(g, len(D))
            assert r.stats["cover_size"] <= 2 * len(D) * (math.log(g.n) + 1)

    def test_rounds_have_disjoint_neighbourhoods(self, instances):
        for g, _ in instances:
            Q = quotient_graph(g).quotient
            r = diameter_dominating_target(g)
            xs = r.stats.get("extremities", [])
            for a, b in itertools.combinations(xs, 2):
                assert not (Q.closed_neighborhood([a]) & Q.closed_neighborhood([b]))


class TestGreedyCover:
    def test_covers_with_disjoint_sides(self):
        g = gen_spider(5, 3)
        paths = {x: g.closed_neighborhood([0, x]) for x in (1, 4)}
        fam = greedy_cover(g, paths)
        covered = set()
        for x in fam.A:
            covered |= paths[x]
        for v in fam.B:
            covered |= g.closed_neighborhood([v])
        assert covered == set(range(g.n))
        assert not set(fam.A) & set(fam.B)

    @settings(max_examples=80, deadline=None)
    @given(graphs(max_n=14, connected=True), st.data())
    def test_random_families(self, g, data):
        keys = data.draw(st.lists(st.integers(0, g.n - 1), unique=True, max_size=4))
        # a path set always contains N[x], since x lies on its own path
        paths = {
            x: set(data.draw(st.lists(st.integers(0, g.n - 1), max_size=g.n)))
            | g.closed_neighborhood([x])
            for x in keys
        }
        fam = greedy_cover(g, paths)
        covered = set()
        for x in fam.A:
            covered |= paths[x]
        for v in fam.B:
            covered |= g.closed_neighborhood([v])
        assert covered == set(range(g.n))
        assert not set(fam.A) & set(fam.B)
        assert len(set(fam.A)) == len(fam.A) and len(set(fam.B)) == len(fam.B)

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import CYCLE6, K13, K4, PATH4, PATH5, PETERSEN, SPIDER3, C, A1, A2, B1, B2, D1, D2
from extremal_diam.errors import ExhaustedError, GraphInputError, OracleCapError
from extremal_diam.generators import gen_gnp_prime, gen_interval, gen_spider, largest_component
from extremal_diam.graph import bfs, components_after_removing
from extremal_diam.extremities import (
    all_extremities_oracle,
    asteroidal_number_oracle,
    first_extremity,
    is_asteroidal_set,
    is_dominating_target,
    is_extremity,
    is_u_transitive_oracle,
    next_extremity,
    separation_table,
    separation_test,
)


def prime_graphs():
    return st.builds(
        lambda n, p, s: gen_gnp_prime(n, p, s),
        st.integers(4, 14),
        st.sampled_from([0.25, 0.35, 0.5, 0.65]),
        st.integers(0, 10_000),
    )


def ball(g, u, r):
    d = bfs(g, u)
    return {v for v in range(g.n) if d[v] <= r}


def random_connected_superset(g, u, size, rng):
    H = {u}
    frontier = set(g.adj[u])
    while len(H) < size and frontier:
        x = rng.choice(sorted(frontier))
        H.add(x)
        frontier |= set(g.adj[x])
        frontier -= H
    return H


def definitional_transitive(g, u, S):
    """Straight from the definition: pairs x in S, y outside S, checked one by one."""
    S = set(S)
    for y in range(g.n):
        if y in S:
            continue
        closed = g.closed_neighborhood([y])
        if u in closed:
            continue
        comps = components_after_removing(g, closed)
        where = {v: i for i, c in enumerate(comps) for v in c}
        for x in S:
            if x not in closed and where[x] != where[u]:
                return False
    return True


def brute_dominating_target(g, D):
    """Every connected vertex set containing D must dominate (n <= 10)."""
    n = g.n
    D = set(D)
    for mask in range(1 << n):
        X = {v for v in range(n) if mask >> v & 1}
        if not D <= X:
            continue
        sub, _ = g.induced_subgraph(X)
        if len(components_after_removing(sub, set())) != 1:
            continue
        if len(g.closed_neighborhood(X)) < n:
            return False
    return True


class TestPredicates:
    def test_is_extremity_examples(self):
        assert is_extremity(PATH4, 0) and is_extremity(PATH4, 3)
        assert not is_extremity(SPIDER3, C)
        assert not is_extremity(K13, 1)

    def test_oracle_examples(self):
        r = all_extremities_oracle(SPIDER3)
        assert (r.extremities, r.alpha, r.alpha_exact) == ([A2, B2, D2], 3, True)
        r = all_extremities_oracle(PATH4)
        assert (r.extremities, r.alpha) == ([0, 1, 2, 3], 2)
        r = all_extremities_oracle(CYCLE6)
        assert (r.extremities, r.alpha, r.q) == (list(range(6)), 3, 6)

    def test_greedy_alpha_flagged(self):
        g = gen_spider(25, 2)
        r = all_extremities_oracle(g)
        assert r.q == 25 and not r.alpha_exact and r.alpha <= r.q
        assert all(not g.has_edge(a, b) for a, b in itertools.combinations(r.independent, 2))

    def test_sparse_path_agrees(self):
        g, _ = largest_component(gen_interval(400, 3.0, 4))
        r = all_extremities_oracle(g)
        assert r.extremities == [v for v in range(g.n) if is_extremity(g, v)]

    def test_separation_examples(self):
        assert separation_test(PATH5, 0, 4, 2)
        assert not separation_test(CYCLE6, 0, 4, 2)
        assert separation_test(SPIDER3, A2, B2, C)
        with pytest.raises(GraphInputError):
            separation_test(PATH5, 0, 1, 3)

    def test_transitivity_examples(self):
        # G - N[4] is the path 0-1-2, so 4 does not separate 2 from 0 and
        # {2} is 0-transitive in the 6-cycle (the definitional check agrees)
        assert is_u_transitive_oracle(CYCLE6, 0, {2})
        assert definitional_transitive(CYCLE6, 0, {2})
        # on a path, 2 separates 4 from 0 but is missing from S
        assert not is_u_transitive_oracle(PATH5, 0, {4})
        assert not definitional_transitive(PATH5, 0, {4})
        assert is_u_transitive_oracle(SPIDER3, C, {C, A1, B1, D1, A2})
        for r in range(5):
            assert is_u_transitive_oracle(PATH5, 2, ball(PATH5, 2, r))

    @settings(max_examples=40, deadline=None)
    @given(prime_graphs(), st.data())
    def test_transitive_sets_from_balls_and_neighbourhoods(self, g, data):
        rng = random.Random(data.draw(st.integers(0, 999)))
        table = separation_table(g)
        u = data.draw(st.integers(0, g.n - 1))
        for r in range(4):
            S = ball(g, u, r)
            assert is_u_transitive_oracle(g, u, S)
            assert is_u_transitive_oracle(g, u, S, table)
        H = random_connected_superset(g, u, rng.randint(1, g.n), rng)
        assert is_u_transitive_oracle(g, u, g.closed_neighborhood(H), table)

    @settings(max_examples=60, deadline=None)
    @given(prime_graphs(), st.data())
    def test_table_and_plain_checks_agree_with_definition(self, g, data):
        table = separation_table(g)
        u = data.draw(st.integers(0, g.n - 1))
        S = set(data.draw(st.lists(st.integers(0, g.n - 1), max_size=g.n)))
        expected = definitional_transitive(g, u, S)
        assert is_u_transitive_oracle(g, u, S) == expected
        assert is_u_transitive_oracle(g, u, S, table) == expected


class TestSearch:
    def test_first_extremity(self):
        assert first_extremity(PATH4, 0) == 3
        assert first_extremity(SPIDER3, C) in {A2, B2, D2}
        assert is_extremity(PETERSEN, first_extremity(PETERSEN, 0))

    def test_next_extremity_examples(self):
        v = next_extremity(SPIDER3, A2, set())
        assert v in {B2, D2} and bfs(SPIDER3, A2)[v] == 4
        assert next_extremity(SPIDER3, C, {C, A1, B1, D1, A2}) in {B2, D2}
        assert next_extremity(PATH5, 2, set()) in {0, 4}

    def test_exhausted(self):
        with pytest.raises(ExhaustedError):
            next_extremity(PATH5, 2, {0, 4})

    @settings(max_examples=80, deadline=None)
    @given(prime_graphs(), st.data())
    def test_output_triple(self, g, data):
        rng = random.Random(data.draw(st.integers(0, 999)))
        u = data.draw(st.integers(0, g.n - 1))
        du = bfs(g, u)
        candidates = [ball(g, u, r) for r in range(max(du))]
        candidates.append(set())
        for _ in range(3):
            H = random_connected_superset(g, u, rng.randint(1, g.n), rng)
            candidates.append(g.closed_neighborhood(H))
        for S in candidates:
            closed_u = g.closed_neighborhood([u])
            if S | closed_u == set(range(g.n)):
                continue
            v = next_extremity(g, u, S)
            assert is_extremity(g, v)
            assert v not in S and v not in closed_u
            assert du[v] == max(du[x] for x in range(g.n) if x not in S)

    def test_non_complete_prime_graphs_have_two_extremities(self):
        for seed in range(40):
            g = gen_gnp_prime(6 + seed % 10, 0.4, seed)
            assert all_extremities_oracle(g).q >= 2


class TestAsteroidal:
    def test_spider(self):
        assert is_asteroidal_set(SPIDER3, {A2, B2, D2})
        assert asteroidal_number_oracle(SPIDER3) == 3

    def test_complete(self):
        assert not is_asteroidal_set(K4, {0, 1})
        assert asteroidal_number_oracle(K4) == 1

    def test_interval_graphs_are_at_free(self):
        for seed in range(8):
            g, _ = largest_component(gen_interval(30, 2.0, seed))
            assert asteroidal_number_oracle(g) <= 2

    def test_cap(self):
        with pytest.raises(OracleCapError):
            asteroidal_number_oracle(gen_spider(40, 2))

    @settings(max_examples=40, deadline=None)
    @given(prime_graphs())
    def test_oracle_matches_brute_force(self, g):
        best = 1
        for k in range(2, g.n + 1):
            if any(is_asteroidal_set(g, A) for A in itertools.combinations(range(g.n), k)):
                best = k
            else:
                break
        assert asteroidal_number_oracle(g) == best


class TestDominatingTarget:
    def test_examples(self):
        assert is_dominating_target(SPIDER3, {A2, B2, D2})
        assert is_dominating_target(PATH5, {0, 4})
        assert not is_dominating_target(CYCLE6, {0})

    def test_empty(self):
        with pytest.raises(GraphInputError):
            is_dominating_target(PATH5, set())

    def test_tri_state_above_cap(self):
        assert is_dominating_target(PATH5, {0}, cap=3) is None
        assert is_dominating_target(PATH5, {0, 4}, cap=3, maximal_extremity_set=True) is True

    @settings(max_examples=60, deadline=None)
    @given(prime_graphs().filter(lambda g: g.n <= 10), st.data())
    def test_matches_subset_enumeration(self, g, data):
        D = set(data.draw(st.lists(st.integers(0, g.n - 1), min_size=1, max_size=3)))
        assert is_dominating_target(g, D) == brute_dominating_target(g, D)

    @settings(max_examples=40, deadline=None)
    @given(prime_graphs())
    def test_maximal_independent_extremities_dominate(self, g):
        r = all_extremities_oracle(g)
        chosen = []
        for x in r.extremities:
            if all(not g.has_edge(x, y) for y in chosen):
                chosen.append(x)
        assert is_dominating_target(g, chosen)

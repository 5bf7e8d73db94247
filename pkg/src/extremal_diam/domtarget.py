"""Diameter for graphs with a small dominating target and bounded degree.

Rounds of extremity search collect whole closed neighbourhoods into a
candidate set ``X`` with one shortest path to the centre per candidate.  A
greedy set cover then picks a few path neighbourhoods ``N[P_x]`` and vertex
neighbourhoods ``N[v]`` that together cover the graph.  The diameter is the
largest of ``l(w)`` over the first vertices of each picked path and of the
eccentricities of every vertex in each picked ``N[v]``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diameter import (
    DiameterResult,
    LocalMax,
    _degenerate_eccentricities,
    _pair_at_ecc,
    exact_cutoff_from_alpha,
    exact_cutoff_from_delta,
    local_max_ecc,
)
from .errors import GraphInputError
from .extremities import next_extremity
from .graph import Graph, bfs, bfs_tree, require_connected, shortest_path
from .lexbfs import double_sweep, lexbfs
from .modular import quotient_graph
from .stats import tracking


@dataclass
class _Paths:
    """Duck-typed path system for :func:`delta_star`."""

    c: int
    paths: list[list[int]]

    @property
    def t(self) -> int:
        return len(self.paths)


@dataclass
class CoverFamily:
    candidates: list[int]
    path_sets: dict[int, set[int]]
    A: list[int]
    B: list[int]

    @property
    def size(self) -> int:
        return len(self.A) + len(self.B)


def greedy_cover(g: Graph, path_sets: dict[int, set[int]]) -> CoverFamily:
    """Greedy cover of ``V`` by path neighbourhoods and vertex neighbourhoods.

    Each step takes the set covering the most uncovered vertices.  Vertex
    neighbourhoods are scored through per-vertex counters of uncovered
    neighbours, updated whenever a vertex gets covered.  Ties favour path
    sets, then smaller ids.
    """
    n = g.n
    adj = g.adj
    uncovered = bytearray(b"\x01") * n
    left = n
    unc = [len(adj[v]) + 1 for v in range(n)]
    A: list[int] = []
    B: list[int] = []
    chosen_v: set[int] = set()
    pool = dict(path_sets)

    def cover(members) -> None:
        nonlocal left
        for w in members:
            if uncovered[w]:
                uncovered[w] = 0
                left -= 1
                unc[w] -= 1
                for z in adj[w]:
                    unc[z] -= 1

    while left:
        best_x, best_px = None, 0
        for x, s in pool.items():
            k = sum(1 for w in s if uncovered[w])
            if k > best_px or (k == best_px and best_x is not None and x < best_x):
                best_x, best_px = x, k
        best_v = max(range(n), key=lambda v: (unc[v], -v))
        if best_x is not None and best_px >= unc[best_v]:
            A.append(best_x)
            cover(pool.pop(best_x))
        else:
            B.append(best_v)
            chosen_v.add(best_v)
            cover(adj[best_v] + [best_v])
    inA = set(A)
    B = [v for v in B if v not in inA]
    return CoverFamily(list(path_sets), path_sets, A, B)


def diameter_dominating_target_prime(
    g: Graph, k_hint: int | None = None
) -> DiameterResult:
    """Diameter of a prime graph with n >= 3 and a small dominating target."""
    if k_hint is not None and k_hint < 1:
        raise GraphInputError(f"k must be positive, got {k_hint}")
    n = g.n
    with tracking() as work:
        _, _, c = double_sweep(g)
        dist_c, parent, _ = bfs_tree(g, c)
        order_c = lexbfs(g, c)
        H = {c}
        NH = g.closed_neighborhood(H)
        X: list[int] = []
        in_x: set[int] = set()
        paths: dict[int, list[int]] = {}
        rounds: list[int] = []
        while len(NH) < n:
            x = next_extremity(g, c, NH, order_c)
            rounds.append(x)
            for y in g.adj[x] + [x]:
                if y in in_x:
                    continue
                in_x.add(y)
                X.append(y)
                p = shortest_path(parent, y)
                paths[y] = p
                for z in p:
                    if z not in H:
                        H.add(z)
                        NH.add(z)
                        NH.update(g.adj[z])
        if not X:
            # N[c] is everything: c is universal, impossible for prime n >= 3
            X = [c]
            paths[c] = [c]
        path_sets = {x: g.closed_neighborhood(p) for x, p in paths.items()}
        fam = greedy_cover(g, path_sets)
        if k_hint is not None:
            cutoff = max(1, exact_cutoff_from_alpha(k_hint))
            ds_value = None
        else:
            from .hyperbolicity import delta_star

            ds_value = delta_star(g, _Paths(c, [paths[x] for x in X])).value
            cutoff = exact_cutoff_from_delta(ds_value)
        best_val, best_pair = -1, (c, c)
        memo: dict[int, LocalMax] = {}
        for x in fam.A:
            p = paths[x]
            for w in p[: min(dist_c[x] + 1, cutoff)]:
                if w in memo:
                    continue
                lm = local_max_ecc(g, w)
                memo[w] = lm
                if lm.value > best_val:
                    best_val, best_pair = lm.value, (lm.witness, lm.far)
        ecc_done: set[int] = set()
        for v in fam.B:
            for w in g.adj[v] + [v]:
                if w in ecc_done:
                    continue
                ecc_done.add(w)
                d = bfs(g, w)
                e = max(d)
                if e > best_val:
                    best_val, best_pair = e, (w, d.index(e))
    stats = work.as_dict()
    stats.update(
        center=c,
        rounds=len(rounds),
        extremities=rounds,
        candidates=len(X),
        cover_size=fam.size,
        A=len(fam.A),
        B=len(fam.B),
        cutoff=cutoff,
        mode="k" if k_hint is not None else "oblivious",
        local_calls=len(memo),
        direct_bfs=len(ecc_done),
    )
    if ds_value is not None:
        stats["delta_star"] = ds_value
    res = DiameterResult(best_val, best_pair, stats)
    res.promise_violated = k_hint is not None and len(rounds) > k_hint
    return res


def diameter_dominating_target(g: Graph, k_hint: int | None = None) -> DiameterResult:
    """Diameter of a connected graph promised to have a dominating target of size ``<= k_hint``.

    The graph is reduced to its quotient first.  If the number of rounds
    exceeds ``k_hint`` the result carries ``promise_violated`` and is only
    backed by the certificate check.
    """
    require_connected(g)
    if g.n == 1:
        return DiameterResult(0, (0, 0), {"mode": "trivial"}, True)
    q = quotient_graph(g)
    Q = q.quotient
    if Q.n < 3 or q.complement_disconnected:
        ecc = _degenerate_eccentricities(g, q)
        res = DiameterResult(max(ecc), _pair_at_ecc(g, ecc), {"mode": "degenerate"})
    else:
        res = diameter_dominating_target_prime(Q, k_hint)
        a, b = res.certificate
        res.certificate = (q.representative[a], q.representative[b])
    res.stats.update(n=g.n, m=g.m, quotient_n=Q.n)
    a, b = res.certificate
    res.verified = bfs(g, a)[b] == res.value
    return res

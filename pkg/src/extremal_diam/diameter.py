"""Diameter and eccentricity estimates from a few shortest paths.

The engine works on a prime graph with at least three vertices:

* :func:`build_dominating_path_system` grows shortest paths from an
  almost-central vertex ``c`` to extremities until their union dominates
  the graph.
* :func:`approx_all_eccentricities` runs a BFS from the first few vertices
  of every path and reports, for each vertex, the largest distance seen.
  This is never above ``e(v)`` and at most one below it.
* :func:`local_max_ecc` computes ``l(u) = max e(x)`` over ``x`` in ``N[u]``
  by visiting extremities far from ``u`` and discarding vertices that
  provably cannot realise ``e(u) + 1``.
* :func:`exact_diameter` takes the maximum of ``l`` over the first few
  vertices of every path.

"A few" is a cutoff that grows with the hyperbolicity of the graph.  It is
either derived from a caller-supplied ``alpha`` or from the layering
estimate in :mod:`extremal_diam.hyperbolicity`.

Public entry points that accept an arbitrary connected graph reduce it to
its quotient first and lift the answer back.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ContractError, GraphInputError, NotPrimeError
from .graph import Graph, bfs, bfs_tree, multi_source_bfs, require_connected, shortest_path
from .lexbfs import LexOrder, double_sweep, lexbfs
from .extremities import next_extremity
from .modular import QuotientGraph, is_prime, lift_eccentricities, quotient_graph
from .stats import WorkStats, tracking


def approx_cutoff_from_alpha(alpha: int) -> int:
    return 66 * alpha - 19


def exact_cutoff_from_alpha(alpha: int) -> int:
    return 42 * alpha - 11


def approx_cutoff_from_delta(delta_bound: int) -> int:
    return 22 * delta_bound + 3


def exact_cutoff_from_delta(delta_bound: int) -> int:
    return 14 * delta_bound + 3


@dataclass
class DominatingPathSystem:
    """Shortest paths from ``c`` to extremities whose union dominates ``g``.

    ``paths[i]`` starts at ``extremities[i]`` and ends at ``c``.
    """

    c: int
    extremities: list[int]
    paths: list[list[int]]
    H: set[int]
    dist_c: list[int] = field(repr=False)
    order_c: LexOrder | None = field(default=None, repr=False)

    @property
    def t(self) -> int:
        return len(self.paths)

    def head(self, i: int, cutoff: int) -> list[int]:
        """The ``min(|P_i|, cutoff)`` vertices of ``P_i`` closest to ``x_i``."""
        return self.paths[i][: max(0, min(len(self.paths[i]), cutoff))]


def build_dominating_path_system(g: Graph, check_prime: bool = True) -> DominatingPathSystem:
    """Double sweep for ``c``, then extremities outside ``N[H]`` until ``H`` dominates.

    Raises :class:`NotPrimeError` on non-prime input unless ``check_prime``
    is off (callers that already hold a quotient skip the test).
    """
    if g.n < 3:
        raise ContractError("a dominating path system needs at least three vertices")
    if check_prime:
        prime, module = is_prime(g)
        if not prime:
            raise NotPrimeError(module)
    x1, x2, c = double_sweep(g)
    dist_c, parent_c, _ = bfs_tree(g, c)
    order_c = lexbfs(g, c)
    xs = [x1, x2] if x2 != x1 else [x1]
    paths = [shortest_path(parent_c, x) for x in xs]
    H: set[int] = set()
    for p in paths:
        H.update(p)
    NH = g.closed_neighborhood(H)
    while len(NH) < g.n:
        x = next_extremity(g, c, NH, order_c)
        p = shortest_path(parent_c, x)
        xs.append(x)
        paths.append(p)
        for y in p:
            if y not in H:
                H.add(y)
                NH.add(y)
                NH.update(g.adj[y])
    return DominatingPathSystem(c, xs, paths, H, dist_c, order_c)


def _far_set(du: list[int]) -> tuple[int, list[int]]:
    e = max(du)
    return e, [v for v, d in enumerate(du) if d == e]


def build_clean_set(
    g: Graph,
    u: int,
    v: int,
    du: list[int] | None = None,
    tree_v: tuple[list[int], list[int]] | None = None,
) -> set[int]:
    """A ``u``-transitive set ``Y`` containing ``v`` that stays close to the far side of ``N[u]``.

    With ``X`` the vertices of ``N[u]`` at distance ``e(u)`` from ``v``,
    every ``y`` in ``Y`` satisfies ``d(y, x) <= d(v, x)`` for ``x`` in ``X``.
    ``Y`` is the union of ``V - F(u)`` and those vertices of ``F(u)`` that
    see all of ``N(v) & I(u, v)`` and touch the second edge of every
    BFS-tree path from ``v`` to ``X``.

    ``du`` (distances from u) and ``tree_v`` (distances and BFS parents from
    v) may be passed in to avoid recomputing them.
    """
    if du is None:
        du = bfs(g, u)
    e = max(du)
    if du[v] != e:
        raise ContractError(f"vertex {v} is not at maximum distance from {u}")
    if g.has_edge(u, v):
        return {v}
    if tree_v is None:
        dv, parent = bfs_tree(g, v)[:2]
    else:
        dv, parent = tree_v
    n = g.n
    adj = g.adj
    Y = {y for y in range(n) if du[y] < e}
    X = [x for x in g.adj[u] + [u] if dv[x] == e]
    # second edge p_x q_x of each tree path from v to x
    P_of_q: dict[int, int] = {}
    for x in X:
        q = x
        while dv[q] > 2:
            q = parent[q]
        P_of_q[q] = parent[q]
    B = [p for p in adj[v] if du[p] == e - 1]
    cnt_b = [0] * n
    for p in B:
        for z in adj[p]:
            cnt_b[z] += 1
    nb = len(B)
    Z = [z for z in range(n) if du[z] == e and cnt_b[z] == nb]
    # only edges whose p lies outside I(u, v) can be missed by members of Z
    Q_size: dict[int, int] = {}
    for q, p in P_of_q.items():
        if du[p] != e - 1:
            Q_size[p] = Q_size.get(p, 0) + 1
    need = len(Q_size)
    for z in Z:
        if need:
            seen_p = set()
            hits: dict[int, int] = {}
            for y in adj[z] + [z]:
                if y in Q_size:
                    seen_p.add(y)
                p = P_of_q.get(y)
                if p is not None and p in Q_size:
                    hits[p] = hits.get(p, 0) + 1
            for p, h in hits.items():
                if h == Q_size[p]:
                    seen_p.add(p)
            if len(seen_p) < need:
                continue
        Y.add(z)
    return Y


def build_discard_set(
    g: Graph,
    u: int,
    v: int,
    du: list[int] | None = None,
    tree_v: tuple[list[int], list[int]] | None = None,
) -> set[int]:
    """A ``u``-transitive set ``S'`` containing ``v`` whose members are within ``e(u)`` of all of ``N[u]``.

    Requires ``v`` in ``F(u)`` and ``d(v, x) <= e(u)`` for every ``x`` in
    ``N[u]``.  Starting from the clean set, a vertex ``y`` is kept when it
    is within ``e(u) - 2`` of ``X'`` (the part of ``N[u]`` at distance
    ``e(u) - 1`` from ``v``), dropped when it is ``e(u)`` or more away, and
    at distance exactly ``e(u) - 1`` kept only if it sees every neighbour
    of ``v`` on a shortest path towards ``X'``.
    """
    if du is None:
        du = bfs(g, u)
    e = max(du)
    if e <= 1:
        raise ContractError(f"vertex {u} is universal; the discard set is undefined")
    if du[v] != e:
        raise ContractError(f"vertex {v} is not at maximum distance from {u}")
    if tree_v is None:
        dv, parent = bfs_tree(g, v)[:2]
        tree_v = (dv, parent)
    dv = tree_v[0]
    closed_u = g.adj[u] + [u]
    if any(dv[x] > e for x in closed_u):
        raise ContractError(f"a neighbour of {u} is at distance {e + 1} from {v}")
    Y = build_clean_set(g, u, v, du, tree_v)
    Xp = [x for x in closed_u if dv[x] == e - 1]
    if not Xp:
        # all of N[u] is at distance e(u) from v and Y already bounds those distances
        return Y
    dx = multi_source_bfs(g, Xp)
    W = [w for w in g.adj[v] if dx[w] == e - 2]
    cnt_w: dict[int, int] = {}
    for w in W:
        for y in g.adj[w]:
            cnt_w[y] = cnt_w.get(y, 0) + 1
    nw = len(W)
    out = set()
    for y in Y:
        d = dx[y]
        if d <= e - 2 or (d == e - 1 and cnt_w.get(y, 0) == nw):
            out.add(y)
    return out


@dataclass
class LocalMax:
    value: int
    witness: int
    far: int
    ecc_u: int
    iterations: int
    extremities: list[int]


def local_max_ecc(
    g: Graph, u: int, order_u: LexOrder | None = None, du: list[int] | None = None
) -> LocalMax:
    """``l(u) = max e(x)`` over ``x`` in ``N[u]``, for a prime graph with n >= 3.

    Visits extremities ``v_0, v_1, ...`` of ``F(u)``: ``v_0`` ends a
    LexBFS(u) and each later one comes from :func:`next_extremity` outside
    the growing discard set.  Stops as soon as some neighbour of ``u`` is
    at distance ``e(u) + 1`` from the current extremity, or once every
    vertex of ``F(u)`` has been discarded.
    """
    if du is None:
        du = bfs(g, u)
    e, F = _far_set(du)
    if e <= 1:
        raise ContractError(f"vertex {u} is universal; the graph is not prime")
    if order_u is None:
        order_u = lexbfs(g, u)
    far_members = set(F)
    S: set[int] = set()
    covered = 0
    v = order_u.last
    seen = []
    nbrs = g.adj[u]
    while True:
        seen.append(v)
        dv, parent, _ = bfs_tree(g, v)
        for x in nbrs:
            if dv[x] == e + 1:
                return LocalMax(e + 1, x, v, e, len(seen), seen)
        fresh = build_discard_set(g, u, v, du, (dv, parent)) - S
        S |= fresh
        covered += sum(1 for y in fresh if y in far_members)
        if covered == len(far_members):
            return LocalMax(e, u, seen[0], e, len(seen), seen)
        v = next_extremity(g, u, S, order_u)


@dataclass
class DiameterResult:
    value: int
    certificate: tuple[int, int]
    stats: dict = field(default_factory=dict)
    verified: bool | None = None
    promise_violated: bool = False

    def as_dict(self) -> dict:
        return {
            "value": self.value,
            "certificate": list(self.certificate),
            "stats": self.stats,
            "verified": self.verified,
            "promise_violated": self.promise_violated,
        }


def _resolve_cutoff(
    g: Graph,
    system: DominatingPathSystem,
    alpha: int | None,
    cutoff: int | None,
    from_alpha,
    from_delta,
) -> tuple[int, dict]:
    info: dict = {}
    if cutoff is not None:
        if cutoff < 1:
            raise GraphInputError(f"cutoff must be positive, got {cutoff}")
        info["mode"] = "explicit"
        return cutoff, info
    if alpha is not None:
        if alpha < 1:
            raise GraphInputError(f"alpha must be positive, got {alpha}")
        info["mode"] = "alpha"
        info["alpha"] = alpha
        return max(1, from_alpha(alpha)), info
    from .hyperbolicity import delta_star

    ds = delta_star(g, system)
    info["mode"] = "oblivious"
    info["delta_star"] = ds.value
    return from_delta(ds.value), info


def approx_all_eccentricities(
    g: Graph,
    cutoff: int | None = None,
    alpha: int | None = None,
    system: DominatingPathSystem | None = None,
    check_prime: bool = True,
) -> list[int]:
    """Estimates ``e(v) - 1 <= est(v) <= e(v)`` on a prime graph with n >= 3."""
    if system is None:
        system = build_dominating_path_system(g, check_prime)
    k, _ = _resolve_cutoff(g, system, alpha, cutoff, approx_cutoff_from_alpha, approx_cutoff_from_delta)
    sources = []
    seen = set()
    for i in range(system.t):
        for x in system.head(i, k):
            if x not in seen:
                seen.add(x)
                sources.append(x)
    est = np.zeros(g.n, dtype=np.int64)
    for x in sources:
        np.maximum(est, np.asarray(bfs(g, x), dtype=np.int64), out=est)
    return [int(a) for a in est]


def _degenerate_eccentricities(g: Graph, q: QuotientGraph) -> list[int]:
    """Eccentricities when the quotient has fewer than 3 nodes or is complete."""
    k = q.quotient.n
    qecc = [0] * k if k == 1 else [1] * k
    return lift_eccentricities(q, qecc, g)


def _pair_at_ecc(g: Graph, ecc: list[int]) -> tuple[int, int]:
    v = max(range(g.n), key=lambda x: (ecc[x], -x))
    d = bfs(g, v)
    return v, max(range(g.n), key=lambda x: (d[x], -x))


def approx_eccentricities(g: Graph, alpha: int | None = None, cutoff: int | None = None) -> list[int]:
    """Eccentricity estimates within one of the truth for any connected graph."""
    require_connected(g)
    if g.n == 1:
        return [0]
    q = quotient_graph(g)
    Q = q.quotient
    if Q.n < 3 or q.complement_disconnected:
        return _degenerate_eccentricities(g, q)
    est_q = approx_all_eccentricities(Q, cutoff=cutoff, alpha=alpha, check_prime=False)
    return lift_eccentricities(q, est_q, g)


def exact_diameter_prime(
    g: Graph,
    cutoff: int | None = None,
    alpha: int | None = None,
    check_prime: bool = True,
) -> DiameterResult:
    """Exact diameter of a prime graph with n >= 3 (no quotient step)."""
    if check_prime and g.n >= 3:
        prime, module = is_prime(g)
        if not prime:
            raise NotPrimeError(module)
    with tracking() as work:
        system = build_dominating_path_system(g, check_prime=False)
        k, info = _resolve_cutoff(g, system, alpha, cutoff, exact_cutoff_from_alpha, exact_cutoff_from_delta)
        best = None
        memo: dict[int, LocalMax] = {}
        visited_ext: set[int] = set()
        for i in range(system.t):
            for u in system.head(i, k):
                if u in memo:
                    continue
                lm = local_max_ecc(g, u)
                memo[u] = lm
                visited_ext.update(lm.extremities)
                if best is None or lm.value > best.value:
                    best = lm
    stats = _stats_dict(work)
    stats.update(info)
    stats.update(
        cutoff=k,
        t=system.t,
        center=system.c,
        path_lengths=[len(p) for p in system.paths],
        local_calls=len(memo),
        extremities_visited=len(visited_ext),
        max_iterations=max(lm.iterations for lm in memo.values()),
    )
    return DiameterResult(best.value, (best.witness, best.far), stats)


def _stats_dict(work: WorkStats) -> dict:
    return work.as_dict()


def exact_diameter(
    g: Graph,
    alpha: int | None = None,
    cutoff: int | None = None,
    verify_certificate: bool = True,
) -> DiameterResult:
    """Exact diameter of a connected graph.

    The graph is reduced to its quotient over maximal strong modules.  A
    quotient with fewer than three nodes, or a disconnected complement,
    means diameter at most 2 and is settled directly.  Otherwise the
    quotient is prime and its diameter equals that of ``g``.
    """
    require_connected(g)
    n = g.n
    if n == 1:
        return DiameterResult(0, (0, 0), {"mode": "trivial"}, True)
    q = quotient_graph(g)
    Q = q.quotient
    base = {"n": n, "m": g.m, "quotient_n": Q.n, "quotient_m": Q.m}
    if Q.n < 3 or q.complement_disconnected:
        ecc = _degenerate_eccentricities(g, q)
        a, b = _pair_at_ecc(g, ecc)
        base["mode"] = "degenerate"
        res = DiameterResult(max(ecc), (a, b), base)
    else:
        res = exact_diameter_prime(Q, cutoff=cutoff, alpha=alpha, check_prime=False)
        x, y = res.certificate
        res.certificate = (q.representative[x], q.representative[y])
        res.stats = {**base, **res.stats}
    if verify_certificate:
        a, b = res.certificate
        res.verified = bfs(g, a)[b] == res.value
    return res

"""Diameter of chordal graphs.

Two routes, chosen by the radius of the (prime) quotient:

* radius at least 3: grow ``H`` from a central vertex by adding, for each
  new extremity ``x`` outside ``N[H]``, a shortest path to ``x`` and all of
  ``N(x)``.  When the diameter is at least 4 one of those extremities has
  maximum eccentricity (:func:`diameter_chordal_domtarget`).
* radius 2: the last vertex ``x1`` of LexBFS from the centre settles the
  answer unless ``e(x1) = 2``.  Then ``C = N(x1)`` is a dominating clique,
  the diameter is 2 or 3, and candidates in ``S = V - N[x1]`` are pruned
  with an L-ordering and a neighbourhood-domination relation until only a
  few BFS runs remain.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .diameter import DiameterResult, _degenerate_eccentricities, _pair_at_ecc
from .errors import ContractError, NotChordalError
from .extremities import next_extremity
from .graph import Graph, bfs, bfs_tree, eccentricity_oracle, require_connected, shortest_path
from .lexbfs import double_sweep, is_simplicial, lexbfs, recognize_chordal
from .modular import quotient_graph
from .partition import VertexPartition
from .stats import tracking

# fallback statistics for the central-vertex heuristic (process-wide)
CENTER_STATS = {"calls": 0, "fallbacks": 0}


def require_chordal(g: Graph) -> list[int]:
    ok, peo = recognize_chordal(g)
    if not ok:
        raise NotChordalError("graph is not chordal")
    return peo


def chordal_central_vertex(g: Graph, check: bool = True) -> tuple[int, int, bool]:
    """A vertex of minimum eccentricity in a connected chordal graph.

    Returns ``(c, e(c), used_fallback)``.  The heuristic evaluates every
    vertex on a shortest path between the ends of a double sweep and keeps
    the best one.  It is accepted when its eccentricity meets the lower
    bound ``ceil(max_e / 2)`` on the radius, where ``max_e`` is the largest
    eccentricity seen; otherwise the exact centre is computed.
    """
    if check:
        require_chordal(g)
    require_connected(g)
    CENTER_STATS["calls"] += 1
    if g.n <= 2:
        return 0, (0 if g.n == 1 else 1), False
    x1, x2, _ = double_sweep(g)
    dist, parent, _ = bfs_tree(g, x1)
    path = shortest_path(parent, x2)
    best_c, best_e, top = -1, g.n, 0
    mid = len(path) // 2
    # walk outward from the middle so the usual winner is found first
    order = sorted(range(len(path)), key=lambda i: (abs(i - mid), i))
    for i in order:
        v = path[i]
        e = max(bfs(g, v))
        top = max(top, e)
        if e < best_e:
            best_c, best_e = v, e
        if best_e == (top + 1) // 2:
            return best_c, best_e, False
    CENTER_STATS["fallbacks"] += 1
    table = eccentricity_oracle(g)
    return table.center[0], table.radius, True


def diameter_chordal_domtarget(g: Graph, fallback: bool = True) -> DiameterResult:
    """Diameter of a chordal graph from extremities grown around a central vertex.

    Exact when the diameter is at least 4.  A smaller value marks the
    result ``promise_violated``; with ``fallback`` the value is then replaced
    by the exact one from the all-pairs oracle.
    """
    require_chordal(g)
    require_connected(g)
    if g.n == 1:
        return DiameterResult(0, (0, 0), {"branch": "trivial"}, True)
    q = quotient_graph(g)
    Q = q.quotient
    if Q.n < 3 or q.complement_disconnected:
        ecc = _degenerate_eccentricities(g, q)
        res = DiameterResult(max(ecc), _pair_at_ecc(g, ecc), {"branch": "degenerate"})
        res.promise_violated = res.value < 4
        res.verified = True
        return res
    with tracking() as work:
        c, rad, fb = chordal_central_vertex(Q, check=False)
        value, (a, b), xs = _grow_extremities(Q, c)
    stats = {"branch": "domtarget", "center": c, "radius": rad, "center_fallback": fb, "t": len(xs)}
    stats.update(work.as_dict())
    res = DiameterResult(value, (q.representative[a], q.representative[b]), stats)
    if value < 4:
        res.promise_violated = True
        if fallback:
            table = eccentricity_oracle(g)
            res.value = table.diameter
            res.certificate = table.pair
            stats["fallback"] = "oracle"
    res.verified = bfs(g, res.certificate[0])[res.certificate[1]] == res.value
    return res


def _grow_extremities(g: Graph, c: int) -> tuple[int, tuple[int, int], list[int]]:
    n = g.n
    _, parent, _ = bfs_tree(g, c)
    order_c = lexbfs(g, c)
    H = {c}
    NH = g.closed_neighborhood(H)
    xs: list[int] = []
    best = (-1, (c, c))
    while len(NH) < n:
        x = next_extremity(g, c, NH, order_c)
        xs.append(x)
        for y in shortest_path(parent, x) + g.adj[x]:
            if y not in H:
                H.add(y)
                NH.add(y)
                NH.update(g.adj[y])
        d = bfs(g, x)
        e = max(d)
        if e > best[0]:
            best = (e, (x, d.index(e)))
    return best[0], best[1], xs


@dataclass
class LOrdering:
    """Vertices of ``S = V - N[x1]`` sorted by non-decreasing L-value."""

    x1: int
    C: list[int]
    S: list[int]
    ell: dict[int, int]
    order: list[int]
    pos: dict[int, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.pos = {v: i for i, v in enumerate(self.order)}

    def label(self, g: Graph, v: int) -> tuple[int, ...]:
        """``L(v)``: ``l(v)`` followed by the ``l`` values of ``N(v) & S`` in non-increasing order."""
        ell = self.ell
        nb = sorted((ell[y] for y in g.adj[v] if y in ell), reverse=True)
        return (ell[v], *nb)


def build_l_ordering(g: Graph, x1: int) -> LOrdering:
    """L-ordering of ``S`` by partition refinement in linear time.

    Groups start in increasing ``l``.  Then, for each ``l``-class ``S_i``
    from the largest ``l`` down, every group is split into the members with
    no neighbour in ``S_i`` followed by those with exactly 1, 2, ...
    neighbours there.  Ties inside a final group go by vertex id.
    """
    if not is_simplicial(g, x1):
        raise ContractError(f"vertex {x1} is not simplicial")
    dist = bfs(g, x1)
    if max(dist) != 2:
        raise ContractError(f"vertex {x1} must have eccentricity 2, has {max(dist)}")
    C = list(g.adj[x1])
    in_c = set(C)
    S = [v for v in range(g.n) if dist[v] == 2]
    ell: dict[int, int] = {v: sum(1 for y in g.adj[v] if y in in_c) for v in S}
    by_ell: dict[int, list[int]] = {}
    for v in S:
        by_ell.setdefault(ell[v], []).append(v)
    levels = sorted(by_ell)
    part = VertexPartition(by_ell[k] for k in levels)
    for k in reversed(levels):
        counts: dict[int, int] = {}
        for s in by_ell[k]:
            for y in g.adj[s]:
                if y in ell:
                    counts[y] = counts.get(y, 0) + 1
        part.split(counts)
    return LOrdering(x1, C, S, ell, part.order())


def reduce_to_independent(g: Graph, lo: LOrdering) -> list[int]:
    """Scan the L-ordering and drop every vertex that has an earlier neighbour in ``S``.

    Every vertex discards its later neighbours, so what remains is an
    independent set.  Each dropped vertex has an earlier neighbour of at
    least its eccentricity, so the maximum over ``S`` is preserved.
    """
    pos = lo.pos
    keep = []
    for v in lo.order:
        pv = pos[v]
        if not any(pos.get(y, pv) < pv for y in g.adj[v]):
            keep.append(v)
    return keep


def prec_n_definitional(g: Graph, lo: LOrdering, u: int, v: int) -> bool:
    """``u <_N v``: each ``y`` in ``N[u] & S`` outside ``N(v)`` has ``N(y) & C`` inside ``N(v)``."""
    sets = g.adj_sets
    nv = sets[v]
    in_c = set(lo.C)
    for y in list(g.adj[u]) + [u]:
        if y not in lo.ell or y in nv:
            continue
        for z in g.adj[y]:
            if z in in_c and z not in nv:
                return False
    return True


class PrecNCounters:
    """Counter-based test of ``u <_N v`` for all ``v`` in ``S*`` at once, in O(m)."""

    def __init__(self, g: Graph, lo: LOrdering, sstar: list[int]):
        self.g = g
        self.lo = lo
        self.in_sstar = set(sstar)
        self.in_c = set(lo.C)

    def dominated_by(self, u: int, candidates: list[int] | None = None) -> set[int]:
        g, ell, in_c, in_sstar = self.g, self.lo.ell, self.in_c, self.in_sstar
        gamma: dict[int, int] = {}
        target = 0
        for y in g.adj[u] + [u]:
            if y not in ell:
                continue
            ly = ell[y]
            target += ly
            for z in g.adj[y]:
                if z in in_c:
                    gamma[z] = gamma.get(z, 0) + 1
                elif y != u and z != u and z in in_sstar and ell[z] < ly:
                    gamma[z] = gamma.get(z, 0) + ly - ell[z]
        out = set()
        pool = candidates if candidates is not None else self.in_sstar
        for v in pool:
            if v == u:
                continue
            total = gamma.get(v, 0)
            for z in g.adj[v]:
                if z in in_c:
                    total += gamma.get(z, 0)
            if total == target:
                out.add(v)
        return out


def prec_n_filter(g: Graph, lo: LOrdering, sstar: list[int]) -> tuple[list[int], list[int]]:
    """Prune ``S*`` with ``<_N``.

    Scans ``S*`` in L-order; each vertex not yet discarded is processed and
    discards every later vertex it dominates.  Returns ``(A, survivors)``
    where ``A`` lists the processed vertices (they are also the survivors).
    """
    order = sorted(sstar, key=lo.pos.__getitem__)
    counters = PrecNCounters(g, lo, order)
    discarded: set[int] = set()
    A = []
    for i, x in enumerate(order):
        if x in discarded:
            continue
        A.append(x)
        later = [v for v in order[i + 1:] if v not in discarded]
        if later:
            discarded |= counters.dominated_by(x, later)
    survivors = [v for v in order if v not in discarded]
    return A, survivors


def diameter_chordal(g: Graph) -> DiameterResult:
    """Exact diameter of a connected chordal graph.

    Raises :class:`NotChordalError` on non-chordal input.  ``stats["branch"]``
    names the route taken: ``trivial``, ``degenerate``, ``rad>=3``,
    ``ecc4``, ``ecc3`` or ``l-ordering``.
    """
    require_chordal(g)
    require_connected(g)
    if g.n == 1:
        return DiameterResult(0, (0, 0), {"branch": "trivial"}, True)
    q = quotient_graph(g)
    Q = q.quotient
    if Q.n < 3 or q.complement_disconnected:
        ecc = _degenerate_eccentricities(g, q)
        return DiameterResult(max(ecc), _pair_at_ecc(g, ecc), {"branch": "degenerate"}, True)
    stats: dict = {}
    with tracking() as work:
        c, rad, fb = chordal_central_vertex(Q, check=False)
        stats.update(center=c, radius=rad, center_fallback=fb)
        if rad >= 3:
            value, (a, b), xs = _grow_extremities(Q, c)
            stats.update(branch="rad>=3", t=len(xs))
        else:
            x1 = lexbfs(Q, c).last
            d1 = bfs(Q, x1)
            e1 = max(d1)
            if e1 >= 3:
                value, (a, b) = e1, (x1, d1.index(e1))
                stats["branch"] = f"ecc{e1}"
            else:
                lo = build_l_ordering(Q, x1)
                sstar = reduce_to_independent(Q, lo)
                A, survivors = prec_n_filter(Q, lo, sstar)
                value, (a, b) = 2, (x1, d1.index(2))
                for v in survivors:
                    dv = bfs(Q, v)
                    ev = max(dv)
                    if ev > value:
                        value, (a, b) = ev, (v, dv.index(ev))
                stats.update(branch="l-ordering", s_size=len(lo.S), sstar_size=len(sstar), processed=len(A))
    stats.update(work.as_dict())
    res = DiameterResult(value, (q.representative[a], q.representative[b]), stats)
    res.verified = bfs(g, res.certificate[0])[res.certificate[1]] == res.value
    return res

"""Extremities: predicates, the O(nm) enumeration, and constrained search.

A vertex is an extremity when deleting its closed neighbourhood leaves at
most one connected component.  The search routines here find extremities
without enumerating all of them: the last vertex of any LexBFS on a prime
graph is one, and :func:`next_extremity` finds one outside a given
``u``-transitive set, as far from ``u`` as possible.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field

from .errors import ExhaustedError, GraphInputError, NotPrimeError, OracleCapError
from .graph import Graph, component_index_after_removing, require_connected
from .lexbfs import LexOrder, lexbfs
from .partition import VertexPartition


@dataclass
class ExtremityReport:
    extremities: list[int]
    alpha: int
    alpha_exact: bool
    independent: list[int] = field(default_factory=list)

    @property
    def q(self) -> int:
        return len(self.extremities)


def is_extremity(g: Graph, v: int) -> bool:
    comp = component_index_after_removing(g, g.closed_neighborhood((v,)))
    return max(comp, default=-1) <= 0


def max_independent_subset(g: Graph, vertices: list[int]) -> list[int]:
    """Exact maximum independent set of the induced subgraph (small inputs)."""
    vs = sorted(vertices)
    k = len(vs)
    idx = {v: i for i, v in enumerate(vs)}
    nb = [0] * k
    for i, v in enumerate(vs):
        for y in g.adj[v]:
            j = idx.get(y)
            if j is not None:
                nb[i] |= 1 << j
    best = [0, 0]

    def grow(cand: int, chosen: int, size: int) -> None:
        if size + cand.bit_count() <= best[0]:
            return
        if not cand:
            best[0], best[1] = size, chosen
            return
        i = (cand & -cand).bit_length() - 1
        bit = 1 << i
        grow(cand & ~nb[i] & ~bit, chosen | bit, size + 1)
        grow(cand & ~bit, chosen, size)

    grow((1 << k) - 1, 0, 0)
    return [vs[i] for i in range(k) if best[1] >> i & 1]


def greedy_independent_subset(g: Graph, vertices: list[int]) -> list[int]:
    """Min-degree greedy independent set inside the induced subgraph."""
    pool = set(vertices)
    out = []
    while pool:
        v = min(pool, key=lambda x: (sum(1 for y in g.adj[x] if y in pool), x))
        out.append(v)
        pool.discard(v)
        pool.difference_update(g.adj[v])
    return sorted(out)


ALPHA_EXACT_LIMIT = 20


def _extremities_sparse(g: Graph) -> list[int]:
    """Same test as :func:`is_extremity`, run through scipy for larger graphs."""
    import numpy as np
    from scipy.sparse import csr_matrix
    from scipy.sparse.csgraph import connected_components

    n = g.n
    A = csr_matrix((np.ones(len(g.indices), dtype=np.int8), g.indices, g.indptr), shape=(n, n))
    out = []
    for v in range(n):
        keep = np.ones(n, dtype=bool)
        keep[v] = False
        keep[g.adj[v]] = False
        idx = np.flatnonzero(keep)
        if len(idx) <= 1:
            out.append(v)
            continue
        k, _ = connected_components(A[idx][:, idx], directed=False)
        if k <= 1:
            out.append(v)
    return out


def all_extremities_oracle(g: Graph, exact_limit: int = ALPHA_EXACT_LIMIT) -> ExtremityReport:
    """Every extremity by brute force, plus ``alpha`` on the extremity set.

    ``alpha`` is exact when there are at most ``exact_limit`` extremities
    and a greedy lower bound otherwise (``alpha_exact`` says which).
    """
    require_connected(g)
    if g.n > 200:
        ext = _extremities_sparse(g)
    else:
        ext = [v for v in range(g.n) if is_extremity(g, v)]
    if len(ext) <= exact_limit:
        ind = max_independent_subset(g, ext)
        return ExtremityReport(ext, len(ind), True, ind)
    ind = greedy_independent_subset(g, ext)
    return ExtremityReport(ext, len(ind), False, ind)


def first_extremity(g: Graph, start: int = 0) -> int:
    """Last vertex of LexBFS(start); an extremity whenever ``g`` is prime and n >= 3."""
    return lexbfs(g, start).last


def next_extremity(
    g: Graph, u: int, S: Iterable[int], order: LexOrder | None = None
) -> int:
    """An extremity outside ``S | N[u]`` at maximum distance from ``u``.

    ``S`` must be ``u``-transitive and ``g`` prime; neither is checked,
    except that a refinement step that fails to split its group reports
    the group as a module via :class:`NotPrimeError`.  ``order`` may pass
    a precomputed LexBFS(u) so repeated calls share one search.
    """
    n = g.n
    adj = g.adj
    if order is None:
        order = lexbfs(g, u)
    elif order.start != u:
        raise GraphInputError("order must be a LexBFS started at u")
    in_s = bytearray(n)
    for s in S:
        in_s[s] = 1
    closed_u = g.closed_neighborhood((u,))
    if all(in_s[v] or v in closed_u for v in range(n)):
        raise ExhaustedError(f"every vertex lies in S or N[{u}]")
    visit, pos = order.visit, order.pos
    # w: the vertex outside S with the smallest number (visited last)
    k = n - 1
    while in_s[visit[k]]:
        k -= 1
    w = visit[k]
    # largest number i with N_succ(sigma(i)) inside N(w); sigma(i) != u
    marked = bytearray(n)
    for y in adj[w]:
        marked[y] = 1
    top = k
    for t in range(1, k + 1):
        x = visit[t]
        if all(marked[y] for y in adj[x] if pos[y] < t):
            top = t
            break
    M = [visit[t] for t in range(top, k + 1) if not in_s[visit[t]]]
    pivots = [s for s in range(n) if in_s[s]]
    while len(M) > 1:
        part = VertexPartition([M])
        for s in pivots:
            part.refine(adj[s], bump=1)
        groups = part.tagged_groups()
        if len(groups) == 1:
            raise NotPrimeError(M)
        best, _ = min(groups, key=lambda gt: (gt[1], gt[0][0]))
        keep = set(best)
        pivots = [v for v in M if v not in keep]
        M = best
    return M[0]


def separation_test(g: Graph, u: int, v: int, w: int) -> bool:
    """``u`` and ``v`` lie in different components of ``G - N[w]``."""
    for a, b in ((u, v), (u, w), (v, w)):
        if a == b or g.has_edge(a, b):
            raise GraphInputError(f"vertices {u}, {v}, {w} must be pairwise nonadjacent")
    comp = component_index_after_removing(g, g.closed_neighborhood((w,)))
    return comp[u] != comp[v]


def separation_table(g: Graph):
    """Row ``y`` holds component labels of ``G - N[y]`` (-1 on ``N[y]``).

    Precomputing this once makes repeated transitivity checks on the same
    graph cost O(n |S|) each instead of O(n m).
    """
    import numpy as np

    n = g.n
    table = np.empty((n, n), dtype=np.int32)
    for y in range(n):
        table[y] = component_index_after_removing(g, g.closed_neighborhood((y,)))
    return table


def is_u_transitive_oracle(g: Graph, u: int, S: Iterable[int], table=None) -> bool:
    """Exhaustive check that no ``y`` outside ``S`` separates a member of ``S`` from ``u``.

    ``table`` may be a precomputed :func:`separation_table` of ``g``.
    """
    members = set(S)
    if table is not None:
        import numpy as np

        if not members:
            return True
        rows = np.ones(g.n, dtype=bool)
        rows[list(members)] = False
        rows[u] = False
        rows[g.adj[u]] = False
        sub = table[np.ix_(rows, sorted(members))]
        cu = table[rows, u][:, None]
        return not bool(((sub >= 0) & (sub != cu)).any())
    for y in range(g.n):
        if y in members or y == u or g.has_edge(u, y):
            continue
        closed = g.closed_neighborhood((y,))
        comp = component_index_after_removing(g, closed)
        cu = comp[u]
        for x in members:
            if x not in closed and comp[x] != cu:
                return False
    return True


def is_asteroidal_set(g: Graph, A: Iterable[int]) -> bool:
    A = sorted(set(A))
    for i, a in enumerate(A):
        for b in A[i + 1:]:
            if g.has_edge(a, b):
                return False
    for a in A:
        rest = [b for b in A if b != a]
        if len(rest) < 2:
            continue
        comp = component_index_after_removing(g, g.closed_neighborhood((a,)))
        if len({comp[b] for b in rest}) > 1:
            return False
    return True


ASTEROIDAL_CAP = 60


def asteroidal_number_oracle(g: Graph, cap: int = ASTEROIDAL_CAP, budget: int = 2_000_000) -> int:
    """Largest asteroidal set, found level by level.

    Subsets of asteroidal sets are asteroidal, so each size-``k+1`` set
    extends a size-``k`` one by a larger vertex.  Refuses graphs above
    ``cap`` vertices or searches that would exceed ``budget`` candidate
    sets.
    """
    n = g.n
    if n > cap:
        raise OracleCapError(f"asteroidal search refused for n={n} > {cap}")
    if n == 0:
        return 0
    comp = [component_index_after_removing(g, g.closed_neighborhood((a,))) for a in range(n)]
    sets = g.adj_sets
    level: list[tuple[int, ...]] = [(v,) for v in range(n)]
    best = 1
    work = 0
    while level:
        nxt = []
        for A in level:
            for b in range(A[-1] + 1, n):
                work += 1
                if work > budget:
                    raise OracleCapError("asteroidal search exceeded its work budget")
                sb = sets[b]
                if any(a in sb for a in A):
                    continue
                cb = comp[b]
                if len({cb[a] for a in A}) > 1:
                    continue
                ok = True
                if len(A) >= 2:
                    for a in A:
                        ca = comp[a]
                        other = A[0] if A[0] != a else A[1]
                        if ca[b] != ca[other]:
                            ok = False
                            break
                if ok:
                    nxt.append(A + (b,))
        if nxt:
            best = len(nxt[0])
        level = nxt
    return best


DOMINATING_TARGET_CAP = 4000


def is_dominating_target(
    g: Graph,
    D: Iterable[int],
    cap: int = DOMINATING_TARGET_CAP,
    maximal_extremity_set: bool = False,
) -> bool | None:
    """Decide whether every connected subgraph containing ``D`` dominates ``g``.

    Exact for ``n <= cap`` in O(nm): ``D`` fails exactly when some vertex
    ``w`` has no member of ``D`` in ``N[w]`` and ``D`` lies in one component
    of ``G - N[w]`` (that component is a connected subgraph missing ``w``).
    Above the cap the answer is ``True`` when the caller vouches that ``D``
    is a maximal set of pairwise nonadjacent extremities of a prime graph,
    and ``None`` (unknown) otherwise.
    """
    D = set(D)
    if not D:
        raise GraphInputError("dominating target must be nonempty")
    n = g.n
    if n > cap:
        return True if maximal_extremity_set else None
    for w in range(n):
        closed = g.closed_neighborhood((w,))
        if closed & D:
            continue
        comp = component_index_after_removing(g, closed)
        if len({comp[d] for d in D}) == 1:
            return False
    return True

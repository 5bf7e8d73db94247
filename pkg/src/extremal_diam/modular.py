"""Modules, twin classes and the quotient over maximal strong modules.

The quotient is computed in two steps, both driven by partition refinement.

1. ``maximal_modules_avoiding(g, v0)`` returns the maximal modules that do
   not contain ``v0``.  They partition ``V - {v0}`` and are the coarsest
   partition in which every vertex outside a part sees it uniformly.
2. Collapse those parts into one node each (plus ``v0``) and find the
   largest proper module containing ``v0`` with a forcing digraph: node
   ``a`` forces ``b`` when ``b`` tells ``a`` and ``v0`` apart.  That module
   merges into one strong module, and every other part is already one.

When the complement is disconnected the co-components are the maximal
strong modules and the quotient is complete.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from collections.abc import Iterable

from .errors import GraphInputError
from .graph import Graph, require_connected
from .partition import VertexPartition


@dataclass
class ModuleWitness:
    members: frozenset[int]
    is_module: bool
    splitter: int | None = None

    def __bool__(self) -> bool:
        return self.is_module


@dataclass
class QuotientGraph:
    quotient: Graph
    classes: list[list[int]]
    classmap: list[int]
    representative: list[int]
    complement_disconnected: bool = False

    @property
    def is_trivial(self) -> bool:
        """True when no module has more than one vertex."""
        return len(self.classes) == len(self.classmap)


def is_module(g: Graph, members: Iterable[int]) -> ModuleWitness:
    M = frozenset(members)
    if not M:
        raise GraphInputError("module test needs a nonempty vertex set")
    hits: dict[int, int] = {}
    for x in M:
        for y in g.adj[x]:
            if y not in M:
                hits[y] = hits.get(y, 0) + 1
    size = len(M)
    for y in sorted(hits):
        if hits[y] != size:
            return ModuleWitness(M, False, y)
    return ModuleWitness(M, True)


def twin_classes(g: Graph) -> list[list[int]]:
    """Classes of the twin relation ``N(u) - {v} = N(v) - {u}``.

    False twins share open neighbourhoods and true twins share closed
    ones; a vertex cannot have a nontrivial class of both kinds, so the
    twin classes are the union of the two refinements' nontrivial groups.
    """
    n = g.n
    open_p = VertexPartition([range(n)])
    closed_p = VertexPartition([range(n)])
    for v in range(n):
        open_p.refine(g.adj[v])
        closed_p.refine(g.adj[v] + [v])
    label = list(range(n))
    for part in (open_p, closed_p):
        for grp in part.groups():
            if len(grp) > 1:
                for v in grp:
                    label[v] = grp[0]
    out: dict[int, list[int]] = {}
    for v in range(n):
        out.setdefault(label[v], []).append(v)
    return sorted(out.values())


def co_components(g: Graph) -> list[list[int]]:
    """Connected components of the complement in O(n + m)."""
    n = g.n
    unvisited = set(range(n))
    comps = []
    sets = g.adj_sets
    while unvisited:
        s = min(unvisited)
        unvisited.discard(s)
        comp = [s]
        queue = deque([s])
        while queue:
            x = queue.popleft()
            nx = sets[x]
            far = [y for y in unvisited if y not in nx]
            for y in far:
                unvisited.discard(y)
                comp.append(y)
                queue.append(y)
        comps.append(sorted(comp))
    comps.sort()
    return comps


def maximal_modules_avoiding(g: Graph, v0: int) -> list[list[int]]:
    """Maximal modules of ``g`` not containing ``v0``, in O((n + m) log n).

    Each time a part splits into a smaller side ``A`` and a larger side
    ``B`` we restore uniformity between them by scanning only the
    adjacency of ``A``: each ``a`` in ``A`` refines every part other than
    its own by ``N(a)``, and each outside vertex ``b`` refines the parts
    inside ``A`` by ``N(b) & A``.  Refining a part by the neighbourhood of
    a vertex outside it never cuts a module, so the extra splits are safe.
    """
    n = g.n
    g.check_vertex(v0)
    adj = g.adj
    part_id = [0] * n  # current part per vertex (-1 for v0)
    part_id[v0] = -1
    parts: dict[int, set[int]] = {}
    next_id = 1
    events: deque[list[int]] = deque()

    def refine(pivot: Iterable[int], skip: int) -> None:
        nonlocal next_id
        by_part: dict[int, list[int]] = {}
        for y in pivot:
            p = part_id[y]
            if p >= 0 and p != skip:
                by_part.setdefault(p, []).append(y)
        for p, hit in by_part.items():
            members = parts[p]
            if len(hit) == len(members):
                continue
            hs = set(hit)
            members -= hs
            parts[next_id] = hs
            for v in hs:
                part_id[v] = next_id
            next_id += 1
            events.append(hit if len(hs) <= len(members) else list(members))

    rest = set(range(n))
    rest.discard(v0)
    if not rest:
        return []
    parts[0] = rest
    refine(adj[v0], -1)
    while events:
        small = events.popleft()
        sset = set(small)
        for a in small:
            refine(adj[a], part_id[a])
        back: dict[int, list[int]] = {}
        for a in small:
            for b in adj[a]:
                if b not in sset:
                    back.setdefault(b, []).append(a)
        for nbrs in back.values():
            refine(nbrs, -1)
    return sorted(sorted(p) for p in parts.values())


def _scc_sources(succ: list[list[int]]) -> tuple[list[int], set[int]]:
    """Iterative Tarjan; returns per-node component id and the source components."""
    k = len(succ)
    index = [-1] * k
    low = [0] * k
    comp = [-1] * k
    on_stack = bytearray(k)
    stack: list[int] = []
    counter = 0
    ncomp = 0
    for root in range(k):
        if index[root] >= 0:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = 1
        while work:
            v, i = work[-1]
            if i < len(succ[v]):
                work[-1] = (v, i + 1)
                w = succ[v][i]
                if index[w] < 0:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = 1
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
            else:
                work.pop()
                if work:
                    u = work[-1][0]
                    low[u] = min(low[u], low[v])
                if low[v] == index[v]:
                    while True:
                        w = stack.pop()
                        on_stack[w] = 0
                        comp[w] = ncomp
                        if w == v:
                            break
                    ncomp += 1
    has_in = [False] * ncomp
    for v in range(k):
        for w in succ[v]:
            if comp[v] != comp[w]:
                has_in[comp[w]] = True
    return comp, {c for c in range(ncomp) if not has_in[c]}


def _build_quotient(g: Graph, classes: list[list[int]], disconnected_co: bool) -> QuotientGraph:
    classes = sorted(sorted(c) for c in classes)
    classmap = [0] * g.n
    for i, c in enumerate(classes):
        for v in c:
            classmap[v] = i
    reps = [c[0] for c in classes]
    edges = set()
    for i, r in enumerate(reps):
        for y in g.adj[r]:
            j = classmap[y]
            if j != i:
                edges.add((min(i, j), max(i, j)))
    return QuotientGraph(Graph(len(classes), sorted(edges)), classes, classmap, reps, disconnected_co)


def quotient_graph(g: Graph) -> QuotientGraph:
    """Quotient of a connected graph over its maximal strong modules."""
    n = g.n
    if n == 0:
        raise GraphInputError("quotient of the empty graph is undefined")
    require_connected(g)
    if n == 1:
        return _build_quotient(g, [[0]], False)
    co = co_components(g)
    if len(co) > 1:
        return _build_quotient(g, co, True)
    v0 = min(range(n), key=lambda v: (len(g.adj[v]), v))
    parts = maximal_modules_avoiding(g, v0)
    # node 0 is v0, node i+1 is parts[i]
    k = len(parts) + 1
    node = [0] * n
    for i, p in enumerate(parts):
        for v in p:
            node[v] = i + 1
    rep = [v0] + [p[0] for p in parts]
    qadj = [set() for _ in range(k)]
    for a in range(k):
        for y in g.adj[rep[a]]:
            b = node[y] if y != v0 else 0
            if b != a:
                qadj[a].add(b)
    n0 = qadj[0]
    succ: list[list[int]] = [[] for _ in range(k)]
    for a in range(1, k):
        na = qadj[a]
        diff = (na ^ n0) - {a, 0}
        succ[a] = sorted(diff)
    # arcs never enter node 0, so it is its own source component; the
    # largest proper module through v0 drops the (unique) other source
    comp, sources = _scc_sources(succ)
    sources.discard(comp[0])
    merged = {a for a in range(k) if comp[a] not in sources} | {0}
    classes = []
    x0 = [v0]
    for a in range(1, k):
        if a in merged:
            x0.extend(parts[a - 1])
        else:
            classes.append(parts[a - 1])
    classes.append(x0)
    return _build_quotient(g, classes, False)


def is_prime(g: Graph) -> tuple[bool, frozenset[int] | None]:
    """Primality verdict for a connected graph plus a nontrivial module if any."""
    n = g.n
    require_connected(g)
    if n <= 2:
        return True, None
    q = quotient_graph(g)
    for c in q.classes:
        if len(c) > 1:
            return False, frozenset(c)
    if q.complement_disconnected:
        # all co-components are singletons: g is complete on n >= 3 vertices
        return False, frozenset(range(1, n))
    return True, None


def lift_eccentricities(q: QuotientGraph, quotient_ecc: list[int], g: Graph) -> list[int]:
    """Per-vertex eccentricities of ``g`` from those of its quotient.

    Distances between different classes equal quotient distances.  Inside
    a class ``K`` a vertex is at distance 1 from the other members it is
    adjacent to and at distance 2 from the rest (any vertex outside ``K``
    adjacent to ``K`` sees all of it).  Hence
    ``e(v) = max(e_Q(K), 0 | 1 | 2)``.
    """
    ecc = [0] * g.n
    cm = q.classmap
    for v in range(g.n):
        K = cm[v]
        size = len(q.classes[K])
        if size == 1:
            intra = 0
        else:
            inside = sum(1 for y in g.adj[v] if cm[y] == K)
            intra = 1 if inside == size - 1 else 2
        ecc[v] = max(quotient_ecc[K], intra)
    return ecc

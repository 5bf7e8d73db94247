"""Immutable graph storage and BFS distance primitives.

Vertices are the dense integers ``0..n-1``.  Adjacency is kept twice: as
CSR arrays (``indptr``/``indices``) for numpy and scipy consumers, and as
sorted Python lists, which is what the pure-Python traversals iterate over.
Distances use ``UNREACHABLE`` (-1) for vertices in another component.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DisconnectedGraphError, GraphInputError, OracleCapError
from .stats import note_bfs

UNREACHABLE = -1


class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    Construction validates rather than repairs: self-loops, duplicate
    edges (in either orientation) and out-of-range ids raise
    :class:`GraphInputError`.  Use :meth:`from_edges` with ``dedupe=True``
    when reading files that list an edge twice.
    """

    __slots__ = ("n", "m", "adj", "_indptr", "_indices", "__dict__")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise GraphInputError(f"vertex count must be non-negative, got {n}")
        adj: list[list[int]] = [[] for _ in range(n)]
        m = 0
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise GraphInputError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise GraphInputError(f"self-loop at vertex {u}")
            adj[u].append(v)
            adj[v].append(u)
            m += 1
        for v, lst in enumerate(adj):
            lst.sort()
            for a, b in zip(lst, lst[1:]):
                if a == b:
                    raise GraphInputError(f"duplicate edge ({v}, {a})")
        self.n = n
        self.m = m
        self.adj = adj
        self._indptr = None
        self._indices = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], dedupe: bool = False) -> "Graph":
        if dedupe:
            seen = set()
            clean = []
            for u, v in edges:
                key = (u, v) if u < v else (v, u)
                if key not in seen:
                    seen.add(key)
                    clean.append(key)
            edges = clean
        return cls(n, edges)

    @classmethod
    def from_adjacency(cls, adj: list[Iterable[int]]) -> "Graph":
        """Build from a symmetric adjacency list; asymmetry is an error."""
        n = len(adj)
        edges = []
        sets = [set(a) for a in adj]
        for u in range(n):
            for v in sets[u]:
                if not (0 <= v < n) or u not in sets[v]:
                    raise GraphInputError(f"adjacency is not symmetric at ({u}, {v})")
                if u < v:
                    edges.append((u, v))
        return cls(n, edges)

    # -- accessors -------------------------------------------------------

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, tuple(tuple(a) for a in self.adj)))

    def neighbors(self, v: int) -> list[int]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    @cached_property
    def adj_sets(self) -> list[frozenset[int]]:
        return [frozenset(a) for a in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj_sets[u]

    def closed_neighborhood(self, vertices: Iterable[int]) -> set[int]:
        out = set()
        for v in vertices:
            out.add(v)
            out.update(self.adj[v])
        return out

    @property
    def indptr(self) -> np.ndarray:
        if self._indptr is None:
            self._build_csr()
        return self._indptr

    @property
    def indices(self) -> np.ndarray:
        if self._indices is None:
            self._build_csr()
        return self._indices

    def _build_csr(self) -> None:
        deg = np.fromiter((len(a) for a in self.adj), dtype=np.int64, count=self.n)
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(deg, out=indptr[1:])
        indices = np.fromiter(
            (v for a in self.adj for v in a), dtype=np.int32, count=int(indptr[-1])
        )
        self._indptr, self._indices = indptr, indices

    def check_vertex(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise GraphInputError(f"vertex {v} is outside 0..{self.n - 1}")

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Return the induced subgraph and the new-id -> old-id map."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        edges = []
        for i, v in enumerate(keep):
            for w in self.adj[v]:
                j = index.get(w)
                if j is not None and i < j:
                    edges.append((i, j))
        return Graph(len(keep), edges), keep

    def complement(self) -> "Graph":
        edges = []
        for u in range(self.n):
            nb = self.adj_sets[u]
            edges.extend((u, v) for v in range(u + 1, self.n) if v not in nb)
        return Graph(self.n, edges)


# -- traversals ------------------------------------------------------------


def bfs(g: Graph, source: int) -> list[int]:
    """Hop distances from ``source``; ``UNREACHABLE`` outside its component."""
    g.check_vertex(source)
    return multi_source_bfs(g, (source,))


def multi_source_bfs(g: Graph, sources: Iterable[int]) -> list[int]:
    """Distance from every vertex to the nearest member of ``sources``."""
    dist = [UNREACHABLE] * g.n
    queue = deque()
    for s in sources:
        g.check_vertex(s)
        if dist[s] != 0:
            dist[s] = 0
            queue.append(s)
    if not queue:
        raise GraphInputError("multi-source BFS needs at least one source")
    adj = g.adj
    scanned = 0
    while queue:
        x = queue.popleft()
        dx = dist[x] + 1
        nb = adj[x]
        scanned += len(nb)
        for y in nb:
            if dist[y] < 0:
                dist[y] = dx
                queue.append(y)
    note_bfs(scanned)
    return dist


def bfs_tree(g: Graph, source: int) -> tuple[list[int], list[int], list[int]]:
    """BFS from ``source`` returning ``(dist, parent, order)``.

    ``parent[source]`` is -1; unreachable vertices also keep -1.  Parents
    are the first discoverer, so the tree is deterministic.
    """
    g.check_vertex(source)
    n = g.n
    dist = [UNREACHABLE] * n
    parent = [-1] * n
    dist[source] = 0
    order = [source]
    adj = g.adj
    scanned = 0
    i = 0
    while i < len(order):
        x = order[i]
        i += 1
        dx = dist[x] + 1
        nb = adj[x]
        scanned += len(nb)
        for y in nb:
            if dist[y] < 0:
                dist[y] = dx
                parent[y] = x
                order.append(y)
    note_bfs(scanned)
    return dist, parent, order


def shortest_path(parent: list[int], target: int) -> list[int]:
    """Walk a BFS parent array from ``target`` back to the root.

    The returned list starts at ``target`` and ends at the root.
    """
    path = [target]
    while parent[path[-1]] != -1:
        path.append(parent[path[-1]])
    return path


def eccentricity(g: Graph, v: int) -> int:
    dist = bfs(g, v)
    e = max(dist)
    if min(dist) < 0:
        raise DisconnectedGraphError(v, dist.index(UNREACHABLE))
    return e


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or int(component_labels(g).max()) == 0


def require_connected(g: Graph) -> None:
    """Raise :class:`DisconnectedGraphError` unless ``g`` is connected.

    Uses a scipy component labelling so it does not count as algorithm work.
    """
    if g.n <= 1:
        return
    labels = component_labels(g)
    if labels.max() > 0:
        other = int(np.flatnonzero(labels != labels[0])[0])
        raise DisconnectedGraphError(0, other)


def _csr_matrix(g: Graph):
    from scipy.sparse import csr_matrix

    data = np.ones(len(g.indices), dtype=np.int8)
    return csr_matrix((data, g.indices, g.indptr), shape=(g.n, g.n))


def component_labels(g: Graph) -> np.ndarray:
    from scipy.sparse.csgraph import connected_components

    if g.n == 0:
        return np.zeros(0, dtype=np.int32)
    _, labels = connected_components(_csr_matrix(g), directed=False)
    return labels


def components_after_removing(g: Graph, removed: Iterable[int]) -> list[set[int]]:
    """Connected components of ``G - removed``, each as a vertex set.

    Components are listed by their smallest vertex.
    """
    n = g.n
    mark = bytearray(n)
    for v in removed:
        mark[v] = 1
    adj = g.adj
    comps = []
    for s in range(n):
        if mark[s]:
            continue
        mark[s] = 1
        comp = [s]
        i = 0
        while i < len(comp):
            x = comp[i]
            i += 1
            for y in adj[x]:
                if not mark[y]:
                    mark[y] = 1
                    comp.append(y)
        comps.append(set(comp))
    return comps


def component_index_after_removing(g: Graph, removed: Iterable[int]) -> list[int]:
    """Per-vertex component id in ``G - removed`` (-1 for removed vertices)."""
    n = g.n
    label = [-1] * n
    blocked = bytearray(n)
    for v in removed:
        blocked[v] = 1
    adj = g.adj
    c = 0
    for s in range(n):
        if blocked[s] or label[s] >= 0:
            continue
        label[s] = c
        stack = [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if not blocked[y] and label[y] < 0:
                    label[y] = c
                    stack.append(y)
        c += 1
    return label


def interval_test(g: Graph, u: int, v: int, w: int, du: list[int], dv: list[int]) -> bool:
    """True iff ``w`` lies on a shortest u-v path, given distance vectors from u and v."""
    if du[v] < 0 or du[w] < 0 or dv[w] < 0:
        return False
    return du[v] == du[w] + dv[w]


# -- oracle ------------------------------------------------------------------


@dataclass
class EccentricityTable:
    ecc: list[int]
    diameter: int
    radius: int
    pair: tuple[int, int]

    @property
    def center(self) -> list[int]:
        return [v for v, e in enumerate(self.ecc) if e == self.radius]


ORACLE_CHUNK = 512


def distance_matrix(g: Graph, max_n: int = 3000) -> np.ndarray:
    """All-pairs hop distances as an ``int32`` matrix (``-1`` if unreachable)."""
    from scipy.sparse.csgraph import shortest_path as sp

    if g.n > max_n:
        raise OracleCapError(f"distance matrix refused for n={g.n} > {max_n}")
    if g.n == 0:
        return np.zeros((0, 0), dtype=np.int32)
    d = sp(_csr_matrix(g), method="D", directed=False, unweighted=True)
    out = np.where(np.isinf(d), -1, d).astype(np.int32)
    return out


def eccentricity_oracle(g: Graph) -> EccentricityTable:
    """Exact eccentricities via one BFS per vertex (the O(nm) baseline).

    The BFS sweeps run inside scipy's compiled shortest-path routine in
    row chunks, so memory stays at ``ORACLE_CHUNK * n`` distances.
    """
    from scipy.sparse.csgraph import shortest_path as sp

    n = g.n
    if n == 0:
        raise GraphInputError("eccentricities of the empty graph are undefined")
    if n == 1:
        return EccentricityTable([0], 0, 0, (0, 0))
    require_connected(g)
    mat = _csr_matrix(g)
    ecc = np.empty(n, dtype=np.int64)
    far = np.empty(n, dtype=np.int64)
    for lo in range(0, n, ORACLE_CHUNK):
        idx = np.arange(lo, min(n, lo + ORACLE_CHUNK))
        d = sp(mat, method="D", directed=False, unweighted=True, indices=idx)
        ecc[idx] = d.max(axis=1).astype(np.int64)
        far[idx] = d.argmax(axis=1)
    diam = int(ecc.max())
    rad = int(ecc.min())
    a = int(np.argmax(ecc))
    return EccentricityTable([int(x) for x in ecc], diam, rad, (a, int(far[a])))

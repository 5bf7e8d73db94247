"""Hyperbolicity estimates: layering partitions and the four-point oracle.

The layering partition of ``g`` from ``c`` groups vertices at the same
distance ``j`` from ``c`` when they are connected through vertices at
distance at least ``j``.  Its largest class diameter ``Delta_c`` is within
a constant factor of the hyperbolicity, and :func:`delta_star` bounds it
from above in linear time using a dominating path system.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import GraphInputError, OracleCapError
from .graph import Graph, bfs, distance_matrix, multi_source_bfs, require_connected
from .partition import DisjointSet


@dataclass
class LayeringPartition:
    center: int
    classes: list[list[int]]
    layer: list[int]
    class_of: list[int]
    dist: list[int]

    @property
    def k(self) -> int:
        return len(self.classes)


def layering_partition(g: Graph, c: int) -> LayeringPartition:
    """Classes of the layering partition from ``c`` in O(n + m) (near-linear with union-find).

    Vertices are inserted by decreasing distance from ``c``; after inserting
    layer ``j`` the union-find components restricted to that layer are its
    classes.
    """
    require_connected(g)
    g.check_vertex(c)
    dist = bfs(g, c)
    n = g.n
    depth = max(dist)
    layers: list[list[int]] = [[] for _ in range(depth + 1)]
    for v in range(n):
        layers[dist[v]].append(v)
    dsu = DisjointSet(n)
    inserted = bytearray(n)
    classes: list[list[int]] = []
    layer_of_class: list[int] = []
    class_of = [0] * n
    adj = g.adj
    for j in range(depth, -1, -1):
        for v in layers[j]:
            inserted[v] = 1
            for y in adj[v]:
                if inserted[y]:
                    dsu.union(v, y)
        groups: dict[int, list[int]] = {}
        for v in layers[j]:
            groups.setdefault(dsu.find(v), []).append(v)
        for grp in sorted(groups.values()):
            for v in grp:
                class_of[v] = len(classes)
            classes.append(grp)
            layer_of_class.append(j)
    return LayeringPartition(c, classes, layer_of_class, class_of, dist)


def delta_c_exact(g: Graph, c: int, partition: LayeringPartition | None = None) -> int:
    """``Delta_c``: the largest distance in ``g`` between two vertices of one class."""
    lp = partition or layering_partition(g, c)
    best = 0
    for cls in lp.classes:
        if len(cls) < 2:
            continue
        members = set(cls)
        for v in cls:
            d = bfs(g, v)
            best = max(best, max(d[y] for y in members))
    return best


@dataclass
class DeltaStar:
    value: int
    partition: LayeringPartition
    argmax_class: int | None = None
    argmax_vertex: int | None = None
    argmax_path: int | None = None


def delta_star(g: Graph, system) -> DeltaStar:
    """Upper bound on ``Delta_c`` for the centre ``c`` of a dominating path system.

    A class ``C`` is labelled with every path ``P_i`` it touches through a
    closed neighbourhood.  For each labelled pair the value
    ``2 d(v, P_i) + 2`` bounds how far apart two members of ``C`` can be;
    the estimate is the largest such value over ``v`` in ``C``.  The result
    satisfies ``Delta* / 2 - 2 <= Delta_c <= Delta*``.
    """
    lp = layering_partition(g, system.c)
    t = system.t
    labels: list[set[int]] = [set() for _ in range(lp.k)]
    class_of = lp.class_of
    adj = g.adj
    for i, path in enumerate(system.paths):
        for v in path:
            labels[class_of[v]].add(i)
            for y in adj[v]:
                labels[class_of[y]].add(i)
    best = DeltaStar(0, lp)
    for i in range(t):
        dp = multi_source_bfs(g, system.paths[i])
        for k, cls in enumerate(lp.classes):
            if i not in labels[k]:
                continue
            for v in cls:
                val = 2 * dp[v] + 2
                if val > best.value:
                    best = DeltaStar(val, lp, k, v, i)
    return best


FOUR_POINT_CAP = 120


def four_point_delta2_oracle(g: Graph, cap: int = FOUR_POINT_CAP) -> int:
    """Twice the four-point hyperbolicity, as an exact integer.

    For every quadruple the three pair sums are compared and the gap
    between the largest and the middle one is recorded; the maximum gap
    is ``2 * delta``.  Quadruples with a repeated vertex have gap 0 and the
    value is symmetric, so only ``x < y < u, v`` is scanned.
    """
    n = g.n
    if n > cap:
        raise OracleCapError(f"four-point oracle refused for n={n} > {cap}")
    if n == 0:
        raise GraphInputError("hyperbolicity of the empty graph is undefined")
    require_connected(g)
    if n < 4:
        return 0
    D = distance_matrix(g).astype(np.int32)
    best = 0
    for x in range(n - 3):
        for y in range(x + 1, n - 2):
            dx = D[x, y + 1:]
            dy = D[y, y + 1:]
            s1 = D[x, y] + D[y + 1:, y + 1:]  # d(x,y) + d(u,v)
            s2 = dx[:, None] + dy[None, :]  # d(x,u) + d(y,v)
            s3 = dy[:, None] + dx[None, :]  # d(y,u) + d(x,v)
            hi = np.maximum(np.maximum(s1, s2), s3)
            lo = np.minimum(np.minimum(s1, s2), s3)
            gap = int((2 * hi + lo - s1 - s2 - s3).max())
            if gap > best:
                best = gap
    return best


def four_point_delta_oracle(g: Graph, cap: int = FOUR_POINT_CAP) -> Fraction:
    """Gromov hyperbolicity ``delta`` by brute force; a half-integer, kept exact."""
    return Fraction(four_point_delta2_oracle(g, cap), 2)

"""Seeded random graphs from intersection models and a few fixed shapes.

All randomness comes from :class:`SplitMix64`, a fixed and documented
64-bit generator, so a spec string such as ``"interval:500:0:4:7"`` names
the same graph on every platform.  Intersection-model families may come
out disconnected; :func:`largest_component` trims them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ExhaustedError, GraphInputError
from .graph import Graph, component_labels

MASK64 = (1 << 64) - 1


class SplitMix64:
    """The SplitMix64 generator (Steele, Lea and Flood's mixing constants)."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def random(self) -> float:
        """Uniform float in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def uniform(self, a: float, b: float) -> float:
        return a + (b - a) * self.random()

    def randbelow(self, k: int) -> int:
        if k <= 0:
            raise ValueError("randbelow needs a positive bound")
        # rejection sampling keeps the result unbiased
        limit = (1 << 64) - ((1 << 64) % k)
        while True:
            r = self.next_u64()
            if r < limit:
                return r % k

    def randint(self, a: int, b: int) -> int:
        """Uniform integer in the closed range [a, b]."""
        return a + self.randbelow(b - a + 1)

    def shuffle(self, xs: list) -> None:
        for i in range(len(xs) - 1, 0, -1):
            j = self.randbelow(i + 1)
            xs[i], xs[j] = xs[j], xs[i]

    def choice(self, xs):
        return xs[self.randbelow(len(xs))]

    def sample(self, xs, k: int) -> list:
        pool = list(xs)
        self.shuffle(pool)
        return pool[:k]


def _edges_from_pairs(n: int, pairs) -> Graph:
    return Graph(n, sorted({(min(a, b), max(a, b)) for a, b in pairs if a != b}))


def interval_graph(intervals: list[tuple[float, float]]) -> Graph:
    """Intersection graph of closed intervals ``(left, right)``."""
    n = len(intervals)
    order = sorted(range(n), key=lambda i: (intervals[i][0], i))
    edges = []
    active: list[int] = []
    for i in order:
        left, right = intervals[i]
        if left > right:
            raise GraphInputError(f"interval {i} has left end after right end")
        active = [j for j in active if intervals[j][1] >= left]
        for j in active:
            edges.append((min(i, j), max(i, j)))
        active.append(i)
    return Graph(n, sorted(edges))


def gen_interval(n: int, density: float = 4.0, seed: int = 0) -> Graph:
    """Intervals with jittered left ends ``i + U(0, 1)`` and lengths uniform in ``[d/2, 3d/2]``.

    The expected degree is about ``2 * density``, so ``m`` is close to
    ``density * n``.
    """
    if n < 1:
        raise GraphInputError("n must be at least 1")
    if density <= 0:
        raise GraphInputError("density must be positive")
    rng = SplitMix64(seed)
    iv = []
    for i in range(n):
        left = i + rng.random()
        iv.append((left, left + rng.uniform(density / 2, 1.5 * density)))
    return interval_graph(iv)


def permutation_graph(perm: list[int]) -> Graph:
    """Inversion graph: ``i < j`` adjacent iff ``perm[i] > perm[j]``."""
    n = len(perm)
    p = np.asarray(perm)
    edges = []
    for i in range(n - 1):
        js = np.nonzero(p[i + 1:] < p[i])[0] + i + 1
        edges.extend((i, int(j)) for j in js)
    return Graph(n, edges)


def gen_permutation(n: int, seed: int = 0, density: float = 0.0) -> Graph:
    """Inversion graph of a random permutation.

    ``density = 0`` draws a uniform permutation.  A positive value sorts
    ``i + U(0, density)`` instead, so only elements within ``density`` of
    each other can be inverted and the graph stays sparse.
    """
    if n < 1:
        raise GraphInputError("n must be at least 1")
    rng = SplitMix64(seed)
    if density <= 0:
        perm = list(range(n))
        rng.shuffle(perm)
    else:
        keys = [i + rng.uniform(0, density) for i in range(n)]
        order = sorted(range(n), key=lambda i: (keys[i], i))
        perm = [0] * n
        for rank, i in enumerate(order):
            perm[i] = rank
    return permutation_graph(perm)


def chord_graph(chords: list[tuple[float, float]]) -> Graph:
    """Intersection graph of chords given by perimeter coordinates of their ends.

    Two chords cross iff their ends interleave around the boundary.
    """
    n = len(chords)
    if n == 0:
        return Graph(0, [])
    a = np.array([min(c) for c in chords])
    b = np.array([max(c) for c in chords])
    edges = []
    for i in range(n - 1):
        aj, bj = a[i + 1:], b[i + 1:]
        inside_a = (a[i] < aj) & (aj < b[i])
        inside_b = (a[i] < bj) & (bj < b[i])
        js = np.nonzero(inside_a ^ inside_b)[0] + i + 1
        edges.extend((i, int(j)) for j in js)
    return Graph(n, edges)


def gen_kpolygon(n: int, k: int, seed: int = 0) -> Graph:
    """Chords of a convex ``k``-gon with ends on two different sides, uniformly placed.

    Side ``s`` occupies perimeter coordinates ``[s, s + 1)``.
    """
    if k < 2:
        raise GraphInputError("a k-polygon needs k >= 2")
    if n < 1:
        raise GraphInputError("n must be at least 1")
    rng = SplitMix64(seed)
    chords = []
    for _ in range(n):
        s = rng.randbelow(k)
        t = rng.randbelow(k - 1)
        if t >= s:
            t += 1
        chords.append((s + rng.random(), t + rng.random()))
    return chord_graph(chords)


def subdivided_star(leg_lengths: list[int]) -> tuple[int, list[tuple[int, int]]]:
    """Host tree with centre 0 and one path per entry; returns ``(size, edges)``."""
    edges = []
    nxt = 1
    for length in leg_lengths:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return nxt, edges


def subtree_graph(tree_n: int, tree_edges: list[tuple[int, int]], subtrees: list[list[int]]) -> Graph:
    """Intersection graph of vertex sets of a host tree."""
    holders: list[list[int]] = [[] for _ in range(tree_n)]
    for i, st in enumerate(subtrees):
        for h in st:
            holders[h].append(i)
    pairs = set()
    for hs in holders:
        for x in range(len(hs)):
            for y in range(x + 1, len(hs)):
                pairs.add((hs[x], hs[y]))
    return Graph(len(subtrees), sorted(pairs))


def gen_chordal_leafage(n: int, k: int, seed: int = 0, density: float = 3.0) -> Graph:
    """Intersection graph of ``n`` random subtrees of a host tree with exactly ``k`` leaves.

    The host is a subdivided star with ``k`` legs of random lengths and
    about ``n / 2`` nodes in total (a path when ``k = 2``).  Each subtree
    grows from a random node to a size uniform in ``[1, 2 * density - 1]``.
    """
    if k < 2:
        raise GraphInputError("leafage needs k >= 2")
    if n < 1:
        raise GraphInputError("n must be at least 1")
    rng = SplitMix64(seed)
    total = max(k, n // 2)
    cuts = sorted(rng.sample(range(1, total), k - 1)) if total > k else list(range(1, k))
    bounds = [0] + cuts + [total]
    legs = [max(1, bounds[i + 1] - bounds[i]) for i in range(k)]
    tree_n, tree_edges = subdivided_star(legs)
    tadj: list[list[int]] = [[] for _ in range(tree_n)]
    for a, b in tree_edges:
        tadj[a].append(b)
        tadj[b].append(a)
    top = max(1, int(round(2 * density - 1)))
    subtrees = []
    for _ in range(n):
        root = rng.randbelow(tree_n)
        size = rng.randint(1, top)
        members = [root]
        seen = {root}
        frontier = list(tadj[root])
        while len(members) < size and frontier:
            h = frontier.pop(rng.randbelow(len(frontier)))
            if h in seen:
                continue
            seen.add(h)
            members.append(h)
            frontier.extend(y for y in tadj[h] if y not in seen)
        subtrees.append(members)
    return subtree_graph(tree_n, tree_edges, subtrees)


def gen_spider(legs: int, leglen: int) -> Graph:
    """Centre 0 with ``legs`` paths of ``leglen`` vertices; leg ``i`` holds ``1 + i*leglen .. (i+1)*leglen``."""
    if legs < 1 or leglen < 1:
        raise GraphInputError("spider needs at least one leg of positive length")
    edges = []
    for i in range(legs):
        prev = 0
        for j in range(leglen):
            v = 1 + i * leglen + j
            edges.append((prev, v))
            prev = v
    return Graph(1 + legs * leglen, edges)


def gen_caterpillar(n: int, seed: int = 0, density: float = 0.5) -> Graph:
    """A chordal caterpillar: a spine with pendant leaves and pendant triangles.

    About ``density`` of the vertices go to the spine; each remaining one
    hangs off a random spine vertex or a random spine edge.
    """
    if n < 1:
        raise GraphInputError("n must be at least 1")
    rng = SplitMix64(seed)
    s = max(1, min(n, int(round(n * min(max(density, 0.05), 1.0)))))
    edges = [(i, i + 1) for i in range(s - 1)]
    for v in range(s, n):
        a = rng.randbelow(s)
        edges.append((a, v))
        if s > 1 and rng.random() < 0.5:
            b = a + 1 if a + 1 < s else a - 1
            edges.append((b, v))
    return _edges_from_pairs(n, edges)


def pendant_triangle_path(length: int) -> Graph:
    """Path ``0 .. length-1`` plus, for each path edge, a vertex adjacent to both ends."""
    edges = [(i, i + 1) for i in range(length - 1)]
    for i in range(length - 1):
        v = length + i
        edges += [(i, v), (i + 1, v)]
    return Graph(length + max(0, length - 1), edges)


def gen_split(clique: int, independent: int, seed: int = 0, p: float = 0.4) -> Graph:
    """Split graph: a clique ``0 .. clique-1`` and independent vertices seeing random nonempty parts of it."""
    if clique < 1:
        raise GraphInputError("split graph needs a nonempty clique")
    rng = SplitMix64(seed)
    edges = [(a, b) for a in range(clique) for b in range(a + 1, clique)]
    for i in range(independent):
        v = clique + i
        nb = [a for a in range(clique) if rng.random() < p]
        if not nb:
            nb = [rng.randbelow(clique)]
        edges.extend((a, v) for a in nb)
    return Graph(clique + independent, edges)


def gen_dominating_edge(n: int, seed: int = 0, extra: float = 1.0, both: float = 0.1) -> Graph:
    """Two adjacent hubs 0 and 1 that together dominate everything.

    Each other vertex sees one hub (or both with probability ``both``);
    about ``extra * n`` further random edges join non-hub vertices.
    """
    if n < 2:
        raise GraphInputError("a dominating edge needs two vertices")
    rng = SplitMix64(seed)
    edges = {(0, 1)}
    for v in range(2, n):
        r = rng.random()
        if r < both:
            edges.update({(0, v), (1, v)})
        else:
            edges.add((rng.randbelow(2), v))
    if n > 3:
        for _ in range(int(extra * n)):
            a, b = 2 + rng.randbelow(n - 2), 2 + rng.randbelow(n - 2)
            if a != b:
                edges.add((min(a, b), max(a, b)))
    return Graph(n, sorted(edges))


def gen_gnp(n: int, p: float, seed: int = 0) -> Graph:
    rng = SplitMix64(seed)
    edges = [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < p]
    return Graph(n, edges)


def gen_gnp_prime(n: int, p: float, seed: int = 0, retries: int = 200) -> Graph:
    """G(n, p) resampled until connected and prime."""
    from .graph import is_connected
    from .modular import is_prime

    if n < 1:
        raise GraphInputError("n must be at least 1")
    rng = SplitMix64(seed)
    for _ in range(retries):
        g = gen_gnp(n, p, rng.next_u64())
        if is_connected(g) and is_prime(g)[0]:
            return g
    raise ExhaustedError(f"no connected prime G({n}, {p}) within {retries} samples")


def largest_component(g: Graph) -> tuple[Graph, list[int]]:
    """The largest connected component (smallest ids win ties), relabelled from 0."""
    if g.n == 0:
        return g, []
    labels = component_labels(g)
    sizes: dict[int, int] = {}
    for lab in labels:
        sizes[lab] = sizes.get(lab, 0) + 1
    first = {}
    for v, lab in enumerate(labels):
        first.setdefault(lab, v)
    best = max(sizes, key=lambda lab: (sizes[lab], -first[lab]))
    keep = [v for v in range(g.n) if labels[v] == best]
    return g.induced_subgraph(keep)


FAMILIES = ("interval", "permutation", "kpolygon", "chordal-leafage", "spider", "caterpillar", "gnp-prime")


@dataclass(frozen=True)
class GenSpec:
    """``family:n:k:density:seed``.

    ``k`` is the polygon sides, leafage or spider leg length; ``density``
    is the interval length scale, permutation band, subtree size scale,
    spine fraction or edge probability depending on the family.  For
    spiders ``n`` is the number of legs.
    """

    family: str
    n: int
    k: int = 0
    density: float = 0.0
    seed: int = 0

    def __str__(self) -> str:
        return f"{self.family}:{self.n}:{self.k}:{_fmt(self.density)}:{self.seed}"

    @classmethod
    def parse(cls, text: str) -> "GenSpec":
        parts = text.strip().split(":")
        if len(parts) != 5:
            raise GraphInputError(f"spec must look like family:n:k:density:seed, got {text!r}")
        fam = parts[0]
        if fam not in FAMILIES:
            raise GraphInputError(f"unknown family {fam!r}; choose from {', '.join(FAMILIES)}")
        try:
            n, k, seed = int(parts[1]), int(parts[2]), int(parts[4])
            density = float(parts[3])
        except ValueError as exc:
            raise GraphInputError(f"bad number in spec {text!r}") from exc
        if not math.isfinite(density):
            raise GraphInputError("density must be finite")
        return cls(fam, n, k, density, seed)

    def build(self) -> Graph:
        f, n, k, d, s = self.family, self.n, self.k, self.density, self.seed
        if f == "interval":
            return gen_interval(n, d if d > 0 else 4.0, s)
        if f == "permutation":
            return gen_permutation(n, s, d)
        if f == "kpolygon":
            return gen_kpolygon(n, k or 3, s)
        if f == "chordal-leafage":
            return gen_chordal_leafage(n, k or 3, s, d if d > 0 else 3.0)
        if f == "spider":
            return gen_spider(n, k or 2)
        if f == "caterpillar":
            return gen_caterpillar(n, s, d if d > 0 else 0.5)
        return gen_gnp_prime(n, d if d > 0 else 0.3, s)


def _fmt(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else repr(x)


def generate(spec: str | GenSpec) -> Graph:
    if isinstance(spec, str):
        spec = GenSpec.parse(spec)
    return spec.build()

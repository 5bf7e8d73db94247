"""LexBFS and the order machinery built on it.

A LexBFS run visits vertices one at a time; the *number* of a vertex is
``n`` for the first vertex visited down to ``1`` for the last, so
``sigma(1)`` is the final vertex of the search.  :class:`LexOrder` stores
the visit sequence and exposes both views.

Ties between vertices with equal labels go to the smallest vertex id.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DisconnectedGraphError, GraphInputError
from .graph import Graph, bfs_tree, shortest_path
from .stats import note_lexbfs


@dataclass
class LexOrder:
    visit: list[int]
    pos: list[int] = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.visit)

    @property
    def start(self) -> int:
        return self.visit[0]

    @property
    def last(self) -> int:
        """``sigma(1)``: the vertex visited last."""
        return self.visit[-1]

    def sigma(self, i: int) -> int:
        """Vertex carrying number ``i`` (1-indexed, ``sigma(n)`` is the start)."""
        if not (1 <= i <= self.n):
            raise IndexError(i)
        return self.visit[self.n - i]

    def number(self, v: int) -> int:
        return self.n - self.pos[v]

    def precedes(self, u: int, v: int) -> bool:
        """``u < v`` in the numbering, i.e. ``u`` was visited after ``v``."""
        return self.pos[u] > self.pos[v]

    @classmethod
    def from_visit(cls, visit: list[int]) -> "LexOrder":
        pos = [0] * len(visit)
        for i, v in enumerate(visit):
            pos[v] = i
        return cls(list(visit), pos)


class _Cls:
    __slots__ = ("items", "head", "size", "prev", "next", "child", "stamp")

    def __init__(self):
        self.items: list[int] = []
        self.head = 0
        self.size = 0
        self.prev: _Cls | None = None
        self.next: _Cls | None = None
        self.child: _Cls | None = None
        self.stamp = -1


def lexbfs(g: Graph, start: int = 0) -> LexOrder:
    """LexBFS from ``start`` by partition refinement, in O(n + m).

    Classes of equal-label vertices live in a doubly linked list ordered by
    decreasing label.  Visiting ``x`` moves each unvisited neighbour into a
    fresh class placed just before its old one.  Each class keeps its
    vertices id-sorted (neighbour lists are sorted and appended in order),
    with stale entries skipped lazily.
    """
    g.check_vertex(start)
    n = g.n
    adj = g.adj
    first = _Cls()
    first.items = [start]
    first.size = 1
    rest = _Cls()
    rest.items = [v for v in range(n) if v != start]
    rest.size = n - 1
    first.next = rest
    rest.prev = first
    head: _Cls | None = first
    cls_of: list[_Cls] = [rest] * n
    cls_of[start] = first
    visited = bytearray(n)
    reached = bytearray(n)
    reached[start] = 1
    visit: list[int] = []
    scanned = 0
    for step in range(n):
        while head.size == 0:
            head = head.next
            head.prev = None
        c = head
        items = c.items
        i = c.head
        while True:
            x = items[i]
            i += 1
            if not visited[x] and cls_of[x] is c:
                break
        c.head = i
        c.size -= 1
        visited[x] = 1
        if not reached[x]:
            raise DisconnectedGraphError(start, x)
        visit.append(x)
        nb = adj[x]
        scanned += len(nb)
        for y in nb:
            if visited[y]:
                continue
            reached[y] = 1
            old = cls_of[y]
            new = old.child if old.stamp == step else None
            if new is None:
                new = _Cls()
                new.next = old
                new.prev = old.prev
                if old.prev is None:
                    head = new
                else:
                    old.prev.next = new
                old.prev = new
                old.child = new
                old.stamp = step
            new.items.append(y)
            new.size += 1
            old.size -= 1
            cls_of[y] = new
    note_lexbfs(scanned)
    return LexOrder.from_visit(visit)


def verify_lexorder(g: Graph, order: LexOrder | list[int]) -> bool:
    """Replay the label refinement and check every pick had a maximum label."""
    visit = order.visit if isinstance(order, LexOrder) else list(order)
    n = g.n
    if sorted(visit) != list(range(n)):
        return False
    if n == 0:
        return True
    adj = g.adj
    # classes as dicts of sets is plenty for a checker
    rank = [0] * n  # class id per vertex; larger rank = larger label
    members: dict[int, set[int]] = {0: set(range(n))}
    ranks_sorted = [0]
    visited = bytearray(n)
    next_id = 1
    # start vertex is always legal: promote it artificially
    for step, x in enumerate(visit):
        top = ranks_sorted[-1]
        if step > 0 and rank[x] != top:
            return False
        visited[x] = 1
        members[rank[x]].discard(x)
        if not members[rank[x]]:
            del members[rank[x]]
            ranks_sorted.remove(rank[x])
        moved: dict[int, int] = {}
        for y in adj[x]:
            if visited[y]:
                continue
            r = rank[y]
            nr = moved.get(r)
            if nr is None:
                nr = next_id
                next_id += 1
                moved[r] = nr
                members[nr] = set()
                # new class sits just above r and below anything above r
                idx = ranks_sorted.index(r)
                ranks_sorted.insert(idx + 1, nr)
            members[r].discard(y)
            members[nr].add(y)
            rank[y] = nr
        for r in moved:
            if not members[r]:
                del members[r]
                ranks_sorted.remove(r)
    return True


def label_view(g: Graph, order: LexOrder, u: int, v: int) -> tuple[int, ...]:
    """``lambda(u, v)``: numbers of u's neighbours numbered before ``v``.

    Listed by decreasing number, as a tuple so that Python's tuple ordering
    is the lexicographic order on labels.  Requires ``u`` not numbered
    above ``v``.
    """
    pv = order.pos[v]
    nums = [order.number(y) for y in g.adj[u] if order.pos[y] < pv]
    nums.sort(reverse=True)
    return tuple(nums)


def double_sweep(g: Graph, start: int = 0) -> tuple[int, int, int]:
    """Two LexBFS sweeps and the midpoint of the resulting path.

    Returns ``(x1, x2, c)`` with ``x1`` last in LexBFS(start), ``x2`` last in
    LexBFS(x1) and ``c`` on a BFS-tree shortest x1-x2 path at distance
    ``floor(d(x1, x2) / 2)`` from ``x1``.
    """
    if g.n < 2:
        raise GraphInputError("double sweep needs at least two vertices")
    x1 = lexbfs(g, start).last
    x2 = lexbfs(g, x1).last
    dist, parent, _ = bfs_tree(g, x1)
    path = shortest_path(parent, x2)  # x2 ... x1
    d = dist[x2]
    c = path[d - d // 2]
    return x1, x2, c


def is_simplicial(g: Graph, v: int) -> bool:
    nb = g.adj[v]
    sets = g.adj_sets
    for i, a in enumerate(nb):
        sa = sets[a]
        for b in nb[i + 1:]:
            if b not in sa:
                return False
    return True


def is_perfect_elimination_order(g: Graph, peo: list[int]) -> bool:
    """Check that each vertex is simplicial among the vertices after it."""
    n = g.n
    if sorted(peo) != list(range(n)):
        return False
    pos = [0] * n
    for i, v in enumerate(peo):
        pos[v] = i
    sets = g.adj_sets
    for v in peo:
        later = [y for y in g.adj[v] if pos[y] > pos[v]]
        if not later:
            continue
        p = min(later, key=pos.__getitem__)
        sp = sets[p]
        for y in later:
            if y != p and y not in sp:
                return False
    return True


def recognize_chordal(g: Graph) -> tuple[bool, list[int] | None]:
    """LexBFS followed by a perfect-elimination check.

    Returns ``(True, peo)`` with ``peo`` listing ``sigma(1), sigma(2), ...``
    when ``g`` is chordal, else ``(False, None)``.
    """
    if g.n == 0:
        return True, []
    order = lexbfs(g, 0)
    peo = order.visit[::-1]
    if is_perfect_elimination_order(g, peo):
        return True, peo
    return False, None

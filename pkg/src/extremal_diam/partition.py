"""Ordered partition refinement and a small union-find.

:class:`VertexPartition` keeps an ordered sequence of disjoint groups over
a universe of vertices.  Refining by a pivot set costs O(|pivot|) plus the
size of the smaller side created by each split, which is the usual bound
for partition refinement.
"""

from __future__ import annotations

from collections.abc import Iterable


class _Group:
    __slots__ = ("members", "prev", "next", "tag")

    def __init__(self, members: set[int], tag: int = 0):
        self.members = members
        self.prev: _Group | None = None
        self.next: _Group | None = None
        self.tag = tag


class VertexPartition:
    """Ordered partition of a vertex subset.

    Each group carries an integer ``tag`` that is copied to both halves on
    a split; callers use it as a per-group counter.
    """

    def __init__(self, groups: Iterable[Iterable[int]] = ()):
        self._head: _Group | None = None
        self._tail: _Group | None = None
        self._of: dict[int, _Group] = {}
        self._count = 0
        for grp in groups:
            self.append_group(grp)

    # -- structure ---------------------------------------------------------

    def _link_after(self, ref: _Group | None, g: _Group) -> None:
        if ref is None:
            g.prev, g.next = None, self._head
            if self._head is not None:
                self._head.prev = g
            self._head = g
            if self._tail is None:
                self._tail = g
        else:
            g.prev, g.next = ref, ref.next
            if ref.next is not None:
                ref.next.prev = g
            else:
                self._tail = g
            ref.next = g
        self._count += 1

    def _unlink(self, g: _Group) -> None:
        if g.prev is None:
            self._head = g.next
        else:
            g.prev.next = g.next
        if g.next is None:
            self._tail = g.prev
        else:
            g.next.prev = g.prev
        self._count -= 1

    def append_group(self, vertices: Iterable[int], tag: int = 0) -> None:
        members = set(vertices)
        if not members:
            return
        g = _Group(members, tag)
        for v in members:
            if v in self._of:
                raise ValueError(f"vertex {v} already belongs to a group")
            self._of[v] = g
        self._link_after(self._tail, g)

    # -- queries -----------------------------------------------------------

    def __len__(self) -> int:
        return self._count

    def __contains__(self, v: int) -> bool:
        return v in self._of

    def _iter_groups(self):
        g = self._head
        while g is not None:
            yield g
            g = g.next

    def groups(self) -> list[list[int]]:
        """Groups in order, members of each sorted by id."""
        return [sorted(g.members) for g in self._iter_groups()]

    def tagged_groups(self) -> list[tuple[list[int], int]]:
        return [(sorted(g.members), g.tag) for g in self._iter_groups()]

    def order(self) -> list[int]:
        out = []
        for grp in self.groups():
            out.extend(grp)
        return out

    def group_of(self, v: int) -> set[int]:
        return self._of[v].members

    def universe(self) -> set[int]:
        return set(self._of)

    # -- updates -----------------------------------------------------------

    def remove(self, v: int) -> None:
        g = self._of.pop(v)
        g.members.discard(v)
        if not g.members:
            self._unlink(g)

    def keep_only(self, members: Iterable[int]) -> None:
        """Drop every vertex not in ``members``."""
        keep = set(members)
        for v in [v for v in self._of if v not in keep]:
            self.remove(v)

    def refine(self, pivot: Iterable[int], hit_first: bool = False, bump: int = 0) -> None:
        """Split every group ``X`` into ``X - pivot`` and ``X & pivot``.

        The hit part goes after the miss part unless ``hit_first``; its tag
        is increased by ``bump``.  Groups entirely inside the pivot keep
        their position and only receive the bump.
        """
        touched: dict[int, tuple[_Group, set[int]]] = {}
        for v in pivot:
            g = self._of.get(v)
            if g is None:
                continue
            slot = touched.get(id(g))
            if slot is None:
                touched[id(g)] = (g, {v})
            else:
                slot[1].add(v)
        for g, hits in touched.values():
            if len(hits) == len(g.members):
                g.tag += bump
                continue
            new = _Group(hits, g.tag + bump)
            for v in hits:
                g.members.discard(v)
                self._of[v] = new
            self._link_after(g.prev if hit_first else g, new)

    def split(self, keys: dict[int, int]) -> None:
        """Refine by integer keys.

        Within each touched group ``X`` the new order is: members without a
        key, then members with key ``k`` for increasing ``k``.
        """
        touched: dict[int, tuple[_Group, dict[int, list[int]]]] = {}
        for v, k in keys.items():
            g = self._of.get(v)
            if g is None:
                continue
            slot = touched.get(id(g))
            if slot is None:
                slot = (g, {})
                touched[id(g)] = slot
            slot[1].setdefault(k, []).append(v)
        for g, buckets in touched.values():
            order = sorted(buckets)
            moved = sum(len(buckets[k]) for k in order)
            if moved == len(g.members):
                # no untouched remainder: the lowest bucket keeps the node
                g.members = set(buckets[order[0]])
                order = order[1:]
            anchor = g
            for k in order:
                vs = buckets[k]
                new = _Group(set(vs), g.tag)
                for v in vs:
                    g.members.discard(v)
                    self._of[v] = new
                self._link_after(anchor, new)
                anchor = new


class DisjointSet:
    """Union-find with union by size and path halving."""

    __slots__ = ("parent", "size")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> int:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return ra

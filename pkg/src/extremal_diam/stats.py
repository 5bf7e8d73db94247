"""Work counters for traversals.

Counting is opt-in: wrap a computation in :func:`tracking` and every BFS,
multi-source BFS and LexBFS executed in that context is recorded.  Counters
live in a context variable so concurrent threads never share one.
"""

from __future__ import annotations

import contextvars
from contextlib import contextmanager
from dataclasses import asdict, dataclass

_active: contextvars.ContextVar[list["WorkStats"]] = contextvars.ContextVar(
    "extremal_diam_stats", default=[]
)


@dataclass
class WorkStats:
    bfs_runs: int = 0
    lexbfs_runs: int = 0
    edges_scanned: int = 0

    @property
    def traversals(self) -> int:
        """All linear-time graph sweeps (plain BFS, multi-source BFS, LexBFS)."""
        return self.bfs_runs + self.lexbfs_runs

    def as_dict(self) -> dict:
        d = asdict(self)
        d["traversals"] = self.traversals
        return d


@contextmanager
def tracking():
    """Collect work counters for the enclosed block.

    Nested blocks each receive the traversals executed inside them.
    """
    stats = WorkStats()
    stack = _active.get()
    token = _active.set(stack + [stats])
    try:
        yield stats
    finally:
        _active.reset(token)


def note_bfs(edges: int) -> None:
    for s in _active.get():
        s.bfs_runs += 1
        s.edges_scanned += edges


def note_lexbfs(edges: int) -> None:
    for s in _active.get():
        s.lexbfs_runs += 1
        s.edges_scanned += edges

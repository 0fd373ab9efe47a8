"""Undirected simple graph over dense integer node ids ``0..n-1``."""

from __future__ import annotations

from collections import deque
from typing import Iterable, Iterator

import numpy as np
import scipy.sparse as sp


class Graph:
    """Undirected simple graph.

    Adjacency is a list of sets, one per node. Iteration helpers always
    return neighbors in ascending order so that seeded procedures consume
    random numbers in a fixed sequence.

    ``meta`` carries free-form provenance (generator family, parameters,
    interpretation notes); it never affects equality.
    """

    __slots__ = ("_adj", "_m", "_sorted", "meta")

    def __init__(self, n: int = 0):
        if n < 0:
            raise ValueError(f"node count must be non-negative, got {n}")
        self._adj: list[set[int]] = [set() for _ in range(n)]
        self._m = 0
        self._sorted: list[list[int]] | None = None
        self.meta: dict = {}

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        g = cls(n)
        for u, v in edges:
            g.add_edge(u, v)
        return g

    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def m(self) -> int:
        return self._m

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._adj == other._adj

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def _check(self, u: int) -> None:
        if not 0 <= u < len(self._adj):
            raise IndexError(f"node id {u} out of range [0, {len(self._adj)})")

    def add_node(self) -> int:
        """Append an isolated node and return its id."""
        self._adj.append(set())
        self._sorted = None
        return len(self._adj) - 1

    def add_edge(self, u: int, v: int) -> bool:
        """Insert edge ``{u, v}``; return False (and leave the graph alone)
        for self-loops and existing edges."""
        self._check(u)
        self._check(v)
        if u == v or v in self._adj[u]:
            return False
        self._adj[u].add(v)
        self._adj[v].add(u)
        self._m += 1
        self._sorted = None
        return True

    def remove_edge(self, u: int, v: int) -> bool:
        self._check(u)
        self._check(v)
        if v not in self._adj[u]:
            return False
        self._adj[u].discard(v)
        self._adj[v].discard(u)
        self._m -= 1
        self._sorted = None
        return True

    def has_edge(self, u: int, v: int) -> bool:
        self._check(u)
        self._check(v)
        return v in self._adj[u]

    def degree(self, u: int) -> int:
        self._check(u)
        return len(self._adj[u])

    def degrees(self) -> np.ndarray:
        return np.fromiter((len(a) for a in self._adj), dtype=np.int64, count=self.n)

    def neighbors(self, u: int) -> list[int]:
        """Sorted neighbor list of ``u`` (cached; do not mutate)."""
        self._check(u)
        return self.adjacency()[u]

    def neighbor_set(self, u: int) -> set[int]:
        self._check(u)
        return self._adj[u]

    def adjacency(self) -> list[list[int]]:
        if self._sorted is None:
            self._sorted = [sorted(a) for a in self._adj]
        return self._sorted

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v`` in lexicographic order."""
        for u, nbrs in enumerate(self.adjacency()):
            for v in nbrs:
                if v > u:
                    yield u, v

    def edge_array(self) -> np.ndarray:
        """``(m, 2)`` int array of edges in lexicographic order."""
        out = np.fromiter(
            (x for e in self.edges() for x in e), dtype=np.int64, count=2 * self.m
        )
        return out.reshape(-1, 2)

    def to_csr(self) -> sp.csr_matrix:
        """Symmetric 0/1 adjacency matrix."""
        n = self.n
        if self.m == 0:
            return sp.csr_matrix((n, n), dtype=np.int64)
        e = self.edge_array()
        rows = np.concatenate([e[:, 0], e[:, 1]])
        cols = np.concatenate([e[:, 1], e[:, 0]])
        data = np.ones(rows.size, dtype=np.int64)
        return sp.csr_matrix((data, (rows, cols)), shape=(n, n))

    def relabel(self, perm: Iterable[int]) -> "Graph":
        """Return a copy where node ``u`` becomes ``perm[u]``."""
        perm = list(perm)
        if sorted(perm) != list(range(self.n)):
            raise ValueError("perm must be a permutation of range(n)")
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def subgraph(self, nodes: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph, densely re-indexed. Returns the graph and the
        original id of each new node."""
        keep = sorted(set(nodes))
        index = {u: i for i, u in enumerate(keep)}
        sub = Graph(len(keep))
        for u in keep:
            for v in self._adj[u]:
                if v in index and u < v:
                    sub.add_edge(index[u], index[v])
        return sub, keep

    def check_invariants(self) -> None:
        """Full adjacency scan; raises AssertionError on any violation."""
        total = 0
        for u, nbrs in enumerate(self._adj):
            assert u not in nbrs, f"self-loop at {u}"
            for v in nbrs:
                assert 0 <= v < self.n, f"dangling neighbor {v} of {u}"
                assert u in self._adj[v], f"asymmetric edge {u}->{v}"
            total += len(nbrs)
        assert total == 2 * self._m, "handshake lemma violated"


def new_graph(n: int) -> Graph:
    return Graph(n)


def density(g: Graph) -> float:
    """Fraction of realised links among the n(n-1)/2 possible ones."""
    if g.n < 2:
        raise ValueError("density needs at least 2 nodes")
    return 2.0 * g.m / (g.n * (g.n - 1))


def components(g: Graph) -> list[list[int]]:
    """Connected components, each sorted, ordered by smallest member."""
    seen = [False] * g.n
    adj = g.adjacency()
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    comp.append(v)
                    queue.append(v)
        comp.sort()
        out.append(comp)
    return out


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        raise ValueError("connectivity is undefined for the empty graph")
    seen = bytearray(g.n)
    seen[0] = 1
    count = 1
    adj = g.adjacency()
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if not seen[v]:
                seen[v] = 1
                count += 1
                queue.append(v)
    return count == g.n


def largest_component(g: Graph) -> set[int]:
    """Largest connected node set; ties go to the component holding the
    smallest node id."""
    comps = components(g)
    if not comps:
        return set()
    # components() is ordered by smallest member, and max() keeps the first maximum
    return set(max(comps, key=len))

"""Immutable trees, basic metrics, text I/O and isomorphism keys."""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import BadIndex, MalformedLine, NotATree, OutOfRangeEntry

__all__ = [
    "Tree",
    "TreeMetrics",
    "parse_tree",
    "parse_tree_input",
    "format_edge_list",
    "from_prufer",
    "to_prufer",
    "distances_from",
    "distance_matrix",
    "metrics",
    "centroids",
    "canonical_form",
    "tagged_canonical_form",
    "path_graph",
    "star",
    "double_star",
]


@dataclass(frozen=True)
class Tree:
    """A tree on vertices ``0..n-1`` stored as sorted neighbor tuples.

    Build instances through :meth:`from_edges` (validating) rather than the
    raw constructor.
    """

    n: int
    adjacency: tuple[tuple[int, ...], ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Tree":
        if n < 1:
            raise NotATree(f"order must be at least 1, got {n}")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        count = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise BadIndex(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise NotATree(f"self-loop at {u}")
            if v in nbrs[u]:
                raise NotATree(f"duplicate edge ({u}, {v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
            count += 1
        if count != n - 1:
            raise NotATree(f"{count} edges on {n} vertices (need {n - 1})")
        adjacency = tuple(tuple(sorted(s)) for s in nbrs)
        tree = cls(n, adjacency)
        if min(distances_from(tree, 0)) < 0:
            raise NotATree("graph is disconnected")
        return tree

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adjacency)

    def attach_path(self, v: int, length: int) -> "Tree":
        """Return a new tree with a path of ``length`` fresh vertices hung off ``v``.

        The new vertices get indices ``n, n+1, ...`` in path order, the first
        one adjacent to ``v``.
        """
        nbrs = [list(a) for a in self.adjacency]
        prev = v
        for i in range(length):
            new = self.n + i
            nbrs.append([prev])
            nbrs[prev].append(new)
            prev = new
        return Tree(self.n + length, tuple(tuple(sorted(a)) for a in nbrs))

    def relabel(self, perm: Sequence[int]) -> "Tree":
        """Vertex ``v`` becomes ``perm[v]``."""
        return Tree.from_edges(self.n, [(perm[u], perm[v]) for u, v in self.edges()])


@dataclass(frozen=True)
class TreeMetrics:
    leaves: frozenset[int]
    supports: frozenset[int]
    diameter: int

    @property
    def l(self) -> int:  # noqa: E743
        return len(self.leaves)

    @property
    def s(self) -> int:
        return len(self.supports)


def path_graph(n: int) -> Tree:
    return Tree.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star(leaves: int) -> Tree:
    """K_{1,leaves} centered at vertex 0."""
    return Tree.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def double_star(a: int, b: int) -> Tree:
    """Two adjacent centers 0 and 1 carrying ``a`` and ``b`` leaves."""
    edges = [(0, 1)]
    edges += [(0, 2 + i) for i in range(a)]
    edges += [(1, 2 + a + i) for i in range(b)]
    return Tree.from_edges(a + b + 2, edges)


# -- text formats -------------------------------------------------------------


def parse_tree(text: str) -> Tree:
    """Parse the edge-list format: ``n`` on the first line, then ``u v`` lines."""
    lines = [ln.strip() for ln in text.splitlines()]
    while lines and not lines[-1]:
        lines.pop()
    if not lines or not lines[0]:
        raise MalformedLine("empty document")
    try:
        n = int(lines[0])
    except ValueError:
        raise MalformedLine(f"line 1: expected vertex count, got {lines[0]!r}") from None
    edges = []
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split()
        if len(parts) != 2:
            raise MalformedLine(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise MalformedLine(f"line {lineno}: non-integer vertex in {line!r}") from None
        edges.append((u, v))
    return Tree.from_edges(n, edges)


def parse_prufer_text(text: str) -> Tree:
    body = text.strip()[2:].strip()
    if not body:
        return from_prufer([])
    try:
        seq = [int(x) for x in body.split(",")]
    except ValueError:
        raise MalformedLine(f"bad Prüfer sequence {body!r}") from None
    return from_prufer(seq)


def parse_tree_input(text: str) -> Tree:
    """Accept either an edge list or a ``p:``-prefixed Prüfer sequence."""
    if text.lstrip().startswith("p:"):
        return parse_prufer_text(text)
    return parse_tree(text)


def format_edge_list(t: Tree) -> str:
    return "\n".join([str(t.n)] + [f"{u} {v}" for u, v in t.edges()]) + "\n"


def from_prufer(seq: Sequence[int]) -> Tree:
    n = len(seq) + 2
    for x in seq:
        if not 0 <= x < n:
            raise OutOfRangeEntry(f"entry {x} outside 0..{n - 1}")
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    heap = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(heap)
    edges = []
    for x in seq:
        leaf = heapq.heappop(heap)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(heap, x)
    edges.append((heapq.heappop(heap), heapq.heappop(heap)))
    return Tree.from_edges(n, edges)


def to_prufer(t: Tree) -> list[int]:
    if t.n < 2:
        raise NotATree("Prüfer sequences need at least 2 vertices")
    degree = list(t.degrees)
    removed = [False] * t.n
    heap = [v for v in range(t.n) if degree[v] == 1]
    heapq.heapify(heap)
    seq = []
    for _ in range(t.n - 2):
        leaf = heapq.heappop(heap)
        removed[leaf] = True
        (parent,) = [u for u in t.adjacency[leaf] if not removed[u]]
        seq.append(parent)
        degree[parent] -= 1
        if degree[parent] == 1:
            heapq.heappush(heap, parent)
    return seq


# -- metrics ------------------------------------------------------------------


def distances_from(t: Tree, v: int) -> list[int]:
    """BFS distances from ``v``; unreachable vertices get -1."""
    dist = [-1] * t.n
    dist[v] = 0
    queue = deque([v])
    while queue:
        u = queue.popleft()
        for w in t.adjacency[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def distance_matrix(t: Tree) -> list[list[int]]:
    return [distances_from(t, v) for v in range(t.n)]


def metrics(t: Tree) -> TreeMetrics:
    if t.n == 1:
        # degree-0 vertex reported as a leaf; bound checks skip n = 1
        return TreeMetrics(frozenset({0}), frozenset(), 0)
    leaves = frozenset(v for v in range(t.n) if t.degree(v) == 1)
    supports = frozenset(u for v in leaves for u in t.adjacency[v])
    # double sweep gives the exact diameter on trees
    d0 = distances_from(t, 0)
    far = d0.index(max(d0))
    diameter = max(distances_from(t, far))
    return TreeMetrics(leaves, supports, diameter)


# -- canonical forms ----------------------------------------------------------


def centroids(t: Tree) -> list[int]:
    """The one or two vertices minimizing the largest component after removal."""
    n = t.n
    order, parent = _bfs_order(t, 0)
    size = [1] * n
    for v in reversed(order):
        if parent[v] >= 0:
            size[parent[v]] += size[v]
    best = n
    result: list[int] = []
    for v in range(n):
        heaviest = n - size[v]
        for w in t.adjacency[v]:
            if w != parent[v]:
                heaviest = max(heaviest, size[w])
        if heaviest < best:
            best, result = heaviest, [v]
        elif heaviest == best:
            result.append(v)
    return result


def _bfs_order(t: Tree, root: int) -> tuple[list[int], list[int]]:
    parent = [-1] * t.n
    order = [root]
    seen = [False] * t.n
    seen[root] = True
    i = 0
    while i < len(order):
        u = order[i]
        i += 1
        for w in t.adjacency[u]:
            if not seen[w]:
                seen[w] = True
                parent[w] = u
                order.append(w)
    return order, parent


def _rooted_code(t: Tree, root: int, tags: Sequence[str] | None) -> str:
    order, parent = _bfs_order(t, root)
    children: list[list[str]] = [[] for _ in range(t.n)]
    code = ""
    for v in reversed(order):
        kids = children[v]
        if len(kids) > 1:
            kids.sort()
        code = (tags[v] if tags is not None else "") + "(" + "".join(kids) + ")"
        if v != root:
            children[parent[v]].append(code)
    return code


def tagged_canonical_form(t: Tree, tags: Sequence[str] | None = None) -> str:
    """AHU encoding rooted at the centroid; the smaller string if there are two.

    ``tags`` attaches a per-vertex string (e.g. a status letter) that must be
    preserved by the isomorphism. Tags must not contain parentheses.
    """
    return min(_rooted_code(t, c, tags) for c in centroids(t))


def canonical_form(t: Tree) -> str:
    return tagged_canonical_form(t, None)

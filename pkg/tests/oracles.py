"""Independent reference implementations used only by the tests.

None of these share code paths with the package beyond the Tree container.
"""

from __future__ import annotations

from itertools import combinations, product

import networkx as nx

from disjdom.tree import Tree


def edges_to_tree(n: int, edges) -> Tree:
    return Tree.from_edges(n, edges)


def to_nx(t: Tree) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(t.n))
    g.add_edges_from(t.edges())
    return g


def all_pairs(t: Tree) -> dict[int, dict[int, int]]:
    return dict(nx.all_pairs_shortest_path_length(to_nx(t)))


def is_2dd_by_matrix(t: Tree, d) -> bool:
    d = set(d)
    dist = all_pairs(t)
    for v in range(t.n):
        if v in d:
            continue
        if any(dist[v][u] == 1 for u in d):
            continue
        if sum(1 for u in d if dist[v][u] == 2) < 2:
            return False
    return True


def is_dominating_by_matrix(t: Tree, d) -> bool:
    d = set(d)
    dist = all_pairs(t)
    return all(v in d or any(dist[v][u] == 1 for u in d) for v in range(t.n))


def gamma_d2_exhaustive(t: Tree) -> int:
    for k in range(t.n + 1):
        for d in combinations(range(t.n), k):
            if is_2dd_by_matrix(t, d):
                return k
    raise AssertionError


def min_2dd_sets_exhaustive(t: Tree) -> list[tuple[int, ...]]:
    dist = all_pairs(t)

    def ok(d):
        s = set(d)
        return all(
            v in s
            or any(dist[v][u] == 1 for u in s)
            or sum(1 for u in s if dist[v][u] == 2) >= 2
            for v in range(t.n)
        )

    for k in range(t.n + 1):
        found = [d for d in combinations(range(t.n), k) if ok(d)]
        if found:
            return found
    raise AssertionError


def textbook_prufer_decode(seq) -> list[tuple[int, int]]:
    """Quadratic decode: repeatedly join the smallest current leaf to the next entry."""
    n = len(seq) + 2
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(v for v in range(n) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, w = [v for v in range(n) if degree[v] == 1]
    edges.append((u, w))
    return edges


def fast_prufer_tree(seq, n: int) -> Tree:
    """Linear-time decode straight into an adjacency tuple (no validation)."""
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    nbrs: list[list[int]] = [[] for _ in range(n)]
    ptr = 0
    while degree[ptr] != 1:
        ptr += 1
    leaf = ptr
    for x in seq:
        nbrs[leaf].append(x)
        nbrs[x].append(leaf)
        degree[x] -= 1
        if degree[x] == 1 and x < ptr:
            leaf = x
        else:
            ptr += 1
            while degree[ptr] != 1:
                ptr += 1
            leaf = ptr
    last = n - 1
    nbrs[leaf].append(last)
    nbrs[last].append(leaf)
    return Tree(n, tuple(tuple(sorted(a)) for a in nbrs))


def prufer_classes(n: int, key) -> set[str]:
    """Keys of every labeled tree on n vertices (all n^(n-2) sequences)."""
    if n == 1:
        return {key(Tree(1, ((),)))}
    if n == 2:
        return {key(Tree(2, ((1,), (0,))))}
    return {key(fast_prufer_tree(seq, n)) for seq in product(range(n), repeat=n - 2)}


def rooted_level_sequences(n: int):
    """All rooted unlabeled trees on n vertices as level sequences.

    Successor rule of Beyer and Hedetniemi, starting from the path.
    """
    level = list(range(n))
    while True:
        yield list(level)
        p = max((i for i in range(n) if level[i] > 1), default=None)
        if p is None:
            return
        q = max(i for i in range(p) if level[i] == level[p] - 1)
        for i in range(p, n):
            level[i] = level[i - (p - q)]


def level_sequence_tree(level) -> Tree:
    n = len(level)
    stack: list[int] = []
    edges = []
    for v, depth in enumerate(level):
        del stack[depth:]
        if stack:
            edges.append((stack[-1], v))
        stack.append(v)
    return Tree.from_edges(n, edges)


def free_trees_by_rooted_dedup(n: int, key) -> set[str]:
    return {key(level_sequence_tree(seq)) for seq in rooted_level_sequences(n)}


# number of free trees on n vertices (OEIS A000055), for n = 1..14
FREE_TREE_COUNTS = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301, 3159]

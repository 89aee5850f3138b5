"""Exact disjunctive domination: predicates, brute force, branch and bound.

Vertex sets are handled internally as Python int bitmasks (bit ``v`` set means
vertex ``v`` is a member). The brute-force routines vectorise each cardinality
level with numpy, which keeps trees of order 20 comfortably sub-second.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import combinations
from typing import Iterable

import numpy as np

from .errors import BadVertexIndex, OrderTooSmall, SizeCapExceeded
from .tree import Tree, distances_from, metrics

DEFAULT_BRUTE_CAP = 20


def brute_cap() -> int:
    """Brute-force order cap, overridable with ``DISJDOM_CAP``."""
    value = os.environ.get("DISJDOM_CAP")
    return int(value) if value else DEFAULT_BRUTE_CAP


class Justification(str, Enum):
    ADJACENT = "ADJACENT"
    TWO_AT_DIST2 = "TWO_AT_DIST2"


@dataclass(frozen=True)
class DominationCertificate:
    """Outcome of checking a candidate set.

    ``per_vertex`` maps every vertex outside the set that is covered to its
    justification and witnesses; ``undominated`` lists the ones that are not.
    """

    member_set: frozenset[int]
    per_vertex: dict[int, tuple[Justification, tuple[int, ...]]]
    undominated: tuple[int, ...]

    @property
    def valid(self) -> bool:
        return not self.undominated

    def validate(self, t: Tree) -> bool:
        """Re-check every justification against fresh BFS distances."""
        if not self.valid:
            return False
        for v in range(t.n):
            if v in self.member_set:
                if v in self.per_vertex:
                    return False
                continue
            if v not in self.per_vertex:
                return False
            tag, witnesses = self.per_vertex[v]
            if not set(witnesses) <= self.member_set:
                return False
            dist = distances_from(t, v)
            if tag is Justification.ADJACENT:
                if len(witnesses) != 1 or dist[witnesses[0]] != 1:
                    return False
            elif len(set(witnesses)) != 2 or any(dist[w] != 2 for w in witnesses):
                return False
        return True

    def as_dict(self) -> dict:
        return {
            "valid": self.valid,
            "set": sorted(self.member_set),
            "justifications": {
                str(v): {"tag": tag.value, "witnesses": list(w)}
                for v, (tag, w) in sorted(self.per_vertex.items())
            },
            "undominated": list(self.undominated),
        }


@dataclass(frozen=True)
class SolveResult:
    n: int
    gamma_d2: int
    witness: tuple[int, ...]
    method: str
    nodes_explored: int

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "gamma_d2": self.gamma_d2,
            "witness": list(self.witness),
            "method": self.method,
            "nodes_explored": self.nodes_explored,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict())


@dataclass(frozen=True)
class _Balls:
    closed: tuple[int, ...]  # N[v]
    dist2: tuple[int, ...]  # vertices at distance exactly 2
    ball2: tuple[int, ...]  # closed distance-2 ball
    full: int = field(default=0)


@lru_cache(maxsize=4096)
def _balls(t: Tree) -> _Balls:
    closed, dist2 = [], []
    for v in range(t.n):
        c = 1 << v
        for u in t.adjacency[v]:
            c |= 1 << u
        closed.append(c)
    for v in range(t.n):
        d2 = 0
        for u in t.adjacency[v]:
            for w in t.adjacency[u]:
                if w != v:
                    d2 |= 1 << w
        dist2.append(d2)
    ball2 = tuple(c | d for c, d in zip(closed, dist2))
    return _Balls(tuple(closed), tuple(dist2), ball2, (1 << t.n) - 1)


def _mask(t: Tree, vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        if not isinstance(v, (int, np.integer)) or not 0 <= v < t.n:
            raise BadVertexIndex(f"vertex {v!r} is not in 0..{t.n - 1}")
        m |= 1 << int(v)
    return m


def _members(mask: int) -> tuple[int, ...]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def _covered(b: _Balls, v: int, mask: int) -> bool:
    return bool(b.closed[v] & mask) or (b.dist2[v] & mask).bit_count() >= 2


def _all_covered(b: _Balls, mask: int, exempt: int = 0) -> bool:
    for v in range(len(b.closed)):
        if exempt >> v & 1:
            continue
        if not (b.closed[v] & mask) and (b.dist2[v] & mask).bit_count() < 2:
            return False
    return True


# -- predicates ---------------------------------------------------------------


def check_2dd_set(t: Tree, vertices: Iterable[int]) -> DominationCertificate:
    """Check a candidate set and justify each outside vertex.

    Adjacency is preferred as a justification when both apply; witnesses are
    the lowest-indexed qualifying members.
    """
    mask = _mask(t, vertices)
    b = _balls(t)
    per_vertex: dict[int, tuple[Justification, tuple[int, ...]]] = {}
    undominated = []
    for v in range(t.n):
        if mask >> v & 1:
            continue
        adj = (b.closed[v] & mask)
        if adj:
            per_vertex[v] = (Justification.ADJACENT, (_members(adj)[0],))
            continue
        far = _members(b.dist2[v] & mask)
        if len(far) >= 2:
            per_vertex[v] = (Justification.TWO_AT_DIST2, far[:2])
        else:
            undominated.append(v)
    return DominationCertificate(frozenset(_members(mask)), per_vertex, tuple(undominated))


def is_2dd_set(t: Tree, vertices: Iterable[int]) -> bool:
    return _all_covered(_balls(t), _mask(t, vertices))


def is_dominating_set(t: Tree, vertices: Iterable[int]) -> bool:
    mask = _mask(t, vertices)
    return all(_balls(t).closed[v] & mask for v in range(t.n))


def two_d_dominated(t: Tree, vertices: Iterable[int], v: int) -> bool:
    """Whether the single vertex ``v`` is 2D-dominated by the set."""
    return _covered(_balls(t), v, _mask(t, vertices))


# -- brute force --------------------------------------------------------------


@lru_cache(maxsize=512)
def _combination_masks(n: int, k: int) -> np.ndarray:
    """All k-subsets of range(n) as int64 masks, in lexicographic order."""
    bits = [1 << v for v in range(n)]
    count = 1
    for i in range(k):
        count = count * (n - i) // (i + 1)
    return np.fromiter((sum(c) for c in combinations(bits, k)), dtype=np.int64, count=count)


def _passing(masks: np.ndarray, closed: Iterable[int], dist2: Iterable[int], exempt: int = 0) -> np.ndarray:
    ok = np.ones(masks.shape, dtype=bool)
    for v, (c, d) in enumerate(zip(closed, dist2)):
        if exempt >> v & 1:
            continue
        hit = (masks & c) != 0
        hit |= np.bitwise_count(masks & d) >= 2
        ok &= hit
    return ok


def _check_cap(t: Tree, cap: int | None) -> None:
    cap = brute_cap() if cap is None else cap
    if t.n > cap:
        raise SizeCapExceeded(f"order {t.n} exceeds brute-force cap {cap}")
    if t.n > 62:
        raise SizeCapExceeded("brute force is limited to 62 vertices")


def _brute_min(t: Tree, closed, dist2, cap: int | None, all_sets: bool):
    _check_cap(t, cap)
    explored = 0
    for k in range(0, t.n + 1):
        masks = _combination_masks(t.n, k)
        ok = _passing(masks, closed, dist2)
        hits = np.flatnonzero(ok)
        if hits.size:
            if all_sets:
                return k, [_members(int(m)) for m in masks[hits]], explored + masks.size
            return k, [_members(int(masks[hits[0]]))], explored + int(hits[0]) + 1
        explored += masks.size
    raise AssertionError("the full vertex set always passes")


def gamma_d2_brute(t: Tree, cap: int | None = None) -> SolveResult:
    """Minimum 2DD-set by scanning subsets in increasing size, lexicographically."""
    b = _balls(t)
    k, (witness,), explored = _brute_min(t, b.closed, b.dist2, cap, all_sets=False)
    return SolveResult(t.n, k, witness, "brute", explored)


def enumerate_min_2dd_sets(t: Tree, cap: int | None = None) -> list[tuple[int, ...]]:
    b = _balls(t)
    return _brute_min(t, b.closed, b.dist2, cap, all_sets=True)[1]


def domination_number_brute(t: Tree, cap: int | None = None) -> int:
    """Classic domination number, for the γ²ᵈ ≤ γ cross-check."""
    b = _balls(t)
    return _brute_min(t, b.closed, [0] * t.n, cap, all_sets=False)[0]


def leafless_min_witness(t: Tree, cap: int | None = None) -> tuple[int, ...] | None:
    """A minimum 2DD-set avoiding every leaf, or None if there is none."""
    if t.n < 3:
        raise OrderTooSmall(f"need at least 3 vertices, got {t.n}")
    leaves = metrics(t).leaves
    for d in enumerate_min_2dd_sets(t, cap):
        if leaves.isdisjoint(d):
            return d
    return None


def sets_covering_all_but(
    t: Tree, size: int, exempt: int, required: int, cap: int | None = None
) -> tuple[int, ...] | None:
    """First set of ``size`` containing ``required`` that 2D-dominates all but ``exempt``."""
    _check_cap(t, cap)
    if size < 1:
        return None
    b = _balls(t)
    others = [v for v in range(t.n) if v != required]
    sub = _combination_masks(len(others), size - 1)
    # remap bit positions of the (n-1)-vertex universe back onto the tree
    masks = np.zeros(sub.shape, dtype=np.int64)
    for i, v in enumerate(others):
        masks |= ((sub >> i) & 1) << v
    masks |= 1 << required
    ok = _passing(masks, b.closed, b.dist2, exempt=1 << exempt)
    hits = np.flatnonzero(ok)
    if not hits.size:
        return None
    return min(_members(int(m)) for m in masks[hits])


# -- branch and bound ---------------------------------------------------------


class _BnB:
    """Branch and bound with independent-component splitting.

    ``_solve`` returns ``(cost, extra)``: the fewest extra members covering the
    given pending vertices, and one such extra set. A cost above ``budget``
    only means "over budget" and carries no witness.
    """

    def __init__(self, t: Tree):
        self.b = _balls(t)
        self.n = t.n
        self.nodes = 0
        self.memo: dict[tuple[int, int, int], tuple[int, int, bool]] = {}

    def _pending(self, region: int, mask: int) -> int:
        b = self.b
        out = 0
        for v in _members(region):
            if not b.closed[v] & mask and (b.dist2[v] & mask).bit_count() < 2:
                out |= 1 << v
        return out

    def _components(self, pending: int, avail: int) -> list[int]:
        # pending vertices sharing an available option must be solved together
        ball2 = self.b.ball2
        comps = []
        rest = pending
        while rest:
            low = rest & -rest
            rest ^= low
            comp, opts = low, ball2[low.bit_length() - 1] & avail
            grown = True
            while grown:
                grown = False
                for v in _members(rest):
                    if ball2[v] & opts:
                        comp |= 1 << v
                        rest ^= 1 << v
                        opts |= ball2[v] & avail
                        grown = True
            comps.append(comp)
        return comps

    def _packing(self, pending: int, avail: int) -> int:
        # pending vertices with pairwise disjoint options each need their own member
        ball2 = self.b.ball2
        used = count = 0
        for v in sorted(_members(pending), key=lambda v: (ball2[v] & avail).bit_count()):
            opts = ball2[v] & avail
            if not opts & used:
                used |= opts
                count += 1
        return count

    def _solve(self, region: int, mask: int, excluded: int, budget: int) -> tuple[int, int]:
        self.nodes += 1
        pending = self._pending(region, mask)
        if not pending:
            return 0, 0
        if budget <= 0:
            return 1, 0
        avail = self.b.full & ~mask & ~excluded
        comps = self._components(pending, avail)
        if len(comps) == 1:
            return self._solve_component(pending, mask, excluded, budget)
        bounds = [self._packing(c, avail) for c in comps]
        if sum(bounds) > budget:
            return sum(bounds), 0
        total = extra = 0
        for i, comp in enumerate(comps):
            allowed = budget - total - sum(bounds[i + 1:])
            cost, chosen = self._solve_component(comp, mask, excluded, allowed)
            if cost > allowed:
                return budget + 1, 0
            total += cost
            extra |= chosen
        return total, extra

    def _solve_component(self, pending: int, mask: int, excluded: int, budget: int) -> tuple[int, int]:
        ball2 = self.b.ball2
        relevant = 0
        for v in _members(pending):
            relevant |= ball2[v]
        key = (pending, mask & relevant, excluded & relevant)
        hit = self.memo.get(key)
        if hit is not None:
            cost, chosen, exact = hit
            if exact or cost > budget:
                return cost, chosen
        avail = self.b.full & ~mask & ~excluded
        if any(not ball2[v] & avail for v in _members(pending)):
            self.memo[key] = (self.n + 1, 0, True)
            return self.n + 1, 0
        bound = self._packing(pending, avail)
        if bound > budget:
            return bound, 0
        # fewest remaining options first, ties to the lowest index
        pivot = min(_members(pending), key=lambda v: ((ball2[v] & avail).bit_count(), v))
        best, best_set = budget + 1, 0
        for u in _members(ball2[pivot] & avail):
            cost, chosen = self._solve(pending, mask | 1 << u, excluded, best - 2)
            if cost + 1 < best:
                best, best_set = cost + 1, chosen | 1 << u
            excluded |= 1 << u
        if best <= budget:
            self.memo[key] = (best, best_set, True)
        else:
            self.memo[key] = (budget + 1, 0, False)
        return best, best_set


def _greedy(b: _Balls, n: int) -> int:
    mask = 0
    while not _all_covered(b, mask):
        def gain(u: int) -> int:
            m = mask | 1 << u
            return sum(1 for v in range(n) if _covered(b, v, m))

        best = max((u for u in range(n) if not mask >> u & 1), key=lambda u: (gain(u), -u))
        mask |= 1 << best
    return mask


def gamma_d2_bnb(t: Tree) -> SolveResult:
    """Exact γ²ᵈ by branching on the closed distance-2 ball of an uncovered vertex.

    The greedy cover seeds the incumbent; the search only looks for strictly
    smaller sets and falls back to the greedy one when none exists.
    """
    b = _balls(t)
    incumbent = _greedy(b, t.n)
    solver = _BnB(t)
    cost, chosen = solver._solve(b.full, 0, 0, incumbent.bit_count() - 1)
    if cost >= incumbent.bit_count():
        chosen = incumbent
    return SolveResult(t.n, chosen.bit_count(), _members(chosen), "branch-and-bound", solver.nodes)


def gamma_d2(t: Tree, method: str = "auto", cap: int | None = None) -> SolveResult:
    if method == "brute":
        return gamma_d2_brute(t, cap)
    if method in ("bnb", "branch-and-bound"):
        return gamma_d2_bnb(t)
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    limit = brute_cap() if cap is None else cap
    return gamma_d2_brute(t, cap) if t.n <= min(limit, 16) else gamma_d2_bnb(t)


"""All non-isomorphic free trees of small order, and seeded random trees."""

from __future__ import annotations

import random
from functools import lru_cache

from .errors import CapExceeded, DisjDomError
from .tree import Tree, canonical_form, from_prufer

MAX_ORDER = 14


@lru_cache(maxsize=None)
def _classes(n: int) -> tuple[tuple[str, Tree], ...]:
    if n == 1:
        t = Tree(1, ((),))
        return ((canonical_form(t), t),)
    seen: dict[str, Tree] = {}
    for _, parent in _classes(n - 1):
        for v in range(parent.n):
            child = parent.attach_path(v, 1)
            key = canonical_form(child)
            if key not in seen:
                seen[key] = child
    return tuple(sorted(seen.items()))


def all_trees(n: int) -> list[Tree]:
    """One tree per isomorphism class on ``n`` vertices, sorted by canonical form.

    Every tree of order n >= 2 arises from one of order n-1 by adding a leaf,
    so growing each class representative at every vertex and deduplicating
    reaches every class.
    """
    if not 1 <= n <= MAX_ORDER:
        raise CapExceeded(f"order must be in 1..{MAX_ORDER}, got {n}")
    return [t for _, t in _classes(n)]


def all_trees_with_keys(n: int) -> list[tuple[str, Tree]]:
    if not 1 <= n <= MAX_ORDER:
        raise CapExceeded(f"order must be in 1..{MAX_ORDER}, got {n}")
    return list(_classes(n))


def random_tree(n: int, seed: int) -> Tree:
    """Uniform over labeled trees on ``n`` vertices via a random Prüfer sequence."""
    if n < 2:
        raise DisjDomError(f"random trees need n >= 2, got {n}")
    rng = random.Random(seed)
    return from_prufer([rng.randrange(n) for _ in range(n - 2)])

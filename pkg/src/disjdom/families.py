"""Status-labeled trees and the two extremal families built from labeled paths.

A labeled tree assigns each vertex one of the letters A, B, C, D. The first
family grows from the path C-A-C using ``O1`` (hang a C leaf off an A vertex)
and ``O3`` (extend a C leaf by the path D-B-A-C). The second grows from
C-A-A-C, whose four vertices are remembered as the *basic path*, using
``O2``/``O4`` (hang an A-C pendant path off a B or off-path A vertex that has
a degree-two corresponding vertex) and ``O3``.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Literal

from .errors import (
    CapExceeded,
    MissingStatus,
    NotALeaf,
    PreconditionViolated,
    WrongFamily,
    WrongStatus,
)
from .solver import gamma_d2, is_2dd_set, sets_covering_all_but
from .tree import Tree, canonical_form, metrics, path_graph, tagged_canonical_form

Status = Literal["A", "B", "C", "D"]
Family = Literal["T1", "T2"]

FAMILY_CAP = 14
OPERATIONS = {"T1": ("O1", "O3"), "T2": ("O2", "O3", "O4")}


@dataclass(frozen=True)
class LabeledTree:
    tree: Tree
    status: str
    family: str
    basic_path: tuple[int, ...] | None = None
    derivation: tuple[tuple[str, int], ...] = ()

    def __post_init__(self) -> None:
        if len(self.status) != self.tree.n or set(self.status) - set("ABCD"):
            raise MissingStatus(
                f"need one of A/B/C/D for each of {self.tree.n} vertices, got {self.status!r}"
            )
        if self.family not in OPERATIONS:
            raise WrongFamily(f"unknown family {self.family!r}")

    def sta(self, v: int) -> str:
        return self.status[v]

    def with_vertices(self, op: str, v: int, statuses: str) -> "LabeledTree":
        return LabeledTree(
            self.tree.attach_path(v, len(statuses)),
            self.status + statuses,
            self.family,
            self.basic_path,
            self.derivation + ((op, v),),
        )


def base_tree(family: str) -> LabeledTree:
    if family == "T1":
        return LabeledTree(path_graph(3), "CAC", "T1")
    if family == "T2":
        return LabeledTree(path_graph(4), "CAAC", "T2", (0, 1, 2, 3))
    raise WrongFamily(f"unknown family {family!r}")


def labeled_canonical_form(lt: LabeledTree) -> str:
    """Isomorphism key that respects statuses and the basic-path marker."""
    on_path = set(lt.basic_path or ())
    tags = [lt.status[v] + ("*" if v in on_path else "") for v in range(lt.tree.n)]
    return tagged_canonical_form(lt.tree, tags)


# -- corresponding vertices ---------------------------------------------------


def _pattern_ends(lt: LabeledTree, start: int, middle: str, end: str) -> set[int]:
    """Vertices x with a path start-y-z-x where sta(y), sta(z) follow ``middle``."""
    adj = lt.tree.adjacency
    found = set()
    for y in adj[start]:
        if lt.status[y] != middle[0]:
            continue
        for z in adj[y]:
            if z == start or lt.status[z] != middle[1]:
                continue
            for x in adj[z]:
                if x != y and lt.status[x] == end:
                    found.add(x)
    return found


def corresponding_vertices(lt: LabeledTree, v: int) -> set[int]:
    s = lt.status[v]
    if s == "A":
        if v in metrics(lt.tree).supports or v in (lt.basic_path or ()):
            return set()
        return _pattern_ends(lt, v, "CD", "B")
    if s == "B":
        return _pattern_ends(lt, v, "DC", "A")
    raise WrongStatus(f"vertex {v} has status {s}; corresponding vertices need A or B")


def _has_degree_two_partner(lt: LabeledTree, v: int) -> bool:
    return any(lt.tree.degree(u) == 2 for u in corresponding_vertices(lt, v))


# -- operations ---------------------------------------------------------------


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise PreconditionViolated(message)


def _check_vertex(lt: LabeledTree, v: int) -> None:
    _require(0 <= v < lt.tree.n, f"vertex {v} not in tree of order {lt.tree.n}")


def apply_O1(lt: LabeledTree, v: int) -> LabeledTree:
    _check_vertex(lt, v)
    _require(lt.family == "T1", "O1 belongs to T1")
    _require(lt.status[v] == "A", f"O1 needs an A vertex, {v} is {lt.status[v]}")
    return lt.with_vertices("O1", v, "C")


def apply_O2(lt: LabeledTree, v: int) -> LabeledTree:
    _check_vertex(lt, v)
    _require(lt.family == "T2", "O2 belongs to T2")
    _require(lt.status[v] == "B", f"O2 needs a B vertex, {v} is {lt.status[v]}")
    _require(_has_degree_two_partner(lt, v), f"{v} has no corresponding vertex of degree 2")
    return lt.with_vertices("O2", v, "AC")


def apply_O3(lt: LabeledTree, v: int) -> LabeledTree:
    _check_vertex(lt, v)
    _require(lt.status[v] == "C", f"O3 needs a C vertex, {v} is {lt.status[v]}")
    _require(lt.tree.degree(v) == 1, f"O3 needs a leaf, {v} has degree {lt.tree.degree(v)}")
    return lt.with_vertices("O3", v, "DBAC")


def apply_O4(lt: LabeledTree, v: int) -> LabeledTree:
    _check_vertex(lt, v)
    _require(lt.family == "T2", "O4 belongs to T2")
    _require(v not in (lt.basic_path or ()), f"{v} lies on the basic path")
    _require(lt.status[v] == "A", f"O4 needs an A vertex, {v} is {lt.status[v]}")
    _require(_has_degree_two_partner(lt, v), f"{v} has no corresponding vertex of degree 2")
    return lt.with_vertices("O4", v, "AC")


APPLY = {"O1": apply_O1, "O2": apply_O2, "O3": apply_O3, "O4": apply_O4}


def apply_operation(lt: LabeledTree, op: str, v: int) -> LabeledTree:
    if op not in OPERATIONS[lt.family]:
        raise PreconditionViolated(f"{op} is not an operation of {lt.family}")
    return APPLY[op](lt, v)


def legal_moves(lt: LabeledTree) -> list[tuple[str, int]]:
    moves = []
    for op in OPERATIONS[lt.family]:
        for v in range(lt.tree.n):
            try:
                APPLY[op](lt, v)
            except PreconditionViolated:
                continue
            moves.append((op, v))
    return moves


def replay(family: str, derivation) -> LabeledTree:
    lt = base_tree(family)
    for op, v in derivation:
        lt = apply_operation(lt, op, v)
    return lt


# -- catalogs -----------------------------------------------------------------


@dataclass
class FamilyCatalog:
    family: str
    cap: int
    members: dict[int, dict[str, LabeledTree]] = field(default_factory=dict)

    def __iter__(self):
        for n in sorted(self.members):
            for key in sorted(self.members[n]):
                yield self.members[n][key]

    def __len__(self) -> int:
        return sum(len(m) for m in self.members.values())

    def projection(self, n: int | None = None) -> set[str]:
        """Unlabeled canonical forms, optionally restricted to one order."""
        orders = [n] if n is not None else list(self.members)
        return {canonical_form(lt.tree) for k in orders for lt in self.members.get(k, {}).values()}

    def by_shape(self) -> dict[str, list[LabeledTree]]:
        shapes: dict[str, list[LabeledTree]] = {}
        for lt in self:
            shapes.setdefault(canonical_form(lt.tree), []).append(lt)
        return shapes

    def __contains__(self, lt: object) -> bool:
        if not isinstance(lt, LabeledTree):
            return False
        return labeled_canonical_form(lt) in self.members.get(lt.tree.n, {})

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "cap": self.cap,
            "members": [
                {
                    "n": lt.tree.n,
                    "canonical": labeled_canonical_form(lt),
                    "unlabeled": canonical_form(lt.tree),
                    "edges": [list(e) for e in lt.tree.edges()],
                    "status": lt.status,
                    "basic_path": list(lt.basic_path) if lt.basic_path else None,
                    "derivation": [list(step) for step in lt.derivation],
                }
                for lt in self
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=1)

    @classmethod
    def from_dict(cls, data: dict) -> "FamilyCatalog":
        catalog = cls(data["family"], data["cap"])
        for m in data["members"]:
            lt = LabeledTree(
                Tree.from_edges(m["n"], [tuple(e) for e in m["edges"]]),
                m["status"],
                data["family"],
                tuple(m["basic_path"]) if m["basic_path"] else None,
                tuple((op, v) for op, v in m["derivation"]),
            )
            catalog.members.setdefault(m["n"], {})[labeled_canonical_form(lt)] = lt
        return catalog


def enumerate_family(family: str, n_max: int, cap: int = FAMILY_CAP) -> FamilyCatalog:
    """Closure of the base labeled tree under the family's operations, up to ``n_max``."""
    base = base_tree(family)
    if n_max > cap:
        raise CapExceeded(f"n_max {n_max} exceeds the family cap {cap}")
    if n_max < base.tree.n:
        raise CapExceeded(f"{family} starts at order {base.tree.n}, got n_max {n_max}")
    catalog = FamilyCatalog(family, n_max)
    catalog.members[base.tree.n] = {labeled_canonical_form(base): base}
    queue = deque([base])
    while queue:
        lt = queue.popleft()
        for op, v in legal_moves(lt):
            child = APPLY[op](lt, v)
            if child.tree.n > n_max:
                continue
            key = labeled_canonical_form(child)
            level = catalog.members.setdefault(child.tree.n, {})
            if key not in level:
                level[key] = child
                queue.append(child)
    return catalog


def sa_set(lt: LabeledTree) -> frozenset[int]:
    return frozenset(v for v, s in enumerate(lt.status) if s == "A")


# -- audits -------------------------------------------------------------------


@dataclass
class AuditReport:
    family: str
    violations: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _leaf_support_status(lt: LabeledTree, report: AuditReport) -> None:
    m = metrics(lt.tree)
    if any(lt.status[v] != "A" for v in m.supports) or any(lt.status[v] != "C" for v in m.leaves):
        report.violations.append("supports_A_leaves_C")


def audit_T1(lt: LabeledTree) -> AuditReport:
    if lt.family != "T1":
        raise WrongFamily("audit_T1 needs a T1 labeled tree")
    t, st = lt.tree, lt.status
    report = AuditReport("T1")
    _leaf_support_status(lt, report)
    if any(st[u] not in "BC" for v in range(t.n) if st[v] == "A" for u in t.adjacency[v]):
        report.violations.append("A_neighbors_B_or_C")
    if not is_2dd_set(t, sa_set(lt)):
        report.violations.append("S_A_is_2dd")
    if any(st[u] == st[v] for u, v in t.edges()):
        report.violations.append("classes_independent")
    if any(st[v] != "A" and t.degree(v) > 2 for v in range(t.n)):
        report.violations.append("non_A_degree_at_most_2")
    return report


def _component_containing(t: Tree, start: int, cut: tuple[int, int]) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in t.adjacency[u]:
            if {u, w} == set(cut) or w in seen:
                continue
            seen.add(w)
            stack.append(w)
    return seen


def audit_T2(lt: LabeledTree) -> AuditReport:
    if lt.family != "T2":
        raise WrongFamily("audit_T2 needs a T2 labeled tree")
    t, st = lt.tree, lt.status
    report = AuditReport("T2")
    _leaf_support_status(lt, report)
    if not is_2dd_set(t, sa_set(lt)):
        report.violations.append("S_A_is_2dd")
    for v in range(t.n):
        if st[v] not in "AB":
            continue
        partners = corresponding_vertices(lt, v)
        if len(partners) > 1:
            report.violations.append(f"at_most_one_corresponding:{v}")
        if not any(t.degree(u) == 2 for u in partners) and t.degree(v) != 2:
            report.violations.append(f"no_partner_means_degree_2:{v}")
    if any(t.degree(v) != 2 for v in metrics(t).supports):
        report.violations.append("supports_degree_2")
    path = set(lt.basic_path or ())
    for v in range(t.n):
        if st[v] != "C" or t.degree(v) != 2:
            continue
        a_side = [u for u in t.adjacency[v] if st[u] == "A"]
        d_side = [w for w in t.adjacency[v] if st[w] == "D"]
        if len(a_side) != 1 or len(d_side) != 1:
            report.violations.append(f"degree_2_C_between_A_and_D:{v}")
            continue
        u, w = a_side[0], d_side[0]
        if t.degree(u) == 2:
            holds = path <= _component_containing(t, v, (v, w))
            report.notes.append(f"C vertex {v}: A-side component holds basic path: {holds}")
    return report


def audit(lt: LabeledTree) -> AuditReport:
    return audit_T1(lt) if lt.family == "T1" else audit_T2(lt)


# -- membership and near witnesses -------------------------------------------


def equality_holds(family: str, n: int, l: int, s: int, gamma: int) -> bool:  # noqa: E741
    """Integer form of the bound equality characterising each family."""
    if family == "T1":
        return 4 * gamma == n - l + 3
    return 4 * gamma == n + l + s


@dataclass(frozen=True)
class MembershipVerdict:
    family: str
    catalog_in: bool
    equality_in: bool
    gamma_d2: int

    @property
    def verdict(self) -> str:
        return "IN" if self.catalog_in else "OUT"

    @property
    def theorem_violation(self) -> bool:
        return self.catalog_in != self.equality_in

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "verdict": self.verdict,
            "catalog": "IN" if self.catalog_in else "OUT",
            "equality": "IN" if self.equality_in else "OUT",
            "gamma_d2": self.gamma_d2,
            "theorem_violation": self.theorem_violation,
        }


def membership(tree: Tree, family: str, catalog: FamilyCatalog, method: str = "auto") -> MembershipVerdict:
    """Decide membership by catalog lookup and, independently, by the bound equality."""
    if catalog.family != family:
        raise WrongFamily(f"catalog holds {catalog.family}, asked about {family}")
    if tree.n > catalog.cap:
        raise CapExceeded(f"order {tree.n} exceeds catalog cap {catalog.cap}")
    in_catalog = canonical_form(tree) in catalog.projection(tree.n)
    m = metrics(tree)
    gamma = gamma_d2(tree, method).gamma_d2
    return MembershipVerdict(family, in_catalog, equality_holds(family, tree.n, m.l, m.s, gamma), gamma)


def near_witness(lt: LabeledTree, v: int) -> tuple[int, ...] | None:
    """Set one smaller than the T2 bound that covers everything but leaf ``v``.

    It must contain the non-leaf neighbor of ``v``'s support vertex. Returns
    None when no such set exists.
    """
    if lt.family != "T2":
        raise WrongFamily("near witnesses are defined for T2 members")
    t = lt.tree
    m = metrics(t)
    if v not in m.leaves:
        raise NotALeaf(f"vertex {v} is not a leaf")
    total = t.n + m.s + m.l
    if total % 4:
        return None
    (support,) = t.adjacency[v]
    inner = [u for u in t.adjacency[support] if u not in m.leaves]
    if len(inner) != 1:
        return None
    return sets_covering_all_but(t, total // 4 - 1, exempt=v, required=inner[0], cap=64)

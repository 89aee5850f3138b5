import json

import pytest

from disjdom.enumeration import all_trees
from disjdom.errors import (
    CapExceeded,
    MissingStatus,
    NotALeaf,
    PreconditionViolated,
    WrongFamily,
    WrongStatus,
)
from disjdom.families import (
    FamilyCatalog,
    LabeledTree,
    apply_O1,
    apply_O2,
    apply_O3,
    apply_O4,
    apply_operation,
    audit,
    audit_T1,
    audit_T2,
    base_tree,
    corresponding_vertices,
    enumerate_family,
    labeled_canonical_form,
    legal_moves,
    membership,
    near_witness,
    replay,
    sa_set,
)
from disjdom.solver import gamma_d2_brute, is_2dd_set
from disjdom.tree import Tree, canonical_form, metrics, path_graph, star

P8_T2 = replay("T2", [("O3", 3)])
P7_T1 = replay("T1", [("O3", 2)])


def test_o3_examples():
    assert P7_T1.tree == path_graph(7)
    assert P7_T1.status == "CACDBAC"
    assert P8_T2.tree == path_graph(8)
    assert P8_T2.status == "CAACDBAC"
    assert P8_T2.basic_path == (0, 1, 2, 3)


def test_o3_needs_a_leaf():
    with pytest.raises(PreconditionViolated):
        apply_O3(P8_T2, 3)  # C but degree 2
    with pytest.raises(PreconditionViolated):
        apply_O3(P8_T2, 1)


def test_corresponding_vertices_examples():
    assert corresponding_vertices(P8_T2, 5) == {2}
    assert corresponding_vertices(P8_T2, 6) == set()
    assert corresponding_vertices(base_tree("T2"), 1) == set()
    with pytest.raises(WrongStatus):
        corresponding_vertices(P8_T2, 3)
    with pytest.raises(WrongStatus):
        corresponding_vertices(P8_T2, 4)


def test_o1_examples():
    k13 = apply_O1(base_tree("T1"), 1)
    assert canonical_form(k13.tree) == canonical_form(star(3))
    assert k13.status == "CACC"
    k14 = apply_O1(k13, 1)
    assert canonical_form(k14.tree) == canonical_form(star(4))
    with pytest.raises(PreconditionViolated):
        apply_O1(base_tree("T1"), 0)
    with pytest.raises(PreconditionViolated):
        apply_O1(base_tree("T2"), 1)


def test_o2_examples():
    grown = apply_O2(P8_T2, 5)
    assert grown.tree.n == 10
    assert grown.status == "CAACDBACAC"
    assert grown.tree.adjacency[5] == (4, 6, 8)
    assert audit_T2(grown).ok
    for v in range(4):
        with pytest.raises(PreconditionViolated):
            apply_O2(base_tree("T2"), v)


def test_o2_rejects_degree_three_partner():
    # hang an extra leaf on v2 so the only partner of B vertex v5 has degree 3
    heavy = LabeledTree(P8_T2.tree.attach_path(2, 1), P8_T2.status + "C", "T2", P8_T2.basic_path)
    assert corresponding_vertices(heavy, 5) == {2}
    assert heavy.tree.degree(2) == 3
    with pytest.raises(PreconditionViolated):
        apply_O2(heavy, 5)


def test_o4_legal_after_o3_moves_leaf_away():
    lt = replay("T2", [("O3", 3), ("O3", 7)])
    # A vertex 6 lost its leaf 7 and now has the degree-2 B vertex 9 as partner
    assert 6 not in metrics(lt.tree).supports
    assert corresponding_vertices(lt, 6) == {9}
    grown = apply_O4(lt, 6)
    assert grown.status.endswith("AC")
    assert audit_T2(grown).ok
    assert ("O4", 6) in legal_moves(lt)


def test_o4_gates():
    with pytest.raises(PreconditionViolated):
        apply_O4(base_tree("T2"), 1)  # on the basic path
    with pytest.raises(PreconditionViolated):
        apply_O4(P8_T2, 6)  # support vertex, no partner
    with pytest.raises(PreconditionViolated):
        apply_O4(P7_T1, 5)  # wrong family


def test_apply_operation_checks_family():
    with pytest.raises(PreconditionViolated):
        apply_operation(base_tree("T1"), "O2", 1)
    with pytest.raises(PreconditionViolated):
        apply_O1(base_tree("T1"), 7)


def test_labeled_canonical_examples():
    a = LabeledTree(path_graph(3), "CAC", "T1")
    b = LabeledTree(path_graph(3).relabel([2, 1, 0]), "CAC", "T1")
    c = LabeledTree(path_graph(3), "ACC", "T1")
    assert labeled_canonical_form(a) == labeled_canonical_form(b)
    assert labeled_canonical_form(a) != labeled_canonical_form(c)
    fwd = base_tree("T2")
    rev = LabeledTree(path_graph(4).relabel([3, 2, 1, 0]), "CAAC", "T2", (3, 2, 1, 0))
    assert labeled_canonical_form(fwd) == labeled_canonical_form(rev)


def test_basic_path_marker_matters():
    marked = base_tree("T2")
    unmarked = LabeledTree(path_graph(4), "CAAC", "T2", None)
    assert labeled_canonical_form(marked) != labeled_canonical_form(unmarked)


def test_missing_or_bad_status():
    with pytest.raises(MissingStatus):
        LabeledTree(path_graph(3), "CA", "T1")
    with pytest.raises(MissingStatus):
        LabeledTree(path_graph(3), "CXC", "T1")
    with pytest.raises(WrongFamily):
        LabeledTree(path_graph(3), "CAC", "T3")


def test_enumerate_family_small():
    t1 = enumerate_family("T1", 3)
    assert len(t1) == 1 and next(iter(t1)).status == "CAC"
    t1_7 = enumerate_family("T1", 7)
    expected = {canonical_form(t) for t in (path_graph(3), star(3), star(4), star(5), star(6), path_graph(7))}
    assert t1_7.projection() == expected
    t2_7 = enumerate_family("T2", 7)
    assert t2_7.projection() == {canonical_form(path_graph(4))}
    assert canonical_form(path_graph(8)) in enumerate_family("T2", 8).projection(8)


def test_enumerate_family_caps():
    with pytest.raises(CapExceeded):
        enumerate_family("T1", 15)
    with pytest.raises(CapExceeded):
        enumerate_family("T2", 3)
    with pytest.raises(WrongFamily):
        enumerate_family("T3", 5)


def test_catalog_closed_and_replayable():
    cat = enumerate_family("T2", 12)
    for lt in cat:
        assert replay("T2", lt.derivation) == lt
        for op, v in legal_moves(lt):
            child = apply_operation(lt, op, v)
            if child.tree.n <= 12:
                assert child in cat


def test_catalog_json_round_trip():
    cat = enumerate_family("T1", 9)
    data = json.loads(cat.to_json())
    assert {"n", "canonical", "unlabeled", "edges", "status", "basic_path", "derivation"} <= set(data["members"][0])
    back = FamilyCatalog.from_dict(data)
    assert back.projection() == cat.projection()
    assert {labeled_canonical_form(lt) for lt in back} == {labeled_canonical_form(lt) for lt in cat}


def test_sa_set_examples():
    assert sa_set(base_tree("T1")) == {1}
    assert sa_set(base_tree("T2")) == {1, 2}
    assert sa_set(P8_T2) == {1, 2, 6}


def test_audit_examples():
    assert audit_T1(base_tree("T1")).ok
    assert audit_T1(P7_T1).ok
    bad = audit_T1(LabeledTree(path_graph(3), "AAC", "T1"))
    assert "classes_independent" in bad.violations
    assert audit_T2(base_tree("T2")).ok
    assert audit_T2(P8_T2).ok
    with pytest.raises(WrongFamily):
        audit_T1(P8_T2)


def test_audit_t2_flags_degree_three_support():
    t = path_graph(4).attach_path(1, 1)
    report = audit_T2(LabeledTree(t, "CAACC", "T2", (0, 1, 2, 3)))
    assert "supports_degree_2" in report.violations


@pytest.mark.parametrize("family", ["T1", "T2"])
def test_audits_pass_on_catalog(family):
    for lt in enumerate_family(family, 12):
        assert audit(lt).ok, (lt.status, audit(lt).violations)


def test_t2_c_vertex_notes_recorded():
    lt = replay("T2", [("O3", 3), ("O3", 7)])
    notes = audit_T2(lt).notes
    assert notes and all("basic path" in note for note in notes)


def test_membership_examples():
    t1 = enumerate_family("T1", 7)
    v = membership(path_graph(7), "T1", t1)
    assert v.verdict == "IN" and v.equality_in and v.gamma_d2 == 2
    v = membership(path_graph(5), "T1", t1)
    assert v.verdict == "OUT" and not v.equality_in and not v.theorem_violation
    v = membership(path_graph(4), "T2", enumerate_family("T2", 4))
    assert v.verdict == "IN" and v.equality_in
    with pytest.raises(WrongFamily):
        membership(path_graph(4), "T2", t1)
    with pytest.raises(CapExceeded):
        membership(path_graph(8), "T1", t1)


def test_membership_two_routes_agree_to_10():
    cats = {f: enumerate_family(f, 10) for f in ("T1", "T2")}
    for n in range(3, 11):
        for t in all_trees(n):
            for f, cat in cats.items():
                assert not membership(t, f, cat, "brute").theorem_violation


def test_near_witness_examples():
    assert near_witness(base_tree("T2"), 0) == (2,)
    for leaf in sorted(metrics(P8_T2.tree).leaves):
        w = near_witness(P8_T2, leaf)
        assert w is not None and len(w) == 2
    with pytest.raises(NotALeaf):
        near_witness(base_tree("T2"), 1)
    with pytest.raises(WrongFamily):
        near_witness(P7_T1, 0)


def test_near_witness_covers_all_but_the_leaf():
    for lt in enumerate_family("T2", 12):
        for leaf in metrics(lt.tree).leaves:
            w = near_witness(lt, leaf)
            assert w is not None
            assert not is_2dd_set(lt.tree, w)
            # adding the leaf itself repairs the set
            assert is_2dd_set(lt.tree, set(w) | {leaf})


def test_t1_sa_is_unique_min_set_on_catalog():
    from disjdom.solver import enumerate_min_2dd_sets

    for lt in enumerate_family("T1", 12):
        assert enumerate_min_2dd_sets(lt.tree) == [tuple(sorted(sa_set(lt)))]


def test_t2_gamma_equals_sa_size():
    for lt in enumerate_family("T2", 12):
        m = metrics(lt.tree)
        g = gamma_d2_brute(lt.tree).gamma_d2
        assert g == len(sa_set(lt)) and 4 * g == lt.tree.n + m.l + m.s


def test_single_labeled_tree_equality_with_tree():
    assert base_tree("T1").tree == Tree.from_edges(3, [(0, 1), (1, 2)])

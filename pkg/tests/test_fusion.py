import json

import pytest

from hopfclass.fusion import (
    FEASIBLE,
    INFEASIBLE,
    BudgetExceeded,
    Contradiction,
    GroupMismatch,
    NeedsEntries,
    Stabilizer,
    Unassigned,
    abelian_classes,
    abelian_group,
    build_skeleton,
    eliminate,
    orbit_assignment,
    propagate,
    search_consistent_table,
    stabilizer_of,
    standard_subalgebra_closure,
    structured_tables,
    validate,
)
from hopfclass.fusion.search import combined_status
from hopfclass.fusion.table import FusionTable, with_structure
from hopfclass.typeprofile import parse_type

Z2 = abelian_group((2,))
Z11 = abelian_group((11,))


# ----------------------------------------------------------------- groups
@pytest.mark.parametrize("n", range(1, 17))
def test_abelian_classes_are_groups(n):
    for g in abelian_classes(n):
        assert g.order == n and g.is_abelian and g.check_axioms()
        assert all(g.mul(a, g.inverse[a]) == 0 for a in range(n))


def test_abelian_class_counts():
    assert [g.label for g in abelian_classes(4)] == ["Z4", "Z2xZ2"]
    assert len(abelian_classes(16)) == 5
    assert len(abelian_classes(25)) == 2


def test_subgroups_closed():
    g = abelian_group((2, 4))
    for s in g.subgroups():
        assert all(g.mul(a, b) in s and g.inverse[a] in s for a in s for b in s)
        assert 8 % len(s) == 0


# --------------------------------------------------------------- skeleton
def test_skeleton_q5():
    tab = build_skeleton(parse_type("(1,2;4,3;5,2)"), Z2)
    assert tab.size == 7
    assert tab.degrees == (1, 1, 4, 4, 4, 5, 5)
    assert tab.left[1][:2] == (1, 0)
    assert tab.left[0][:2] == (0, 1)
    assert all(x is None for x in tab.left[1][2:])
    assert tab.dual[:2] == (0, 1) and all(d is None for d in tab.dual[2:])
    assert not tab.entries


@pytest.mark.parametrize("inv", [(9,), (3, 3)])
def test_skeleton_q_squared(inv):
    tab = build_skeleton(parse_type("(1,9;3,3)"), abelian_group(inv))
    assert tab.size == 9 + 3


def test_skeleton_trivial():
    tab = build_skeleton(parse_type("(1,1)"), abelian_group(()))
    assert tab.size == 1 and tab.structure_known
    assert tab.product(0, 0) == {0: 1}


def test_skeleton_group_mismatch():
    with pytest.raises(GroupMismatch):
        build_skeleton(parse_type("(1,2;4,3;5,2)"), abelian_group((4,)))


# ----------------------------------------------------------------- orbits
def test_orbits_swap_degree5():
    tab = build_skeleton(parse_type("(1,2;4,3;5,2)"), Z2)
    assert orbit_assignment(tab, 5) == [((0, 1), (1, 0))]


@pytest.mark.parametrize("inv", [(25,), (5, 5)])
def test_orbits_all_fixed(inv):
    tab = build_skeleton(parse_type("(1,25;5,3)"), abelian_group(inv))
    acts = orbit_assignment(tab, 5)
    assert acts and all(perm == (0, 1, 2) for act in acts for perm in act)


def test_orbits_trivial_group():
    tab = build_skeleton(parse_type("(1,1;3,1)"), abelian_group(()))
    assert orbit_assignment(tab, 3) == [((0,),)]


def test_orbit_stabilizers_divide_degree_squared():
    g = abelian_group((2, 2))
    tab = build_skeleton(parse_type("(1,4;2,3)"), g)
    for act in orbit_assignment(tab, 2):
        for k in range(3):
            fixed = sum(1 for h in range(4) if act[h][k] == k)
            assert 4 % fixed == 0


# ------------------------------------------------------------- stabilizers
def _trivially_acting(tab):
    left = [[x if r[x] is None else r[x] for x in range(tab.size)] for r in tab.left]
    dual = [x if d is None else d for x, d in enumerate(tab.dual)]
    return with_structure(tab, dual, left)


def test_stabilizer_contradiction_degree11():
    tab = _trivially_acting(build_skeleton(parse_type("(1,2;11,2)"), Z2))
    res = stabilizer_of(tab, 2)
    assert isinstance(res, Contradiction) and res.rule == "stabilizer-divides-degsq"


def test_stabilizer_of_grouplike_trivial():
    tab = build_skeleton(parse_type("(1,2;4,3;5,2)"), Z2)
    assert stabilizer_of(tab, 1) == Stabilizer(1, frozenset({0}))


def test_stabilizer_whole_group():
    tab = _trivially_acting(build_skeleton(parse_type("(1,25;5,3)"), abelian_group((5, 5))))
    assert stabilizer_of(tab, 25).order == 25


def test_stabilizer_unassigned():
    with pytest.raises(Unassigned):
        stabilizer_of(build_skeleton(parse_type("(1,2;4,3;5,2)"), Z2), 2)


# ---------------------------------------------------------------- closure
def _q11_branch():
    """chi_11 self-dual and fixed by all of Z11, with chi^2 = sum g + 10 chi."""
    t = parse_type("(1,11;4,22;11,1)")
    tab = next(structured_tables(t, Z11))
    x = tab.size - 1
    ent = {(x, x, c): 0 for c in range(11, x)}
    ent[(x, x, x)] = 10
    return tab.with_entries(ent), x


def test_closure_132():
    tab, x = _q11_branch()
    members, dim = standard_subalgebra_closure(tab, {1, x})
    assert dim == 132 and 484 % dim != 0
    assert members == frozenset(range(11)) | {x}


def test_closure_grouplikes_and_whole():
    tab, _ = _q11_branch()
    assert standard_subalgebra_closure(tab, {1})[1] == 11
    from hopfclass.fusion.oracle import group_fusion_table, small_groups

    g = next(g for g in small_groups() if g.label == "D4")
    full = group_fusion_table(g)
    assert standard_subalgebra_closure(full, range(full.size))[1] == 8


def test_closure_needs_entries():
    tab = next(structured_tables(parse_type("(1,11;4,22;11,1)"), Z11))
    res = standard_subalgebra_closure(tab, {11})
    assert isinstance(res, NeedsEntries) and res.pairs


# -------------------------------------------------------------- propagate
def test_propagate_residual_q13():
    tab = build_skeleton(parse_type("(1,2;4,21;13,2)"), Z2)
    res = propagate(tab)
    assert isinstance(res, Contradiction) and res.rule == "degree-residual"
    assert "15" in res.detail and "14" in res.detail


def _oracle(label):
    from hopfclass.fusion.oracle import group_fusion_table, small_groups

    return group_fusion_table(next(g for g in small_groups() if g.label == label))


def test_propagate_reciprocity_violation():
    tab = _oracle("D5")
    # x2_2 x2_3 = x2_2 + x2_3 in the real table; inflate one entry
    res = propagate(tab.with_entries({(2, 3, 2): 2}))
    assert isinstance(res, Contradiction) and res.rule == "frobenius-reciprocity"


def test_propagate_group_algebra_fixed_point():
    tab = _oracle("Z2xZ4")
    res = propagate(tab)
    assert res.entries == tab.entries and res.dual == tab.dual and res.left == tab.left


@pytest.mark.parametrize("label", ["S3", "D4", "Q8", "A4", "Dic3", "D8"])
def test_propagate_idempotent(label):
    once = propagate(_oracle(label))
    assert isinstance(once, FusionTable)
    assert propagate(once).entries == once.entries


# ----------------------------------------------------------------- search
ELIM = [
    "(1,2;4,3;5,2)",
    "(1,2;4,6;7,2)",
    "(1,2;4,15;11,2)",
    "(1,2;4,21;13,2)",
    "(1,11;4,22;11,1)",
]


@pytest.mark.parametrize("text", ELIM)
def test_elimination_types_infeasible(text):
    res = eliminate(parse_type(text))
    assert combined_status(res) == INFEASIBLE
    for r in res:
        assert r.trace[-1].rule == "fusion-infeasible"


def test_d8_type_feasible_with_z2z2():
    t = parse_type("(1,4;2,1)")
    res = search_consistent_table(t, abelian_group((2, 2)), focus=((4, 4),))
    assert res.status == FEASIBLE
    w = res.witness
    assert w.product(4, w.dual[4]) == {0: 1, 1: 1, 2: 1, 3: 1}
    assert validate(w) == []


def test_both_order4_classes_feasible():
    t = parse_type("(1,4;2,1)")
    assert [r.status for r in eliminate(t)] == [FEASIBLE, FEASIBLE]


def test_budget_exceeded_is_distinct():
    with pytest.raises(BudgetExceeded):
        search_consistent_table(parse_type("(1,2;4,3;5,2)"), Z2, budget=3)
    (res,) = eliminate(parse_type("(1,2;4,3;5,2)"), budget=3, groups=[Z2])
    assert res.status == "BudgetExceeded"


def test_relabeling_keeps_verdict():
    t = parse_type("(1,2;4,3;5,2)")
    base = search_consistent_table(t, Z2).status
    assert search_consistent_table(t, Z2, relabel={2: 4, 3: 2, 4: 3, 5: 6, 6: 5}).status == base


def test_witness_json_roundtrip():
    t = parse_type("(1,4;2,1)")
    w = search_consistent_table(t, abelian_group((4,))).witness
    back = FusionTable.from_json(json.loads(json.dumps(w.to_json())))
    assert back.to_json() == w.to_json()
    assert validate(back) == []


# -------------------------------------------------------------- validator
def test_validator_catches_corruption():
    tab = _oracle("A4")
    assert validate(tab) == []
    x = tab.size - 1
    bad = tab.with_entries({(x, x, x): tab.mult(x, x, x) + 1})
    assert {v.rule for v in validate(bad)} & {"degree-accounting", "frobenius-reciprocity"}
    swapped = with_structure(tab, tab.dual, tab.left[::-1])
    assert validate(swapped)


# ----------------------------------------------------------------- oracle
def test_oracle_catalogue():
    from hopfclass.fusion.oracle import group_signature, small_groups

    groups = small_groups()
    assert len(groups) == 42
    assert len({group_signature(g) for g in groups}) == 42
    assert all(g.check_axioms() for g in groups)


def test_oracle_tables_consistent():
    from hopfclass.fusion.oracle import group_fusion_table, grouplike_class, small_groups

    for g in small_groups():
        tab = group_fusion_table(g)
        assert tab.type.dim == g.order
        assert validate(tab) == [], g.label
        assert isinstance(propagate(tab), FusionTable), g.label
        res = search_consistent_table(tab.type, grouplike_class(tab), budget=10**5)
        assert res.status == FEASIBLE, g.label


def _no_irreducible_products(tab):
    """Products within a class whose stabilizers all equal one nontrivial subgroup split."""
    for d, ids in tab.classes().items():
        if d == 1:
            continue
        stabs = {stabilizer_of(tab, x).subgroup for x in ids}
        if len(stabs) != 1 or len(next(iter(stabs))) == 1:
            continue
        for a in ids:
            for b in ids:
                prod = tab.product(a, b)
                if prod is not None:
                    assert sum(prod.values()) >= 2, (tab.type.notation, a, b)


def test_stabilizer_products_not_irreducible():
    from hopfclass.fusion.oracle import group_fusion_table, small_groups

    for g in small_groups():
        _no_irreducible_products(group_fusion_table(g))
    for text in ("(1,4;2,1)", "(1,4;2,3)", "(1,2;2,1;3,2)"):
        t = parse_type(text)
        for r in eliminate(t, budget=10**5):
            if r.witness is not None:
                _no_irreducible_products(r.witness)

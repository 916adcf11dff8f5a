from types import SimpleNamespace

import pytest

from hopfclass.arithmetic import DimensionProfile
from hopfclass.typeprofile import (
    TypeParseError,
    apply_filters,
    degree_residual_filter,
    quotient_dimension,
    frobenius_degree_set,
    grouplike_count_bound_filter,
    nontrivial_grouplike_filter,
    p_part_quotient_filter,
    parse_type,
    screen_types,
)

Q5 = DimensionProfile(2, 5)


def test_degree_sets():
    assert frobenius_degree_set(Q5) == {1, 2, 4, 5}
    assert frobenius_degree_set(DimensionProfile(3, 83)) == {1, 3, 9, 83}


def test_parse_and_notation_roundtrip():
    t = parse_type("(1,2;4,3;5,2)", Q5)
    assert t.notation == "(1,2;4,3;5,2)"
    assert (t.dim, t.g_order, t.degrees) == (100, 2, [1, 4, 5])
    assert t.count(4) == 3 and t.count(2) == 0


@pytest.mark.parametrize(
    "text",
    ["1,2;4,3", "(1,2; 4,3)", "(2,2;4,3)", "(1,2;5,1;4,3)", "(1,0;4,3)", "(1,3;2,1)", "()"],
)
def test_parse_errors(text):
    with pytest.raises(TypeParseError):
        parse_type(text)


def test_profile_dimension_mismatch():
    with pytest.raises(TypeParseError):
        parse_type("(1,4;2,1)", Q5)
    with pytest.raises(TypeParseError):
        parse_type("(1,4;3,1;..)", Q5)


def test_nontrivial_grouplike():
    assert not nontrivial_grouplike_filter(parse_type("(1,1;3,3;9,1)")).passed
    assert nontrivial_grouplike_filter(parse_type("(1,2;4,3;5,2)", Q5)).passed
    assert nontrivial_grouplike_filter(parse_type("(1,100)", Q5)).passed


def test_grouplike_count_bound():
    # degree 5 with count 2 under g = 4: 4 does not divide 50
    rep = grouplike_count_bound_filter(parse_type("(1,4;3,2;5,2)"))
    assert {f.rule for f in rep.failures} == {"grouplike-count-bound"}
    assert any("50" in f.detail for f in rep.failures)
    assert grouplike_count_bound_filter(parse_type("(1,2;4,3;5,2)", Q5)).passed
    assert grouplike_count_bound_filter(parse_type("(1,1;3,3;9,1)")).passed


def test_quotient_filter_direct_example():
    # a=3, c=2 at g=2 has no dimension-100 completion, so it is probed through a stand-in
    stub = SimpleNamespace(profile=Q5, g_order=2, count=lambda d: {2: 3, 5: 2}.get(d, 0))
    rep = p_part_quotient_filter(stub)
    assert not rep.passed and "14" in rep.failures[0].detail


def test_quotient_filter_realizable_failure():
    rep = p_part_quotient_filter(parse_type("(1,2;2,4;4,2;5,2)", Q5))
    assert not rep.passed and "18" in rep.failures[0].detail


def test_quotient_filter_flags_pq2():
    rep = p_part_quotient_filter(parse_type("(1,2;2,12;5,2)", Q5))
    assert rep.passed
    assert rep.flags == ("quotient-dim-pq2:50",)


def test_quotient_filter_whole():
    t = parse_type("(1,100)", Q5)
    assert apply_filters(t).passed
    assert quotient_dimension(t) == 100
    rep = p_part_quotient_filter(parse_type("(1,9;3,3;9,765)", DimensionProfile(3, 83)))
    assert rep.passed and rep.flags == ("quotient-is-whole",)


def test_general_regime_quotient():
    stub = SimpleNamespace(profile=DimensionProfile(3, 83), g_order=9, count=lambda d: {3: 2}.get(d, 0))
    # 9 + 18 = 27 does not divide 62001
    rep = p_part_quotient_filter(stub)
    assert not rep.passed and "27" in rep.failures[0].detail


def test_degree_residual_filter():
    rep = degree_residual_filter(parse_type("(1,11;2,44;4,11;11,1)", DimensionProfile(2, 11)))
    assert [f.rule for f in rep.failures] == ["degree-residual"]
    assert degree_residual_filter(parse_type("(1,2;4,3;5,2)", Q5)).passed


def test_filters_order_independent():
    from hopfclass import typeprofile as tp

    for t in ("(1,2;2,4;4,2;5,2)", "(1,11;2,44;4,11;11,1)", "(1,4;3,2;5,2)"):
        t = parse_type(t)
        fwd = {f.rule for flt in tp.FILTERS for f in flt(t).failures}
        rev = {f.rule for flt in reversed(tp.FILTERS) for f in flt(t).failures}
        assert fwd == rev == {f.rule for f in apply_filters(t).failures}


def test_screen_q5_g2_survivors():
    reps = screen_types(Q5, 2)
    survivors = [r for r in reps if r.passed]
    assert survivors
    for r in survivors:
        assert r.type.count(2) == 0 or any(f.startswith("quotient-dim-pq2") for f in r.flags)
    a0 = {r.type.notation for r in reps if r.type.count(2) == 0}
    assert a0 == {"(1,2;4,3;5,2)"}
    assert a0 <= {r.type.notation for r in survivors}


def test_screen_q11_g11():
    survivors = [r.type.notation for r in screen_types(DimensionProfile(2, 11), 11) if r.passed]
    assert survivors == ["(1,11;4,22;11,1)"]


def test_screen_full_dimension():
    reps = screen_types(Q5, 100)
    assert len(reps) == 1 and reps[0].passed and reps[0].type.notation == "(1,100)"


def test_screen_rejects_non_divisor():
    with pytest.raises(ValueError):
        screen_types(Q5, 3)


def test_report_json_shape():
    js = apply_filters(parse_type("(1,2;2,4;4,2;5,2)", Q5)).to_json()
    assert set(js) == {"type", "passed", "failures", "flags"}
    assert js["failures"][0]["rule"] == "p-part-quotient"
    assert js["failures"][0]["citation"]

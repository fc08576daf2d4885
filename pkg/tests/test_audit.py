import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from starpal import (AuxPolicy, Palette, audit_chain, audit_to_json,
                     audit_to_jsonable, claim_check, f_values, format_audit_kv,
                     format_audit_text, g_inequality_check, minimality_check,
                     stars_bounds, target_density, x_sets)

small_palettes = st.integers(1, 3).flatmap(
    lambda m: st.builds(
        Palette,
        st.just(m),
        st.frozensets(st.tuples(st.integers(0, m - 1), st.integers(0, m - 1),
                                st.integers(0, m - 1))),
    ))

OPTIMUM = Palette(2, [(0, 1, 0), (1, 0, 1)])


def test_target_density_values():
    assert target_density(3) == Fraction(1, 4)
    assert target_density(4) == Fraction(1, 3)
    assert target_density(5) == Fraction(7, 16)
    assert target_density(11) == Fraction(73, 100)
    with pytest.raises(ValueError):
        target_density(2)


def test_stars_bounds_values():
    assert stars_bounds(5) == (Fraction(7, 16), Fraction(9, 16))
    assert stars_bounds(3) == (Fraction(1, 4), Fraction(1, 4))


def test_x_sets_single_triple():
    counts = x_sets(Palette(2, [(0, 0, 1)]))
    assert (counts.x1, counts.x2, counts.x3) == (6, 6, 6)
    assert (counts.x12, counts.x13, counts.x23) == (5, 5, 5)
    assert counts.union == 7


def test_x_sets_empty_palette():
    counts = x_sets(Palette.empty(2))
    assert (counts.x1, counts.x2, counts.x3) == (8, 8, 8)
    assert (counts.x12, counts.x13, counts.x23) == (8, 8, 8)
    assert counts.union == 8


def test_f_values_single_triple():
    f = f_values(Palette(2, [(0, 0, 1)]))
    assert f.f1[0] == Fraction(-1, 4) and f.f1[1] == 0
    assert f.f2[0] == Fraction(-1, 4) and f.f2[1] == 0
    assert f.f3[1] == Fraction(-1, 4) and f.f3[0] == 0


@given(small_palettes)
def test_inclusion_exclusion_matches_f_sum(p):
    n = p.num_colors
    counts = x_sets(p)
    ie = n ** 3 - (counts.x1 + counts.x2 + counts.x3) \
        + (counts.x12 + counts.x13 + counts.x23)
    assert Fraction(ie, n ** 3) == 1 + Fraction(1, n) * f_values(p).total()


@given(small_palettes)
def test_union_bounds(p):
    n = p.num_colors
    counts = x_sets(p)
    assert p.num_triples <= n ** 3 - counts.union
    assert counts.union <= counts.x1 + counts.x2 + counts.x3


def test_audit_chain_on_reference_palette():
    report = audit_chain(OPTIMUM, 5)
    assert report.is_bad
    assert report.density == Fraction(1, 4)
    assert report.min_degree == Fraction(1, 4)
    assert report.delta_premise_ok
    assert report.premised_steps_hold
    final = report.step("final_target")
    assert final.holds and final.rhs == Fraction(7, 16)
    assert report.step("target_value_identity").lhs == Fraction(7, 16)
    for policy in report.policies:
        assert policy.loop_vertex is None
        assert policy.d_tk_free and policy.d1_tk_free and policy.d2_tk_free


def test_audit_chain_rejects_small_k():
    with pytest.raises(ValueError):
        audit_chain(OPTIMUM, 4)


def test_audit_chain_low_degree_premise():
    p = Palette(2, [(0, 0, 1)])
    report = audit_chain(p, 5)
    assert not report.delta_premise_ok
    assert report.premised_steps_hold


@given(small_palettes)
def test_audit_identity_steps_hold_for_any_palette(p):
    report = audit_chain(p, 5, node_budget=10 ** 6)
    for step_id in ("product_identity", "density_vs_f_sum",
                    "target_value_identity", "f1_square", "f3_square"):
        assert report.step(step_id).holds


def test_audit_step_lookup_raises():
    report = audit_chain(OPTIMUM, 5)
    with pytest.raises(KeyError):
        report.step("nonexistent")


def test_g_equalities_k5():
    rep = g_inequality_check(5, [Fraction(1), Fraction(3)])
    assert rep.identity_ok and rep.nonneg_ok
    assert rep.entries[0].g == 0 and rep.entries[0].bound == 0
    assert rep.entries[1].residual == 0
    assert rep.entries[1].g == Fraction(1, 16)


def test_g_equalities_k6():
    rep = g_inequality_check(6, [Fraction(2, 3), Fraction(4)])
    assert rep.identity_ok and rep.nonneg_ok
    assert all(e.residual == 0 for e in rep.entries)


def test_g_below_threshold_not_required_nonneg():
    rep = g_inequality_check(5, [Fraction(0)])
    assert not rep.entries[0].in_range
    assert rep.entries[0].nonneg_holds
    assert rep.identity_ok


def test_g_pole_rejected():
    with pytest.raises(ValueError):
        g_inequality_check(5, [Fraction(-1)])
    with pytest.raises(ValueError):
        g_inequality_check(3, [Fraction(1)])


@given(st.integers(4, 12),
       st.fractions(min_value=Fraction(-10), max_value=Fraction(100)))
def test_g_identity_everywhere(k, x):
    if x == -1:
        return
    rep = g_inequality_check(k, [x])
    assert rep.identity_ok
    if x >= Fraction(2, k - 3):
        assert rep.entries[0].residual >= 0


def test_minimality_examples():
    assert minimality_check(
        Palette(2, [(0, 0, 1), (1, 1, 0), (0, 1, 0), (1, 0, 1)])).is_minimal
    assert minimality_check(Palette(1, [(0, 0, 0)])).is_minimal
    rep = minimality_check(Palette(2, [(0, 0, 0)]))
    assert not rep.is_minimal
    assert rep.witness_color == 1


def test_claim_check_reference():
    rep = claim_check(OPTIMUM, 3)
    assert rep.delta == Fraction(1, 4)
    assert rep.rhs == Fraction(-3, 4)
    assert rep.is_minimal and rep.is_bad and rep.holds
    with pytest.raises(ValueError):
        claim_check(OPTIMUM, 1)


def test_format_text_and_kv():
    report = audit_chain(OPTIMUM, 5)
    text = format_audit_text(report)
    assert "final_target" in text and "density" in text
    kv = format_audit_kv(report)
    lines = [ln for ln in kv.splitlines() if ln.startswith("step=")]
    assert len(lines) == len(report.steps)


def test_json_roundtrip():
    report = audit_chain(OPTIMUM, 5)
    doc = json.loads(audit_to_json(report))
    assert doc == audit_to_jsonable(report)
    assert doc["density"] == "1/4"
    assert doc["k"] == 5
    assert len(doc["steps"]) == len(report.steps)

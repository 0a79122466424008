from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mrrsph.dimcrit import (
    candidate_centralizers,
    criterion_value,
    group_dim,
    search_infinite_witness,
    pair_infiniteness_check,
    validate_witness,
)
from mrrsph.rootsys import closure_mask, parse_group
from mrrsph.subsystems import UndecidedError, find_mrr, levi


def test_torus_torus_a2():
    rs = parse_group("A2")
    rep = criterion_value(rs, 0, 0, rs.full_mask)
    # Z(G_s) finite, dim G_s = 8, X_s = L_s = T of dim 2
    assert (rep.dim_ZGs, rep.dim_Gs, rep.dim_Xs, rep.dim_Ls) == (0, 8, 2, 2)
    assert rep.value == Fraction(1) and rep.triggered


def test_g2_torus_example():
    rs = parse_group("G2")
    res = search_infinite_witness(rs, 0, 0)
    assert res.triggered and res.report.value == 1
    assert str(res.report.phi_s_type) == "A2"
    assert validate_witness(rs, 0, 0, res)


def test_rejects_open_phi():
    rs = parse_group("B2")
    with pytest.raises(ValueError):
        criterion_value(rs, 0, 0, rs.short_mask)


def test_group_dim():
    rs = parse_group("E8")
    assert group_dim(rs.rank, rs.full_mask) == 248
    assert group_dim(4, parse_group("F4").full_mask) == 52


def test_json_schema():
    rs = parse_group("A2")
    data = criterion_value(rs, 0, 0, rs.full_mask).to_json()
    assert data["value"] == "1/1"
    assert set(data["dims"]) == {"zgs", "gs", "xs", "ls"}
    assert data["phi_s_type"] == "A2" and data["triggered"] is True


def test_levi_overlap_lowers_value():
    rs = parse_group("B2")
    a1 = rs.simple_index(1)
    L1 = (1 << a1) | (1 << rs.neg(a1))
    # 8/2 - 2 - 0 - 2/2
    assert criterion_value(rs, 0, L1, rs.full_mask).value == 1
    assert criterion_value(rs, L1, 0, rs.full_mask).value == 0


@pytest.mark.parametrize("group,count", [("A2", 4), ("B2", 6), ("G2", 8)])
def test_candidate_counts(group, count):
    assert len(candidate_centralizers(parse_group(group))) == count


def test_candidate_cap():
    with pytest.raises(UndecidedError):
        candidate_centralizers(parse_group("E7"), cap=10)


def test_a2_levi_no_witness():
    rs = parse_group("A2")
    res = search_infinite_witness(rs, find_mrr(rs, "A1+T1"), 0)
    assert res.status == "absent"


def test_f4_a2a2_against_levis():
    rs = parse_group("F4")
    X = find_mrr(rs, "A2+A2~")
    for removed in [(2,), (3,), (1, 2), (2, 3)]:
        res = search_infinite_witness(rs, X, levi(rs, removed))
        assert res.triggered and validate_witness(rs, X, levi(rs, removed), res)


@st.composite
def configs(draw):
    rs = parse_group(draw(st.sampled_from(["B3", "C3", "G2", "F4", "A3"])))
    pick = lambda: sum(1 << i for i in set(draw(st.lists(st.integers(0, len(rs.roots) - 1), max_size=3))))
    phi = closure_mask(rs, pick())
    return rs, closure_mask(rs, pick()), closure_mask(rs, pick()), phi


@given(configs(), st.data())
def test_monotone_in_x_and_l(cfg, data):
    rs, X, Lm, phi = cfg
    base = criterion_value(rs, X, Lm, phi).value
    extra = 1 << data.draw(st.integers(0, len(rs.roots) - 1))
    assert criterion_value(rs, closure_mask(rs, X | extra), Lm, phi).value <= base
    assert criterion_value(rs, X, closure_mask(rs, Lm | extra), phi).value <= base


@given(configs())
def test_four_term_equals_reduced(cfg):
    rs, X, Lm, phi = cfg
    rep = criterion_value(rs, X, Lm, phi)
    assert rep.value == rep.reduced_value
    assert rep.value == rep.dim_ZGs + Fraction(rep.dim_Gs, 2) - rep.dim_Xs - Fraction(rep.dim_Ls, 2)


@pytest.mark.parametrize("group", ["A3", "B3", "C3", "D4", "G2", "F4"])
def test_pair_infiniteness_small(group):
    rep = pair_infiniteness_check(parse_group(group))
    assert rep.ok, rep.failures[:5]
    if group == "F4":
        assert len(rep.excluded) == 2

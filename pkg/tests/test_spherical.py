from __future__ import annotations

import pytest

from mrrsph.rootsys import parse_group
from mrrsph.spherical import (
    F4_MAXIMAL_NON_TABLE,
    TABLE_KINDS,
    anti_open_labels,
    classify,
    complement_kinds,
    f4_sublattice_kinds,
    find_complement,
    in_table,
    is_anti_open,
    levi_unipotent_complement,
    load_table,
    constructed_complement,
    radical_is_abelian,
    table_entries,
    table_labels,
    validate_witness,
)
from mrrsph.subsystems import TypeLabel, enumerate_generic_mrr, find_mrr, levi_subsystems, mrr_from_mask


def L(s):
    return TypeLabel.parse(s)


def test_table_ships_all_rows():
    rows = load_table()["rows"]
    assert len(rows) == 19
    per_ambient = {}
    for r in rows:
        per_ambient.setdefault(r["ambient"]["family"], []).append(r["id"])
    assert {k: len(v) for k, v in per_ambient.items()} == {"A": 1, "B": 2, "C": 3, "D": 2, "E": 7, "F": 2, "G": 2}


def test_table_instances():
    assert table_labels("G", 2) == {L("A2"), L("A1+A1~")}
    assert table_labels("F", 4) == {L("B4"), L("A1+C3")}
    assert L("D5+T1") in table_labels("E", 6)
    assert L("E7+T1") not in table_labels("E", 8)
    assert in_table("A3", "A1+A1+T1")
    assert in_table(parse_group("B2"), "A1+T1")
    assert not in_table("B2", "T2")


def test_degenerate_rows_are_flagged():
    degenerate = [e for e in table_entries("B", 3) if e.degenerate]
    assert {str(e.label) for e in degenerate} >= {"A3"}


def test_g2_spherical_set():
    rep = classify(parse_group("G2"))
    assert {L("A2"), L("A1+A1~")} <= rep.spherical_labels()
    assert L("T2") in rep.non_spherical_labels()


def test_g2_long_root_levi_has_no_rank_two_complement():
    """The long-root Levi of G2 has no A2/B2 (or G2) complement although
    dim G/H = 10 exceeds dim B = 8, so the complement test alone cannot
    detect its non-sphericity."""
    rs = parse_group("G2")
    X = find_mrr(rs, "A1+T1")
    assert find_complement(rs, X, ("A2-long", "A2-short", "B2", "G2")) is None
    assert not in_table(rs, X.label)
    rec = next(r for r in classify(rs).records if r.label == X.label)
    assert rec.dimension_obstruction


def test_b2_classification():
    rep = classify(parse_group("B2"))
    assert rep.spherical_labels() == {L("A1+A1"), L("A1+T1"), L("A1~+T1")}
    assert rep.non_spherical_labels() == {L("T2")}
    assert rep.ok


def test_b2_high_root_subgroup():
    rs = parse_group("B2")
    hr = rs.highest_root_index
    X = mrr_from_mask(rs, (1 << hr) | (1 << rs.neg(hr)))
    assert X.label == L("A1+T1")
    assert not is_anti_open(rs, X)
    assert find_complement(rs, X, TABLE_KINDS) is None
    assert in_table(rs, X.label)


@pytest.mark.parametrize("group", ["A4", "B4", "C4", "D5", "F4", "E6", "E7"])
def test_classification_matches_table(group):
    rep = classify(parse_group(group))
    assert rep.ok, rep.violations


@pytest.mark.parametrize("group", ["B3", "C4", "F4", "E6"])
def test_witnesses_validate(group):
    rs = parse_group(group)
    for m in enumerate_generic_mrr(rs):
        w = find_complement(rs, m, TABLE_KINDS)
        if w is not None:
            assert validate_witness(rs, m, w)
            assert w.subsystem.mask & m.mask == 0


def test_anti_open_in_f4():
    rs = parse_group("F4")
    assert anti_open_labels(rs) == {L("B4"), L("A1+C3")}


def test_f4_maximal_non_spherical():
    rs = parse_group("F4")
    for lab, kinds in F4_MAXIMAL_NON_TABLE.items():
        H = find_mrr(rs, lab)
        assert f4_sublattice_kinds(H) == kinds
        assert complement_kinds(rs, H) & {"A2-long", "A2-short"} == kinds


@pytest.mark.parametrize("family", "BC")
def test_constructed_complement_kinds(family):
    rs = parse_group(f"{family}4")
    for m in enumerate_generic_mrr(rs):
        if in_table(rs, m.label):
            continue
        w = constructed_complement(rs, m)
        assert validate_witness(rs, m, w)


@pytest.mark.parametrize("group", ["A4", "B3", "C3", "D4", "F4", "E6"])
def test_levi_complements_agree_with_table(group):
    rs = parse_group(group)
    for removed, Lv in levi_subsystems(rs).items():
        if len(removed) != 1:
            continue
        w = levi_unipotent_complement(rs, removed)
        if radical_is_abelian(rs, removed):
            assert in_table(rs, Lv.label)
        assert (w is None) == in_table(rs, Lv.label), (removed, Lv.label)

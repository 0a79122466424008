from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mrrsph.rootsys import closure_mask, is_closed_mask, parse_group
from mrrsph.subsystems import (
    Component,
    LabelError,
    Subsystem,
    TypeLabel,
    all_closed_subsystems,
    apply_recipe,
    apply_word,
    bds_children,
    enumerate_generic_mrr,
    find_mrr,
    full_group,
    is_end_node,
    levi,
    levi_subsystems,
    type_of,
    weyl_conjugate,
    weyl_orbit,
)


def labels(xs):
    return sorted(str(x.label) for x in xs)


@pytest.mark.parametrize(
    "group,expected",
    [
        ("G2", ["A1+A1~", "A1+T1", "A1~+T1", "A2"]),
        ("F4", ["A1+A2~+T1", "A1+C3", "A1~+A2+T1", "A1~+A3", "A2+A2~", "B3+T1", "B4", "C3+T1"]),
        ("E6", ["A1+A2+A2+T1", "A1+A4+T1", "A1+A5", "A2+A2+A2", "A5+T1", "D5+T1"]),
    ],
)
def test_depth_one_children(group, expected):
    assert labels(bds_children(full_group(parse_group(group)))) == expected


def test_semisimple_children_of_exceptionals():
    # one per node of the extended diagram whose highest-root coefficient exceeds 1
    want = {
        "G2": {"A2", "A1+A1~"},
        "F4": {"B4", "A1+C3", "A2+A2~", "A1~+A3"},
        "E6": {"A1+A5", "A2+A2+A2"},
        "E7": {"A7", "A1+D6", "A2+A5", "A1+A3+A3"},
        "E8": {"D8", "A8", "A1+E7", "A2+E6", "A4+A4", "A3+D5", "A1+A2+A5", "A1+A7"},
    }
    for g, maximal in want.items():
        kids = {str(c.label) for c in bds_children(full_group(parse_group(g))) if c.torus_rank == 0}
        assert kids == maximal, g


def test_every_generic_mrr_is_closed_and_full_rank():
    for g in ("G2", "F4", "E6", "B4", "C4", "D5"):
        rs = parse_group(g)
        for m in enumerate_generic_mrr(rs):
            assert is_closed_mask(rs, m.mask)
            assert m.label.rank == rs.rank
            assert type_of(m.subsystem) == m.label


def test_enumeration_is_deduplicated():
    for g in ("F4", "E7", "C5"):
        ms = enumerate_generic_mrr(parse_group(g))
        assert len({m.label for m in ms}) == len(ms)


def test_torus_is_always_reached():
    for g in ("A3", "B3", "G2", "E6"):
        rs = parse_group(g)
        assert TypeLabel.make([], rs.rank) in {m.label for m in enumerate_generic_mrr(rs)}


def test_label_parsing_normalizes():
    assert TypeLabel.parse("A2~A2T1") == TypeLabel.parse("A2+A2~+T1")
    assert str(TypeLabel.parse("D2")) == "A1+A1"
    assert str(TypeLabel.parse("D3")) == "A3"
    assert str(TypeLabel.parse("C2+B1")) == "A1+B2"
    assert str(TypeLabel.parse("D1")) == "T1"
    assert str(TypeLabel.parse("A0+A2+T1")) == "A2+T1"
    with pytest.raises(LabelError):
        TypeLabel.parse("A2++")
    with pytest.raises(LabelError):
        TypeLabel.parse("Q3")


label_strategy = st.builds(
    lambda comps, t: TypeLabel.make(comps, t),
    st.lists(
        st.one_of(
            st.builds(lambda r, s: Component("A", r, s), st.integers(1, 6), st.booleans()),
            st.builds(lambda f, r: Component(f, r, False), st.sampled_from("BCDEFG"), st.integers(2, 8)).filter(
                lambda c: (c.family, c.rank) not in {("E", 2), ("E", 3), ("E", 4), ("E", 5), ("G", 3)}
                and (c.family != "G" or c.rank == 2)
                and (c.family != "F" or c.rank == 4)
                and (c.family != "E" or c.rank in (6, 7, 8))
            ),
        ),
        max_size=4,
    ),
    st.integers(0, 3),
)


@given(label_strategy)
def test_label_round_trips(lab):
    assert TypeLabel.parse(str(lab)) == lab
    assert TypeLabel.from_json(lab.to_json()) == lab


def test_find_mrr_unknown_label_lists_suggestions():
    with pytest.raises(LabelError) as e:
        find_mrr(parse_group("G2"), "B2")
    assert "A2" in str(e.value)


def test_recipe():
    rs = parse_group("F4")
    sub = apply_recipe(rs, ["ext:1", "node:3"])
    assert sub.path == ("ext:1", "node:3")
    assert is_closed_mask(rs, sub.mask)
    with pytest.raises(LabelError):
        apply_recipe(rs, ["bogus:1"])


def test_levis():
    rs = parse_group("B3")
    ls = levi_subsystems(rs)
    assert len(ls) == 8
    assert ls[()].mask == rs.full_mask
    assert str(levi(rs, [3]).label) == "A2+T1"
    assert str(levi(rs, [1]).label) == "B2+T1"
    assert is_end_node(rs, 1) and is_end_node(rs, 3) and not is_end_node(rs, 2)


def test_weyl_orbit_of_a_root_is_its_length_class():
    rs = parse_group("B3")
    a1 = rs.simple_index(1)
    orbit = weyl_orbit(rs, (1 << a1) | (1 << rs.neg(a1)))
    assert len(orbit) == bin(rs.long_mask).count("1") // 2
    for m, word in orbit.items():
        assert apply_word(rs, word, (1 << a1) | (1 << rs.neg(a1))) == m


def test_weyl_conjugacy_of_same_type_subsystems():
    rs = parse_group("C3")
    a = Subsystem(rs, closure_mask(rs, 1 << rs.simple_index(1)))
    b = Subsystem(rs, closure_mask(rs, 1 << rs.simple_index(2)))
    c = Subsystem(rs, closure_mask(rs, 1 << rs.simple_index(3)))
    assert weyl_conjugate(rs, a, b)
    assert not weyl_conjugate(rs, a, c)


def test_closed_subsystem_census_g2():
    # G2: empty, 3 long A1, 3 short A1, long A2, 3 A1xA1~, G2 itself
    assert len(all_closed_subsystems(parse_group("G2"))) == 12

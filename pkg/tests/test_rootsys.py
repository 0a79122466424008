from __future__ import annotations

import dataclasses

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mrrsph.rootsys import (
    RootSystemError,
    Subsystem,
    apply_perm,
    build_root_system,
    classical_root_count,
    closure,
    closure_mask,
    is_closed_mask,
    iter_bits,
    parse_group,
    weyl_group_order,
)

ALL_TYPES = (
    [("A", n) for n in range(1, 9)]
    + [("B", n) for n in range(2, 9)]
    + [("C", n) for n in range(2, 9)]
    + [("D", n) for n in range(3, 9)]
    + [("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)]
)


@pytest.mark.parametrize("family,rank", ALL_TYPES, ids=lambda x: str(x))
def test_root_counts(family, rank):
    assert len(build_root_system(family, rank).roots) == classical_root_count(family, rank)


@pytest.mark.parametrize(
    "name,order",
    [("A2", 6), ("B2", 8), ("G2", 12), ("A3", 24), ("B3", 48), ("D4", 192), ("F4", 1152)],
)
def test_weyl_orders(name, order):
    assert weyl_group_order(parse_group(name)) == order


def test_bourbaki_lengths():
    b3, c3, g2, f4 = (parse_group(x) for x in ("B3", "C3", "G2", "F4"))
    assert b3.is_short(b3.simple_index(3)) and not b3.is_short(b3.simple_index(1))
    assert not c3.is_short(c3.simple_index(3)) and c3.is_short(c3.simple_index(1))
    assert g2.is_short(g2.simple_index(1)) and not g2.is_short(g2.simple_index(2))
    assert not f4.is_short(f4.simple_index(1)) and f4.is_short(f4.simple_index(4))
    assert g2.highest_root == (3, 2)
    assert f4.highest_root == (2, 3, 4, 2)
    assert parse_group("E8").highest_root == (2, 3, 4, 6, 5, 4, 3, 2)


def test_positive_layout(small_rs):
    rs = small_rs
    N = rs.num_positive
    for i in range(N):
        assert all(x >= 0 for x in rs.roots[i])
        assert rs.neg(i) == i + N and rs.neg(i + N) == i
    for k in range(1, rs.rank + 1):
        assert rs.roots[rs.simple_index(k)] == tuple(int(j == k - 1) for j in range(rs.rank))


def test_parse_group_errors():
    for bad in ("", "Q3", "B", "E5", "G3", "Bx"):
        with pytest.raises((RootSystemError, ValueError)):
            parse_group(bad)


def test_reflections_permute_roots(small_rs):
    rs = small_rs
    for perm in rs.simple_reflection_perms:
        assert sorted(perm) == list(range(len(rs.roots)))
        assert apply_perm(perm, rs.long_mask) == rs.long_mask


def test_long_short_split():
    rs = parse_group("F4")
    assert bin(rs.long_mask).count("1") == 24 and bin(rs.short_mask).count("1") == 24
    assert rs.long_mask | rs.short_mask == rs.full_mask
    assert not parse_group("E6").two_lengths


def test_closure_of_simple_roots_is_everything(small_rs):
    rs = small_rs
    assert closure(rs, [rs.simple_index(k) for k in range(1, rs.rank + 1)]).mask == rs.full_mask


def test_long_roots_closed_short_roots_not():
    b3 = parse_group("B3")
    assert is_closed_mask(b3, b3.long_mask)
    assert not is_closed_mask(b3, b3.short_mask)
    assert is_closed_mask(b3, b3.short_mask, universe=b3.short_mask)


def test_subsystem_json_round_trip():
    rs = parse_group("G2")
    sub = closure(rs, [(1, 0)])
    assert Subsystem.from_json(sub.to_json()) == sub
    assert len(sub) == 2 and (1, 0) in sub and (-1, 0) in sub


@st.composite
def rs_and_mask(draw):
    family, rank = draw(st.sampled_from([("A", 3), ("B", 3), ("C", 3), ("G", 2), ("D", 4), ("F", 4)]))
    rs = build_root_system(family, rank)
    picks = draw(st.lists(st.integers(0, len(rs.roots) - 1), max_size=4))
    return rs, sum(1 << i for i in set(picks))


@given(rs_and_mask())
def test_closure_idempotent_and_monotone(data):
    rs, mask = data
    c = closure_mask(rs, mask)
    assert c & mask == mask
    assert closure_mask(rs, c) == c
    assert is_closed_mask(rs, c)
    for i in iter_bits(c):
        assert (c >> rs.neg(i)) & 1


@given(rs_and_mask(), st.data())
def test_closure_monotone(data, more):
    rs, mask = data
    extra = more.draw(st.integers(0, len(rs.roots) - 1))
    assert closure_mask(rs, mask) & ~closure_mask(rs, mask | (1 << extra)) == 0


@given(rs_and_mask(), st.data())
def test_closure_commutes_with_reflections(data, more):
    rs, mask = data
    perm = more.draw(st.sampled_from(rs.simple_reflection_perms))
    assert apply_perm(perm, closure_mask(rs, mask)) == closure_mask(rs, apply_perm(perm, mask))


@given(rs_and_mask())
def test_reflection_invariance_of_form(data):
    rs, mask = data
    for perm in rs.simple_reflection_perms:
        for i in iter_bits(mask):
            for j in iter_bits(mask):
                assert rs.ip(perm[i], perm[j]) == rs.ip(i, j)


@pytest.mark.parametrize("scale", [2, 3, 7])
@pytest.mark.parametrize("name", ["B3", "C3", "G2", "F4"])
def test_scale_invariance(name, scale):
    rs = parse_group(name)
    scaled_form = tuple(tuple(scale * x for x in row) for row in rs.sym_form)
    big = dataclasses.replace(rs, sym_form=scaled_form)
    assert big.cartan_matrix == rs.cartan_matrix
    assert big.short_mask == rs.short_mask and big.long_mask == rs.long_mask
    assert big.simple_reflection_perms == rs.simple_reflection_perms
    assert all(big.ip(i, j) == scale * rs.ip(i, j) for i in range(6) for j in range(6))

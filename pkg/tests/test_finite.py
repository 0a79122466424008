from __future__ import annotations

from itertools import product

import pytest

from mrrsph.finiteoracle import (
    GF,
    SizeCapError,
    build_group,
    burnside_count,
    charsum_count,
    count_row,
    double_coset_count,
    flag_count_formula,
    grouped_sum,
    growth_series,
    order_formula,
)
from mrrsph.finiteoracle.groups import count_by_brute_force


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_field_axioms(q):
    F = GF(q)
    for a, b, c in product(range(q), repeat=3):
        assert F.mul[a][F.add[b][c]] == F.add[F.mul[a][b]][F.mul[a][c]]
        assert F.add[a][F.add[b][c]] == F.add[F.add[a][b]][c]
    for a in F.units:
        assert F.mul[a][F.inv[a]] == 1
    g = F.generator()
    assert len({F.power(g, k) for k in range(q - 1)}) == q - 1


def test_unsupported_field():
    with pytest.raises(ValueError):
        GF(7)


@pytest.mark.parametrize("kind", ["A2", "B2"])
def test_orders_by_brute_force(kind):
    G = build_group(kind, 2)
    assert count_by_brute_force(G) == order_formula(kind, 2) == len(G.elements)


@pytest.mark.parametrize("kind,q", [("A2", 2), ("A2", 3), ("A2", 4), ("B2", 2), ("B2", 3)])
@pytest.mark.parametrize("flag", ["B", "P1", "P2"])
def test_flag_counts(kind, q, flag):
    assert len(build_group(kind, q).flags(flag)) == flag_count_formula(kind, q, flag)


@pytest.mark.parametrize("kind,q", [("A2", 2), ("B2", 2), ("B2", 3)])
def test_subgroup_orders(kind, q):
    G = build_group(kind, q)
    n = len(G.subgroup("B").elements)
    assert len(G.elements) // n == flag_count_formula(kind, q, "B")
    assert len(G.subgroup("T").elements) == (q - 1) ** 2


@pytest.mark.parametrize("kind,q,expected", [("A2", 2, 6), ("A2", 3, 6), ("B2", 2, 8)])
def test_bruhat(kind, q, expected):
    G = build_group(kind, q)
    assert double_coset_count(G.subgroup("B"), G, "B") == expected


@pytest.mark.parametrize("kind,q,X,P", [("A2", 2, "T", "B"), ("A2", 3, "L1", "P1"), ("B2", 2, "A1T1", "B"), ("B2", 3, "B", "P2")])
def test_three_counts_agree(kind, q, X, P):
    G = build_group(kind, q)
    H = G.subgroup(X)
    n = double_coset_count(H, G, P)
    assert charsum_count(H, G, P) == n == burnside_count(H, G, P)
    g = grouped_sum(H, G, P)
    assert g.exact == n and g.partition_ok and g.bounds_hold


def test_jordan_decomposition():
    G = build_group("B2", 3)
    for g in G.elements[::97]:
        s, u = G.jordan(g)
        assert G.mul(s, u) == g == G.mul(u, s)
        assert G.is_semisimple(s) and G.is_unipotent(u)


def test_whole_group_has_one_orbit():
    row = count_row("A2", 2, "G", "B")
    assert row.direct == 1 and row.agree


def test_growth():
    series, partial = growth_series("A2", "T", "B", [2, 3])
    assert not partial and series[0] < series[1]


def test_size_cap():
    with pytest.raises(SizeCapError):
        build_group("B2", 5)

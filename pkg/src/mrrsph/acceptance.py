"""The acceptance criteria as callables returning a verdict and details.

Shared by ``tests/test_acceptance.py`` and ``mrrsph verify-all``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from .dimcrit import criterion_value
from .finiteoracle import build_group, count_row, double_coset_count, growth_series
from .rootsys import build_root_system, classical_root_count, iter_bits, rank_of
from .spherical import (
    F4_MAXIMAL_NON_TABLE,
    _d_pair_labels,
    _rank2_pairs,
    b2_meeting_levi,
    classify,
    complement_kinds,
    f4_sublattice_kinds,
    find_complement,
    in_table,
    is_anti_open,
    is_lawther_exception,
    constructed_complement,
    table_labels,
    validate_witness,
)
from .subsystems import (
    TypeLabel,
    all_closed_subsystems,
    enumerate_generic_mrr,
    find_mrr,
    full_group,
    levi_subsystems,
    mrr_from_mask,
)


def classification_groups(rank_cap: int = 8) -> list[tuple[str, int]]:
    out = [("G", 2), ("F", 4), ("E", 6), ("E", 7), ("E", 8)]
    out += [("A", n) for n in range(1, rank_cap + 1)]
    out += [("B", n) for n in range(2, rank_cap + 1)]
    out += [("C", n) for n in range(2, rank_cap + 1)]
    out += [("D", n) for n in range(4, rank_cap + 1)]
    return out


@dataclass
class Verdict:
    number: int
    title: str
    passed: bool
    details: list[str] = field(default_factory=list)
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" ({self.details[0]})" if self.details else ""
        return f"[{status}] criterion {self.number}: {self.title}{extra} [{self.seconds:.1f}s]"


@lru_cache(maxsize=None)
def _reports(rank_cap: int = 8):
    return {f"{f}{n}": classify(build_root_system(f, n), rank_cap) for f, n in classification_groups(rank_cap)}


def criterion_1() -> Verdict:
    bad = []
    for name, rep in _reports().items():
        rs = build_root_system(name[0], int(name[1:]))
        expected = table_labels(rs.family, rs.rank) - {full_group(rs).label}
        got = rep.spherical_labels()
        for lab in sorted(map(str, got - expected)):
            bad.append(f"{name}: {lab} has no A2/B2 complement but is not in the table")
        for lab in sorted(map(str, expected - got)):
            bad.append(f"{name}: table lists {lab}, classification disagrees")
    msg = [f"{len(bad)} discrepancies"] + bad if bad else ["0 discrepancies"]
    return Verdict(1, "table reproduction", not bad, msg)


def criterion_2() -> Verdict:
    bad = []
    exceptional = set()
    for name, rep in _reports().items():
        rs = build_root_system(name[0], int(name[1:]))
        for r in rep.records:
            if r.spherical != r.in_table:
                bad.append(f"{name} {r.label}: no-complement={r.spherical}, in-table={r.in_table}")
            if r.anti_open != r.lawther_node:
                bad.append(f"{name} {r.label}: anti-open and the Lawther node condition disagree")
            if r.anti_open and not r.spherical:
                bad.append(f"{name} {r.label}: anti-open with a complement")
            if r.in_table and not r.anti_open:
                exceptional.add((name, str(r.label)))
            if r.anti_open != (r.in_table and not is_lawther_exception(rs, r.label)):
                bad.append(f"{name} {r.label}: anti-open differs from 'in table and not one of the three exceptions'")
    expected = set()
    for f, n in classification_groups():
        rs = build_root_system(f, n)
        for mrr in enumerate_generic_mrr(rs):
            if is_lawther_exception(rs, mrr.label):
                expected.add((f"{f}{n}", str(mrr.label)))
    if exceptional != expected:
        bad.append(f"exceptional pairs differ: {sorted(exceptional ^ expected)}")
    msg = [f"{len(bad)} violations"] + bad if bad else [f"{len(expected)} exceptional pairs, all of the three shapes"]
    return Verdict(2, "theorem equivalences", not bad, msg)


def criterion_3() -> Verdict:
    rs = build_root_system("B", 2)
    hr = rs.highest_root_index
    X = mrr_from_mask(rs, (1 << hr) | (1 << rs.neg(hr)))
    checks = {
        "type A1+T1": X.label == TypeLabel.parse("A1+T1"),
        "not anti-open": not is_anti_open(rs, X),
        "alpha1, alpha2, alpha1+alpha2 outside X": all(
            not (X.mask >> rs.root_index(v)) & 1 for v in [(1, 0), (0, 1), (1, 1)]
        ),
        "alpha1+2alpha2 in X": bool((X.mask >> rs.root_index((1, 2))) & 1),
        "no A2/B2 complement": find_complement(rs, X, ("A2-long", "A2-short", "B2")) is None,
        "in table": in_table(rs, X.label),
    }
    bad = [k for k, v in checks.items() if not v]
    return Verdict(3, "B2 high-root A1T1 regression", not bad, bad or ["all six checks hold"])


def criterion_4() -> Verdict:
    bad = []
    counted = 0
    for f in "BC":
        for n in range(2, 9):
            rs = build_root_system(f, n)
            dpairs = _d_pair_labels(n)
            for mrr in enumerate_generic_mrr(rs):
                if in_table(rs, mrr.label):
                    continue
                counted += 1
                if n == 2 or (f == "B" and mrr.label in dpairs):
                    expected = "B2"
                else:
                    expected = "A2-long" if f == "B" else "A2-short"
                try:
                    w = constructed_complement(rs, mrr)
                except ValueError as e:
                    bad.append(f"{f}{n} {mrr.label}: {e}")
                    continue
                if w.kind != expected or not validate_witness(rs, mrr, w):
                    bad.append(f"{f}{n} {mrr.label}: got {w.kind}, expected {expected}")
            if f == "B":
                for removed, L in levi_subsystems(rs).items():
                    if not removed:
                        continue
                    K, meet = b2_meeting_levi(rs, L)
                    if str(meet) not in ("1", "A1", "A1~"):
                        bad.append(f"B{n} Levi {removed}: K meets it in {meet}")
    rs = build_root_system("F", 4)
    for lab, expected in F4_MAXIMAL_NON_TABLE.items():
        H = find_mrr(rs, lab)
        got = f4_sublattice_kinds(H)
        scan = complement_kinds(rs, H) & {"A2-long", "A2-short"}
        if got != expected or scan != expected:
            bad.append(f"F4 {lab}: constructed {sorted(got)}, scan {sorted(scan)}, expected {sorted(expected)}")
    msg = [f"{counted} B/C subgroups and 6 F4 subgroups; {len(bad)} mismatches"] + bad
    return Verdict(4, "prescribed complement constructions", not bad, msg)


def criterion_5() -> Verdict:
    bad = []
    configs = 0
    for f, n in classification_groups():
        rs = build_root_system(f, n)
        for _, _, mask, kind in _rank2_pairs(rs):
            if kind.startswith("A2"):
                Ls = [0]
            elif kind == "B2":
                Ls = [0] + [(1 << i) | (1 << rs.neg(i)) for i in iter_bits(mask) if i < rs.num_positive]
            else:
                continue
            for L in Ls:
                configs += 1
                rep = criterion_value(rs, 0, L, mask)
                if rep.value < 1:
                    bad.append(f"{rs.name} {kind}: value {rep.value}")
    return Verdict(5, "criterion floor", not bad, [f"{configs} configurations, minimum >= 1" if not bad else f"{len(bad)} below 1"] + bad[:20])


CONFIG_MATRIX = [(k, q, X, P) for k in ("A2", "B2") for q in (2, 3) for X in ("T", "B", "L1", "A1T1") for P in ("B", "P1")]


def criterion_6() -> Verdict:
    bad = []
    for k, q, X, P in CONFIG_MATRIX:
        row = count_row(k, q, X, P)
        if not row.agree or not row.bounds_hold:
            bad.append(f"{k} q={q} X={X} P={P}: {row}")
    return Verdict(6, "finite-oracle identities", not bad, [f"{len(CONFIG_MATRIX)} configurations"] + bad)


def criterion_7() -> Verdict:
    bad = []
    for k, qs, expected in (("A2", (2, 3, 4), 6), ("B2", (2, 3), 8)):
        for q in qs:
            G = build_group(k, q)
            c = double_coset_count(G.subgroup("B"), G, "B")
            if c != expected:
                bad.append(f"{k} q={q}: {c}")
    return Verdict(7, "Bruhat counts", not bad, bad or ["6 for A2 at q=2,3,4; 8 for B2 at q=2,3"])


def criterion_8() -> Verdict:
    series, partial = growth_series("A2", "T", "B", [2, 3, 4])
    ok = not partial and len(series) == 3 and all(a < b for a, b in zip(series, series[1:]))
    return Verdict(8, "torus growth in A2", ok, [f"counts {series}"])


def criterion_9() -> Verdict:
    bad = []
    for f, ns in (("A", range(1, 9)), ("B", range(2, 9)), ("C", range(2, 9)), ("D", range(3, 9)),
                  ("E", (6, 7, 8)), ("F", (4,)), ("G", (2,))):
        for n in ns:
            got = len(build_root_system(f, n).roots)
            if got != classical_root_count(f, n):
                bad.append(f"{f}{n}: {got} roots")
    checked = 0
    for f, ns in (("A", range(1, 5)), ("B", range(2, 5)), ("C", range(2, 5)), ("D", (4,)), ("F", (4,)), ("G", (2,))):
        for n in ns:
            rs = build_root_system(f, n)
            for m in all_closed_subsystems(rs):
                if m == rs.full_mask:
                    continue
                checked += 1
                rest = [rs.roots[i] for i in iter_bits(rs.full_mask & ~m)]
                if rank_of(rest) != n:
                    bad.append(f"{rs.name}: complement of a closed subsystem does not span")
                comp = rs.full_mask & ~m
                for b in iter_bits(m):
                    if not any(rs.ip(a, b) for a in iter_bits(comp)):
                        bad.append(f"{rs.name}: root {rs.roots[b]} orthogonal to the complement")
                        break
    return Verdict(9, "root-system self-checks", not bad, [f"root counts for 33 types; span property on {checked} subsystems"] + bad)


CRITERIA: list[Callable[[], Verdict]] = [
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
]


def run(number: int) -> Verdict:
    t = time.time()
    v = CRITERIA[number - 1]()
    v.seconds = time.time() - t
    return v


def run_all() -> list[Verdict]:
    return [run(k) for k in range(1, len(CRITERIA) + 1)]

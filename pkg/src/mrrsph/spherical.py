"""Sphericality of generic maximal-rank reductive subgroups.

A subgroup H is declared spherical exactly when no closed A2 or B2
subsystem avoids the roots of H.  The hard-coded table of spherical
subgroups lives in ``data/table1.json`` and is compared against that
verdict by :func:`classify`.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from itertools import product
from typing import Iterable, Sequence

from .rootsys import RootSystem, Subsystem, closure_mask, iter_bits
from .subsystems import (
    Component,
    LabelError,
    MRRSubgroup,
    TypeLabel,
    enumerate_generic_mrr,
    full_group,
    label_of_nodes,
    levi_mask,
    type_of,
)

KINDS = ("A2-long", "A2-short", "B2", "G2")
TABLE_KINDS = ("A2-long", "A2-short", "B2")

# (ambient family, subgroup label builder) for Lawther's exceptional cases
_EXCEPTIONS = {
    "B": lambda n: TypeLabel.make([Component("A", n - 1)], 1),
    "C": lambda n: TypeLabel.make([Component("C", n - 1)], 1),
    "G": lambda n: TypeLabel.make([Component("A", 2)]),
}


def kind_of_label(label: TypeLabel) -> str | None:
    if label.torus_rank or len(label.components) != 1:
        return None
    c = label.components[0]
    if (c.family, c.rank) == ("A", 2):
        return "A2-short" if c.short else "A2-long"
    if (c.family, c.rank) in (("B", 2), ("G", 2)):
        return f"{c.family}2"
    return None


@dataclass(frozen=True)
class ComplementWitness:
    """A closed rank-2 subsystem K generated by a pair of roots."""

    kind: str
    subsystem: Subsystem
    generating_pair: tuple[int, int]
    route: str = "pair-scan"

    def to_json(self) -> dict:
        rs = self.subsystem.ambient
        return {
            "kind": self.kind,
            "route": self.route,
            "generating_pair": [list(rs.roots[i]) for i in self.generating_pair],
            "subsystem": self.subsystem.to_json(),
        }


@lru_cache(maxsize=None)
def _rank2_pairs(rs: RootSystem) -> tuple[tuple[int, int, int, str], ...]:
    """Pairs (i, j), i < j, generating a rank-2 subsystem of type A2, B2 or
    G2, in lexicographic order and with repeated subsystems dropped.

    Pairs with neither sum nor difference a root generate A1+A1 and are
    skipped, so a scan over this list is exhaustive for the kinds above.
    """
    out = []
    seen = set()
    total = len(rs.roots)
    for i in range(total):
        partners = {j for j, _ in rs.sums[i]} | {rs.neg(j) for j, _ in rs.sums[i]}
        for j in sorted(partners):
            if j <= i or j == rs.neg(i):
                continue
            mask = closure_mask(rs, (1 << i) | (1 << j))
            if mask in seen:
                continue
            seen.add(mask)
            kind = _kind_of_mask(rs, mask)
            if kind is None:
                raise AssertionError("rank-2 closure of unexpected type")
            out.append((i, j, mask, kind))
    return tuple(out)


def _kind_of_mask(rs: RootSystem, mask: int) -> str | None:
    # the torus part of the ambient is irrelevant for a rank-2 piece
    return kind_of_label(TypeLabel(type_of(Subsystem(rs, mask)).components, 0))


def _as_mask(H: MRRSubgroup | Subsystem | int) -> int:
    if isinstance(H, int):
        return H
    if isinstance(H, MRRSubgroup):
        return H.mask
    return H.mask


def find_complement(
    rs: RootSystem, H: MRRSubgroup | Subsystem | int, kinds: Iterable[str] = TABLE_KINDS
) -> ComplementWitness | None:
    """First closed subsystem of a requested kind disjoint from Phi(H), or
    ``None`` once every generating pair has been examined."""
    wanted = set(kinds)
    bad = wanted - set(KINDS)
    if bad:
        raise ValueError(f"unknown complement kinds {sorted(bad)}")
    hmask = _as_mask(H)
    for i, j, mask, kind in _rank2_pairs(rs):
        if kind in wanted and not mask & hmask:
            return ComplementWitness(kind, Subsystem(rs, mask), (i, j))
    return None


def complement_kinds(rs: RootSystem, H: MRRSubgroup | Subsystem | int) -> set[str]:
    hmask = _as_mask(H)
    return {kind for _, _, mask, kind in _rank2_pairs(rs) if not mask & hmask}


def validate_witness(rs: RootSystem, H: MRRSubgroup | Subsystem | int, w: ComplementWitness) -> bool:
    """Recompute the closure of the generating pair and its type from scratch."""
    i, j = w.generating_pair
    mask = closure_mask(rs, (1 << i) | (1 << j))
    if mask != w.subsystem.mask or mask & _as_mask(H):
        return False
    return _kind_of_mask(rs, mask) == w.kind


def is_anti_open(rs: RootSystem, H: MRRSubgroup | Subsystem | int) -> bool:
    """No alpha, beta with alpha, beta and alpha+beta all outside Phi(H)."""
    comp = rs.full_mask & ~_as_mask(H)
    for i, j, k in rs.sum_triples:
        if (comp >> i) & 1 and (comp >> j) & 1 and (comp >> k) & 1:
            return False
    return True


@lru_cache(maxsize=None)
def anti_open_labels(rs: RootSystem) -> frozenset[TypeLabel]:
    """Labels obtained by removing one node with lambda = 1, or one node of
    the extended diagram with lambda = 2."""
    lam = rs.highest_root
    simple = [rs.simple_index(k) for k in range(1, rs.rank + 1)]
    out = set()
    for k in range(rs.rank):
        rest = simple[:k] + simple[k + 1 :]
        if lam[k] == 1:
            out.add(label_of_nodes(rs, rest))
        if lam[k] == 2:
            out.add(label_of_nodes(rs, rest + [rs.neg(rs.highest_root_index)]))
    return frozenset(out)


def lawther_node_condition(rs: RootSystem, H: MRRSubgroup | TypeLabel) -> bool:
    label = H.label if isinstance(H, MRRSubgroup) else H
    return label in anti_open_labels(rs)


# ---------------------------------------------------------------- the table


_TERM = re.compile(r"\s*([+-]?)\s*([a-z]|\d+)")


def _eval_rank(expr: str, env: dict[str, int]) -> int:
    pos, total = 0, 0
    expr = expr.strip()
    while pos < len(expr):
        m = _TERM.match(expr, pos)
        if not m or m.end() == pos:
            raise ValueError(f"bad rank expression {expr!r}")
        sign = -1 if m.group(1) == "-" else 1
        tok = m.group(2)
        total += sign * (int(tok) if tok.isdigit() else env[tok])
        pos = m.end()
    return total


@lru_cache(maxsize=None)
def load_table() -> dict:
    text = resources.files("mrrsph").joinpath("data/table1.json").read_text()
    return json.loads(text)


@dataclass(frozen=True)
class TableEntry:
    row: str
    params: tuple[tuple[str, int], ...]
    label: TypeLabel
    degenerate: bool

    def to_json(self) -> dict:
        return {"row": self.row, "params": dict(self.params), "label": str(self.label), "degenerate": self.degenerate}


def _raw_components(row: dict, env: dict[str, int]) -> list[Component]:
    return [Component(c["family"], _eval_rank(c["rank"], env), bool(c.get("short", False))) for c in row["components"]]


def _is_degenerate(comps: list[Component]) -> bool:
    for c in comps:
        if c.rank == 0 or (c.family == "D" and c.rank <= 3) or (c.family in "BC" and c.rank <= 2):
            return True
    return False


@lru_cache(maxsize=None)
def table_entries(family: str, rank: int) -> tuple[TableEntry, ...]:
    """Every instantiation of the table rows for the ambient type, including
    degenerate ones (rank-0 factors, D1 as a torus, D2, D3, B1, C1, C2)."""
    out = []
    for row in load_table()["rows"]:
        amb = row["ambient"]
        if amb["family"] != family:
            continue
        names = sorted(row["params"])
        ranges = [range(row["params"][v], rank + 2) for v in names]
        for values in product(*ranges):
            env = dict(zip(names, values))
            if _eval_rank(amb["rank"], env) != rank:
                continue
            comps = _raw_components(row, env)
            label = TypeLabel.make(comps, row["torus"])
            out.append(TableEntry(row["id"], tuple(env.items()), label, _is_degenerate(comps)))
    return tuple(out)


def _ambient_label(rs_or_label) -> tuple[str, int]:
    if isinstance(rs_or_label, RootSystem):
        return rs_or_label.family, rs_or_label.rank
    if isinstance(rs_or_label, tuple):
        return rs_or_label
    lab = TypeLabel.parse(rs_or_label) if isinstance(rs_or_label, str) else rs_or_label
    if len(lab.components) != 1 or lab.torus_rank:
        raise LabelError(f"ambient group must be simple, got {lab}")
    c = lab.components[0]
    return c.family, c.rank


def in_table(G, H) -> bool:
    """Whether H appears as a spherical subgroup of G in the table.

    ``G`` may be a RootSystem, a (family, rank) pair or a label; ``H`` a
    label, label string or MRRSubgroup.  The whole group counts as listed.
    """
    family, rank = _ambient_label(G)
    if isinstance(H, MRRSubgroup):
        H = H.label
    elif isinstance(H, str):
        H = TypeLabel.parse(H)
    if H == TypeLabel.make([Component(family, rank)]):
        return True
    return any(e.label == H for e in table_entries(family, rank))


def table_labels(family: str, rank: int) -> set[TypeLabel]:
    return {e.label for e in table_entries(family, rank)}


def is_lawther_exception(rs: RootSystem, label: TypeLabel) -> bool:
    f = _EXCEPTIONS.get(rs.family)
    return f is not None and f(rs.rank) == label


# ------------------------------------------------------------ classification


@dataclass(frozen=True)
class SubgroupRecord:
    label: TypeLabel
    in_table: bool
    anti_open: bool
    lawther_node: bool
    witness: ComplementWitness | None
    subgroup: MRRSubgroup = field(compare=False, repr=False)

    @property
    def spherical(self) -> bool:
        return self.witness is None

    @property
    def dimension_obstruction(self) -> bool:
        """dim G/H > dim B, which rules out a dense Borel orbit."""
        return dimension_obstructed(self.subgroup)

    def to_json(self) -> dict:
        return {
            "label": str(self.label),
            "spherical": self.spherical,
            "in_table": self.in_table,
            "anti_open": self.anti_open,
            "lawther_node": self.lawther_node,
            "dimension_obstruction": self.dimension_obstruction,
            "complement": self.witness.to_json() if self.witness else None,
            "absence_certified": self.witness is None,
            "path": list(self.subgroup.path),
        }


@dataclass
class ClassificationReport:
    group: str
    records: list[SubgroupRecord]
    violations: list[str]
    degenerate_rows: list[TableEntry]
    assumptions: tuple[str, ...] = (
        "generic MRR subgroups are those produced by the Borel-de Siebenthal recursion",
        "subgroups are deduplicated by Lie type",
        "the whole group is omitted as improper",
    )
    partial: bool = False

    @property
    def ok(self) -> bool:
        return not self.violations and not self.partial

    def spherical_labels(self) -> set[TypeLabel]:
        return {r.label for r in self.records if r.spherical}

    def non_spherical_labels(self) -> set[TypeLabel]:
        return {r.label for r in self.records if not r.spherical}

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "ok": self.ok,
            "partial": self.partial,
            "records": [r.to_json() for r in self.records],
            "violations": list(self.violations),
            "degenerate_table_rows": [e.to_json() for e in self.degenerate_rows],
            "assumptions": list(self.assumptions),
        }

    def to_text(self) -> str:
        lines = [f"{self.group}: {len(self.records)} proper generic MRR types"]
        width = max([len(str(r.label)) for r in self.records] + [4])
        for r in sorted(self.records, key=lambda r: (not r.spherical, str(r.label))):
            verdict = "spherical" if r.spherical else f"not spherical ({r.witness.kind} complement)"
            note = "" if r.spherical == r.in_table else "  [disagrees with table]"
            lines.append(f"  {str(r.label):<{width}}  {verdict}{note}")
        lines.append("consistent" if self.ok else "VIOLATIONS: " + "; ".join(self.violations))
        return "\n".join(lines)


def dimension_obstructed(H: MRRSubgroup) -> bool:
    rs = H.ambient
    codim = len(rs.roots) - bin(H.mask).count("1")
    return codim > rs.num_positive + rs.rank


def classify(rs: RootSystem, rank_cap: int = 8) -> ClassificationReport:
    """All four verdicts for every proper generic MRR subgroup, with the
    equivalences between them checked."""
    if rs.rank > rank_cap:
        return ClassificationReport(rs.name, [], [f"rank {rs.rank} exceeds cap {rank_cap}"], [], partial=True)
    records = []
    violations = []
    top = full_group(rs).label
    for mrr in enumerate_generic_mrr(rs):
        if mrr.label == top:
            continue
        w = find_complement(rs, mrr, TABLE_KINDS)
        rec = SubgroupRecord(
            mrr.label,
            in_table(rs, mrr.label),
            is_anti_open(rs, mrr),
            lawther_node_condition(rs, mrr),
            w,
            mrr,
        )
        records.append(rec)
        if w is not None and not validate_witness(rs, mrr, w):
            violations.append(f"{mrr.label}: witness failed re-validation")
        if rec.spherical != rec.in_table:
            violations.append(f"{mrr.label}: complement test says spherical={rec.spherical}, table says {rec.in_table}")
        if rec.spherical and rec.dimension_obstruction:
            violations.append(f"{mrr.label}: no complement, yet dim G/H exceeds dim B")
        if rec.anti_open != rec.lawther_node:
            violations.append(f"{mrr.label}: anti-open={rec.anti_open} but node condition={rec.lawther_node}")
        if rec.anti_open and not rec.spherical:
            violations.append(f"{mrr.label}: anti-open yet has a complement")
        expected_ao = rec.in_table and not is_lawther_exception(rs, mrr.label)
        if rec.anti_open != expected_ao:
            violations.append(f"{mrr.label}: anti-open={rec.anti_open} contradicts table-minus-exceptions")
    found = {r.label for r in records}
    for entry in table_entries(rs.family, rs.rank):
        if entry.label != top and entry.label not in found:
            violations.append(f"table row {entry.row} {dict(entry.params)} gives {entry.label}, not enumerated")
    degenerate = [e for e in table_entries(rs.family, rs.rank) if e.degenerate]
    return ClassificationReport(rs.name, records, violations, degenerate)


# ------------------------------------------------- explicit constructions


def b2_meeting_levi(rs: RootSystem, L: MRRSubgroup | Iterable[int]) -> tuple[Subsystem, TypeLabel]:
    """For B_n and a proper standard Levi L, the B2 subsystem K generated by
    beta1 = alpha_1 and beta2 = alpha_2 + ... + alpha_n, with the type of
    K meet Phi(L)."""
    if rs.family != "B":
        raise ValueError("b2_meeting_levi needs an ambient of type B")
    lmask = L.mask if isinstance(L, MRRSubgroup) else levi_mask(rs, L)
    if lmask == rs.full_mask:
        raise ValueError("the Levi must be proper")
    n = rs.rank
    b1 = rs.root_index((1,) + (0,) * (n - 1))
    b2 = rs.root_index((0,) + (1,) * (n - 1))
    K = closure_mask(rs, (1 << b1) | (1 << b2))
    meet = K & lmask
    lab = type_of(Subsystem(rs, meet))
    return Subsystem(rs, K), TypeLabel(lab.components, 0)


def _rank2_witness(rs: RootSystem, hmask: int, alpha: int, beta: int, route: str) -> ComplementWitness:
    if rs.ip(alpha, beta) > 0:
        alpha = rs.neg(alpha)
    mask = closure_mask(rs, (1 << alpha) | (1 << beta))
    kind = _kind_of_mask(rs, mask)
    if mask & hmask or kind is None:
        raise AssertionError(f"{route} produced an invalid complement")
    return ComplementWitness(kind, Subsystem(rs, mask), tuple(sorted((alpha, beta))), route)


def span_lemma_pair(rs: RootSystem, phi: int, phi_hat: int, beta: int) -> int:
    """Some alpha in phi - phi_hat not orthogonal to beta."""
    for a in iter_bits(phi & ~phi_hat):
        if rs.ip(a, beta):
            return a
    raise AssertionError("complement of a proper closed subsystem is orthogonal to a root")


def short_long_complement_via_sublattice(
    rs: RootSystem, H: MRRSubgroup | int, which: str
) -> ComplementWitness | None:
    """Complements through a sub-root-system phi of a single length.

    ``which`` is ``"long-roots"`` or ``"short-roots"`` (phi is the D_n or
    D4 formed by those roots), or ``"short-D4-in-F4"``.  With phi(H) the
    part of Phi(H) in phi, an intermediate phi > phi_hat > phi(H) is
    sought; a root beta of phi_hat - phi(H) and a partner alpha from the
    span lemma then generate an A2 complement.  ``None`` means phi(H) is
    maximal in (or equal to) phi.
    """
    if which == "short-D4-in-F4":
        if rs.name != "F4":
            raise ValueError("short-D4-in-F4 needs F4")
        which = "short-roots"
    if which not in ("long-roots", "short-roots"):
        raise ValueError(f"unknown sublattice {which!r}")
    if not rs.two_lengths:
        raise ValueError(f"{rs.name} has a single root length")
    hmask = _as_mask(H)
    phi = rs.long_mask if which == "long-roots" else rs.short_mask
    phi_h = phi & hmask
    for beta in iter_bits(phi & ~phi_h):
        phi_hat = closure_mask(rs, phi_h | (1 << beta), universe=phi)
        if phi_hat != phi:
            alpha = span_lemma_pair(rs, phi, phi_hat, beta)
            return _rank2_witness(rs, hmask, alpha, beta, f"sublattice:{which}")
    return None


def b2_complement_via_short_root(rs: RootSystem, H: MRRSubgroup | int) -> ComplementWitness | None:
    """For B_n: an intermediate closed phi_hat containing a short root absent
    from Phi(H), then the span-lemma pair built on that short root."""
    hmask = _as_mask(H)
    for beta in iter_bits(rs.short_mask & ~hmask):
        phi_hat = closure_mask(rs, hmask | (1 << beta))
        if phi_hat != rs.full_mask:
            alpha = span_lemma_pair(rs, rs.full_mask, phi_hat, beta)
            return _rank2_witness(rs, hmask, alpha, beta, "short-root-extension")
    return None


def _d_pair_labels(n: int) -> set[TypeLabel]:
    return {TypeLabel.make([Component("D", a), Component("D", n - a)]) for a in range(1, n)}


def constructed_complement(rs: RootSystem, H: MRRSubgroup) -> ComplementWitness:
    """The complement prescribed for a non-table H in B_n or C_n, or for
    the maximal non-table subgroups of F4."""
    if rs.family in "BC":
        n = rs.rank
        if n == 2:
            if H.label.semisimple_rank:
                raise ValueError(f"{H.label} is listed in the table")
            ones = [rs.simple_index(1), rs.simple_index(2)]
            return _rank2_witness(rs, H.mask, ones[0], ones[1], "whole-group")
        if rs.family == "B" and H.label in _d_pair_labels(n):
            w = b2_complement_via_short_root(rs, H)
        else:
            w = short_long_complement_via_sublattice(rs, H, "long-roots" if rs.family == "B" else "short-roots")
        if w is None:
            raise ValueError(f"{H.label} has no intermediate subsystem; is it in the table?")
        return w
    if rs.name == "F4":
        w = short_long_complement_via_sublattice(rs, H, "short-roots")
        if w is None:
            w = short_long_complement_via_sublattice(rs, H, "long-roots")
        if w is None:
            raise ValueError(f"{H.label} has no single-length intermediate subsystem")
        return w
    raise ValueError(f"no prescribed construction for {rs.name}")


def f4_sublattice_kinds(H: MRRSubgroup) -> set[str]:
    rs = H.ambient
    out = set()
    for which in ("long-roots", "short-roots"):
        w = short_long_complement_via_sublattice(rs, H, which)
        if w is not None:
            out.add(w.kind)
    return out


F4_MAXIMAL_NON_TABLE = {
    "C3+T1": {"A2-long"},
    "A2+A2~": {"A2-long", "A2-short"},
    "B3+T1": {"A2-short"},
    "A1+A1+B2": {"A2-short"},
    "A1~+A3": {"A2-short"},
    "D4": {"A2-short"},
}


def levi_unipotent_complement(rs: RootSystem, removed: Sequence[int]) -> ComplementWitness | None:
    """For a standard Levi with non-abelian unipotent radical: a pair of
    non-commuting positive roots outside the Levi whose closure avoids the
    Levi.  ``None`` if no such pair exists (always so when the radical is
    abelian; in G2 also for the Levi of the long simple root, where every
    non-commuting pair closes up onto a subsystem containing it)."""
    lmask = levi_mask(rs, removed)
    N = rs.num_positive
    outside = ((1 << N) - 1) & ~lmask
    for i in iter_bits(outside):
        for j, k in rs.sums[i]:
            if j > i and (outside >> j) & 1:
                mask = closure_mask(rs, (1 << i) | (1 << j))
                if not mask & lmask:
                    return ComplementWitness(_kind_of_mask(rs, mask), Subsystem(rs, mask), (i, j), "unipotent-radical")
    return None


def radical_is_abelian(rs: RootSystem, removed: Sequence[int]) -> bool:
    lmask = levi_mask(rs, removed)
    N = rs.num_positive
    outside = ((1 << N) - 1) & ~lmask
    return not any((outside >> i) & 1 and (outside >> j) & 1 for i, j, _ in rs.sum_triples if i < N and j < N)

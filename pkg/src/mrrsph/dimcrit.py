"""The Dimension Criterion as root-count bookkeeping.

For a semisimple s in X and L with centralizer root system phi_s the
criterion reads

    dim Z(G_s) + 1/2 dim G_s - dim X_s - 1/2 dim L_s > 0,

and every dimension is a root count plus the ambient rank.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .rootsys import RootSystem, Subsystem, closure_mask, is_closed_mask, iter_bits, rank_of
from .spherical import _rank2_pairs, classify, in_table
from .subsystems import (
    MRRSubgroup,
    TypeLabel,
    UndecidedError,
    apply_word,
    component_highest_root,
    diagram_components,
    base_of_mask,
    levi_subsystems,
    type_of,
    weyl_orbit,
)

ASSUMPTIONS = (
    "centralizer root systems range over pseudo-Levi subsystems (simply connected G)",
    "X and L contain the standard maximal torus",
    "the Levi form of the criterion is used; P_s is not modelled",
)


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


def group_dim(rank: int, subsystem: Subsystem | int) -> int:
    """Dimension of the reductive group with the given roots and a rank-n torus."""
    mask = subsystem if isinstance(subsystem, int) else subsystem.mask
    return _popcount(mask) + rank


def _mask(x: MRRSubgroup | Subsystem | int) -> int:
    return x if isinstance(x, int) else x.mask


@dataclass(frozen=True)
class CriterionReport:
    phi_s: Subsystem
    dim_ZGs: int
    dim_Gs: int
    dim_Xs: int
    dim_Ls: int
    value: Fraction
    reduced_value: Fraction
    x_mask: int = field(default=0, repr=False)
    l_mask: int = field(default=0, repr=False)

    @property
    def triggered(self) -> bool:
        return self.value > 0

    @property
    def phi_s_type(self) -> TypeLabel:
        lab = type_of(self.phi_s)
        return TypeLabel(lab.components, 0)

    def to_json(self) -> dict:
        return {
            "phi_s_type": str(self.phi_s_type),
            "phi_s": self.phi_s.to_json(),
            "dims": {"zgs": self.dim_ZGs, "gs": self.dim_Gs, "xs": self.dim_Xs, "ls": self.dim_Ls},
            "value": f"{self.value.numerator}/{self.value.denominator}",
            "triggered": self.triggered,
            "assumptions": list(ASSUMPTIONS),
        }


def criterion_value(
    rs: RootSystem, X: MRRSubgroup | Subsystem | int, L: MRRSubgroup | Subsystem | int, phi_s: Subsystem | int
) -> CriterionReport:
    """Evaluate both the four-term form and the reduced form; they must agree."""
    pmask = _mask(phi_s)
    if not is_closed_mask(rs, pmask):
        raise ValueError("phi_s must be a closed subsystem")
    xm, lm = _mask(X), _mask(L)
    n = rs.rank
    size = _popcount(pmask)
    r = rank_of([rs.roots[i] for i in iter_bits(pmask)])
    x_int, l_int = _popcount(pmask & xm), _popcount(pmask & lm)
    zgs, gs, xs, ls = n - r, size + n, x_int + n, l_int + n
    value = zgs + Fraction(gs, 2) - xs - Fraction(ls, 2)
    reduced = Fraction(size, 2) - r - x_int - Fraction(l_int, 2)
    if value != reduced:
        raise AssertionError("four-term and reduced criterion values disagree")
    return CriterionReport(Subsystem(rs, pmask), zgs, gs, xs, ls, value, reduced, xm, lm)


def _pseudo_levi_children(rs: RootSystem, mask: int) -> Iterable[int]:
    base = base_of_mask(rs, mask)
    for comp in diagram_components(rs, base):
        others = [v for v in base if v not in comp]
        lowest = rs.neg(component_highest_root(rs, comp))
        for v in comp:
            rest = others + [w for w in comp if w != v]
            yield closure_mask(rs, sum(1 << w for w in rest))
            yield closure_mask(rs, sum(1 << w for w in rest + [lowest]))


@lru_cache(maxsize=None)
def _candidates(rs: RootSystem, cap: int) -> tuple[int, ...]:
    seen = {rs.full_mask}
    stack = [rs.full_mask]
    while stack:
        m = stack.pop()
        for child in _pseudo_levi_children(rs, m):
            if child not in seen:
                seen.add(child)
                if len(seen) > cap:
                    raise UndecidedError(f"more than {cap} candidate centralizers")
                stack.append(child)
    return tuple(sorted(seen, key=lambda m: (_popcount(m), m)))


def candidate_centralizers(rs: RootSystem, cap: int = 10**5) -> list[Subsystem]:
    """Subsystems reached from the full system by repeated plain or extended
    node removals, one per member set, smallest first."""
    return [Subsystem(rs, m) for m in _candidates(rs, cap)]


@dataclass(frozen=True)
class WitnessSearch:
    status: str  # "triggered", "absent" or "undecided"
    report: CriterionReport | None = None
    conjugated_levi: Subsystem | None = None
    examined: int = 0
    note: str = ""

    @property
    def triggered(self) -> bool:
        return self.status == "triggered"

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "report": self.report.to_json() if self.report else None,
            "conjugated_levi": self.conjugated_levi.to_json() if self.conjugated_levi else None,
            "examined": self.examined,
            "note": self.note,
            "assumptions": list(ASSUMPTIONS),
        }


def _best(masks: Iterable[int], target: int) -> int:
    return min(masks, key=lambda m: (_popcount(m & target), m))


def _conjugator(rs: RootSystem, src: int, dst: int, budget: int) -> tuple[int, ...]:
    orbit = weyl_orbit(rs, src, budget)
    if dst not in orbit:
        raise AssertionError("subsystems of one rank-2 kind are not conjugate")
    return orbit[dst]


def _finish(rs: RootSystem, X: int, L: int, psi_x: int, L_conj: int, examined: int, note: str) -> WitnessSearch:
    rep = criterion_value(rs, X, L_conj, psi_x)
    return WitnessSearch("triggered", rep, Subsystem(rs, L_conj), examined, note)


def search_infinite_witness(
    rs: RootSystem,
    X: MRRSubgroup | Subsystem | int,
    L: MRRSubgroup | Subsystem | int,
    conjugacy_budget: int = 10**5,
) -> WitnessSearch:
    """Look for a centralizer type phi_s and a Weyl conjugate of L making the
    criterion positive.

    X stays fixed.  For each candidate phi the positions psi_X and psi_L in
    the Weyl orbit of phi minimizing the overlap with X and with L are
    found, and L is moved by the element carrying psi_L to psi_X.  A2 and
    B2 candidates use the full list of rank-2 subsystems, which form single
    Weyl orbits per kind; other candidates use a breadth-first orbit search
    of at most ``conjugacy_budget`` images.
    """
    xm, lm = _mask(X), _mask(L)
    examined = 0
    rank2 = {}
    for _, _, mask, kind in _rank2_pairs(rs):
        rank2.setdefault(kind, []).append(mask)
    for kind in ("A2-long", "A2-short", "B2", "G2"):
        masks = rank2.get(kind)
        if not masks:
            continue
        examined += 1
        px, pl = _best(masks, xm), _best(masks, lm)
        bound = criterion_value(rs, 0, 0, px).value
        ox, ol = _popcount(px & xm), _popcount(pl & lm)
        if bound - ox - Fraction(ol, 2) > 0:
            word = _conjugator(rs, pl, px, conjugacy_budget)
            return _finish(rs, xm, lm, px, apply_word(rs, word, lm), examined, f"rank-2 {kind}")
    undecided = False
    for cand in _candidates(rs, conjugacy_budget):
        size = _popcount(cand)
        r = rank_of([rs.roots[i] for i in iter_bits(cand)])
        if Fraction(size, 2) - r <= 0:
            continue
        if r == 2 and len(diagram_components(rs, base_of_mask(rs, cand))) == 1:
            continue  # irreducible rank 2: already covered above
        examined += 1
        try:
            orbit = weyl_orbit(rs, cand, conjugacy_budget)
        except UndecidedError:
            undecided = True
            continue
        px, pl = _best(orbit, xm), _best(orbit, lm)
        val = Fraction(size, 2) - r - _popcount(px & xm) - Fraction(_popcount(pl & lm), 2)
        if val > 0:
            back = tuple(reversed(orbit[pl]))
            L_conj = apply_word(rs, orbit[px], apply_word(rs, back, lm))
            return _finish(rs, xm, lm, px, L_conj, examined, "pseudo-Levi orbit")
    if undecided:
        return WitnessSearch("undecided", None, None, examined, "some orbits exceeded the conjugacy budget")
    return WitnessSearch("absent", None, None, examined, "no candidate triggers; this is not a finiteness proof")


def validate_witness(rs: RootSystem, X: MRRSubgroup | Subsystem | int, L: MRRSubgroup | Subsystem | int, res: WitnessSearch) -> bool:
    """Re-derive a triggered report: phi_s closed, the moved Levi Weyl
    conjugate to L, and the value recomputed from the raw intersections."""
    if not res.triggered:
        return True
    rep = res.report
    p = rep.phi_s.mask
    if not is_closed_mask(rs, p):
        return False
    lc = res.conjugated_levi.mask
    if _popcount(lc) != _popcount(_mask(L)) or type_of(Subsystem(rs, lc)) != type_of(Subsystem(rs, _mask(L))):
        return False
    r = rank_of([rs.roots[i] for i in iter_bits(p)])
    val = Fraction(_popcount(p), 2) - r - _popcount(p & _mask(X)) - Fraction(_popcount(p & lc), 2)
    return val == rep.value and val > 0


def is_f4_end_node_levi(rs: RootSystem, removed: tuple[int, ...]) -> bool:
    return rs.name == "F4" and removed in ((1,), (4,))


@dataclass
class PairInfinitenessReport:
    group: str
    witnesses: list[dict]
    failures: list[str]
    excluded: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "ok": self.ok,
            "pairs": len(self.witnesses),
            "witnesses": self.witnesses,
            "failures": self.failures,
            "excluded_by_hypothesis": self.excluded,
        }


def pair_infiniteness_check(rs: RootSystem, rank_cap: int = 8, budget: int = 10**5) -> PairInfinitenessReport:
    """For every non-spherical generic MRR X and non-spherical standard Levi
    L (F4 end-node Levis excluded), a triggering witness must exist.

    Non-sphericality is read from the table, which is the authority on
    which subgroups are spherical."""
    if rs.rank > rank_cap:
        return PairInfinitenessReport(rs.name, [], [f"rank {rs.rank} exceeds cap {rank_cap}"], [])
    rep = classify(rs, rank_cap)
    xs = [r.subgroup for r in rep.records if not r.in_table]
    levis = []
    excluded = []
    for removed, L in levi_subsystems(rs).items():
        if in_table(rs, L.label):
            continue
        if is_f4_end_node_levi(rs, removed):
            excluded.append(f"Levi removing node {removed[0]}")
            continue
        levis.append((removed, L))
    witnesses, failures = [], []
    for X in xs:
        for removed, L in levis:
            res = search_infinite_witness(rs, X, L, budget)
            entry = {"x": str(X.label), "levi_removed": list(removed), "levi": str(L.label), "status": res.status}
            if res.triggered:
                entry["phi_s_type"] = str(res.report.phi_s_type)
                entry["value"] = str(res.report.value)
                if not validate_witness(rs, X, L, res):
                    failures.append(f"X={X.label}, L={L.label}: witness failed re-validation")
            else:
                failures.append(f"X={X.label}, L={L.label} (removed {removed}): {res.status}")
            witnesses.append(entry)
    return PairInfinitenessReport(rs.name, witnesses, failures, excluded)


__all__ = [
    "ASSUMPTIONS",
    "CriterionReport",
    "WitnessSearch",
    "PairInfinitenessReport",
    "group_dim",
    "criterion_value",
    "candidate_centralizers",
    "search_infinite_witness",
    "validate_witness",
    "pair_infiniteness_check",
]

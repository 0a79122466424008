"""Maximal-rank reductive subsystems: bases, Lie types, Borel-de Siebenthal
enumeration, Levi subsystems and Weyl conjugacy."""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .rootsys import (
    RootSystem,
    Subsystem,
    apply_perm,
    closure_mask,
    is_closed_mask,
    iter_bits,
)

_FAMILY_ORDER = {f: i for i, f in enumerate("ABCDEFG")}


class LabelError(ValueError):
    pass


class UndecidedError(RuntimeError):
    """A bounded search ran out of budget before reaching an answer."""


@dataclass(frozen=True, order=True)
class Component:
    family: str
    rank: int
    short: bool = False

    def __str__(self) -> str:
        return f"{self.family}{self.rank}{'~' if self.short else ''}"

    def to_json(self) -> dict:
        return {"family": self.family, "rank": self.rank, "short": self.short}


def _normalize(comps: Iterable[Component], torus: int) -> tuple[tuple[Component, ...], int]:
    out = []
    for c in comps:
        f, r, s = c.family, c.rank, c.short
        if r < 0:
            raise LabelError(f"negative rank in {c}")
        if r == 0 and f in "ABCD":
            continue
        if f == "D" and r == 1:
            torus += 1
            continue
        if f == "D" and r == 2:
            out += [Component("A", 1, s), Component("A", 1, s)]
            continue
        if f == "D" and r == 3:
            f = "A"
        elif f in "BC" and r == 1:
            f = "A"
        elif f == "C" and r == 2:
            f = "B"
        if f in "BCFG" or (f in "BC" and r >= 2):
            s = False
        out.append(Component(f, r, s))
    return tuple(sorted(out, key=lambda c: (_FAMILY_ORDER[c.family], c.rank, c.short))), torus


@dataclass(frozen=True)
class TypeLabel:
    """Lie type of a maximal-rank reductive subgroup: the multiset of simple
    components (short ones marked) and the rank of the central torus."""

    components: tuple[Component, ...]
    torus_rank: int = 0

    @classmethod
    def make(cls, comps: Iterable[Component | tuple], torus_rank: int = 0) -> TypeLabel:
        comps = [c if isinstance(c, Component) else Component(*c) for c in comps]
        norm, torus = _normalize(comps, torus_rank)
        return cls(norm, torus)

    @classmethod
    def parse(cls, text: str) -> TypeLabel:
        """Parse ``"A2+A2~"``, ``"D5+T1"``, ``"A1A1B2"`` and similar strings."""
        s = text.strip().replace(" ", "")
        if s == "1":
            return cls.make([], 0)
        pos = 0
        comps = []
        torus = 0
        pat = re.compile(r"\+?([A-Ga-gTt])(\d+)(~?)")
        while pos < len(s):
            m = pat.match(s, pos)
            if not m:
                raise LabelError(f"cannot parse type label {text!r} at {s[pos:]!r}")
            fam, rank, tilde = m.group(1).upper(), int(m.group(2)), bool(m.group(3))
            if fam == "T":
                if tilde:
                    raise LabelError("a torus cannot be short")
                torus += rank
            else:
                if fam == "E" and rank not in (6, 7, 8) or fam == "F" and rank != 4 or fam == "G" and rank != 2:
                    raise LabelError(f"no simple type {fam}{rank}")
                comps.append(Component(fam, rank, tilde))
            pos = m.end()
        if not comps and not torus:
            raise LabelError(f"empty type label {text!r}")
        return cls.make(comps, torus)

    @property
    def semisimple_rank(self) -> int:
        return sum(c.rank for c in self.components)

    @property
    def rank(self) -> int:
        return self.semisimple_rank + self.torus_rank

    def __str__(self) -> str:
        parts = [str(c) for c in self.components]
        if self.torus_rank:
            parts.append(f"T{self.torus_rank}")
        return "+".join(parts) if parts else "1"

    def to_json(self) -> dict:
        return {
            "components": [c.to_json() for c in self.components],
            "torus_rank": self.torus_rank,
            "label": str(self),
        }

    @classmethod
    def from_json(cls, data: dict) -> TypeLabel:
        return cls.make([Component(c["family"], c["rank"], c["short"]) for c in data["components"]], data["torus_rank"])


def _bond(rs: RootSystem, i: int, j: int) -> int:
    b = rs.ip(i, j)
    return 4 * b * b // (rs.norms[i] * rs.norms[j])


def _classify_connected(rs: RootSystem, nodes: Sequence[int]) -> Component:
    k = len(nodes)
    adj = {v: [] for v in nodes}
    mult = {}
    for u, v in combinations(nodes, 2):
        m = _bond(rs, u, v)
        if m:
            if m > 3:
                raise AssertionError(f"not a base: bond {m}")
            adj[u].append(v)
            adj[v].append(u)
            mult[frozenset((u, v))] = m
    short = rs.two_lengths and all(rs.is_short(v) for v in nodes)
    if k - 1 != len(mult):
        raise AssertionError("Dynkin diagram is not a tree")
    if k == 1:
        return Component("A", 1, short)
    ms = sorted(mult.values())
    if 3 in ms:
        if k != 2:
            raise AssertionError("triple bond outside G2")
        return Component("G", 2)
    if 2 in ms:
        if ms.count(2) > 1 or max(len(a) for a in adj.values()) > 2:
            raise AssertionError("invalid diagram with double bond")
        if k == 2:
            return Component("B", 2)
        (u, v), = [tuple(e) for e, m in mult.items() if m == 2]
        ends = [w for w in (u, v) if len(adj[w]) == 1]
        if not ends:
            if k != 4:
                raise AssertionError("double bond inside a long chain")
            return Component("F", 4)
        e = ends[0]
        other = v if e == u else u
        return Component("B" if rs.norms[e] < rs.norms[other] else "C", k)
    degs = sorted(len(a) for a in adj.values())
    if degs[-1] <= 2:
        return Component("A", k, short)
    if degs[-1] > 3 or degs.count(3) > 1:
        raise AssertionError("invalid simply laced diagram")
    centre = next(v for v in nodes if len(adj[v]) == 3)
    arms = []
    for start in adj[centre]:
        length, prev, cur = 1, centre, start
        while len(adj[cur]) == 2:
            prev, cur = cur, next(w for w in adj[cur] if w != prev)
            length += 1
        arms.append(length)
    arms.sort()
    if arms[:2] == [1, 1]:
        return Component("D", k, short)
    table = {(1, 2, 2): 6, (1, 2, 3): 7, (1, 2, 4): 8}
    if tuple(arms) not in table:
        raise AssertionError(f"invalid branched diagram {arms}")
    return Component("E", table[tuple(arms)])


def diagram_components(rs: RootSystem, nodes: Sequence[int]) -> list[tuple[int, ...]]:
    """Connected components of the Dynkin diagram on ``nodes``."""
    nodes = list(nodes)
    parent = {v: v for v in nodes}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for u, v in combinations(nodes, 2):
        if rs.ip(u, v):
            parent[find(u)] = find(v)
    groups: dict[int, list[int]] = {}
    for v in nodes:
        groups.setdefault(find(v), []).append(v)
    return sorted((tuple(sorted(g)) for g in groups.values()), key=lambda g: g[0])


def label_of_nodes(rs: RootSystem, nodes: Sequence[int]) -> TypeLabel:
    comps = [_classify_connected(rs, c) for c in diagram_components(rs, nodes)]
    return TypeLabel.make(comps, rs.rank - len(nodes))


def base_of_mask(rs: RootSystem, mask: int) -> tuple[int, ...]:
    N = rs.num_positive
    pos = mask & ((1 << N) - 1)
    decomposable = 0
    for i in iter_bits(pos):
        for j, k in rs.sums[i]:
            if j < N and (pos >> j) & 1:
                decomposable |= 1 << k
    return tuple(iter_bits(pos & ~decomposable))


def base_of(sub: Subsystem) -> list:
    """Indecomposable positive roots of a closed subsystem."""
    rs = sub.ambient
    return [rs.roots[i] for i in base_of_mask(rs, sub.mask)]


def type_of(sub: Subsystem) -> TypeLabel:
    rs = sub.ambient
    return label_of_nodes(rs, base_of_mask(rs, sub.mask))


@dataclass(frozen=True)
class MRRSubgroup:
    """A closed subsystem together with its type; the central torus rank is
    whatever the subsystem leaves of the ambient rank."""

    subsystem: Subsystem
    label: TypeLabel
    base: tuple[int, ...] = field(compare=False)
    path: tuple[str, ...] = field(default=(), compare=False)

    @property
    def ambient(self) -> RootSystem:
        return self.subsystem.ambient

    @property
    def mask(self) -> int:
        return self.subsystem.mask

    @property
    def torus_rank(self) -> int:
        return self.label.torus_rank

    def __str__(self) -> str:
        return str(self.label)

    def to_json(self) -> dict:
        return {
            "group": self.ambient.name,
            "type": self.label.to_json(),
            "torus_rank": self.torus_rank,
            "subsystem": self.subsystem.to_json(),
            "path": list(self.path),
        }


def mrr_from_mask(rs: RootSystem, mask: int, path: tuple[str, ...] = ()) -> MRRSubgroup:
    base = base_of_mask(rs, mask)
    return MRRSubgroup(Subsystem(rs, mask), label_of_nodes(rs, base), base, path)


def full_group(rs: RootSystem) -> MRRSubgroup:
    return mrr_from_mask(rs, rs.full_mask)


def component_highest_root(rs: RootSystem, nodes: Sequence[int]) -> int:
    mask = closure_mask(rs, sum(1 << v for v in nodes))
    N = rs.num_positive
    return max(iter_bits(mask & ((1 << N) - 1)), key=rs.height)


def _child_node_sets(mrr: MRRSubgroup):
    rs = mrr.ambient
    comps = diagram_components(rs, mrr.base)
    for c_idx, comp in enumerate(comps):
        others = [v for v in mrr.base if v not in comp]
        lowest = rs.neg(component_highest_root(rs, comp))
        for v in comp:
            rest = [w for w in comp if w != v]
            yield f"node:{mrr.base.index(v) + 1}", others + rest
            yield f"ext:{mrr.base.index(v) + 1}", others + rest + [lowest]


def bds_children(mrr: MRRSubgroup) -> list[MRRSubgroup]:
    """One Borel-de Siebenthal step: drop a node from the Dynkin diagram or
    from the extended Dynkin diagram of one component."""
    rs = mrr.ambient
    seen = {mrr.label}
    out = []
    for step, nodes in _child_node_sets(mrr):
        label = label_of_nodes(rs, nodes)
        if label in seen:
            continue
        seen.add(label)
        child = mrr_from_mask(rs, closure_mask(rs, sum(1 << v for v in nodes)), mrr.path + (step,))
        if child.label != label:
            raise AssertionError(f"predicted {label}, realized {child.label}")
        out.append(child)
    return out


@lru_cache(maxsize=None)
def _enumerate(rs: RootSystem, max_depth: int | None) -> tuple[MRRSubgroup, ...]:
    start = full_group(rs)
    found = {start.label: start}
    frontier = [start]
    depth = 0
    while frontier and (max_depth is None or depth < max_depth):
        nxt = []
        for mrr in frontier:
            for child in bds_children(mrr):
                if child.label not in found:
                    found[child.label] = child
                    nxt.append(child)
        frontier = nxt
        depth += 1
    return tuple(found.values())


def enumerate_generic_mrr(rs: RootSystem, max_depth: int | None = None) -> list[MRRSubgroup]:
    """Transitive closure of :func:`bds_children` from the whole group, one
    representative per type label (breadth-first discovery order)."""
    return list(_enumerate(rs, max_depth))


def find_mrr(rs: RootSystem, label: TypeLabel | str) -> MRRSubgroup:
    if isinstance(label, str):
        label = TypeLabel.parse(label)
    for m in enumerate_generic_mrr(rs):
        if m.label == label:
            return m
    known = ", ".join(str(m.label) for m in enumerate_generic_mrr(rs))
    raise LabelError(f"{label} is not a generic MRR type of {rs.name}; known types: {known}")


def apply_recipe(rs: RootSystem, steps: Sequence[str]) -> MRRSubgroup:
    """Follow node removals such as ``["ext:1", "node:3"]``.

    Indices refer to the current base, listed in root-index order (the
    simple roots alpha_1..alpha_n for the whole group).  ``ext:i`` adjoins
    the negative highest root of the component containing node i, then
    drops node i.
    """
    cur = full_group(rs)
    for step in steps:
        choices = dict(_child_node_sets(cur))
        if step not in choices:
            raise LabelError(f"invalid removal {step!r}; base has {len(cur.base)} nodes")
        nodes = choices[step]
        cur = mrr_from_mask(rs, closure_mask(rs, sum(1 << v for v in nodes)), cur.path + (step,))
    return cur


def levi_mask(rs: RootSystem, removed: Iterable[int]) -> int:
    removed = [k - 1 for k in removed]
    mask = 0
    for i, r in enumerate(rs.roots):
        if all(r[k] == 0 for k in removed):
            mask |= 1 << i
    return mask


def levi_subsystems(rs: RootSystem) -> dict[tuple[int, ...], MRRSubgroup]:
    """Standard Levi subsystems keyed by the removed simple nodes (1-based)."""
    out = {}
    nodes = range(1, rs.rank + 1)
    for k in range(rs.rank + 1):
        for removed in combinations(nodes, k):
            path = tuple(f"node:{i}" for i in removed)
            out[removed] = mrr_from_mask(rs, levi_mask(rs, removed), path)
    return out


def levi(rs: RootSystem, removed: Iterable[int]) -> MRRSubgroup:
    removed = tuple(sorted(removed))
    return mrr_from_mask(rs, levi_mask(rs, removed), tuple(f"node:{i}" for i in removed))


def is_end_node(rs: RootSystem, k: int) -> bool:
    """Whether simple node k (1-based) has at most one neighbour."""
    return sum(1 for j in range(rs.rank) if j != k - 1 and rs.sym_form[k - 1][j]) <= 1


def weyl_orbit(rs: RootSystem, mask: int, cap: int = 10**6) -> dict[int, tuple[int, ...]]:
    """Weyl orbit of a root set, each image with a word of simple
    reflections (applied left to right) reaching it."""
    perms = rs.simple_reflection_perms
    seen = {mask: ()}
    queue = deque([mask])
    while queue:
        m = queue.popleft()
        word = seen[m]
        for k, p in enumerate(perms):
            img = apply_perm(p, m)
            if img not in seen:
                seen[img] = word + (k,)
                if len(seen) > cap:
                    raise UndecidedError(f"Weyl orbit exceeds {cap} states")
                queue.append(img)
    return seen


def apply_word(rs: RootSystem, word: Sequence[int], mask: int) -> int:
    perms = rs.simple_reflection_perms
    for k in word:
        mask = apply_perm(perms[k], mask)
    return mask


def _lemma_authoritative(label: TypeLabel) -> bool:
    return len(label.components) == 1 and (
        (label.components[0].family, label.components[0].rank) in (("A", 2), ("B", 2))
    )


def weyl_conjugate(rs: RootSystem, sub1: Subsystem, sub2: Subsystem, cap: int = 10**6) -> bool:
    """Whether some Weyl group element maps ``sub1`` onto ``sub2``.

    Raises :class:`UndecidedError` if the orbit of ``sub1`` exceeds ``cap``.
    """
    if sub1.mask == sub2.mask:
        return True
    t1, t2 = type_of(sub1), type_of(sub2)
    if t1 != t2:
        return False
    if _lemma_authoritative(t1):
        return True
    return sub2.mask in weyl_orbit(rs, sub1.mask, cap)


def is_closed_subsystem(sub: Subsystem) -> bool:
    return is_closed_mask(sub.ambient, sub.mask)


def all_closed_subsystems(rs: RootSystem, cap: int = 10**6) -> list[int]:
    """Every closed subsystem of ``rs`` as a mask, found by adjoining one
    root pair at a time to already-closed sets (smallest first)."""
    seen = {0}
    frontier = [0]
    N = rs.num_positive
    while frontier:
        nxt = []
        for m in frontier:
            for i in range(N):
                if not (m >> i) & 1:
                    c = closure_mask(rs, m | (1 << i))
                    if c not in seen:
                        seen.add(c)
                        if len(seen) > cap:
                            raise UndecidedError(f"more than {cap} closed subsystems")
                        nxt.append(c)
        frontier = nxt
    return sorted(seen, key=lambda m: (bin(m).count("1"), m))

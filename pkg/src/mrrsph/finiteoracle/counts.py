"""Three independent counts of X-orbits on G/P and the bracketing bounds.

* :func:`double_coset_count` follows orbits of the generators of X.
* :func:`charsum_count` averages the number of fixed flags over X.
* :func:`grouped_sum` regroups that average by Jordan decomposition and
  by classes E(s) of semisimple elements whose centralizers in G are
  X-conjugate, and brackets it using the sets Z(s).

:func:`burnside_count` recounts fixed points on flags described as sets
of vectors, without touching the canonical-form machinery.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .groups import FiniteGLT, FiniteSubgroup, SizeCapError, build_group, weyl_order
from .linalg import Matrix, mat_vec, nullspace, rref, span_elements

COLUMNS = ("type", "q", "X", "P", "direct", "charsum", "grouped", "lower", "upper")


def _elements(X: FiniteSubgroup | Sequence[Matrix]) -> Sequence[Matrix]:
    return X.elements if isinstance(X, FiniteSubgroup) else X


def double_coset_count(X: FiniteSubgroup | Sequence[Matrix], G: FiniteGLT, P: str = "B") -> int:
    """Number of X-orbits on G/P, by union-find over the action."""
    flags = G.flags(P)
    index = G.flag_index(P)
    movers = X.gens if isinstance(X, FiniteSubgroup) else X
    parent = list(range(len(flags)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for g in movers:
        for i, f in enumerate(flags):
            j = index[G.act(g, f)]
            a, b = find(i), find(j)
            if a != b:
                parent[a] = b
    return sum(1 for i in range(len(flags)) if find(i) == i)


def induced_trivial(G: FiniteGLT, P: str, g: Matrix) -> int:
    """1_P^G(g): the number of flags of type P fixed by g."""
    return sum(1 for f in G.flags(P) if G.act(g, f) == f)


def charsum_count(X: FiniteSubgroup | Sequence[Matrix], G: FiniteGLT, P: str = "B") -> Fraction:
    elems = _elements(X)
    total = sum(induced_trivial(G, P, x) for x in elems)
    value = Fraction(total, len(elems))
    if value.denominator != 1 or value < 0:
        raise AssertionError(f"character sum {value} is not a nonnegative integer")
    return value


def _point_set(G: FiniteGLT, basis: Sequence[Sequence[int]]) -> frozenset:
    return frozenset(v for v in span_elements(G.F, basis) if any(v))


def burnside_count(X: FiniteSubgroup | Sequence[Matrix], G: FiniteGLT, P: str = "B") -> Fraction:
    """(1/|X|) sum of |Fix(x)|, with each flag held as a tuple of vector sets
    and x applied vector by vector."""
    elems = _elements(X)
    flags = [tuple(_point_set(G, sub) for sub in f) for f in G.flags(P)]
    F, d = G.F, G.d
    total = 0
    for x in elems:
        for f in flags:
            if all(frozenset(mat_vec(F, x, v, d) for v in sub) == sub for sub in f):
                total += 1
    return Fraction(total, len(elems))


# ------------------------------------------------------------ centralizers


def _commutant_basis(G: FiniteGLT, s: Matrix) -> list[Matrix]:
    """Basis of the algebra {M : M s = s M}."""
    F, d = G.F, G.d
    rows = []
    # the (i, j) entry of M s - s M is linear in the entries of M
    for i in range(d):
        for j in range(d):
            row = [0] * (d * d)
            for k in range(d):
                # (M s)_ij = sum_k M_ik s_kj
                row[i * d + k] = F.add[row[i * d + k]][s[k * d + j]]
                # (s M)_ij = sum_k s_ik M_kj
                row[k * d + j] = F.sub(row[k * d + j], s[i * d + k])
            rows.append(row)
    return nullspace(F, rows, d * d)


@dataclass(frozen=True)
class Centralizer:
    key: tuple  # canonical basis of the linear span
    elements: tuple[Matrix, ...] | None  # None for the whole group

    @property
    def is_whole(self) -> bool:
        return self.elements is None


class CentralizerCache:
    """C_G(s) for semisimple s, identified by the linear span of its
    elements.  C_G(s) is G intersected with the commutant of s, and also
    G intersected with its own span, so the span is a faithful key."""

    def __init__(self, G: FiniteGLT):
        self.G = G
        self._by_algebra: dict[tuple, Centralizer] = {}
        self._by_elem: dict[Matrix, Centralizer] = {}
        d = G.d
        self.full_key = tuple(rref(G.F, [tuple(1 if k == m else 0 for k in range(d * d)) for m in range(d * d)]))

    def _is_scalar(self, s: Matrix) -> bool:
        d = self.G.d
        return all(s[i * d + j] == (s[0] if i == j else 0) for i in range(d) for j in range(d))

    def of(self, s: Matrix) -> Centralizer:
        c = self._by_elem.get(s)
        if c is not None:
            return c
        G = self.G
        if self._is_scalar(s):
            c = Centralizer(self.full_key, None)
        else:
            basis = _commutant_basis(G, s)
            akey = tuple(rref(G.F, basis))
            c = self._by_algebra.get(akey)
            if c is None:
                elems = tuple(m for m in span_elements(G.F, basis) if G.is_member(m))
                key = tuple(rref(G.F, elems))
                c = Centralizer(key, elems)
                self._by_algebra[akey] = c
        self._by_elem[s] = c
        return c


def z_set(G: FiniteGLT, s: Matrix, cache: CentralizerCache | None = None) -> list[Matrix]:
    """Z(s) = {t in G : C_G(t) = C_G(s)}; such t lie in the centre of C_G(s)."""
    cache = cache or CentralizerCache(G)
    c = cache.of(s)
    if c.is_whole:
        pool = [t for t in _scalars(G)]
        gens = None
    else:
        pool = c.elements
        gens = [m for m in c.key]
    out = []
    for t in pool:
        if gens is not None and not all(G.mul(t, m) == G.mul(m, t) for m in gens):
            continue
        if cache.of(t).key == c.key:
            out.append(t)
    return out


def _scalars(G: FiniteGLT) -> list[Matrix]:
    d = G.d
    out = []
    for a in G.F.units:
        m = tuple(a if i == j else 0 for i in range(d) for j in range(d))
        if G.is_member(m):
            out.append(m)
    return out


# ------------------------------------------------------------ regrouping


@dataclass
class ClassTerm:
    representative: Matrix
    class_size: int  # |E(s)|
    centralizer_in_x: int  # |X_s|
    z_size: int  # |Z(s)|
    unipotent_classes: list[tuple[int, int]]  # (|X_{s,u}|, fixed flags of s u)


@dataclass
class GroupedResult:
    exact: Fraction
    lower: Fraction
    upper: Fraction
    terms: list[ClassTerm]
    partition_ok: bool

    @property
    def bounds_hold(self) -> bool:
        return self.lower <= self.exact <= self.upper


def equivalence_classes(
    X: FiniteSubgroup, G: FiniteGLT, cache: CentralizerCache | None = None
) -> list[list[Matrix]]:
    """Semisimple elements of X grouped by X-conjugacy of their centralizers in G."""
    cache = cache or CentralizerCache(G)
    ss = [x for x in X.elements if G.is_semisimple(x)]
    pos = {s: i for i, s in enumerate(ss)}
    parent = list(range(len(ss)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(a, b):
        a, b = find(a), find(b)
        if a != b:
            parent[a] = b

    gens = [(g, G.inverse(g)) for g in X.gens]
    for s in ss:
        for g, gi in gens:
            union(pos[s], pos[G.mul(gi, G.mul(s, g))])
    by_key: dict[tuple, int] = {}
    for s in ss:
        k = cache.of(s).key
        if k in by_key:
            union(pos[s], by_key[k])
        else:
            by_key[k] = pos[s]
    classes: dict[int, list[Matrix]] = {}
    for s in ss:
        classes.setdefault(find(pos[s]), []).append(s)
    return list(classes.values())


def _representative(cls: list[Matrix], torus: frozenset[Matrix]) -> Matrix:
    in_torus = [s for s in cls if s in torus]
    return min(in_torus) if in_torus else min(cls)


def _conj_classes(G: FiniteGLT, elems: Sequence[Matrix], within: Sequence[Matrix]) -> list[list[Matrix]]:
    remaining = set(elems)
    out = []
    inverses = [(x, G.inverse(x)) for x in within]
    for u in elems:
        if u not in remaining:
            continue
        cls = {G.mul(xi, G.mul(u, x)) for x, xi in inverses}
        remaining -= cls
        out.append(sorted(cls))
    return out


def grouped_sum(X: FiniteSubgroup, G: FiniteGLT, P: str = "B") -> GroupedResult:
    """The regrouped character sum and its lower and upper brackets."""
    cache = CentralizerCache(G)
    elems = X.elements
    nX = len(elems)
    W = weyl_order(G.kind)
    torus = frozenset(G.torus_elements())
    classes = equivalence_classes(X, G, cache)
    ss_total = sum(len(c) for c in classes)
    flat = [s for c in classes for s in c]
    partition_ok = len(set(flat)) == len(flat) == sum(1 for x in elems if G.is_semisimple(x))
    exact = lower = upper = Fraction(0)
    terms = []
    for cls in classes:
        s = _representative(cls, torus)
        Xs = [x for x in elems if G.mul(x, s) == G.mul(s, x)]
        unip = [u for u in Xs if G.is_unipotent(u)]
        z = len(z_set(G, s, cache))
        ucls = []
        for uc in _conj_classes(G, unip, Xs):
            u = uc[0]
            cent = len(Xs) // len(uc)
            fix = induced_trivial(G, P, G.mul(s, u))
            ucls.append((cent, fix))
            exact += Fraction(len(cls), nX) * Fraction(len(Xs), cent) * fix
            upper += Fraction(z, cent) * fix
            lower += Fraction(z, W * cent) * fix
        terms.append(ClassTerm(s, len(cls), len(Xs), z, ucls))
    if ss_total != len(flat):
        partition_ok = False
    return GroupedResult(exact, lower, upper, terms, partition_ok)


@dataclass
class CountRow:
    type: str
    q: int
    X: str
    P: str
    direct: int
    charsum: str
    grouped: str
    lower: str
    upper: str
    burnside: str
    agree: bool
    bounds_hold: bool

    def to_json(self) -> dict:
        return asdict(self)


def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def count_row(kind: str, q: int, X: str, P: str, with_grouped: bool = True) -> CountRow:
    G = build_group(kind, q)
    sub = G.subgroup(X)
    direct = double_coset_count(sub, G, P)
    cs = charsum_count(sub, G, P)
    bs = burnside_count(sub, G, P)
    if with_grouped:
        gr = grouped_sum(sub, G, P)
        g, lo, up, bounds = gr.exact, gr.lower, gr.upper, gr.bounds_hold and gr.partition_ok
    else:
        g = lo = up = cs
        bounds = True
    agree = direct == cs == g == bs
    return CountRow(kind, q, X, P, direct, _frac(cs), _frac(g), _frac(lo), _frac(up), _frac(bs), agree, bounds)


def growth_series(kind: str, X: str, P: str, q_list: Iterable[int]) -> tuple[list[int], bool]:
    """Orbit counts per q; the flag says whether some q was skipped for size."""
    out = []
    partial = False
    for q in q_list:
        try:
            G = build_group(kind, q)
        except SizeCapError:
            partial = True
            break
        out.append(double_coset_count(G.subgroup(X), G, P))
    return out, partial


def rows_to_csv(rows: Sequence[CountRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in rows:
        w.writerow([getattr(r, c) for c in COLUMNS])
    return buf.getvalue()


def rows_to_json(rows: Sequence[CountRow]) -> str:
    return json.dumps([r.to_json() for r in rows], sort_keys=True, indent=2)

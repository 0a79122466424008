"""Irreducible root systems in exact integer arithmetic.

Roots are integer coefficient vectors over the simple roots (Bourbaki
numbering).  The bilinear form is the symmetrized Cartan matrix, scaled so
that short roots have squared length 2.  Subsets of roots are carried as
Python ``int`` bitmasks over root indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

Root = tuple[int, ...]

FAMILIES = "ABCDEFG"


class RootSystemError(ValueError):
    """Raised for invalid types or for vectors that are not roots."""


def _check_type(family: str, rank: int) -> None:
    ok = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 3,
        "E": 6 <= rank <= 8,
        "F": rank == 4,
        "G": rank == 2,
    }
    if family not in ok or not isinstance(rank, int) or not ok[family]:
        raise RootSystemError(f"no simple root system of type {family}{rank}")


def _simple_form(family: str, n: int) -> list[list[int]]:
    """Gram matrix (alpha_i, alpha_j) of the simple roots."""
    B = [[0] * n for _ in range(n)]

    def edge(i: int, j: int, v: int) -> None:
        B[i - 1][j - 1] = B[j - 1][i - 1] = v

    if family == "A":
        norms = [2] * n
        for i in range(1, n):
            edge(i, i + 1, -1)
    elif family == "B":
        norms = [4] * (n - 1) + [2]
        for i in range(1, n):
            edge(i, i + 1, -2)
    elif family == "C":
        norms = [2] * (n - 1) + [4]
        for i in range(1, n - 1):
            edge(i, i + 1, -1)
        edge(n - 1, n, -2)
    elif family == "D":
        norms = [2] * n
        for i in range(1, n - 1):
            edge(i, i + 1, -1)
        edge(n - 2, n, -1)
    elif family == "E":
        norms = [2] * n
        edge(1, 3, -1)
        edge(2, 4, -1)
        for i in range(3, n):
            edge(i, i + 1, -1)
    elif family == "F":
        norms = [4, 4, 2, 2]
        edge(1, 2, -2)
        edge(2, 3, -2)
        edge(3, 4, -1)
    else:
        norms = [2, 6]
        edge(1, 2, -3)
    for i in range(n):
        B[i][i] = norms[i]
    return B


def rank_of(vectors: Iterable[Sequence[int]]) -> int:
    """Exact rank of a list of integer vectors."""
    rows = [[Fraction(x) for x in v] for v in vectors]
    rank = 0
    if not rows:
        return 0
    ncols = len(rows[0])
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][col]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col] / p
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True, eq=False)
class RootSystem:
    family: str
    rank: int
    sym_form: tuple[tuple[int, ...], ...]
    roots: tuple[Root, ...]
    index: dict = field(repr=False)

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    def __repr__(self) -> str:
        return f"RootSystem({self.name})"

    @cached_property
    def cartan_matrix(self) -> tuple[tuple[int, ...], ...]:
        B = self.sym_form
        n = self.rank
        return tuple(tuple(2 * B[i][j] // B[i][i] for j in range(n)) for i in range(n))

    @property
    def num_positive(self) -> int:
        return len(self.roots) // 2

    @property
    def full_mask(self) -> int:
        return (1 << len(self.roots)) - 1

    def neg(self, i: int) -> int:
        N = self.num_positive
        return i + N if i < N else i - N

    def simple_index(self, k: int) -> int:
        """Index of the simple root alpha_k (1-based)."""
        return k - 1

    def height(self, i: int) -> int:
        return sum(self.roots[i])

    def form(self, u: Sequence[int], v: Sequence[int]) -> int:
        B = self.sym_form
        n = self.rank
        return sum(u[a] * B[a][b] * v[b] for a in range(n) if u[a] for b in range(n) if v[b])

    @cached_property
    def norms(self) -> tuple[int, ...]:
        return tuple(self.form(r, r) for r in self.roots)

    @cached_property
    def gram(self) -> tuple[tuple[int, ...], ...]:
        # rows of (root_i, alpha_k); inner products are then dot products
        B = self.sym_form
        n = self.rank
        rows = [tuple(sum(r[a] * B[a][k] for a in range(n)) for k in range(n)) for r in self.roots]
        return tuple(rows)

    def ip(self, i: int, j: int) -> int:
        return sum(x * y for x, y in zip(self.gram[i], self.roots[j]))

    @property
    def long_norm(self) -> int:
        return max(self.norms)

    @property
    def short_norm(self) -> int:
        return min(self.norms)

    @property
    def two_lengths(self) -> bool:
        return self.long_norm != self.short_norm

    def is_long(self, i: int) -> bool:
        return self.norms[i] == self.long_norm

    def is_short(self, i: int) -> bool:
        return self.two_lengths and self.norms[i] == self.short_norm

    def length_class(self, i: int) -> str:
        return "long" if self.is_long(i) else "short"

    @cached_property
    def long_mask(self) -> int:
        return sum(1 << i for i in range(len(self.roots)) if self.is_long(i))

    @cached_property
    def short_mask(self) -> int:
        return self.full_mask & ~self.long_mask if self.two_lengths else 0

    @cached_property
    def sums(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """For each root i, the pairs (j, k) with root_i + root_j = root_k."""
        out = []
        for a in self.roots:
            row = []
            for j, b in enumerate(self.roots):
                k = self.index.get(tuple(x + y for x, y in zip(a, b)))
                if k is not None:
                    row.append((j, k))
            out.append(tuple(row))
        return tuple(out)

    def add(self, i: int, j: int) -> int | None:
        k = self.index.get(tuple(x + y for x, y in zip(self.roots[i], self.roots[j])))
        return k

    @cached_property
    def sum_triples(self) -> tuple[tuple[int, int, int], ...]:
        """All (i, j, k) with i < j and root_i + root_j = root_k."""
        return tuple((i, j, k) for i in range(len(self.roots)) for j, k in self.sums[i] if i < j)

    @cached_property
    def highest_root_index(self) -> int:
        return max(range(self.num_positive), key=self.height)

    @property
    def highest_root(self) -> Root:
        return self.roots[self.highest_root_index]

    @property
    def highest_root_coeffs(self) -> Root:
        return self.highest_root

    @cached_property
    def simple_reflection_perms(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple(self._reflect_index(k, j) for j in range(len(self.roots)))
            for k in range(self.rank)
        )

    def _reflect_index(self, i: int, j: int) -> int:
        c = 2 * self.ip(i, j) // self.norms[i]
        a, b = self.roots[i], self.roots[j]
        return self.index[tuple(y - c * x for x, y in zip(a, b))]

    def root_index(self, v: Sequence[int] | int) -> int:
        if isinstance(v, int):
            if 0 <= v < len(self.roots):
                return v
            raise RootSystemError(f"root index {v} out of range for {self.name}")
        i = self.index.get(tuple(v))
        if i is None:
            raise RootSystemError(f"{tuple(v)} is not a root of {self.name}")
        return i

    def mask_of(self, roots: Iterable[Sequence[int] | int]) -> int:
        m = 0
        for r in roots:
            m |= 1 << self.root_index(r)
        return m

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "rank": self.rank,
            "cartan_matrix": [list(r) for r in self.cartan_matrix],
            "highest_root": list(self.highest_root),
            "num_roots": len(self.roots),
        }


def _generate_roots(B: list[list[int]]) -> list[Root]:
    n = len(B)
    simple = [tuple(int(i == k) for i in range(n)) for k in range(n)]

    def form(u, v):
        return sum(u[a] * B[a][b] * v[b] for a in range(n) for b in range(n))

    found = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for r in frontier:
            for k in range(n):
                c = 2 * form(r, simple[k]) // B[k][k]
                s = tuple(x - c * int(i == k) for i, x in enumerate(r))
                if s not in found:
                    found.add(s)
                    nxt.append(s)
        frontier = nxt
    return sorted(found)


@lru_cache(maxsize=None)
def build_root_system(family: str, rank: int) -> RootSystem:
    """Construct the root system of type ``family`` + ``rank``.

    All roots are generated from the simple roots by simple reflections.
    """
    _check_type(family, rank)
    B = _simple_form(family, rank)
    found = _generate_roots(B)
    pos = [r for r in found if all(x >= 0 for x in r)]
    pos.sort(key=lambda r: (sum(r), tuple(-x for x in r)))
    roots = tuple(pos) + tuple(tuple(-x for x in r) for r in pos)
    if len(roots) != len(found):
        raise AssertionError("roots are not split into positive and negative")
    index = {r: i for i, r in enumerate(roots)}
    return RootSystem(family, rank, tuple(tuple(r) for r in B), roots, index)


def parse_group(spec: str) -> RootSystem:
    """Parse strings like ``"E8"`` or ``"B3"``."""
    spec = spec.strip()
    if len(spec) < 2 or spec[0].upper() not in FAMILIES or not spec[1:].isdigit():
        raise RootSystemError(f"cannot parse group {spec!r}")
    return build_root_system(spec[0].upper(), int(spec[1:]))


def classical_root_count(family: str, n: int) -> int:
    """Number of roots by the closed-form count for each type."""
    return {
        "A": lambda: n * (n + 1),
        "B": lambda: 2 * n * n,
        "C": lambda: 2 * n * n,
        "D": lambda: 2 * n * (n - 1),
        "E": lambda: {6: 72, 7: 126, 8: 240}[n],
        "F": lambda: 48,
        "G": lambda: 12,
    }[family]()


def inner_product(rs: RootSystem, a: Sequence[int], b: Sequence[int]) -> int:
    rs.root_index(a)
    rs.root_index(b)
    return rs.form(a, b)


def reflect(rs: RootSystem, a: Sequence[int], b: Sequence[int]) -> Root:
    """The Weyl reflection s_a applied to b."""
    i, j = rs.root_index(a), rs.root_index(b)
    return rs.roots[rs._reflect_index(i, j)]


def closure_mask(rs: RootSystem, mask: int, universe: int | None = None) -> int:
    """Smallest negation- and sum-closed superset of ``mask``.

    With ``universe`` given, sums are only added when they lie in it; this
    gives closure relative to a (possibly non-closed) subset of roots.
    """
    N = rs.num_positive
    out = 0
    frontier = []
    for i in iter_bits(mask):
        for k in (i, i + N if i < N else i - N):
            if not (out >> k) & 1:
                out |= 1 << k
                frontier.append(k)
    sums = rs.sums
    while frontier:
        i = frontier.pop()
        for j, k in sums[i]:
            if (out >> j) & 1 and not (out >> k) & 1:
                if universe is not None and not (universe >> k) & 1:
                    continue
                out |= 1 << k
                frontier.append(k)
    return out


def is_closed_mask(rs: RootSystem, mask: int, universe: int | None = None) -> bool:
    ambient = rs.full_mask if universe is None else universe
    for i, j, k in rs.sum_triples:
        if (mask >> i) & 1 and (mask >> j) & 1 and (ambient >> k) & 1 and not (mask >> k) & 1:
            return False
    return True


def negation_closed(rs: RootSystem, mask: int) -> bool:
    return all((mask >> rs.neg(i)) & 1 for i in iter_bits(mask))


@dataclass(frozen=True)
class Subsystem:
    """A set of roots of ``ambient`` recorded as a bitmask of root indices."""

    ambient: RootSystem
    mask: int

    def members(self) -> tuple[int, ...]:
        return tuple(iter_bits(self.mask))

    def roots(self) -> list[Root]:
        return [self.ambient.roots[i] for i in iter_bits(self.mask)]

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __contains__(self, item) -> bool:
        return bool((self.mask >> self.ambient.root_index(item)) & 1)

    def __and__(self, other: Subsystem) -> Subsystem:
        return Subsystem(self.ambient, self.mask & other.mask)

    def __or__(self, other: Subsystem) -> Subsystem:
        return Subsystem(self.ambient, self.mask | other.mask)

    def __le__(self, other: Subsystem) -> bool:
        return self.mask & ~other.mask == 0

    def __lt__(self, other: Subsystem) -> bool:
        return self <= other and self.mask != other.mask

    def complement(self) -> Subsystem:
        return Subsystem(self.ambient, self.ambient.full_mask & ~self.mask)

    def span_rank(self) -> int:
        return rank_of(self.roots())

    @property
    def is_closed(self) -> bool:
        return is_closed_mask(self.ambient, self.mask)

    def to_json(self) -> dict:
        return {
            "family": self.ambient.family,
            "rank": self.ambient.rank,
            "members": sorted(list(r) for r in self.roots()),
        }

    @classmethod
    def from_json(cls, data: dict) -> Subsystem:
        rs = build_root_system(data["family"], data["rank"])
        return cls(rs, rs.mask_of(data["members"]))


def closure(rs: RootSystem, roots: Iterable[Sequence[int] | int]) -> Subsystem:
    """Closed subsystem generated by ``roots`` (and their negatives)."""
    return Subsystem(rs, closure_mask(rs, rs.mask_of(roots)))


def is_closed(rs: RootSystem, roots: Iterable[Sequence[int] | int] | Subsystem) -> bool:
    mask = roots.mask if isinstance(roots, Subsystem) else rs.mask_of(roots)
    return is_closed_mask(rs, mask)


def apply_perm(perm: Sequence[int], mask: int) -> int:
    out = 0
    for i in iter_bits(mask):
        out |= 1 << perm[i]
    return out


def weyl_group_order(rs: RootSystem, cap: int = 10**6) -> int:
    """|W| as the orbit size of a regular vector, by breadth-first search."""
    # twice the half-sum of positive roots is regular dominant
    rho2 = tuple(sum(r[k] for r in rs.roots[: rs.num_positive]) for k in range(rs.rank))
    seen = {rho2}
    frontier = [rho2]
    simple = [tuple(int(i == k) for i in range(rs.rank)) for k in range(rs.rank)]
    while frontier:
        nxt = []
        for v in frontier:
            for k, a in enumerate(simple):
                c = Fraction(2 * rs.form(v, a), rs.sym_form[k][k])
                w = tuple(x - c * y for x, y in zip(v, a))
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
                    if len(seen) > cap:
                        raise RuntimeError("Weyl orbit exceeds cap")
        frontier = nxt
    return len(seen)

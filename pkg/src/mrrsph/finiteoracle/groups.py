"""SL3(q) and Sp4(q) as explicit matrix groups, with subgroups and flags.

Sp4 preserves omega(u, v) = u^T J v for J = antidiag(1, 1, -1, -1) in the
basis e1, e2, f2, f1, so that the split torus is diag(a, b, 1/b, 1/a) and
the upper triangular matrices form a Borel subgroup.

Flag types: ``"B"`` full flags (line in plane; isotropic line in a
Lagrangian plane for Sp4), ``"P1"`` lines, ``"P2"`` planes (Lagrangian
planes for Sp4).  P1 and P2 are the two end-node parabolics.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import product
from typing import Iterable, Sequence

from .field import GF, Field
from .linalg import (
    Matrix,
    Vector,
    det,
    diag,
    identity,
    mat_add,
    mat_mul,
    mat_scale,
    mat_vec,
    projective_points,
    rref,
    transpose,
    unit,
)

SIZE_CAP = 10**6
TYPES = ("A2", "B2")
FLAG_TYPES = ("B", "P1", "P2")
SUBGROUPS = ("T", "B", "L1", "L2", "A1T1", "G")


class SizeCapError(ValueError):
    pass


def order_formula(kind: str, q: int) -> int:
    if kind == "A2":
        return q**3 * (q**3 - 1) * (q**2 - 1)
    if kind == "B2":
        return q**4 * (q**2 - 1) * (q**4 - 1)
    raise ValueError(f"unknown type {kind!r}")


def flag_count_formula(kind: str, q: int, flag: str = "B") -> int:
    lines = q**2 + q + 1 if kind == "A2" else (q**4 - 1) // (q - 1)
    if flag == "P1":
        return lines
    if flag == "P2":
        return lines if kind == "A2" else (q + 1) * (q**2 + 1)
    return (q**2 + q + 1) * (q + 1) if kind == "A2" else (q + 1) ** 2 * (q**2 + 1)


def weyl_order(kind: str) -> int:
    return {"A2": 6, "B2": 8}[kind]


Flag = tuple[tuple[Vector, ...], ...]


@dataclass(eq=False)
class FiniteSubgroup:
    """A subgroup given by generators; elements are produced on demand."""

    name: str
    group: FiniteGLT
    gens: tuple[Matrix, ...]

    @cached_property
    def elements(self) -> tuple[Matrix, ...]:
        return self.group.closure(self.gens)

    @cached_property
    def element_set(self) -> frozenset[Matrix]:
        return frozenset(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, g: Matrix) -> bool:
        return g in self.element_set


@dataclass(eq=False)
class FiniteGLT:
    kind: str
    q: int
    F: Field
    d: int
    form: Matrix | None

    def __repr__(self) -> str:
        name = "SL3" if self.kind == "A2" else "Sp4"
        return f"{name}({self.q})"

    # -- arithmetic

    @cached_property
    def one(self) -> Matrix:
        return identity(self.d)

    def mul(self, a: Matrix, b: Matrix) -> Matrix:
        return mat_mul(self.F, a, b, self.d)

    def inverse(self, a: Matrix) -> Matrix:
        # a^(order-1), fine for these small groups
        x, prev = a, self.one
        while x != self.one:
            prev = x
            x = self.mul(x, a)
        return prev if a != self.one else self.one

    def conj(self, g: Matrix, x: Matrix, x_inv: Matrix | None = None) -> Matrix:
        """x^-1 g x."""
        if x_inv is None:
            x_inv = self.inverse(x)
        return self.mul(x_inv, self.mul(g, x))

    def order(self, g: Matrix) -> int:
        k, x = 1, g
        while x != self.one:
            x = self.mul(x, g)
            k += 1
        return k

    def is_member(self, m: Matrix) -> bool:
        if self.kind == "A2":
            return det(self.F, m, 3) == 1
        J = self.form
        return mat_mul(self.F, mat_mul(self.F, transpose(m, 4), J, 4), m, 4) == J

    def is_unipotent(self, g: Matrix) -> bool:
        k = self.order(g)
        while k % self.F.p == 0:
            k //= self.F.p
        return k == 1

    def is_semisimple(self, g: Matrix) -> bool:
        return self.order(g) % self.F.p != 0

    def jordan(self, g: Matrix) -> tuple[Matrix, Matrix]:
        """(s, u) with g = s u = u s, s of order prime to p, u a p-element."""
        n = self.order(g)
        pa = 1
        m = n
        while m % self.F.p == 0:
            m //= self.F.p
            pa *= self.F.p
        # k = 0 mod p^a and k = 1 mod m
        k = next(k for k in range(0, n + 1, pa) if k % m == 1 % m)
        s = self.power(g, k)
        u = self.power(g, (1 - k) % n)
        return s, u

    def power(self, g: Matrix, k: int) -> Matrix:
        out, base = self.one, g
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def closure(self, gens: Iterable[Matrix], cap: int = SIZE_CAP) -> tuple[Matrix, ...]:
        gens = [g for g in gens if g != self.one]
        seen = {self.one}
        order = [self.one]
        queue = deque([self.one])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = self.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    order.append(y)
                    if len(seen) > cap:
                        raise SizeCapError(f"subgroup of {self!r} exceeds {cap} elements")
                    queue.append(y)
        return tuple(order)

    # -- generators

    @cached_property
    def root_elements(self) -> dict[str, list[Matrix]]:
        """Root subgroup generators x_r(t), t over a basis of F_q over F_p."""
        F, d = self.F, self.d
        ts = F.additive_basis
        out: dict[str, list[Matrix]] = {}
        if self.kind == "A2":
            for i, j in product(range(3), repeat=2):
                if i != j:
                    out[f"{i + 1}{j + 1}"] = [mat_add(F, self.one, unit(3, i, j, t)) for t in ts]
            return out
        for name, X in self._sp4_nilpotents.items():
            out[name] = [mat_add(F, self.one, mat_scale(F, t, X)) for t in ts]
        return out

    @cached_property
    def _sp4_nilpotents(self) -> dict[str, Matrix]:
        """Root vectors of sp4 in the basis e1, e2, f2, f1 (indices 0..3).

        Short roots pair two matrix units with a sign chosen so that the
        element lies in the Lie algebra; the sign is found, not assumed.
        """
        F, J = self.F, self.form
        minus = F.neg[1]

        def in_algebra(X: Matrix) -> bool:
            lhs = mat_mul(F, transpose(X, 4), J, 4)
            rhs = mat_mul(F, J, X, 4)
            return all(F.add[a][b] == 0 for a, b in zip(lhs, rhs))

        def short(a, b):
            for c in (1, minus):
                X = mat_add(F, unit(4, *a), unit(4, *b, c))
                if in_algebra(X):
                    return X
            raise AssertionError("no sign makes a short root vector")

        out = {
            "e1-e2": short((0, 1), (2, 3)),
            "e2-e1": short((1, 0), (3, 2)),
            "e1+e2": short((0, 2), (1, 3)),
            "-e1-e2": short((2, 0), (3, 1)),
            "2e1": unit(4, 0, 3),
            "-2e1": unit(4, 3, 0),
            "2e2": unit(4, 1, 2),
            "-2e2": unit(4, 2, 1),
        }
        for X in out.values():
            if not in_algebra(X):
                raise AssertionError("long root vector outside sp4")
        return out

    @cached_property
    def torus_gens(self) -> list[Matrix]:
        F = self.F
        if self.q == 2:
            return []
        g = F.generator()
        gi = F.inv[g]
        if self.kind == "A2":
            return [diag([g, gi, 1]), diag([1, g, gi])]
        return [diag([g, 1, 1, gi]), diag([1, g, gi, 1])]

    def _roots(self, names: Sequence[str]) -> list[Matrix]:
        re = self.root_elements
        return [m for n in names for m in re[n]]

    def subgroup_gens(self, name: str) -> list[Matrix]:
        if self.kind == "A2":
            table = {
                "T": [],
                "B": ["12", "13", "23"],
                "L1": ["23", "32"],
                "L2": ["12", "21"],
                "A1T1": ["13", "31"],
                "G": ["12", "21", "13", "31", "23", "32"],
            }
        else:
            table = {
                "T": [],
                "B": ["e1-e2", "e1+e2", "2e1", "2e2"],
                "L1": ["2e2", "-2e2"],
                "L2": ["e1-e2", "e2-e1"],
                "A1T1": ["2e1", "-2e1"],
                "G": ["e1-e2", "e2-e1", "e1+e2", "-e1-e2", "2e1", "-2e1", "2e2", "-2e2"],
            }
        if name not in table:
            raise ValueError(f"unknown subgroup {name!r}; choose from {SUBGROUPS}")
        return self.torus_gens + self._roots(table[name])

    @lru_cache(maxsize=None)
    def subgroup(self, name: str) -> FiniteSubgroup:
        return FiniteSubgroup(name, self, tuple(self.subgroup_gens(name)))

    @cached_property
    def elements(self) -> tuple[Matrix, ...]:
        return self.subgroup("G").elements

    @property
    def order_formula(self) -> int:
        return order_formula(self.kind, self.q)

    # -- flags

    def isotropic(self, u: Vector, v: Vector) -> bool:
        if self.form is None:
            return True
        return self.omega(u, v) == 0

    def omega(self, u: Vector, v: Vector) -> int:
        Jv = mat_vec(self.F, self.form, v, 4)
        s = 0
        for a, b in zip(u, Jv):
            if a and b:
                s = self.F.add[s][self.F.mul[a][b]]
        return s

    def canonical(self, vectors: Iterable[Vector]) -> tuple[Vector, ...]:
        return rref(self.F, vectors)

    @cached_property
    def _lines(self) -> list[tuple[Vector, ...]]:
        return [self.canonical([p]) for p in projective_points(self.F, self.d)]

    def _planes_through(self, line: tuple[Vector, ...]) -> list[tuple[Vector, ...]]:
        v = line[0]
        out = set()
        for p in projective_points(self.F, self.d):
            plane = self.canonical([v, p])
            if len(plane) == 2 and self.isotropic(v, p):
                out.add(plane)
        return sorted(out)

    @lru_cache(maxsize=None)
    def flags(self, flag: str = "B") -> tuple[Flag, ...]:
        """The flag variety G/P as canonical tuples of subspaces."""
        if flag == "P1":
            return tuple((l,) for l in self._lines)
        if flag == "B":
            return tuple((l, p) for l in self._lines for p in self._planes_through(l))
        if flag == "P2":
            return tuple(sorted({(p,) for l in self._lines for p in self._planes_through(l)}))
        raise ValueError(f"unknown flag type {flag!r}; choose from {FLAG_TYPES}")

    def act(self, g: Matrix, flag: Flag) -> Flag:
        F, d = self.F, self.d
        return tuple(self.canonical([mat_vec(F, g, v, d) for v in sub]) for sub in flag)

    @lru_cache(maxsize=None)
    def flag_index(self, flag: str = "B") -> dict[Flag, int]:
        return {f: i for i, f in enumerate(self.flags(flag))}

    def torus_elements(self) -> tuple[Matrix, ...]:
        return self.subgroup("T").elements


@lru_cache(maxsize=None)
def build_group(kind: str, q: int, cap: int = SIZE_CAP) -> FiniteGLT:
    """SL3(q) for ``"A2"``, Sp4(q) for ``"B2"``."""
    if kind not in TYPES:
        raise ValueError(f"unknown type {kind!r}; choose from {TYPES}")
    F = GF(q)
    if order_formula(kind, q) > cap:
        raise SizeCapError(f"|{kind}({q})| = {order_formula(kind, q)} exceeds the cap {cap}")
    if kind == "A2":
        return FiniteGLT(kind, q, F, 3, None)
    m = F.neg[1]
    J = (0, 0, 0, 1, 0, 0, 1, 0, 0, m, 0, 0, m, 0, 0, 0)
    return FiniteGLT(kind, q, F, 4, J)


def count_by_brute_force(G: FiniteGLT) -> int:
    """|G| by testing every d x d matrix; only sensible for tiny q."""
    return sum(1 for m in product(range(G.q), repeat=G.d * G.d) if G.is_member(tuple(m)))

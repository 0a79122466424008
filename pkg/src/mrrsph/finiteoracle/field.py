"""Finite fields of order 2, 3, 4 and 5 as addition/multiplication tables.

Elements are the integers 0..q-1.  For q = 4 the element a + b*w (w a
root of x^2 + x + 1 over F2) is stored as ``a | (b << 1)``, so addition is
bitwise xor.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

SUPPORTED = (2, 3, 4, 5)


@dataclass(frozen=True, eq=False)
class Field:
    q: int
    p: int
    add: tuple[tuple[int, ...], ...]
    mul: tuple[tuple[int, ...], ...]
    neg: tuple[int, ...]
    inv: tuple[int | None, ...]

    def __repr__(self) -> str:
        return f"GF({self.q})"

    @property
    def elements(self) -> range:
        return range(self.q)

    @property
    def units(self) -> list[int]:
        return list(range(1, self.q))

    def sub(self, a: int, b: int) -> int:
        return self.add[a][self.neg[b]]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroDivisionError("division by zero in " + repr(self))
        return self.mul[a][self.inv[b]]

    def power(self, a: int, k: int) -> int:
        out = 1
        for _ in range(k):
            out = self.mul[out][a]
        return out

    def generator(self) -> int:
        """A generator of the multiplicative group."""
        for g in self.units:
            if len({self.power(g, k) for k in range(1, self.q)}) == self.q - 1:
                return g
        raise AssertionError("no primitive element")

    @property
    def additive_basis(self) -> list[int]:
        """A basis of the field over its prime subfield."""
        return [1] if self.q == self.p else [1, 2]


def _gf4_mul(a: int, b: int) -> int:
    # (a0 + a1 w)(b0 + b1 w) with w^2 = w + 1
    a0, a1, b0, b1 = a & 1, a >> 1, b & 1, b >> 1
    c0 = (a0 & b0) ^ (a1 & b1)
    c1 = (a0 & b1) ^ (a1 & b0) ^ (a1 & b1)
    return c0 | (c1 << 1)


@lru_cache(maxsize=None)
def GF(q: int) -> Field:
    if q not in SUPPORTED:
        raise ValueError(f"unsupported field size {q}; choose one of {SUPPORTED}")
    if q == 4:
        add = tuple(tuple(a ^ b for b in range(4)) for a in range(4))
        mul = tuple(tuple(_gf4_mul(a, b) for b in range(4)) for a in range(4))
        p = 2
    else:
        add = tuple(tuple((a + b) % q for b in range(q)) for a in range(q))
        mul = tuple(tuple((a * b) % q for b in range(q)) for a in range(q))
        p = q
    neg = tuple(next(b for b in range(q) if add[a][b] == 0) for a in range(q))
    inv = tuple(None if a == 0 else next(b for b in range(q) if mul[a][b] == 1) for a in range(q))
    return Field(q, p, add, mul, neg, inv)

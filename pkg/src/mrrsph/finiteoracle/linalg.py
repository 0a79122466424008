"""Matrices over a small finite field, stored as flat row-major tuples."""

from __future__ import annotations

from itertools import product
from typing import Iterable, Sequence

from .field import Field

Matrix = tuple[int, ...]
Vector = tuple[int, ...]


def identity(d: int) -> Matrix:
    return tuple(1 if i == j else 0 for i in range(d) for j in range(d))


def diag(entries: Sequence[int]) -> Matrix:
    d = len(entries)
    return tuple(entries[i] if i == j else 0 for i in range(d) for j in range(d))


def unit(d: int, i: int, j: int, t: int = 1) -> Matrix:
    return tuple(t if (r, c) == (i, j) else 0 for r in range(d) for c in range(d))


def mat_add(F: Field, a: Matrix, b: Matrix) -> Matrix:
    return tuple(F.add[x][y] for x, y in zip(a, b))


def mat_scale(F: Field, t: int, a: Matrix) -> Matrix:
    return tuple(F.mul[t][x] for x in a)


def mat_mul(F: Field, a: Matrix, b: Matrix, d: int) -> Matrix:
    add, mul = F.add, F.mul
    out = []
    for i in range(d):
        row = a[i * d : (i + 1) * d]
        for j in range(d):
            s = 0
            for k in range(d):
                x = row[k]
                if x:
                    y = b[k * d + j]
                    if y:
                        s = add[s][mul[x][y]]
            out.append(s)
    return tuple(out)


def transpose(a: Matrix, d: int) -> Matrix:
    return tuple(a[j * d + i] for i in range(d) for j in range(d))


def mat_vec(F: Field, a: Matrix, v: Vector, d: int) -> Vector:
    add, mul = F.add, F.mul
    out = []
    for i in range(d):
        s = 0
        for k in range(d):
            x, y = a[i * d + k], v[k]
            if x and y:
                s = add[s][mul[x][y]]
        out.append(s)
    return tuple(out)


def det(F: Field, a: Matrix, d: int) -> int:
    m = [list(a[i * d : (i + 1) * d]) for i in range(d)]
    result = 1
    for c in range(d):
        piv = next((r for r in range(c, d) if m[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            result = F.neg[result]
        result = F.mul[result][m[c][c]]
        inv = F.inv[m[c][c]]
        for r in range(c + 1, d):
            if m[r][c]:
                f = F.mul[m[r][c]][inv]
                m[r] = [F.sub(x, F.mul[f][y]) for x, y in zip(m[r], m[c])]
    return result


def rref(F: Field, rows: Iterable[Sequence[int]]) -> tuple[Vector, ...]:
    """Reduced row echelon form with zero rows dropped: a canonical basis
    of the row space."""
    m = [list(r) for r in rows]
    if not m:
        return ()
    width = len(m[0])
    out = []
    r = 0
    for c in range(width):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = F.inv[m[r][c]]
        m[r] = [F.mul[inv][x] for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [F.sub(x, F.mul[f][y]) for x, y in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return tuple(tuple(row) for row in m[:r] if any(row))


def nullspace(F: Field, rows: Sequence[Sequence[int]], width: int) -> list[Vector]:
    """Basis of {x : rows . x = 0}."""
    red = rref(F, rows) if rows else ()
    pivots = []
    for row in red:
        pivots.append(next(i for i, x in enumerate(row) if x))
    free = [c for c in range(width) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * width
        v[f] = 1
        for row, pc in zip(red, pivots):
            v[pc] = F.neg[row[f]]
        basis.append(tuple(v))
    return basis


def span_elements(F: Field, basis: Sequence[Sequence[int]]):
    """Every linear combination of ``basis``."""
    width = len(basis[0]) if basis else 0
    for coeffs in product(range(F.q), repeat=len(basis)):
        v = [0] * width
        for c, b in zip(coeffs, basis):
            if c:
                for i, x in enumerate(b):
                    if x:
                        v[i] = F.add[v[i]][F.mul[c][x]]
        yield tuple(v)


def all_vectors(F: Field, d: int):
    return product(range(F.q), repeat=d)


def projective_points(F: Field, d: int) -> list[Vector]:
    """Nonzero vectors whose first nonzero entry is 1."""
    out = []
    for v in all_vectors(F, d):
        nz = next((x for x in v if x), 0)
        if nz == 1:
            out.append(tuple(v))
    return out

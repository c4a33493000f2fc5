"""Small generic matrix helpers shared by the S-matrix and spectral code.

Matrices are tuples of row tuples.  The exact helpers work over any scalar
type supporting +, -, *, / and is_zero(); the same shapes carry builtin
complex entries on the float path.
"""
from __future__ import annotations

from .scalars import ExactScalar

EXACT_ZERO = ExactScalar(0)
EXACT_ONE = ExactScalar(1)


def zeros(rows: int, cols: int, zero=EXACT_ZERO):
    return tuple((zero,) * cols for _ in range(rows))


def identity(size: int, zero=EXACT_ZERO, one=EXACT_ONE):
    return tuple(tuple(one if i == j else zero for j in range(size))
                 for i in range(size))


def mat_mul(a, b):
    bt = tuple(zip(*b))
    return tuple(
        tuple(dot(row, col) for col in bt)
        for row in a)


def dot(u, v):
    it = iter(zip(u, v))
    x, y = next(it)
    acc = x * y
    for x, y in it:
        acc = acc + x * y
    return acc


def mat_transpose(a):
    return tuple(zip(*a))


def mat_conj_transpose(a):
    return tuple(tuple(x.conjugate() for x in col) for col in zip(*a))


def mat_add(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(k, a):
    return tuple(tuple(k * x for x in row) for row in a)


def mat_eq(a, b) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def is_zero_matrix(a) -> bool:
    return all(x.is_zero() for row in a for x in row)


def rank_exact(a) -> int:
    """Rank over the exact field by fraction-free-ish Gaussian elimination."""
    m = [list(row) for row in a]
    rows, cols = len(m), len(m[0]) if m else 0
    rank = 0
    col = 0
    for col in range(cols):
        pivot = None
        for r in range(rank, rows):
            if not m[r][col].is_zero():
                pivot = r
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        pv = m[rank][col]
        for r in range(rank + 1, rows):
            if m[r][col].is_zero():
                continue
            f = m[r][col] / pv
            m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
        if rank == rows:
            break
    return rank


def inverse_exact(a):
    """Inverse over the exact field; raises ZeroDivisionError if singular."""
    size = len(a)
    m = [list(row) + [EXACT_ONE if i == j else EXACT_ZERO for j in range(size)]
         for i, row in enumerate(a)]
    for col in range(size):
        pivot = None
        for r in range(col, size):
            if not m[r][col].is_zero():
                pivot = r
                break
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        m[col], m[pivot] = m[pivot], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for r in range(size):
            if r == col or m[r][col].is_zero():
                continue
            f = m[r][col]
            m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return tuple(tuple(row[size:]) for row in m)

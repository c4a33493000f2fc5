"""Coefficient matrix, the Omega sandwich, and the 4x4 S matrix.

For a state |psi> and a row-bit pair (q1, q2):

    C    is the 4 x 2^(n-2) reshaping of the amplitude vector with qubits
         q1, q2 indexing rows (q1 the high row bit) and the remaining
         qubits, in ascending position, indexing columns;
    Omega = C nu^(n-2) C^t   with nu = i sigma_y = [[0, 1], [-1, 0]];
    S     = T Omega T^t      with the fixed 4x4 unitary T below.

nu^(m) is a signed permutation (one +-1 per row), so the sandwich is a
cheap reindexing; no square roots survive into S because T enters an even
number of times.  S^t = (-1)^n S.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .errors import RowBitsError
from .scalars import ExactScalar, HALF, INV_SQRT2, ONE, ZERO
from .states import EXACT, PureState

# 4x4 numerator of T; the true T is T_TILDE / sqrt(2).
_T_TILDE_INT = ((1, 0, 0, 1),
                (0, 1j, 1j, 0),
                (0, -1, 1, 0),
                (1j, 0, 0, -1j))


def _lift(z, field):
    if field == EXACT:
        return ExactScalar(int(z.real), int(z.imag)) if isinstance(z, complex) \
            else ExactScalar(z)
    return complex(z)


def t_tilde(field: str = EXACT):
    """sqrt(2) * T as a Gaussian-integer matrix."""
    return tuple(tuple(_lift(z, field) for z in row) for row in _T_TILDE_INT)


def t_matrix(field: str = EXACT):
    """The unitary T itself (entries carry 1/sqrt2)."""
    scale = INV_SQRT2 if field == EXACT else complex(2 ** -0.5)
    return linalg.mat_scale(scale, t_tilde(field))


@dataclass(frozen=True)
class CoeffMatrix:
    """4 x 2^(n-2) coefficient matrix C for rowBits (q1, q2)."""

    entries: tuple
    row_bits: tuple
    n: int

    @property
    def cols(self) -> int:
        return 2 ** (self.n - 2)


@dataclass(frozen=True)
class SMatrix:
    """The 4x4 matrix S with its provenance."""

    entries: tuple
    row_bits: tuple
    n: int
    field: str


def _check_row_bits(n: int, row_bits) -> tuple:
    try:
        q1, q2 = row_bits
    except (TypeError, ValueError):
        raise RowBitsError(f"row bits must be a pair, got {row_bits!r}") from None
    if q1 == q2 or not (1 <= q1 <= n) or not (1 <= q2 <= n):
        raise RowBitsError(f"row bits {row_bits} invalid for n={n}")
    return q1, q2


def coeff_matrix(state: PureState, row_bits) -> CoeffMatrix:
    """Pure reindexing of the amplitude vector; no arithmetic."""
    n = state.n
    q1, q2 = _check_row_bits(n, row_bits)
    rest = [q for q in range(1, n + 1) if q not in (q1, q2)]
    cols = 2 ** (n - 2)
    zero = ZERO if state.field == EXACT else 0j
    rows = [[zero] * cols for _ in range(4)]
    for i, a in enumerate(state.amps):
        r = 2 * ((i >> (n - q1)) & 1) + ((i >> (n - q2)) & 1)
        c = 0
        for q in rest:
            c = 2 * c + ((i >> (n - q)) & 1)
        rows[r][c] = a
    return CoeffMatrix(tuple(tuple(r) for r in rows), (q1, q2), n)


def _apply_nu_power(c_rows, m: int):
    """Right-multiply a 4 x 2^m matrix by nu^(x m).

    (nu^(x m))[i, j] = (-1)^popcount(i) iff j is the bitwise complement
    of i, so column j of the product is +-1 times column ~j of C.
    """
    full = (1 << m) - 1
    out = []
    for row in c_rows:
        out.append(tuple(
            row[full ^ j] if (full ^ j).bit_count() % 2 == 0 else -row[full ^ j]
            for j in range(1 << m)))
    return tuple(out)


def omega_matrix(state: PureState, row_bits):
    """Omega = C nu^(n-2) C^t, a 4x4 matrix."""
    cm = coeff_matrix(state, row_bits)
    cn = _apply_nu_power(cm.entries, state.n - 2)
    ct = cm.entries
    return tuple(
        tuple(linalg.dot(cn[r], ct[s]) for s in range(4))
        for r in range(4))


def s_matrix(state: PureState, row_bits) -> SMatrix:
    """S = T Omega T^t, evaluated as (T~ Omega T~^t) / 2 to avoid sqrt2."""
    q1, q2 = _check_row_bits(state.n, row_bits)
    om = omega_matrix(state, (q1, q2))
    tt = t_tilde(state.field)
    half = HALF if state.field == EXACT else 0.5
    s = linalg.mat_scale(half, linalg.mat_mul(linalg.mat_mul(tt, om),
                                              linalg.mat_transpose(tt)))
    return SMatrix(s, (q1, q2), state.n, state.field)


def s_matrix_fast4(state: PureState, row_bits) -> SMatrix:
    """Four-qubit shortcut S = (T C T+)(T C T+)^t; agrees with s_matrix."""
    if state.n != 4:
        raise RowBitsError("fast path is defined for n = 4 only")
    q1, q2 = _check_row_bits(4, row_bits)
    cm = coeff_matrix(state, (q1, q2))
    tt = t_tilde(state.field)
    ttc = linalg.mat_conj_transpose(tt)
    half = HALF if state.field == EXACT else 0.5
    m = linalg.mat_scale(half, linalg.mat_mul(linalg.mat_mul(tt, cm.entries), ttc))
    s = linalg.mat_mul(m, linalg.mat_transpose(m))
    return SMatrix(s, (q1, q2), 4, state.field)


def nu_matrix(field: str = EXACT):
    one = ONE if field == EXACT else 1 + 0j
    zero = ZERO if field == EXACT else 0j
    return ((zero, one), (-one, zero))


def kron2(a, b):
    """Kronecker product of two 2x2 matrices (4x4 result)."""
    return tuple(
        tuple(a[i][j] * b[k][l] for j in range(2) for l in range(2))
        for i in range(2) for k in range(2))

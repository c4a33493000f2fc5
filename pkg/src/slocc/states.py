"""Pure states over a dual scalar field and invertible local operators.

Index convention (shared by every module): basis label i has binary
expansion q1 q2 ... qn with q1 the most significant bit, so qubit 1 is the
leftmost tensor factor.  States are projective - normalization is accepted
but never required or re-imposed.
"""
from __future__ import annotations

import cmath
import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (DimensionMismatchError, RandomDrawError,
                     SingularOperatorError, StateFormatError)
from .scalars import ExactScalar, StateEntryError, format_exact

EXACT = "exact"
FLOAT = "float"


@dataclass(frozen=True)
class PureState:
    """Unnormalized n-qubit pure state; amps[i] is the coefficient of |i>."""

    n: int
    amps: tuple
    field: str = EXACT

    def __post_init__(self):
        if self.n < 2:
            raise StateFormatError(f"need at least 2 qubits, got n={self.n}")
        if self.field not in (EXACT, FLOAT):
            raise StateFormatError(f"unknown field {self.field!r}")
        if len(self.amps) != 2 ** self.n:
            raise StateFormatError(
                f"length mismatch: n={self.n} needs {2 ** self.n} amplitudes, "
                f"got {len(self.amps)}")
        if self.field == EXACT:
            if not all(isinstance(a, ExactScalar) for a in self.amps):
                raise StateFormatError("exact state requires ExactScalar amplitudes")
            if all(a.is_zero() for a in self.amps):
                raise StateFormatError("all-zero amplitude vector")
        else:
            if not all(isinstance(a, complex) for a in self.amps):
                raise StateFormatError("float state requires complex amplitudes")
            if all(a == 0 for a in self.amps):
                raise StateFormatError("all-zero amplitude vector")

    @property
    def is_exact(self) -> bool:
        return self.field == EXACT

    def to_float(self) -> "PureState":
        if self.field == FLOAT:
            return self
        return PureState(self.n, tuple(a.to_complex() for a in self.amps), FLOAT)


def state_from_amplitudes(n: int, entries: Sequence, field: str = EXACT) -> PureState:
    """Build a state, coercing ints/Fractions/strings (exact) or numbers (float)."""
    if field == EXACT:
        amps = tuple(ExactScalar.of(e) for e in entries)
    else:
        amps = tuple(complex(e) for e in entries)
    return PureState(n, amps, field)


def ket(n: int, *terms, field: str = EXACT) -> PureState:
    """State from sparse (index, value) terms; values coerced per field."""
    zero = ExactScalar(0) if field == EXACT else 0j
    amps = [zero] * (2 ** n)
    for idx, val in terms:
        if field == EXACT:
            amps[idx] = amps[idx] + ExactScalar.of(val)
        else:
            amps[idx] = amps[idx] + complex(val)
    return PureState(n, tuple(amps), field)


# -- state documents -----------------------------------------------------

def parse_state(document) -> PureState:
    """Parse a state document (JSON text or an already-loaded dict).

    Schema: {"n": int, "field": "exact"|"float", "amplitudes": [...]},
    dense (2**n entries) or sparse ([{"index": i, "value": v}, ...]).
    Exact values are strings like "1/2 + 1/3 i" (optionally with sqrt2
    factors) or integers; float values are [re, im] pairs or numbers.
    """
    if isinstance(document, (str, bytes)):
        try:
            doc = json.loads(document)
        except json.JSONDecodeError as exc:
            raise StateFormatError(f"not valid JSON: {exc}") from exc
    else:
        doc = document
    if not isinstance(doc, dict):
        raise StateFormatError("state document must be a JSON object")
    try:
        n = int(doc["n"])
    except (KeyError, TypeError, ValueError):
        raise StateFormatError("missing or bad 'n'") from None
    field = doc.get("field", EXACT)
    if field not in (EXACT, FLOAT):
        raise StateFormatError(f"unknown field {field!r}")
    raw = doc.get("amplitudes")
    if not isinstance(raw, list):
        raise StateFormatError("missing 'amplitudes' array")
    size = 2 ** n

    sparse = bool(raw) and all(isinstance(e, dict) for e in raw)
    if sparse:
        entries = [None] * size
        for item in raw:
            try:
                idx = int(item["index"])
            except (KeyError, TypeError, ValueError):
                raise StateFormatError(f"bad sparse entry {item!r}") from None
            if not 0 <= idx < size:
                raise StateFormatError(f"sparse index {idx} out of range for n={n}")
            entries[idx] = item.get("value", 0)
        values = [(0 if e is None else e) for e in entries]
    else:
        if len(raw) != size:
            raise StateFormatError(
                f"length mismatch: n={n} needs {size} amplitudes, got {len(raw)}")
        values = raw

    amps = []
    for v in values:
        amps.append(_parse_entry(v, field))
    return PureState(n, tuple(amps), field)


def _parse_entry(v, field):
    if field == EXACT:
        if isinstance(v, bool) or isinstance(v, float):
            raise StateFormatError(
                f"exact amplitudes must be rational strings or integers, got {v!r}")
        if isinstance(v, int):
            return ExactScalar(v)
        if isinstance(v, str):
            try:
                from .scalars import parse_exact
                return parse_exact(v)
            except StateEntryError as exc:
                raise StateFormatError(str(exc)) from exc
        raise StateFormatError(f"bad exact amplitude {v!r}")
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, list) and len(v) == 2:
        try:
            return complex(float(v[0]), float(v[1]))
        except (TypeError, ValueError):
            raise StateFormatError(f"bad float amplitude {v!r}") from None
    raise StateFormatError(f"bad float amplitude {v!r}")


def serialize_state(state: PureState, sparse: bool = False) -> dict:
    """Inverse of parse_state on canonical documents."""
    if state.field == EXACT:
        render = format_exact
    else:
        def render(z):
            return [z.real, z.imag]
    if sparse:
        amplitudes = [
            {"index": i, "value": render(a)}
            for i, a in enumerate(state.amps)
            if (not a.is_zero() if state.field == EXACT else a != 0)
        ]
    else:
        amplitudes = [render(a) for a in state.amps]
    return {"n": state.n, "field": state.field, "amplitudes": amplitudes}


def state_document(state: PureState, sparse: bool = False) -> str:
    return json.dumps(serialize_state(state, sparse=sparse), indent=2) + "\n"


# -- local operators -------------------------------------------------------

GL = "GL"
SL = "SL"

SL_DET_TOL = 1e-9


def _det2(m):
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


@dataclass(frozen=True)
class LocalOperatorSet:
    """One invertible 2x2 operator per qubit slot (A_1 ... A_n)."""

    ops: tuple           # tuple of 2x2 tuples of scalars
    mode: str = GL
    field: str = EXACT

    def __post_init__(self):
        if self.mode not in (GL, SL):
            raise SingularOperatorError(f"unknown mode {self.mode!r}")
        for idx, m in enumerate(self.ops, start=1):
            d = _det2(m)
            if self.field == EXACT:
                if d.is_zero():
                    raise SingularOperatorError(f"operator {idx} is singular")
                if self.mode == SL and d != ExactScalar(1):
                    raise SingularOperatorError(
                        f"operator {idx} has det {d}, SL mode needs det 1")
            else:
                if d == 0:
                    raise SingularOperatorError(f"operator {idx} is singular")
                if self.mode == SL and abs(d - 1) > SL_DET_TOL:
                    raise SingularOperatorError(
                        f"operator {idx} has |det - 1| = {abs(d - 1):.3g} > {SL_DET_TOL}")

    def __len__(self):
        return len(self.ops)

    def dets(self) -> tuple:
        return tuple(_det2(m) for m in self.ops)

    def det_product(self):
        out = ExactScalar(1) if self.field == EXACT else complex(1)
        for d in self.dets():
            out = out * d
        return out

    def inverse(self) -> "LocalOperatorSet":
        inv_ops = []
        for m in self.ops:
            d = _det2(m)
            if self.field == EXACT:
                inv = ((m[1][1] / d, -m[0][1] / d), (-m[1][0] / d, m[0][0] / d))
            else:
                inv = ((m[1][1] / d, -m[0][1] / d), (-m[1][0] / d, m[0][0] / d))
            inv_ops.append(inv)
        # inverse of an SL set is SL; of a GL set, GL
        return LocalOperatorSet(tuple(inv_ops), self.mode, self.field)


def local_operators(mats, mode: str = GL, field: str = EXACT) -> LocalOperatorSet:
    """Coerce a sequence of 2x2 matrices into a validated operator set."""
    ops = []
    for m in mats:
        if field == EXACT:
            ops.append(tuple(tuple(ExactScalar.of(x) for x in row) for row in m))
        else:
            ops.append(tuple(tuple(complex(x) for x in row) for row in m))
    return LocalOperatorSet(tuple(ops), mode, field)


def apply_local_operators(state: PureState, ops: LocalOperatorSet) -> PureState:
    """|psi'> = A_1 (x) A_2 (x) ... (x) A_n |psi>."""
    if len(ops) != state.n:
        raise DimensionMismatchError(
            f"{len(ops)} operators for an n={state.n} state")
    if ops.field != state.field:
        raise DimensionMismatchError(
            f"operator field {ops.field!r} != state field {state.field!r}")
    amps = list(state.amps)
    size = len(amps)
    for q in range(1, state.n + 1):
        m = ops.ops[q - 1]
        mask = 1 << (state.n - q)
        for i in range(size):
            if i & mask:
                continue
            lo, hi = amps[i], amps[i | mask]
            amps[i] = m[0][0] * lo + m[0][1] * hi
            amps[i | mask] = m[1][0] * lo + m[1][1] * hi
    return PureState(state.n, tuple(amps), state.field)


# -- seeded random draws ---------------------------------------------------

_ENTRY_BOUND = 4          # integer lattice [-4, 4] keeps exact arithmetic small
_MAX_REDRAWS = 10_000


def random_local_operators(n: int, mode: str = GL, seed: int = 0,
                           field: str = EXACT) -> LocalOperatorSet:
    """Deterministic random operator set; exact SL sets have det exactly 1.

    Entries are drawn from the integer lattice; in SL mode a draw is kept
    only when |det| has square-free part 1 or 2, so the rescaling
    1/sqrt(det) stays inside Q(i, sqrt2).
    """
    if n < 2:
        raise DimensionMismatchError("need n >= 2")
    rng = random.Random(seed)
    mats = []
    for _ in range(n):
        mats.append(_draw_one(rng, mode, field))
    return LocalOperatorSet(tuple(mats), mode, field)


def _draw_one(rng, mode, field):
    for _ in range(_MAX_REDRAWS):
        vals = [rng.randint(-_ENTRY_BOUND, _ENTRY_BOUND) for _ in range(4)]
        det = vals[0] * vals[3] - vals[1] * vals[2]
        if det == 0:
            continue
        if mode == GL:
            if field == EXACT:
                return tuple(tuple(ExactScalar(v) for v in row)
                             for row in ((vals[0], vals[1]), (vals[2], vals[3])))
            return ((complex(vals[0]), complex(vals[1])),
                    (complex(vals[2]), complex(vals[3])))
        # SL mode
        if field == FLOAT:
            r = cmath.sqrt(complex(det))
            return ((vals[0] / r, vals[1] / r), (vals[2] / r, vals[3] / r))
        root = _exact_sqrt_of_int(det)
        if root is None:
            continue
        inv = root.inverse()
        return (
            (ExactScalar(vals[0]) * inv, ExactScalar(vals[1]) * inv),
            (ExactScalar(vals[2]) * inv, ExactScalar(vals[3]) * inv),
        )
    raise RandomDrawError("exceeded redraw bound while sampling operators")


def _exact_sqrt_of_int(det: int):
    """sqrt(det) in Q(i, sqrt2) when |det| = m^2 or 2 m^2, else None."""
    mag = abs(det)
    for t in (1, 2):
        if mag % t:
            continue
        m = math.isqrt(mag // t)
        if m * m * t == mag:
            root = ExactScalar(m) if t == 1 else ExactScalar(0, 0, m)
            if det < 0:
                root = root * ExactScalar(0, 1)
            return root
    return None


def random_state(n: int, seed: int = 0, field: str = EXACT,
                 bound: int = 3) -> PureState:
    """Deterministic random state with Gaussian-integer amplitudes."""
    rng = random.Random(seed)
    while True:
        pairs = [(rng.randint(-bound, bound), rng.randint(-bound, bound))
                 for _ in range(2 ** n)]
        if any(a or b for a, b in pairs):
            break
    if field == EXACT:
        amps = tuple(ExactScalar(a, b) for a, b in pairs)
    else:
        amps = tuple(complex(a, b) for a, b in pairs)
    return PureState(n, amps, field)

"""Exact complex scalars: the field Q(i, sqrt(2)).

An :class:`ExactScalar` is (a + b*i) + (c + d*i)*sqrt(2) with a, b, c, d
rational.  The field is closed under +, -, *, / (nonzero divisor), contains
i and sqrt(2) (hence 1/sqrt(2) = sqrt(2)/2), and covers every amplitude the
fixture catalog needs.  Floating computations use the builtin ``complex``;
the two fields are never mixed inside one computation.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

from .errors import StateFormatError

_Rat = Union[int, Fraction]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not a rational value: {x!r}")


def _gmul(a1: Fraction, b1: Fraction, a2: Fraction, b2: Fraction):
    # (a1 + b1 i)(a2 + b2 i)
    return a1 * a2 - b1 * b2, a1 * b2 + b1 * a2


class ExactScalar:
    """Element of Q(i, sqrt(2)), stored as four Fractions."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: _Rat = 0, b: _Rat = 0, c: _Rat = 0, d: _Rat = 0):
        object.__setattr__(self, "a", _frac(a))
        object.__setattr__(self, "b", _frac(b))
        object.__setattr__(self, "c", _frac(c))
        object.__setattr__(self, "d", _frac(d))

    def __setattr__(self, name, value):
        raise AttributeError("ExactScalar is immutable")

    # -- constructors -------------------------------------------------
    @staticmethod
    def of(x) -> "ExactScalar":
        """Coerce an int, Fraction, rational string, or ExactScalar."""
        if isinstance(x, ExactScalar):
            return x
        if isinstance(x, (int, Fraction)):
            return ExactScalar(x)
        if isinstance(x, str):
            return parse_exact(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to ExactScalar")

    # -- predicates ----------------------------------------------------
    def is_zero(self) -> bool:
        return not (self.a or self.b or self.c or self.d)

    def is_rational(self) -> bool:
        return not (self.b or self.c or self.d)

    def is_gaussian_rational(self) -> bool:
        return not (self.c or self.d)

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other) -> "ExactScalar":
        o = ExactScalar.of(other)
        return ExactScalar(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    __radd__ = __add__

    def __neg__(self) -> "ExactScalar":
        return ExactScalar(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, other) -> "ExactScalar":
        return self + (-ExactScalar.of(other))

    def __rsub__(self, other) -> "ExactScalar":
        return ExactScalar.of(other) + (-self)

    def __mul__(self, other) -> "ExactScalar":
        o = ExactScalar.of(other)
        if not (self.c or self.d or o.c or o.d):
            # Gaussian-rational fast path (the common case)
            ra, rb = _gmul(self.a, self.b, o.a, o.b)
            return ExactScalar(ra, rb)
        # (p1 + q1 r)(p2 + q2 r) = (p1 p2 + 2 q1 q2) + (p1 q2 + q1 p2) r,  r = sqrt2
        pa, pb = _gmul(self.a, self.b, o.a, o.b)
        qa, qb = _gmul(self.c, self.d, o.c, o.d)
        sa, sb = _gmul(self.a, self.b, o.c, o.d)
        ta, tb = _gmul(self.c, self.d, o.a, o.b)
        return ExactScalar(pa + 2 * qa, pb + 2 * qb, sa + ta, sb + tb)

    __rmul__ = __mul__

    def inverse(self) -> "ExactScalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero ExactScalar")
        # x = p + q r with p, q Gaussian rational; x * (p - q r) = p^2 - 2 q^2
        pa, pb = _gmul(self.a, self.b, self.a, self.b)
        qa, qb = _gmul(self.c, self.d, self.c, self.d)
        wa, wb = pa - 2 * qa, pb - 2 * qb       # Gaussian rational, nonzero
        n = wa * wa + wb * wb
        # 1/w = conj(w)/|w|^2
        ia, ib = wa / n, -wb / n
        ra, rb = _gmul(self.a, self.b, ia, ib)
        ca, cb = _gmul(-self.c, -self.d, ia, ib)
        return ExactScalar(ra, rb, ca, cb)

    def __truediv__(self, other) -> "ExactScalar":
        return self * ExactScalar.of(other).inverse()

    def __rtruediv__(self, other) -> "ExactScalar":
        return ExactScalar.of(other) * self.inverse()

    def __pow__(self, n: int) -> "ExactScalar":
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self) -> "ExactScalar":
        return ExactScalar(self.a, -self.b, self.c, -self.d)

    # -- comparisons / hashing ------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, str, ExactScalar)):
            o = ExactScalar.of(other)
            return (self.a, self.b, self.c, self.d) == (o.a, o.b, o.c, o.d)
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d))

    # -- conversions -----------------------------------------------------
    def to_complex(self) -> complex:
        r2 = 2 ** 0.5
        return complex(float(self.a) + float(self.c) * r2,
                       float(self.b) + float(self.d) * r2)

    def __repr__(self) -> str:
        return f"ExactScalar({format_exact(self)!r})"

    def __str__(self) -> str:
        return format_exact(self)


ZERO = ExactScalar(0)
ONE = ExactScalar(1)
I_UNIT = ExactScalar(0, 1)
SQRT2 = ExactScalar(0, 0, 1)
HALF = ExactScalar(Fraction(1, 2))
INV_SQRT2 = ExactScalar(0, 0, Fraction(1, 2))       # 1/sqrt2 = sqrt2/2


def _sign_quad(u: Fraction, v: Fraction) -> int:
    """Sign of u + v*sqrt(2) with u, v rational."""
    if v == 0:
        return (u > 0) - (u < 0)
    if u == 0:
        return (v > 0) - (v < 0)
    if u > 0 and v > 0:
        return 1
    if u < 0 and v < 0:
        return -1
    # opposite signs: compare |u| with |v| sqrt2 via squares
    s = (u * u > 2 * v * v) - (u * u < 2 * v * v)
    return s if u > 0 else -s


def cmp_exact(x: ExactScalar, y: ExactScalar) -> int:
    """(real, imag)-lexicographic exact comparison, for canonical ordering."""
    s = _sign_quad(x.a - y.a, x.c - y.c)
    if s:
        return s
    return _sign_quad(x.b - y.b, x.d - y.d)


def sqrt_in_field(x: ExactScalar) -> "list[ExactScalar]":
    """All square roots of x that lie in Q(i, sqrt2), for rational x.

    Non-rational inputs return [] (no attempt is made); callers treat an
    empty answer as "not determined in-field", never as a proof of absence.
    """
    if x.is_zero():
        return [ZERO]
    if not x.is_rational():
        return []
    q = x.a
    num, den = abs(q.numerator), q.denominator
    # sqrt(num/den) = sqrt(num*den)/den
    m2 = num * den
    root = _int_sqrt_with_factor(m2)
    if root is None:
        return []
    m, t = root                                  # sqrt(m2) = m * sqrt(t), t in {1,2}
    mag = ExactScalar(Fraction(m, den)) if t == 1 else ExactScalar(0, 0, Fraction(m, den))
    r = mag if q > 0 else mag * I_UNIT
    return [r, -r]


def _int_sqrt_with_factor(n: int):
    """Write n = m^2 * t with t in {1, 2}; return (m, t) or None."""
    import math
    for t in (1, 2):
        if n % t:
            continue
        m = math.isqrt(n // t)
        if m * m * t == n:
            return m, t
    return None


def nth_roots_in_field(x: ExactScalar, n: int) -> "list[ExactScalar]":
    """In-field solutions of k**n == x (best effort; may miss irrational k)."""
    if n == 1:
        return [x]
    if n == 2:
        return sqrt_in_field(x)
    if n == 4:
        out = []
        for r in sqrt_in_field(x):
            out.extend(sqrt_in_field(r))
        # i * root is also a 4th root when root is
        extra = [r * I_UNIT for r in out]
        seen, res = set(), []
        for r in out + extra:
            if (r.a, r.b, r.c, r.d) not in seen and (r ** 4) == x:
                seen.add((r.a, r.b, r.c, r.d))
                res.append(r)
        return res
    if n == 3 and x.is_rational():
        q = x.a
        num, den = q.numerator, q.denominator
        rn = _icbrt(num)
        rd = _icbrt(den)
        if rn is not None and rd is not None:
            return [ExactScalar(Fraction(rn, rd))]
        return []
    return []


def _icbrt(n: int):
    sign = -1 if n < 0 else 1
    n = abs(n)
    r = round(n ** (1 / 3)) if n else 0
    for c in (r - 1, r, r + 1):
        if c >= 0 and c ** 3 == n:
            return sign * c
    return None


# -- parsing / formatting -----------------------------------------------

_TERM_RE = re.compile(r"^([0-9]+(?:/[0-9]+)?|[0-9]*\.[0-9]+)?(i)?(sqrt2|√2)?(i)?$")


def parse_exact(text: str) -> ExactScalar:
    """Parse an exact entry: signed terms of rational * [i] * [sqrt2].

    Accepts e.g. "1", "-1/2", "i", "2i", "1/2+1/3 i", "1/2 i sqrt2",
    "3/4 - 1/2 sqrt2 + i".
    """
    s = text.strip().replace("−", "-")
    if not s:
        raise StateEntryError(text)
    if s in ("0", "+0", "-0"):
        return ZERO
    chunks = re.findall(r"[+-]?[^+-]+", s.replace(" ", " "))
    if not chunks or "".join(chunks).replace(" ", "") != s.replace(" ", ""):
        raise StateEntryError(text)
    a = b = c = d = Fraction(0)
    for chunk in chunks:
        t = chunk.strip()
        sign = 1
        if t and t[0] in "+-":
            sign = -1 if t[0] == "-" else 1
            t = t[1:].strip()
        t = t.replace(" ", "").replace("*", "")
        m = _TERM_RE.match(t)
        if not m or (m.group(2) and m.group(4)) or not t:
            raise StateEntryError(text)
        num, i1, r2, i2 = m.groups()
        try:
            mag = Fraction(num) if num else Fraction(1)
        except (ValueError, ZeroDivisionError):
            raise StateEntryError(text) from None
        mag *= sign
        has_i = bool(i1 or i2)
        has_r2 = bool(r2)
        if has_i and has_r2:
            d += mag
        elif has_i:
            b += mag
        elif has_r2:
            c += mag
        else:
            a += mag
    return ExactScalar(a, b, c, d)


class StateEntryError(StateFormatError):
    def __init__(self, text):
        super().__init__(f"malformed exact amplitude entry: {text!r}")


def format_exact(x: ExactScalar) -> str:
    """Canonical document form, parse_exact(format_exact(x)) == x."""
    terms = []
    for val, marker in ((x.a, ""), (x.b, " i"), (x.c, " sqrt2"), (x.d, " i sqrt2")):
        if val:
            terms.append((val, marker))
    if not terms:
        return "0"
    out = []
    for idx, (val, marker) in enumerate(terms):
        mag = abs(val)
        body = f"{mag}{marker}"
        if idx == 0:
            out.append(("-" if val < 0 else "") + body)
        else:
            out.append(("- " if val < 0 else "+ ") + body)
    return " ".join(out)

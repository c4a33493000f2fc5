"""Univariate polynomials over the exact scalar field.

Coefficients are stored ascending (coeffs[k] multiplies sigma^k) with no
trailing zeros.  Everything here is the gcd machinery the exact spectral
path stands on: Euclidean division, monic gcd, Yun-style square-free
decomposition, and refinement of a polynomial set into pairwise coprime
square-free factors ("root classes").
"""
from __future__ import annotations

from .scalars import ExactScalar, ONE, ZERO


class Poly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [ExactScalar.of(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- basics ---------------------------------------------------------
    def degree(self) -> int:
        return len(self.coeffs) - 1        # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == ONE

    def leading(self) -> ExactScalar:
        if self.is_zero():
            return ZERO
        return self.coeffs[-1]

    def coeff(self, k: int) -> ExactScalar:
        return self.coeffs[k] if k < len(self.coeffs) else ZERO

    def monic(self) -> "Poly":
        if self.is_zero() or self.leading() == ONE:
            return self
        inv = self.leading().inverse()
        return Poly([c * inv for c in self.coeffs])

    # -- ring operations ---------------------------------------------------
    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero() or other.is_zero():
            return Poly([])
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, ci in enumerate(self.coeffs):
            if ci.is_zero():
                continue
            for j, cj in enumerate(other.coeffs):
                out[i + j] = out[i + j] + ci * cj
        return Poly(out)

    def scale(self, k: ExactScalar) -> "Poly":
        return Poly([k * c for c in self.coeffs])

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def divmod(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly([]), self
        quot = [ZERO] * (dq + 1)
        inv_lead = other.leading().inverse()
        for k in range(dq, -1, -1):
            c = rem[k + other.degree()] * inv_lead
            quot[k] = c
            if not c.is_zero():
                for j, oc in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * oc
        return Poly(quot), Poly(rem)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def divides(self, other: "Poly") -> bool:
        return other.divmod(self)[1].is_zero()

    def derivative(self) -> "Poly":
        return Poly([c * ExactScalar(k) for k, c in enumerate(self.coeffs)][1:])

    def eval(self, x: ExactScalar) -> ExactScalar:
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def scale_roots(self, k: ExactScalar) -> "Poly":
        """Monic image with every root multiplied by k: k^d p(sigma/k)."""
        d = self.degree()
        out = []
        power = ONE
        for j in range(d, -1, -1):
            out.append(self.coeff(j) * power)
            power = power * k
        out.reverse()
        return Poly(out).monic()

    def trailing_zero_count(self) -> int:
        for k, c in enumerate(self.coeffs):
            if not c.is_zero():
                return k
        return self.degree() + 1

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)})"


def poly_x() -> Poly:
    return Poly([0, 1])


def poly_one() -> Poly:
    return Poly([1])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm."""
    while not b.is_zero():
        a, b = b, a % b
    if a.is_zero():
        return a
    return a.monic()


def squarefree_decomposition(p: Poly):
    """[(piece, multiplicity)]: p = prod piece_i ** i, pieces square-free
    and pairwise coprime (characteristic zero)."""
    p = p.monic()
    if p.degree() < 1:
        return []
    d = poly_gcd(p, p.derivative())
    w = p // d
    out = []
    i = 1
    while w.degree() > 0:
        y = poly_gcd(w, d)
        piece = w // y
        if piece.degree() > 0:
            out.append((piece.monic(), i))
        w = y
        if not d.is_zero():
            d = d // y
        i += 1
    return out


def coprime_refinement(polys) -> "list[Poly]":
    """Refine monic square-free inputs into a pairwise-coprime basis.

    Every input is a product of basis elements; two roots end up in the
    same basis element only if no input separates them.
    """
    basis: list[Poly] = []
    for q in polys:
        queue = [q.monic()]
        while queue:
            cur = queue.pop()
            if cur.degree() < 1:
                continue
            split = False
            for i, b in enumerate(basis):
                g = poly_gcd(cur, b)
                if g.degree() < 1:
                    continue
                if g == b:
                    queue.append(cur // b)
                else:
                    basis[i:i + 1] = [g, (b // g).monic()]
                    queue.append(cur)
                split = True
                break
            if not split:
                basis.append(cur)
    return basis


def format_poly(p: Poly, var: str = "s") -> str:
    if p.is_zero():
        return "0"
    parts = []
    for k in range(p.degree(), -1, -1):
        c = p.coeff(k)
        if c.is_zero():
            continue
        if k == 0:
            body = str(c)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if c == ONE else (f"-{mono}" if c == -ONE else f"({c}){mono}")
        parts.append(body)
    out = parts[0]
    for part in parts[1:]:
        if part.startswith("-"):
            out += " - " + part[1:]
        else:
            out += " + " + part
    return out

"""Characteristic polynomial, multiplicity structure, and Jordan form of a
4x4 complex matrix, with exact and floating paths.

Exact path: Faddeev-LeVerrier for the characteristic polynomial; invariant
factors of sigma*I - S from determinantal divisors (gcds of k x k minors,
which is the Smith-form diagonal); square-free gcd chains plus a coprime
refinement split the spectrum into "root classes" without ever extracting
an irrational root.  Every root of one class carries the same block sizes,
namely the exponents of the class polynomial in the invariant factors.

Float path: numpy eigensolve, single-linkage clustering with a relative
gap threshold, and block sizes from numerical-rank sequences of
(S - lambda I)^k.  Borderline gap or rank decisions raise ambiguity flags
instead of guessing.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key
from itertools import combinations
from typing import Optional

import numpy as np

from . import linalg
from .polys import (Poly, coprime_refinement, format_poly, poly_gcd,
                    squarefree_decomposition)
from .scalars import ExactScalar, ONE, ZERO, cmp_exact
from .smatrix import SMatrix
from .states import EXACT, FLOAT

TOL_ABS = 1e-9
TOL_REL = 1e-9

AMBIGUOUS_CLUSTERING = "ambiguous clustering"
AMBIGUOUS_RANK = "ambiguous rank"


# --------------------------------------------------------------------------
# eigenvalue handles

@dataclass(frozen=True)
class ExactValue:
    """An eigenvalue lying in the exact field."""

    value: ExactScalar

    @property
    def is_zero(self) -> bool:
        return self.value.is_zero()

    def render(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class SymbolicRoot:
    """One root of an irreducible-over-the-gcd-refinement class polynomial.

    The root itself is never extracted; the handle ties the eigenvalue to
    its minimal-polynomial class and an index within the class.
    """

    minpoly: Poly
    index: int

    @property
    def is_zero(self) -> bool:
        return False          # a class containing 0 is always split off as sigma

    def render(self) -> str:
        return f"root{self.index + 1}[{format_poly(self.minpoly)}]"


@dataclass(frozen=True)
class FloatValue:
    """Cluster centroid on the float path."""

    value: complex
    zero: bool = False

    @property
    def is_zero(self) -> bool:
        return self.zero

    def render(self) -> str:
        if self.zero:
            return "0"
        z = self.value
        if abs(z.imag) < 1e-14 * max(1.0, abs(z.real)):
            return f"{z.real:.6g}"
        return f"{z.real:.6g}{z.imag:+.6g}i"


def _handle_sort_cmp(a, b) -> int:
    ra, rb = _handle_rank(a), _handle_rank(b)
    if ra != rb:
        return -1 if ra < rb else 1
    if isinstance(a, ExactValue):
        return cmp_exact(a.value, b.value)
    if isinstance(a, FloatValue):
        ka = (a.value.real, a.value.imag)
        kb = (b.value.real, b.value.imag)
        return (ka > kb) - (ka < kb)
    ka = (tuple((c.a, c.b, c.c, c.d) for c in a.minpoly.coeffs), a.index)
    kb = (tuple((c.a, c.b, c.c, c.d) for c in b.minpoly.coeffs), b.index)
    return (ka > kb) - (ka < kb)


def _handle_rank(h) -> int:
    if isinstance(h, (ExactValue, FloatValue)):
        return 0
    return 1


# --------------------------------------------------------------------------
# result types

@dataclass(frozen=True)
class CharPoly:
    """Monic quartic sigma^4 + c3 sigma^3 + c2 sigma^2 + c1 sigma + c0."""

    c3: object
    c2: object
    c1: object
    c0: object
    field: str = EXACT

    def coeffs_ascending(self):
        return (self.c0, self.c1, self.c2, self.c3)

    def poly(self) -> Poly:
        return Poly([self.c0, self.c1, self.c2, self.c3, ONE])

    def trailing_zero_count(self) -> int:
        if self.field == EXACT:
            for k, c in enumerate(self.coeffs_ascending()):
                if not c.is_zero():
                    return k
            return 4
        for k, c in enumerate(self.coeffs_ascending()):
            if c != 0:
                return k
        return 4

    def render(self) -> str:
        if self.field == EXACT:
            return format_poly(self.poly())
        parts = ["s^4"]
        for k, c in ((3, self.c3), (2, self.c2), (1, self.c1), (0, self.c0)):
            if c != 0:
                mono = {3: "s^3", 2: "s^2", 1: "s", 0: ""}[k]
                parts.append(f"({c:.6g}){mono}")
        return " + ".join(parts)


@dataclass(frozen=True)
class MultiplicityStructure:
    """Algebraic multiplicities of the CP roots plus the zero-root count."""

    partition: tuple          # multiplicities, descending, summing to 4
    zero_root_multiplicity: int
    flags: frozenset = frozenset()

    def __post_init__(self):
        if sum(self.partition) != 4:
            raise ValueError(f"multiplicities {self.partition} do not sum to 4")


@dataclass(frozen=True)
class JordanBlock:
    eigenvalue: object        # ExactValue | SymbolicRoot | FloatValue
    size: int

    def render(self) -> str:
        name = self.eigenvalue.render()
        return name if self.size == 1 else f"J{self.size}({name})"


@dataclass(frozen=True)
class SpectralClass:
    """A set of conjugate eigenvalues sharing one block-size multiset.

    degree = number of eigenvalues in the class; blocks are the sizes each
    of them carries.  On the exact path the class polynomial is the monic
    square-free factor; on the float path degree is 1 per cluster.
    """

    handle_kind: str              # "zero" | "exact" | "symbolic" | "float"
    blocks: tuple                 # per-root block sizes, descending
    degree: int = 1
    value: Optional[ExactScalar] = None
    minpoly: Optional[Poly] = None
    centroid: complex = 0j


@dataclass(frozen=True)
class JordanForm:
    """Blocks in canonical order (size descending, then eigenvalue)."""

    blocks: tuple
    classes: tuple
    field: str = EXACT
    flags: frozenset = frozenset()

    def block_sizes(self) -> tuple:
        return tuple(sorted((b.size for b in self.blocks), reverse=True))

    def render(self) -> str:
        return " ".join(b.render() for b in self.blocks)


def _canonical_blocks(blocks) -> tuple:
    def cmp(x, y):
        if x.size != y.size:
            return -1 if x.size > y.size else 1
        return _handle_sort_cmp(x.eigenvalue, y.eigenvalue)
    return tuple(sorted(blocks, key=cmp_to_key(cmp)))


# --------------------------------------------------------------------------
# exact path

def char_poly(S: SMatrix) -> CharPoly:
    """Monic characteristic polynomial det(sigma I - S)."""
    if S.field == FLOAT:
        return char_poly_float(np.asarray(S.entries, dtype=complex))
    return _char_poly_exact(S.entries)


def _char_poly_exact(m) -> CharPoly:
    # Faddeev-LeVerrier: traces of the iterates give the coefficients.
    def trace(a):
        return a[0][0] + a[1][1] + a[2][2] + a[3][3]

    ident = linalg.identity(4)
    M = m
    c3 = -trace(M)
    M = linalg.mat_mul(m, linalg.mat_add(M, linalg.mat_scale(c3, ident)))
    c2 = -(trace(M) / ExactScalar(2))
    M = linalg.mat_mul(m, linalg.mat_add(M, linalg.mat_scale(c2, ident)))
    c1 = -(trace(M) / ExactScalar(3))
    M = linalg.mat_mul(m, linalg.mat_add(M, linalg.mat_scale(c1, ident)))
    c0 = -(trace(M) / ExactScalar(4))
    return CharPoly(c3, c2, c1, c0, EXACT)


def char_poly_by_cofactors(S: SMatrix) -> CharPoly:
    """Independent route: expand det(sigma I - S) as a polynomial matrix."""
    pm = _sigma_i_minus_s(S.entries)
    p = _poly_det(pm).monic()
    return CharPoly(p.coeff(3), p.coeff(2), p.coeff(1), p.coeff(0), EXACT)


def _sigma_i_minus_s(m):
    out = []
    for i in range(4):
        row = []
        for j in range(4):
            if i == j:
                row.append(Poly([-m[i][j], ONE]))
            else:
                row.append(Poly([-m[i][j]]))
        out.append(tuple(row))
    return tuple(out)


def _poly_det(pm) -> Poly:
    rows = list(range(len(pm)))
    cols = list(range(len(pm)))
    return _poly_det_rec(pm, rows, cols)


def _poly_det_rec(pm, rows, cols) -> Poly:
    if len(rows) == 1:
        return pm[rows[0]][cols[0]]
    acc = Poly([])
    r = rows[0]
    rest = rows[1:]
    for idx, c in enumerate(cols):
        sub = _poly_det_rec(pm, rest, cols[:idx] + cols[idx + 1:])
        term = pm[r][c] * sub
        acc = acc + (term if idx % 2 == 0 else -term)
    return acc


def multiplicity_structure(p: CharPoly, tol_abs: float = TOL_ABS,
                           tol_rel: float = TOL_REL) -> MultiplicityStructure:
    """Exact: square-free gcd chain.  Float: companion roots + clustering."""
    if p.field == EXACT:
        parts = []
        for piece, mult in squarefree_decomposition(p.poly()):
            parts.extend([mult] * piece.degree())
        return MultiplicityStructure(tuple(sorted(parts, reverse=True)),
                                     p.trailing_zero_count())
    roots = np.roots([1, p.c3, p.c2, p.c1, p.c0])
    clusters, flags = _cluster(roots, tol_abs, tol_rel)
    partition = tuple(sorted((len(c) for c in clusters), reverse=True))
    zero = 0
    radius = max(1e-300, max(abs(r) for r in roots))
    thr = max(tol_abs, tol_rel * radius)
    for c in clusters:
        if abs(np.mean(c)) <= thr:
            zero = len(c)
    return MultiplicityStructure(partition, zero, frozenset(flags))


def invariant_factors(S: SMatrix) -> "list[Poly]":
    """Smith-form invariant factors d1 | d2 | d3 | d4 of sigma I - S,
    computed as ratios of determinantal divisors (gcds of k x k minors)."""
    pm = _sigma_i_minus_s(S.entries)
    deltas = [Poly([1])]
    for k in (1, 2, 3):
        g = Poly([])
        for rows in combinations(range(4), k):
            for cols in combinations(range(4), k):
                minor = _poly_det_rec(pm, list(rows), list(cols))
                if minor.is_zero():
                    continue
                g = minor.monic() if g.is_zero() else poly_gcd(g, minor)
                if g.degree() == 0:
                    break
            if not g.is_zero() and g.degree() == 0:
                break
        deltas.append(g if not g.is_zero() else Poly([]))
    deltas.append(_poly_det(pm).monic())
    factors = []
    for k in range(1, 5):
        prev, cur = deltas[k - 1], deltas[k]
        if prev.is_zero() or cur.is_zero():
            factors.append(Poly([]))
        else:
            factors.append((cur // prev).monic())
    return factors


def jordan_form(S: SMatrix, tol_abs: float = TOL_ABS,
                tol_rel: float = TOL_REL) -> JordanForm:
    if S.field == FLOAT:
        return jordan_form_float(np.asarray(S.entries, dtype=complex),
                                 tol_abs=tol_abs, tol_rel=tol_rel)
    return _jordan_form_exact(S)


def _jordan_form_exact(S: SMatrix) -> JordanForm:
    p = char_poly(S).poly()
    pieces = squarefree_decomposition(p)

    if len(pieces) == 1 and pieces[0][1] == 1:
        # square-free characteristic polynomial: diagonalizable, all 1-blocks
        factors = None
        class_polys = [pieces[0][0]]
        exponents = {pieces[0][0]: [1]}
    else:
        factors = invariant_factors(S)
        basis_inputs = [piece for piece, _ in pieces]
        for d in factors:
            if d.degree() >= 1:
                basis_inputs.extend(piece for piece, _ in squarefree_decomposition(d))
        if p.coeff(0).is_zero():
            basis_inputs.append(Poly([0, 1]))          # isolate the zero root
        class_polys = coprime_refinement(basis_inputs)
        exponents = {}
        for f in class_polys:
            exps = []
            for d in factors:
                e = 0
                if d.degree() >= 1:
                    rem = d
                    while rem.degree() >= f.degree():
                        q, r = rem.divmod(f)
                        if not r.is_zero():
                            break
                        e += 1
                        rem = q
                if e:
                    exps.append(e)
            exponents[f] = exps

    # refine the square-free fast path too: pull the zero root out
    if factors is None and p.coeff(0).is_zero():
        class_polys = coprime_refinement(class_polys + [Poly([0, 1])])
        exponents = {f: [1] for f in class_polys}

    blocks = []
    classes = []
    total = 0
    for f in class_polys:
        exps = exponents[f]
        if not exps:
            continue
        sizes = tuple(sorted(exps, reverse=True))
        deg = f.degree()
        total += deg * sum(sizes)
        if deg == 1:
            val = -f.coeff(0)
            kind = "zero" if val.is_zero() else "exact"
            classes.append(SpectralClass(kind, sizes, 1, value=val, minpoly=f))
            for s in sizes:
                blocks.append(JordanBlock(ExactValue(val), s))
        else:
            classes.append(SpectralClass("symbolic", sizes, deg, minpoly=f))
            for idx in range(deg):
                for s in sizes:
                    blocks.append(JordanBlock(SymbolicRoot(f, idx), s))
    if total != 4:
        raise RuntimeError(f"internal: block sizes sum to {total}, not 4")
    return JordanForm(_canonical_blocks(blocks), tuple(classes), EXACT)


# --------------------------------------------------------------------------
# float path

# Defective eigenvalues scatter at roughly norm * eps**(1/blocksize) under
# eigensolve noise, far above the linking threshold, so magnitude alone
# cannot separate "true zero, noisy" from "genuinely tiny".  Eigenvalues
# below MAG_GUARD * ||S||_F are *guessed* to be zero and the guess is then
# verified against the rank profile of S^k (which nonzero blocks cannot
# pollute); a wrong guess fails the block-count consistency check and is
# flagged, never silently reported.  GAP_GUARD flags inter-cluster gaps at
# defective-splitting scale, and RADIUS_GUARD flags spectra that are tiny
# relative to the matrix norm without being fully nilpotent.
MAG_GUARD = 1e-3
GAP_GUARD = 1e-3
RADIUS_GUARD = 1e-2


def char_poly_float(S: np.ndarray) -> CharPoly:
    c = np.poly(np.linalg.eigvals(S))
    return CharPoly(complex(c[1]), complex(c[2]), complex(c[3]), complex(c[4]),
                    FLOAT)


def _cluster(values, tol_abs: float, tol_rel: float, gap_guard: float = 0.0):
    """Single-linkage clustering of <= 4 complex numbers.

    Returns (clusters, flags); flags report when a separating gap is within
    one decade of the linking threshold or of a merged gap (and, when
    gap_guard is set, when it is suspiciously small relative to the
    spectral radius - the scale at which defective spectra split).
    """
    vals = list(values)
    radius = max(abs(v) for v in vals)
    thr = max(tol_abs, tol_rel * radius)
    parent = list(range(len(vals)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    merged_gap = 0.0
    for i, j in combinations(range(len(vals)), 2):
        d = abs(vals[i] - vals[j])
        if d <= thr:
            merged_gap = max(merged_gap, d)
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
    groups = {}
    for i in range(len(vals)):
        groups.setdefault(find(i), []).append(vals[i])
    clusters = list(groups.values())
    flags = set()
    min_inter = None
    for i, j in combinations(range(len(vals)), 2):
        if find(i) != find(j):
            d = abs(vals[i] - vals[j])
            min_inter = d if min_inter is None else min(min_inter, d)
    if min_inter is not None:
        if min_inter <= 10 * max(merged_gap, thr):
            flags.add(AMBIGUOUS_CLUSTERING)
        elif gap_guard and min_inter <= gap_guard * radius:
            flags.add(AMBIGUOUS_CLUSTERING)
    return clusters, flags


def _numerical_rank(M: np.ndarray, tol_rel: float):
    sv = np.linalg.svd(M, compute_uv=False)
    top = sv[0] if len(sv) else 0.0
    if top <= 0:
        return 0, set()
    cut = tol_rel * top
    rank = int((sv > cut).sum())
    flags = set()
    for s in sv:
        if s > 0 and cut / 10 < s < cut * 10:
            flags.add(AMBIGUOUS_RANK)
    return rank, flags


def jordan_form_float(S: np.ndarray, eigs: Optional[np.ndarray] = None,
                      tol_abs: float = TOL_ABS,
                      tol_rel: float = TOL_REL) -> JordanForm:
    if eigs is None:
        eigs = np.linalg.eigvals(S)
    eigs = np.asarray(eigs)
    fro = float(np.linalg.norm(S))
    radius = float(max(abs(v) for v in eigs))
    thr = max(tol_abs, tol_rel * max(radius, 1e-300))
    clusters, flags = _cluster(eigs, tol_abs, tol_rel, gap_guard=GAP_GUARD)

    zero_cut = max(thr, MAG_GUARD * fro)
    zero_mult = 0
    nonzero = []
    for group in clusters:
        centroid = complex(np.mean(group))
        if abs(centroid) <= zero_cut:
            zero_mult += len(group)
        else:
            nonzero.append((centroid, len(group)))
    if nonzero and radius <= RADIUS_GUARD * fro:
        flags.add(AMBIGUOUS_CLUSTERING)

    blocks = []
    classes = []
    if zero_mult:
        sizes, rank_flags = _zero_blocks_from_ranks(S, zero_mult, tol_rel)
        flags |= rank_flags
        handle = FloatValue(0j, True)
        classes.append(SpectralClass("zero", sizes, 1, centroid=0j))
        for s in sizes:
            blocks.append(JordanBlock(handle, s))
    for centroid, mult in nonzero:
        if mult == 1:
            sizes = (1,)                      # simple eigenvalue, forced
        else:
            sizes, rank_flags = _block_sizes_from_ranks(S, centroid, mult, tol_rel)
            flags |= rank_flags
        handle = FloatValue(centroid, False)
        classes.append(SpectralClass("float", sizes, 1, centroid=centroid))
        for s in sizes:
            blocks.append(JordanBlock(handle, s))
    return JordanForm(_canonical_blocks(blocks), tuple(classes), FLOAT,
                      frozenset(flags))


def _rank_profile(S, shift, tol_rel):
    flags = set()
    shifted = S - shift * np.eye(4)
    ranks = [4]
    M = np.eye(4, dtype=complex)
    for _ in range(4):
        M = M @ shifted
        r, f = _numerical_rank(M, tol_rel)
        flags |= f
        ranks.append(r)
    return ranks, flags


def _sizes_from_rank_drops(ranks, mult, flags):
    geq = [ranks[k - 1] - ranks[k] for k in range(1, 5)]      # blocks of size >= k
    sizes = []
    for k in range(1, 5):
        cnt = geq[k - 1] - (geq[k] if k < 4 else 0)
        if cnt < 0:
            flags.add(AMBIGUOUS_RANK)
            cnt = 0
        sizes.extend([k] * cnt)
    if sum(sizes) != mult:
        flags.add(AMBIGUOUS_RANK)
        sizes = [1] * mult                     # fall back, flagged
    return tuple(sorted(sizes, reverse=True))


def _zero_blocks_from_ranks(S, mult, tol_rel):
    """Zero-eigenvalue block sizes from ranks of S^k.

    Nonzero Jordan blocks keep full rank under powers, so the rank drops
    of S^k count zero blocks regardless of the rest of the spectrum.
    """
    ranks, flags = _rank_profile(S, 0j, tol_rel)
    # rank of S^k = (4 - zero multiplicity) + #{zero blocks of size > k}
    sizes = _sizes_from_rank_drops(ranks, mult, flags)
    return sizes, flags


def _block_sizes_from_ranks(S, lam, mult, tol_rel):
    flags = set()
    ranks, f = _rank_profile(S, lam, tol_rel)
    flags |= f
    sizes = _sizes_from_rank_drops(ranks, mult, flags)
    return sizes, flags


# --------------------------------------------------------------------------
# shared checks

def eval_poly_at_matrix(p: CharPoly, S: SMatrix):
    """p(S) for the Cayley-Hamilton check (exact field)."""
    ident = linalg.identity(4)
    acc = linalg.zeros(4, 4)
    for c in (ONE, p.c3, p.c2, p.c1, p.c0):
        acc = linalg.mat_add(linalg.mat_mul(acc, S.entries),
                             linalg.mat_scale(c, ident))
    return acc

"""Oracle route: the cube-subcomplex cochain complex built cell by cell.

A cell of the m-fold interval product is a length-m word with letter i one of
0_i, 1_i (endpoints) or the segment 01_i; it lies in the subcomplex for K
exactly when the segment positions form a simplex of K.  Cells are stored as
mask pairs (sigma, ones): sigma marks segment letters, ones marks 1-letters.

Coboundaries follow d0* = -01*, d1* = +01* per factor with the alternating
tensor sign; cup products are computed per factor from the front/back-face
rule on the interval with the global transposition sign, and the basis change
(1 = 0* + 1*, t = 1*, u = 01*) carries monomial cochains onto cellular ones.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import Cochain
from .bitsets import full_mask, iter_bits, iter_subsets, popcount
from .complexes import SimplicialComplex
from .errors import SizeLimitError
from .intlinalg import CohomologyGroup, IntegerCochainComplex

DEFAULT_CELL_CAP = 10**6

# letters of one interval factor
ZERO, ONE, SEG = "0", "1", "01"


@dataclass(frozen=True)
class Cell:
    """One product cell: sigma = segment positions, ones = 1-letter positions."""

    sigma: int
    ones: int

    @property
    def dim(self) -> int:
        return popcount(self.sigma)

    def key(self) -> tuple[int, int]:
        return (self.sigma, self.ones)

    def letters(self, m: int) -> list[str]:
        out = []
        for i in range(m):
            bit = 1 << i
            out.append(SEG if self.sigma & bit else (ONE if self.ones & bit else ZERO))
        return out

    def render(self, m: int) -> str:
        return "x".join(self.letters(m))


def enumerate_cells(
    K: SimplicialComplex, cell_cap: int = DEFAULT_CELL_CAP
) -> list[list[Cell]]:
    """Cells of the subcomplex for K, graded by dimension, each grade sorted
    by (sigma, ones)."""
    total = K.cell_count()
    if total > cell_cap:
        raise SizeLimitError(f"{total} cells exceed the cap {cell_cap}")
    ambient = full_mask(K.m)
    grades: list[list[Cell]] = [[] for _ in range(K.dim + 2)]
    for s in K.simplices:
        free = ambient & ~s
        d = popcount(s)
        for ones in iter_subsets(free):
            grades[d].append(Cell(s, ones))
    for grade in grades:
        grade.sort(key=Cell.key)
    return grades


def cellular_coboundary(
    K: SimplicialComplex, cell_cap: int = DEFAULT_CELL_CAP
) -> IntegerCochainComplex:
    """Cochain complex of the subcomplex; dual cells whose segment set leaves
    K are dropped (the quotient by the face ideal on the cellular side)."""
    grades = enumerate_cells(K, cell_cap=cell_cap)
    bases = {d: grade for d, grade in enumerate(grades) if grade}
    index = [
        {cell.key(): i for i, cell in enumerate(grade)} for grade in grades
    ]
    coboundaries = {}
    for d in range(len(grades) - 1):
        src, dst = grades[d], grades[d + 1]
        if not src or not dst:
            continue
        mat = np.zeros((len(dst), len(src)), dtype=np.int64)
        for j, cell in enumerate(src):
            for key, coeff in _cell_coboundary_terms(K, cell):
                mat[index[d + 1][key], j] = coeff
        coboundaries[d] = mat
    return IntegerCochainComplex(bases, coboundaries)


def _cell_coboundary_terms(K: SimplicialComplex, cell: Cell):
    """(key, coefficient) pairs of d(cell*), restricted to cells over K."""
    free = full_mask(K.m) & ~cell.sigma
    for i in iter_bits(free):
        bit = 1 << i
        sigma = cell.sigma | bit
        if not K.is_simplex(sigma):
            continue
        # tensor sign: segments strictly before position i
        sign = -1 if popcount(cell.sigma & (bit - 1)) & 1 else 1
        if cell.ones & bit:
            yield (sigma, cell.ones & ~bit), sign
        else:
            yield (sigma, cell.ones), -sign


class CellCochain:
    """Integer combination of dual cells, homogeneous in dimension."""

    __slots__ = ("terms", "degree")

    def __init__(self, terms=None, degree: int | None = None):
        self.terms: dict[tuple[int, int], int] = {}
        self.degree = degree
        if terms:
            for key, coeff in dict(terms).items():
                self._add_term(key, coeff)

    def _add_term(self, key: tuple[int, int], coeff: int) -> None:
        if coeff == 0:
            return
        d = popcount(key[0])
        if self.degree is None:
            self.degree = d
        elif self.degree != d:
            raise ValueError(f"mixed cell dimensions: {self.degree} and {d}")
        new = self.terms.get(key, 0) + coeff
        if new:
            self.terms[key] = new
        else:
            del self.terms[key]

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "CellCochain") -> "CellCochain":
        out = CellCochain(self.terms, degree=self.degree)
        for key, c in other.terms.items():
            out._add_term(key, c)
        return out

    def __sub__(self, other: "CellCochain") -> "CellCochain":
        return self + other.scale(-1)

    def scale(self, c: int) -> "CellCochain":
        if c == 0:
            return CellCochain(degree=self.degree)
        return CellCochain({k: v * c for k, v in self.terms.items()}, degree=self.degree)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CellCochain):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        raise TypeError("CellCochain is unhashable")

    def to_coeff_vector(self, basis: list[Cell]) -> np.ndarray:
        index = {cell.key(): i for i, cell in enumerate(basis)}
        vec = np.zeros(len(basis), dtype=object)
        for key, coeff in self.terms.items():
            if key not in index:
                raise ValueError(f"cell {key} outside basis")
            vec[index[key]] = coeff
        return vec

    @classmethod
    def from_coeff_vector(cls, basis: list[Cell], vec) -> "CellCochain":
        out = cls()
        for cell, c in zip(basis, np.asarray(vec).reshape(-1)):
            out._add_term(cell.key(), int(c))
        if out.degree is None and basis:
            out.degree = basis[0].dim
        return out

    def render(self, m: int) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key, coeff in sorted(self.terms.items()):
            body = Cell(*key).render(m)
            if coeff == 1:
                term = body
            elif coeff == -1:
                term = "-" + body
            else:
                term = f"{coeff}*{body}"
            parts.append(("+" + term) if parts and not term.startswith("-") else term)
        return "".join(parts)


def coboundary_of(c: CellCochain, K: SimplicialComplex) -> CellCochain:
    out = CellCochain(degree=None if c.degree is None else c.degree + 1)
    for key, coeff in c.terms.items():
        for key2, sign in _cell_coboundary_terms(K, Cell(*key)):
            out._add_term(key2, sign * coeff)
    return out


# -- cup products ---------------------------------------------------------------

# front/back-face cup table on one interval factor; missing pairs vanish
_INTERVAL_CUP = {
    (ZERO, ZERO): ZERO,
    (ONE, ONE): ONE,
    (ZERO, SEG): SEG,
    (SEG, ONE): SEG,
}


def interval_cup(a: dict[str, int], b: dict[str, int]) -> dict[str, int]:
    """Bilinear cup product of cochains on one interval, basis {0*, 1*, 01*}."""
    out: dict[str, int] = {}
    for la, ca in a.items():
        for lb, cb in b.items():
            lc = _INTERVAL_CUP.get((la, lb))
            if lc is None:
                continue
            new = out.get(lc, 0) + ca * cb
            if new:
                out[lc] = new
            else:
                del out[lc]
    return out


def epsilon(degrees_a, degrees_b) -> int:
    """Parity of the transposition count when interleaving two degree words:
    sum over i of degrees_b[i] * (degrees_a[j] for j > i)."""
    if len(degrees_a) != len(degrees_b):
        raise ValueError(
            f"degree words differ in length: {len(degrees_a)} vs {len(degrees_b)}"
        )
    total = 0
    suffix = 0
    for da, db in zip(reversed(degrees_a), reversed(degrees_b)):
        total += db * suffix
        suffix += da
    return total & 1


def _epsilon_masks(sigma_a: int, sigma_b: int) -> int:
    total = 0
    for i in iter_bits(sigma_b):
        total += popcount(sigma_a >> (i + 1))
    return total & 1


def cell_cup(
    a: Cell, b: Cell, m: int, K: SimplicialComplex | None = None
) -> tuple[Cell, int] | None:
    """Cup product of two dual cells: None, or (cell, ±1)."""
    za = full_mask(m) & ~(a.sigma | a.ones)
    zb = full_mask(m) & ~(b.sigma | b.ones)
    bad = (za & b.ones) | (a.ones & (zb | b.sigma)) | (a.sigma & (zb | b.sigma))
    if bad:
        return None
    sigma = a.sigma | b.sigma
    if K is not None and not K.is_simplex(sigma):
        return None
    sign = -1 if _epsilon_masks(a.sigma, b.sigma) else 1
    return Cell(sigma, a.ones & b.ones), sign


def oracle_cup(a: CellCochain, b: CellCochain, K: SimplicialComplex) -> CellCochain:
    """Bilinear cup product of cellular cochains on the subcomplex for K."""
    deg = None
    if a.degree is not None and b.degree is not None:
        deg = a.degree + b.degree
    out = CellCochain(degree=deg)
    m = K.m
    for ka, ca in a.terms.items():
        cell_a = Cell(*ka)
        for kb, cb in b.terms.items():
            hit = cell_cup(cell_a, Cell(*kb), m, K)
            if hit is None:
                continue
            cell, sign = hit
            out._add_term(cell.key(), sign * ca * cb)
    return out


def iter_cup_factorizations(cell: Cell, p: int):
    """All (a, b, sign) with a of dimension p and a* cup b* = ±cell*.

    Per segment letter of `cell` either a takes the segment (b shows 1) or b
    does (a shows 0); 0/1 letters are shared.  Both factors lie over K
    whenever cell does, by downward closure.
    """
    for sub in iter_subsets(cell.sigma):
        if popcount(sub) != p:
            continue
        rest = cell.sigma & ~sub
        a = Cell(sub, cell.ones)
        b = Cell(rest, cell.ones | sub)
        sign = -1 if _epsilon_masks(sub, rest) else 1
        yield a, b, sign


# -- transport between the monomial and cellular bases --------------------------


def theta_transport(c: Cochain, K: SimplicialComplex) -> CellCochain:
    """Basis change u -> 01*, t -> 1*, free index -> 0* + 1*, term by term."""
    out = CellCochain(degree=c.degree)
    ambient = full_mask(K.m)
    for (sigma, tau), coeff in c.terms.items():
        if not K.is_simplex(sigma):
            continue
        free = ambient & ~(sigma | tau)
        for extra in iter_subsets(free):
            out._add_term((sigma, tau | extra), coeff)
    return out


def theta_inverse(c: CellCochain, m: int) -> Cochain:
    """Inverse basis change: 01* -> u, 1* -> t, 0* -> (0*+1*) - 1* term-wise."""
    out = Cochain(degree=c.degree)
    ambient = full_mask(m)
    for (sigma, ones), coeff in c.terms.items():
        zeros = ambient & ~(sigma | ones)
        for sub in iter_subsets(zeros):
            sign = -1 if popcount(sub) & 1 else 1
            out._add_term(sigma, ones | sub, sign * coeff)
    return out


# -- cohomology of the cellular complex ------------------------------------------


class CellularContext:
    """Cached cellular complex of one K: cells, matrices, cohomology groups."""

    def __init__(self, K: SimplicialComplex, cell_cap: int = DEFAULT_CELL_CAP):
        self.K = K
        self.grades = enumerate_cells(K, cell_cap=cell_cap)
        self.complex = cellular_coboundary(K, cell_cap=cell_cap)

    def cells(self, p: int) -> list[Cell]:
        if 0 <= p < len(self.grades):
            return self.grades[p]
        return []

    def cohomology(self, p: int) -> CohomologyGroup:
        return self.complex.cohomology(p)

    def group_representatives(self, p: int) -> list[CellCochain]:
        basis = self.cells(p)
        return [
            CellCochain.from_coeff_vector(basis, rep)
            for rep in self.cohomology(p).representatives
        ]

    def max_degree(self) -> int:
        return len(self.grades) - 1

    def vector(self, c: CellCochain, p: int) -> np.ndarray:
        return c.to_coeff_vector(self.cells(p))


def oracle_cohomology(
    K: SimplicialComplex, p: int, cell_cap: int = DEFAULT_CELL_CAP
) -> CohomologyGroup:
    """Integer cohomology of the cube subcomplex in degree p, with dual-cell
    representatives."""
    return CellularContext(K, cell_cap=cell_cap).cohomology(p)

"""Monomial differential graded algebra on u_i (degree 1) and t_i (degree 0).

Square-free monomials u_sigma t_tau with disjoint index masks form a basis.
Multiplication follows

    u_i t_i = u_i,  t_i u_i = 0,  t_i t_i = t_i,  u_i u_i = 0,
    u_i u_j = -u_j u_i,  t_i t_j = t_j t_i,  u_i t_j = t_j u_i  (i != j)

and the differential is generated by d t_i = u_i, d u_i = 0.  Canonical form
is u-factors then t-factors, each block in increasing index order; the
coefficient absorbs all reordering signs.  Passing a simplicial complex K
reduces modulo its face ideal: monomials with sigma not a simplex become zero.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .bitsets import format_mask, iter_bits, mask_of, popcount
from .complexes import SimplicialComplex


@dataclass(frozen=True)
class Monomial:
    """Signed square-free monomial u_sigma t_tau; sigma and tau are disjoint masks."""

    sigma: int
    tau: int
    coeff: int = 1

    @property
    def degree(self) -> int:
        return popcount(self.sigma)

    @property
    def omega(self) -> int:
        """Support mask sigma | tau; the multigrading component the monomial lives in."""
        return self.sigma | self.tau

    def key(self) -> tuple[int, int]:
        return (self.sigma, self.tau)

    def __str__(self) -> str:
        return render_term(self.sigma, self.tau, self.coeff)


def normalize(
    sigma: int, tau: int, coeff: int = 1, K: SimplicialComplex | None = None
) -> Monomial | None:
    """Canonical form of a product of u's over sigma and t's over tau.

    Overlaps are resolved by u_i t_i = u_i (tau loses the shared indices).
    Returns None (zero) when coeff == 0 or sigma is not a simplex of K.
    """
    if coeff == 0:
        return None
    tau &= ~sigma
    if K is not None and not K.is_simplex(sigma):
        return None
    return Monomial(sigma, tau, coeff)


def mul(a: Monomial, b: Monomial, K: SimplicialComplex | None = None) -> Monomial | None:
    """Product of monomials in canonical form, or None when it vanishes.

    Zero cases: t_i u_i = 0 (a.tau meets b.sigma), u_i u_i = 0 (sigma overlap),
    and sigma not in K when K is given.  The Koszul sign counts the
    transpositions needed to merge the two u-blocks into increasing order.
    """
    if a.tau & b.sigma or a.sigma & b.sigma:
        return None
    sigma = a.sigma | b.sigma
    if K is not None and not K.is_simplex(sigma):
        return None
    swaps = 0
    for i in iter_bits(b.sigma):
        swaps += popcount(a.sigma >> (i + 1))
    coeff = a.coeff * b.coeff
    if swaps & 1:
        coeff = -coeff
    tau = (a.tau | b.tau) & ~sigma
    return Monomial(sigma, tau, coeff)


def differential(a: Monomial, K: SimplicialComplex | None = None) -> "Cochain":
    """d(u_sigma t_tau) = sum over i in tau of (-1)^{#{j in sigma : j < i}}
    u_{sigma+i} t_{tau-i}, dropping terms whose sigma+i is not in K."""
    out = Cochain(degree=a.degree + 1)
    for i in iter_bits(a.tau):
        sigma = a.sigma | (1 << i)
        if K is not None and not K.is_simplex(sigma):
            continue
        sign = -1 if popcount(a.sigma & ((1 << i) - 1)) & 1 else 1
        out._add_term(sigma, a.tau & ~(1 << i), sign * a.coeff)
    return out


class Cochain:
    """Finite integer combination of monomials, homogeneous in degree.

    The zero cochain may carry degree=None.  Instances are treated as
    immutable by callers; the _add_term helper is for construction only.
    """

    __slots__ = ("terms", "degree")

    def __init__(self, terms=None, degree: int | None = None):
        self.terms: dict[tuple[int, int], int] = {}
        self.degree = degree
        if terms:
            for (sigma, tau), coeff in dict(terms).items():
                self._add_term(sigma, tau, coeff)

    @classmethod
    def from_monomials(cls, monomials, degree: int | None = None) -> "Cochain":
        out = cls(degree=degree)
        for mon in monomials:
            if mon is None:
                continue
            out._check_degree(mon.degree)
            out._add_term(mon.sigma, mon.tau, mon.coeff)
        return out

    def _check_degree(self, degree: int) -> None:
        if self.degree is None:
            self.degree = degree
        elif self.degree != degree:
            raise ValueError(
                f"mixed degrees in cochain: {self.degree} and {degree}"
            )

    def _add_term(self, sigma: int, tau: int, coeff: int) -> None:
        if coeff == 0:
            return
        self._check_degree(popcount(sigma))
        key = (sigma, tau)
        new = self.terms.get(key, 0) + coeff
        if new:
            self.terms[key] = new
        else:
            del self.terms[key]

    def is_zero(self) -> bool:
        return not self.terms

    def monomials(self) -> list[Monomial]:
        return [
            Monomial(s, t, c) for (s, t), c in sorted(self.terms.items())
        ]

    def omega(self) -> int | None:
        """Common support mask when the cochain is omega-homogeneous, else None."""
        masks = {s | t for (s, t) in self.terms}
        if len(masks) == 1:
            return masks.pop()
        return None

    def __add__(self, other: "Cochain") -> "Cochain":
        out = Cochain(self.terms, degree=self.degree)
        for (s, t), c in other.terms.items():
            out._add_term(s, t, c)
        if out.is_zero() and self.degree is None:
            out.degree = other.degree
        return out

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + other.scale(-1)

    def scale(self, c: int) -> "Cochain":
        if c == 0:
            return Cochain(degree=self.degree)
        return Cochain(
            {k: v * c for k, v in self.terms.items()}, degree=self.degree
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        raise TypeError("Cochain is unhashable")

    def mul(self, other: "Cochain", K: SimplicialComplex | None = None) -> "Cochain":
        deg = None
        if self.degree is not None and other.degree is not None:
            deg = self.degree + other.degree
        out = Cochain(degree=deg)
        for (s1, t1), c1 in self.terms.items():
            a = Monomial(s1, t1, c1)
            for (s2, t2), c2 in other.terms.items():
                p = mul(a, Monomial(s2, t2, c2), K)
                if p is not None:
                    out._add_term(p.sigma, p.tau, p.coeff)
        return out

    def differential(self, K: SimplicialComplex | None = None) -> "Cochain":
        deg = None if self.degree is None else self.degree + 1
        out = Cochain(degree=deg)
        for (s, t), c in self.terms.items():
            for (s2, t2), c2 in differential(Monomial(s, t, c), K).terms.items():
                out._add_term(s2, t2, c2)
        return out

    def to_coeff_vector(self, basis: list[Monomial]) -> np.ndarray:
        """Coefficient vector over a basis of coefficient-1 monomials."""
        index = {mon.key(): i for i, mon in enumerate(basis)}
        if len(index) != len(basis):
            raise ValueError("basis has repeated monomials")
        vec = np.zeros(len(basis), dtype=object)
        for key, coeff in self.terms.items():
            if key not in index:
                raise ValueError(f"term {render_term(*key, 1)} outside basis")
            vec[index[key]] = coeff
        return vec

    @classmethod
    def from_coeff_vector(cls, basis: list[Monomial], vec) -> "Cochain":
        out = cls()
        for mon, c in zip(basis, np.asarray(vec).reshape(-1)):
            out._add_term(mon.sigma, mon.tau, int(c) * mon.coeff)
        if out.degree is None and basis:
            out.degree = basis[0].degree
        return out

    def __str__(self) -> str:
        return render_cochain(self)

    __repr__ = __str__


def omega_basis(K: SimplicialComplex, omega: int) -> list[Monomial]:
    """All u_sigma t_tau with sigma in K, sigma | tau = omega, ordered by
    (degree, sigma mask).  The empty monomial appears for omega = 0."""
    out = [
        Monomial(s, omega & ~s, 1)
        for s in K.simplices
        if s & ~omega == 0
    ]
    out.sort(key=lambda mon: (mon.degree, mon.sigma))
    return out


def coboundary_matrix(K: SimplicialComplex, omega: int, p: int) -> np.ndarray:
    """Matrix of d from the degree-p to the degree-(p+1) part of the
    omega-component, columns indexed by the source basis."""
    basis = omega_basis(K, omega)
    src = [mon for mon in basis if mon.degree == p]
    dst = [mon for mon in basis if mon.degree == p + 1]
    index = {mon.key(): i for i, mon in enumerate(dst)}
    mat = np.zeros((len(dst), len(src)), dtype=np.int64)
    for j, mon in enumerate(src):
        for key, coeff in differential(mon, K).terms.items():
            mat[index[key], j] = coeff
    return mat


# -- text rendering / parsing --------------------------------------------------


def render_term(sigma: int, tau: int, coeff: int) -> str:
    body = ""
    if sigma:
        body += "u" + format_mask(sigma)
    if tau:
        body += "t" + format_mask(tau)
    if not body:
        return str(coeff)
    if coeff == 1:
        return body
    if coeff == -1:
        return "-" + body
    return f"{coeff}{body}"


def render_cochain(c: Cochain) -> str:
    if c.is_zero():
        return "0"
    parts = []
    for (s, t), coeff in sorted(c.terms.items()):
        term = render_term(s, t, coeff)
        if parts and not term.startswith("-"):
            parts.append("+" + term)
        else:
            parts.append(term)
    return "".join(parts)


_TERM_RE = re.compile(
    r"(?P<sign>[+-]?)(?P<num>\d+)?"
    r"(?:u\{(?P<u>[\d,]*)\})?"
    r"(?:t\{(?P<t>[\d,]*)\})?"
)


def parse_term(text: str) -> Monomial:
    """Parse 'u{1,2}t{3,4,5}' with optional sign and coefficient, or '1'."""
    text = text.strip().replace(" ", "")
    m = _TERM_RE.fullmatch(text)
    if not m or (m.group("num") is None and m.group("u") is None and m.group("t") is None):
        raise ValueError(f"cannot parse monomial {text!r}")
    coeff = int(m.group("num")) if m.group("num") else 1
    if m.group("sign") == "-":
        coeff = -coeff
    sigma = mask_of(int(v) for v in m.group("u").split(",")) if m.group("u") else 0
    tau = mask_of(int(v) for v in m.group("t").split(",")) if m.group("t") else 0
    mon = normalize(sigma, tau, coeff)
    if mon is None:
        raise ValueError(f"cannot parse monomial {text!r}")
    return mon


_SPLIT_RE = re.compile(r"(?=[+-])")


def parse_cochain(text: str) -> Cochain:
    """Parse a sum of monomial terms, e.g. 'u{1}t{3,4}+u{3}t{1,4}' or '0'."""
    text = text.strip().replace(" ", "")
    if text in ("", "0"):
        return Cochain()
    out = Cochain()
    for chunk in _SPLIT_RE.split(text):
        if not chunk:
            continue
        mon = parse_term(chunk)
        out._check_degree(mon.degree)
        out._add_term(mon.sigma, mon.tau, mon.coeff)
    return out

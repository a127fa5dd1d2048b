"""Fast route: support-mask decomposition of the monomial algebra.

Each component with support omega is carried by the degree-shifting bijection
u_sigma t_tau -> sigma* onto reduced simplicial cochains of the full
subcomplex K_omega (empty simplex in degree -1).  With the coboundary

    delta(sigma*) = sum over v with sigma+v in K_omega of
                    (-1)^{#{j in sigma : j < v}} (sigma+v)*

the bijection commutes with the differentials on the nose, so cohomology and
representatives transfer coordinate-for-coordinate.  Degree p of the cube
subcomplex collects reduced degree p-1 over all omega.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .algebra import Cochain, Monomial, omega_basis, render_cochain
from .bitsets import popcount, vertices_of
from .complexes import DEFAULT_M_CAP, SimplicialComplex
from .errors import SizeLimitError
from .intlinalg import CohomologyGroup, IntegerCochainComplex


def lambda_transport(mon: Monomial, omega: int) -> tuple[int, int]:
    """The component bijection on basis elements: u_sigma t_tau -> sigma*.

    Returns (sigma mask, coefficient); raises ValueError unless the monomial's
    support is exactly omega.
    """
    if mon.sigma & mon.tau:
        raise ValueError(f"monomial {mon} is not in normal form")
    if mon.omega != omega:
        raise ValueError(
            f"monomial {mon} has support {vertices_of(mon.omega)}, "
            f"not {vertices_of(omega)}"
        )
    return mon.sigma, mon.coeff


def reduced_cochain_complex(K: SimplicialComplex) -> IntegerCochainComplex:
    """Reduced simplicial cochain complex of K, empty simplex at degree -1."""
    by_degree: dict[int, list[int]] = {}
    for s in K.simplices:
        by_degree.setdefault(popcount(s) - 1, []).append(s)
    for basis in by_degree.values():
        basis.sort()
    coboundaries = {}
    for r, src in sorted(by_degree.items()):
        dst = by_degree.get(r + 1)
        if not dst:
            continue
        index = {s: i for i, s in enumerate(dst)}
        mat = np.zeros((len(dst), len(src)), dtype=np.int64)
        for j, s in enumerate(src):
            free = K.vertex_mask & ~s
            while free:
                low = free & -free
                free ^= low
                t = s | low
                if t in index:
                    sign = -1 if popcount(s & (low - 1)) & 1 else 1
                    mat[index[t], j] = sign
        coboundaries[r] = mat
    return IntegerCochainComplex(by_degree, coboundaries)


def reduced_cohomology(K: SimplicialComplex, omega: int, p: int) -> CohomologyGroup:
    """Reduced cohomology of the full subcomplex K_omega in reduced degree p-1."""
    return reduced_cochain_complex(K.full_subcomplex(omega)).cohomology(p - 1)


@dataclass
class TableEntry:
    """One nonzero bidegree (omega, p) with its group and monomial generators."""

    omega: int
    p: int
    group: CohomologyGroup
    basis: list[Monomial]
    generators: list[Cochain] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "omega": vertices_of(self.omega),
            "p": self.p,
            "rank": self.group.free_rank,
            "torsion": list(self.group.torsion),
            "generators": [render_cochain(g) for g in self.generators],
        }


@dataclass
class HochsterTable:
    """Nonzero cohomology of all full subcomplexes, keyed by (omega, p)."""

    m: int
    entries: dict[tuple[int, int], TableEntry]

    def sorted_entries(self) -> list[TableEntry]:
        return [
            self.entries[k]
            for k in sorted(self.entries, key=lambda k: (popcount(k[0]), k[0], k[1]))
        ]

    def to_json_list(self) -> list[dict]:
        return [e.to_json_dict() for e in self.sorted_entries()]

    def to_json(self) -> str:
        return json.dumps(self.to_json_list())


def _component_entries(K: SimplicialComplex, omega: int) -> list[TableEntry]:
    """Nonzero reduced cohomology of K_omega, pulled back to monomial cochains."""
    sub = K.full_subcomplex(omega)
    complex_ = reduced_cochain_complex(sub)
    basis_all = omega_basis(K, omega)
    out = []
    for r in complex_.degrees():
        group = complex_.cohomology(r)
        if group.is_trivial():
            continue
        p = r + 1
        basis = [mon for mon in basis_all if mon.degree == p]
        gens = [Cochain.from_coeff_vector(basis, rep) for rep in group.representatives]
        out.append(TableEntry(omega=omega, p=p, group=group, basis=basis, generators=gens))
    return out


def _sweep_chunk(args) -> list[TableEntry]:
    K, omegas = args
    out = []
    for omega in omegas:
        out.extend(_component_entries(K, omega))
    return out


def hochster_table(
    K: SimplicialComplex, workers: int = 1, m_cap: int = DEFAULT_M_CAP
) -> HochsterTable:
    """Sweep all 2^m support masks and collect the nonzero groups."""
    if K.m > m_cap:
        raise SizeLimitError(f"vertex count {K.m} exceeds cap {m_cap}")
    omegas = sorted(range(1 << K.m), key=lambda w: (popcount(w), w))
    entries: dict[tuple[int, int], TableEntry] = {}
    if workers > 1 and len(omegas) > 8:
        chunk = max(1, len(omegas) // (4 * workers))
        chunks = [omegas[i : i + chunk] for i in range(0, len(omegas), chunk)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for result in pool.map(_sweep_chunk, [(K, c) for c in chunks]):
                for entry in result:
                    entries[(entry.omega, entry.p)] = entry
    else:
        for omega in omegas:
            for entry in _component_entries(K, omega):
                entries[(entry.omega, entry.p)] = entry
    return HochsterTable(m=K.m, entries=entries)


def merge_invariant_factors(factor_lists) -> list[int]:
    """Canonical invariant factors of a direct sum of cyclic torsion groups."""
    prime_exps: dict[int, list[int]] = {}
    for factors in factor_lists:
        for f in factors:
            for prime, e in _factorize(f).items():
                prime_exps.setdefault(prime, []).append(e)
    if not prime_exps:
        return []
    depth = max(len(v) for v in prime_exps.values())
    out = []
    for k in range(depth):
        d = 1
        for prime, exps in prime_exps.items():
            exps_sorted = sorted(exps, reverse=True)
            if k < len(exps_sorted):
                d *= prime ** exps_sorted[k]
        out.append(d)
    out = [d for d in out if d > 1]
    out.reverse()
    return out


def _factorize(n: int) -> dict[int, int]:
    if n < 2:
        raise ValueError(f"torsion orders are >= 2, got {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def betti_and_torsion(table: HochsterTable) -> dict[int, tuple[int, list[int]]]:
    """Degreewise direct sum over the table: (free rank, invariant factors)."""
    ranks: dict[int, int] = {}
    torsions: dict[int, list[list[int]]] = {}
    for entry in table.sorted_entries():
        ranks[entry.p] = ranks.get(entry.p, 0) + entry.group.free_rank
        if entry.group.torsion:
            torsions.setdefault(entry.p, []).append(list(entry.group.torsion))
    out = {}
    for p in sorted(set(ranks) | set(torsions)):
        out[p] = (ranks.get(p, 0), merge_invariant_factors(torsions.get(p, [])))
    return out


def betti_numbers(K: SimplicialComplex, workers: int = 1, m_cap: int = DEFAULT_M_CAP) -> list[int]:
    """Free ranks of the cube-subcomplex cohomology, degrees 0..max."""
    bt = betti_and_torsion(hochster_table(K, workers=workers, m_cap=m_cap))
    top = max(bt) if bt else 0
    return [bt.get(p, (0, []))[0] for p in range(top + 1)]

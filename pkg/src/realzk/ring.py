"""Cohomology ring assembly: generators, pairwise cup products, comparisons.

Two interchangeable routes produce a RingPresentation:

  * "hochster": generators are monomial cochains from the support-mask table;
    products are monomial multiplications expressed per component.
  * "oracle": generators are dual-cell cochains of the cellular complex;
    products use the per-factor interval cup product with the global sign.

compare_rings matches the two through the monomial-to-cellular basis change
and checks ranks, torsion and structure constants.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

import numpy as np

from .algebra import Cochain, coboundary_matrix, omega_basis, render_cochain
from .bitsets import full_mask, popcount, vertices_of
from .cellular import (
    DEFAULT_CELL_CAP,
    CellCochain,
    CellularContext,
    coboundary_of,
    iter_cup_factorizations,
    theta_inverse,
    theta_transport,
)
from .complexes import DEFAULT_M_CAP, SimplicialComplex
from .errors import NotInSpanError
from .hochster import (
    HochsterTable,
    TableEntry,
    hochster_table,
    merge_invariant_factors,
)
from .intlinalg import in_column_span, max_abs

HOCHSTER = "hochster"
ORACLE = "oracle"
_INT64_SAFE = 1 << 55


@dataclass
class Generator:
    index: int
    name: str
    degree: int
    order: int  # 0 for a free class, the torsion order otherwise
    omega: int | None = None  # support mask; None on the oracle route
    rep_algebra: Cochain | None = None
    rep_cell: CellCochain | None = None

    def rep_text(self, m: int) -> str:
        if self.rep_algebra is not None:
            return render_cochain(self.rep_algebra)
        return self.rep_cell.render(m)


@dataclass
class RingPresentation:
    K: SimplicialComplex
    route: str
    generators: list[Generator]
    degrees: dict[int, list[int]]  # degree -> generator indices, in slot order
    table: dict[tuple[int, int], tuple[int, ...]] = field(default_factory=dict)
    _components: dict[tuple[int, int], TableEntry] | None = field(
        default=None, repr=False
    )
    _ctx: CellularContext | None = field(default=None, repr=False)

    # -- structure helpers ---------------------------------------------------

    def gens_of_degree(self, d: int) -> list[Generator]:
        return [self.generators[i] for i in self.degrees.get(d, [])]

    def orders_of_degree(self, d: int) -> list[int]:
        return [g.order for g in self.gens_of_degree(d)]

    def generator_by_name(self, name: str) -> Generator:
        for g in self.generators:
            if g.name == name:
                return g
        raise KeyError(name)

    def max_degree(self) -> int:
        return max(self.degrees) if self.degrees else 0

    # -- expressing classes in generator coordinates --------------------------

    def express(self, cochain, degree: int, strict: bool = False) -> list[int]:
        """Coordinates of a cocycle's class over the degree-`degree` generators."""
        if self.route == HOCHSTER:
            return self._express_hochster(cochain, degree, strict)
        return self._express_oracle(cochain, degree)

    def _express_hochster(self, cochain: Cochain, degree: int, strict: bool) -> list[int]:
        idxs = self.degrees.get(degree, [])
        coords = [0] * len(idxs)
        if cochain.is_zero():
            return coords
        slot_of = {i: k for k, i in enumerate(idxs)}
        by_omega: dict[int, Cochain] = {}
        for (s, t), c in cochain.terms.items():
            by_omega.setdefault(s | t, Cochain(degree=cochain.degree))._add_term(s, t, c)
        for omega, sub in sorted(by_omega.items()):
            entry = self._components.get((omega, degree))
            if entry is None:
                if strict:
                    vec = sub.to_coeff_vector(
                        [m for m in omega_basis(self.K, omega) if m.degree == degree]
                    )
                    dmat = coboundary_matrix(self.K, omega, degree - 1)
                    if not in_column_span(dmat, vec):
                        raise NotInSpanError(
                            f"component {vertices_of(omega)} degree {degree}: "
                            "cocycle is not a coboundary in a trivial group"
                        )
                continue
            vec = sub.to_coeff_vector(entry.basis)
            local = entry.group.coordinates(vec, check=True)
            for k, gen_idx in enumerate(self._component_slots[(omega, degree)]):
                coords[slot_of[gen_idx]] = local[k]
        return coords

    def _express_oracle(self, cochain: CellCochain, degree: int) -> list[int]:
        idxs = self.degrees.get(degree, [])
        if not idxs:
            return []
        group = self._ctx.cohomology(degree)
        vec = cochain.to_coeff_vector(self._ctx.cells(degree))
        return group.coordinates(vec, check=True)

    def multiply(self, x, y):
        """Cochain-level product along this presentation's route."""
        if self.route == HOCHSTER:
            return x.mul(y, self.K)
        from .cellular import oracle_cup

        return oracle_cup(x, y, self.K)

    def product_coords(self, x, y, strict: bool = False) -> list[int]:
        dx = x.degree or 0
        dy = y.degree or 0
        return self.express(self.multiply(x, y), dx + dy, strict=strict)

    def class_cochain(self, degree: int, coords):
        """A cocycle representing sum(coords[k] * generator_k) in this degree."""
        gens = self.gens_of_degree(degree)
        if self.route == HOCHSTER:
            out = Cochain(degree=degree)
            for g, c in zip(gens, coords):
                for (s, t), v in g.rep_algebra.terms.items():
                    out._add_term(s, t, v * int(c))
            return out
        out = CellCochain(degree=degree)
        for g, c in zip(gens, coords):
            for key, v in g.rep_cell.terms.items():
                out._add_term(key, v * int(c))
        return out

    def rep_of(self, gen: Generator):
        return gen.rep_algebra if self.route == HOCHSTER else gen.rep_cell

    # -- perturbation (well-definedness machinery) ----------------------------

    def perturbed_table(
        self, perturbations: dict[int, object], validate: bool = True
    ) -> dict[tuple[int, int], tuple[int, ...]]:
        """Product table rebuilt after adding `perturbations[i]` to generator i.

        Each perturbation must be a coboundary; with validate=True this is
        checked and a ValueError raised otherwise.
        """
        reps = {}
        for g in self.generators:
            rep = self.rep_of(g)
            pert = perturbations.get(g.index)
            if pert is not None:
                if not pert.is_zero() and pert.degree != g.degree:
                    raise ValueError("perturbation degree mismatch")
                if validate and not self._is_coboundary(pert, g.degree):
                    raise ValueError(
                        f"perturbation of generator {g.name} is not a coboundary"
                    )
                rep = rep + pert
            reps[g.index] = rep
        return self._build_table(reps)

    def _is_coboundary(self, cochain, degree: int) -> bool:
        if cochain.is_zero():
            return True
        if self.route == ORACLE:
            vec = cochain.to_coeff_vector(self._ctx.cells(degree))
            return in_column_span(self._ctx.complex.coboundary(degree - 1), vec)
        by_omega: dict[int, Cochain] = {}
        for (s, t), c in cochain.terms.items():
            by_omega.setdefault(s | t, Cochain(degree=degree))._add_term(s, t, c)
        for omega, sub in by_omega.items():
            basis = [m for m in omega_basis(self.K, omega) if m.degree == degree]
            vec = sub.to_coeff_vector(basis)
            if not in_column_span(coboundary_matrix(self.K, omega, degree - 1), vec):
                return False
        return True

    # -- product table ---------------------------------------------------------

    def _build_table(self, reps: dict[int, object]) -> dict[tuple[int, int], tuple[int, ...]]:
        if self.route == ORACLE:
            return _oracle_table(self, reps)
        table = {}
        for gi in self.generators:
            for gj in self.generators:
                prod = reps[gi.index].mul(reps[gj.index], self.K)
                coords = self.express(prod, gi.degree + gj.degree)
                table[(gi.index, gj.index)] = tuple(coords)
        return table

    def compute_table(self) -> None:
        self.table = self._build_table({g.index: self.rep_of(g) for g in self.generators})

    # -- serialization ----------------------------------------------------------

    def to_json_dict(self) -> dict:
        gens = [
            {
                "name": g.name,
                "degree": g.degree,
                "omega": vertices_of(g.omega) if g.omega is not None else None,
                "order": g.order,
                "representative": g.rep_text(self.K.m),
            }
            for g in self.generators
        ]
        products = [
            [self.generators[i].name, self.generators[j].name, [int(c) for c in coords]]
            for (i, j), coords in sorted(self.table.items())
        ]
        return {
            "route": self.route,
            "m": self.K.m,
            "generators": gens,
            "products": products,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())


# -- construction ----------------------------------------------------------------


def _assign_names(generators: list[Generator], m: int, route: str) -> None:
    counters: dict[str, int] = {}
    gamma_idxs = []
    for g in generators:
        cls = None
        if route == HOCHSTER:
            if g.degree == 0 and g.omega == 0:
                g.name = "1"
                continue
            if g.degree == 1 and popcount(g.omega) == 2:
                cls = "alpha"
            elif g.degree == 1 and popcount(g.omega) == 3:
                cls = "beta"
            elif g.degree == 2 and g.omega == full_mask(m):
                cls = "gamma"
                gamma_idxs.append(g.index)
        if cls is None:
            cls = f"g{g.degree}_"
        counters[cls] = counters.get(cls, 0) + 1
        g.name = f"{cls}{counters[cls]}"
    if len(gamma_idxs) == 1:
        generators[gamma_idxs[0]].name = "gamma"


def build_ring(
    K: SimplicialComplex,
    route: str = HOCHSTER,
    workers: int = 1,
    m_cap: int = DEFAULT_M_CAP,
    cell_cap: int = DEFAULT_CELL_CAP,
    table: HochsterTable | None = None,
) -> RingPresentation:
    """Generators and full pairwise product table along the chosen route."""
    if route == HOCHSTER:
        pres = _build_hochster(K, workers=workers, m_cap=m_cap, table=table)
    elif route == ORACLE:
        pres = _build_oracle(K, cell_cap=cell_cap)
    else:
        raise ValueError(f"unknown route {route!r}")
    pres.compute_table()
    return pres


def _build_hochster(
    K: SimplicialComplex, workers: int, m_cap: int, table: HochsterTable | None
) -> RingPresentation:
    if table is None:
        table = hochster_table(K, workers=workers, m_cap=m_cap)
    entries = sorted(
        table.entries.values(), key=lambda e: (e.p, popcount(e.omega), e.omega)
    )
    generators: list[Generator] = []
    degrees: dict[int, list[int]] = {}
    component_slots: dict[tuple[int, int], list[int]] = {}
    for entry in entries:
        slots = []
        for k in range(entry.group.n_generators):
            idx = len(generators)
            generators.append(
                Generator(
                    index=idx,
                    name="",
                    degree=entry.p,
                    order=entry.group.orders[k],
                    omega=entry.omega,
                    rep_algebra=entry.generators[k],
                )
            )
            degrees.setdefault(entry.p, []).append(idx)
            slots.append(idx)
        component_slots[(entry.omega, entry.p)] = slots
    _assign_names(generators, K.m, HOCHSTER)
    pres = RingPresentation(
        K=K,
        route=HOCHSTER,
        generators=generators,
        degrees=degrees,
        _components=dict(table.entries),
    )
    pres._component_slots = component_slots
    return pres


def _build_oracle(K: SimplicialComplex, cell_cap: int) -> RingPresentation:
    ctx = CellularContext(K, cell_cap=cell_cap)
    generators: list[Generator] = []
    degrees: dict[int, list[int]] = {}
    for d in range(ctx.max_degree() + 1):
        group = ctx.cohomology(d)
        reps = ctx.group_representatives(d)
        for k in range(group.n_generators):
            idx = len(generators)
            generators.append(
                Generator(
                    index=idx,
                    name="",
                    degree=d,
                    order=group.orders[k],
                    rep_cell=reps[k],
                )
            )
            degrees.setdefault(d, []).append(idx)
    _assign_names(generators, K.m, ORACLE)
    return RingPresentation(
        K=K, route=ORACLE, generators=generators, degrees=degrees, _ctx=ctx
    )


def _oracle_table(
    pres: RingPresentation, reps: dict[int, CellCochain]
) -> dict[tuple[int, int], tuple[int, ...]]:
    """All pairwise products on the oracle route, batched per degree pair."""
    ctx = pres._ctx
    table: dict[tuple[int, int], tuple[int, ...]] = {}
    deg_list = sorted(pres.degrees)
    for p in deg_list:
        gens_p = pres.degrees[p]
        for q in deg_list:
            gens_q = pres.degrees[q]
            d = p + q
            n_d = len(ctx.cells(d))
            gens_d = pres.degrees.get(d, [])
            if n_d == 0:
                # no cells in the target dimension: every product is zero
                zero = tuple([0] * len(gens_d))
                for i in gens_p:
                    for j in gens_q:
                        table[(i, j)] = zero
                continue
            rp = _rep_matrix(ctx, reps, gens_p, p)
            rq = _rep_matrix(ctx, reps, gens_q, q)
            out = _cup_tensor(ctx, rp, rq, p, q)
            group = ctx.cohomology(d)
            flat = out.reshape(n_d, -1)
            coords_cols = group.coordinates_matrix(flat, check=True)
            g_q = len(gens_q)
            for a, i in enumerate(gens_p):
                for b, j in enumerate(gens_q):
                    table[(i, j)] = tuple(coords_cols[a * g_q + b])
    return table


def _rep_matrix(ctx: CellularContext, reps, gen_idxs, degree):
    cells = ctx.cells(degree)
    index = {cell.key(): i for i, cell in enumerate(cells)}
    mat = np.zeros((len(cells), len(gen_idxs)), dtype=object)
    for col, gi in enumerate(gen_idxs):
        for key, c in reps[gi].terms.items():
            mat[index[key], col] = c
    small = max_abs(mat) if mat.size else 0
    if small < _INT64_SAFE:
        mat = mat.astype(np.int64)
    return mat


def _cup_tensor(ctx: CellularContext, rp, rq, p: int, q: int):
    """out[c, i, j] = coefficient of target cell c in (gen_i cup gen_j)."""
    d = p + q
    cells_d = ctx.cells(d)
    index_p = {cell.key(): i for i, cell in enumerate(ctx.cells(p))}
    index_q = {cell.key(): i for i, cell in enumerate(ctx.cells(q))}
    g_p, g_q = rp.shape[1], rq.shape[1]
    bound = 0
    if rp.dtype != object and rq.dtype != object and cells_d:
        per_cell = max(len(list(iter_cup_factorizations(cells_d[0], p))), 1)
        bound = int(max_abs(rp)) * int(max_abs(rq)) * per_cell * 4
    dtype = np.int64 if (rp.dtype != object and rq.dtype != object and bound < _INT64_SAFE) else object
    out = np.zeros((len(cells_d), g_p, g_q), dtype=dtype)
    rp_rows_nonzero = [bool(np.any(rp[i] != 0)) for i in range(rp.shape[0])]
    rq_rows_nonzero = [bool(np.any(rq[i] != 0)) for i in range(rq.shape[0])]
    for c_idx, cell in enumerate(cells_d):
        for a, b, sign in iter_cup_factorizations(cell, p):
            ia = index_p.get(a.key())
            ib = index_q.get(b.key())
            if ia is None or ib is None:
                continue
            if not (rp_rows_nonzero[ia] and rq_rows_nonzero[ib]):
                continue
            if sign > 0:
                out[c_idx] += np.outer(rp[ia], rq[ib])
            else:
                out[c_idx] -= np.outer(rp[ia], rq[ib])
    return out


# -- representative independence ---------------------------------------------------


def representative_independence_check(
    pres: RingPresentation, trials: int, seed: int
) -> dict:
    """Perturb every representative by a random coboundary and re-derive the
    product table; the coordinates must never change."""
    rng = random.Random(seed)
    mismatched_trials = []
    for trial in range(trials):
        perturbations = {}
        for g in pres.generators:
            pert = _random_coboundary(pres, g, rng)
            if pert is not None:
                perturbations[g.index] = pert
        new_table = pres.perturbed_table(perturbations, validate=False)
        if new_table != pres.table:
            mismatched_trials.append(trial)
    return {
        "trials": trials,
        "mismatched_trials": mismatched_trials,
        "ok": not mismatched_trials,
    }


def _random_coboundary(pres: RingPresentation, g: Generator, rng: random.Random):
    d = g.degree
    if d == 0:
        return None
    if pres.route == HOCHSTER:
        basis = [m for m in omega_basis(pres.K, g.omega) if m.degree == d - 1]
        if not basis:
            return None
        low = Cochain(degree=d - 1)
        for mon in basis:
            c = rng.randint(-2, 2)
            if c:
                low._add_term(mon.sigma, mon.tau, c)
        return low.differential(pres.K)
    cells = pres._ctx.cells(d - 1)
    if not cells:
        return None
    low = CellCochain(degree=d - 1)
    for cell in rng.sample(cells, k=min(4, len(cells))):
        c = rng.randint(-2, 2)
        if c:
            low._add_term(cell.key(), c)
    return coboundary_of(low, pres.K)


# -- route comparison ----------------------------------------------------------------


@dataclass
class ComparisonReport:
    ok: bool
    additive: dict[int, dict]
    basis_match_failures: list[str]
    product_failures: list[str]

    def to_json_dict(self) -> dict:
        return {
            "match": self.ok,
            "additive": {str(d): info for d, info in sorted(self.additive.items())},
            "basis_match_failures": self.basis_match_failures,
            "product_failures": self.product_failures,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())


def _coords_agree(got, want, orders) -> bool:
    for g, w, o in zip(got, want, orders):
        diff = int(g) - int(w)
        if o:
            if diff % o:
                return False
        elif diff:
            return False
    return True


def compare_rings(a: RingPresentation, b: RingPresentation) -> ComparisonReport:
    """Match generators of the hochster presentation `a` into the oracle
    presentation `b` through the basis change, then compare everything."""
    if a.route != HOCHSTER or b.route != ORACLE:
        raise ValueError("compare_rings expects (hochster, oracle) presentations")
    additive = {}
    ok = True
    all_degrees = sorted(set(a.degrees) | set(b.degrees))
    for d in all_degrees:
        rank_a = sum(1 for g in a.gens_of_degree(d) if g.order == 0)
        rank_b = sum(1 for g in b.gens_of_degree(d) if g.order == 0)
        per_component: dict[tuple[int, int], list[int]] = {}
        for g in a.gens_of_degree(d):
            if g.order:
                per_component.setdefault((g.omega, d), []).append(g.order)
        tors_a = merge_invariant_factors(per_component.values())
        tors_b = merge_invariant_factors(
            [[g.order for g in b.gens_of_degree(d) if g.order]]
        )
        same = rank_a == rank_b and tors_a == tors_b
        additive[d] = {
            "rank": rank_a,
            "rank_oracle": rank_b,
            "torsion": tors_a,
            "torsion_oracle": tors_b,
            "equal": same,
        }
        ok = ok and same
    if not ok:
        return ComparisonReport(False, additive, ["additive mismatch"], [])

    # generator matching through the basis change, both directions
    basis_failures = []
    p_mats: dict[int, list[list[int]]] = {}
    q_mats: dict[int, list[list[int]]] = {}
    for d in all_degrees:
        p_cols = []
        for g in a.gens_of_degree(d):
            cell = theta_transport(g.rep_algebra, a.K)
            p_cols.append(b.express(cell, d))
        q_cols = []
        for g in b.gens_of_degree(d):
            alg = theta_inverse(g.rep_cell, a.K.m)
            q_cols.append(a.express(alg, d))
        p_mats[d] = p_cols  # column c = b-coordinates of a-generator c
        q_mats[d] = q_cols
        orders_a = a.orders_of_degree(d)
        orders_b = b.orders_of_degree(d)
        n_a, n_b = len(p_cols), len(q_cols)
        for i in range(n_a):  # Q P = id on a-coordinates
            got = [
                sum(q_cols[k][r] * p_cols[i][k] for k in range(n_b))
                for r in range(n_a)
            ]
            want = [1 if r == i else 0 for r in range(n_a)]
            if not _coords_agree(got, want, orders_a):
                basis_failures.append(f"deg {d}: QP != id at generator {i}")
        for j in range(n_b):  # P Q = id on b-coordinates
            got = [
                sum(p_cols[k][r] * q_cols[j][k] for k in range(n_a))
                for r in range(n_b)
            ]
            want = [1 if r == j else 0 for r in range(n_b)]
            if not _coords_agree(got, want, orders_b):
                basis_failures.append(f"deg {d}: PQ != id at generator {j}")
    if basis_failures:
        return ComparisonReport(False, additive, basis_failures, [])

    # structure constants through the matching
    product_failures = []
    for (i, j), coords_a in sorted(a.table.items()):
        gi, gj = a.generators[i], a.generators[j]
        d = gi.degree + gj.degree
        n_b_target = len(b.degrees.get(d, []))
        orders_b = b.orders_of_degree(d)
        # left side: transport a's answer
        p_target = p_mats.get(d, [])
        lhs = [0] * n_b_target
        for k, c in enumerate(coords_a):
            col = p_target[k]
            for r in range(n_b_target):
                lhs[r] += int(c) * col[r]
        # right side: multiply the transported generators inside b
        pi = p_mats[gi.degree][a.degrees[gi.degree].index(i)]
        pj = p_mats[gj.degree][a.degrees[gj.degree].index(j)]
        rhs = [0] * n_b_target
        for ki, bi in enumerate(b.degrees.get(gi.degree, [])):
            ci = int(pi[ki])
            if ci == 0:
                continue
            for kj, bj in enumerate(b.degrees.get(gj.degree, [])):
                cj = int(pj[kj])
                if cj == 0:
                    continue
                for r, c in enumerate(b.table[(bi, bj)]):
                    rhs[r] += ci * cj * int(c)
        if not _coords_agree(lhs, rhs, orders_b):
            product_failures.append(
                f"product {gi.name}*{gj.name} (deg {d}): {lhs} vs {rhs}"
            )
    ok = not product_failures
    return ComparisonReport(ok, additive, [], product_failures)

import itertools
import json
import random

import pytest

from realzk.algebra import Cochain, Monomial
from realzk.bitsets import mask_of, popcount, vertices_of
from realzk.complexes import from_facets, full_simplex, random_complex
from realzk.ring import (
    HOCHSTER,
    ORACLE,
    build_ring,
    compare_rings,
    representative_independence_check,
)

# the paper's pentagon multiplication table, written by support masks:
# alpha classes sit on the five non-edges, beta classes on the five broken
# vertex triples, and exactly these ten unordered pairs hit the top class
PENTAGON_NONZERO_PAIRS = [
    ((1, 3), (2, 4, 5)),
    ((1, 4), (2, 3, 5)),
    ((2, 4), (1, 3, 5)),
    ((2, 5), (1, 3, 4)),
    ((3, 5), (1, 2, 4)),
    ((1, 3, 4), (2, 4, 5)),
    ((2, 4, 5), (1, 3, 5)),
    ((1, 3, 5), (1, 2, 4)),
    ((1, 2, 4), (2, 3, 5)),
    ((2, 3, 5), (1, 3, 4)),
]


@pytest.fixture(scope="module")
def pentagon_ring(pentagon):
    return build_ring(pentagon, HOCHSTER)


@pytest.fixture(scope="module")
def pentagon_oracle_ring(pentagon):
    return build_ring(pentagon, ORACLE)


def test_pentagon_generator_inventory(pentagon_ring):
    names = [g.name for g in pentagon_ring.generators]
    assert names[0] == "1"
    assert [g.degree for g in pentagon_ring.generators] == [0] + [1] * 10 + [2]
    assert sum(n.startswith("alpha") for n in names) == 5
    assert sum(n.startswith("beta") for n in names) == 5
    assert names[-1] == "gamma"
    assert all(g.order == 0 for g in pentagon_ring.generators)


def test_pentagon_products_match_the_published_table(pentagon_ring):
    pres = pentagon_ring
    by_omega = {g.omega: g for g in pres.generators if g.degree == 1}
    want = {
        frozenset((mask_of(a), mask_of(b))) for a, b in PENTAGON_NONZERO_PAIRS
    }
    deg1 = [g for g in pres.generators if g.degree == 1]
    seen_nonzero = set()
    for gi in deg1:
        for gj in deg1:
            coords = pres.table[(gi.index, gj.index)]
            key = frozenset((gi.omega, gj.omega))
            if key in want:
                assert [abs(c) for c in coords] == [1], (gi.name, gj.name)
                seen_nonzero.add(key)
            else:
                assert not any(coords), (gi.name, gj.name, coords)
    assert seen_nonzero == want
    assert len(by_omega) == 10


def test_pentagon_alpha_squares_and_disjoint_alphas_vanish(pentagon_ring):
    pres = pentagon_ring
    alphas = [g for g in pres.generators if g.name.startswith("alpha")]
    for ga, gb in itertools.product(alphas, repeat=2):
        assert not any(pres.table[(ga.index, gb.index)])


def test_pentagon_unit_rows(pentagon_ring):
    pres = pentagon_ring
    unit = pres.generator_by_name("1")
    for g in pres.generators:
        row = pres.table[(unit.index, g.index)]
        col = pres.table[(g.index, unit.index)]
        want = tuple(
            1 if h.index == g.index else 0 for h in pres.gens_of_degree(g.degree)
        )
        assert row == want
        assert col == want


def test_degree_additivity_and_support(pentagon_ring):
    pres = pentagon_ring
    for (i, j), coords in pres.table.items():
        gi, gj = pres.generators[i], pres.generators[j]
        targets = pres.gens_of_degree(gi.degree + gj.degree)
        assert len(coords) == len(targets)
        for gt, c in zip(targets, coords):
            if c:
                assert gt.omega == gi.omega | gj.omega


def test_pentagon_products_anticommute(pentagon_ring):
    pres = pentagon_ring
    deg1 = [g for g in pres.generators if g.degree == 1]
    for gi, gj in itertools.product(deg1, repeat=2):
        forward = pres.table[(gi.index, gj.index)]
        back = pres.table[(gj.index, gi.index)]
        assert forward == tuple(-c for c in back)


def test_pentagon_associativity_via_expressed_intermediates(pentagon_ring):
    """(xy)z = x(yz) where the intermediate class is replaced by its expressed
    representative; this exercises well-definedness, not just cochain algebra."""
    pres = pentagon_ring
    gens = [g for g in pres.generators if g.degree >= 1]
    for gx, gy, gz in itertools.product(gens, repeat=3):
        dxy = gx.degree + gy.degree
        xy = pres.table[(gx.index, gy.index)]
        xy_rep = pres.class_cochain(dxy, xy)
        lhs = pres.product_coords(xy_rep, pres.rep_of(gz))
        dyz = gy.degree + gz.degree
        yz = pres.table[(gy.index, gz.index)]
        yz_rep = pres.class_cochain(dyz, yz)
        rhs = pres.product_coords(pres.rep_of(gx), yz_rep)
        assert lhs == rhs, (gx.name, gy.name, gz.name)


def test_full_simplex_ring_is_trivial():
    pres = build_ring(full_simplex(4), HOCHSTER)
    assert [g.degree for g in pres.generators] == [0]
    assert pres.table == {(0, 0): (1,)}
    pres_o = build_ring(full_simplex(4), ORACLE)
    assert [g.degree for g in pres_o.generators] == [0]


def test_oracle_route_pentagon_table(pentagon_ring, pentagon_oracle_ring):
    # how many products are nonzero depends on the basis, but the Smith
    # invariants of the degree-1 pairing matrix do not
    from realzk.intlinalg import smith_normal_form

    def pairing_diag(pres):
        deg1 = [g for g in pres.generators if g.degree == 1]
        mat = [
            [pres.table[(gi.index, gj.index)][0] for gj in deg1] for gi in deg1
        ]
        return smith_normal_form(mat).diag

    pres = pentagon_oracle_ring
    assert [g.degree for g in pres.generators] == [0] + [1] * 10 + [2]
    assert pairing_diag(pres) == pairing_diag(pentagon_ring) == [1] * 10


def test_express_strict_mode_on_pentagon(pentagon, pentagon_ring):
    # strict=True verifies that components with trivial cohomology only ever
    # receive coboundaries
    pres = pentagon_ring
    a = Cochain.from_monomials([Monomial(mask_of([1]), mask_of([3]), 1)])
    b = Cochain.from_monomials([Monomial(mask_of([2]), mask_of([4]), 1)])
    coords = pres.product_coords(a, b, strict=True)
    assert not any(coords)  # u{1,2}t{3,4}: the 4-path component is acyclic


def test_representative_independence(pentagon_ring):
    report = representative_independence_check(pentagon_ring, trials=10, seed=5)
    assert report["ok"], report
    assert report["trials"] == 10


def test_zero_perturbation_reproduces_table(pentagon_ring):
    assert pentagon_ring.perturbed_table({}) == pentagon_ring.table


def test_perturbation_guard_rejects_non_coboundary(pentagon_ring):
    pres = pentagon_ring
    gen = pres.generator_by_name("alpha1")
    # the generator's own representative is a cocycle but not a coboundary
    with pytest.raises(ValueError):
        pres.perturbed_table({gen.index: pres.rep_of(gen)})


def test_perturbation_by_coboundary_accepted(pentagon, pentagon_ring):
    pres = pentagon_ring
    gen = pres.generator_by_name("beta1")
    low = Cochain.from_monomials([Monomial(0, gen.omega, 1)])
    pert = low.differential(pentagon)
    table = pres.perturbed_table({gen.index: pert}, validate=True)
    assert table == pres.table


def test_oracle_representative_independence(pentagon_oracle_ring):
    report = representative_independence_check(pentagon_oracle_ring, trials=4, seed=11)
    assert report["ok"], report


def test_compare_rings_pentagon(pentagon_ring, pentagon_oracle_ring):
    report = compare_rings(pentagon_ring, pentagon_oracle_ring)
    assert report.ok
    data = report.to_json_dict()
    assert data["match"] is True
    assert data["additive"]["1"]["rank"] == 10


def test_compare_rings_route_check(pentagon_ring):
    with pytest.raises(ValueError):
        compare_rings(pentagon_ring, pentagon_ring)


def test_compare_small_complexes():
    rng = random.Random(21)
    for _ in range(8):
        K = random_complex(4, rng.uniform(0.2, 0.9), rng.randrange(10**9))
        report = compare_rings(build_ring(K, HOCHSTER), build_ring(K, ORACLE))
        assert report.ok, K


def test_compare_with_ghosts():
    K = from_facets(3, [[1]])  # vertices 2, 3 are ghosts
    ra = build_ring(K, HOCHSTER)
    rb = build_ring(K, ORACLE)
    assert sum(1 for g in ra.generators if g.degree == 0) == 4
    report = compare_rings(ra, rb)
    assert report.ok


def test_ring_json(pentagon_ring):
    data = pentagon_ring.to_json_dict()
    names = [g["name"] for g in data["generators"]]
    assert "gamma" in names and "1" in names
    assert all(set(g) == {"name", "degree", "omega", "order", "representative"}
               for g in data["generators"])
    assert len(data["products"]) == len(pentagon_ring.generators) ** 2
    json.dumps(data)  # serializable

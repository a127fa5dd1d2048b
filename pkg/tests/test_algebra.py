import random

import numpy as np
import pytest

from realzk.algebra import (
    Cochain,
    Monomial,
    coboundary_matrix,
    differential,
    mul,
    normalize,
    omega_basis,
    parse_cochain,
    parse_term,
    render_cochain,
    render_term,
)
from realzk.bitsets import full_mask, mask_of, popcount
from realzk.complexes import random_complex


def M(us=(), ts=(), c=1):
    return Monomial(mask_of(us), mask_of(ts), c)


def random_monomial(rng, m, coeff_range=3):
    sigma = rng.randrange(1 << m)
    tau = rng.randrange(1 << m) & ~sigma
    c = 0
    while c == 0:
        c = rng.randint(-coeff_range, coeff_range)
    return Monomial(sigma, tau, c)


# -- normalize -------------------------------------------------------------


def test_normalize_absorbs_shared_index():
    assert normalize(mask_of([1]), mask_of([1, 3])) == M([1], [3])


def test_normalize_kills_non_simplex(pentagon):
    assert normalize(mask_of([1, 3]), 0, K=pentagon) is None
    assert normalize(mask_of([1, 2]), 0, K=pentagon) == M([1, 2])


def test_normalize_support_example():
    # u2 t3 u4 t5 t6 = u_{2,4} t_{3,5,6}
    assert normalize(mask_of([2, 4]), mask_of([3, 5, 6])) == M([2, 4], [3, 5, 6])


def test_normalize_zero_coeff():
    assert normalize(1, 2, 0) is None


# -- mul --------------------------------------------------------------------


def test_mul_pentagon_gamma_factors():
    assert mul(M([1], [3]), M([2], [4, 5])) == M([1, 2], [3, 4, 5])


def test_mul_t_then_u_is_zero():
    assert mul(M([], [1]), M([1])) is None


def test_mul_anticommutes():
    assert mul(M([2]), M([1])) == M([1, 2], c=-1)
    assert mul(M([1]), M([2])) == M([1, 2], c=1)


def test_mul_repeated_u_is_zero():
    assert mul(M([1], [3]), M([1], [4])) is None


def test_mul_u_then_t_absorbs():
    assert mul(M([1], [2]), M([], [1])) == M([1], [2])


def test_mul_reduces_mod_ideal(pentagon):
    assert mul(M([1]), M([3]), K=pentagon) is None
    assert mul(M([1]), M([2]), K=pentagon) == M([1, 2])


# -- differential -------------------------------------------------------------


def test_differential_pentagon_worked_example(pentagon):
    # d(u1 t2345) = -u12 t345 - u15 t234, terms with non-simplices dropped
    got = differential(M([1], [2, 3, 4, 5]), K=pentagon)
    want = Cochain.from_monomials([M([1, 2], [3, 4, 5], -1), M([1, 5], [2, 3, 4], -1)])
    assert got == want


def test_differential_of_all_t_is_augmentation_like():
    m = 4
    got = differential(Monomial(0, full_mask(m), 1))
    want = Cochain.from_monomials(
        Monomial(1 << i, full_mask(m) & ~(1 << i), 1) for i in range(m)
    )
    assert got == want


def test_differential_kills_pure_u():
    assert differential(M([1, 3])).is_zero()
    assert differential(M([2], c=-4)).is_zero()


def test_dd_zero_random():
    rng = random.Random(1)
    for _ in range(10_000):
        m = rng.randrange(1, 9)
        a = random_monomial(rng, m)
        K = random_complex(m, rng.random(), rng.randrange(10**9)) if rng.random() < 0.5 else None
        dd = differential(a, K).differential(K)
        assert dd.is_zero()


def test_leibniz_random():
    rng = random.Random(2)
    for _ in range(5_000):
        m = rng.randrange(1, 8)
        a = random_monomial(rng, m)
        b = random_monomial(rng, m)
        K = random_complex(m, rng.random(), rng.randrange(10**9)) if rng.random() < 0.5 else None
        ca = Cochain.from_monomials([a])
        cb = Cochain.from_monomials([b])
        lhs = ca.mul(cb, K).differential(K)
        sign = -1 if a.degree & 1 else 1
        rhs = ca.differential(K).mul(cb, K) + ca.mul(cb.differential(K), K).scale(sign)
        assert lhs == rhs, (str(a), str(b))


def test_associativity_random():
    rng = random.Random(3)
    for _ in range(10_000):
        m = rng.randrange(1, 8)
        a, b, c = (random_monomial(rng, m) for _ in range(3))
        K = random_complex(m, rng.random(), rng.randrange(10**9)) if rng.random() < 0.5 else None
        ab = mul(a, b, K)
        bc = mul(b, c, K)
        lhs = mul(ab, c, K) if ab else None
        rhs = mul(a, bc, K) if bc else None
        assert (lhs is None and rhs is None) or lhs == rhs


def test_sign_commutativity_where_defined():
    rng = random.Random(4)
    for _ in range(5_000):
        m = rng.randrange(1, 8)
        a = random_monomial(rng, m)
        b = random_monomial(rng, m)
        clash = (a.tau & b.sigma) or (b.tau & a.sigma)
        if a.sigma & b.sigma:
            continue
        ab = mul(a, b)
        ba = mul(b, a)
        if not clash:
            sign = -1 if (a.degree * b.degree) & 1 else 1
            assert ab is not None and ba is not None
            assert ab == Monomial(ba.sigma, ba.tau, sign * ba.coeff)
        else:
            # exactly one order dies on a t/u index clash
            one_sided = (a.tau & b.sigma == 0) != (b.tau & a.sigma == 0)
            if one_sided:
                assert (ab is None) != (ba is None)


def test_multigrading():
    rng = random.Random(5)
    for _ in range(3_000):
        m = rng.randrange(1, 8)
        a = random_monomial(rng, m)
        b = random_monomial(rng, m)
        p = mul(a, b)
        if p is not None:
            assert p.omega == a.omega | b.omega
        for term in differential(a).monomials():
            assert term.omega == a.omega


# -- omega bases and matrices ---------------------------------------------------


def test_omega_basis_pentagon_nonedge(pentagon):
    # subsets of {1,3} that are simplices: {}, {1}, {3}
    assert omega_basis(pentagon, mask_of([1, 3])) == [
        M([], [1, 3]), M([1], [3]), M([3], [1])]


def test_omega_basis_empty(pentagon):
    assert omega_basis(pentagon, 0) == [Monomial(0, 0, 1)]


def test_omega_basis_edge(pentagon):
    # {1,2} is a simplex, so all four splits survive
    assert omega_basis(pentagon, mask_of([1, 2])) == [
        M([], [1, 2]), M([1], [2]), M([2], [1]), M([1, 2])]


def test_coboundary_matrix_pentagon(pentagon):
    mat = coboundary_matrix(pentagon, mask_of([1, 3]), 0)
    assert mat.shape == (2, 1)
    assert mat[:, 0].tolist() == [1, 1]  # d t13 = u1 t3 + u3 t1


def test_coboundary_matrix_empty_omega(pentagon):
    assert coboundary_matrix(pentagon, 0, 0).shape == (0, 1)
    assert coboundary_matrix(pentagon, 0, 3).shape == (0, 0)


def test_coboundary_matrix_top_degree(pentagon):
    # no degree-3 monomials: pentagon has no 2-simplices
    mat = coboundary_matrix(pentagon, full_mask(5), 2)
    assert mat.shape[0] == 0
    assert mat.shape[1] == 5


# -- cochain arithmetic and text format ----------------------------------------


def test_cochain_rejects_mixed_degree():
    c = Cochain.from_monomials([M([1], [2])])
    with pytest.raises(ValueError):
        c + Cochain.from_monomials([M([1, 2], [3])])


def test_cochain_vector_roundtrip(pentagon):
    basis = [mon for mon in omega_basis(pentagon, mask_of([1, 2, 3])) if mon.degree == 1]
    c = Cochain.from_monomials([M([1], [2, 3], 2), M([3], [1, 2], -1)])
    vec = c.to_coeff_vector(basis)
    assert Cochain.from_coeff_vector(basis, vec) == c


def test_render_and_parse_terms():
    assert render_term(mask_of([1, 2]), mask_of([3, 4, 5]), 1) == "u{1,2}t{3,4,5}"
    assert render_term(mask_of([1]), 0, -1) == "-u{1}"
    assert render_term(0, 0, 3) == "3"
    assert str(M([2, 4], [3, 5, 6])) == "u{2,4}t{3,5,6}"
    assert parse_term("u{1,2}t{3,4,5}") == M([1, 2], [3, 4, 5])
    assert parse_term("-u{1}") == M([1], c=-1)
    assert parse_term("+2t{2}") == M([], [2], 2)
    assert parse_term("1") == Monomial(0, 0, 1)
    with pytest.raises(ValueError):
        parse_term("uh{1}")
    with pytest.raises(ValueError):
        parse_term("")


def test_render_and_parse_cochains():
    c = Cochain.from_monomials([M([1], [3, 4]), M([3], [1, 4], -1)])
    text = render_cochain(c)
    assert text == "u{1}t{3,4}-u{3}t{1,4}"
    assert parse_cochain(text) == c
    assert parse_cochain("0").is_zero()
    assert render_cochain(Cochain()) == "0"


def test_differential_matrix_entries_are_small(pentagon):
    mat = coboundary_matrix(pentagon, full_mask(5), 1)
    assert np.all(np.abs(mat) <= 1)

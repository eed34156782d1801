import random
from itertools import permutations

import pytest

from supercoinv.superring import (
    act_mono,
    act_poly,
    all_perms,
    invariant_basis,
    invariant_vectors,
    mono_degree,
    mono_from_bytes,
    mono_mul,
    mono_one,
    mono_to_bytes,
    monomial_space,
    monomial_space_dim,
    poly_add_term,
    poly_mul,
    reynolds,
    superderivation,
)

SEED = 31415


def _mono(n, k, j, bos=(), fer=()):
    m = [list(e) for e in mono_one(n, k, j)[0]]
    for (a, p, e) in bos:
        m[a][p] += e
    masks = [0] * j
    for (c, p) in fer:
        masks[c] |= 1 << p
    return (tuple(tuple(e) for e in m), tuple(masks))


def _theta(n, j, c, p):
    return _mono(n, 0, j, fer=[(c, p)])


def test_fermionic_square_is_zero():
    t = _theta(2, 1, 0, 0)
    assert mono_mul(t, t) is None


def test_fermionic_anticommute():
    t1 = _theta(2, 1, 0, 0)
    t2 = _theta(2, 1, 0, 1)
    sign_a, prod_a = mono_mul(t1, t2)
    sign_b, prod_b = mono_mul(t2, t1)
    assert prod_a == prod_b
    assert sign_a == 1 and sign_b == -1


def test_cross_set_anticommute():
    n, j = 2, 2
    ta = _mono(n, 0, j, fer=[(0, 0)])
    tb = _mono(n, 0, j, fer=[(1, 0)])
    sign_ab, prod = mono_mul(ta, tb)
    sign_ba, prod2 = mono_mul(tb, ta)
    assert prod == prod2
    assert sign_ab == 1 and sign_ba == -1


def test_commuting_product():
    n, k = 2, 1
    x1 = {_mono(n, k, 0, bos=[(0, 0, 1)]): 1}
    x2 = {_mono(n, k, 0, bos=[(0, 1, 1)]): 1}
    splus = {m: c for m, c in x1.items()}
    for m, c in x2.items():
        poly_add_term(splus, m, c)
    sminus = {m: c for m, c in x1.items()}
    for m, c in x2.items():
        poly_add_term(sminus, m, -c)
    prod = poly_mul(splus, sminus)
    want = {}
    poly_add_term(want, _mono(n, k, 0, bos=[(0, 0, 2)]), 1)
    poly_add_term(want, _mono(n, k, 0, bos=[(0, 1, 2)]), -1)
    assert prod == want


def test_act_examples():
    n = 2
    swap = (1, 0)
    x1 = _mono(n, 1, 0, bos=[(0, 0, 1)])
    sign, img = act_mono(swap, x1)
    assert sign == 1 and img == _mono(n, 1, 0, bos=[(0, 1, 1)])
    t12 = _mono(n, 0, 1, fer=[(0, 0), (0, 1)])
    sign, img = act_mono(swap, t12)
    assert img == t12 and sign == -1


def test_act_three_cycle_on_top_wedge():
    n = 3
    cycle = (1, 2, 0)  # even permutation
    top = _mono(n, 0, 1, fer=[(0, 0), (0, 1), (0, 2)])
    sign, img = act_mono(cycle, top)
    assert img == top and sign == 1
    swap = (1, 0, 2)
    sign, img = act_mono(swap, top)
    assert img == top and sign == -1


def _random_poly(rng, n, k, j, terms=4, max_exp=2):
    poly = {}
    for _ in range(terms):
        bos = tuple(tuple(rng.randint(0, max_exp) for _ in range(n)) for _ in range(k))
        fer = tuple(rng.randint(0, (1 << n) - 1) for _ in range(j))
        poly_add_term(poly, (bos, fer), rng.choice((-3, -2, -1, 1, 2, 3)))
    return poly


def test_action_is_group_action_and_ring_hom():
    rng = random.Random(SEED)
    for n in (2, 3, 4):
        k, j = 2, 2
        perms = list(permutations(range(n)))
        for _ in range(6):
            p = _random_poly(rng, n, k, j)
            q = _random_poly(rng, n, k, j)
            sigma = rng.choice(perms)
            tau = rng.choice(perms)
            composed = tuple(sigma[tau[i]] for i in range(n))
            assert act_poly(composed, p) == act_poly(sigma, act_poly(tau, p))
            assert act_poly(sigma, poly_mul(p, q)) == poly_mul(
                act_poly(sigma, p), act_poly(sigma, q)
            )


def test_derivation_examples():
    n = 2
    x1 = {_mono(n, 1, 1, bos=[(0, 0, 1)]): 1}
    t1 = {_mono(n, 1, 1, fer=[(0, 0)]): 1}
    # polarization bosonic -> fermionic and back
    assert superderivation(x1, ("f", 0), ("b", 0)) == {_mono(n, 1, 1, fer=[(0, 0)]): 1}
    assert superderivation(t1, ("b", 0), ("f", 0)) == {_mono(n, 1, 1, bos=[(0, 0, 1)]): 1}
    # Euler operator: x1*x2 has q-degree 2
    x1x2 = {_mono(n, 1, 1, bos=[(0, 0, 1), (0, 1, 1)]): 1}
    assert superderivation(x1x2, ("b", 0), ("b", 0)) == {
        _mono(n, 1, 1, bos=[(0, 0, 1), (0, 1, 1)]): 2
    }


def test_fermionic_euler_operator():
    n, j = 3, 1
    top = {_mono(n, 0, j, fer=[(0, 0), (0, 1), (0, 2)]): 1}
    assert superderivation(top, ("f", 0), ("f", 0)) == {
        _mono(n, 0, j, fer=[(0, 0), (0, 1), (0, 2)]): 3
    }


def test_gl11_anticommutator_is_euler():
    # {E_(b<-f), E_(f<-b)} acts as total degree on the (1,1) superring
    rng = random.Random(SEED + 1)
    n, k, j = 3, 1, 1
    for _ in range(10):
        p = _random_poly(rng, n, k, j, terms=1)
        if not p:
            continue
        mono = next(iter(p))
        r, s = mono_degree(mono)
        e_bf = lambda q: superderivation(q, ("b", 0), ("f", 0))
        e_fb = lambda q: superderivation(q, ("f", 0), ("b", 0))
        first = e_bf(e_fb(p))
        second = e_fb(e_bf(p))
        total = {}
        for m, c in first.items():
            poly_add_term(total, m, c)
        for m, c in second.items():
            poly_add_term(total, m, c)
        want = {m: c * (r[0] + s[0]) for m, c in p.items() if r[0] + s[0]}
        assert total == want


def test_derivations_preserve_total_degree():
    rng = random.Random(SEED + 2)
    n, k, j = 3, 2, 2
    kinds = [("b", 0), ("b", 1), ("f", 0), ("f", 1)]
    for _ in range(10):
        mono = next(iter(_random_poly(rng, n, k, j, terms=1) or {mono_one(n, k, j): 1}))
        p = {mono: 1}
        r, s = mono_degree(mono)
        total = sum(r) + sum(s)
        for target in kinds:
            for source in kinds:
                img = superderivation(p, target, source)
                for m in img:
                    r2, s2 = mono_degree(m)
                    assert sum(r2) + sum(s2) == total


def test_derivations_commute_with_action():
    rng = random.Random(SEED + 3)
    for n in (2, 3, 4):
        k, j = 2, 2
        perms = list(permutations(range(n)))
        kinds = [("b", 0), ("b", 1), ("f", 0), ("f", 1)]
        for _ in range(6):
            p = _random_poly(rng, n, k, j)
            sigma = rng.choice(perms)
            target = rng.choice(kinds)
            source = rng.choice(kinds)
            a = act_poly(sigma, superderivation(p, target, source))
            b = superderivation(act_poly(sigma, p), target, source)
            assert a == b, (n, sigma, target, source)


def test_monomial_space_dims():
    for n in (2, 3, 4):
        for k, j in ((1, 0), (1, 1), (2, 1)):
            for r0 in range(3):
                for s0 in range(n + 1):
                    r = (r0,) * k
                    s = (s0,) * j
                    monos, index = monomial_space(n, k, j, r, s)
                    expected = monomial_space_dim(n, k, j, r, s)
                    assert len(monos) == expected
                    assert len(index) == len(monos)
                    for m in monos:
                        assert mono_degree(m) == (r, s)


def test_monomial_space_rejects_bad_degree():
    with pytest.raises(ValueError):
        monomial_space(2, 1, 0, (1, 1), ())


def test_reynolds_idempotent_and_fixed():
    rng = random.Random(SEED + 4)
    for n in (2, 3):
        p = _random_poly(rng, n, 1, 1)
        avg = reynolds(n, p)
        assert reynolds(n, avg) == avg
        for sigma in all_perms(n):
            assert act_poly(sigma, avg) == avg


def test_invariant_basis_hand_cases():
    # n=2 bosonic degree 1: the line x1 + x2
    basis = invariant_basis(2, 1, 0, (1,), ())
    assert basis.rank == 1
    monos, index = monomial_space(2, 1, 0, (1,), ())
    row = basis.vectors[0]
    assert row == {0: 1, 1: 1}
    # n=2 both fermionic slots: the swap negates the top wedge, no invariants
    assert invariant_basis(2, 0, 1, (), (2,)).rank == 0
    # n=3 single fermionic slot: the diagonal line
    basis = invariant_basis(3, 0, 1, (), (1,))
    assert basis.rank == 1
    assert basis.vectors[0] == {0: 1, 1: 1, 2: 1}


def test_invariant_vectors_match_full_reynolds():
    # spanning vectors agree with averaging every monomial separately
    for (n, k, j, r, s) in [(3, 1, 0, (2,), ()), (3, 0, 2, (), (1, 1)), (2, 1, 1, (1,), (1,))]:
        monos, index, vectors = invariant_vectors(n, k, j, r, s)
        from supercoinv.exactla import span_basis

        direct = []
        for m in monos:
            avg = reynolds(n, {m: 1})
            vec = {index[m2]: c for m2, c in avg.items()}
            if vec:
                direct.append(vec)
        a = span_basis(vectors, len(monos), prefilter=False)
        b = span_basis(direct, len(monos), prefilter=False)
        assert a.pivots == b.pivots and a.vectors == b.vectors


def test_byte_encoding_roundtrip():
    rng = random.Random(SEED + 5)
    for n, k, j in [(3, 2, 2), (6, 1, 1), (9, 1, 2)]:
        for _ in range(10):
            mono = next(iter(_random_poly(rng, n, k, j, terms=1, max_exp=5)))
            data = mono_to_bytes(mono, n)
            assert mono_from_bytes(data, n, k, j) == mono
            assert len(data) == k * n + j * ((n + 7) // 8)

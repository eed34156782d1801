import pytest

from supercoinv.qcombinat import conjugate, in_Pkjn, partitions_of
from supercoinv.superschur import (
    NotExpressible,
    QUPoly,
    expand_super_schur,
    expansion_shapes,
    schur_poly,
    skew_schur_poly,
    specialize,
    super_cauchy_check,
    super_schur,
)


def test_qupoly_ring_ops():
    q = QUPoly.variable(1, 1, 0)
    u = QUPoly.variable(1, 1, 1)
    one = QUPoly.one(1, 1)
    assert (q + u) * (q - u) == q * q - u * u
    assert (q + one).scale(2) == q.scale(2) + one + one
    assert (q * u).total_degree() == 2
    p = q * q + q * u + u
    assert p.homogeneous_component(2) == q * q + q * u
    assert p.coeff((1, 1)) == 1
    assert p.evaluate((1, 1)) == 3
    assert p.evaluate((2, -1)) == 4 - 2 - 1


def test_qupoly_pretty_names():
    p = QUPoly(2, 2, {(1, 0, 0, 0): 1, (0, 1, 0, 0): 2, (0, 0, 1, 1): 1})
    assert p.pretty() == "q + 2t + uv"
    h = QUPoly(1, 0, {(0,): 1, (1,): 2, (2,): 2, (3,): 1})
    assert h.pretty() == "1 + 2q + 2q^2 + q^3"


def test_qupoly_json_roundtrip():
    p = QUPoly(1, 1, {(3, 0): 1, (1, 1): -2})
    assert QUPoly.from_json(1, 1, p.to_json()) == p


def test_schur_poly_examples():
    two = [0, 1]
    s1 = schur_poly((1,), two, 2, 0)
    assert s1 == QUPoly(2, 0, {(1, 0): 1, (0, 1): 1})
    assert schur_poly((1, 1, 1), two, 2, 0).is_zero()
    s21 = schur_poly((2, 1), two, 2, 0)
    assert s21 == QUPoly(2, 0, {(2, 1): 1, (1, 2): 1})


def test_schur_agrees_with_dimension_counts():
    from supercoinv.snchar import ssyt_count

    for size in range(7):
        for lam in partitions_of(size):
            for m in range(1, 5):
                poly = schur_poly(lam, list(range(m)), m, 0)
                assert poly.evaluate((1,) * m) == ssyt_count(lam, m), (lam, m)


def test_skew_schur_examples():
    assert skew_schur_poly((2,), (2,), [0], 0, 1) == QUPoly.one(0, 1)
    assert skew_schur_poly((2,), (1,), [0], 0, 1) == QUPoly.variable(0, 1, 0)
    got = skew_schur_poly((2, 1), (1,), [0, 1], 0, 2)
    assert got == QUPoly(0, 2, {(2, 0): 1, (1, 1): 2, (0, 2): 1})
    with pytest.raises(ValueError):
        skew_schur_poly((2,), (3,), [0], 0, 1)


def test_super_schur_hooks():
    # single bosonic + single fermionic variable: hooks give two monomials
    for a in range(1, 5):
        for b in range(0, 4):
            lam = (a,) + (1,) * b
            got = super_schur(lam, 1, 1)
            want = QUPoly(1, 1, {(a, b): 1, (a - 1, b + 1): 1})
            assert got == want, lam
    assert super_schur((), 1, 1) == QUPoly.one(1, 1)
    assert super_schur((2, 2), 1, 1).is_zero()
    assert super_schur((1,), 1, 1) == QUPoly(1, 1, {(1, 0): 1, (0, 1): 1})


def test_super_schur_vanishing_is_hook_bound():
    for size in range(7):
        for lam in partitions_of(size):
            for k in range(3):
                for j in range(3):
                    vanishes = super_schur(lam, k, j).is_zero()
                    part = lam[k] if k < len(lam) else 0
                    assert vanishes == (part > j), (lam, k, j)


def test_super_schur_pure_cases():
    for size in range(7):
        for lam in partitions_of(size):
            for k in range(1, 4):
                assert super_schur(lam, k, 0) == schur_poly(lam, list(range(k)), k, 0)
            for j in range(1, 4):
                assert super_schur(lam, 0, j) == schur_poly(
                    conjugate(lam), list(range(j)), 0, j
                )


def test_super_schur_duality():
    # s_lam(q/u) on (k,j) equals s_lam'(u/q) on (j,k)
    for size in range(7):
        for lam in partitions_of(size):
            for k in range(3):
                for j in range(3):
                    a = super_schur(lam, k, j)
                    b = super_schur(conjugate(lam), j, k)
                    swapped = QUPoly(
                        k, j, {(e[j:] + e[:j]): c for e, c in b.coeffs.items()}
                    )
                    assert a == swapped, (lam, k, j)


def test_super_schur_cancellation():
    for size in range(7):
        for lam in partitions_of(size):
            for k in range(1, 3):
                for j in range(1, 3):
                    full = super_schur(lam, k, j)
                    dropped = specialize(full, {k - 1: (k + j - 1, -1)})
                    small = super_schur(lam, k - 1, j - 1).reindex(k, j)
                    assert dropped == small, (lam, k, j)


def test_super_schur_restriction():
    for size in range(6):
        for lam in partitions_of(size):
            for k in range(1, 3):
                for j in range(0, 3):
                    got = specialize(super_schur(lam, k, j), {k - 1: None})
                    want = super_schur(lam, k - 1, j).reindex(k, j, qshift=0)
                    assert got == want, (lam, k, j, "q")
            for k in range(0, 3):
                for j in range(1, 3):
                    got = specialize(super_schur(lam, k, j), {k + j - 1: None})
                    want = super_schur(lam, k, j - 1).reindex(k, j)
                    assert got == want, (lam, k, j, "u")


def test_specialize_identity_and_errors():
    p = super_schur((2, 1), 1, 1)
    assert specialize(p, {}) == p
    with pytest.raises(ValueError):
        specialize(p, {0: (0, 1)})
    with pytest.raises(ValueError):
        specialize(p, {5: None})


def test_expand_trivial_and_hand_cases():
    one = QUPoly.one(1, 1)
    assert expand_super_schur(one, 1, 1, 2) == {(): 1}
    hilb2 = QUPoly(1, 1, {(0, 0): 1, (1, 0): 1, (0, 1): 1})
    assert expand_super_schur(hilb2, 1, 1, 2) == {(): 1, (1,): 1}
    sign3 = QUPoly(1, 1, {(3, 0): 1, (2, 1): 1, (1, 1): 1, (0, 2): 1})
    assert expand_super_schur(sign3, 1, 1, 3) == {(3,): 1, (1, 1): 1}


def test_expand_rejects_asymmetric():
    p = QUPoly.variable(2, 0, 0)
    with pytest.raises(ValueError):
        expand_super_schur(p, 2, 0, 2)


def test_expand_not_expressible():
    qu = QUPoly(1, 1, {(1, 1): 1})
    with pytest.raises(NotExpressible):
        expand_super_schur(qu, 1, 1, 3)


def test_expand_degree_bound_validates():
    p = QUPoly(1, 1, {(2, 0): 1, (1, 1): 1, (0, 2): 0})
    with pytest.raises(ValueError):
        expand_super_schur(p, 1, 1, 3, degree_bound=1)


def test_super_schur_linear_independence():
    # monomial-coordinate vectors of a degree slice have full rank
    from supercoinv.exactla import span_basis

    for (k, j, n) in [(1, 1, 3), (2, 1, 3), (0, 2, 4), (2, 2, 2)]:
        for d in range(9):
            shapes = expansion_shapes(k, j, n, d)
            if not shapes:
                continue
            polys = [super_schur(lam, k, j) for lam in shapes]
            keys = {}
            for poly in polys:
                for e in poly.coeffs:
                    keys.setdefault(e, len(keys))
            vectors = [{keys[e]: c for e, c in poly.coeffs.items()} for poly in polys]
            assert span_basis(vectors, len(keys), prefilter=False).rank == len(shapes), (k, j, n, d)


def test_expansion_shapes_respect_index_set():
    for d in range(7):
        for lam in expansion_shapes(1, 1, 4, d):
            assert in_Pkjn(lam, 1, 1, 4)


def test_super_cauchy_trivial_cases():
    assert super_cauchy_check(1, 0, 1, 3).passed
    assert super_cauchy_check(0, 1, 2, 3).passed
    assert super_cauchy_check(0, 0, 2, 3).passed


def test_super_cauchy_mixed():
    assert super_cauchy_check(1, 1, 2, 5).passed
    assert super_cauchy_check(2, 1, 2, 4).passed


def test_cauchy_result_reports_failure_degree():
    from supercoinv.superschur import CauchyResult

    res = CauchyResult(False, 4)
    assert not res
    assert "4" in repr(res)


def test_expansion_json_roundtrip():
    from supercoinv.superschur import expansion_from_json, expansion_to_json

    expansion = {(3,): 1, (1, 1): 2, (): 1, (2,): 0}
    data = expansion_to_json(expansion)
    assert data == [
        {"lambda": [], "coeff": 1},
        {"lambda": [1, 1], "coeff": 2},
        {"lambda": [3], "coeff": 1},
    ]
    assert expansion_from_json(data) == {(): 1, (3,): 1, (1, 1): 2}


def test_mono_mul_context_mismatch():
    import pytest

    from supercoinv.superring import mono_mul, mono_one

    with pytest.raises(ValueError):
        mono_mul(mono_one(2, 1, 0), mono_one(2, 2, 0))

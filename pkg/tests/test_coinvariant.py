import json

import pytest

from supercoinv.coinvariant import (
    CeilingExceeded,
    CoeffTable,
    FrobeniusSeries,
    IdealComponentCache,
    ambient_trace,
    coeff_table,
    frobenius_series,
    hilbert_series,
    ideal_component,
    quotient_character,
)
from supercoinv.qcombinat import partitions_of, q_factorial
from supercoinv.superschur import QUPoly


def test_ideal_component_degree_zero_empty():
    cache = IdealComponentCache(3, 1, 1)
    assert ideal_component(cache, ((0,), (0,))).rank == 0


def test_ideal_component_linear_bosonic():
    cache = IdealComponentCache(2, 1, 0)
    basis = ideal_component(cache, ((1,), ()))
    assert basis.rank == 1
    assert basis.vectors[0] == {0: 1, 1: 1}


def test_ideal_component_artin_codimension():
    # single bosonic alphabet at degree 3: codimension is the [3] coefficient
    cache = IdealComponentCache(3, 1, 0)
    basis = ideal_component(cache, ((3,), ()))
    monos, _ = cache.monomial_space(((3,), ()))
    assert len(monos) - basis.rank == q_factorial(3).coeff(3)


def test_quotient_character_constants():
    cache = IdealComponentCache(3, 1, 1)
    for rho in partitions_of(3):
        assert quotient_character(cache, ((0,), (0,)), rho) == 1


def test_quotient_character_standard_line():
    cache = IdealComponentCache(2, 1, 0)
    deg = ((1,), ())
    assert quotient_character(cache, deg, (1, 1)) == 1
    assert quotient_character(cache, deg, (2,)) == -1


def test_quotient_character_fermionic_standard():
    cache = IdealComponentCache(3, 0, 1)
    deg = ((), (1,))
    values = {rho: quotient_character(cache, deg, rho) for rho in partitions_of(3)}
    assert values == {(1, 1, 1): 2, (2, 1): 0, (3,): -1}


def test_quotient_character_checked_small():
    # exhaustive membership verification of every permuted basis vector
    for (n, k, j) in [(2, 1, 1), (3, 1, 1), (3, 0, 2), (3, 2, 0)]:
        cache = IdealComponentCache(n, k, j)
        frobenius_series(n, k, j, cache=cache, keep_all=True)
        for deg in cache.degrees_cached():
            for rho in partitions_of(n):
                unchecked = quotient_character(cache, deg, rho)
                checked = quotient_character(cache, deg, rho, check_invariant=True)
                assert unchecked == checked


def test_ambient_trace_identity_is_dimension():
    cache = IdealComponentCache(3, 1, 1)
    for deg in [((2,), (1,)), ((0,), (2,)), ((3,), (0,))]:
        monos, _ = cache.monomial_space(deg)
        assert ambient_trace(cache, deg, (0, 1, 2)) == len(monos)


def test_frobenius_series_smallest_mixed():
    series = frobenius_series(2, 1, 1)
    assert series.components == {
        ((0,), (0,)): {(2,): 1},
        ((1,), (0,)): {(1, 1): 1},
        ((0,), (1,)): {(1, 1): 1},
    }
    assert series.hilbert() == QUPoly(1, 1, {(0, 0): 1, (1, 0): 1, (0, 1): 1})


def test_frobenius_series_artin_and_exterior():
    artin = frobenius_series(3, 1, 0)
    hilb = artin.hilbert()
    assert hilb == QUPoly(1, 0, {(e,): c for e, c in q_factorial(3).coeffs.items()})
    ext = frobenius_series(3, 0, 1)
    assert ext.components == {
        ((), (0,)): {(3,): 1},
        ((), (1,)): {(2, 1): 1},
        ((), (2,)): {(1, 1, 1): 1},
    }


def test_frobenius_nonnegative_and_dim_consistency():
    for (n, k, j) in [(3, 1, 1), (4, 0, 2), (3, 2, 0)]:
        cache = IdealComponentCache(n, k, j)
        series = frobenius_series(n, k, j, cache=cache, keep_all=True)
        for deg, mults in series.components.items():
            assert all(c > 0 for c in mults.values())
            basis = cache.ideal[deg]
            monos, _ = cache.monomial_space(deg)
            dim = len(monos) - basis.rank
            from supercoinv.snchar import syt_count

            assert dim == sum(c * syt_count(mu) for mu, c in mults.items())


def test_hilbert_series_shortcut_matches_frobenius():
    for (n, k, j) in [(3, 1, 1), (4, 1, 0), (3, 0, 2)]:
        assert hilbert_series(n, k, j) == frobenius_series(n, k, j).hilbert()


def test_hilbert_examples():
    h = hilbert_series(4, 1, 0)
    assert h == QUPoly(1, 0, {(e,): c for e, c in q_factorial(4).coeffs.items()})
    h = hilbert_series(3, 1, 1)
    # u^2 + (1+q)(2+q) u + (1+q)(1+q+q^2)
    want = QUPoly(
        1,
        1,
        {
            (0, 2): 1,
            (0, 1): 2,
            (1, 1): 3,
            (2, 1): 1,
            (0, 0): 1,
            (1, 0): 2,
            (2, 0): 2,
            (3, 0): 1,
        },
    )
    assert h == want
    assert hilbert_series(2, 2, 0).evaluate((1, 1)) == 3


def test_trivial_alphabets():
    series = frobenius_series(3, 0, 0)
    assert series.components == {((), ()): {(3,): 1}}
    assert hilbert_series(3, 0, 0) == QUPoly.one(0, 0)


def test_coeff_table_values():
    table = coeff_table(frobenius_series(3, 1, 1))
    assert table.coeff((), (3,)) == 1
    assert table.coeff((1, 1), (1, 1, 1)) == 1
    assert table.coeff((3,), (1, 1, 1)) == 1
    assert table.coeff((2,), (1, 1, 1)) == 0
    # the column shape at the sign character is visible in any ring whose
    # index set admits it: (1,0) only for n=2, (0,1) for every n
    t = coeff_table(frobenius_series(2, 1, 0))
    assert t.coeff((1,), (1, 1)) == 1
    for n in (3, 4):
        t = coeff_table(frobenius_series(n, 0, 1))
        assert t.coeff((1,) * (n - 1), (1,) * n) == 1


def test_coeff_table_constant_coefficient():
    for (n, k, j) in [(2, 1, 1), (3, 0, 2), (3, 2, 0)]:
        table = coeff_table(frobenius_series(n, k, j))
        assert table.coeff((), (n,)) == 1


def test_frobenius_json_roundtrip():
    series = frobenius_series(3, 1, 1)
    data = json.loads(json.dumps(series.to_json()))
    assert FrobeniusSeries.from_json(data).components == series.components


def test_coeff_table_json_roundtrip():
    table = coeff_table(frobenius_series(3, 1, 1))
    data = json.loads(json.dumps(table.to_json()))
    rebuilt = CoeffTable.from_json(data)
    assert rebuilt.entries == table.entries
    assert rebuilt.n == table.n and rebuilt.source == table.source


def test_disk_cache_roundtrip(tmp_path):
    cache = IdealComponentCache(3, 1, 1, cache_dir=str(tmp_path))
    deg = ((2,), (1,))
    basis = ideal_component(cache, deg)
    cache._save(deg, basis)
    fresh = IdealComponentCache(3, 1, 1, cache_dir=str(tmp_path))
    loaded = ideal_component(fresh, deg)
    assert loaded.pivots == basis.pivots
    assert loaded.vectors == basis.vectors


def test_eviction_persists_to_disk(tmp_path):
    cache = IdealComponentCache(2, 1, 1, cache_dir=str(tmp_path))
    series = frobenius_series(2, 1, 1, cache=cache, keep_all=False)
    assert series.components
    fresh = IdealComponentCache(2, 1, 1, cache_dir=str(tmp_path))
    deg = ((1,), (0,))
    loaded = ideal_component(fresh, deg)
    direct_cache = IdealComponentCache(2, 1, 1)
    direct = ideal_component(direct_cache, deg)
    assert loaded.pivots == direct.pivots
    assert loaded.vectors == direct.vectors


def test_ceiling_exceeded_reports_offender():
    cache = IdealComponentCache(4, 2, 0, ceiling=10)
    with pytest.raises(CeilingExceeded) as err:
        hilbert_series(4, 2, 0, cache=cache)
    assert err.value.dim > 10
    assert err.value.limit == 10


def test_quotient_character_rejects_bad_type():
    cache = IdealComponentCache(3, 1, 0)
    with pytest.raises(ValueError):
        quotient_character(cache, ((1,), ()), (2, 2))


def test_mu_polynomial_extraction():
    series = frobenius_series(3, 1, 1)
    sign = series.mu_polynomial((1, 1, 1))
    assert sign == QUPoly(1, 1, {(3, 0): 1, (1, 1): 1, (2, 1): 1, (0, 2): 1})


def test_invariants_contained_in_ideal():
    # the ideal component contains the invariant component at every
    # positive multidegree, by construction and as a subspace fact
    for (n, k, j) in [(3, 1, 1), (3, 0, 2)]:
        cache = IdealComponentCache(n, k, j)
        frobenius_series(n, k, j, cache=cache, keep_all=True)
        for deg in cache.degrees_cached():
            if sum(deg[0]) + sum(deg[1]) == 0:
                continue
            ideal = cache.ideal[deg]
            inv = cache.invariant_basis(deg)
            for row in inv.vectors:
                assert ideal.contains(row), deg


def _literal_ideal_basis(cache, deg):
    # the defining span: products (monomial of multidegree d-e) * (invariant
    # vector of multidegree e) over every componentwise 0 < e <= d; this is
    # the construction the recursive engine must reproduce exactly
    from itertools import product as iproduct

    from supercoinv.exactla import span_basis
    from supercoinv.superring import mono_mul

    n, k, j = cache.n, cache.k, cache.j
    r, s = deg
    monos, index = cache.monomial_space(deg)
    vectors = []
    ranges = [range(x + 1) for x in r] + [range(x + 1) for x in s]
    for combo in iproduct(*ranges):
        e_r, e_s = tuple(combo[:k]), tuple(combo[k:])
        if sum(e_r) + sum(e_s) == 0:
            continue
        inv = cache.invariant_basis((e_r, e_s))
        if not inv.vectors:
            continue
        inv_monos, _ = cache.monomial_space((e_r, e_s))
        rest = (
            tuple(a - b for a, b in zip(r, e_r)),
            tuple(a - b for a, b in zip(s, e_s)),
        )
        rest_monos, _ = cache.monomial_space(rest)
        for m in rest_monos:
            for row in inv.vectors:
                vec = {}
                for idx, val in row.items():
                    prod = mono_mul(m, inv_monos[idx])
                    if prod is None:
                        continue
                    sign, m2 = prod
                    vec[index[m2]] = vec.get(index[m2], 0) + sign * val
                vec = {i: v for i, v in vec.items() if v}
                if vec:
                    vectors.append(vec)
    return span_basis(vectors, len(monos), prefilter=False)


def test_ideal_matches_literal_definition():
    for (n, k, j) in [(3, 1, 1), (2, 2, 0), (3, 0, 2)]:
        cache = IdealComponentCache(n, k, j)
        frobenius_series(n, k, j, cache=cache, keep_all=True)
        for deg in cache.degrees_cached():
            literal = _literal_ideal_basis(cache, deg)
            engine = cache.ideal[deg]
            assert literal.pivots == engine.pivots, (n, k, j, deg)
            assert literal.vectors == engine.vectors, (n, k, j, deg)

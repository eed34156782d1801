"""Free superalgebra on n positions with k bosonic and j fermionic variable sets.

A monomial is a pair (bos, fer): ``bos`` is a k-tuple of length-n exponent
tuples, ``fer`` a j-tuple of n-bit occupancy masks (bit p set means the
fermionic variable of that set at position p occurs).  Monomials are always
canonical -- fermionic factors are implicitly ordered by (set index, position
index) ascending -- and never carry a sign themselves: all signs produced by
reordering land in polynomial coefficients.  Polynomials are plain dicts
{monomial: coefficient} with no stored zeros.
"""

from __future__ import annotations

from functools import cache
from itertools import permutations, product

from .exactla import SubspaceBasis, span_basis

__all__ = [
    "mono_one",
    "mono_degree",
    "mono_mul",
    "mono_total_degree",
    "act_mono",
    "poly_add_term",
    "poly_scale",
    "poly_mul",
    "act_poly",
    "superderivation",
    "monomial_space",
    "monomial_space_dim",
    "all_perms",
    "reynolds",
    "invariant_vectors",
    "invariant_basis",
    "mono_to_bytes",
    "mono_from_bytes",
]

Monomial = tuple


def mono_one(n: int, k: int, j: int) -> Monomial:
    return (((0,) * n,) * k, (0,) * j)


def mono_degree(m: Monomial):
    """Multidegree (r, s): per-set bosonic totals and fermionic occupancies."""
    bos, fer = m
    return (tuple(sum(e) for e in bos), tuple(mask.bit_count() for mask in fer))


def mono_total_degree(m: Monomial) -> int:
    r, s = mono_degree(m)
    return sum(r) + sum(s)


def mono_mul(a: Monomial, b: Monomial):
    """Product of canonical monomials: (sign, monomial) or None when zero.

    The sign counts the inversions needed to merge the two canonical
    fermionic factor sequences; a shared occupied slot kills the product.
    """
    abos, afer = a
    bbos, bfer = b
    if len(abos) != len(bbos) or len(afer) != len(bfer):
        raise ValueError("monomials come from different variable contexts")
    inv = 0
    lower_b = 0
    for c in range(len(afer)):
        am, bm = afer[c], bfer[c]
        if am & bm:
            return None
        inv += am.bit_count() * lower_b
        if am and bm:
            mm = bm
            while mm:
                low = mm & -mm
                pos = low.bit_length() - 1
                inv += (am >> (pos + 1)).bit_count()
                mm ^= low
        lower_b += bm.bit_count()
    bos = tuple(tuple(x + y for x, y in zip(ea, eb)) for ea, eb in zip(abos, bbos))
    fer = tuple(am | bm for am, bm in zip(afer, bfer))
    return (-1) ** inv, (bos, fer)


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def act_mono(sigma, m: Monomial):
    """Relabel position indices by sigma; returns (sign, canonical monomial).

    The sign is the parity of the permutation induced on the occupied
    positions within each fermionic set (cross-set order never changes).
    """
    bos, fer = m
    nbos = []
    for e in bos:
        out = [0] * len(e)
        for i, x in enumerate(e):
            if x:
                out[sigma[i]] = x
        nbos.append(tuple(out))
    sign = 1
    nfer = []
    for mask in fer:
        imgs = [sigma[i] for i in _bits(mask)]
        inv = 0
        for t in range(len(imgs)):
            for u in range(t + 1, len(imgs)):
                if imgs[t] > imgs[u]:
                    inv += 1
        if inv & 1:
            sign = -sign
        nm = 0
        for i in imgs:
            nm |= 1 << i
        nfer.append(nm)
    return sign, (tuple(nbos), tuple(nfer))


def poly_add_term(poly: dict, mono: Monomial, coeff) -> None:
    nv = poly.get(mono, 0) + coeff
    if nv:
        poly[mono] = nv
    else:
        poly.pop(mono, None)


def poly_scale(poly: dict, c) -> dict:
    if not c:
        return {}
    return {m: c * v for m, v in poly.items()}


def poly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            prod = mono_mul(ma, mb)
            if prod is None:
                continue
            sign, m = prod
            poly_add_term(out, m, sign * ca * cb)
    return out


def act_poly(sigma, poly: dict) -> dict:
    out: dict = {}
    for m, c in poly.items():
        sign, m2 = act_mono(sigma, m)
        poly_add_term(out, m2, sign * c)
    return out


def _fer_before(fer, c: int, pos: int) -> int:
    """Number of fermionic factors strictly before (set c, position pos)."""
    count = sum(fer[cc].bit_count() for cc in range(c))
    return count + (fer[c] & ((1 << pos) - 1)).bit_count()


def superderivation(poly: dict, target, source) -> dict:
    """Apply the polarization operator E_(target,source) = sum_p var_t(p) d/d var_s(p).

    ``target`` and ``source`` are ('b', index) or ('f', index) pairs selecting
    a bosonic or fermionic variable set.  Left superderivatives pick up the
    sign of moving past earlier fermionic factors; reinsertion of a fermionic
    factor contributes the analogous ordering sign.
    """
    tkind, ti = target
    skind, si = source
    out: dict = {}
    for m, c in poly.items():
        bos, fer = m
        if skind == "b":
            if not 0 <= si < len(bos):
                raise IndexError("bosonic source index out of range")
            exps = bos[si]
            for p, e in enumerate(exps):
                if not e:
                    continue
                nbos = list(bos)
                row = list(exps)
                row[p] = e - 1
                nbos[si] = tuple(row)
                _emit(out, (tuple(nbos), fer), c * e, tkind, ti, p)
        else:
            if not 0 <= si < len(fer):
                raise IndexError("fermionic source index out of range")
            mask = fer[si]
            for p in _bits(mask):
                sign = -1 if _fer_before(fer, si, p) & 1 else 1
                nfer = list(fer)
                nfer[si] = mask ^ (1 << p)
                _emit(out, (bos, tuple(nfer)), c * sign, tkind, ti, p)
    return out


def _emit(out: dict, m: Monomial, coeff, tkind: str, ti: int, p: int) -> None:
    # multiply the derivative term on the left by the target variable at p
    bos, fer = m
    if tkind == "b":
        if not 0 <= ti < len(bos):
            raise IndexError("bosonic target index out of range")
        row = list(bos[ti])
        row[p] += 1
        nbos = list(bos)
        nbos[ti] = tuple(row)
        poly_add_term(out, (tuple(nbos), fer), coeff)
    else:
        if not 0 <= ti < len(fer):
            raise IndexError("fermionic target index out of range")
        if fer[ti] >> p & 1:
            return
        sign = -1 if _fer_before(fer, ti, p) & 1 else 1
        nfer = list(fer)
        nfer[ti] = fer[ti] | (1 << p)
        poly_add_term(out, (bos, tuple(nfer)), coeff * sign)


@cache
def _compositions(total: int, n: int) -> tuple:
    """All length-n tuples of nonnegative ints summing to total, lex order."""
    if n == 0:
        return ((),) if total == 0 else ()
    if n == 1:
        return ((total,),)
    out = []
    for first in range(total + 1):
        for rest in _compositions(total - first, n - 1):
            out.append((first,) + rest)
    return tuple(out)


@cache
def _masks(count: int, n: int) -> tuple:
    """All n-bit masks with the given popcount, ascending as integers."""
    if count < 0 or count > n:
        return ()
    out = [m for m in range(1 << n) if m.bit_count() == count]
    return tuple(out)


@cache
def monomial_space(n: int, k: int, j: int, r, s):
    """Canonically ordered monomial basis of a multidegree component.

    Returns (monomials, index) where index maps monomial -> position.  The
    order is the lexicographic product of per-set composition lists and mask
    lists; it is fixed so matrix layouts and cache files are reproducible.
    """
    r = tuple(r)
    s = tuple(s)
    if len(r) != k or len(s) != j:
        raise ValueError("multidegree arity mismatch")
    if any(x < 0 for x in r) or any(x < 0 for x in s):
        raise ValueError("multidegree must be nonnegative")
    if any(x > n for x in s):
        return (), {}
    groups = [_compositions(ra, n) for ra in r] + [_masks(sc, n) for sc in s]
    monos = []
    for combo in product(*groups):
        bos = tuple(combo[:k])
        fer = tuple(combo[k:])
        monos.append((bos, fer))
    index = {m: i for i, m in enumerate(monos)}
    return tuple(monos), index


def monomial_space_dim(n: int, k: int, j: int, r, s) -> int:
    from math import comb

    dim = 1
    for ra in r:
        dim *= comb(ra + n - 1, n - 1)
    for sc in s:
        dim *= comb(n, sc)
    return dim


@cache
def all_perms(n: int) -> tuple:
    return tuple(permutations(range(n)))


def reynolds(n: int, poly: dict) -> dict:
    """Group average over all of S_n (exact rational coefficients)."""
    from fractions import Fraction

    out: dict = {}
    perms = all_perms(n)
    for sigma in perms:
        for m, c in act_poly(sigma, poly).items():
            poly_add_term(out, m, c)
    scale = Fraction(1, len(perms))
    return {m: c * scale for m, c in out.items()}


def invariant_vectors(n: int, k: int, j: int, r, s):
    """Integer spanning vectors of the invariant subspace of a component.

    One full |S_n| Reynolds sum is evaluated per monomial orbit (the sums of
    two monomials in one orbit agree up to sign, so representatives suffice);
    orbits whose signed sum cancels contribute nothing.  Every returned
    vector is audited to be fixed by the adjacent transpositions.
    """
    monos, index = monomial_space(n, k, j, r, s)
    perms = all_perms(n)
    gens = _adjacent_transpositions(n)
    visited = [False] * len(monos)
    vectors = []
    for start, m in enumerate(monos):
        if visited[start]:
            continue
        acc: dict = {}
        orbit = set()
        for sigma in perms:
            sign, m2 = act_mono(sigma, m)
            acc[m2] = acc.get(m2, 0) + sign
            orbit.add(m2)
        for m2 in orbit:
            visited[index[m2]] = True
        vec = {index[m2]: c for m2, c in acc.items() if c}
        if not vec:
            continue
        for tau in gens:
            if _act_vector(tau, vec, monos, index) != vec:
                raise AssertionError("Reynolds output not fixed by a transposition")
        vectors.append(vec)
    return monos, index, vectors


def _adjacent_transpositions(n: int) -> tuple:
    gens = []
    for i in range(n - 1):
        tau = list(range(n))
        tau[i], tau[i + 1] = tau[i + 1], tau[i]
        gens.append(tuple(tau))
    return tuple(gens)


def _act_vector(sigma, vec: dict, monos, index) -> dict:
    out: dict = {}
    for idx, c in vec.items():
        sign, m2 = act_mono(sigma, monos[idx])
        out[index[m2]] = sign * c
    return out


def invariant_basis(n: int, k: int, j: int, r, s) -> SubspaceBasis:
    """Reduced-echelon basis of the S_n-invariant subspace of a component."""
    monos, _index, vectors = invariant_vectors(n, k, j, r, s)
    return span_basis(vectors, len(monos), prefilter=False)


# --- byte encoding for the on-disk cache ------------------------------------
# bosonic exponents as unsigned bytes (set by set, position ascending), then
# each fermionic mask as ceil(n/8) little-endian bytes


def mono_to_bytes(m: Monomial, n: int) -> bytes:
    bos, fer = m
    parts = []
    for e in bos:
        if any(x > 255 for x in e):
            raise ValueError("bosonic exponent exceeds byte range")
        parts.append(bytes(e))
    width = (n + 7) // 8
    for mask in fer:
        parts.append(mask.to_bytes(width, "little"))
    return b"".join(parts)


def mono_from_bytes(data: bytes, n: int, k: int, j: int) -> Monomial:
    width = (n + 7) // 8
    if len(data) != k * n + j * width:
        raise ValueError("encoded monomial has wrong length")
    bos = tuple(tuple(data[a * n : (a + 1) * n]) for a in range(k))
    off = k * n
    fer = tuple(
        int.from_bytes(data[off + c * width : off + (c + 1) * width], "little") for c in range(j)
    )
    return (bos, fer)

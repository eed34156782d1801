"""Symmetric group characters and restriction multiplicities.

Irreducible characters chi^lam are computed by the Murnaghan-Nakayama
border-strip recursion on beta-numbers, memoized on (shape, cycle type).
The memo tables are only ever extended (functools.cache), so concurrent
readers at worst duplicate work.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cache
from math import factorial

from .qcombinat import Partition, conjugate, partitions_of

__all__ = [
    "z_order",
    "class_size",
    "irreducible_character",
    "frobenius_decompose",
    "gl_restriction_mult",
    "class_representative",
    "syt_count",
    "ssyt_count",
]


@cache
def z_order(rho: Partition) -> int:
    """Centralizer order z_rho = prod_i i^(m_i) m_i! over part multiplicities."""
    mult: dict[int, int] = {}
    for p in rho:
        mult[p] = mult.get(p, 0) + 1
    z = 1
    for i, m in mult.items():
        z *= i**m * factorial(m)
    return z


def class_size(rho: Partition) -> int:
    """Number of permutations with cycle type rho."""
    return factorial(sum(rho)) // z_order(rho)


@cache
def _mn(lam: Partition, rho: Partition) -> int:
    # Murnaghan-Nakayama: strip off a border strip of length rho[0].
    # Beta-numbers b_i = lam_i + (len - 1 - i); removing a strip of length r
    # replaces some b by b - r (must stay distinct); the crossing count gives
    # the sign (-1)^(height-1).
    if not rho:
        return 1
    r = rho[0]
    rest = rho[1:]
    ell = len(lam)
    beta = [lam[i] + (ell - 1 - i) for i in range(ell)]
    bset = set(beta)
    total = 0
    for b in beta:
        nb = b - r
        if nb < 0 or nb in bset:
            continue
        crossed = sum(1 for c in beta if nb < c < b)
        newbeta = [c for c in beta if c != b]
        newbeta.append(nb)
        newbeta.sort(reverse=True)
        m = len(newbeta)
        newlam = tuple(
            p for i in range(m) if (p := newbeta[i] - (m - 1 - i)) > 0
        )
        total += (-1) ** crossed * _mn(newlam, rest)
    return total


def irreducible_character(lam: Partition, rho: Partition) -> int:
    """Value of the irreducible character indexed by lam at cycle type rho."""
    if sum(lam) != sum(rho):
        raise ValueError(f"size mismatch: |{lam}| != |{rho}|")
    return _mn(tuple(lam), tuple(rho))


def frobenius_decompose(class_fn, n: int) -> dict[Partition, int]:
    """Multiplicities <f, chi^mu> of a class function over all mu of n.

    ``class_fn`` maps every cycle type (partition of n) to a rational value.
    Raises ValueError when some multiplicity fails to be an integer, which
    always signals an upstream bug.
    """
    out: dict[Partition, int] = {}
    types = partitions_of(n)
    for mu in types:
        acc = Fraction(0)
        for rho in types:
            acc += Fraction(class_fn[rho] * irreducible_character(mu, rho), z_order(rho))
        if acc.denominator != 1:
            raise ValueError(f"non-integral multiplicity {acc} at mu={mu}")
        out[mu] = int(acc)
    return out


@cache
def _power_sum_on_class(r: int, tau: Partition) -> int:
    # p_r evaluated at the eigenvalues of any permutation of cycle type tau:
    # a c-cycle contributes c when c divides r, else 0.
    return sum(c for c in tau if r % c == 0)


@cache
def gl_restriction_mult(lam: Partition, n: int) -> dict[Partition, int]:
    """Multiplicities d_{lam,mu} of S_n-irreducibles in the GL(n)-irreducible lam.

    The trace of a permutation on the GL(n)-module is obtained from the
    power-sum expansion of the Schur function, then decomposed by characters.
    All outputs are nonnegative integers (the restriction is semisimple).
    """
    lam = tuple(lam)
    if len(lam) > n:
        raise ValueError(f"shape {lam} has more than n={n} rows")
    size = sum(lam)
    traces: dict[Partition, Fraction] = {}
    for tau in partitions_of(n):
        tr = Fraction(0)
        for rho in partitions_of(size):
            chi = _mn(lam, rho)
            if not chi:
                continue
            val = 1
            for r in rho:
                val *= _power_sum_on_class(r, tau)
                if not val:
                    break
            if val:
                tr += Fraction(chi * val, z_order(rho))
        if tr.denominator != 1:
            raise ValueError(f"non-integral trace {tr} at tau={tau}")
        traces[tau] = int(tr)
    mults = frobenius_decompose(traces, n)
    for mu, d in mults.items():
        if d < 0:
            raise ValueError(f"negative restriction multiplicity d[{lam},{mu}] = {d}")
    return mults


def class_representative(rho: Partition) -> tuple[int, ...]:
    """Lexicographically smallest permutation (one-line form) of cycle type rho.

    Fixed points come first, then cycles of increasing length filled with
    consecutive labels.
    """
    perm = []
    for length in sorted(rho):
        base = len(perm)
        perm.extend(base + (i + 1) % length for i in range(length))
    return tuple(perm)


@cache
def syt_count(lam: Partition) -> int:
    """Number of standard Young tableaux (hook length formula)."""
    if not lam:
        return 1
    conj = conjugate(lam)
    num = factorial(sum(lam))
    for i in range(len(lam)):
        for jj in range(lam[i]):
            num //= lam[i] - jj + conj[jj] - i - 1
    return num


@cache
def ssyt_count(lam: Partition, n: int) -> int:
    """Number of semistandard tableaux with entries <= n (hook content formula)."""
    if not lam:
        return 1
    if len(lam) > n:
        return 0
    conj = conjugate(lam)
    val = Fraction(1)
    for i in range(len(lam)):
        for jj in range(lam[i]):
            hook = lam[i] - jj + conj[jj] - i - 1
            val *= Fraction(n + jj - i, hook)
    assert val.denominator == 1
    return int(val)

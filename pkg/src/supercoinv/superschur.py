"""Schur, skew Schur, and super Schur polynomials in the character alphabets.

QUPoly is an ordinary commuting polynomial in q_1..q_k, u_1..u_j with integer
coefficients; the u variables track fermionic degrees but commute here.
Schur polynomials are produced by semistandard-tableau enumeration and every
shape/alphabet pair is cross-checked once against a Jacobi-Trudi determinant
(two independent constructions guard against indexing and sign bugs in
everything built on top).
"""

from __future__ import annotations

from functools import cache
from itertools import permutations

from . import exactla
from .qcombinat import Partition, conjugate, contains, in_Pkjn, partitions_of

__all__ = [
    "QUPoly",
    "NotExpressible",
    "schur_poly",
    "skew_schur_poly",
    "super_schur",
    "specialize",
    "expand_super_schur",
    "super_cauchy_check",
    "CauchyResult",
    "expansion_to_json",
    "expansion_from_json",
]


class NotExpressible(ValueError):
    """A polynomial admits no expansion in the requested super Schur basis."""


class QUPoly:
    """Sparse integer polynomial in k+j commuting variables.

    Exponent keys are tuples of length k+j: the first k slots are the q
    alphabet, the remaining j slots the u alphabet.  Instances are immutable
    by convention.
    """

    __slots__ = ("k", "j", "coeffs")

    def __init__(self, k: int, j: int, coeffs=None):
        self.k = k
        self.j = j
        data = {}
        nv = k + j
        for e, c in (coeffs or {}).items():
            if len(e) != nv or any(x < 0 for x in e):
                raise ValueError(f"bad exponent {e} for {nv} variables")
            if c:
                data[e] = c
        self.coeffs = data

    @property
    def nvars(self) -> int:
        return self.k + self.j

    @classmethod
    def zero(cls, k: int, j: int) -> "QUPoly":
        return cls(k, j)

    @classmethod
    def one(cls, k: int, j: int) -> "QUPoly":
        return cls(k, j, {(0,) * (k + j): 1})

    @classmethod
    def variable(cls, k: int, j: int, idx: int) -> "QUPoly":
        e = [0] * (k + j)
        e[idx] = 1
        return cls(k, j, {tuple(e): 1})

    @classmethod
    def monomial(cls, k: int, j: int, exponents, coeff: int = 1) -> "QUPoly":
        return cls(k, j, {tuple(exponents): coeff})

    def _check_context(self, other: "QUPoly"):
        if (self.k, self.j) != (other.k, other.j):
            raise ValueError(f"alphabet mismatch ({self.k},{self.j}) vs ({other.k},{other.j})")

    def __add__(self, other: "QUPoly") -> "QUPoly":
        self._check_context(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return QUPoly(self.k, self.j, out)

    def __neg__(self) -> "QUPoly":
        return QUPoly(self.k, self.j, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: "QUPoly") -> "QUPoly":
        return self + (-other)

    def __mul__(self, other: "QUPoly") -> "QUPoly":
        self._check_context(other)
        out: dict[tuple, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return QUPoly(self.k, self.j, out)

    def scale(self, c: int) -> "QUPoly":
        return QUPoly(self.k, self.j, {e: c * v for e, v in self.coeffs.items()})

    def is_zero(self) -> bool:
        return not self.coeffs

    def total_degree(self) -> int:
        return max((sum(e) for e in self.coeffs), default=0)

    def homogeneous_component(self, d: int) -> "QUPoly":
        return QUPoly(self.k, self.j, {e: c for e, c in self.coeffs.items() if sum(e) == d})

    def coeff(self, exponents) -> int:
        return self.coeffs.get(tuple(exponents), 0)

    def evaluate(self, values):
        """Exact evaluation at a full assignment of numeric values."""
        if len(values) != self.nvars:
            raise ValueError("need one value per variable")
        total = 0
        for e, c in self.coeffs.items():
            term = c
            for x, m in zip(values, e):
                if m:
                    term *= x**m
            total += term
        return total

    def swap_vars(self, i: int, jdx: int) -> "QUPoly":
        out = {}
        for e, c in self.coeffs.items():
            le = list(e)
            le[i], le[jdx] = le[jdx], le[i]
            out[tuple(le)] = c
        return QUPoly(self.k, self.j, out)

    def is_symmetric(self) -> bool:
        """Invariance under adjacent transpositions within each alphabet block.

        Transpositions generate the full symmetric groups on the blocks, so
        this is a complete symmetry test despite touching only k+j-2 swaps.
        """
        for i in range(self.k - 1):
            if self.swap_vars(i, i + 1).coeffs != self.coeffs:
                return False
        for c in range(self.j - 1):
            if self.swap_vars(self.k + c, self.k + c + 1).coeffs != self.coeffs:
                return False
        return True

    def reindex(self, k2: int, j2: int, qshift: int = 0, ushift: int = 0) -> "QUPoly":
        """Embed into a (k2, j2) alphabet, mapping q_i -> q_(i+qshift) etc."""
        if self.k + qshift > k2 or self.j + ushift > j2:
            raise ValueError("target alphabet too small")
        out = {}
        for e, c in self.coeffs.items():
            ne = [0] * (k2 + j2)
            for i in range(self.k):
                ne[i + qshift] = e[i]
            for i in range(self.j):
                ne[k2 + i + ushift] = e[self.k + i]
            out[tuple(ne)] = c
        return QUPoly(k2, j2, out)

    def drop_vars(self, q_keep: int, u_keep: int) -> "QUPoly":
        """Shrink to the first q_keep / u_keep variables; the rest must be unused."""
        out = {}
        for e, c in self.coeffs.items():
            if any(e[i] for i in range(q_keep, self.k)):
                raise ValueError("dropped q variable still occurs")
            if any(e[self.k + i] for i in range(u_keep, self.j)):
                raise ValueError("dropped u variable still occurs")
            out[e[:q_keep] + e[self.k : self.k + u_keep]] = c
        return QUPoly(q_keep, u_keep, out)

    def variable_names(self) -> list[str]:
        qn = ["q"] if self.k == 1 else (["q", "t"] if self.k == 2 else [f"q{i+1}" for i in range(self.k)])
        un = ["u"] if self.j == 1 else (["u", "v"] if self.j == 2 else [f"u{i+1}" for i in range(self.j)])
        return qn + un

    def pretty(self) -> str:
        if not self.coeffs:
            return "0"
        names = self.variable_names()
        parts = []
        for e in sorted(self.coeffs, key=lambda e: (sum(e), tuple(-x for x in e))):
            c = self.coeffs[e]
            factors = []
            for name, m in zip(names, e):
                if m == 1:
                    factors.append(name)
                elif m > 1:
                    factors.append(f"{name}^{m}")
            body = "".join(factors)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c}{body}")
        return " + ".join(parts).replace("+ -", "- ")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QUPoly)
            and (self.k, self.j) == (other.k, other.j)
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.k, self.j, frozenset(self.coeffs.items())))

    def __repr__(self) -> str:
        return f"QUPoly(k={self.k}, j={self.j}, {self.pretty()})"

    def to_json(self) -> list:
        items = sorted(self.coeffs.items())
        return [{"e": list(e), "c": str(c)} for e, c in items]

    @classmethod
    def from_json(cls, k: int, j: int, data) -> "QUPoly":
        return cls(k, j, {tuple(rec["e"]): int(rec["c"]) for rec in data})


# ---------------------------------------------------------------------------
# tableau enumeration


def _row_fillings(length: int, lo_bounds, nvars: int):
    """Weakly increasing rows with entries in 1..nvars, entry t > lo_bounds[t]."""
    if length == 0:
        yield ()
        return

    def rec(pos: int, prev: int, acc: list):
        if pos == length:
            yield tuple(acc)
            return
        for v in range(max(prev, lo_bounds[pos] + 1), nvars + 1):
            acc.append(v)
            yield from rec(pos + 1, v, acc)
            acc.pop()

    yield from rec(0, 1, [])


def _skew_tableau_weights(lam: Partition, nu: Partition, nvars: int) -> tuple:
    """Exponent vector (one per semistandard filling) of the shape lam/nu."""
    lam = tuple(lam)
    nu = tuple(nu) + (0,) * (len(lam) - len(nu))
    weights = []

    def rec(row_idx: int, prev_row: tuple, prev_nu: int, weight: list):
        if row_idx == len(lam):
            weights.append(tuple(weight))
            return
        length = lam[row_idx] - nu[row_idx]
        # lower bounds come from the cell directly above (0 when that cell
        # is outside the skew shape)
        lo = []
        for t in range(length):
            col = nu[row_idx] + t
            if row_idx > 0 and prev_nu <= col < prev_nu + len(prev_row):
                lo.append(prev_row[col - prev_nu])
            else:
                lo.append(0)
        for row in _row_fillings(length, lo, nvars):
            for v in row:
                weight[v - 1] += 1
            rec(row_idx + 1, row, nu[row_idx], weight)
            for v in row:
                weight[v - 1] -= 1

    rec(0, (), 0, [0] * nvars)
    return tuple(weights)


@cache
def _complete_homogeneous(r: int, nvars: int) -> dict:
    """Weight dict of h_r in nvars variables."""
    if r < 0:
        return {}
    if r == 0:
        return {(0,) * nvars: 1}
    out: dict[tuple, int] = {}
    # h_r(x_1..x_m) = sum over x_m^a * h_(r-a)(x_1..x_(m-1))
    if nvars == 0:
        return {}
    for a in range(r + 1):
        for e, c in _complete_homogeneous(r - a, nvars - 1).items():
            out[e + (a,)] = out.get(e + (a,), 0) + c
    return out


def _wmul(a: dict, b: dict) -> dict:
    out: dict[tuple, int] = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _jacobi_trudi(lam: Partition, nvars: int) -> dict:
    """Weight dict of s_lam via det(h_(lam_i - i + j))."""
    ell = len(lam)
    if ell == 0:
        return {(0,) * nvars: 1}
    out: dict[tuple, int] = {}
    for perm in permutations(range(ell)):
        sign = 1
        for a in range(ell):
            for b in range(a + 1, ell):
                if perm[a] > perm[b]:
                    sign = -sign
        prod = {(0,) * nvars: sign}
        for i in range(ell):
            r = lam[i] - i + perm[i]
            h = _complete_homogeneous(r, nvars)
            if not h:
                prod = {}
                break
            prod = _wmul(prod, h)
        for e, c in prod.items():
            out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c}


@cache
def _schur_weights(lam: Partition, nvars: int) -> tuple:
    """SSYT weights of s_lam, verified against the Jacobi-Trudi determinant."""
    weights = _skew_tableau_weights(lam, (), nvars)
    tableau_dict: dict[tuple, int] = {}
    for w in weights:
        tableau_dict[w] = tableau_dict.get(w, 0) + 1
    jt = _jacobi_trudi(lam, nvars)
    if tableau_dict != jt:
        raise AssertionError(f"tableau sum and Jacobi-Trudi disagree for {lam} in {nvars} vars")
    return weights


@cache
def _skew_weights(lam: Partition, nu: Partition, nvars: int) -> tuple:
    return _skew_tableau_weights(lam, nu, nvars)


def _weights_to_qupoly(weights, slots, k: int, j: int) -> QUPoly:
    nv = k + j
    out: dict[tuple, int] = {}
    for w in weights:
        e = [0] * nv
        for slot, m in zip(slots, w):
            e[slot] += m
        te = tuple(e)
        out[te] = out.get(te, 0) + 1
    return QUPoly(k, j, out)


def schur_poly(lam: Partition, slots, k: int, j: int) -> QUPoly:
    """Schur polynomial of shape lam in the variables named by slot indices.

    Returns zero when lam has more rows than variables.
    """
    lam = tuple(lam)
    slots = list(slots)
    if len(lam) > len(slots):
        return QUPoly.zero(k, j)
    return _weights_to_qupoly(_schur_weights(lam, len(slots)), slots, k, j)


def skew_schur_poly(lam: Partition, nu: Partition, slots, k: int, j: int) -> QUPoly:
    """Skew Schur polynomial of lam/nu; requires nu ⊆ lam."""
    lam, nu = tuple(lam), tuple(nu)
    if not contains(lam, nu):
        raise ValueError(f"{nu} is not contained in {lam}")
    slots = list(slots)
    return _weights_to_qupoly(_skew_weights(lam, nu, len(slots)), slots, k, j)


@cache
def _subpartitions(lam: Partition) -> tuple:
    """All partitions nu ⊆ lam, each exactly once."""
    lam = tuple(lam)
    out = []

    def rec(i: int, prev: int, acc: list):
        out.append(tuple(acc))
        if i == len(lam):
            return
        for v in range(1, min(lam[i], prev) + 1):
            acc.append(v)
            rec(i + 1, v, acc)
            acc.pop()

    rec(0, lam[0] if lam else 0, [])
    return tuple(out)


@cache
def super_schur(lam: Partition, k: int, j: int) -> QUPoly:
    """Super Schur polynomial: sum over nu ⊆ lam of s_nu(q) * s_(lam'/nu')(u).

    Vanishes exactly when lam has more than j columns past its first k rows
    (the hook-bound condition).
    """
    lam = tuple(lam)
    lamc = conjugate(lam)
    qslots = list(range(k))
    uslots = list(range(k, k + j))
    total = QUPoly.zero(k, j)
    for nu in _subpartitions(lam):
        if len(nu) > k:
            continue
        qpart = schur_poly(nu, qslots, k, j)
        if qpart.is_zero():
            continue
        upart = skew_schur_poly(lamc, conjugate(nu), uslots, k, j)
        if upart.is_zero():
            continue
        total = total + qpart * upart
    return total


def specialize(poly: QUPoly, assignment: dict) -> QUPoly:
    """Substitute variables: idx -> None (set to 0) or (target_idx, sign).

    Targets must not themselves be substituted.  The result stays in the same
    alphabet; substituted variables simply no longer occur.
    """
    for src, tgt in assignment.items():
        if not 0 <= src < poly.nvars:
            raise ValueError(f"variable index {src} out of range")
        if tgt is not None:
            ti, sign = tgt
            if ti in assignment:
                raise ValueError("substitution target is itself substituted")
            if sign not in (1, -1):
                raise ValueError("sign must be +1 or -1")
    out: dict[tuple, int] = {}
    for e, c in poly.coeffs.items():
        ne = list(e)
        coeff = c
        dead = False
        for src, tgt in assignment.items():
            m = ne[src]
            if not m:
                continue
            if tgt is None:
                dead = True
                break
            ti, sign = tgt
            ne[src] = 0
            ne[ti] += m
            if sign < 0 and m % 2:
                coeff = -coeff
        if dead:
            continue
        te = tuple(ne)
        out[te] = out.get(te, 0) + coeff
    return QUPoly(poly.k, poly.j, out)


def expansion_shapes(k: int, j: int, n: int, degree: int) -> list[Partition]:
    """Index set of the degree-d super Schur basis: partitions in P(k,j,n)."""
    return [lam for lam in partitions_of(degree) if in_Pkjn(lam, k, j, n)]


def expand_super_schur(
    poly: QUPoly, k: int, j: int, n: int, degree_bound: int | None = None
) -> dict[Partition, int]:
    """Unique expansion of a symmetric polynomial in the super Schur basis.

    Solves one exact linear system per total degree in monomial coordinates.
    Raises NotExpressible when no expansion over P(k,j,n) exists and
    ValueError when the polynomial is not symmetric in each alphabet or a
    coefficient fails to be an integer.
    """
    if (poly.k, poly.j) != (k, j):
        raise ValueError("alphabet mismatch")
    if not poly.is_symmetric():
        raise ValueError("polynomial is not symmetric in the q and u alphabets")
    maxdeg = poly.total_degree()
    if degree_bound is None:
        degree_bound = maxdeg
    if maxdeg > degree_bound:
        raise ValueError(f"degree {maxdeg} exceeds bound {degree_bound}")
    result: dict[Partition, int] = {}
    for d in range(degree_bound + 1):
        component = poly.homogeneous_component(d)
        shapes = expansion_shapes(k, j, n, d)
        if not shapes:
            if not component.is_zero():
                raise NotExpressible(f"degree-{d} component has no basis shapes")
            continue
        basis_polys = [super_schur(lam, k, j) for lam in shapes]
        keys: dict[tuple, int] = {}
        for bp in basis_polys:
            for e in bp.coeffs:
                keys.setdefault(e, len(keys))
        for e in component.coeffs:
            keys.setdefault(e, len(keys))
        cols = [{keys[e]: c for e, c in bp.coeffs.items()} for bp in basis_polys]
        rhs = {keys[e]: c for e, c in component.coeffs.items()}
        try:
            coeffs = exactla.solve_columns(cols, rhs, len(keys))
        except ValueError as exc:
            raise AssertionError(
                f"super Schur basis unexpectedly dependent at degree {d}: {exc}"
            ) from exc
        if coeffs is None:
            raise NotExpressible(f"degree-{d} component is outside the super Schur span")
        for lam, c in zip(shapes, coeffs):
            if c:
                if c != int(c):
                    raise ValueError(f"non-integral coefficient {c} at {lam}")
                result[lam] = int(c)
    return result


def expansion_to_json(expansion: dict) -> list:
    """Serialize a super Schur expansion as {"lambda", "coeff"} records."""
    from .qcombinat import partition_sort_key

    return [
        {"lambda": list(lam), "coeff": expansion[lam]}
        for lam in sorted(expansion, key=partition_sort_key)
        if expansion[lam]
    ]


def expansion_from_json(data) -> dict:
    return {tuple(rec["lambda"]): int(rec["coeff"]) for rec in data}


class CauchyResult:
    """Outcome of the truncated super Cauchy comparison."""

    __slots__ = ("passed", "first_failure")

    def __init__(self, passed: bool, first_failure: int | None):
        self.passed = passed
        self.first_failure = first_failure

    def __bool__(self) -> bool:
        return self.passed

    def __repr__(self) -> str:
        if self.passed:
            return "CauchyResult(pass)"
        return f"CauchyResult(fail at degree {self.first_failure})"


def super_cauchy_check(k: int, j: int, n: int, degree: int) -> CauchyResult:
    """Degree-by-degree check of the truncated super Cauchy identity.

    Expands prod_i [ prod_a (1 - q_a z_i)^-1 * prod_c (1 + u_c z_i) ] in an
    auxiliary n-letter alphabet z up to the given total z-degree and compares
    with sum over P(k,j,n) of s_lam(q/u) s_lam(z).
    """
    if degree < 0:
        raise ValueError("degree bound must be nonnegative")
    zero = QUPoly.zero(k, j)
    lhs: dict[tuple, QUPoly] = {(0,) * n: QUPoly.one(k, j)}

    def mul_factor(series, terms):
        # terms: list of (z-exponent increment at position i, QUPoly factor)
        out: dict[tuple, QUPoly] = {}
        for ze, coeff in series.items():
            room = degree - sum(ze)
            for (pos, m), f in terms:
                if m > room:
                    continue
                ne = list(ze)
                ne[pos] += m
                te = tuple(ne)
                cur = out.get(te)
                add = coeff * f
                out[te] = add if cur is None else cur + add
        return {e: c for e, c in out.items() if not c.is_zero()}

    for i in range(n):
        for a in range(k):
            geom = [((i, m), QUPoly.monomial(k, j, _unit(k + j, a, m))) for m in range(degree + 1)]
            lhs = mul_factor(lhs, geom)
        for c in range(j):
            fact = [((i, 0), QUPoly.one(k, j)), ((i, 1), QUPoly.variable(k, j, k + c))]
            lhs = mul_factor(lhs, fact)

    rhs: dict[tuple, QUPoly] = {}
    for d in range(degree + 1):
        for lam in expansion_shapes(k, j, n, d):
            squ = super_schur(lam, k, j)
            if squ.is_zero():
                continue
            for w in _schur_weights(lam, n):
                cur = rhs.get(w)
                rhs[w] = squ if cur is None else cur + squ

    first_fail: int | None = None
    for d in range(degree + 1):
        lhs_d = {e: c for e, c in lhs.items() if sum(e) == d}
        rhs_d = {e: c for e, c in rhs.items() if sum(e) == d and not c.is_zero()}
        if lhs_d != rhs_d:
            first_fail = d
            break
    return CauchyResult(first_fail is None, first_fail)


def _unit(nv: int, idx: int, m: int) -> tuple:
    e = [0] * nv
    e[idx] = m
    return tuple(e)

"""Exact sparse linear algebra over the rationals.

Vectors are plain dicts {coordinate: value} with int or Fraction values and no
stored zeros; mixed int/Fraction arithmetic keeps the common all-integer case
fast.  Bases are held in reduced echelon form: every basis vector has value 1
at its own pivot coordinate and value 0 at every other pivot, so membership
coefficients can be read directly off pivot coordinates.  The reduced echelon
basis of a subspace is unique, which makes all results independent of
insertion order.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = [
    "DimensionMismatch",
    "SubspaceNotInvariant",
    "SparseMatrix",
    "SubspaceBasis",
    "span_basis",
    "column_space",
    "solve_columns",
    "restricted_trace",
    "bareiss_rank",
    "modular_rank_profile",
]

# prime used by the optional rank pre-pass; results are always reconfirmed
# with exact arithmetic before being reported
_FILTER_PRIME = 2147483629
# below this many vectors the pre-pass ordering is not worth its own cost
_FILTER_MIN_VECTORS = 512


class DimensionMismatch(ValueError):
    pass


class SubspaceNotInvariant(ValueError):
    pass


def _exact_div(a, b):
    """a / b as int when exact, Fraction otherwise."""
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        return q if r == 0 else Fraction(a, b)
    return Fraction(a) / Fraction(b)


class SparseMatrix:
    """Immutable sparse matrix with rational entries."""

    __slots__ = ("nrows", "ncols", "entries")

    def __init__(self, nrows: int, ncols: int, entries=None):
        self.nrows = nrows
        self.ncols = ncols
        data = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < nrows and 0 <= c < ncols):
                raise DimensionMismatch(f"entry ({r},{c}) outside {nrows}x{ncols}")
            if v:
                data[(r, c)] = v
        self.entries = data

    @classmethod
    def from_dense(cls, rows) -> "SparseMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        entries = {}
        for r, row in enumerate(rows):
            for c, v in enumerate(row):
                if v:
                    entries[(r, c)] = v
        return cls(nrows, ncols, entries)

    def columns(self) -> list[dict]:
        cols: list[dict] = [dict() for _ in range(self.ncols)]
        for (r, c), v in self.entries.items():
            cols[c][r] = v
        return cols

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(
            self.ncols, self.nrows, {(c, r): v for (r, c), v in self.entries.items()}
        )

    def rank(self) -> int:
        return column_space(self).rank


class SubspaceBasis:
    """Reduced-echelon basis of a subspace of Q^dim.

    Rows are stored keyed by pivot coordinate; each row has value 1 at its
    pivot and value 0 at every other pivot.  An occurrence index (coordinate
    -> set of pivots whose row touches it) makes back-substitution linear in
    the rows actually affected instead of scanning the whole basis.  Treat
    instances as frozen once built: ``insert`` is for construction only.
    """

    __slots__ = ("dim", "_rows", "_occ", "_sorted")

    def __init__(self, dim: int):
        self.dim = dim
        self._rows: dict[int, dict] = {}
        self._occ: dict[int, set] = {}
        self._sorted: list[int] | None = []

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> list[int]:
        if self._sorted is None:
            self._sorted = sorted(self._rows)
        return self._sorted

    @property
    def vectors(self) -> list[dict]:
        return [self._rows[p] for p in self.pivots]

    def row(self, pivot: int) -> dict:
        return self._rows[pivot]

    def is_full(self) -> bool:
        return len(self._rows) == self.dim

    def reduce(self, vec: dict) -> dict:
        """Residual of vec after eliminating all pivot coordinates.

        Eliminating a pivot only introduces non-pivot coordinates (reduced
        echelon form), so one pass over the initial support suffices.
        """
        w = dict(vec)
        rows = self._rows
        hits = [i for i in w if i in rows]
        for p in hits:
            c = w.pop(p, 0)
            if not c:
                continue
            for i, v in rows[p].items():
                if i == p:
                    continue
                nv = w.get(i, 0) - c * v
                if nv:
                    w[i] = nv
                else:
                    w.pop(i, None)
        return w

    def contains(self, vec: dict) -> bool:
        for i in vec:
            if not 0 <= i < self.dim:
                raise DimensionMismatch(f"coordinate {i} outside ambient dimension {self.dim}")
        return not self.reduce(vec)

    def coefficients(self, vec: dict):
        """Coordinates of vec in this basis, or None when vec is outside.

        In reduced echelon form the coefficient of basis vector i is simply
        vec[pivots[i]], provided the residual vanishes.
        """
        if not self.contains(vec):
            return None
        return [vec.get(p, 0) for p in self.pivots]

    def insert(self, vec: dict) -> bool:
        """Add vec to the span; returns False when vec was already contained."""
        w = self.reduce(vec)
        if not w:
            return False
        p = min(w)
        c = w.pop(p)
        if c != 1:
            w = {i: _exact_div(v, c) for i, v in w.items()}
        rows = self._rows
        occ = self._occ
        # keep reduced form: clear the new pivot from the rows that carry it
        for q in occ.pop(p, ()):
            other = rows[q]
            cv = other.pop(p)
            for i, v in w.items():
                nv = other.get(i, 0) - cv * v
                if nv:
                    if i not in other:
                        occ.setdefault(i, set()).add(q)
                    other[i] = nv
                else:
                    other.pop(i, None)
                    occ[i].discard(q)
        w[p] = 1
        rows[p] = w
        for i in w:
            if i != p:
                occ.setdefault(i, set()).add(p)
        self._sorted = None
        return True

    @classmethod
    def from_rows(cls, dim: int, rows: dict) -> "SubspaceBasis":
        """Rebuild from pivot -> row dicts already in reduced echelon form."""
        basis = cls(dim)
        for p, row in rows.items():
            if row.get(p) != 1:
                raise ValueError(f"row for pivot {p} lacks a unit pivot")
            basis._rows[p] = dict(row)
        for p, row in basis._rows.items():
            for i in row:
                if i != p:
                    if i in basis._rows:
                        raise ValueError("row touches another pivot; not reduced")
                    basis._occ.setdefault(i, set()).add(p)
        basis._sorted = None
        return basis


def span_basis(vectors, dim: int, prefilter: bool | None = None) -> SubspaceBasis:
    """Reduced-echelon basis of the span of the given sparse vectors.

    When ``prefilter`` is enabled (default: automatic by size), a modular rank
    profile picks likely-independent vectors to insert first.  The profile is
    only an ordering hint; every vector is still reduced exactly, and the
    reduced echelon output is unique regardless of order.
    """
    vectors = list(vectors)
    basis = SubspaceBasis(dim)
    if prefilter is None:
        prefilter = len(vectors) >= _FILTER_MIN_VECTORS
    order = range(len(vectors))
    if prefilter and vectors:
        profile = modular_rank_profile(vectors, _FILTER_PRIME)
        chosen = set(profile)
        order = list(profile) + [i for i in range(len(vectors)) if i not in chosen]
    for i in order:
        basis.insert(vectors[i])
    return basis


def column_space(matrix: SparseMatrix, prefilter: bool | None = None) -> SubspaceBasis:
    """Reduced-echelon basis of the column space; rank == basis size."""
    return span_basis(matrix.columns(), matrix.nrows, prefilter=prefilter)


def modular_rank_profile(vectors, p: int) -> list[int]:
    """Indices of a maximal mod-p independent subset, in discovery order.

    Fast filter only: the mod-p rank is a lower bound for the rational rank,
    so callers must reconfirm exactly (span_basis does).
    """
    pivrow: dict[int, dict] = {}
    profile = []
    for idx, vec in enumerate(vectors):
        w = {}
        for i, v in vec.items():
            if isinstance(v, Fraction):
                r = (v.numerator * pow(v.denominator, -1, p)) % p
            else:
                r = v % p
            if r:
                w[i] = r
        hits = [i for i in w if i in pivrow]
        for q in hits:
            c = w.pop(q, 0)
            if not c:
                continue
            for i, v in pivrow[q].items():
                if i == q:
                    continue
                nv = (w.get(i, 0) - c * v) % p
                if nv:
                    w[i] = nv
                else:
                    w.pop(i, None)
        if not w:
            continue
        q = min(w)
        c = w.pop(q)
        cinv = pow(c, -1, p)
        row = {i: (v * cinv) % p for i, v in w.items()}
        row[q] = 1
        for other in pivrow.values():
            cv = other.pop(q, 0)
            if cv:
                for i, v in row.items():
                    if i == q:
                        continue
                    nv = (other.get(i, 0) - cv * v) % p
                    if nv:
                        other[i] = nv
                    else:
                        other.pop(i, None)
        pivrow[q] = row
        profile.append(idx)
    return profile


def solve_columns(columns, rhs: dict, dim: int):
    """Exact solution c of  sum_i c[i] * columns[i] == rhs,  or None.

    Raises ValueError when the columns are linearly dependent (the expansion
    problems this serves are guaranteed unique solutions).
    """
    ncols = len(columns)
    basis = SubspaceBasis(dim + ncols)
    for idx, col in enumerate(columns):
        tagged = dict(col)
        tagged[dim + idx] = 1
        basis.insert(tagged)
    # a column whose pivot landed in the tag block is a dependency relation
    for p in basis.pivots:
        if p >= dim:
            raise ValueError("dependent columns detected")
    resid = basis.reduce(dict(rhs))
    if any(i < dim for i in resid):
        return None
    coeffs = [0] * ncols
    for i, v in resid.items():
        coeffs[i - dim] = -v
    return coeffs


def restricted_trace(basis: SubspaceBasis, apply_map, check: bool = True):
    """Trace of a linear map restricted to span(basis).

    ``apply_map`` sends a sparse vector to its image.  With ``check`` the image
    of every basis vector is verified to lie in the span (raising
    SubspaceNotInvariant otherwise); callers may disable the verification when
    invariance is already established structurally.
    """
    total = 0
    for p, row in zip(basis.pivots, basis.vectors):
        img = apply_map(row)
        if check and basis.reduce(img):
            raise SubspaceNotInvariant(f"image of basis vector with pivot {p} leaves the subspace")
        total += img.get(p, 0)
    return total


def bareiss_rank(rows) -> int:
    """Rank via dense fraction-free (Bareiss) elimination; cross-check oracle.

    Accepts any rational dense matrix; rows are scaled to integers first.
    """
    m = []
    for row in rows:
        scaled = [Fraction(v) for v in row]
        lcm = 1
        for v in scaled:
            if v.denominator != 1:
                g = _gcd(lcm, v.denominator)
                lcm = lcm // g * v.denominator
        m.append([int(v * lcm) for v in scaled])
    nr = len(m)
    nc = len(m[0]) if nr else 0
    rank = 0
    prev = 1
    row = 0
    for col in range(nc):
        piv = None
        for r in range(row, nr):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        for r in range(row + 1, nr):
            for c in range(col + 1, nc):
                m[r][c] = (m[row][col] * m[r][c] - m[r][col] * m[row][c]) // prev
            m[r][col] = 0
        prev = m[row][col]
        rank += 1
        row += 1
        if row == nr:
            break
    return rank


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a

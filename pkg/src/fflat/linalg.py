"""Exact linear algebra over K = F_q(T) and normal forms over F_q[T].

Everything is dense and cubic; matrices at desk scale are tiny and the
cost lives in the scalar arithmetic. Bases are stored as columns
throughout, so the normal forms act by column operations (right
multiplication), except the Smith form which tracks both sides.

The Hermite form here is the column-style echelon: pivot rows strictly
increase left to right, pivots are monic, entries to the right of a pivot
in its row are zero, entries to its left are reduced (degree < pivot),
zero columns trail. That form is unique for the column module, so module
equality is Hermite-form equality.
"""

from dataclasses import dataclass

from .algebra import Poly, RatFunc, poly_lcm
from .errors import (
    DomainError,
    NotPrimitive,
    RankError,
    ShapeError,
    SingularMatrix,
)


class Matrix:
    """Immutable dense matrix over K with RatFunc entries."""

    __slots__ = ("field", "rows")

    def __init__(self, field, rows):
        rows = tuple(tuple(self._coerce(field, e) for e in r) for r in rows)
        if not rows or not rows[0]:
            raise ShapeError("matrix dimensions must be positive")
        m = len(rows[0])
        if any(len(r) != m for r in rows):
            raise ShapeError("ragged rows")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @staticmethod
    def _coerce(field, e):
        if isinstance(e, RatFunc):
            if e.field != field:
                raise ValueError("mixed fields")
            return e
        if isinstance(e, Poly):
            if e.field != field:
                raise ValueError("mixed fields")
            return RatFunc.from_poly(e)
        return field.rf(e)

    @classmethod
    def identity(cls, field, n):
        one, zero = field.one_rf(), field.zero_rf()
        return cls(field, [[one if i == j else zero for j in range(n)]
                           for i in range(n)])

    @classmethod
    def from_columns(cls, field, columns):
        cols = [tuple(cls._coerce(field, e) for e in c) for c in columns]
        if not cols:
            raise ShapeError("no columns")
        n = len(cols[0])
        if any(len(c) != n for c in cols):
            raise ShapeError("ragged columns")
        return cls(field, [[cols[j][i] for j in range(len(cols))]
                           for i in range(n)])

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0])

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def is_square(self):
        return self.nrows == self.ncols

    def entry(self, i, j):
        return self.rows[i][j]

    def column(self, j):
        return tuple(r[j] for r in self.rows)

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self):
        return Matrix(self.field, zip(*self.rows))

    def is_integral(self):
        """All entries in R_nu = F_q[T]."""
        return all(e.is_integral for r in self.rows for e in r)

    def in_valuation_ring(self):
        """All entries in O_nu (non-negative valuation)."""
        return all(e.in_valuation_ring() for r in self.rows for e in r)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
            bcols = other.columns()
            return Matrix(self.field,
                          [[_dot(r, c) for c in bcols] for r in self.rows])
        return NotImplemented

    def apply(self, vec):
        """Matrix-vector product A @ x."""
        vec = tuple(vec)
        if len(vec) != self.ncols:
            raise ShapeError("vector length mismatch")
        return tuple(_dot(r, vec) for r in self.rows)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.rows == other.rows

    def __hash__(self):
        return hash((self.field, self.rows))

    def __repr__(self):
        body = "; ".join(", ".join(repr(e) for e in r) for r in self.rows)
        return f"[{body}]"


def _dot(u, v):
    acc = None
    for a, b in zip(u, v):
        if a.is_zero or b.is_zero:
            continue
        t = a * b
        acc = t if acc is None else acc + t
    if acc is None:
        return u[0].field.zero_rf()
    return acc


# -- vector helpers (tuples of RatFunc)


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, v):
    return tuple(c * a for a in v)


def vec_is_zero(v):
    return all(a.is_zero for a in v)


def zero_vector(field, n):
    z = field.zero_rf()
    return (z,) * n


def basis_vector(field, n, i):
    """Standard basis vector e_i (0-indexed)."""
    z, one = field.zero_rf(), field.one_rf()
    return tuple(one if j == i else z for j in range(n))


# ---------------------------------------------------------------------------
# Gaussian elimination over K


def mat_det(a):
    if not a.is_square:
        raise ShapeError("determinant of a non-square matrix")
    n = a.nrows
    field = a.field
    rows = [list(r) for r in a.rows]
    sign = 1
    det = field.one_rf()
    for c in range(n):
        pivot = next((i for i in range(c, n) if not rows[i][c].is_zero), None)
        if pivot is None:
            return field.zero_rf()
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            sign = -sign
        piv = rows[c][c]
        det = det * piv
        inv = piv.reciprocal()
        for i in range(c + 1, n):
            f = rows[i][c]
            if f.is_zero:
                continue
            f = f * inv
            for j in range(c, n):
                rows[i][j] = rows[i][j] - f * rows[c][j]
    if sign < 0:
        det = -det
    return det


def solve(a, b):
    """Solve A x = b for square invertible A; exact."""
    if not a.is_square:
        raise ShapeError("solve needs a square matrix")
    n = a.nrows
    b = tuple(b)
    if len(b) != n:
        raise ShapeError("vector length mismatch")
    field = a.field
    rows = [list(r) + [b[i]] for i, r in enumerate(a.rows)]
    for c in range(n):
        pivot = next((i for i in range(c, n) if not rows[i][c].is_zero), None)
        if pivot is None:
            raise SingularMatrix("matrix is singular")
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
        inv = rows[c][c].reciprocal()
        rows[c] = [e * inv for e in rows[c]]
        for i in range(n):
            if i == c:
                continue
            f = rows[i][c]
            if f.is_zero:
                continue
            rows[i] = [e - f * p for e, p in zip(rows[i], rows[c])]
    return tuple(rows[i][n] for i in range(n))


def inverse(a):
    if not a.is_square:
        raise ShapeError("inverse of a non-square matrix")
    n = a.nrows
    field = a.field
    one, zero = field.one_rf(), field.zero_rf()
    rows = [list(r) + [one if i == j else zero for j in range(n)]
            for i, r in enumerate(a.rows)]
    for c in range(n):
        pivot = next((i for i in range(c, n) if not rows[i][c].is_zero), None)
        if pivot is None:
            raise SingularMatrix("matrix is singular")
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
        inv = rows[c][c].reciprocal()
        rows[c] = [e * inv for e in rows[c]]
        for i in range(n):
            if i == c:
                continue
            f = rows[i][c]
            if f.is_zero:
                continue
            rows[i] = [e - f * p for e, p in zip(rows[i], rows[c])]
    return Matrix(field, [r[n:] for r in rows])


def rank(a):
    rows = [list(r) for r in a.rows]
    n, m = len(rows), len(rows[0])
    r = 0
    for c in range(m):
        pivot = next((i for i in range(r, n) if not rows[i][c].is_zero), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c].reciprocal()
        rows[r] = [e * inv for e in rows[r]]
        for i in range(r + 1, n):
            f = rows[i][c]
            if not f.is_zero:
                rows[i] = [e - f * p for e, p in zip(rows[i], rows[r])]
        r += 1
        if r == n:
            break
    return r


def solve_in_span(a, b):
    """Coordinates x with A x = b for full-column-rank A, or None.

    A is n x k with k <= n; returns a k-tuple when b lies in the column
    span and None otherwise.
    """
    n, k = a.shape
    b = tuple(b)
    if len(b) != n:
        raise ShapeError("vector length mismatch")
    rows = [list(r) + [b[i]] for i, r in enumerate(a.rows)]
    pivots = []
    r = 0
    for c in range(k):
        pivot = next((i for i in range(r, n) if not rows[i][c].is_zero), None)
        if pivot is None:
            raise RankError("columns are linearly dependent")
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c].reciprocal()
        rows[r] = [e * inv for e in rows[r]]
        for i in range(n):
            if i != r and not rows[i][c].is_zero:
                f = rows[i][c]
                rows[i] = [e - f * p for e, p in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    for i in range(r, n):
        if not rows[i][k].is_zero:
            return None
    return tuple(rows[i][k] for i in range(k))


def kernel_basis(a):
    """Basis of the right kernel {x : A x = 0}, deterministic."""
    n, m = a.shape
    field = a.field
    rows = [list(r) for r in a.rows]
    pivots = []
    r = 0
    for c in range(m):
        pivot = next((i for i in range(r, n) if not rows[i][c].is_zero), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c].reciprocal()
        rows[r] = [e * inv for e in rows[r]]
        for i in range(n):
            if i != r and not rows[i][c].is_zero:
                f = rows[i][c]
                rows[i] = [e - f * p for e, p in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    free = [c for c in range(m) if c not in pivots]
    zero, one = field.zero_rf(), field.one_rf()
    basis = []
    for f in free:
        x = [zero] * m
        x[f] = one
        for idx, c in enumerate(pivots):
            x[c] = -rows[idx][f]
        basis.append(tuple(x))
    return basis


def reduced_column_echelon(field, n, vectors):
    """Canonical reduced column echelon basis of the span of the vectors.

    Pivots are 1 at strictly increasing rows with their rows cleared
    elsewhere; the result depends only on the span.
    """
    cols = [list(v) for v in vectors if not vec_is_zero(v)]
    r = 0
    for row in range(n):
        pivot = next((j for j in range(r, len(cols))
                      if not cols[j][row].is_zero), None)
        if pivot is None:
            continue
        cols[r], cols[pivot] = cols[pivot], cols[r]
        inv = cols[r][row].reciprocal()
        cols[r] = [e * inv for e in cols[r]]
        for j in range(len(cols)):
            if j != r and not cols[j][row].is_zero:
                f = cols[j][row]
                cols[j] = [e - f * p for e, p in zip(cols[j], cols[r])]
        r += 1
    return [tuple(c) for c in cols[:r]]


# ---------------------------------------------------------------------------
# Normal forms over R_nu = F_q[T]


def _poly_columns(a):
    cols = []
    for j in range(a.ncols):
        col = []
        for i in range(a.nrows):
            e = a.rows[i][j]
            if not e.is_integral:
                raise DomainError(f"entry {e!r} is not in F_q[T]")
            col.append(e.num)
        cols.append(col)
    return cols


def _from_poly_columns(field, cols, n):
    return Matrix(field, [[RatFunc.from_poly(cols[j][i])
                           for j in range(len(cols))] for i in range(n)])


def _col_submul(dst, src, f):
    # dst -= f * src, entrywise over Poly
    for i in range(len(dst)):
        if not src[i].is_zero:
            dst[i] = dst[i] - f * src[i]


def hnf(a):
    """Column-style Hermite normal form over F_q[T].

    Returns (H, U) with H = A @ U, U unimodular. Pivot selection is the
    minimal-degree nonzero entry in the working row, ties to the lowest
    column index.
    """
    field = a.field
    n, m = a.shape
    cols = _poly_columns(a)
    ucols = [[Poly.one(field) if i == j else Poly.zero(field) for i in range(m)]
             for j in range(m)]
    r = 0
    for row in range(n):
        if r == m:
            break
        found = False
        while True:
            best = None
            best_deg = None
            for j in range(r, m):
                e = cols[j][row]
                if e.is_zero:
                    continue
                if best is None or e.degree < best_deg:
                    best, best_deg = j, e.degree
            if best is None:
                break
            found = True
            if best != r:
                cols[r], cols[best] = cols[best], cols[r]
                ucols[r], ucols[best] = ucols[best], ucols[r]
            clean = True
            for j in range(r + 1, m):
                e = cols[j][row]
                if e.is_zero:
                    continue
                f = e // cols[r][row]
                _col_submul(cols[j], cols[r], f)
                _col_submul(ucols[j], ucols[r], f)
                if not cols[j][row].is_zero:
                    clean = False
            if clean:
                break
        if not found:
            continue
        piv = cols[r][row]
        if not piv.is_monic:
            c = piv.leading().inverse()
            cols[r] = [e * c for e in cols[r]]
            ucols[r] = [e * c for e in ucols[r]]
        for j in range(r):
            e = cols[j][row]
            if e.is_zero:
                continue
            f = e // cols[r][row]
            if not f.is_zero:
                _col_submul(cols[j], cols[r], f)
                _col_submul(ucols[j], ucols[r], f)
        r += 1
    h = _from_poly_columns(field, cols, n)
    u = _from_poly_columns(field, ucols, m)
    return h, u


def hnf_nonzero_columns(a):
    h, _ = hnf(a)
    cols = h.columns()
    return [c for c in cols if not vec_is_zero(c)]


@dataclass(frozen=True)
class SnfResult:
    """U @ A @ V = D with U, V unimodular over F_q[T] and D diagonal.

    The monic diagonal entries satisfy the divisibility chain
    d_1 | d_2 | ... for the nonzero ones.
    """

    u: Matrix
    d: Matrix
    v: Matrix

    def divisors(self):
        n = min(self.d.nrows, self.d.ncols)
        out = []
        for i in range(n):
            e = self.d.rows[i][i]
            if e.is_zero:
                break
            out.append(e.num)
        return out

    @property
    def rank(self):
        return len(self.divisors())


def snf(a):
    """Smith normal form over F_q[T] with both transformations."""
    field = a.field
    n, m = a.shape
    cols = _poly_columns(a)
    b = [[cols[j][i] for j in range(m)] for i in range(n)]  # row-major
    urows = [[Poly.one(field) if i == j else Poly.zero(field) for j in range(n)]
             for i in range(n)]
    vcols = [[Poly.one(field) if i == j else Poly.zero(field) for i in range(m)]
             for j in range(m)]

    def row_submul(i, k, f):
        for j in range(m):
            if not b[k][j].is_zero:
                b[i][j] = b[i][j] - f * b[k][j]
        for j in range(n):
            if not urows[k][j].is_zero:
                urows[i][j] = urows[i][j] - f * urows[k][j]

    def row_add(i, k):
        for j in range(m):
            b[i][j] = b[i][j] + b[k][j]
        for j in range(n):
            urows[i][j] = urows[i][j] + urows[k][j]

    def col_submul(j, k, f):
        for i in range(n):
            if not b[i][k].is_zero:
                b[i][j] = b[i][j] - f * b[i][k]
        _col_submul(vcols[j], vcols[k], f)

    for t in range(min(n, m)):
        # stage pivot: minimal degree, then lowest row, then lowest column
        best = None
        best_deg = None
        for i in range(t, n):
            for j in range(t, m):
                e = b[i][j]
                if e.is_zero:
                    continue
                if best is None or e.degree < best_deg:
                    best, best_deg = (i, j), e.degree
        if best is None:
            break
        bi, bj = best
        if bi != t:
            b[t], b[bi] = b[bi], b[t]
            urows[t], urows[bi] = urows[bi], urows[t]
        if bj != t:
            for i in range(n):
                b[i][t], b[i][bj] = b[i][bj], b[i][t]
            vcols[t], vcols[bj] = vcols[bj], vcols[t]
        while True:
            restart = False
            for i in range(t + 1, n):
                if b[i][t].is_zero:
                    continue
                f = b[i][t] // b[t][t]
                row_submul(i, t, f)
                if not b[i][t].is_zero:
                    b[t], b[i] = b[i], b[t]
                    urows[t], urows[i] = urows[i], urows[t]
                    restart = True
                    break
            if restart:
                continue
            for j in range(t + 1, m):
                if b[t][j].is_zero:
                    continue
                f = b[t][j] // b[t][t]
                col_submul(j, t, f)
                if not b[t][j].is_zero:
                    for i in range(n):
                        b[i][t], b[i][j] = b[i][j], b[i][t]
                    vcols[t], vcols[j] = vcols[j], vcols[t]
                    restart = True
                    break
            if restart:
                continue
            # row t and column t are clear; enforce divisibility below
            offender = None
            for i in range(t + 1, n):
                for j in range(t + 1, m):
                    if not b[i][j].is_zero and not (b[i][j] % b[t][t]).is_zero:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_add(t, offender)
        piv = b[t][t]
        if not piv.is_zero and not piv.is_monic:
            c = piv.leading().inverse()
            b[t] = [e * c for e in b[t]]
            urows[t] = [e * c for e in urows[t]]
    u = Matrix(field, [[RatFunc.from_poly(e) for e in r] for r in urows])
    d = Matrix(field, [[RatFunc.from_poly(e) for e in r] for r in b])
    v = _from_poly_columns(field, vcols, m)
    return SnfResult(u, d, v)


def saturate(a):
    """Basis of span_K(columns) meet R_nu^n: the primitive closure.

    Requires integral entries and independent columns; the result is the
    first k columns of U^{-1} where U A V = D is the Smith form.
    """
    n, k = a.shape
    res = snf(a)
    if res.rank < k:
        raise RankError("columns are linearly dependent")
    uinv = inverse(res.u)
    return Matrix.from_columns(a.field, uinv.columns()[:k])


def unimodular_complete(p, n):
    """Extend primitive columns to a square unimodular matrix over F_q[T].

    The first columns equal the input; the appended columns are the last
    n - k columns of U^{-1} from the Smith form of the input.
    """
    pn, k = p.shape
    if pn != n:
        raise ShapeError(f"expected {n} rows, got {pn}")
    if k > n:
        raise ShapeError("more columns than the target dimension")
    res = snf(p)
    divisors = res.divisors()
    if len(divisors) < k or any(not d.is_constant for d in divisors):
        raise NotPrimitive("columns do not form a primitive set")
    if k == n:
        return p
    uinv = inverse(res.u)
    cols = p.columns() + uinv.columns()[k:]
    return Matrix.from_columns(p.field, cols)


def clear_denominators(vectors, field):
    """(scaled integral vectors, monic scalar d): scaled = d * original."""
    dens = [e.den for v in vectors for e in v if not e.den.is_one]
    if not dens:
        return [tuple(v) for v in vectors], Poly.one(field)
    d = dens[0]
    for den in dens[1:]:
        d = poly_lcm(d, den)
    dr = RatFunc.from_poly(d)
    return [tuple(e * dr for e in v) for v in vectors], d


def is_unimodular_over_r(a):
    """Square, integral, determinant a nonzero constant."""
    if not a.is_square or not a.is_integral():
        return False
    det = mat_det(a)
    return (not det.is_zero) and det.is_integral and det.num.is_constant

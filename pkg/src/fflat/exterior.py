"""Exterior algebra of K^n with the max norm on Plücker coordinates.

A MultiVec is a sparse grade-i element: a map from strictly increasing
index tuples I in {1..n} (the standard blades e_I) to nonzero RatFunc
coefficients c_I. The norm is max_I |c_I|, returned as an exact QExp.

Two independent wedge routes exist on purpose: wedge_vectors computes
Plücker coordinates as elimination minors of the column matrix, while
wedge products of multivectors combine blades with shuffle signs. Tests
compare the two.
"""

import itertools

from .algebra import BOTTOM, RatFunc, exp_max
from .errors import GradeError, ShapeError


def index_sets(n, i):
    """All strictly increasing i-tuples in {1..n}, lexicographic."""
    return list(itertools.combinations(range(1, n + 1), i))


def shuffle_sign(i_set, j_set):
    """Sign merging e_I ^ e_J into e_{I union J}; 0 when they intersect."""
    if set(i_set) & set(j_set):
        return 0
    inversions = 0
    for a in i_set:
        for b in j_set:
            if a > b:
                inversions += 1
    return -1 if inversions % 2 else 1


def vector_norm_exp(vec):
    """Norm exponent of a plain vector: max over coordinate exponents."""
    return exp_max(c.norm_exp() for c in vec)


class MultiVec:
    """Sparse element of the i-th exterior power of K^n."""

    __slots__ = ("field", "n", "grade", "coords")

    def __init__(self, field, n, grade, coords=()):
        if not 0 <= grade <= n:
            raise GradeError(f"grade {grade} out of range for dimension {n}")
        clean = {}
        items = coords.items() if isinstance(coords, dict) else coords
        for key, val in items:
            key = tuple(key)
            if len(key) != grade or any(not 1 <= t <= n for t in key) \
                    or list(key) != sorted(set(key)):
                raise ValueError(f"bad index set {key} for grade {grade}")
            if not isinstance(val, RatFunc):
                val = field.rf(val)
            if not val.is_zero:
                clean[key] = val
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "grade", grade)
        object.__setattr__(self, "coords", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MultiVec is immutable")

    @classmethod
    def _make(cls, field, n, grade, coords):
        self = cls.__new__(cls)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "grade", grade)
        object.__setattr__(self, "coords", coords)
        return self

    @classmethod
    def zero(cls, field, n, grade):
        return cls._make(field, n, grade, {})

    @classmethod
    def unit(cls, field, n):
        """The empty wedge: grade 0 with coefficient 1."""
        return cls._make(field, n, 0, {(): field.one_rf()})

    @classmethod
    def blade(cls, field, n, indices, coeff=1):
        key = tuple(indices)
        if not isinstance(coeff, RatFunc):
            coeff = field.rf(coeff)
        return cls(field, n, len(key), {key: coeff})

    @classmethod
    def from_vector(cls, field, vec):
        n = len(vec)
        coords = {(i + 1,): c for i, c in enumerate(vec) if not c.is_zero}
        return cls._make(field, n, 1, coords)

    @property
    def is_zero(self):
        return not self.coords

    def coefficient(self, indices):
        return self.coords.get(tuple(indices), self.field.zero_rf())

    def _check(self, other):
        if not isinstance(other, MultiVec):
            raise TypeError("expected a MultiVec")
        if other.field != self.field or other.n != self.n:
            raise ShapeError("mixed ambient spaces")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other.grade != self.grade:
            raise GradeError("grade mismatch in addition")
        coords = dict(self.coords)
        for key, val in other.coords.items():
            cur = coords.get(key)
            s = val if cur is None else cur + val
            if s.is_zero:
                coords.pop(key, None)
            else:
                coords[key] = s
        return MultiVec._make(self.field, self.n, self.grade, coords)

    def __neg__(self):
        return MultiVec._make(self.field, self.n, self.grade,
                              {k: -v for k, v in self.coords.items()})

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, c):
        if not isinstance(c, RatFunc):
            c = self.field.rf(c)
        if c.is_zero:
            return MultiVec.zero(self.field, self.n, self.grade)
        return MultiVec._make(self.field, self.n, self.grade,
                              {k: c * v for k, v in self.coords.items()})

    def __eq__(self, other):
        if not isinstance(other, MultiVec):
            return NotImplemented
        return (self.field == other.field and self.n == other.n
                and self.grade == other.grade and self.coords == other.coords)

    def __hash__(self):
        return hash((self.field, self.n, self.grade,
                     tuple(sorted(self.coords.items()))))

    def __repr__(self):
        if not self.coords:
            return "0"
        parts = []
        for key in sorted(self.coords):
            c = self.coords[key]
            blade = "e_{" + "".join(str(t) for t in key) + "}" if key else "1"
            parts.append(f"({c!r})*{blade}")
        return " + ".join(parts)


def wedge(v, w):
    """Bilinear wedge of multivectors with shuffle signs."""
    v._check(w)
    grade = v.grade + w.grade
    if grade > v.n:
        raise GradeError(f"grade {grade} exceeds dimension {v.n}")
    field = v.field
    coords = {}
    for i_set, a in v.coords.items():
        for j_set, b in w.coords.items():
            sign = shuffle_sign(i_set, j_set)
            if sign == 0:
                continue
            key = tuple(sorted(i_set + j_set))
            term = a * b
            if sign < 0:
                term = -term
            cur = coords.get(key)
            s = term if cur is None else cur + term
            if s.is_zero:
                coords.pop(key, None)
            else:
                coords[key] = s
    return MultiVec._make(field, v.n, grade, coords)


def _minor_det(vectors, rows):
    # elimination determinant of the submatrix with the given rows,
    # columns = the vectors; exact over K
    m = len(vectors)
    field = vectors[0][0].field
    grid = [[vectors[c][r] for c in range(m)] for r in rows]
    sign = 1
    det = field.one_rf()
    for c in range(m):
        pivot = next((i for i in range(c, m) if not grid[i][c].is_zero), None)
        if pivot is None:
            return field.zero_rf()
        if pivot != c:
            grid[c], grid[pivot] = grid[pivot], grid[c]
            sign = -sign
        piv = grid[c][c]
        det = det * piv
        inv = piv.reciprocal()
        for i in range(c + 1, m):
            f = grid[i][c]
            if f.is_zero:
                continue
            f = f * inv
            for j in range(c, m):
                grid[i][j] = grid[i][j] - f * grid[c][j]
    if sign < 0:
        det = -det
    return det


def wedge_vectors(field, n, vectors):
    """v_1 ^ ... ^ v_m with Plücker coordinates computed as m x m minors.

    The empty list gives the grade-0 unit. The result is zero exactly
    when the vectors are linearly dependent over K.
    """
    vectors = [tuple(v) for v in vectors]
    m = len(vectors)
    if m == 0:
        return MultiVec.unit(field, n)
    if m > n:
        raise GradeError(f"cannot wedge {m} vectors in dimension {n}")
    if any(len(v) != n for v in vectors):
        raise ShapeError("vector length mismatch")
    coords = {}
    for rows in itertools.combinations(range(n), m):
        d = _minor_det(vectors, rows)
        if not d.is_zero:
            coords[tuple(r + 1 for r in rows)] = d
    return MultiVec._make(field, n, m, coords)


def max_norm(v):
    """The max norm of a multivector as an exact exponent."""
    if not v.coords:
        return BOTTOM
    return exp_max(c.norm_exp() for c in v.coords.values())


def apply_matrix(g, v):
    """Gradewise action of a square matrix: coefficients mix by minors.

    (g.v)_J = sum_I det(g[J, I]) v_I over index sets of the grade of v.
    """
    if not g.is_square or g.nrows != v.n:
        raise ShapeError("matrix does not act on this space")
    if v.grade == 0:
        return v
    cols = g.columns()
    coords = {}
    for j_set in index_sets(v.n, v.grade):
        acc = None
        for i_set, c in v.coords.items():
            # minor of g on rows j_set and columns i_set
            d = _minor_det([cols[i - 1] for i in i_set],
                           [j - 1 for j in j_set])
            if d.is_zero:
                continue
            term = c * d
            acc = term if acc is None else acc + term
        if acc is not None and not acc.is_zero:
            coords[j_set] = acc
    return MultiVec._make(v.field, v.n, v.grade, coords)

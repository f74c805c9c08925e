"""Ultrametric orthogonality in K^n.

The orthogonal group here is the set of matrices over the valuation ring
O_nu whose determinant has norm exactly 1; its special subgroup pins the
determinant to 1. Orthonormal bases of a subspace are normalized bases
whose wedge also has norm 1, and they always exist: orthonormalize builds
one constructively, repairing one vector at a time with an explicit
coefficient vector read off from unit minors of the prefix.

All constructions are deterministic: candidate index sets are scanned in
lexicographic order and the smallest admissible index wins every choice.
"""

from .algebra import BOTTOM, QExp
from .errors import (
    NormMismatch,
    NotCompletable,
    NotOrthonormal,
    RankError,
    ShapeError,
)
from .exterior import (
    apply_matrix,
    max_norm,
    shuffle_sign,
    vector_norm_exp,
    wedge_vectors,
)
from .linalg import Matrix, basis_vector, inverse, mat_det, solve, vec_add, vec_scale

ZERO_EXP = QExp(0)


def is_in_ortho_group(a, special=False):
    """Membership in O(n, O_nu): integral entries, |det| = 1.

    With special=True the determinant must equal 1 exactly.
    """
    if not a.is_square:
        raise ShapeError("orthogonal-group test needs a square matrix")
    if not a.in_valuation_ring():
        return False
    det = mat_det(a)
    if det.norm_exp() != ZERO_EXP:
        return False
    if special and not det.is_one:
        return False
    return True


def is_orthonormal_set(vectors):
    """Unit vectors whose wedge has norm 1."""
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        return False
    n = len(vectors[0])
    if any(vector_norm_exp(v) != ZERO_EXP for v in vectors):
        return False
    if len(vectors) > n:
        return False
    return max_norm(wedge_vectors(vectors[0][0].field, n, vectors)) == ZERO_EXP


def normalize_vector(v):
    """Scale v by the uniformizer power that makes its norm exactly 1."""
    e = vector_norm_exp(v)
    if e.is_bottom:
        raise RankError("cannot normalize the zero vector")
    if e == ZERO_EXP:
        return tuple(v)
    field = v[0].field
    return vec_scale(field.T_pow(-e.e), v)


def _repair_vector(field, n, prefix, prefix_wedge, v, gap):
    # prefix is orthonormal, v is a unit vector, and the wedge of
    # prefix + [v] has norm q^-gap < 1; returns the replacement unit
    # vector in span(prefix + [v]) restoring wedge norm 1.
    k = len(prefix) + 1
    unit_minors = [key for key in sorted(prefix_wedge.coords)
                   if prefix_wedge.coords[key].norm_exp() == ZERO_EXP]
    chosen = None
    for key in unit_minors:
        for t in key:
            if v[t - 1].norm_exp() == ZERO_EXP:
                chosen = (key, t)
                break
        if chosen:
            break
    if chosen is None:
        # One index swap brings a unit coordinate of v into a unit minor.
        # The full scan above already finds the swapped witness whenever
        # one exists, so this branch is defensive only.
        base = unit_minors[0]
        iota = next(t for t in range(1, n + 1)
                    if t not in base and v[t - 1].norm_exp() == ZERO_EXP)
        for out in base:
            candidate = tuple(sorted((set(base) - {out}) | {iota}))
            coeff = prefix_wedge.coords.get(candidate)
            if coeff is not None and coeff.norm_exp() == ZERO_EXP:
                chosen = (candidate, iota)
                break
        if chosen is None:
            raise AssertionError("unit-minor swap failed; prefix not orthonormal?")
    rows, t = chosen
    sub = Matrix(field, [[prefix[s][i - 1] for s in range(k - 1)] for i in rows])
    target = tuple(-v[i - 1] for i in rows)
    alpha = list(solve(sub, target))
    s_idx = next(s for s in range(k - 1)
                 if prefix[s][t - 1].norm_exp() == ZERO_EXP)
    alpha[s_idx] = alpha[s_idx] + field.T_pow(-gap)
    t_gap = field.T_pow(gap)
    out = vec_scale(t_gap, v)
    for j in range(k - 1):
        beta = alpha[j] * t_gap
        if not beta.is_zero:
            out = vec_add(out, vec_scale(beta, prefix[j]))
    return out


def orthonormalize(vectors):
    """Orthonormal basis of the span of independent vectors.

    Incremental: each input vector is normalized and, when the prefix
    wedge norm drops below 1, replaced by the corrected combination that
    restores it, exactly.
    """
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        return []
    n = len(vectors[0])
    if any(len(v) != n for v in vectors):
        raise ShapeError("vector length mismatch")
    field = vectors[0][0].field
    out = []
    for v in vectors:
        e = vector_norm_exp(v)
        if e.is_bottom:
            raise RankError("zero vector in the input")
        if e != ZERO_EXP:
            v = vec_scale(field.T_pow(-e.e), v)
        if out:
            prefix_wedge = wedge_vectors(field, n, out)
            w = wedge_vectors(field, n, out + [v])
            norm = max_norm(w)
            if norm.is_bottom:
                raise RankError("input vectors are linearly dependent")
            if norm != ZERO_EXP:
                v = _repair_vector(field, n, out, prefix_wedge, v, -norm.e)
        out.append(v)
    return out


def extend_to_special_ortho(vectors, n):
    """Complete an orthonormal set to a matrix in SO(n, O_nu).

    The first columns are the inputs; the rest are standard basis vectors
    of the complement of a unit-coefficient index set, the last scaled so
    the determinant is exactly 1.
    """
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        raise NotOrthonormal("cannot complete an empty set")
    field = vectors[0][0].field
    if any(len(v) != n for v in vectors):
        raise ShapeError("vector length mismatch")
    if len(vectors) > n:
        raise ShapeError("too many vectors")
    if not is_orthonormal_set(vectors):
        raise NotOrthonormal("input is not an orthonormal set")
    if len(vectors) == n:
        m = Matrix.from_columns(field, vectors)
        if not mat_det(m).is_one:
            raise NotCompletable(
                "full orthonormal set with determinant != 1 cannot be "
                "completed without changing its columns")
        return m
    w = wedge_vectors(field, n, vectors)
    unit_key = next(key for key in sorted(w.coords)
                    if w.coords[key].norm_exp() == ZERO_EXP)
    complement = [t for t in range(1, n + 1) if t not in unit_key]
    cols = list(vectors)
    for t in complement[:-1]:
        cols.append(basis_vector(field, n, t - 1))
    sign = shuffle_sign(unit_key, tuple(complement))
    c = w.coords[unit_key].reciprocal()
    if sign < 0:
        c = -c
    cols.append(vec_scale(c, basis_vector(field, n, complement[-1] - 1)))
    return Matrix.from_columns(field, cols)


def ortho_transport(v_factors, w_factors):
    """(c, g) with w = c * (g . v) for equal-norm decomposable wedges.

    v and w are given by their factor lists; g is special orthogonal and
    |c| = 1. Raises NormMismatch when the wedge norms differ.
    """
    v_factors = [tuple(v) for v in v_factors]
    w_factors = [tuple(v) for v in w_factors]
    if len(v_factors) != len(w_factors) or not v_factors:
        raise ShapeError("factor lists must be nonempty and equal length")
    n = len(v_factors[0])
    field = v_factors[0][0].field
    grade = len(v_factors)
    v = wedge_vectors(field, n, v_factors)
    w = wedge_vectors(field, n, w_factors)
    if v.is_zero or w.is_zero:
        raise RankError("factors are linearly dependent")
    if max_norm(v) != max_norm(w):
        raise NormMismatch(f"norms differ: {max_norm(v)} vs {max_norm(w)}")
    if grade == n:
        key = tuple(range(1, n + 1))
        c = w.coords[key] / v.coords[key]
        return c, Matrix.identity(field, n)
    x_basis = orthonormalize(v_factors)
    y_basis = orthonormalize(w_factors)
    g_x = extend_to_special_ortho(x_basis, n)
    g_y = extend_to_special_ortho(y_basis, n)
    x = wedge_vectors(field, n, x_basis)
    y = wedge_vectors(field, n, y_basis)
    key_x = min(x.coords)
    key_y = min(y.coords)
    c_v = v.coords[key_x] / x.coords[key_x]
    c_w = w.coords[key_y] / y.coords[key_y]
    c = c_w / c_v
    g = g_y @ inverse(g_x)
    return c, g


def transported(c, g, v):
    """Apply the transport certificate: c * (g . v)."""
    return apply_matrix(g, v).scaled(c)


def parseval_holds(vectors, coeff_vectors):
    """Check the orthogonality identity on sample coefficient vectors.

    For each sample (a_1, ..., a_m): the norm of sum a_i v_i must equal
    max_i |a_i| * norm(v_i), exactly.
    """
    vectors = [tuple(v) for v in vectors]
    norms = [vector_norm_exp(v) for v in vectors]
    field = vectors[0][0].field
    n = len(vectors[0])
    for coeffs in coeff_vectors:
        acc = (field.zero_rf(),) * n
        expected = BOTTOM
        for a, v, nv in zip(coeffs, vectors, norms):
            if not a.is_zero:
                acc = vec_add(acc, vec_scale(a, v))
            cand = a.norm_exp() + nv
            if expected < cand:
                expected = cand
        if vector_norm_exp(acc) != expected:
            return False
    return True

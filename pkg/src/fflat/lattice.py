"""Lattices in K^n, rational subspaces, covolumes, and submodularity.

A Lattice is a free R_nu-module given by a K-matrix basis with
independent columns (rank = dimension of its span). A Subspace is kept in
reduced column echelon form, so subspace equality is representation
equality. The covolume data of a subspace W relative to a lattice D is
the exact exponent of the max norm of the wedge of any R_nu-basis of
the intersection module W meet D; basis independence follows from
unimodularity of basis changes,
which the tests drive directly.

The module also builds projections of lattices along a subspace spanned
by lattice vectors, the engine behind the covolume factorization used by
the submodularity check.
"""

import itertools
from dataclasses import dataclass

from .algebra import Poly, QExp, RatFunc, poly_gcd
from .errors import (
    ContainmentError,
    NotPrimitive,
    NotRational,
    NotSubmodule,
    ProjectionSetupError,
    RankError,
    ShapeError,
    ZeroModule,
)
from .exterior import max_norm, vector_norm_exp, wedge_vectors
from .linalg import (
    Matrix,
    clear_denominators,
    hnf,
    kernel_basis,
    hnf_nonzero_columns,
    inverse,
    mat_det,
    rank,
    reduced_column_echelon,
    saturate,
    solve_in_span,
    unimodular_complete,
    vec_add,
    vec_is_zero,
    vec_scale,
    zero_vector,
)

ZERO_EXP = QExp(0)


class Subspace:
    """A K-subspace of K^n with a canonical reduced-echelon basis."""

    __slots__ = ("field", "n", "basis")

    def __init__(self, field, n, vectors):
        basis = reduced_column_echelon(field, n, [tuple(v) for v in vectors])
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "basis", tuple(basis))

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def zero(cls, field, n):
        return cls(field, n, [])

    @classmethod
    def full(cls, field, n):
        one, z = field.one_rf(), field.zero_rf()
        return cls(field, n, [tuple(one if i == j else z for j in range(n))
                              for i in range(n)])

    @property
    def dim(self):
        return len(self.basis)

    @property
    def is_zero(self):
        return not self.basis

    def contains(self, vec):
        vec = tuple(vec)
        if self.is_zero:
            return vec_is_zero(vec)
        if vec_is_zero(vec):
            return True
        m = Matrix.from_columns(self.field, self.basis)
        return solve_in_span(m, vec) is not None

    def contains_subspace(self, other):
        return all(self.contains(v) for v in other.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.field == other.field and self.n == other.n
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.field, self.n, self.basis))

    def __repr__(self):
        if self.is_zero:
            return f"<zero subspace of K^{self.n}>"
        cols = "; ".join("(" + ", ".join(repr(e) for e in v) + ")"
                         for v in self.basis)
        return f"<subspace dim {self.dim} of K^{self.n}: {cols}>"


def subspace_sum(a, b):
    if a.field != b.field or a.n != b.n:
        raise ShapeError("ambient mismatch")
    return Subspace(a.field, a.n, list(a.basis) + list(b.basis))


def subspace_intersect(a, b):
    if a.field != b.field or a.n != b.n:
        raise ShapeError("ambient mismatch")
    if a.is_zero or b.is_zero:
        return Subspace.zero(a.field, a.n)
    stacked = Matrix.from_columns(a.field, list(a.basis) + list(b.basis))
    vectors = []
    for x in kernel_basis(stacked):
        coeffs = x[: a.dim]
        vec = zero_vector(a.field, a.n)
        for c, col in zip(coeffs, a.basis):
            if not c.is_zero:
                vec = vec_add(vec, vec_scale(c, col))
        vectors.append(vec)
    return Subspace(a.field, a.n, vectors)


@dataclass(frozen=True)
class CovolConfig:
    """Covolume normalization data; only genus 0 is supported."""

    genus: int = 0

    def __post_init__(self):
        if self.genus != 0:
            raise ValueError("only genus 0 (the projective line) is supported")


class Lattice:
    """Free R_nu-module in K^n presented by an independent-column basis."""

    __slots__ = ("field", "n", "basis")

    def __init__(self, field, n, basis):
        if not isinstance(basis, Matrix):
            basis = Matrix.from_columns(field, basis)
        if basis.nrows != n:
            raise ShapeError(f"basis rows {basis.nrows} != ambient {n}")
        if rank(basis) != basis.ncols:
            raise RankError("basis columns are linearly dependent over K")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "basis", basis)

    def __setattr__(self, name, value):
        raise AttributeError("Lattice is immutable")

    @classmethod
    def standard(cls, field, n):
        return cls(field, n, Matrix.identity(field, n))

    @property
    def rank(self):
        return self.basis.ncols

    def basis_columns(self):
        return self.basis.columns()

    def span(self):
        return Subspace(self.field, self.n, self.basis.columns())

    def coords(self, vec):
        """Coordinates of vec in the basis over K, or None if outside the span."""
        return solve_in_span(self.basis, tuple(vec))

    def contains(self, vec):
        c = self.coords(vec)
        return c is not None and all(x.is_integral for x in c)

    def module_equals(self, other):
        if self.n != other.n or self.rank != other.rank:
            return False
        return (all(other.contains(v) for v in self.basis_columns())
                and all(self.contains(v) for v in other.basis_columns()))

    def __repr__(self):
        return f"<lattice rank {self.rank} in K^{self.n}>"


def module_basis(field, n, generators):
    """Lattice generated over R_nu by arbitrary vectors in K^n."""
    gens = [tuple(v) for v in generators if not vec_is_zero(tuple(v))]
    if not gens:
        raise ZeroModule("all generators are zero")
    if any(len(v) != n for v in gens):
        raise ShapeError("generator length mismatch")
    scaled, d = clear_denominators(gens, field)
    cols = hnf_nonzero_columns(Matrix.from_columns(field, scaled))
    if not d.is_one:
        dinv = RatFunc(Poly.one(field), d)
        cols = [vec_scale(dinv, c) for c in cols]
    return Lattice(field, n, Matrix.from_columns(field, cols))


def subspace_meet_lattice(w, lat):
    """Basis of W meet the lattice plus the rationality flag (rank equals dim W).

    Works in lattice coordinates: express W there, saturate over R_nu, map back.
    """
    if w.field != lat.field or w.n != lat.n:
        raise ShapeError("ambient mismatch")
    if w.is_zero:
        raise ZeroModule("the zero subspace meets every lattice trivially")
    coord_cols = []
    for v in w.basis:
        c = lat.coords(v)
        if c is None:
            raise ContainmentError("subspace is not contained in the lattice span")
        coord_cols.append(c)
    scaled, _ = clear_denominators(coord_cols, lat.field)
    sat = saturate(Matrix.from_columns(lat.field, scaled))
    new_cols = [lat.basis.apply(col) for col in sat.columns()]
    meet = Lattice(lat.field, lat.n, Matrix.from_columns(lat.field, new_cols))
    return meet, meet.rank == w.dim


def d_delta(w, lat):
    """Exact covolume exponent of a rational subspace: e with d = q^e.

    The zero subspace has exponent 0 by convention.
    """
    if w.is_zero:
        return ZERO_EXP
    meet, rational = subspace_meet_lattice(w, lat)
    if not rational:
        raise NotRational("subspace is not lattice-rational")
    return max_norm(wedge_vectors(lat.field, lat.n, meet.basis_columns()))


def covolume(lat, cfg=CovolConfig()):
    """Covolume exponent: (genus - 1) * rank + d-exponent of the span."""
    wedge_exp = max_norm(wedge_vectors(lat.field, lat.n, lat.basis_columns()))
    return QExp((cfg.genus - 1) * lat.rank) + wedge_exp


def is_primitive(sub, lat):
    """Whether span_K(sub) meet the lattice equals sub, for a submodule of it."""
    coord_cols = []
    for v in sub.basis_columns():
        c = lat.coords(v)
        if c is None or not all(x.is_integral for x in c):
            raise NotSubmodule("module is not contained in the lattice")
        coord_cols.append(c)
    m = Matrix.from_columns(lat.field, coord_cols)
    sat = saturate(m)
    return hnf(sat)[0] == hnf(m)[0]


def extend_primitive_to_lattice_basis(primitive_vectors, lat):
    """Basis of the lattice whose first columns are the given primitive set."""
    vectors = [tuple(v) for v in primitive_vectors]
    if not vectors:
        raise ZeroModule("empty primitive set")
    coord_cols = []
    for v in vectors:
        c = lat.coords(v)
        if c is None or not all(x.is_integral for x in c):
            raise NotSubmodule("vectors are not in the lattice")
        coord_cols.append(c)
    m = Matrix.from_columns(lat.field, coord_cols)
    try:
        completed = unimodular_complete(m, lat.rank)
    except NotPrimitive:
        raise NotPrimitive("input set is not primitive in the lattice") from None
    new_cols = [lat.basis.apply(col) for col in completed.columns()]
    return Lattice(lat.field, lat.n, Matrix.from_columns(lat.field, new_cols))


def projection_map(field, alpha, beta):
    """The linear projection along span(alpha) onto span(beta - alpha).

    beta must be a basis of K^n extending alpha (alpha a prefix). With an
    empty alpha this is the identity.
    """
    alpha = [tuple(v) for v in alpha]
    beta = [tuple(v) for v in beta]
    if not beta:
        raise ProjectionSetupError("beta must be a basis of the ambient space")
    n = len(beta[0])
    if len(beta) != n:
        raise ProjectionSetupError("beta must have exactly n vectors")
    if beta[: len(alpha)] != alpha:
        raise ProjectionSetupError("beta must extend alpha as a prefix")
    i = len(alpha)
    if i == 0:
        return lambda x: tuple(x)
    bmat = Matrix.from_columns(field, beta)
    if mat_det(bmat).is_zero:
        raise ProjectionSetupError("beta is not a basis")
    binv = inverse(bmat)
    zero = field.zero_rf()

    def project(x):
        c = binv.apply(tuple(x))
        masked = (zero,) * i + tuple(c[i:])
        return bmat.apply(masked)

    return project


def project_lattice(lat, alpha, beta):
    """Image of the lattice under the projection, with a lift back into it.

    alpha spans a subspace whose lattice points form a primitive
    sublattice; the image basis is the projection of the columns that
    extend a basis of that sublattice to a basis of the whole lattice.
    The lift sends a point of the projected lattice to a preimage lattice
    point, differing from it only inside span(alpha).
    """
    alpha = [tuple(v) for v in alpha]
    beta = [tuple(v) for v in beta]
    project = projection_map(lat.field, alpha, beta)
    i = len(alpha)
    if i == 0:
        return lat, lambda x: tuple(x)
    w_alpha = Subspace(lat.field, lat.n, alpha)
    if w_alpha.dim != i:
        raise ProjectionSetupError("alpha is linearly dependent")
    if i >= lat.rank:
        span = lat.span()
        if all(w_alpha.contains(v) for v in span.basis):
            raise ProjectionSetupError("projection of the lattice is zero")
    try:
        meet, _ = subspace_meet_lattice(w_alpha, lat)
    except ContainmentError:
        raise ProjectionSetupError(
            "alpha does not lie in the lattice span") from None
    extended = extend_primitive_to_lattice_basis(meet.basis_columns(), lat)
    tail = extended.basis_columns()[meet.rank:]
    image_cols = [project(col) for col in tail]
    image = Lattice(lat.field, lat.n, Matrix.from_columns(lat.field, image_cols))

    def lift(x):
        c = image.coords(tuple(x))
        if c is None or not all(e.is_integral for e in c):
            raise NotSubmodule("point is not in the projected lattice")
        out = zero_vector(lat.field, lat.n)
        for coeff, col in zip(c, tail):
            if not coeff.is_zero:
                out = vec_add(out, vec_scale(coeff, col))
        return out

    return image, lift


@dataclass(frozen=True)
class SubmodularityReport:
    """Exact exponents entering the submodularity inequality."""

    e_l: int
    e_m: int
    e_cap: int
    e_sum: int
    dim_l: int
    dim_m: int
    dim_cap: int
    dim_sum: int
    genus: int = 0

    @property
    def holds(self):
        return self.e_l + self.e_m >= self.e_cap + self.e_sum

    @property
    def strict(self):
        return self.e_l + self.e_m > self.e_cap + self.e_sum

    def covol_exponents(self):
        g1 = self.genus - 1
        return (g1 * self.dim_l + self.e_l, g1 * self.dim_m + self.e_m,
                g1 * self.dim_cap + self.e_cap, g1 * self.dim_sum + self.e_sum)

    @property
    def covol_holds(self):
        cl, cm, cc, cs = self.covol_exponents()
        return cl + cm >= cc + cs

    def to_dict(self):
        cl, cm, cc, cs = self.covol_exponents()
        return {
            "e_L": self.e_l, "e_M": self.e_m,
            "e_cap": self.e_cap, "e_sum": self.e_sum,
            "dim_L": self.dim_l, "dim_M": self.dim_m,
            "dim_cap": self.dim_cap, "dim_sum": self.dim_sum,
            "holds": self.holds, "strict": self.strict,
            "covol_L": cl, "covol_M": cm, "covol_cap": cc, "covol_sum": cs,
            "covol_holds": self.covol_holds,
        }


def check_submodularity(lat, l_sub, m_sub, cfg=CovolConfig()):
    """Exponent report for d(L) d(M) >= d(L meet M) d(L+M), full-rank lattice."""
    if lat.rank != lat.n:
        raise ShapeError("submodularity check needs a full-rank lattice")
    cap = subspace_intersect(l_sub, m_sub)
    total = subspace_sum(l_sub, m_sub)
    return SubmodularityReport(
        e_l=d_delta(l_sub, lat).e,
        e_m=d_delta(m_sub, lat).e,
        e_cap=d_delta(cap, lat).e,
        e_sum=d_delta(total, lat).e,
        dim_l=l_sub.dim,
        dim_m=m_sub.dim,
        dim_cap=cap.dim,
        dim_sum=total.dim,
        genus=cfg.genus,
    )


def _bounded_polys(field, max_deg):
    out = []
    for codes in itertools.product(range(field.q), repeat=max_deg + 1):
        # ascending-degree digits; enumeration order is the documented
        # tie-break for shortest_vector
        out.append(field.poly(codes))
    return out


def shortest_vector(lat, coeff_degree_bound):
    """Shortest nonzero vector over coefficients of bounded degree.

    Exhaustive within the bound: every nonzero R_nu-combination with
    deg(c_i) <= bound is scored; the first minimizer in enumeration order
    is returned with its exact norm exponent.
    """
    if coeff_degree_bound < 0:
        raise ValueError("bound must be >= 0")
    field = lat.field
    polys = _bounded_polys(field, coeff_degree_bound)
    cols = lat.basis_columns()
    best = None
    best_vec = None
    for coeffs in itertools.product(polys, repeat=lat.rank):
        if all(p.is_zero for p in coeffs):
            continue
        vec = zero_vector(field, lat.n)
        for c, col in zip(coeffs, cols):
            if not c.is_zero:
                vec = vec_add(vec, vec_scale(RatFunc.from_poly(c), col))
        e = vector_norm_exp(vec)
        if best is None or e < best:
            best, best_vec = e, vec
    return best_vec, best


def primitive_vector_in(w, lat):
    """A lattice generator of the line of W's first canonical basis vector.

    Coordinate-gcd based: clear denominators of the lattice coordinates, divide
    out their polynomial gcd.
    """
    if w.is_zero:
        raise ZeroModule("zero subspace has no primitive vector")
    c = lat.coords(w.basis[0])
    if c is None:
        raise ContainmentError("subspace is not contained in the lattice span")
    scaled, _ = clear_denominators([c], lat.field)
    coords = scaled[0]
    g = None
    for e in coords:
        if e.is_zero:
            continue
        g = e.num if g is None else poly_gcd(g, e.num)
    if not g.is_one:
        ginv = RatFunc(Poly.one(lat.field), g)
        coords = vec_scale(ginv, coords)
    return lat.basis.apply(coords)

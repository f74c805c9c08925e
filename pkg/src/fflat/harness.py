"""Seeded random instances and the executable property suite.

PRNG: SplitMix64, pinned for cross-run reproducibility of fixtures.
next_u64 advances the state by the golden gamma 0x9E3779B97F4A7C15 and
finalizes with the mix (z ^= z>>30; z *= 0xBF58476D1CE4E5B9; z ^= z>>27;
z *= 0x94D049BB133111EB; z ^= z>>31), all mod 2^64. The stream for
property index p and instance index i is seeded with
mix64(mix64(seed ^ mix64((p+1)*gamma)) + (i+1)*gamma), so instances are
independent of each other and of evaluation order.

Every property draws a fresh instance and returns None on success or a
JSON-serializable counterexample payload (lattice-shaped ones reuse the
CLI instance schema, so failures replay from the command line).
"""

import itertools
import time
from dataclasses import dataclass, field as dc_field

from .algebra import FieldConfig, Poly, QExp, RatFunc
from .errors import FFLatError
from .exterior import (
    MultiVec,
    apply_matrix,
    index_sets,
    max_norm,
    vector_norm_exp,
    wedge,
    wedge_vectors,
)
from .lattice import (
    Lattice,
    Subspace,
    covolume,
    d_delta,
    extend_primitive_to_lattice_basis,
    module_basis,
    primitive_vector_in,
    project_lattice,
    projection_map,
    shortest_vector,
    subspace_intersect,
    subspace_meet_lattice,
    subspace_sum,
)
from .linalg import (
    Matrix,
    basis_vector,
    hnf,
    inverse,
    is_unimodular_over_r,
    mat_det,
    snf,
    solve_in_span,
    vec_add,
    vec_scale,
    zero_vector,
)
from .ortho import (
    extend_to_special_ortho,
    is_in_ortho_group,
    is_orthonormal_set,
    ortho_transport,
    orthonormalize,
    parseval_holds,
    transported,
)
from .serialize import InstanceDoc, field_to_jsonable, instance_to_jsonable

GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MIX_A = 0xBF58476D1CE4E5B9
_MIX_B = 0x94D049BB133111EB
_MASK = (1 << 64) - 1


def mix64(z):
    z &= _MASK
    z = ((z ^ (z >> 30)) * _MIX_A) & _MASK
    z = ((z ^ (z >> 27)) * _MIX_B) & _MASK
    return z ^ (z >> 31)


class SplitMix64:
    """The 64-bit splittable generator pinned in the module docstring."""

    __slots__ = ("_state",)

    def __init__(self, seed):
        self._state = seed & _MASK

    def next_u64(self):
        self._state = (self._state + GOLDEN_GAMMA) & _MASK
        return mix64(self._state)

    def randrange(self, n):
        return self.next_u64() % n

    def randint(self, lo, hi):
        return lo + self.randrange(hi - lo + 1)

    def choice(self, seq):
        return seq[self.randrange(len(seq))]

    def shuffle(self, items):
        for i in range(len(items) - 1, 0, -1):
            j = self.randrange(i + 1)
            items[i], items[j] = items[j], items[i]

    def split(self):
        return SplitMix64(self.next_u64())


def instance_seed(master, index):
    return mix64((master + (index + 1) * GOLDEN_GAMMA) & _MASK)


@dataclass(frozen=True)
class GenParams:
    """Bounds and seed for instance generation; same params + seed means
    an identical instance stream."""

    q_list: tuple = (2, 3, 5)
    n_max: int = 4
    max_poly_degree: int = 2
    max_den_degree: int = 2
    count: int = 100
    seed: int = 0x5EED_0F1A_77E5_7000

    def __post_init__(self):
        if not self.q_list or self.n_max < 1 or self.count < 0:
            raise ValueError("bounds must be positive")
        if self.max_poly_degree < 0 or self.max_den_degree < 0:
            raise ValueError("degree bounds must be non-negative")


_FIELD_CACHE = {}

_EXTENSION_MODULI = {
    4: (2, 2, (1, 1, 1)),
    8: (2, 3, (1, 1, 0, 1)),
    9: (3, 2, (1, 0, 1)),
    25: (5, 2, (2, 1, 1)),
    27: (3, 3, (1, 2, 0, 1)),
}


def field_for(q):
    """FieldConfig for a supported q (prime, or a pinned small extension)."""
    ff = _FIELD_CACHE.get(q)
    if ff is None:
        if q in _EXTENSION_MODULI:
            p, k, mod = _EXTENSION_MODULI[q]
            ff = FieldConfig(p, k, list(mod))
        else:
            ff = FieldConfig(q)
        _FIELD_CACHE[q] = ff
    return ff


# ---------------------------------------------------------------------------
# random element and matrix generators


def rand_poly(rng, field, max_deg, nonzero=False, monic=False):
    codes = [rng.randrange(field.q) for _ in range(rng.randrange(max_deg + 2))]
    if monic:
        codes.append(1)
    p = field.poly(codes)
    if nonzero and p.is_zero:
        return Poly.one(field)
    return p


def rand_ratfunc(rng, field, params):
    num = rand_poly(rng, field, params.max_poly_degree)
    den = rand_poly(rng, field, params.max_den_degree, monic=True)
    return RatFunc(num, den)


def rand_vector(rng, field, n, params):
    return tuple(rand_ratfunc(rng, field, params) for _ in range(n))


def rand_onu_scalar(rng, field, max_deg=2):
    # valuation >= 0: numerator degree <= denominator degree
    dd = rng.randrange(max_deg + 1)
    num = field.poly([rng.randrange(field.q) for _ in range(dd + 1)])
    den = field.poly([rng.randrange(field.q) for _ in range(dd)] + [1])
    return RatFunc(num, den)


def rand_unit_scalar(rng, field, max_deg=2):
    # valuation exactly 0
    dd = rng.randrange(max_deg + 1)
    num = field.poly([rng.randrange(field.q) for _ in range(dd)]
                     + [rng.randint(1, field.q - 1)])
    den = field.poly([rng.randrange(field.q) for _ in range(dd)] + [1])
    return RatFunc(num, den)


def _product_of_factors(rng, field, n, steps, entry):
    g = Matrix.identity(field, n)
    one, zero = field.one_rf(), field.zero_rf()
    for _ in range(steps):
        kind = rng.randrange(3)
        if kind == 0 and n > 1:
            i = rng.randrange(n)
            j = rng.randrange(n - 1)
            if j >= i:
                j += 1
            rows = [[one if a == b else zero for b in range(n)]
                    for a in range(n)]
            rows[i][j] = entry(rng, field)
            g = g @ Matrix(field, rows)
        elif kind == 1:
            perm = list(range(n))
            rng.shuffle(perm)
            g = g @ Matrix.from_columns(
                field, [basis_vector(field, n, p) for p in perm])
        else:
            rows = [[one if a == b else zero for b in range(n)]
                    for a in range(n)]
            for i in range(n):
                rows[i][i] = _unit_for(rng, field, entry)
            g = g @ Matrix(field, rows)
    return g


def _unit_for(rng, field, entry):
    if entry is _poly_entry:
        return field.rf(rng.randint(1, field.q - 1))
    return rand_unit_scalar(rng, field)


def _poly_entry(rng, field):
    return RatFunc.from_poly(rand_poly(rng, field, 2))


def _onu_entry(rng, field):
    return rand_onu_scalar(rng, field)


def rand_unimodular(rng, field, n, steps=None):
    """Random unimodular matrix over F_q[T] (product of elementary factors)."""
    return _product_of_factors(rng, field, n, steps or (n + 2), _poly_entry)


def rand_ortho_matrix(rng, field, n, steps=None):
    """Random element of O(n, O_nu) with entries in K (constructive)."""
    return _product_of_factors(rng, field, n, steps or (n + 2), _onu_entry)


def gen_lattice(rng, field, n, params, diag_lo=-1, diag_hi=2):
    """Full-rank lattice U1 @ diag(T^a_i) @ U2 with bounded exponents.

    Returns (lattice, a) so the covolume exponent -n + sum(a) can be
    cross-checked independently.
    """
    u1 = rand_unimodular(rng, field, n)
    u2 = rand_unimodular(rng, field, n)
    a = [rng.randint(diag_lo, diag_hi) for _ in range(n)]
    one, zero = field.one_rf(), field.zero_rf()
    diag = Matrix(field, [[field.T_pow(a[i]) if i == j else zero
                           for j in range(n)] for i in range(n)])
    return Lattice(field, n, u1 @ diag @ u2), a


def gen_rational_subspace(rng, lat, dim, coeff_deg=1):
    """Span of dim random lattice vectors (retries until independent)."""
    if dim == 0:
        return Subspace.zero(lat.field, lat.n)
    if not 0 <= dim <= lat.rank:
        raise ValueError(f"dim {dim} out of range for rank {lat.rank}")
    cols = lat.basis_columns()
    for _ in range(64):
        vecs = []
        for _ in range(dim):
            v = zero_vector(lat.field, lat.n)
            for col in cols:
                c = rand_poly(rng, lat.field, coeff_deg)
                if not c.is_zero:
                    v = vec_add(v, vec_scale(RatFunc.from_poly(c), col))
            vecs.append(v)
        sub = Subspace(lat.field, lat.n, vecs)
        if sub.dim == dim:
            return sub
    raise FFLatError("failed to generate an independent subspace")


def rand_multivec(rng, field, n, grade, params):
    coords = {}
    for key in index_sets(n, grade):
        if rng.randrange(2):
            coords[key] = rand_ratfunc(rng, field, params)
    return MultiVec(field, n, grade, coords)


# ---------------------------------------------------------------------------
# the second d_delta route: projection factorization


def d_exp_via_projection(w, lat):
    """Covolume exponent computed by peeling primitive vectors.

    Recursion: strip one primitive lattice vector v of the subspace,
    project the lattice and the subspace along it (orthonormal direction
    plus completion), and add the exponent of v. The base cases avoid the
    Smith form entirely, and the projected lattice is rebuilt from
    projected generators, so this route is independent of the direct
    saturation route.
    """
    if w.is_zero:
        return QExp(0)
    v1 = primitive_vector_in(w, lat)
    e1 = vector_norm_exp(v1)
    if w.dim == 1:
        return e1
    alpha = orthonormalize([v1])
    beta_mat = extend_to_special_ortho(alpha, lat.n)
    beta = beta_mat.columns()
    project = projection_map(lat.field, alpha, beta)
    proj_gens = [project(col) for col in lat.basis_columns()]
    proj_lat = module_basis(lat.field, lat.n, proj_gens)
    proj_sub = Subspace(lat.field, lat.n, [project(v) for v in w.basis])
    return d_exp_via_projection(proj_sub, proj_lat) + e1


# ---------------------------------------------------------------------------
# property suite


@dataclass
class PropertyResult:
    name: str
    passed: int = 0
    failed: int = 0
    first_counterexample: dict | None = None
    seconds: float = 0.0

    def to_dict(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "failed": self.failed,
            "first_counterexample": self.first_counterexample,
            "seconds": round(self.seconds, 6),
        }


@dataclass
class SuiteReport:
    params: GenParams
    results: list = dc_field(default_factory=list)

    @property
    def all_passed(self):
        return all(r.failed == 0 for r in self.results)

    def to_dict(self):
        return {
            "params": {
                "q_list": list(self.params.q_list),
                "n_max": self.params.n_max,
                "max_poly_degree": self.params.max_poly_degree,
                "max_den_degree": self.params.max_den_degree,
                "count": self.params.count,
                "seed": self.params.seed,
            },
            "all_passed": self.all_passed,
            "results": [r.to_dict() for r in self.results],
        }


class _Ctx:
    """Per-instance context handed to property functions."""

    __slots__ = ("rng", "params", "overrides")

    def __init__(self, rng, params, overrides):
        self.rng = rng
        self.params = params
        self.overrides = overrides

    def field(self):
        return field_for(self.rng.choice(self.params.q_list))

    def dims(self, n_min=1):
        return self.rng.randint(n_min, max(n_min, self.params.n_max))

    @property
    def d_delta(self):
        return self.overrides.get("d_delta", d_delta)


def _instance_payload(field, n, lat=None, subspaces=None, extra=None):
    doc = InstanceDoc(field=field, n=n, lattice=lat,
                      subspaces=dict(subspaces or {}))
    payload = instance_to_jsonable(doc)
    if extra:
        payload.update(extra)
    return payload


def _scalar_payload(field, values, extra=None):
    payload = {"field": field_to_jsonable(field),
               "values": {k: repr(v) for k, v in values.items()}}
    if extra:
        payload.update(extra)
    return payload


def prop_valuation_multiplicative(ctx):
    field = ctx.field()
    x = rand_ratfunc(ctx.rng, field, ctx.params)
    y = rand_ratfunc(ctx.rng, field, ctx.params)
    if (x * y).norm_exp() == x.norm_exp() + y.norm_exp():
        return None
    return _scalar_payload(field, {"x": x, "y": y})


def prop_valuation_ultrametric(ctx):
    field = ctx.field()
    x = rand_ratfunc(ctx.rng, field, ctx.params)
    y = rand_ratfunc(ctx.rng, field, ctx.params)
    s = (x + y).norm_exp()
    bound = max(x.norm_exp(), y.norm_exp())
    ok = s <= bound and (x.norm_exp() == y.norm_exp() or s == bound)
    if ok:
        return None
    return _scalar_payload(field, {"x": x, "y": y})


def prop_integral_exponents(ctx):
    field = ctx.field()
    f = rand_poly(ctx.rng, field, ctx.params.max_poly_degree, nonzero=True)
    x = RatFunc.from_poly(f)
    ok = x.norm_exp() >= 0 and ((x.norm_exp() == 0) == f.is_constant)
    if ok:
        return None
    return _scalar_payload(field, {"f": f})


def prop_canonical_arithmetic(ctx):
    field = ctx.field()
    a = rand_ratfunc(ctx.rng, field, ctx.params)
    b = rand_ratfunc(ctx.rng, field, ctx.params)
    c = rand_ratfunc(ctx.rng, field, ctx.params)
    lhs = a * (b + c)
    rhs = a * b + a * c
    if lhs == rhs and repr(lhs) == repr(rhs):
        return None
    return _scalar_payload(field, {"a": a, "b": b, "c": c})


def _rand_poly_matrix(ctx, field, n, m):
    return Matrix(field, [[RatFunc.from_poly(
        rand_poly(ctx.rng, field, ctx.params.max_poly_degree))
        for _ in range(m)] for _ in range(n)])


def prop_hnf_idempotent(ctx):
    field = ctx.field()
    n, m = ctx.dims(), ctx.dims()
    a = _rand_poly_matrix(ctx, field, n, m)
    h, u = hnf(a)
    ok = h == a @ u and is_unimodular_over_r(u) and hnf(h)[0] == h
    if ok:
        return None
    return _scalar_payload(field, {"A": a})


def prop_hnf_module_equal(ctx):
    field = ctx.field()
    n, m = ctx.dims(), ctx.dims()
    a = _rand_poly_matrix(ctx, field, n, m)
    h, u = hnf(a)
    uinv = inverse(u)
    ok = uinv.is_integral() and a == h @ uinv
    if ok:
        return None
    return _scalar_payload(field, {"A": a})


def prop_snf_transform(ctx):
    field = ctx.field()
    n, m = ctx.dims(), ctx.dims()
    a = _rand_poly_matrix(ctx, field, n, m)
    res = snf(a)
    divs = res.divisors()
    ok = (res.u @ a @ res.v == res.d
          and mat_det(res.u).norm_exp() == QExp(0)
          and mat_det(res.v).norm_exp() == QExp(0)
          and all((d2 % d1).is_zero for d1, d2 in zip(divs, divs[1:]))
          and all(d.is_monic for d in divs))
    if ok:
        return None
    return _scalar_payload(field, {"A": a})


def prop_saturate_closure(ctx):
    from .linalg import rank as mat_rank, saturate

    field = ctx.field()
    n = ctx.dims()
    k = ctx.rng.randint(1, n)
    a = _rand_poly_matrix(ctx, field, n, k)
    if mat_rank(a) < k:
        return None
    s = saturate(a)
    res = snf(s)
    ok = (all(d.is_constant for d in res.divisors())
          and hnf(saturate(s))[0] == hnf(s)[0])
    if ok:
        return None
    return _scalar_payload(field, {"A": a})


def prop_wedge_agreement(ctx):
    field = ctx.field()
    n = ctx.dims()
    m = ctx.rng.randint(1, n)
    vecs = [rand_vector(ctx.rng, field, n, ctx.params) for _ in range(m)]
    direct = wedge_vectors(field, n, vecs)
    folded = MultiVec.unit(field, n)
    for v in vecs:
        folded = wedge(folded, MultiVec.from_vector(field, v))
    if direct == folded:
        return None
    return _scalar_payload(field, {"vectors": vecs})


def prop_wedge_alternating(ctx):
    field = ctx.field()
    n = ctx.dims(n_min=2)
    v = rand_vector(ctx.rng, field, n, ctx.params)
    u = rand_vector(ctx.rng, field, n, ctx.params)
    vecs = [v, u, v] if n >= 3 else [v, v]
    if wedge_vectors(field, n, vecs).is_zero:
        return None
    return _scalar_payload(field, {"v": v, "u": u})


def prop_norm_scaling(ctx):
    field = ctx.field()
    n = ctx.dims()
    grade = ctx.rng.randint(0, n)
    v = rand_multivec(ctx.rng, field, n, grade, ctx.params)
    c = rand_ratfunc(ctx.rng, field, ctx.params)
    if max_norm(v.scaled(c)) == c.norm_exp() + max_norm(v):
        return None
    return _scalar_payload(field, {"c": c, "v": v})


def prop_hadamard(ctx):
    field = ctx.field()
    n = ctx.dims(n_min=2)
    i = ctx.rng.randint(1, n - 1)
    j = ctx.rng.randint(1, n - i)
    v = wedge_vectors(field, n, [rand_vector(ctx.rng, field, n, ctx.params)
                                 for _ in range(i)])
    w = wedge_vectors(field, n, [rand_vector(ctx.rng, field, n, ctx.params)
                                 for _ in range(j)])
    if max_norm(wedge(v, w)) <= max_norm(v) + max_norm(w):
        return None
    return _scalar_payload(field, {"v": v, "w": w})


def prop_norm_invariance(ctx):
    field = ctx.field()
    n = ctx.dims(n_min=2)
    g = rand_ortho_matrix(ctx.rng, field, n)
    for grade in range(1, n + 1):
        v = rand_multivec(ctx.rng, field, n, grade, ctx.params)
        if max_norm(apply_matrix(g, v)) != max_norm(v):
            return _scalar_payload(field, {"g": g, "v": v},
                                   extra={"grade": grade})
    return None


def prop_ortho_column_criterion(ctx):
    field = ctx.field()
    n = ctx.dims(n_min=2)
    if ctx.rng.randrange(2):
        a = rand_ortho_matrix(ctx.rng, field, n)
    else:
        a = Matrix(field, [[rand_ratfunc(ctx.rng, field, ctx.params)
                            for _ in range(n)] for _ in range(n)])
    member = is_in_ortho_group(a)
    if member != is_orthonormal_set(a.columns()):
        return _scalar_payload(field, {"A": a})
    if member:
        coeffs = [rand_vector(ctx.rng, field, n, ctx.params)
                  for _ in range(20)]
        if not parseval_holds(a.columns(), coeffs):
            return _scalar_payload(field, {"A": a})
    return None


def prop_orthonormalize_contract(ctx):
    field = ctx.field()
    n = ctx.dims()
    k = ctx.rng.randint(1, n)
    vecs = [rand_vector(ctx.rng, field, n, ctx.params) for _ in range(k)]
    if wedge_vectors(field, n, vecs).is_zero:
        return None  # dependent draw; skip
    out = orthonormalize(vecs)
    a = Matrix.from_columns(field, vecs)
    b = Matrix.from_columns(field, out)
    ok = (is_orthonormal_set(out)
          and all(solve_in_span(a, v) is not None for v in out)
          and all(solve_in_span(b, v) is not None for v in vecs))
    if ok:
        coeffs = [rand_vector(ctx.rng, field, k, ctx.params)
                  for _ in range(20)]
        ok = parseval_holds(out, coeffs)
    if ok:
        return None
    return _scalar_payload(field, {"vectors": vecs})


def prop_so_completion(ctx):
    field = ctx.field()
    n = ctx.dims(n_min=2)
    k = ctx.rng.randint(1, n - 1)
    vecs = [rand_vector(ctx.rng, field, n, ctx.params) for _ in range(k)]
    if wedge_vectors(field, n, vecs).is_zero:
        return None
    basis = orthonormalize(vecs)
    m = extend_to_special_ortho(basis, n)
    ok = (m.columns()[:k] == basis
          and m.in_valuation_ring()
          and mat_det(m).is_one
          and is_in_ortho_group(m, special=True))
    if ok:
        return None
    return _scalar_payload(field, {"vectors": vecs})


def prop_transport(ctx):
    field = ctx.field()
    n = ctx.dims(n_min=2)
    grade = ctx.rng.randint(1, n)
    vf = [rand_vector(ctx.rng, field, n, ctx.params) for _ in range(grade)]
    wf = [rand_vector(ctx.rng, field, n, ctx.params) for _ in range(grade)]
    v = wedge_vectors(field, n, vf)
    w = wedge_vectors(field, n, wf)
    if v.is_zero or w.is_zero:
        return None
    gap = max_norm(v).e - max_norm(w).e
    wf[0] = vec_scale(field.T_pow(gap), wf[0])
    w = wedge_vectors(field, n, wf)
    c, g = ortho_transport(vf, wf)
    ok = (c.norm_exp() == QExp(0)
          and is_in_ortho_group(g, special=True)
          and transported(c, g, v) == w)
    if ok:
        return None
    return _scalar_payload(field, {"v_factors": vf, "w_factors": wf})


def _rand_lattice_instance(ctx, n_min=2):
    field = ctx.field()
    n = ctx.dims(n_min=n_min)
    lat, a = gen_lattice(ctx.rng, field, n, ctx.params)
    return field, n, lat, a


def prop_covolume_two_path(ctx):
    field, n, lat, a = _rand_lattice_instance(ctx, n_min=1)
    expected = QExp(-n + sum(a))
    direct = covolume(lat)
    via_d = QExp(-lat.rank) + d_delta(lat.span(), lat)
    if direct == expected == via_d:
        return None
    return _instance_payload(field, n, lat,
                             extra={"a": a, "covol": repr(direct)})


def prop_d_well_defined(ctx):
    field, n, lat, _ = _rand_lattice_instance(ctx)
    u = rand_unimodular(ctx.rng, field, n)
    changed = Lattice(field, n, lat.basis @ u)
    subspaces = {}
    for idx in range(2):
        dim = ctx.rng.randint(0, n)
        subspaces[f"W{idx}"] = gen_rational_subspace(ctx.rng, lat, dim)
    for name, w in subspaces.items():
        if ctx.d_delta(w, lat) != ctx.d_delta(w, changed):
            return _instance_payload(field, n, lat, subspaces,
                                     extra={"basis_change": True})
    return None


def prop_rank_identity(ctx):
    field, n, lat, _ = _rand_lattice_instance(ctx)
    l_sub = gen_rational_subspace(ctx.rng, lat, ctx.rng.randint(0, n))
    m_sub = gen_rational_subspace(ctx.rng, lat, ctx.rng.randint(0, n))
    cap = subspace_intersect(l_sub, m_sub)
    total = subspace_sum(l_sub, m_sub)
    ok = True
    for w in (cap, total):
        if w.is_zero:
            continue
        meet, rational = subspace_meet_lattice(w, lat)
        ok = ok and rational and meet.rank == w.dim
    ok = ok and cap.dim == l_sub.dim + m_sub.dim - total.dim
    if ok:
        return None
    return _instance_payload(field, n, lat, {"L": l_sub, "M": m_sub})


def prop_projection_factorization(ctx):
    field, n, lat, _ = _rand_lattice_instance(ctx)
    l_sub = gen_rational_subspace(ctx.rng, lat, ctx.rng.randint(0, n - 1))
    m_sub = gen_rational_subspace(ctx.rng, lat, ctx.rng.randint(0, n - 1))
    cap = subspace_intersect(l_sub, m_sub)
    if cap.is_zero:
        return None  # identity projection; the factorization is trivial
    # H: a rational subspace containing the intersection of L and M
    extra_dim = ctx.rng.randint(0, n - cap.dim)
    extra = gen_rational_subspace(ctx.rng, lat, extra_dim)
    h = subspace_sum(cap, extra)
    lhs = ctx.d_delta(h, lat)
    meet, _ = subspace_meet_lattice(cap, lat)
    alpha = orthonormalize(meet.basis_columns())
    if len(alpha) == n:
        return None  # projection would be zero; nothing to factor
    beta = extend_to_special_ortho(alpha, n).columns()
    proj_lat, _ = project_lattice(lat, alpha, beta)
    project = projection_map(field, alpha, beta)
    proj_h = Subspace(field, n, [project(v) for v in h.basis])
    rhs = ctx.d_delta(proj_h, proj_lat) + ctx.d_delta(cap, lat)
    if lhs == rhs:
        return None
    return _instance_payload(field, n, lat, {"L": l_sub, "M": m_sub, "H": h},
                             extra={"lhs": repr(lhs), "rhs": repr(rhs)})


def prop_submodularity(ctx):
    field, n, lat, _ = _rand_lattice_instance(ctx)
    l_sub = gen_rational_subspace(ctx.rng, lat, ctx.rng.randint(0, n))
    m_sub = gen_rational_subspace(ctx.rng, lat, ctx.rng.randint(0, n))
    cap = subspace_intersect(l_sub, m_sub)
    total = subspace_sum(l_sub, m_sub)
    d = ctx.d_delta
    e_l, e_m = d(l_sub, lat).e, d(m_sub, lat).e
    e_cap, e_sum = d(cap, lat).e, d(total, lat).e
    if e_l + e_m >= e_cap + e_sum:
        return None
    return _instance_payload(
        field, n, lat, {"L": l_sub, "M": m_sub},
        extra={"e_L": e_l, "e_M": e_m, "e_cap": e_cap, "e_sum": e_sum})


def prop_lift_correctness(ctx):
    field, n, lat, _ = _rand_lattice_instance(ctx)
    dim = ctx.rng.randint(1, n - 1)
    w = gen_rational_subspace(ctx.rng, lat, dim)
    meet, _ = subspace_meet_lattice(w, lat)
    alpha = orthonormalize(meet.basis_columns())
    beta = extend_to_special_ortho(alpha, n).columns()
    proj_lat, lift = project_lattice(lat, alpha, beta)
    project = projection_map(field, alpha, beta)
    span_alpha = Subspace(field, n, alpha)
    # sample points of the projected lattice
    for _ in range(5):
        x = zero_vector(field, n)
        for col in proj_lat.basis_columns():
            c = rand_poly(ctx.rng, field, 1)
            if not c.is_zero:
                x = vec_add(x, vec_scale(RatFunc.from_poly(c), col))
        y = lift(x)
        diff = tuple(a - b for a, b in zip(y, x))
        ok = (project(y) == tuple(x) and lat.contains(y)
              and span_alpha.contains(diff))
        if not ok:
            return _instance_payload(field, n, lat, {"W": w})
    return None


def prop_shortest_vector(ctx):
    field = field_for(ctx.params.q_list[0])
    n = 2
    lat, _ = gen_lattice(ctx.rng, field, n, ctx.params, diag_lo=0, diag_hi=1)
    vec, e = shortest_vector(lat, 1)
    if e.is_bottom:
        return _instance_payload(field, n, lat)
    # independent enumeration with separate arithmetic path
    best = None
    polys = [field.poly(codes) for codes in
             itertools.product(range(field.q), repeat=2)]
    for c1 in polys:
        for c2 in polys:
            if c1.is_zero and c2.is_zero:
                continue
            v = vec_add(vec_scale(RatFunc.from_poly(c1), lat.basis_columns()[0]),
                        vec_scale(RatFunc.from_poly(c2), lat.basis_columns()[1]))
            cand = vector_norm_exp(v)
            if best is None or cand < best:
                best = cand
    if e == best:
        return None
    return _instance_payload(field, n, lat,
                             extra={"got": repr(e), "oracle": repr(best)})


def prop_d_projection_oracle(ctx):
    field, n, lat, _ = _rand_lattice_instance(ctx)
    w = gen_rational_subspace(ctx.rng, lat, ctx.rng.randint(0, n))
    direct = ctx.d_delta(w, lat)
    via_projection = d_exp_via_projection(w, lat)
    if direct == via_projection:
        return None
    return _instance_payload(field, n, lat, {"W": w},
                             extra={"direct": repr(direct),
                                    "projection": repr(via_projection)})


def prop_primitive_extension(ctx):
    field, n, lat, _ = _rand_lattice_instance(ctx)
    dim = ctx.rng.randint(1, n)
    w = gen_rational_subspace(ctx.rng, lat, dim)
    meet, _ = subspace_meet_lattice(w, lat)
    prim = meet.basis_columns()
    ext = extend_primitive_to_lattice_basis(prim, lat)
    coords = [lat.coords(v) for v in ext.basis_columns()]
    change = Matrix.from_columns(field, coords)
    det = mat_det(change)
    ok = (ext.basis_columns()[: len(prim)] == prim
          and ext.module_equals(lat)
          and det.is_integral and det.num.is_constant and not det.is_zero)
    if ok:
        return None
    return _instance_payload(field, n, lat, {"W": w})


PROPERTIES = (
    ("valuation-multiplicative", prop_valuation_multiplicative),
    ("valuation-ultrametric", prop_valuation_ultrametric),
    ("integral-exponents", prop_integral_exponents),
    ("canonical-arithmetic", prop_canonical_arithmetic),
    ("hnf-idempotent", prop_hnf_idempotent),
    ("hnf-module-equal", prop_hnf_module_equal),
    ("snf-transform", prop_snf_transform),
    ("saturate-closure", prop_saturate_closure),
    ("wedge-agreement", prop_wedge_agreement),
    ("wedge-alternating", prop_wedge_alternating),
    ("norm-scaling", prop_norm_scaling),
    ("hadamard", prop_hadamard),
    ("norm-invariance", prop_norm_invariance),
    ("ortho-column-criterion", prop_ortho_column_criterion),
    ("orthonormalize-contract", prop_orthonormalize_contract),
    ("so-completion", prop_so_completion),
    ("transport", prop_transport),
    ("covolume-two-path", prop_covolume_two_path),
    ("d-well-defined", prop_d_well_defined),
    ("rank-identity", prop_rank_identity),
    ("projection-factorization", prop_projection_factorization),
    ("submodularity", prop_submodularity),
    ("lift-correctness", prop_lift_correctness),
    ("shortest-vector-bounded", prop_shortest_vector),
    ("d-projection-oracle", prop_d_projection_oracle),
    ("primitive-extension", prop_primitive_extension),
)


def property_names():
    return [name for name, _ in PROPERTIES]


def run_property_suite(params, names=None, overrides=None):
    """Run every registered property on fresh seeded instances.

    Failures are data (counted, first counterexample kept), not
    exceptions. `overrides` is a test-only hook: e.g. a corrupted d_delta
    implementation must make the submodularity property report a
    counterexample.
    """
    overrides = overrides or {}
    selected = [(i, name, fn) for i, (name, fn) in enumerate(PROPERTIES)
                if names is None or name in names]
    report = SuiteReport(params=params)
    for p_idx, name, fn in selected:
        result = PropertyResult(name=name)
        start = time.perf_counter()
        prop_seed = mix64(params.seed ^ mix64((p_idx + 1) * GOLDEN_GAMMA))
        for i in range(params.count):
            rng = SplitMix64(instance_seed(prop_seed, i))
            ctx = _Ctx(rng, params, overrides)
            try:
                counterexample = fn(ctx)
            except FFLatError as exc:
                counterexample = {"error": type(exc).__name__,
                                  "message": str(exc)}
            if counterexample is None:
                result.passed += 1
            else:
                result.failed += 1
                if result.first_counterexample is None:
                    counterexample = dict(counterexample)
                    counterexample.setdefault("property", name)
                    counterexample.setdefault("instance_index", i)
                    result.first_counterexample = counterexample
        result.seconds = time.perf_counter() - start
        report.results.append(result)
    return report

"""Lattices, rational subspaces, covolume exponents, projections."""

import random

import pytest

from fflat.algebra import FieldConfig, QExp
from fflat.errors import (
    ContainmentError,
    NotPrimitive,
    NotSubmodule,
    ProjectionSetupError,
    RankError,
    ShapeError,
    ZeroModule,
)
from fflat.exterior import vector_norm_exp
from fflat.lattice import (
    CovolConfig,
    Lattice,
    Subspace,
    check_submodularity,
    covolume,
    d_delta,
    extend_primitive_to_lattice_basis,
    is_primitive,
    module_basis,
    primitive_vector_in,
    project_lattice,
    projection_map,
    shortest_vector,
    subspace_intersect,
    subspace_meet_lattice,
    subspace_sum,
)
from fflat.linalg import Matrix, basis_vector, mat_det

import oracles

F2 = FieldConfig(2)
F3 = FieldConfig(3)
ONE, ZERO, T = F2.one_rf(), F2.zero_rf(), F2.T
R2 = Lattice.standard(F2, 2)
R3 = Lattice.standard(F2, 3)


# ---------------------------------------------------------------------------
# module generation


def test_module_basis_single():
    assert module_basis(F2, 2, [(ONE, ZERO)]).basis_columns() == [(ONE, ZERO)]


def test_module_basis_collapses_multiple():
    lat = module_basis(F2, 2, [(T, T), (ONE, ONE)])
    assert lat.basis_columns() == [(ONE, ONE)]
    # membership oracle: (T,T) = T*(1,1)
    assert lat.contains((T, T))


def test_module_basis_congruence_module():
    lat = module_basis(F2, 2, [(T, ZERO), (ZERO, T), (ONE, ONE)])
    assert lat.rank == 2
    # module is {(a,b): a = b mod T}: check small residue classes
    pts = oracles.enumerate_module(lat.basis_columns(), 1)
    for v in pts:
        diff = v[0] - v[1]
        assert diff.is_integral
        assert diff.is_zero or (diff.num % T.num).is_zero
    assert lat.contains((T, ZERO)) and lat.contains((ONE, ONE))
    assert not lat.contains((ONE, ZERO))


def test_module_basis_zero_raises():
    with pytest.raises(ZeroModule):
        module_basis(F2, 2, [(ZERO, ZERO)])


def test_lattice_rejects_dependent_basis():
    with pytest.raises(RankError):
        Lattice(F2, 2, Matrix.from_columns(F2, [(ONE, ONE), (ONE, ONE)]))


# ---------------------------------------------------------------------------
# meet and d exponents


def test_meet_standard_axis():
    m, flag = subspace_meet_lattice(Subspace(F2, 2, [(ONE, ZERO)]), R2)
    assert flag and m.basis_columns() == [(ONE, ZERO)]


def test_meet_scales_to_primitive():
    m, _ = subspace_meet_lattice(Subspace(F2, 2, [(F2.T_pow(-1), ONE)]), R2)
    assert m.basis_columns() == [(ONE, T)]
    # gcd oracle: coordinates of (1, T) are coprime
    assert oracles.gcd_exhaustive(ONE.num, T.num, 1).is_one


def test_meet_in_lattice_coordinates():
    lat = Lattice(F2, 2, Matrix.from_columns(F2, [(ONE, ZERO), (ZERO, F2.T_pow(-1))]))
    m, flag = subspace_meet_lattice(Subspace(F2, 2, [(ZERO, ONE)]), lat)
    assert flag and m.basis_columns() == [(ZERO, F2.T_pow(-1))]


def test_meet_outside_span_raises():
    lat = Lattice(F2, 2, Matrix.from_columns(F2, [(ONE, ZERO)]))
    with pytest.raises(ContainmentError):
        subspace_meet_lattice(Subspace(F2, 2, [(ZERO, ONE)]), lat)


def test_d_delta_conventions():
    assert d_delta(Subspace.zero(F2, 2), R2) == QExp(0)
    assert d_delta(Subspace.full(F2, 2), R2) == QExp(0)


def test_d_delta_primitive_vector():
    w = Subspace(F2, 2, [(ONE, T)])
    assert d_delta(w, R2) == QExp(1)
    # oracle: the meet basis is the primitive vector (1, T); max norm q^1
    assert oracles.vec_norm_exp_oracle((ONE, T)) == QExp(1)


def test_covolume_normalization():
    for n in range(1, 6):
        assert covolume(Lattice.standard(F2, n)) == QExp(-n)


def test_covolume_rank_one():
    lat = Lattice(F2, 2, Matrix.from_columns(F2, [(T, ZERO)]))
    assert covolume(lat) == QExp(0)  # -1 + 1


def test_covol_config_rejects_other_genus():
    with pytest.raises(ValueError):
        CovolConfig(genus=1)


# ---------------------------------------------------------------------------
# subspace lattice operations


def test_axis_intersections():
    e = [basis_vector(F2, 3, i) for i in range(3)]
    s1 = Subspace(F2, 3, [e[0], e[1]])
    s2 = Subspace(F2, 3, [e[1], e[2]])
    assert subspace_intersect(Subspace(F2, 2, [(ONE, ZERO)]),
                              Subspace(F2, 2, [(ZERO, ONE)])).is_zero
    assert subspace_intersect(s1, s2) == Subspace(F2, 3, [e[1]])


def test_sum_contains_expected_vector():
    a = Subspace(F2, 3, [(ONE, ZERO, T)])
    b = Subspace(F2, 3, [(ONE, ZERO, ZERO)])
    s = subspace_sum(a, b)
    assert s.dim == 2
    assert s.contains((ZERO, ZERO, T))


def test_dimension_formula():
    rng = random.Random(4)
    for _ in range(40):
        n = rng.randrange(1, 5)
        va = [tuple(F2.rf(rng.randrange(2)) * F2.T_pow(rng.randrange(2))
                    for _ in range(n)) for _ in range(rng.randrange(n + 1))]
        vb = [tuple(F2.rf(rng.randrange(2)) * F2.T_pow(rng.randrange(2))
                    for _ in range(n)) for _ in range(rng.randrange(n + 1))]
        a, b = Subspace(F2, n, va), Subspace(F2, n, vb)
        assert a.dim + b.dim == subspace_sum(a, b).dim + subspace_intersect(a, b).dim


def test_ambient_mismatch():
    with pytest.raises(ShapeError):
        subspace_sum(Subspace.zero(F2, 2), Subspace.zero(F2, 3))


# ---------------------------------------------------------------------------
# primitivity and basis extension


def test_primitive_examples():
    assert is_primitive(Lattice(F2, 2, Matrix.from_columns(F2, [(ONE, ONE)])), R2)
    assert not is_primitive(Lattice(F2, 2, Matrix.from_columns(F2, [(T, T)])), R2)
    assert is_primitive(R2, R2)


def test_primitive_requires_submodule():
    half = Lattice(F2, 2, Matrix.from_columns(F2, [(F2.T_pow(-1), ZERO)]))
    with pytest.raises(NotSubmodule):
        is_primitive(half, R2)


def test_extension_examples():
    ext = extend_primitive_to_lattice_basis([(ONE, ONE)], R2)
    assert ext.basis_columns() == [(ONE, ONE), (ZERO, ONE)]
    assert mat_det(ext.basis).is_one
    ext2 = extend_primitive_to_lattice_basis([basis_vector(F2, 3, 0)], R3)
    assert ext2.basis_columns() == [basis_vector(F2, 3, i) for i in range(3)]
    ext3 = extend_primitive_to_lattice_basis(R2.basis_columns(), R2)
    assert ext3.basis_columns() == R2.basis_columns()


def test_extension_rejects_imprimitive():
    with pytest.raises(NotPrimitive):
        extend_primitive_to_lattice_basis([(T, T)], R2)


# ---------------------------------------------------------------------------
# projections


def test_projection_axis_case():
    alpha = [basis_vector(F2, 2, 0)]
    beta = [basis_vector(F2, 2, 0), basis_vector(F2, 2, 1)]
    img, lift = project_lattice(R2, alpha, beta)
    assert img.basis_columns() == [(ZERO, ONE)]
    assert lift((ZERO, ONE)) == (ZERO, ONE)


def test_projection_skew_module():
    lat = module_basis(F2, 2, [(ONE, ONE), (ZERO, T)])
    img, lift = project_lattice(lat, [(ONE, ONE)], [(ONE, ONE), (ZERO, ONE)])
    assert img.basis_columns() == [(ZERO, T)]
    y = lift((ZERO, T))
    assert lat.contains(y)
    # lift differs from the input only inside span(alpha)
    diff = tuple(a - b for a, b in zip(y, (ZERO, T)))
    assert Subspace(F2, 2, [(ONE, ONE)]).contains(diff)


def test_projection_degenerate_raises():
    beta = [basis_vector(F2, 2, 0), basis_vector(F2, 2, 1)]
    with pytest.raises(ProjectionSetupError):
        project_lattice(R2, beta, beta)


def test_projection_requires_prefix():
    beta = [basis_vector(F2, 2, 0), basis_vector(F2, 2, 1)]
    with pytest.raises(ProjectionSetupError):
        projection_map(F2, [basis_vector(F2, 2, 1)], beta)


def test_projection_map_is_projection():
    beta = [(ONE, ONE), (ZERO, ONE)]
    proj = projection_map(F2, [(ONE, ONE)], beta)
    x = (T, ONE + T)
    assert proj(proj(x)) == proj(x)
    assert proj((ONE, ONE)) == (ZERO, ZERO)


# ---------------------------------------------------------------------------
# submodularity and shortest vectors


def test_submodularity_axis_planes():
    e = [basis_vector(F2, 3, i) for i in range(3)]
    rep = check_submodularity(R3, Subspace(F2, 3, [e[0], e[1]]),
                              Subspace(F2, 3, [e[1], e[2]]))
    assert (rep.e_l, rep.e_m, rep.e_cap, rep.e_sum) == (0, 0, 0, 0)
    assert rep.holds and not rep.strict
    assert rep.covol_holds


def test_submodularity_strict_fixture():
    rep = check_submodularity(R2, Subspace(F2, 2, [(ONE, ZERO)]),
                              Subspace(F2, 2, [(ONE, T)]))
    assert (rep.e_l, rep.e_m, rep.e_cap, rep.e_sum) == (0, 1, 0, 0)
    assert rep.holds and rep.strict


def test_submodularity_equal_subspaces():
    w = Subspace(F2, 2, [(ONE, T)])
    rep = check_submodularity(R2, w, w)
    assert rep.e_l == rep.e_m == rep.e_cap == rep.e_sum
    assert rep.holds and not rep.strict


def test_shortest_vector_standard():
    vec, e = shortest_vector(R2, 1)
    assert e == QExp(0)
    assert vector_norm_exp(vec) == QExp(0)


def test_shortest_vector_diagonal():
    lat = Lattice(F2, 2, Matrix.from_columns(F2, [(T, ZERO), (ZERO, T * T)]))
    vec, e = shortest_vector(lat, 1)
    assert e == QExp(1)
    assert vec == (T, ZERO)
    ovec, oe = oracles.shortest_vector_exhaustive(lat.basis_columns(), 1)
    assert oe == e


def test_shortest_vector_skew():
    lat = module_basis(F2, 2, [(ONE, ONE), (ZERO, T)])
    vec, e = shortest_vector(lat, 1)
    assert e == QExp(0)
    assert vec == (ONE, ONE)
    _, oe = oracles.shortest_vector_exhaustive(lat.basis_columns(), 1)
    assert oe == e


def test_primitive_vector_in_gcd_route():
    w = Subspace(F2, 2, [(F2.T_pow(-1), ONE)])
    v = primitive_vector_in(w, R2)
    assert v == (ONE, T)
    assert vector_norm_exp(v) == QExp(1)


# ---------------------------------------------------------------------------
# well-definedness under unimodular change


def test_d_delta_unimodular_invariance_fixed():
    u = Matrix.from_columns(F2, [(ONE, T), (ZERO, ONE)])  # unimodular
    changed = Lattice(F2, 2, R2.basis @ u)
    for w in [Subspace(F2, 2, [(ONE, T)]), Subspace(F2, 2, [(ONE, ZERO)]),
              Subspace.full(F2, 2)]:
        assert d_delta(w, changed) == d_delta(w, R2)

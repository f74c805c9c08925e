"""Agreement between the compiled kernel and the pure-Python reference."""

import random

import pytest

from fflat.algebra import FieldConfig
from fflat._core import BACKEND, _pykernel

compiled = pytest.importorskip(
    "fflat._core._kernel", reason="compiled kernel not built")

FIELDS = [FieldConfig(2), FieldConfig(3), FieldConfig(5),
          FieldConfig(2, 2, [1, 1, 1]), FieldConfig(3, 2, [1, 0, 1])]


def ops_pair(field):
    tables = (field.q, field._add_t, field._sub_t, field._mul_t,
              field._neg_t, field._inv_t)
    return _pykernel.FieldOps(*tables), compiled.FieldOps(*tables)


def rand_codes(rng, field, max_len):
    codes = [rng.randrange(field.q) for _ in range(rng.randrange(max_len + 1))]
    while codes and codes[-1] == 0:
        codes.pop()
    return codes


def test_backend_reports_name():
    assert BACKEND in ("cython", "python")
    assert compiled.BACKEND == "cython"
    assert _pykernel.BACKEND == "python"


def test_kernels_agree_on_random_inputs():
    rng = random.Random(20260810)
    for field in FIELDS:
        py_ops, c_ops = ops_pair(field)
        for _ in range(300):
            a = rand_codes(rng, field, 9)
            b = rand_codes(rng, field, 9)
            assert _pykernel.poly_add(py_ops, a, b) == compiled.poly_add(c_ops, a, b)
            assert _pykernel.poly_sub(py_ops, a, b) == compiled.poly_sub(c_ops, a, b)
            assert _pykernel.poly_mul(py_ops, a, b) == compiled.poly_mul(c_ops, a, b)
            assert _pykernel.poly_neg(py_ops, a) == compiled.poly_neg(c_ops, a)
            c = rng.randrange(field.q)
            assert _pykernel.poly_scale(py_ops, a, c) == compiled.poly_scale(c_ops, a, c)
            if b:
                assert _pykernel.poly_divmod(py_ops, a, b) \
                    == compiled.poly_divmod(c_ops, a, b)
            if a or b:
                assert _pykernel.poly_gcd(py_ops, a, b) \
                    == compiled.poly_gcd(c_ops, a, b)
            if b:
                assert _pykernel.frac_normalize(py_ops, a, b) \
                    == compiled.frac_normalize(c_ops, a, b)


def test_kernels_agree_on_edge_shapes():
    field = FieldConfig(2)
    py_ops, c_ops = ops_pair(field)
    cases = [([], []), ([1], []), ([], [1]), ([1], [1]),
             ([0, 1], [1]), ([1], [0, 1]), ([1, 1, 1], [0, 1])]
    for a, b in cases:
        assert _pykernel.poly_add(py_ops, a, b) == compiled.poly_add(c_ops, a, b)
        assert _pykernel.poly_mul(py_ops, a, b) == compiled.poly_mul(c_ops, a, b)
        if b:
            assert _pykernel.poly_divmod(py_ops, a, b) \
                == compiled.poly_divmod(c_ops, a, b)
            assert _pykernel.frac_normalize(py_ops, a, b) \
                == compiled.frac_normalize(c_ops, a, b)
        if a or b:
            assert _pykernel.poly_gcd(py_ops, a, b) \
                == compiled.poly_gcd(c_ops, a, b)


def test_gcd_short_by_long():
    # remainder path where the divisor is longer than the dividend
    field = FieldConfig(5)
    py_ops, c_ops = ops_pair(field)
    a, b = [2], [0, 0, 1]
    assert _pykernel.poly_divmod(py_ops, a, b) == compiled.poly_divmod(c_ops, a, b) \
        == ([], [2])
    assert _pykernel.poly_gcd(py_ops, a, b) == compiled.poly_gcd(c_ops, a, b) == [1]

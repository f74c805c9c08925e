"""Independent brute-force oracles used to freeze expected test values.

Everything here deliberately avoids the production code paths it checks:
determinants are cofactor expansions, module membership is exhaustive
enumeration, field checks use hand-built tables, and valuations come from
explicit Laurent expansion. Oracles are slow and only run at desk scale.
"""

import itertools

from fflat.algebra import Poly, RatFunc, exp_max


# -- hand-built F4 = F2[a]/(a^2 + a + 1): elements as (c0, c1) pairs

F4_ELEMS = [(0, 0), (1, 0), (0, 1), (1, 1)]


def f4_mul(x, y):
    # (x0 + x1 a)(y0 + y1 a) with a^2 = a + 1 over F2
    c0 = (x[0] * y[0]) ^ (x[1] * y[1])
    c1 = (x[0] * y[1]) ^ (x[1] * y[0]) ^ (x[1] * y[1])
    return (c0, c1)


def f4_inverse_table():
    inv = {}
    for x in F4_ELEMS[1:]:
        for y in F4_ELEMS[1:]:
            if f4_mul(x, y) == (1, 0):
                inv[x] = y
    return inv


# -- Laurent expansion of num/den in the variable 1/T

def laurent_leading_index(x, depth=32):
    """First index l with x = sum_{i >= -l} a_i (1/T)^i, a_{-l} != 0.

    Returns None for x = 0. Computed by explicit series long division:
    repeatedly subtract (lead(num)/lead(den)) * T^(dn - dd) * den.
    """
    num, den = x.num, x.den
    if num.is_zero:
        return None
    lead_index = None
    for _ in range(depth):
        if num.is_zero:
            break
        shift = num.degree - den.degree
        c = num.leading() / den.leading()
        if lead_index is None:
            lead_index = shift
        term = Poly(num.field, [0] * max(shift, 0) + [c.code]) if shift >= 0 else None
        if shift >= 0:
            num = num - term * den
        else:
            # remaining tail is strictly smaller; leading index already found
            break
    return lead_index


# -- exact determinants by cofactor expansion


def cofactor_det(rows):
    n = len(rows)
    assert all(len(r) == n for r in rows)
    if n == 1:
        return rows[0][0]
    total = None
    for j in range(n):
        entry = rows[0][j]
        if entry.is_zero:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = entry * cofactor_det(minor)
        if j % 2 == 1:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return rows[0][0].field.zero_rf()
    return total


def wedge_minor_coords(vectors, n):
    """Plücker coordinates of v_1 ^ ... ^ v_m by cofactor-expansion minors."""
    m = len(vectors)
    coords = {}
    for rows in itertools.combinations(range(n), m):
        sub = [[vectors[c][r] for c in range(m)] for r in rows]
        d = cofactor_det(sub)
        if not d.is_zero:
            coords[tuple(r + 1 for r in rows)] = d
    return coords


def vec_norm_exp_oracle(vec):
    return exp_max(c.norm_exp() for c in vec)


# -- exhaustive module enumeration over R_nu = F_q[T]


def all_polys(field, max_deg):
    """Every polynomial of degree <= max_deg (including 0)."""
    out = []
    for codes in itertools.product(range(field.q), repeat=max_deg + 1):
        out.append(field.poly(codes))
    return out


def enumerate_module(columns, coeff_deg_bound):
    """All R_nu-combinations of the columns with coefficient degree <= bound."""
    field = columns[0][0].field
    polys = all_polys(field, coeff_deg_bound)
    n = len(columns[0])
    points = set()
    for coeffs in itertools.product(polys, repeat=len(columns)):
        vec = [field.zero_rf()] * n
        for c, col in zip(coeffs, columns):
            rc = RatFunc.from_poly(c)
            for i in range(n):
                vec[i] = vec[i] + rc * col[i]
        points.add(tuple(vec))
    return points


def shortest_vector_exhaustive(columns, coeff_deg_bound):
    """Minimal norm exponent over nonzero bounded-coefficient combinations."""
    field = columns[0][0].field
    polys = all_polys(field, coeff_deg_bound)
    n = len(columns[0])
    best = None
    best_vec = None
    for coeffs in itertools.product(polys, repeat=len(columns)):
        if all(p.is_zero for p in coeffs):
            continue
        vec = [field.zero_rf()] * n
        for c, col in zip(coeffs, columns):
            rc = RatFunc.from_poly(c)
            for i in range(n):
                vec[i] = vec[i] + rc * col[i]
        e = vec_norm_exp_oracle(vec)
        if best is None or e < best:
            best = e
            best_vec = tuple(vec)
    return best_vec, best


def poly_divides(d, f):
    return (f % d).is_zero


def monic_polys(field, deg):
    out = []
    for codes in itertools.product(range(field.q), repeat=deg):
        out.append(Poly(field, list(codes) + [1]))
    return out


def gcd_exhaustive(f, g, max_deg):
    """Greatest-degree monic common divisor found by scanning all candidates."""
    field = f.field
    best = Poly.one(field)
    for d in range(1, max_deg + 1):
        for cand in monic_polys(field, d):
            if poly_divides(cand, f) and poly_divides(cand, g):
                best = cand
    return best

"""Pure-Python polynomial kernels over a table-driven finite field.

Polynomials are plain lists of element codes (ints in [0, q)), ascending
degree, no trailing zeros; [] is the zero polynomial. The compiled kernel
in _kernel.pyx implements the same functions with identical semantics;
either module can back fflat.algebra.

Field arithmetic is looked up in flat q*q tables (add/sub/mul) plus q-sized
neg/inv tables, all held by a FieldOps instance.
"""

BACKEND = "python"


class FieldOps:
    """Arithmetic tables for one finite field, shared by all kernel calls."""

    __slots__ = ("q", "add_t", "sub_t", "mul_t", "neg_t", "inv_t")

    def __init__(self, q, add_t, sub_t, mul_t, neg_t, inv_t):
        self.q = q
        self.add_t = add_t
        self.sub_t = sub_t
        self.mul_t = mul_t
        self.neg_t = neg_t
        self.inv_t = inv_t


def poly_add(ops, a, b):
    if not a:
        return list(b)
    if not b:
        return list(a)
    q = ops.q
    add_t = ops.add_t
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i in range(len(b)):
        out[i] = add_t[out[i] * q + b[i]]
    while out and out[-1] == 0:
        out.pop()
    return out


def poly_neg(ops, a):
    neg_t = ops.neg_t
    return [neg_t[c] for c in a]


def poly_sub(ops, a, b):
    if not b:
        return list(a)
    q = ops.q
    sub_t = ops.sub_t
    na, nb = len(a), len(b)
    if na >= nb:
        out = list(a)
        for i in range(nb):
            out[i] = sub_t[out[i] * q + b[i]]
    else:
        neg_t = ops.neg_t
        out = [neg_t[c] for c in b]
        for i in range(na):
            out[i] = sub_t[a[i] * q + b[i]]
    while out and out[-1] == 0:
        out.pop()
    return out


def poly_scale(ops, a, c):
    # c * a for a scalar code c
    if c == 0 or not a:
        return []
    if c == 1:
        return list(a)
    mul_t = ops.mul_t
    row = c * ops.q
    return [mul_t[row + x] for x in a]


def poly_mul(ops, a, b):
    if not a or not b:
        return []
    q = ops.q
    add_t = ops.add_t
    mul_t = ops.mul_t
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        row = ai * q
        for j, bj in enumerate(b):
            if bj:
                k = i + j
                out[k] = add_t[out[k] * q + mul_t[row + bj]]
    # leading product of nonzero field elements is nonzero: no trim needed
    return out


def poly_divmod(ops, a, b):
    # b must be nonzero (checked by the caller)
    db = len(b) - 1
    if len(a) <= db:
        return [], list(a)
    q = ops.q
    sub_t = ops.sub_t
    mul_t = ops.mul_t
    lead_inv = ops.inv_t[b[-1]]
    rem = list(a)
    quot = [0] * (len(a) - db)
    for s in range(len(a) - db - 1, -1, -1):
        c = rem[s + db]
        if c == 0:
            continue
        qc = mul_t[c * q + lead_inv]
        quot[s] = qc
        row = qc * q
        for j in range(db):
            bj = b[j]
            if bj:
                k = s + j
                rem[k] = sub_t[rem[k] * q + mul_t[row + bj]]
        rem[s + db] = 0
    del rem[db:]
    while rem and rem[-1] == 0:
        rem.pop()
    return quot, rem


def poly_gcd(ops, a, b):
    # monic gcd; [] only if both inputs are zero
    a = list(a)
    b = list(b)
    while b:
        a, b = b, poly_divmod(ops, a, b)[1]
    if not a:
        return a
    lead = a[-1]
    if lead != 1:
        return poly_scale(ops, a, ops.inv_t[lead])
    return a


def frac_normalize(ops, num, den):
    """Reduce num/den to canonical form: coprime, monic nonzero denominator."""
    if not num:
        return [], [1]
    if len(den) == 1 and den[0] == 1:
        return list(num), [1]
    g = poly_gcd(ops, num, den)
    if len(g) > 1:
        num = poly_divmod(ops, num, g)[0]
        den = poly_divmod(ops, den, g)[0]
    else:
        num = list(num)
        den = list(den)
    lead = den[-1]
    if lead != 1:
        c = ops.inv_t[lead]
        num = poly_scale(ops, num, c)
        den = poly_scale(ops, den, c)
    return num, den

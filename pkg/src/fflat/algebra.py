"""Exact arithmetic in F_q, F_q[T], and F_q(T) with the degree valuation.

The ground field F_q (q = p^k, q <= 1024) is table-driven: elements are
integer codes in [0, q) and all arithmetic is a flat-table lookup, which
keeps the polynomial kernels branch-free and exact. For k > 1 the code of
an element sum(c_i * a^i) is sum(c_i * p^i), where `a` is the residue of
the caller-supplied irreducible modulus.

Polynomials over F_q are coefficient code lists (ascending degree, no
trailing zeros, [] for zero); rational functions are kept in reduced
canonical form (coprime, monic denominator, 0 represented as 0/1).

The place at infinity is fixed: the uniformizer is 1/T, the valuation of
a reduced fraction is deg(den) - deg(num), and the absolute value of x is
q^(-val(x)). Norm values are never floats; they are carried as QExp, the
exact integer exponent with a distinguished BOTTOM for the norm of 0.

Element strings follow the grammar used by the CLI and fixtures:
polynomials are sums `c*T^d + ... + c0` with integer coefficients (prime
field) or parenthesized `(a^j + ... )` coefficients (extension field);
rational functions are `num/den` split at the single top-level slash.
Whitespace is ignored.
"""

from array import array
import functools
import math
import re

from .errors import (
    DivisionByZero,
    ElementParseError,
    UndefinedGcd,
    UnsupportedFieldSize,
)
from ._core import kernel

MAX_FIELD_SIZE = 1024

NEG_INF = float("-inf")


# ---------------------------------------------------------------------------
# Exact norm exponents


@functools.total_ordering
class QExp:
    """A norm value q^e stored as the exact integer exponent e.

    The norm of 0 is the distinguished BOTTOM value: smaller than every
    exponent and absorbing under addition (q^BOTTOM * q^e = q^BOTTOM),
    so multiplicativity and ultrametric comparisons hold verbatim.
    """

    __slots__ = ("e",)

    def __init__(self, e):
        if e is not None and not isinstance(e, int):
            raise TypeError(f"exponent must be an int or None, got {e!r}")
        object.__setattr__(self, "e", e)

    def __setattr__(self, name, value):
        raise AttributeError("QExp is immutable")

    @property
    def is_bottom(self):
        return self.e is None

    def _coerce(self, other):
        if isinstance(other, QExp):
            return other
        if isinstance(other, int):
            return QExp(other)
        return None

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.e == other.e

    def __lt__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.e is None:
            return other.e is not None
        if other.e is None:
            return False
        return self.e < other.e

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.e is None or other.e is None:
            return BOTTOM
        return QExp(self.e + other.e)

    __radd__ = __add__

    def __neg__(self):
        if self.e is None:
            raise ValueError("cannot negate BOTTOM")
        return QExp(-self.e)

    def __hash__(self):
        return hash(("QExp", self.e))

    def __repr__(self):
        return "0" if self.e is None else f"q^{self.e}"


BOTTOM = QExp(None)


def exp_max(values):
    """max over QExp values; BOTTOM for an empty iterable."""
    best = BOTTOM
    for v in values:
        if best < v:
            best = v
    return best


# ---------------------------------------------------------------------------
# Finite field construction (table-driven)


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _fp_trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _fp_mulmod(a, b, mod, p):
    # F_p[x] product reduced by the monic modulus; used only at field setup
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    dm = len(mod) - 1
    while len(out) > dm:
        c = out[-1]
        if c:
            s = len(out) - 1 - dm
            for j in range(dm):
                out[s + j] = (out[s + j] - c * mod[j]) % p
        out.pop()
    return _fp_trim(out)


def _fp_divisible(f, g, p):
    # trial division of f by monic g over F_p
    f = list(f)
    dg = len(g) - 1
    inv_lead = pow(g[-1], p - 2, p)
    while len(f) - 1 >= dg and f:
        c = (f[-1] * inv_lead) % p
        s = len(f) - 1 - dg
        for j in range(dg + 1):
            f[s + j] = (f[s + j] - c * g[j]) % p
        _fp_trim(f)
    return not f


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class FieldConfig:
    """The finite field F_q with q = p^k and the fixed degree-1 place data.

    The residue field of the place at infinity is F_q itself, so the
    norm base q_nu equals q. Extension fields (k > 1) require a monic
    irreducible modulus of degree k over F_p, verified at construction by
    trial factorization.
    """

    __slots__ = ("p", "k", "q", "modulus", "_ops", "_exp", "_log",
                 "_add_t", "_sub_t", "_mul_t", "_neg_t", "_inv_t",
                 "_one_poly", "_T_rf", "_one_rf", "_zero_rf")

    def __init__(self, p, k=1, modulus=None):
        if not _is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        q = p ** k
        if q > MAX_FIELD_SIZE:
            raise UnsupportedFieldSize(
                f"q = {q} exceeds the table-arithmetic limit {MAX_FIELD_SIZE}")
        if k == 1:
            if modulus is not None:
                raise ValueError("modulus must be absent for prime fields")
            mod = None
        else:
            if modulus is None:
                raise ValueError("extension field needs an irreducible modulus")
            mod = [int(c) % p for c in modulus]
            _fp_trim(mod)
            if len(mod) != k + 1:
                raise ValueError(f"modulus must have degree {k}")
            if mod[-1] != 1:
                inv = pow(mod[-1], p - 2, p)
                mod = [(c * inv) % p for c in mod]
            for d in range(1, k // 2 + 1):
                for idx in range(p ** d):
                    g, t = [], idx
                    for _ in range(d):
                        g.append(t % p)
                        t //= p
                    g.append(1)  # monic candidate divisor of degree d
                    if _fp_divisible(mod, g, p):
                        raise ValueError("modulus is reducible over F_p")
            mod = tuple(mod)
        self.p = p
        self.k = k
        self.q = q
        self.modulus = mod
        self._build_tables()
        self._one_poly = Poly._make(self, [1])
        self._one_rf = RatFunc._make(self._one_poly, self._one_poly)
        self._zero_rf = RatFunc._make(Poly._make(self, []), self._one_poly)
        self._T_rf = RatFunc._make(Poly._make(self, [0, 1]), self._one_poly)

    # -- construction internals

    def _mul_raw(self, x, y):
        if self.k == 1:
            return (x * y) % self.p
        a, b = self._digits(x), self._digits(y)
        return self._undigits(_fp_mulmod(a, b, list(self.modulus), self.p))

    def _digits(self, code):
        out = []
        while code:
            out.append(code % self.p)
            code //= self.p
        return out

    def _undigits(self, digits):
        code = 0
        for c in reversed(digits):
            code = code * self.p + c
        return code

    def _build_tables(self):
        p, k, q = self.p, self.k, self.q
        # multiplicative generator -> exp/log tables -> mul/inv in O(q^2)
        order = q - 1
        factors = _prime_factors(order) if order > 1 else []
        gen = 1
        for cand in range(2, q):
            ok = True
            for r in factors:
                acc, e, base = 1, order // r, cand
                while e:
                    if e & 1:
                        acc = self._mul_raw(acc, base)
                    base = self._mul_raw(base, base)
                    e >>= 1
                if acc == 1:
                    ok = False
                    break
            if ok:
                gen = cand
                break
        exp_list = [1] * max(order, 1)
        for i in range(1, order):
            exp_list[i] = self._mul_raw(exp_list[i - 1], gen)
        log_list = [0] * q
        for i, v in enumerate(exp_list):
            log_list[v] = i
        if k == 1:
            add = array("i", [(i + j) % p for i in range(q) for j in range(q)])
            neg = array("i", [(-i) % p for i in range(q)])
        else:
            neg_digit = [(-i) % p for i in range(p)]
            codes = [self._digits(i) for i in range(q)]
            flat = []
            for i in range(q):
                di = codes[i]
                for j in range(q):
                    dj = codes[j]
                    if len(di) < len(dj):
                        di2, dj2 = dj, di
                    else:
                        di2, dj2 = di, dj
                    s = list(di2)
                    for t2 in range(len(dj2)):
                        s[t2] = (s[t2] + dj2[t2]) % p
                    flat.append(self._undigits(s))
            add = array("i", flat)
            neg = array("i", [self._undigits([neg_digit[c] for c in self._digits(i)])
                               for i in range(q)])
        sub = array("i", [add[i * q + neg[j]] for i in range(q) for j in range(q)])
        mul = array("i", [0]) * (q * q)
        for i in range(1, q):
            li = log_list[i]
            row = i * q
            for j in range(1, q):
                mul[row + j] = exp_list[(li + log_list[j]) % order]
        inv = array("i", [0]) * q
        for i in range(1, q):
            inv[i] = exp_list[(order - log_list[i]) % order]
        self._exp = exp_list
        self._log = log_list
        self._add_t = add
        self._sub_t = sub
        self._mul_t = mul
        self._neg_t = neg
        self._inv_t = inv
        self._ops = kernel.FieldOps(q, add, sub, mul, neg, inv)

    # -- public surface

    @property
    def q_nu(self):
        # residue-field size of the degree-1 place at infinity
        return self.q

    def elem(self, value):
        if isinstance(value, FqElem):
            if value.field != self:
                raise ValueError("element from a different field")
            return value
        if isinstance(value, int):
            if self.k == 1:
                return FqElem(self, value % self.p)
            if 0 <= value < self.q:
                return FqElem(self, value)
            raise ValueError(f"code {value} out of range for F_{self.q}")
        coeffs = list(value)
        if len(coeffs) > self.k:
            raise ValueError("too many coordinates")
        code = self._undigits([int(c) % self.p for c in coeffs])
        return FqElem(self, code)

    def zero(self):
        return FqElem(self, 0)

    def one(self):
        return FqElem(self, 1)

    def gen(self):
        if self.k == 1:
            raise ValueError("prime field has no adjoined generator")
        return FqElem(self, self.p)

    def elements(self):
        return [FqElem(self, c) for c in range(self.q)]

    def poly(self, coeffs):
        codes = [self.elem(c).code for c in coeffs]
        while codes and codes[-1] == 0:
            codes.pop()
        return Poly._make(self, codes)

    @property
    def T(self):
        return self._T_rf

    def one_rf(self):
        return self._one_rf

    def zero_rf(self):
        return self._zero_rf

    def rf(self, c):
        """Constant rational function."""
        code = self.elem(c).code
        if code == 0:
            return self._zero_rf
        return RatFunc._make(Poly._make(self, [code]), self._one_poly)

    def T_pow(self, e):
        """T^e as a rational function, any integer e."""
        if e >= 0:
            return RatFunc._make(Poly._make(self, [0] * e + [1]), self._one_poly)
        return RatFunc._make(self._one_poly, Poly._make(self, [0] * (-e) + [1]))

    def parse(self, text):
        return parse_element(self, text)

    def __eq__(self, other):
        if not isinstance(other, FieldConfig):
            return NotImplemented
        return (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        if self.k == 1:
            return f"F_{self.p}"
        terms = []
        for d in range(self.k, -1, -1):
            c = self.modulus[d]
            if c == 0:
                continue
            mono = "1" if d == 0 else ("a" if d == 1 else f"a^{d}")
            terms.append(mono if (c == 1 and d > 0) else
                         (str(c) if d == 0 else f"{c}*{mono}"))
        return f"F_{self.q} = F_{self.p}[a]/({' + '.join(terms)})"


class FqElem:
    """An element of F_q, stored as its integer code."""

    __slots__ = ("field", "code")

    def __init__(self, field, code):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "code", code)

    def __setattr__(self, name, value):
        raise AttributeError("FqElem is immutable")

    @property
    def coeffs(self):
        """Coordinates in the F_p-basis 1, a, ..., a^(k-1), length k."""
        d = self.field._digits(self.code)
        return tuple(d + [0] * (self.field.k - len(d)))

    @property
    def is_zero(self):
        return self.code == 0

    def _check(self, other):
        if isinstance(other, FqElem):
            if other.field != self.field:
                raise ValueError("mixed fields")
            return other.code
        if isinstance(other, int):
            return self.field.elem(other).code
        return None

    def __add__(self, other):
        c = self._check(other)
        if c is None:
            return NotImplemented
        f = self.field
        return FqElem(f, f._add_t[self.code * f.q + c])

    __radd__ = __add__

    def __sub__(self, other):
        c = self._check(other)
        if c is None:
            return NotImplemented
        f = self.field
        return FqElem(f, f._sub_t[self.code * f.q + c])

    def __rsub__(self, other):
        c = self._check(other)
        if c is None:
            return NotImplemented
        f = self.field
        return FqElem(f, f._sub_t[c * f.q + self.code])

    def __mul__(self, other):
        c = self._check(other)
        if c is None:
            return NotImplemented
        f = self.field
        return FqElem(f, f._mul_t[self.code * f.q + c])

    __rmul__ = __mul__

    def __neg__(self):
        return FqElem(self.field, self.field._neg_t[self.code])

    def inverse(self):
        if self.code == 0:
            raise DivisionByZero("inversion of 0 in F_q")
        return FqElem(self.field, self.field._inv_t[self.code])

    def __truediv__(self, other):
        c = self._check(other)
        if c is None:
            return NotImplemented
        if c == 0:
            raise DivisionByZero("division by 0 in F_q")
        f = self.field
        return FqElem(f, f._mul_t[self.code * f.q + f._inv_t[c]])

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        acc = FqElem(self.field, 1)
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def __bool__(self):
        return self.code != 0

    def __eq__(self, other):
        if isinstance(other, FqElem):
            return self.field == other.field and self.code == other.code
        if isinstance(other, int):
            return self.code == self.field.elem(other).code
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.code))

    def __repr__(self):
        return _format_coeff(self.field, self.code, parens=True)


# ---------------------------------------------------------------------------
# Polynomials R_nu = F_q[T]


class Poly:
    """Element of F_q[T]: ascending coefficient codes, no trailing zeros.

    deg(0) is -inf (a float, comparable with ints); everything else is an
    int >= 0. Instances are immutable; arithmetic dispatches to the
    selected kernel backend.
    """

    __slots__ = ("field", "_codes")

    def __init__(self, field, coeffs=()):
        codes = [field.elem(c).code for c in coeffs]
        while codes and codes[-1] == 0:
            codes.pop()
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "_codes", codes)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def _make(cls, field, codes):
        # trusted: codes already trimmed; takes ownership of the list
        self = cls.__new__(cls)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "_codes", codes)
        return self

    @classmethod
    def zero(cls, field):
        return cls._make(field, [])

    @classmethod
    def one(cls, field):
        return cls._make(field, [1])

    @classmethod
    def variable(cls, field):
        return cls._make(field, [0, 1])

    @property
    def degree(self):
        return len(self._codes) - 1 if self._codes else NEG_INF

    @property
    def is_zero(self):
        return not self._codes

    @property
    def is_one(self):
        return self._codes == [1]

    @property
    def is_monic(self):
        return bool(self._codes) and self._codes[-1] == 1

    @property
    def is_constant(self):
        return len(self._codes) <= 1

    def coefficients(self):
        """Coefficients as FqElem, ascending degree."""
        return tuple(FqElem(self.field, c) for c in self._codes)

    def coefficient(self, d):
        if 0 <= d < len(self._codes):
            return FqElem(self.field, self._codes[d])
        return FqElem(self.field, 0)

    def leading(self):
        if not self._codes:
            raise ValueError("zero polynomial has no leading coefficient")
        return FqElem(self.field, self._codes[-1])

    def monic(self):
        if not self._codes:
            raise ValueError("cannot normalize the zero polynomial")
        lead = self._codes[-1]
        if lead == 1:
            return self
        field = self.field
        return Poly._make(field, kernel.poly_scale(
            field._ops, self._codes, field._inv_t[lead]))

    def _binop(self, other):
        if isinstance(other, Poly):
            if other.field != self.field:
                raise ValueError("mixed fields")
            return other
        if isinstance(other, (int, FqElem)):
            code = self.field.elem(other).code
            return Poly._make(self.field, [code] if code else [])
        return None

    def __add__(self, other):
        o = self._binop(other)
        if o is None:
            return NotImplemented
        return Poly._make(self.field,
                          kernel.poly_add(self.field._ops, self._codes, o._codes))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._binop(other)
        if o is None:
            return NotImplemented
        return Poly._make(self.field,
                          kernel.poly_sub(self.field._ops, self._codes, o._codes))

    def __rsub__(self, other):
        o = self._binop(other)
        if o is None:
            return NotImplemented
        return Poly._make(self.field,
                          kernel.poly_sub(self.field._ops, o._codes, self._codes))

    def __neg__(self):
        return Poly._make(self.field,
                          kernel.poly_neg(self.field._ops, self._codes))

    def __mul__(self, other):
        o = self._binop(other)
        if o is None:
            return NotImplemented
        return Poly._make(self.field,
                          kernel.poly_mul(self.field._ops, self._codes, o._codes))

    __rmul__ = __mul__

    def __divmod__(self, other):
        o = self._binop(other)
        if o is None:
            return NotImplemented
        if o.is_zero:
            raise DivisionByZero("polynomial division by zero")
        quot, rem = kernel.poly_divmod(self.field._ops, self._codes, o._codes)
        return Poly._make(self.field, quot), Poly._make(self.field, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        acc = Poly.one(self.field)
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def shift(self, m):
        """Multiply by T^m (m >= 0)."""
        if not self._codes:
            return self
        return Poly._make(self.field, [0] * m + self._codes)

    def __bool__(self):
        return bool(self._codes)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self._codes == other._codes
        if isinstance(other, (int, FqElem)):
            o = self._binop(other)
            return self._codes == o._codes
        return NotImplemented

    def __hash__(self):
        return hash((self.field, tuple(self._codes)))

    def __repr__(self):
        return format_poly(self)


def poly_gcd(f, g):
    """Monic gcd in F_q[T]; raises UndefinedGcd for gcd(0, 0)."""
    if f.field != g.field:
        raise ValueError("mixed fields")
    if f.is_zero and g.is_zero:
        raise UndefinedGcd("gcd(0, 0) is undefined")
    codes = kernel.poly_gcd(f.field._ops, f._codes, g._codes)
    return Poly._make(f.field, codes)


def poly_lcm(f, g):
    if f.is_zero or g.is_zero:
        raise ValueError("lcm with zero")
    return ((f * g) // poly_gcd(f, g)).monic()


# ---------------------------------------------------------------------------
# The fraction field K = F_q(T)


class RatFunc:
    """Element of K = F_q(T) in reduced canonical form.

    Invariants: den monic and nonzero, gcd(num, den) = 1, and 0 is 0/1.
    Two equal values always have identical representations, so equality
    is componentwise.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, Poly):
            raise TypeError("num must be a Poly")
        field = num.field
        if den is None:
            den = field._one_poly
        elif not isinstance(den, Poly) or den.field != field:
            raise TypeError("den must be a Poly over the same field")
        if den.is_zero:
            raise DivisionByZero("zero denominator")
        n, d = kernel.frac_normalize(field._ops, num._codes, den._codes)
        object.__setattr__(self, "num", Poly._make(field, n))
        object.__setattr__(self, "den", Poly._make(field, d))

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    @classmethod
    def _make(cls, num, den):
        # trusted: canonical form already holds
        self = cls.__new__(cls)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        return self

    @classmethod
    def from_poly(cls, p):
        return cls._make(p, p.field._one_poly)

    @property
    def field(self):
        return self.num.field

    @property
    def is_zero(self):
        return self.num.is_zero

    @property
    def is_one(self):
        return self.num.is_one and self.den.is_one

    @property
    def is_integral(self):
        """True when the value lies in R_nu = F_q[T]."""
        return self.den.is_one

    def as_poly(self):
        if not self.den.is_one:
            raise ValueError(f"{self!r} is not a polynomial")
        return self.num

    def valuation(self):
        """Degree valuation at infinity: deg(den) - deg(num); +inf at 0."""
        if self.num.is_zero:
            return math.inf
        return self.den.degree - self.num.degree

    def norm_exp(self):
        """Exponent e with |x| = q^e, BOTTOM for 0 (e = -valuation)."""
        if self.num.is_zero:
            return BOTTOM
        return QExp(self.num.degree - self.den.degree)

    def in_valuation_ring(self):
        """True when |x| <= 1, i.e. x lies in O_nu."""
        return self.num.is_zero or self.num.degree <= self.den.degree

    def _binop(self, other):
        if isinstance(other, RatFunc):
            if other.field != self.field:
                raise ValueError("mixed fields")
            return other
        if isinstance(other, Poly):
            if other.field != self.field:
                raise ValueError("mixed fields")
            return RatFunc._make(other, self.field._one_poly)
        if isinstance(other, (int, FqElem)):
            return self.field.rf(other)
        return None

    def __add__(self, other):
        o = self._binop(other)
        if o is None:
            return NotImplemented
        field = self.field
        if self.den.is_one and o.den.is_one:
            return RatFunc._make(self.num + o.num, field._one_poly)
        num = self.num * o.den + o.num * self.den
        return RatFunc(num, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._binop(other)
        if o is None:
            return NotImplemented
        field = self.field
        if self.den.is_one and o.den.is_one:
            return RatFunc._make(self.num - o.num, field._one_poly)
        num = self.num * o.den - o.num * self.den
        return RatFunc(num, self.den * o.den)

    def __rsub__(self, other):
        o = self._binop(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return RatFunc._make(-self.num, self.den)

    def __mul__(self, other):
        o = self._binop(other)
        if o is None:
            return NotImplemented
        field = self.field
        if self.num.is_zero or o.num.is_zero:
            return field._zero_rf
        if self.den.is_one and o.den.is_one:
            return RatFunc._make(self.num * o.num, field._one_poly)
        # cross-cancellation keeps the result canonical without a final gcd
        g1 = kernel.poly_gcd(field._ops, self.num._codes, o.den._codes)
        g2 = kernel.poly_gcd(field._ops, o.num._codes, self.den._codes)
        n1, d2 = self.num, o.den
        if len(g1) > 1:
            gp = Poly._make(field, g1)
            n1, d2 = n1 // gp, d2 // gp
        n2, d1 = o.num, self.den
        if len(g2) > 1:
            gp = Poly._make(field, g2)
            n2, d1 = n2 // gp, d1 // gp
        return RatFunc._make(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def reciprocal(self):
        if self.num.is_zero:
            raise DivisionByZero("reciprocal of 0")
        lead = self.num._codes[-1]
        field = self.field
        if lead == 1:
            return RatFunc._make(self.den, self.num)
        c = field._inv_t[lead]
        num = Poly._make(field, kernel.poly_scale(field._ops, self.den._codes, c))
        den = Poly._make(field, kernel.poly_scale(field._ops, self.num._codes, c))
        return RatFunc._make(num, den)

    def __truediv__(self, other):
        o = self._binop(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero:
            raise DivisionByZero("division by 0 in K")
        return self * o.reciprocal()

    def __rtruediv__(self, other):
        o = self._binop(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, e):
        if e < 0:
            return self.reciprocal() ** (-e)
        acc = self.field._one_rf
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def __bool__(self):
        return not self.num.is_zero

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (Poly, int, FqElem)):
            o = self._binop(other)
            return self.num == o.num and self.den == o.den
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return format_element(self)


def valuation(x):
    """Degree valuation at the place at infinity of an element of K."""
    return x.valuation()


# ---------------------------------------------------------------------------
# Element grammar: parsing


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([Ta])|(\^)|(\*)|(\+)|(-)|(/)|(\()|(\)))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ElementParseError("unexpected character", text, pos)
        groups = m.groups()
        if groups[0] is not None:
            tokens.append(("int", int(groups[0]), m.start(1)))
        elif groups[1] is not None:
            tokens.append((groups[1], None, m.start(2)))
        else:
            for sym, g in zip("^*+-/()", groups[2:]):
                if g is not None:
                    tokens.append((sym, None, m.end() - 1))
                    break
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, field, text, tokens):
        self.field = field
        self.text = text
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, msg):
        pos = self.toks[self.i][2] if self.i < len(self.toks) else len(self.text)
        raise ElementParseError(msg, self.text, pos)

    def expect(self, kind):
        if self.peek() != kind:
            self.fail(f"expected {kind!r}")
        return self.next()

    def parse_uint(self):
        if self.peek() != "int":
            self.fail("expected an integer")
        return self.next()[1]

    def parse_a_mono(self):
        # a or a^j, extension fields only
        self.expect("a")
        if self.field.k == 1:
            self.fail("'a' is only valid in extension fields")
        j = 1
        if self.peek() == "^":
            self.next()
            j = self.parse_uint()
        if j >= self.field.k:
            return FqElem(self.field, self.field.p) ** j
        return FqElem(self.field, self.field.p ** j)

    def parse_fq_poly(self):
        # sum of extension-field terms inside parentheses
        acc = self.field.zero()
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.next()[0] == "-" else 1
        while True:
            term = self.parse_fq_term()
            acc = acc + term if sign > 0 else acc - term
            if self.peek() in ("+", "-"):
                sign = -1 if self.next()[0] == "-" else 1
                continue
            return acc

    def parse_fq_term(self):
        if self.peek() == "int":
            c = self.field.elem(self.parse_uint() % self.field.p)
            if self.peek() == "*":
                self.next()
                return c * self.parse_a_mono()
            return c
        if self.peek() == "a":
            return self.parse_a_mono()
        self.fail("expected a coefficient term")

    def parse_T_mono(self):
        self.expect("T")
        if self.peek() == "^":
            self.next()
            return self.parse_uint()
        return 1

    def parse_factor(self):
        # returns (FqElem coefficient, T-degree)
        kind = self.peek()
        if kind == "int":
            v = self.parse_uint()
            if self.field.k == 1:
                return self.field.elem(v), 0
            if v >= self.field.p:
                self.fail(f"integer coefficient must be < {self.field.p}")
            return self.field.elem(v), 0
        if kind == "(":
            self.next()
            c = self.parse_fq_poly()
            self.expect(")")
            return c, 0
        if kind == "a":
            return self.parse_a_mono(), 0
        if kind == "T":
            return self.field.one(), self.parse_T_mono()
        self.fail("expected a term")

    def parse_term(self):
        coeff, deg = self.parse_factor()
        while self.peek() == "*":
            self.next()
            c2, d2 = self.parse_factor()
            coeff = coeff * c2
            deg += d2
        return coeff, deg

    def parse_poly(self):
        acc = {}
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.next()[0] == "-" else 1
        while True:
            coeff, deg = self.parse_term()
            if sign < 0:
                coeff = -coeff
            prev = acc.get(deg)
            acc[deg] = coeff if prev is None else prev + coeff
            if self.peek() in ("+", "-"):
                sign = -1 if self.next()[0] == "-" else 1
                continue
            break
        if not acc:
            return Poly.zero(self.field)
        top = max(acc)
        codes = [0] * (top + 1)
        for d, c in acc.items():
            codes[d] = c.code
        while codes and codes[-1] == 0:
            codes.pop()
        return Poly._make(self.field, codes)


def _split_top_level_slash(text):
    depth = 0
    split = None
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ElementParseError("unbalanced ')'", text, i)
        elif ch == "/" and depth == 0:
            if split is not None:
                raise ElementParseError("more than one top-level '/'", text, i)
            split = i
    if depth != 0:
        raise ElementParseError("unbalanced '('", text, len(text))
    return split


def _strip_outer_parens(text):
    text = text.strip()
    while text.startswith("(") and text.endswith(")"):
        depth = 0
        whole = True
        for i, ch in enumerate(text):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
                if depth == 0 and i != len(text) - 1:
                    whole = False
                    break
        if not whole:
            break
        text = text[1:-1].strip()
    return text


def parse_poly(field, text):
    """Parse a polynomial in the element grammar."""
    stripped = _strip_outer_parens(text)
    if stripped == "":
        raise ElementParseError("empty polynomial", text, 0)
    parser = _Parser(field, text, _tokenize(stripped))
    poly = parser.parse_poly()
    if parser.i != len(parser.toks):
        parser.fail("trailing input")
    return poly


def parse_element(field, text):
    """Parse `num` or `num/den` in the element grammar into a RatFunc."""
    split = _split_top_level_slash(text)
    if split is None:
        return RatFunc.from_poly(parse_poly(field, text))
    num = parse_poly(field, text[:split])
    den = parse_poly(field, text[split + 1:])
    if den.is_zero:
        raise DivisionByZero("zero denominator in element string")
    return RatFunc(num, den)


# ---------------------------------------------------------------------------
# Element grammar: canonical formatting


def _format_coeff(field, code, parens):
    if field.k == 1 or code < field.p:
        return str(code)
    digits = field._digits(code)
    terms = []
    for j in range(len(digits) - 1, -1, -1):
        c = digits[j]
        if c == 0:
            continue
        if j == 0:
            terms.append(str(c))
        elif j == 1:
            terms.append("a" if c == 1 else f"{c}*a")
        else:
            terms.append(f"a^{j}" if c == 1 else f"{c}*a^{j}")
    body = " + ".join(terms)
    return f"({body})" if parens and len(terms) > 1 else body


def format_poly(poly):
    codes = poly._codes
    if not codes:
        return "0"
    field = poly.field
    terms = []
    for d in range(len(codes) - 1, -1, -1):
        c = codes[d]
        if c == 0:
            continue
        if d == 0:
            terms.append(_format_coeff(field, c, parens=True))
            continue
        mono = "T" if d == 1 else f"T^{d}"
        if c == 1:
            terms.append(mono)
        else:
            terms.append(f"{_format_coeff(field, c, parens=True)}*{mono}")
    return " + ".join(terms)


def _term_count(poly):
    return sum(1 for c in poly._codes if c)


def format_element(x):
    num_s = format_poly(x.num)
    if x.den.is_one:
        return num_s
    den_s = format_poly(x.den)
    if _term_count(x.num) > 1:
        num_s = f"({num_s})"
    if _term_count(x.den) > 1:
        den_s = f"({den_s})"
    return f"{num_s}/{den_s}"

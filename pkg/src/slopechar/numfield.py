"""Exact arithmetic in a real algebraic number field Q(alpha).

alpha is given by an irreducible minimal polynomial together with a rational
interval isolating exactly one real root.  Elements are represented by their
canonical residue mod the minimal polynomial, so equality is coefficientwise.
Signs are decided exactly: symbolically for the zero element, by a closed
comparison for elements linear in alpha, and by interval refinement otherwise.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


class FieldError(Exception):
    pass


class ReducibleMinpoly(FieldError):
    pass


class NoRootInInterval(FieldError):
    pass


class MultipleRootsInInterval(FieldError):
    pass


class DivisionByZero(FieldError):
    pass


class FieldMismatch(FieldError):
    pass


Rat = Fraction


def _rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not a rational: {x!r}")


# ---------------------------------------------------------------------------
# dense univariate polynomials over Q, ascending coefficients


def poly_trim(p: Sequence[Fraction]) -> list[Fraction]:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_eval(p: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_add(p, q):
    n = max(len(p), len(q))
    return poly_trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0)
                      for i in range(n)])


def poly_scale(p, c):
    return poly_trim([ci * c for ci in p])


def poly_mul(p, q):
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return poly_trim(out)


def poly_divmod(p, q):
    q = poly_trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    p = list(poly_trim(p))
    quot = [Fraction(0)] * max(0, len(p) - len(q) + 1)
    lc = q[-1]
    while len(p) >= len(q):
        k = len(p) - len(q)
        c = p[-1] / lc
        quot[k] = c
        for i, b in enumerate(q):
            p[k + i] -= c * b
        p = poly_trim(p)
    return poly_trim(quot), p


def poly_deriv(p):
    return poly_trim([i * c for i, c in enumerate(p)][1:])


def _sturm_chain(p):
    chain = [poly_trim(p), poly_deriv(p)]
    while chain[-1]:
        _, rem = poly_divmod(chain[-2], chain[-1])
        if not rem:
            break
        chain.append([-c for c in rem])
    return chain


def _sign_changes(chain, x):
    signs = []
    for q in chain:
        v = poly_eval(q, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    changes = 0
    for a, b in zip(signs, signs[1:]):
        if a != b:
            changes += 1
    return changes


def count_real_roots(p, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots of p in the half-open interval (lo, hi]."""
    chain = _sturm_chain(p)
    return _sign_changes(chain, lo) - _sign_changes(chain, hi)


def _rational_roots_exist(intp: list[int]) -> bool:
    # candidates p/q with p | a0, q | an (a0 != 0 assumed by caller)
    def divisors(n):
        n = abs(n)
        out = []
        i = 1
        while i * i <= n:
            if n % i == 0:
                out.append(i)
                out.append(n // i)
            i += 1
        return set(out)

    a0, an = intp[0], intp[-1]
    for p in divisors(a0):
        for q in divisors(an):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if poly_eval([Fraction(c) for c in intp], cand) == 0:
                    return True
    return False


def is_irreducible(p: Sequence[Fraction]) -> bool:
    """Irreducibility over Q of a nonconstant polynomial."""
    p = poly_trim(p)
    deg = len(p) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    # clear denominators to a primitive integer polynomial
    from math import gcd, lcm

    den = lcm(*[c.denominator for c in p])
    intp = [int(c * den) for c in p]
    g = 0
    for c in intp:
        g = gcd(g, c)
    intp = [c // g for c in intp]
    if intp[0] == 0:
        return False  # X divides
    if _rational_roots_exist(intp):
        return False
    if deg <= 3:
        return True  # no rational root and degree <= 3
    import sympy  # only reached for degree >= 4

    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(c) * x**i for i, c in enumerate(intp))
    return sympy.Poly(expr, x).is_irreducible


# ---------------------------------------------------------------------------


class NumberField:
    """Q(alpha) for the unique real root alpha of `minpoly` in `root_interval`."""

    def __init__(self, minpoly: Iterable, root_interval):
        coeffs = poly_trim([_rat(c) for c in minpoly])
        if len(coeffs) < 2:
            raise FieldError("minpoly must be nonconstant")
        lc = coeffs[-1]
        self.minpoly: tuple[Fraction, ...] = tuple(c / lc for c in coeffs)
        self.degree: int = len(self.minpoly) - 1
        if not is_irreducible(self.minpoly):
            raise ReducibleMinpoly(f"minpoly {list(minpoly)} is reducible over Q")
        lo, hi = _rat(root_interval[0]), _rat(root_interval[1])
        if not lo < hi:
            raise FieldError("root_interval must satisfy lo < hi")
        if self.degree == 1:
            root = -self.minpoly[0]
            if not (lo <= root <= hi):
                raise NoRootInInterval(f"{root} not in [{lo}, {hi}]")
            self._lo = self._hi = root
        else:
            nroots = count_real_roots(self.minpoly, lo, hi)
            if poly_eval(self.minpoly, lo) == 0:
                nroots += 1
            if nroots == 0:
                raise NoRootInInterval(f"no real root in [{lo}, {hi}]")
            if nroots > 1:
                raise MultipleRootsInInterval(f"{nroots} roots in [{lo}, {hi}]")
            # shrink until the endpoints straddle the root strictly
            while poly_eval(self.minpoly, lo) == 0 or poly_eval(self.minpoly, hi) == 0 \
                    or (poly_eval(self.minpoly, lo) > 0) == (poly_eval(self.minpoly, hi) > 0):
                third = (hi - lo) / 3
                for a, b in ((lo + third, hi), (lo, hi - third), (lo + third, hi - third)):
                    if count_real_roots(self.minpoly, a, b) + (poly_eval(self.minpoly, a) == 0) == 1:
                        lo, hi = a, b
                        break
            self._lo, self._hi = lo, hi
        self._sign_at_lo = 1 if poly_eval(self.minpoly, self._lo) > 0 else -1

    # -- construction helpers ------------------------------------------------

    @staticmethod
    def rationals() -> "NumberField":
        """The degree-1 field Q itself (alpha = 0)."""
        return NumberField([0, 1], (-1, 1))

    def elem(self, coeffs) -> "FieldElem":
        c = [_rat(x) for x in coeffs]
        if len(c) > self.degree:
            c = _reduce_mod(c, self.minpoly)
        c = c + [Fraction(0)] * (self.degree - len(c))
        return FieldElem(self, tuple(c[: self.degree]))

    def from_rational(self, x) -> "FieldElem":
        return self.elem([_rat(x)])

    @property
    def zero(self) -> "FieldElem":
        return self.from_rational(0)

    @property
    def one(self) -> "FieldElem":
        return self.from_rational(1)

    @property
    def alpha(self) -> "FieldElem":
        if self.degree == 1:
            return self.from_rational(self._lo)
        return self.elem([0, 1])

    @property
    def root_interval(self) -> tuple[Fraction, Fraction]:
        return self._lo, self._hi

    # -- root interval refinement --------------------------------------------

    def _refine(self) -> None:
        """One bisection step on the cached isolating interval."""
        if self.degree == 1:
            return
        mid = (self._lo + self._hi) / 2
        if (poly_eval(self.minpoly, mid) > 0) == (self._sign_at_lo > 0):
            self._lo = mid
        else:
            self._hi = mid

    def refine_to(self, width: Fraction) -> None:
        while self._hi - self._lo > width:
            self._refine()

    def interval_of(self, coeffs) -> tuple[Fraction, Fraction]:
        """Interval enclosure of sum coeffs[i] * alpha^i at current precision."""
        lo = hi = Fraction(0)
        for c in reversed(coeffs):
            # (lo,hi) * (alo,ahi) + c  with directed rounding on endpoints
            cands = (lo * self._lo, lo * self._hi, hi * self._lo, hi * self._hi)
            lo, hi = min(cands) + c, max(cands) + c
        return lo, hi

    def __eq__(self, other):
        return (isinstance(other, NumberField)
                and self.minpoly == other.minpoly
                and self._contains(other) )

    def _contains(self, other):
        # same minpoly: intervals isolate the same root iff they overlap
        return self._lo < other._hi and other._lo < self._hi

    def __hash__(self):
        return hash(self.minpoly)

    def __repr__(self):
        return f"NumberField(minpoly={[str(c) for c in self.minpoly]}, alpha in [{self._lo}, {self._hi}])"


def _reduce_mod(c, minpoly):
    k = len(minpoly) - 1
    c = list(c)
    for i in range(len(c) - 1, k - 1, -1):
        lead = c[i]
        if lead == 0:
            c.pop()
            continue
        c.pop()
        for j in range(k):
            c[i - k + j] -= lead * minpoly[j]
    return poly_trim(c)


class FieldElem:
    """An element of Q(alpha), stored as its canonical residue mod minpoly."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs: tuple[Fraction, ...]):
        self.field = field
        self.coeffs = coeffs

    # -- ring structure -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElem(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElem(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        prod = poly_mul(self.coeffs, o.coeffs)
        red = _reduce_mod(prod, self.field.minpoly)
        k = self.field.degree
        red = red + [Fraction(0)] * (k - len(red))
        return FieldElem(self.field, tuple(red[:k]))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElem":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        # extended Euclid: s*self + t*minpoly = gcd = const
        r0, r1 = list(self.field.minpoly), poly_trim(self.coeffs)
        s0, s1 = [], [Fraction(1)]
        while True:
            q, r = poly_divmod(r0, r1)
            if not r:
                break
            s = poly_add(s0, poly_scale(poly_mul(q, s1), Fraction(-1)))
            r0, r1, s0, s1 = r1, r, s1, s
        # r1 is a nonzero constant (minpoly irreducible)
        inv = poly_scale(s1, 1 / r1[0])
        return self.field.elem(inv)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = self.field.one
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    # -- order structure under the real embedding -----------------------------

    def sign(self) -> int:
        if self.is_zero():
            return 0
        f = self.field
        if f.degree == 1 or self.is_rational():
            return 1 if self.coeffs[0] > 0 else -1
        nz = [i for i, c in enumerate(self.coeffs) if c != 0]
        if nz == [1] or nz == [0, 1]:
            # a + b*alpha: compare alpha against -a/b
            a, b = self.coeffs[0], self.coeffs[1]
            t = -a / b
            return (1 if b > 0 else -1) * f_alpha_cmp(f, t)
        while True:
            lo, hi = f.interval_of(self.coeffs)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            f._refine()

    def __lt__(self, other):
        o = self._coerce(other)
        return (self - o).sign() < 0

    def __le__(self, other):
        o = self._coerce(other)
        return (self - o).sign() <= 0

    def __gt__(self, other):
        o = self._coerce(other)
        return (self - o).sign() > 0

    def __ge__(self, other):
        o = self._coerce(other)
        return (self - o).sign() >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- approximation ---------------------------------------------------------

    def interval(self, width: Fraction) -> tuple[Fraction, Fraction]:
        """Enclosure of this element with width at most `width`."""
        f = self.field
        while True:
            lo, hi = f.interval_of(self.coeffs)
            if hi - lo <= width:
                return lo, hi
            f._refine()

    def approx(self, digits: int) -> str:
        """Decimal string, correct to `digits` significant digits."""
        if digits < 1:
            raise ValueError("digits must be >= 1")
        if self.is_zero():
            return "0." + "0" * (digits - 1) if digits > 1 else "0"
        s = self.sign()
        lo, hi = self.interval(Fraction(1, 10 ** (digits + 6)))
        mid = abs((lo + hi) / 2)
        expo = 0
        while mid >= 10:
            mid /= 10
            expo += 1
        while mid < 1:
            mid *= 10
            expo -= 1
        decimals = digits - 1 - expo
        value = abs((lo + hi) / 2)
        if decimals >= 0:
            scaled = value * 10**decimals
            q, r = divmod(scaled.numerator, scaled.denominator)
            if 2 * r >= scaled.denominator:
                q += 1
            digits_str = str(q).rjust(decimals + 1, "0")
            intpart, fracpart = digits_str[: len(digits_str) - decimals], digits_str[len(digits_str) - decimals:]
            out = intpart + ("." + fracpart if decimals else "")
        else:
            unit = 10 ** (-decimals)
            q, r = divmod(value.numerator, value.denominator * unit)
            if 2 * r >= value.denominator * unit:
                q += 1
            out = str(q * unit)
        return ("-" if s < 0 else "") + out

    def __float__(self):
        lo, hi = self.interval(Fraction(1, 10**20))
        return float((lo + hi) / 2)

    def floor(self) -> int:
        """Exact integer floor under the real embedding."""
        if self.is_rational():
            return self.coeffs[0].numerator // self.coeffs[0].denominator
        # an element with an irrational coefficient vector is irrational, so
        # the enclosure eventually separates from every integer
        width = Fraction(1, 4)
        while True:
            lo, hi = self.interval(width)
            flo = lo.numerator // lo.denominator
            fhi = hi.numerator // hi.denominator
            if flo == fhi:
                return flo
            width /= 16

    def __repr__(self):
        if self.is_rational():
            return str(self.coeffs[0])
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*a" if c != 1 else "a")
            else:
                terms.append(f"{c}*a^{i}" if c != 1 else f"a^{i}")
        return " + ".join(terms).replace("+ -", "- ")


def f_alpha_cmp(f: NumberField, t: Fraction) -> int:
    """Sign of (alpha - t) for rational t."""
    lo, hi = f._lo, f._hi
    if t <= lo:
        return 1 if t < lo or poly_eval(f.minpoly, t) != 0 else 0
    if t >= hi:
        return -1
    v = poly_eval(f.minpoly, t)
    if v == 0:  # cannot happen for irreducible minpoly of degree >= 2
        return 0
    same_side_as_lo = (v > 0) == (f._sign_at_lo > 0)
    return 1 if same_side_as_lo else -1


# ---------------------------------------------------------------------------
# spec-level operation names


def nf_make(minpoly, root_interval) -> NumberField:
    return NumberField(minpoly, root_interval)


def field_ops(x: FieldElem, y: FieldElem, op: str) -> FieldElem:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown op {op!r}")


def nf_sign(x: FieldElem) -> int:
    return x.sign()


def nf_approx(x: FieldElem, digits: int) -> str:
    return x.approx(digits)

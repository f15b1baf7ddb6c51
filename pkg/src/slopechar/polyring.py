"""Multivariate polynomials over Q with graded reverse lexicographic order.

A polynomial is a dict {exponent tuple: Fraction}; the variable names live
beside the data (typically Grassmann symbols "G12", "G134", ...).  Kept
minimal: arithmetic, normal forms and ordering hooks for Buchberger.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def grevlex_key(mono):
    """Sort key: higher means larger in graded reverse lexicographic order."""
    return (sum(mono), tuple(-e for e in reversed(mono)))


class Poly:
    """Immutable rational-coefficient polynomial in a fixed variable count."""

    __slots__ = ("terms", "nvars")

    def __init__(self, nvars, terms=()):
        self.nvars = nvars
        clean = {}
        for mono, c in (terms.items() if isinstance(terms, dict) else terms):
            c = Fraction(c)
            if c:
                mono = tuple(mono)
                clean[mono] = clean.get(mono, Fraction(0)) + c
        self.terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def constant(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def variable(cls, nvars, i):
        mono = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(nvars, {mono: Fraction(1)})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(self.nvars, other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return Poly(self.nvars, out)

    def __neg__(self):
        return Poly(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(self.nvars, other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly(self.nvars, {m: c * other for m, c in self.terms.items()})
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return Poly(self.nvars, out)

    __rmul__ = __mul__

    def leading(self):
        """(monomial, coefficient) under grevlex."""
        m = max(self.terms, key=grevlex_key)
        return m, self.terms[m]

    def degree(self):
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self):
        degs = {sum(m) for m in self.terms}
        return len(degs) <= 1

    def content_normalized(self):
        """Scale so coefficients are coprime integers, leading one positive."""
        if not self.terms:
            return self
        den = 1
        for c in self.terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        num = 0
        for c in self.terms.values():
            num = gcd(num, abs(c.numerator * (den // c.denominator)))
        scale = Fraction(den, num)
        _, lead = self.leading()
        if lead < 0:
            scale = -scale
        return self * scale

    def monic(self):
        _, lead = self.leading()
        return self * (Fraction(1) / lead)

    def evaluate(self, values):
        """Evaluate at values[i] (any ring with +, *, and int powers)."""
        acc = None
        for m, c in sorted(self.terms.items(), key=lambda kv: grevlex_key(kv[0])):
            term = None
            for i, e in enumerate(m):
                for _ in range(e):
                    term = values[i] if term is None else term * values[i]
            if term is None:
                part = values[0] - values[0] + c if values else c
            else:
                part = term * c
            acc = part if acc is None else acc + part
        if acc is None:
            return Fraction(0)
        return acc

    def substitute(self, assignments):
        """Replace variable i by a Poly for each (i, poly) in assignments."""
        repl = dict(assignments)
        out = Poly.zero(self.nvars)
        for m, c in self.terms.items():
            term = Poly.constant(self.nvars, c)
            for i, e in enumerate(m):
                if e == 0:
                    continue
                base = repl.get(i, Poly.variable(self.nvars, i))
                for _ in range(e):
                    term = term * base
            out = out + term
        return out

    def pretty(self, names):
        if not self.terms:
            return "0"
        bits = []
        for m in sorted(self.terms, key=grevlex_key, reverse=True):
            c = self.terms[m]
            vars_part = "*".join(
                names[i] + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(m) if e)
            if not vars_part:
                bits.append(str(c))
            elif c == 1:
                bits.append(vars_part)
            elif c == -1:
                bits.append("-" + vars_part)
            else:
                bits.append(f"{c}*{vars_part}")
        out = bits[0]
        for b in bits[1:]:
            out += " - " + b[1:] if b.startswith("-") else " + " + b
        return out

    def __repr__(self):
        return f"Poly({len(self.terms)} terms, nvars={self.nvars})"


def monomial_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def monomial_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def monomial_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))

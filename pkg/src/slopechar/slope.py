"""Slopes of planar tilings and their Grassmann coordinates.

A slope is a d-plane of R^n spanned by columns over Q(alpha).  Its Grassmann
coordinates are the d x d minors of the generator matrix, listed on ascending
index tuples and extended antisymmetrically elsewhere.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .numfield import FieldElem, NumberField
from .linalg import Matrix, det, inverse, kernel_rational, rank, hnf


class SlopeError(Exception):
    pass


class PluckerViolation(SlopeError):
    pass


class DegenerateLeadingCoordinate(SlopeError):
    pass


class Slope:
    """d-plane of R^n given by an n x d full-rank generator matrix over Q(alpha)."""

    def __init__(self, field: NumberField, n: int, d: int, generators, offset=None):
        if not n > d >= 1:
            raise SlopeError(f"need n > d >= 1, got n={n}, d={d}")
        self.field = field
        self.n = n
        self.d = d
        cols = []
        for col in generators:
            if len(col) != n:
                raise SlopeError("generator length != n")
            cols.append(tuple(_to_elem(field, e) for e in col))
        if len(cols) != d:
            raise SlopeError("need exactly d generators")
        self.generators = Matrix(zip(*cols))  # n x d
        if rank(self.generators) != d:
            raise SlopeError("generators are not linearly independent")
        self.offset = tuple(Fraction(x) for x in offset) if offset is not None else None

    @property
    def u_columns(self):
        return [self.generators.col(j) for j in range(self.d)]

    def __repr__(self):
        return f"Slope(n={self.n}, d={self.d})"


def _to_elem(field, e):
    if isinstance(e, FieldElem):
        return e
    if isinstance(e, (int, Fraction, str)):
        return field.from_rational(Fraction(e))
    return field.elem(e)  # coefficient list


class GrassmannCoords:
    """Map from ascending d-tuples of 1-based indices to field elements."""

    def __init__(self, n: int, d: int, values: dict):
        self.n = n
        self.d = d
        self.values = dict(values)
        if all(v.is_zero() for v in self.values.values()):
            raise SlopeError("all Grassmann coordinates are zero")
        self._field = next(iter(values.values())).field

    @property
    def field(self):
        return self._field

    def tuples(self):
        return sorted(self.values)

    def __getitem__(self, idx):
        """Value on an arbitrary index tuple (antisymmetric extension)."""
        idx = tuple(idx)
        if len(set(idx)) < len(idx):
            return self._field.zero
        order = sorted(idx)
        sign = _perm_sign(idx, order)
        v = self.values[tuple(order)]
        return v if sign > 0 else -v

    def sign_vector(self):
        """Signs of all coordinates on ascending tuples (achievable orthant)."""
        return {t: self.values[t].sign() for t in self.tuples()}

    def normalized(self, at: tuple):
        """Coordinates scaled so the value at `at` becomes 1."""
        pivot = self[at]
        if pivot.is_zero():
            raise SlopeError(f"cannot normalize at zero coordinate {at}")
        return GrassmannCoords(self.n, self.d,
                               {t: v / pivot for t, v in self.values.items()})

    def is_proportional_to(self, other) -> bool:
        ts = self.tuples()
        t0 = next(t for t in ts if not self.values[t].is_zero())
        if other.values[t0].is_zero():
            return False
        ratio = self.values[t0] / other.values[t0]
        return all(self.values[t] == other.values[t] * ratio for t in ts)


def _perm_sign(seq, sorted_seq):
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        if seq[i] != sorted_seq[i]:
            j = seq.index(sorted_seq[i], i + 1)
            seq[i], seq[j] = seq[j], seq[i]
            sign = -sign
    return sign


def grassmann(s: Slope) -> GrassmannCoords:
    """All (n choose d) minors of the generator matrix, ascending tuples."""
    vals = {}
    for rows in combinations(range(s.n), s.d):
        sub = Matrix(tuple(s.generators.rows[i]) for i in rows)
        vals[tuple(i + 1 for i in rows)] = det(sub)
    return GrassmannCoords(s.n, s.d, vals)


def plucker_relation_index_pairs(n: int, d: int):
    """Index data (a, b) generating the Plucker relations for G(n, d)."""
    if d == 1:
        return []
    pairs = []
    for a in combinations(range(1, n + 1), d - 1):
        for b in combinations(range(1, n + 1), d + 1):
            pairs.append((a, b))
    return pairs


def plucker_residual(g: GrassmannCoords, a, b) -> FieldElem:
    """sum_l (-1)^l G_{a,b_l} G_{b \\ b_l}; zero on actual d-planes."""
    acc = g.field.zero
    for l, bl in enumerate(b):
        left = g[a + (bl,)]
        right = g[tuple(x for x in b if x != bl)]
        term = left * right
        acc = acc + (term if l % 2 == 0 else -term)
    return acc


def plucker_residuals(g: GrassmannCoords):
    """One residual per Plucker relation instance."""
    return [plucker_residual(g, a, b) for a, b in plucker_relation_index_pairs(g.n, g.d)]


def is_generic(s: Slope):
    """(True, None) iff no strict rational subspace contains the slope.

    Otherwise returns (False, witness) where witness is a primitive integer
    normal vector to the smallest rational subspace containing it.
    """
    k = s.field.degree
    rows = []
    for col in s.u_columns:
        for j in range(k):
            rows.append(tuple(e.coeffs[j] for e in col))
    m = Matrix(rows)
    if rank(m) == s.n:
        return True, None
    witness_basis = kernel_rational(m)
    h = hnf(Matrix(zip(*witness_basis)))
    return False, h.col(0)


def projectors(s: Slope):
    """(pi, pi_prime): exact orthogonal projectors onto E and its complement."""
    u = s.generators
    gram = u.transpose() * u
    gram_inv = inverse(gram)
    pi = u * gram_inv * u.transpose()
    one = s.field.one
    zero = s.field.zero
    ident = Matrix(tuple(one if i == j else zero for j in range(s.n)) for i in range(s.n))
    return pi, ident - pi


def slope_from_grassmann(g: GrassmannCoords) -> Slope:
    """Generators M_{ji} = G_{1..i-1,j,i+1..d}; inverse of `grassmann` up to scale."""
    for a, b in plucker_relation_index_pairs(g.n, g.d):
        if not plucker_residual(g, a, b).is_zero():
            raise PluckerViolation(f"relation ({a}, {b}) violated")
    lead = tuple(range(1, g.d + 1))
    if g[lead].is_zero():
        raise DegenerateLeadingCoordinate(
            "G_{1..d} = 0; permute coordinates before reconstructing")
    cols = []
    for i in range(1, g.d + 1):
        col = []
        for j in range(1, g.n + 1):
            idx = tuple(range(1, i)) + (j,) + tuple(range(i + 1, g.d + 1))
            col.append(g[idx])
        cols.append(col)
    return Slope(g.field, g.n, g.d, cols)

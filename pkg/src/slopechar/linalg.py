"""Exact linear algebra over Q and Q(alpha).

Matrices are small and dense (list of row tuples); entries are Fractions or
FieldElems, never floats.  Determinants, kernels and solving use exact
elimination with the first nonzero pivot scanning top to bottom; lattice
work (HNF, LLL with delta = 3/4) stays over Z/Q.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .numfield import FieldElem


class LinalgError(Exception):
    pass


class NotSquare(LinalgError):
    pass


class DependentInput(LinalgError):
    pass


class Matrix:
    """Immutable rectangular matrix; entries all from one field (or all Q)."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(r) for r in rows)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise LinalgError("ragged rows")
        self.rows = rows

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0]) if self.rows else 0

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def row(self, i):
        return self.rows[i]

    def col(self, j):
        return tuple(r[j] for r in self.rows)

    def transpose(self):
        return Matrix(zip(*self.rows)) if self.rows else Matrix(())

    def __mul__(self, other):
        if isinstance(other, Matrix):
            cols = other.transpose().rows
            return Matrix(tuple(_dot(r, c) for c in cols) for r in self.rows)
        return Matrix(tuple(e * other for e in r) for r in self.rows)

    def __add__(self, other):
        return Matrix(tuple(a + b for a, b in zip(r, s))
                      for r, s in zip(self.rows, other.rows))

    def __sub__(self, other):
        return Matrix(tuple(a - b for a, b in zip(r, s))
                      for r, s in zip(self.rows, other.rows))

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "Matrix([" + ",\n        ".join(str(list(r)) for r in self.rows) + "])"

    def apply(self, v):
        return tuple(_dot(r, v) for r in self.rows)


def _dot(u, v):
    it = iter(zip(u, v))
    a, b = next(it)
    acc = a * b
    for a, b in it:
        acc = acc + a * b
    return acc


def _is_zero(x):
    if isinstance(x, FieldElem):
        return x.is_zero()
    return x == 0


def identity(n, one=Fraction(1), zero=Fraction(0)):
    return Matrix(tuple(one if i == j else zero for j in range(n)) for i in range(n))


# ---------------------------------------------------------------------------


def det(m: Matrix):
    """Exact determinant by elimination; entries form a field."""
    if m.nrows != m.ncols:
        raise NotSquare(f"{m.nrows}x{m.ncols}")
    n = m.nrows
    if n == 0:
        return Fraction(1)
    rows = [list(r) for r in m.rows]
    sign_flips = 0
    result = None
    for c in range(n):
        piv = next((r for r in range(c, n) if not _is_zero(rows[r][c])), None)
        if piv is None:
            zero = rows[0][0] - rows[0][0]
            return zero
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            sign_flips ^= 1
        p = rows[c][c]
        result = p if result is None else result * p
        for r in range(c + 1, n):
            f = rows[r][c] / p
            if _is_zero(f):
                continue
            rows[r] = [a - f * b for a, b in zip(rows[r], rows[c])]
    return -result if sign_flips else result


def rref(m: Matrix):
    """Reduced row echelon form; returns (Matrix, pivot column list)."""
    rows = [list(r) for r in m.rows]
    nr, nc = len(rows), m.ncols
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        piv = next((i for i in range(r, nr) if not _is_zero(rows[i][c])), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        rows[r] = [a / p for a in rows[r]]
        for i in range(nr):
            if i != r and not _is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return Matrix(rows), pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def solve_right(a: Matrix, b):
    """One solution x of A x = b, or None if inconsistent."""
    aug = Matrix(tuple(r) + (bi,) for r, bi in zip(a.rows, b))
    red, pivots = rref(aug)
    if a.ncols in pivots:
        return None
    x = [None] * a.ncols
    zero = None
    for i, c in enumerate(pivots):
        x[c] = red[i, a.ncols]
        zero = x[c] - x[c]
    if zero is None:
        zero = Fraction(0) if not a.rows else a.rows[0][0] - a.rows[0][0]
    return tuple(zero if v is None else v for v in x)


def inverse(m: Matrix) -> Matrix:
    if m.nrows != m.ncols:
        raise NotSquare(f"{m.nrows}x{m.ncols}")
    n = m.nrows
    one = None
    first = m.rows[0][0]
    one = first / first if not _is_zero(first) else None
    if one is None:
        # find any nonzero entry to build the unit
        nz = next(e for r in m.rows for e in r if not _is_zero(e))
        one = nz / nz
    zero = one - one
    aug = Matrix(tuple(m.rows[i]) + tuple(one if i == j else zero for j in range(n))
                 for i in range(n))
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise LinalgError("singular matrix")
    return Matrix(tuple(red.rows[i][n:]) for i in range(n))


def kernel(m: Matrix):
    """Right kernel basis over the entry field (list of tuples)."""
    red, pivots = rref(m)
    nc = m.ncols
    free = [c for c in range(nc) if c not in pivots]
    if not m.rows:
        one, zero = Fraction(1), Fraction(0)
    else:
        e = m.rows[0][0]
        zero = e - e
        one = zero + 1 if isinstance(e, Fraction) else e.field.one
    basis = []
    for fc in free:
        v = [zero] * nc
        v[fc] = one
        for i, pc in enumerate(pivots):
            v[pc] = -red[i, fc]
        basis.append(tuple(v))
    return basis


def _primitive_int_vector(v):
    """Scale a rational vector to a primitive integer vector, first nonzero > 0."""
    from math import lcm

    den = 1
    for x in v:
        den = lcm(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g:
        ints = [x // g for x in ints]
    lead = next((x for x in ints if x != 0), 0)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def kernel_rational(m: Matrix):
    """Kernel basis of a rational matrix as primitive integer vectors."""
    return [_primitive_int_vector(v) for v in kernel(m)]


# ---------------------------------------------------------------------------
# integer lattices


def hnf(m: Matrix) -> Matrix:
    """Column-style Hermite normal form (canonical basis of the column lattice).

    Zero columns are dropped; pivots are positive and entries to their right
    within the pivot row are reduced into [0, pivot).
    """
    cols = [list(c) for c in zip(*m.rows)] if m.rows else []
    nr = m.nrows
    out = []
    r = 0
    while r < nr and cols:
        nz = [j for j, c in enumerate(cols) if c[r] != 0]
        if not nz:
            r += 1
            continue
        # gcd all entries in row r into one column by integer column ops
        j0 = nz[0]
        for j in nz[1:]:
            a, b = cols[j0][r], cols[j][r]
            while b:
                q = a // b
                colj0 = [x - q * y for x, y in zip(cols[j0], cols[j])]
                cols[j0], cols[j] = cols[j], colj0
                a, b = cols[j0][r], cols[j][r]
        if cols[j0][r] < 0:
            cols[j0] = [-x for x in cols[j0]]
        pivot_col = cols.pop(j0)
        p = pivot_col[r]
        for done in out:
            q = done[r] // p
            if q:
                for i in range(nr):
                    done[i] -= q * pivot_col[i]
        out.append(pivot_col)
        r += 1
    return Matrix(zip(*out)) if out else Matrix(tuple(() for _ in range(nr)))


def kernel_int(m: Matrix):
    """Z-basis of {x in Z^ncols : M x = 0} for a rational matrix (saturated)."""
    from math import lcm

    nr, nc = m.nrows, m.ncols
    rows = []
    for r in m.rows:
        den = 1
        for x in r:
            den = lcm(den, Fraction(x).denominator)
        rows.append([int(Fraction(x) * den) for x in r])
    cols = [[rows[i][j] for i in range(nr)] for j in range(nc)]
    trans = [[1 if i == j else 0 for i in range(nc)] for j in range(nc)]
    active = list(range(nc))
    for r in range(nr):
        nz = [j for j in active if cols[j][r] != 0]
        if not nz:
            continue
        j0 = nz[0]
        for j in nz[1:]:
            a, b = cols[j0][r], cols[j][r]
            while b:
                q = a // b
                cols[j0] = [x - q * y for x, y in zip(cols[j0], cols[j])]
                trans[j0] = [x - q * y for x, y in zip(trans[j0], trans[j])]
                cols[j0], cols[j] = cols[j], cols[j0]
                trans[j0], trans[j] = trans[j], trans[j0]
                a, b = cols[j0][r], cols[j][r]
        active.remove(j0)
    return [tuple(trans[j]) for j in active]


def _gram_schmidt(basis):
    ortho, mu = [], []
    for i, v in enumerate(basis):
        w = [Fraction(x) for x in v]
        murow = []
        for j in range(i):
            den = _dot(ortho[j], ortho[j])
            m_ij = _dot([Fraction(x) for x in v], ortho[j]) / den if den else Fraction(0)
            murow.append(m_ij)
            w = [a - m_ij * b for a, b in zip(w, ortho[j])]
        ortho.append(w)
        mu.append(murow)
    return ortho, mu


def lll(basis, delta=Fraction(3, 4)):
    """LLL reduction over Z; input vectors must be linearly independent."""
    b = [list(v) for v in basis]
    n = len(b)
    if n == 0:
        return []
    ortho, _ = _gram_schmidt(b)
    if any(all(x == 0 for x in w) for w in ortho):
        raise DependentInput("input vectors are linearly dependent")

    def mu(i, j):
        return _dot([Fraction(x) for x in b[i]], ortho[j]) / _dot(ortho[j], ortho[j])

    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            m_kj = mu(k, j)
            q = (m_kj + Fraction(1, 2)).__floor__()
            if q:
                b[k] = [a - q * c for a, c in zip(b[k], b[j])]
        if _dot(ortho[k], ortho[k]) >= (delta - mu(k, k - 1) ** 2) * _dot(ortho[k - 1], ortho[k - 1]):
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            ortho, _ = _gram_schmidt(b)
            k = max(k - 1, 1)
    return [tuple(int(x) for x in v) for v in b]


def lll_checks(basis, delta=Fraction(3, 4)):
    """(size_ok, lovasz_ok) for a reduced basis; used by the test suite."""
    ortho, mu = _gram_schmidt(basis)
    size_ok = all(abs(m) <= Fraction(1, 2) for row in mu for m in row)
    lovasz_ok = all(
        _dot(ortho[k], ortho[k]) >= (delta - mu[k][k - 1] ** 2) * _dot(ortho[k - 1], ortho[k - 1])
        for k in range(1, len(basis)))
    return size_ok, lovasz_ok

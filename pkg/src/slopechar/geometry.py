"""Exact polytope kernel in the internal space E' (dimension n-d <= 3 for
vertex-level work; H-form predicates work in any dimension).

All coordinates live in a fixed exact basis of E' obtained by row-reducing
the projector pi', so every predicate is a sign computation in Q(alpha).
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations

from .linalg import Matrix, inverse, rref
from .slope import Slope, projectors


class GeometryError(Exception):
    pass


class DimensionTooHigh(GeometryError):
    pass


INSIDE, BOUNDARY, OUTSIDE = "inside", "boundary", "outside"


# ---------------------------------------------------------------------------
# E' coordinates


def eprime_basis(s: Slope) -> Matrix:
    """(n-d) x n matrix B with B x = coordinates of pi'(x) in a fixed exact
    basis of E'.  Cached on the slope."""
    cached = getattr(s, "_eprime_B", None)
    if cached is not None:
        return cached
    _, pip = projectors(s)
    red, pivots = rref(pip)
    b0 = Matrix(red.rows[: len(pivots)])  # basis of the row space = E'
    b = inverse(b0 * b0.transpose()) * b0
    s._eprime_B = b
    return b


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_dot(u, v):
    it = iter(zip(u, v))
    a, b = next(it)
    acc = a * b
    for a, b in it:
        acc = acc + a * b
    return acc


def cross_normal(vectors, m, one):
    """Generalized cross product: vector orthogonal to m-1 vectors in R^m."""
    zero = one - one
    if m == 1:
        return (one,)
    rows = [list(v) for v in vectors]
    normal = []
    for j in range(m):
        sub = Matrix(tuple(r[:j] + r[j + 1:]) for r in rows)
        from .linalg import det as _det
        minor = _det(sub) if sub.nrows else one
        normal.append(minor if j % 2 == 0 else -minor)
    if all(_sgn(c) == 0 for c in normal):
        return None
    return tuple(normal)


def _sgn(x):
    if isinstance(x, Fraction) or isinstance(x, int):
        return (x > 0) - (x < 0)
    return x.sign()


def _canonical_direction(normal):
    """Scale so the first nonzero entry is +1 (dedupes parallel normals)."""
    lead = next(c for c in normal if _sgn(c) != 0)
    return tuple(c / lead for c in normal)


# ---------------------------------------------------------------------------
# window zonotope


class Window:
    """Zonotope sum_i [0,1] g_i + base, with exact slab H-representation."""

    def __init__(self, generators, base):
        self.generators = [tuple(g) for g in generators]
        self.base = tuple(base)
        self.dim = len(self.base)
        self.slabs = self._build_slabs()

    def _build_slabs(self):
        one = _unit_of(self.base, self.generators)
        directions = []
        seen = set()
        nontrivial = [g for g in self.generators if any(_sgn(c) != 0 for c in g)]
        for sub in combinations(nontrivial, self.dim - 1):
            normal = cross_normal(sub, self.dim, one)
            if normal is None:
                continue  # parallel generators merged: dependent subset
            cd = _canonical_direction(normal)
            key = tuple(getattr(c, "coeffs", c) for c in cd)
            if key in seen:
                continue
            seen.add(key)
            directions.append(cd)
        slabs = []
        for nu in directions:
            lo = hi = vec_dot(nu, self.base)
            for g in self.generators:
                t = vec_dot(nu, g)
                sg = _sgn(t)
                if sg > 0:
                    hi = hi + t
                elif sg < 0:
                    lo = lo + t
            slabs.append((nu, lo, hi))
        return slabs

    @property
    def center(self):
        c = list(self.base)
        for g in self.generators:
            for j, x in enumerate(g):
                c[j] = c[j] + x / 2
        return tuple(c)

    def translated(self, t):
        return Window(self.generators, vec_add(self.base, t))

    def halfspaces(self):
        """List of (normal, offset) meaning normal . x <= offset."""
        out = []
        for nu, lo, hi in self.slabs:
            out.append((nu, hi))
            out.append((tuple(-c for c in nu), -lo))
        return out

    def contains(self, p) -> str:
        on_boundary = False
        for nu, lo, hi in self.slabs:
            v = vec_dot(nu, p)
            s1 = _sgn(v - lo)
            s2 = _sgn(hi - v)
            if s1 < 0 or s2 < 0:
                return OUTSIDE
            if s1 == 0 or s2 == 0:
                on_boundary = True
        return BOUNDARY if on_boundary else INSIDE

    def as_hpolytope(self) -> "HPolytope":
        return HPolytope(self.halfspaces(), self.dim)


def _unit_of(base, generators):
    for v in [base] + list(generators):
        for c in v:
            if _sgn(c) != 0:
                return c / c
    return Fraction(1)


def window(s: Slope) -> Window:
    """The window pi'([0,1]^n) in exact E' coordinates (base at 0)."""
    b = eprime_basis(s)
    gens = [b.col(j) for j in range(s.n)]
    zero = s.field.zero
    return Window(gens, (zero,) * (s.n - s.d))


# ---------------------------------------------------------------------------
# general H-polytopes


class HPolytope:
    """Finite intersection of half-spaces normal . x <= offset in R^dim."""

    def __init__(self, halfspaces, dim):
        self.dim = dim
        self.halfspaces = [(tuple(n), c) for n, c in halfspaces]
        self._vertices = None

    def contains(self, p) -> str:
        on_boundary = False
        for nu, c in self.halfspaces:
            s = _sgn(c - vec_dot(nu, p))
            if s < 0:
                return OUTSIDE
            if s == 0:
                on_boundary = True
        return BOUNDARY if on_boundary else INSIDE

    def _dedup_halfspaces(self):
        best = {}
        order = []
        for nu, c in self.halfspaces:
            if all(_sgn(x) == 0 for x in nu):
                continue  # trivial or infeasible handled by contains of others
            lead = next(x for x in nu if _sgn(x) != 0)
            scale = lead if _sgn(lead) > 0 else -lead
            key_n = tuple(getattr(x, "coeffs", x) for x in (y / scale for y in nu))
            cc = c / scale
            if key_n in best:
                nu0, c0 = best[key_n]
                if _sgn(c0 - cc) > 0:
                    best[key_n] = (tuple(y / scale for y in nu), cc)
            else:
                best[key_n] = (tuple(y / scale for y in nu), cc)
                order.append(key_n)
        return [best[k] for k in order]

    def vertices(self):
        """Exact vertex list (dim <= 3); double description at desk scale."""
        if self._vertices is not None:
            return self._vertices
        if self.dim > 3:
            raise DimensionTooHigh(f"vertex enumeration in dim {self.dim}")
        hs = self._dedup_halfspaces()
        m = self.dim
        verts = []
        seen = set()
        for sub in combinations(range(len(hs)), m):
            a = Matrix(hs[i][0] for i in sub)
            from .linalg import det as _det, solve_right
            if _sgn(_det(a)) == 0:
                continue
            p = solve_right(a, tuple(hs[i][1] for i in sub))
            if p is None:
                continue
            ok = True
            for nu, c in hs:
                if _sgn(c - vec_dot(nu, p)) < 0:
                    ok = False
                    break
            if ok:
                key = tuple(getattr(x, "coeffs", x) for x in p)
                if key not in seen:
                    seen.add(key)
                    verts.append(p)
        self._vertices = verts
        return verts

    def is_empty(self) -> bool:
        if self.dim <= 3:
            return not self.vertices()
        raise DimensionTooHigh("emptiness via vertices needs dim <= 3")

    def irredundant_halfspaces(self):
        """Half-spaces tight at >= dim vertices (facet-defining ones)."""
        verts = self.vertices()
        out = []
        for nu, c in self._dedup_halfspaces():
            tight = sum(1 for p in verts if _sgn(c - vec_dot(nu, p)) == 0)
            if tight >= self.dim:
                out.append((nu, c))
        return out

    def affine_dim(self) -> int:
        verts = self.vertices()
        if not verts:
            return -1
        diffs = [vec_sub(v, verts[0]) for v in verts[1:]]
        if not diffs:
            return 0
        from .linalg import rank
        return rank(Matrix(diffs))

    def interior_empty(self) -> bool:
        """True iff affine dimension < ambient dimension (or empty)."""
        return self.affine_dim() < self.dim

    def volume(self):
        """Exact volume (dim <= 3) via triangulation of the vertex list."""
        if self.dim > 3:
            raise DimensionTooHigh(f"volume in dim {self.dim}")
        verts = self.vertices()
        if not verts:
            return Fraction(0)
        one = _unit_like(verts)
        zero = one - one
        if self.affine_dim() < self.dim:
            return zero
        if self.dim == 1:
            xs = [v[0] for v in verts]
            lo = xs[0]
            hi = xs[0]
            for x in xs[1:]:
                if _sgn(x - lo) < 0:
                    lo = x
                if _sgn(x - hi) > 0:
                    hi = x
            return hi - lo
        centroid = _centroid(verts)
        if self.dim == 2:
            ring = _angular_sort(verts, centroid)
            acc = zero
            for a, b in zip(ring, ring[1:] + ring[:1]):
                acc = acc + (a[0] - centroid[0]) * (b[1] - centroid[1]) \
                          - (a[1] - centroid[1]) * (b[0] - centroid[0])
            return abs_val(acc) / 2
        # dim == 3: fan over facet triangulations from the centroid
        from .linalg import det as _det
        acc = zero
        for nu, c in self.irredundant_halfspaces():
            face = [p for p in verts if _sgn(c - vec_dot(nu, p)) == 0]
            if len(face) < 3:
                continue
            fc = _centroid(face)
            ring = _angular_sort_in_plane(face, fc, nu)
            for a, b in zip(ring, ring[1:] + ring[:1]):
                t = _det(Matrix([vec_sub(a, centroid),
                                 vec_sub(b, centroid),
                                 vec_sub(fc, centroid)]))
                acc = acc + abs_val(t)
        return acc / 6


def abs_val(x):
    return -x if _sgn(x) < 0 else x


def _unit_like(verts):
    for v in verts:
        for c in v:
            if _sgn(c) != 0:
                return c / c
    return Fraction(1)


def _centroid(pts):
    n = len(pts)
    acc = list(pts[0])
    for p in pts[1:]:
        for j, x in enumerate(p):
            acc[j] = acc[j] + x
    return tuple(x / n for x in acc)


def _angle_cmp(center):
    def half(p):
        dy = _sgn(p[1] - center[1])
        if dy != 0:
            return 0 if dy > 0 else 1
        return 0 if _sgn(p[0] - center[0]) > 0 else 1

    def cmp(a, b):
        ha, hb = half(a), half(b)
        if ha != hb:
            return -1 if ha < hb else 1
        cross = (a[0] - center[0]) * (b[1] - center[1]) \
              - (a[1] - center[1]) * (b[0] - center[0])
        s = _sgn(cross)
        return -s
    return cmp


def _angular_sort(pts, center):
    return sorted(pts, key=cmp_to_key(_angle_cmp(center)))


def _angular_sort_in_plane(pts, center, normal):
    # affine 2D coordinates within the plane; any linear chart preserves
    # the convex cyclic order
    axes = None
    for p in pts:
        d = vec_sub(p, center)
        if any(_sgn(x) != 0 for x in d):
            axes = [d]
            break
    for p in pts:
        d = vec_sub(p, center)
        from .linalg import rank as _rank
        if _rank(Matrix(axes + [d])) == 2:
            axes.append(d)
            break
    a1, a2 = axes
    g11, g12, g22 = vec_dot(a1, a1), vec_dot(a1, a2), vec_dot(a2, a2)
    den = g11 * g22 - g12 * g12
    coords = {}
    flat = []
    for p in pts:
        d = vec_sub(p, center)
        b1, b2 = vec_dot(d, a1), vec_dot(d, a2)
        u = (b1 * g22 - b2 * g12) / den
        v = (b2 * g11 - b1 * g12) / den
        flat.append(((u, v), p))
    origin = (den - den, den - den)
    order = _angular_sort([uv for uv, _ in flat], origin)
    lookup = {id(uv): p for uv, p in flat}
    return [lookup[id(uv)] for uv in order]


def intersect_halfspaces(halfspaces, dim):
    """(HPolytope, vertex list); empty vertex list marks EmptyIntersection."""
    p = HPolytope(halfspaces, dim)
    return p, (p.vertices() if dim <= 3 else None)


def interior_empty(p: HPolytope) -> bool:
    return p.interior_empty()


def volume(p: HPolytope):
    return p.volume()


def complementary_zonotope(s: Slope, directions, base=None) -> Window:
    """Zonotope of the n-d generators NOT in `directions` (1-based), anchored
    at the window's base; the anchor test dual to full-face membership."""
    b = eprime_basis(s)
    gens = [b.col(j) for j in range(s.n) if (j + 1) not in set(directions)]
    zero = s.field.zero
    if base is None:
        base = (zero,) * (s.n - s.d)
    return Window(gens, base)

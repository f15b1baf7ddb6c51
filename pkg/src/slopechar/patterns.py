"""Patterns of planar tilings and their regions in the window.

A lifted pattern is a finite connected set of unit edges of Z^n.  Its region
is the intersection of window translates over the pattern's vertices; the
pattern appears at exactly the points of that region.  The r-pattern at a
window point is built from in-window walks of length r + 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations

from .geometry import (INSIDE, BOUNDARY, OUTSIDE, HPolytope, Window,
                       _angle_cmp, _centroid, _sgn, abs_val, eprime_basis,
                       vec_add, vec_dot, vec_sub, window)
from .slope import Slope


class PatternError(Exception):
    pass


class SingularPoint(PatternError):
    """The query point is tight against some translated window boundary."""


class NotFoldable(PatternError):
    pass


class LiftedPattern:
    """Finite connected set of unit edges of Z^n (plus isolated vertices)."""

    __slots__ = ("edges", "_vertices")

    def __init__(self, edges, vertices=None):
        self.edges = frozenset((tuple(a), int(i)) for a, i in edges)
        verts = set()
        for a, i in self.edges:
            verts.add(a)
            verts.add(a[:i - 1] + (a[i - 1] + 1,) + a[i:])
        if vertices is not None:
            verts.update(tuple(v) for v in vertices)
        if not verts:
            raise PatternError("pattern has no vertices")
        self._vertices = frozenset(verts)

    def vertices(self):
        return self._vertices

    def __len__(self):
        return len(self.edges)

    def __eq__(self, other):
        return isinstance(other, LiftedPattern) and self.edges == other.edges \
            and self._vertices == other._vertices

    def __hash__(self):
        return hash((self.edges, self._vertices))

    def __le__(self, other):
        return self.edges <= other.edges

    def translated(self, t):
        return LiftedPattern(
            [(vec_add_int(a, t), i) for a, i in self.edges],
            [vec_add_int(v, t) for v in self._vertices])

    def canonical(self):
        """Translate so the lexicographically least vertex sits at 0."""
        v0 = min(self._vertices)
        return self.translated(tuple(-x for x in v0))

    def encode(self):
        c = self.canonical()
        return (tuple(sorted(c.edges)), tuple(sorted(c._vertices)))

    def is_connected(self):
        verts = set(self._vertices)
        if not verts:
            return True
        adj = {v: [] for v in verts}
        for a, i in self.edges:
            b = a[:i - 1] + (a[i - 1] + 1,) + a[i:]
            adj[a].append(b)
            adj[b].append(a)
        seen = {next(iter(verts))}
        stack = list(seen)
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen == verts

    def __repr__(self):
        return f"LiftedPattern({len(self.edges)} edges, {len(self._vertices)} vertices)"


def vec_add_int(u, v):
    return tuple(a + b for a, b in zip(u, v))


def edge_between(u, v):
    """Canonical (anchor, direction) for the unit edge joining u and v."""
    diff = [b - a for a, b in zip(u, v)]
    nz = [j for j, x in enumerate(diff) if x]
    if len(nz) != 1 or abs(diff[nz[0]]) != 1:
        raise PatternError(f"{u} and {v} are not adjacent lattice points")
    i = nz[0]
    return (u, i + 1) if diff[i] == 1 else (v, i + 1)


@dataclass
class Region:
    """Intersection of window translates W - pi'(x) over pattern vertices."""
    polytope: HPolytope
    pattern: LiftedPattern
    translations: list

    def is_empty(self):
        return self.polytope.is_empty()

    def interior_empty(self):
        return self.polytope.interior_empty()

    def contains(self, p) -> str:
        return self.polytope.contains(p)


def pattern_region(s: Slope, p: LiftedPattern) -> Region:
    b = eprime_basis(s)
    w = window(s)
    halfspaces = []
    translations = []
    for x in sorted(p.vertices()):
        shift = b.apply(x)
        translations.append(shift)
        for nu, hi in w.halfspaces():
            halfspaces.append((nu, hi - vec_dot(nu, shift)))
    return Region(HPolytope(halfspaces, s.n - s.d), p, translations)


# ---------------------------------------------------------------------------
# path folding


def fold_path(s: Slope, start, steps, offset=None):
    """Permute `steps` so every intermediate vertex projects in the window.

    `start` is a lattice point, `steps` a list of (direction, +-1); a lattice
    point x is in-window when B x - offset lies in the (closed) window.
    """
    b = eprime_basis(s)
    w = window(s)
    if offset is None:
        offset = (s.field.zero,) * (s.n - s.d)

    def pos(x):
        return vec_sub(b.apply(x), offset)

    def inw(x):
        return w.contains(pos(x)) != OUTSIDE

    steps = list(steps)
    end = list(start)
    for i, sg in steps:
        end[i - 1] += sg
    if not inw(start) or not inw(tuple(end)):
        raise NotFoldable("path endpoints must project inside the window")
    budget = (len(steps) + 1) ** 2 * max(1, len(w.slabs))
    while budget > 0:
        budget -= 1
        x = list(start)
        bad = None
        for k, (i, sg) in enumerate(steps):
            x[i - 1] += sg
            if not inw(tuple(x)):
                bad = k
                break
        if bad is None:
            return steps
        before = list(start)
        for i, sg in steps[:bad]:
            before[i - 1] += sg
        # the hyperplane crossed by the offending edge
        after = pos(tuple(x))
        violated = []
        for nu, lo, hi in w.slabs:
            v = vec_dot(nu, after)
            if _sgn(v - lo) < 0 or _sgn(hi - v) < 0:
                violated.append((nu, lo, hi))
        swapped = False
        for j in range(bad + 1, len(steps)):
            i, sg = steps[j]
            cand = list(before)
            cand[i - 1] += sg
            if not inw(tuple(cand)):
                continue
            # must come back across a violated hyperplane, not sidestep it
            step_dir = vec_sub(pos(tuple(cand)), pos(tuple(before)))
            if any(_sgn(vec_dot(nu, step_dir)) != 0 for nu, _, _ in violated):
                steps[bad], steps[j] = steps[j], steps[bad]
                swapped = True
                break
        if not swapped:
            raise NotFoldable("no returning edge found for a boundary crossing")
    raise NotFoldable("folding did not terminate")


# ---------------------------------------------------------------------------
# r-patterns


def r_pattern_at(s: Slope, q, r: int) -> LiftedPattern:
    """Union of all length-(r+1) in-window lifted walks from q, anchored at 0.

    q is a point of E' strictly inside the window; walk positions are
    q + B x over lattice offsets x.
    """
    b = eprime_basis(s)
    w = window(s)
    q = tuple(q)
    if w.contains(q) != INSIDE:
        raise SingularPoint("base point not strictly inside the window")
    n = s.n
    gens = [b.col(j) for j in range(n)]
    status_cache = {}

    def status(x):
        got = status_cache.get(x)
        if got is None:
            p = list(q)
            for j, xj in enumerate(x):
                if xj:
                    for t in range(len(p)):
                        p[t] = p[t] + gens[j][t] * xj
            got = w.contains(tuple(p))
            status_cache[x] = got
        return got

    origin = (0,) * n
    dist = {origin: 0}
    frontier = [origin]
    edges = set()
    for level in range(r + 1):
        nxt = []
        for x in frontier:
            for j in range(n):
                for sg in (1, -1):
                    y = x[:j] + (x[j] + sg,) + x[j + 1:]
                    st = status(y)
                    if st == BOUNDARY:
                        raise SingularPoint(
                            f"walk point at offset {y} lies on a window boundary")
                    if st == OUTSIDE:
                        continue
                    edges.add(edge_between(x, y))
                    if y not in dist:
                        dist[y] = level + 1
                        nxt.append(y)
        frontier = nxt
    return LiftedPattern(edges, [origin])


# ---------------------------------------------------------------------------
# window partition by r-patterns


def _clip(poly, nu, c, keep_sign):
    """Clip a convex polygon (ordered vertex list) to nu.x <= c or >= c."""
    if not poly:
        return []
    out = []
    m = len(poly)
    vals = [vec_dot(nu, p) - c for p in poly]
    sides = [_sgn(v) * keep_sign for v in vals]
    for k in range(m):
        a, b = poly[k], poly[(k + 1) % m]
        sa, sb = sides[k], sides[(k + 1) % m]
        if sa >= 0:
            out.append(a)
        if sa * sb < 0:
            t = vals[k] / (vals[k] - vals[(k + 1) % m])
            out.append(tuple(pa + t * (pb - pa) for pa, pb in zip(a, b)))
    # drop exact duplicates introduced by vertices lying on the cut line
    dedup = []
    for p in out:
        if not any(all(_sgn(x - y) == 0 for x, y in zip(p, q)) for q in dedup):
            dedup.append(p)
    return dedup if len(dedup) >= 3 else []


def _poly_area(poly):
    if len(poly) < 3:
        zero = poly[0][0] - poly[0][0] if poly else Fraction(0)
        return zero
    acc = None
    for k in range(len(poly)):
        a, b = poly[k], poly[(k + 1) % len(poly)]
        t = a[0] * b[1] - b[0] * a[1]
        acc = t if acc is None else acc + t
    return abs_val(acc / 2)


def _window_polygon(w: Window):
    verts = w.as_hpolytope().vertices()
    return sorted(verts, key=cmp_to_key(_angle_cmp(_centroid(verts))))


def _reachable_offsets(n, length):
    """Lattice vectors with 1-norm at most `length` (excluding 0)."""
    out = set()
    frontier = {(0,) * n}
    for _ in range(length):
        nxt = set()
        for x in frontier:
            for j in range(n):
                for sg in (1, -1):
                    y = x[:j] + (x[j] + sg,) + x[j + 1:]
                    if y not in out and any(y):
                        nxt.add(y)
        out |= nxt
        frontier = nxt
    return sorted(out)


@dataclass
class AtlasEntry:
    pattern: LiftedPattern
    region: Region
    area: object  # exact field element: total area where this pattern occurs
    cells: list


@dataclass
class PatternAtlas:
    entries: list
    window_area: object
    complete: bool

    def pattern_at(self, q):
        best = None
        for e in self.entries:
            if e.region.contains(q) != OUTSIDE:
                if best is None or len(best.pattern.edges) < len(e.pattern.edges):
                    best = e
        return best


def enumerate_r_patterns(s: Slope, r: int, samples: int = 200, seed: int = 0) -> PatternAtlas:
    """All r-patterns of the tilings of slope s, with exact region areas.

    For a 2-dimensional window the arrangement of translated-window boundary
    lines is subdivided exactly, so the areas form a certified partition of
    the window.  For a 3-dimensional window, patterns are discovered by
    randomized sampling and the result is a lower bound (complete=False).
    """
    m = s.n - s.d
    w = window(s)
    if m == 2:
        return _enumerate_exact_2d(s, r, w)
    return _enumerate_sampled(s, r, w, samples, seed)


def _enumerate_exact_2d(s: Slope, r: int, w: Window) -> PatternAtlas:
    b = eprime_basis(s)
    base_poly = _window_polygon(w)
    cells = [base_poly]
    for x in _reachable_offsets(s.n, r + 1):
        shift = b.apply(x)
        cuts = []
        for nu, lo, hi in w.slabs:
            t = vec_dot(nu, shift)
            cuts.append((nu, lo - t))
            cuts.append((nu, hi - t))
        for nu, c in cuts:
            nxt = []
            for poly in cells:
                sides = {_sgn(vec_dot(nu, p) - c) for p in poly}
                if 1 in sides and -1 in sides:
                    lo_part = _clip(poly, nu, c, -1)
                    hi_part = _clip(poly, nu, c, 1)
                    if lo_part:
                        nxt.append(lo_part)
                    if hi_part:
                        nxt.append(hi_part)
                else:
                    nxt.append(poly)
            cells = nxt
    by_pattern = {}
    for poly in cells:
        centroid = _centroid(poly)
        pat = r_pattern_at(s, centroid, r)
        key = pat.encode()
        if key not in by_pattern:
            by_pattern[key] = (pat, [])
        by_pattern[key][1].append(poly)
    entries = []
    for key in sorted(by_pattern):
        pat, polys = by_pattern[key]
        area = None
        for poly in polys:
            a = _poly_area(poly)
            area = a if area is None else area + a
        entries.append(AtlasEntry(pat.canonical(), pattern_region(s, pat), area, polys))
    total = None
    for e in entries:
        total = e.area if total is None else total + e.area
    window_area = _poly_area(base_poly)
    complete = _sgn(total - window_area) == 0
    return PatternAtlas(entries, window_area, complete)


def _enumerate_sampled(s: Slope, r: int, w: Window, samples: int, seed: int) -> PatternAtlas:
    import random

    rng = random.Random(seed)
    poly = w.as_hpolytope()
    verts = poly.vertices()
    lo = [min(v[j] for v in verts) for j in range(w.dim)]
    hi = [max(v[j] for v in verts) for j in range(w.dim)]
    found = {}
    tries = 0
    den = 10 ** 6
    while len(found) < 10 ** 9 and tries < samples * 20 and sum(
            len(v) for v in found.values()) < samples:
        tries += 1
        q = tuple(lo[j] + (hi[j] - lo[j]) * Fraction(rng.randint(0, den), den)
                  for j in range(w.dim))
        if w.contains(q) != INSIDE:
            continue
        try:
            pat = r_pattern_at(s, q, r)
        except SingularPoint:
            continue
        found.setdefault(pat.encode(), (pat, []))[1].append(q)
    entries = []
    for key in sorted(found):
        pat, pts = found[key]
        entries.append(AtlasEntry(pat.canonical(), pattern_region(s, pat), None, pts))
    return PatternAtlas(entries, w.as_hpolytope().volume(), False)


# ---------------------------------------------------------------------------
# rotation classes (hyperoctahedral symmetries preserving the slope structure)


def transform_pattern(p: LiftedPattern, perm, signs) -> LiftedPattern:
    """Apply the signed permutation e_j -> signs[j] * e_{perm[j]} (0-based)."""

    def tv(v):
        out = [0] * len(v)
        for j, x in enumerate(v):
            out[perm[j]] = signs[j] * x
        return tuple(out)

    edges = []
    for a, i in p.edges:
        b = a[:i - 1] + (a[i - 1] + 1,) + a[i:]
        edges.append(edge_between(tv(a), tv(b)))
    return LiftedPattern(edges, [tv(v) for v in p.vertices()])


def cyclic_rotation_group(n: int):
    """Order-2n rotation group of the n-fold cyclotomic slopes.

    For odd n the coordinate shift e_j -> e_{j+1} realizes the 2*pi/n
    rotation and central symmetry supplies the odd half-turns, giving the
    group {+-shift^k}.  For even n the shift alone is the 2*pi/n rotation
    but -shift^k duplicates shifts, so the signed shift e_n -> -e_1 (whose
    n-th power is -1) generates all 2n rotations instead.
    """
    group = []
    if n % 2:
        for k in range(n):
            perm = tuple((j + k) % n for j in range(n))
            group.append((perm, (1,) * n))
            group.append((perm, (-1,) * n))
    else:
        perm = tuple((j + 1) % n for j in range(n))
        signs = tuple(-1 if j == n - 1 else 1 for j in range(n))
        cur_perm = tuple(range(n))
        cur_signs = (1,) * n
        for _ in range(2 * n):
            group.append((cur_perm, cur_signs))
            cur_perm, cur_signs = (
                tuple(perm[cur_perm[j]] for j in range(n)),
                tuple(cur_signs[j] * signs[cur_perm[j]] for j in range(n)))
    return group


def rotation_classes(patterns, group):
    """Partition patterns into orbits under `group` (up to translation)."""
    reps = {}
    for p in patterns:
        orbit_key = min(transform_pattern(p, perm, signs).encode()
                        for perm, signs in group)
        reps.setdefault(orbit_key, p)
    return list(reps.values())


# ---------------------------------------------------------------------------
# vertex stars of digitized patches


def vertex_star(member, v) -> LiftedPattern:
    """0-pattern (incident in-window edges) at lattice vertex v."""
    n = len(v)
    edges = []
    for i in range(n):
        for sg in (1, -1):
            nb = v[:i] + (v[i] + sg,) + v[i + 1:]
            if member.status(nb) > 0:
                edges.append(edge_between(v, nb))
    return LiftedPattern(edges, [v])


def patch_vertex_stars(patch):
    """Distinct vertex 0-patterns of a patch, canonical up to translation."""
    from .tiling import LatticeMembership
    from .geometry import window as _window

    s = patch.slope
    member = LatticeMembership(_window(s), eprime_basis(s), patch.offset)
    stars = {}
    for v in sorted(patch.vertex_set()):
        pat = vertex_star(member, v).canonical()
        stars.setdefault(pat.encode(), pat)
    return list(stars.values())


# ---------------------------------------------------------------------------
# JSON export


def pattern_json(p: LiftedPattern) -> str:
    doc = {
        "edges": [{"vertex": list(a), "direction": i, "orientation": 1}
                  for a, i in sorted(p.edges)],
        "vertices": [list(v) for v in sorted(p.vertices())],
    }
    return json.dumps(doc, indent=2, sort_keys=True)


def region_json(reg: Region) -> str:
    def num(x):
        if isinstance(x, Fraction):
            return str(x)
        return [str(c) for c in x.coeffs]

    doc = {
        "halfspaces": [{"normal": [num(c) for c in nu], "offset": num(c0)}
                       for nu, c0 in reg.polytope.halfspaces],
        "translations": [[num(c) for c in t] for t in reg.translations],
    }
    return json.dumps(doc, indent=2, sort_keys=True)

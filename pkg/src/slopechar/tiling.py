"""Digitization of a slope into a canonical projection tiling patch.

A face of Z^n is selected when all 2^d of its corners project inside the
(translated) window; the patch is grown by BFS over the in-window vertices,
which form a single connected component.
"""

from __future__ import annotations

import hashlib
import json
import math
import random
from collections import Counter, deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .geometry import (INSIDE, BOUNDARY, OUTSIDE, Window, eprime_basis,
                       complementary_zonotope, vec_sub, window)
from .slope import Slope


class TilingError(Exception):
    pass


class SingularOffset(TilingError):
    """Some lattice point projects exactly onto the window boundary."""


class EmptyPatch(TilingError):
    pass


class UnsupportedDimension(TilingError):
    pass


@dataclass(frozen=True, order=True)
class Face:
    """Unit d-face of Z^n: integer anchor + ascending 1-based directions."""
    anchor: tuple
    directions: tuple

    def corners(self):
        d = len(self.directions)
        out = []
        for mask in range(1 << d):
            c = list(self.anchor)
            for b in range(d):
                if mask >> b & 1:
                    c[self.directions[b] - 1] += 1
            out.append(tuple(c))
        return out


class LatticeMembership:
    """Cached exact membership of B x in (window + offset) for x in Z^n."""

    def __init__(self, w: Window, b, offset):
        # fold the translation into the slab bounds; functional per slab is
        # an integer combination of precomputed field rows
        self.tests = []
        for nu, lo, hi in w.slabs:
            row = tuple(sum((nu[i] * b[i, j] for i in range(len(nu))),
                            start=nu[0] - nu[0]) for j in range(b.ncols))
            shift = sum((nu[i] * offset[i] for i in range(len(nu))),
                        start=nu[0] - nu[0])
            self.tests.append((row, lo + shift, hi + shift))
        self.cache = {}

    def status(self, x) -> int:
        """1 inside, 0 boundary, -1 outside."""
        got = self.cache.get(x)
        if got is not None:
            return got
        result = 1
        for row, lo, hi in self.tests:
            acc = None
            for xj, wj in zip(x, row):
                if xj:
                    term = wj * xj
                    acc = term if acc is None else acc + term
            if acc is None:
                acc = lo - lo
            s1 = (acc - lo).sign()
            s2 = (hi - acc).sign()
            if s1 < 0 or s2 < 0:
                result = -1
                break
            if s1 == 0 or s2 == 0:
                result = 0
        self.cache[x] = result
        return result


class Patch:
    def __init__(self, slope: Slope, offset, faces, radius, seed=None):
        self.slope = slope
        self.offset = tuple(offset)
        self.faces = sorted(faces)
        self.radius = radius
        self.seed = seed

    def vertex_set(self):
        verts = set()
        for f in self.faces:
            verts.update(f.corners())
        return verts

    def __len__(self):
        return len(self.faces)


def _float_pi_basis(s: Slope):
    """Orthonormal float basis of E; used only for radius cuts and rendering."""
    cols = [[float(e) for e in s.generators.col(j)] for j in range(s.d)]
    ortho = []
    for v in cols:
        w = v[:]
        for u in ortho:
            c = sum(a * b for a, b in zip(w, u))
            w = [a - c * b for a, b in zip(w, u)]
        norm = math.sqrt(sum(a * a for a in w))
        ortho.append([a / norm for a in w])
    return ortho


def _pi_coords(basis, x):
    return tuple(sum(b[j] * x[j] for j in range(len(x))) for b in basis)


def draw_offset(s: Slope, seed):
    """Small random rational offset placing the seed vertex well inside."""
    rng = random.Random(seed)
    w = window(s)
    m = s.n - s.d
    center = w.center
    jitter = [Fraction(rng.randint(-4000, 4000), 100003) for _ in range(m)]
    # offset o so that 0 lands near the center of W + o
    return tuple(-center[j] + s.field.from_rational(jitter[j]) for j in range(m))


def integral_sum_offset(s: Slope, jitter=None):
    """Offset whose component along pi'(1,...,1) sits at an integer level.

    Requires (1,...,1) orthogonal to the slope (as for the five-fold slopes,
    where pi' Z^n then falls on parallel lattice planes and an integral sum
    level selects the classical tilings).  The jitter moves the offset
    within the plane orthogonal to that direction.
    """
    from .linalg import solve_right

    n, field = s.n, s.field
    b = eprime_basis(s)
    delta = (1,) * n
    bdelta = b.apply(delta)
    lam = solve_right(b.transpose(), [field.from_rational(Fraction(1))] * n)
    if lam is None:
        raise TilingError("(1,...,1) is not orthogonal to the slope")

    def lam_of(y):
        return sum((lam[j] * y[j] for j in range(len(y))), start=field.zero)

    w = window(s)
    if jitter is None:
        jitter = (Fraction(3, 97), Fraction(5, 101), Fraction(7, 103))[:n - s.d]
    jit = tuple(field.from_rational(Fraction(q)) for q in jitter)
    lj = lam_of(jit)
    inplane = tuple(jit[t] - lj * bdelta[t] / n for t in range(len(jit)))
    raw = tuple(-w.center[t] + inplane[t] for t in range(len(jit)))
    lvl = lam_of(raw)
    # push the sum level to the nearest integer above
    frac = lvl - field.from_rational(Fraction(lvl.floor()))
    shift = (field.one - frac) / n if not frac.is_zero() else field.zero
    return tuple(raw[t] + bdelta[t] * shift for t in range(len(raw)))


def digitize(s: Slope, offset=None, radius=Fraction(10), seed=0) -> Patch:
    """Patch of all faces in-window whose projection meets the radius ball."""
    attempts = 8 if offset is None else 1
    last = None
    for attempt in range(attempts):
        o = draw_offset(s, f"{seed}:{attempt}") if offset is None else tuple(offset)
        try:
            return _digitize_at(s, o, radius, seed)
        except SingularOffset as exc:
            last = exc
            if offset is not None:
                raise
    raise last


def _digitize_at(s: Slope, offset, radius, seed) -> Patch:
    n, d = s.n, s.d
    b = eprime_basis(s)
    w = window(s)
    member = LatticeMembership(w, b, offset)
    basis = _float_pi_basis(s)
    unit_pi = [_pi_coords(basis, [1.0 if j == i else 0.0 for j in range(n)])
               for i in range(n)]
    step = max(math.sqrt(sum(c * c for c in u)) for u in unit_pi)
    reach = float(radius) + d * step + 2 * step

    def inball(x, r):
        p = [0.0] * d
        for j, xj in enumerate(x):
            if xj:
                for t in range(d):
                    p[t] += unit_pi[j][t] * xj
        return sum(a * a for a in p) <= r * r

    origin = (0,) * n
    st = member.status(origin)
    if st == 0:
        raise SingularOffset("seed vertex on window boundary; perturb the offset")
    if st < 0:
        origin = _find_seed(member, n)
    frontier = deque([origin])
    inside = {origin}
    while frontier:
        v = frontier.popleft()
        for j in range(n):
            for sgn in (1, -1):
                nb = v[:j] + (v[j] + sgn,) + v[j + 1:]
                if nb in inside:
                    continue
                st = member.status(nb)
                if st == 0:
                    raise SingularOffset(
                        f"lattice point {nb} projects onto the window boundary; "
                        "perturb the offset slightly")
                if st > 0 and inball(nb, reach):
                    inside.add(nb)
                    frontier.append(nb)
    faces = []
    for v in inside:
        for dirs in combinations(range(1, n + 1), d):
            ok = True
            f = Face(v, dirs)
            corners = f.corners()
            for c in corners[1:]:
                if c not in inside and member.status(c) <= 0:
                    if member.status(c) == 0:
                        raise SingularOffset("face corner on window boundary")
                    ok = False
                    break
            if ok and any(inball(c, float(radius)) for c in corners):
                faces.append(f)
    return Patch(s, offset, faces, radius, seed)


def _find_seed(member: LatticeMembership, n):
    # BFS in Z^n from the origin until a vertex projects inside the window
    frontier = deque([(0,) * n])
    seen = {(0,) * n}
    budget = 2_000_000
    while frontier and budget:
        v = frontier.popleft()
        budget -= 1
        for j in range(n):
            for sgn in (1, -1):
                nb = v[:j] + (v[j] + sgn,) + v[j + 1:]
                if nb in seen:
                    continue
                seen.add(nb)
                st = member.status(nb)
                if st > 0:
                    return nb
                frontier.append(nb)
    raise TilingError("could not find a lattice point projecting in the window")


def face_selected_by_anchor(s: Slope, face: Face, offset, cache={}) -> bool:
    """Complementary-zonotope anchor test, equivalent to the 2^d-corner test."""
    key = (id(s), face.directions)
    zc = cache.get(key)
    if zc is None:
        zc = complementary_zonotope(s, face.directions)
        cache[key] = zc
    b = eprime_basis(s)
    p = vec_sub(b.apply(face.anchor), offset)
    return zc.contains(p) == INSIDE


def tile_frequencies(p: Patch):
    """Relative frequency of each direction tuple among the patch's tiles."""
    if not p.faces:
        raise EmptyPatch("no faces in patch")
    counts = Counter(f.directions for f in p.faces)
    total = sum(counts.values())
    return {dirs: Fraction(c, total) for dirs, c in sorted(counts.items())}


_PALETTE = ["#4878a8", "#e49444", "#5ba053", "#d1605e", "#857aab",
            "#8c6d31", "#d684bd", "#7f7f7f", "#bcbd39", "#2ca8c2"]


def render_svg(p: Patch) -> str:
    """Deterministic SVG 1.1 document, one polygon per tile (d = 2 only)."""
    if p.slope.d != 2:
        raise UnsupportedDimension("SVG rendering needs d = 2")
    basis = _float_pi_basis(p.slope)
    n = p.slope.n
    unit_pi = [_pi_coords(basis, [1.0 if j == i else 0.0 for j in range(n)])
               for i in range(n)]

    def project(x):
        px = sum(unit_pi[j][0] * x[j] for j in range(n))
        py = sum(unit_pi[j][1] * x[j] for j in range(n))
        return px, py

    type_index = {dirs: i for i, dirs in
                  enumerate(sorted({f.directions for f in p.faces}))}
    polys = []
    xs, ys = [0.0], [0.0]
    for f in p.faces:
        i, j = f.directions
        a = f.anchor
        ring = [a,
                tuple(a[k] + (1 if k == i - 1 else 0) for k in range(n)),
                tuple(a[k] + (1 if k in (i - 1, j - 1) else 0) for k in range(n)),
                tuple(a[k] + (1 if k == j - 1 else 0) for k in range(n))]
        pts = [project(v) for v in ring]
        xs.extend(x for x, _ in pts)
        ys.extend(y for _, y in pts)
        coords = " ".join(f"{x:.12g},{-y:.12g}" for x, y in pts)
        color = _PALETTE[type_index[f.directions] % len(_PALETTE)]
        polys.append(f'<polygon points="{coords}" fill="{color}" '
                     f'stroke="black" stroke-width="0.02"/>')
    pad = 1.0
    x0, x1 = min(xs) - pad, max(xs) + pad
    y0, y1 = min(-y for y in ys) - pad, max(-y for y in ys) + pad
    head = ('<?xml version="1.0" encoding="UTF-8"?>\n'
            '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'viewBox="{x0:.12g} {y0:.12g} {x1 - x0:.12g} {y1 - y0:.12g}">')
    return head + "\n" + "\n".join(polys) + "\n</svg>\n"


def slope_hash(s: Slope) -> str:
    data = {
        "minpoly": [str(c) for c in s.field.minpoly],
        "n": s.n,
        "d": s.d,
        "generators": [[[str(c) for c in e.coeffs] for e in s.generators.col(j)]
                       for j in range(s.d)],
    }
    return hashlib.sha256(json.dumps(data, sort_keys=True).encode()).hexdigest()


def patch_json(p: Patch) -> str:
    doc = {
        "slope_hash": slope_hash(p.slope),
        "n": p.slope.n,
        "d": p.slope.d,
        "radius": str(Fraction(p.radius)),
        "offset": [[str(c) for c in e.coeffs] for e in p.offset],
        "faces": [{"anchor": list(f.anchor), "directions": list(f.directions)}
                  for f in p.faces],
    }
    return json.dumps(doc, indent=2, sort_keys=True)

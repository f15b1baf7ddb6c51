"""Deciding characterization by coincidences.

Assembles the coincidence equations of a slope together with the Plucker
relations and a normalization (some Grassmann coordinate set to 1), computes
a reduced Groebner basis, and reads the verdict off zero-dimensionality.
Non-generic slopes get an informational analysis instead of a verdict.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from .coincidence import (Degenerate, InconsistentSystem, all_equations,
                          grassmann_variables, minimize_r, realize)
from .numfield import count_real_roots, poly_eval, poly_trim
from .polyring import (Poly, grevlex_key, monomial_div, monomial_divides,
                       monomial_lcm)
from .slope import Slope, grassmann, is_generic, plucker_relation_index_pairs

DEGREE_CAP = 12
BASIS_CAP = 10000


class CharcheckError(Exception):
    pass


class ResourceLimit(CharcheckError):
    """Degree or basis-size cap exceeded during Buchberger."""


# ---------------------------------------------------------------------------
# ideal assembly


class PolyIdeal:
    """Content-normalized generators over named variables, grevlex order."""

    def __init__(self, names, generators, active=None):
        self.names = tuple(names)
        gens = []
        for g in generators:
            if g:
                gens.append(g.content_normalized())
        self.generators = tuple(dict.fromkeys(gens))
        self.active = tuple(active) if active is not None else tuple(range(len(names)))

    def __repr__(self):
        return f"PolyIdeal({len(self.generators)} generators, {len(self.names)} vars)"


def _coord_term(tuples_index, idx):
    """(sign, variable position) of G_idx for a possibly unsorted index tuple."""
    srt = tuple(sorted(idx))
    if len(set(srt)) != len(srt):
        return 0, None
    sign = 1
    lst = list(idx)
    for i in range(len(lst)):
        for j in range(len(lst) - 1 - i):
            if lst[j] > lst[j + 1]:
                lst[j], lst[j + 1] = lst[j + 1], lst[j]
                sign = -sign
    return sign, tuples_index[srt]


def plucker_polys(n, d):
    """The quadratic Plucker relations as polynomials in the minor variables."""
    tuples, _ = grassmann_variables(n, d)
    tuples_index = {t: i for i, t in enumerate(tuples)}
    nvars = len(tuples)
    out = []
    for a, b in plucker_relation_index_pairs(n, d):
        terms = {}
        for l, bl in enumerate(b):
            s1, i1 = _coord_term(tuples_index, a + (bl,))
            s2, i2 = _coord_term(tuples_index, tuple(x for x in b if x != bl))
            if not s1 or not s2:
                continue
            mono = [0] * nvars
            mono[i1] += 1
            mono[i2] += 1
            mono = tuple(mono)
            c = Fraction(s1 * s2 * (1 if l % 2 == 0 else -1))
            terms[mono] = terms.get(mono, Fraction(0)) + c
        p = Poly(nvars, terms)
        if p:
            out.append(p)
    return list(dict.fromkeys(p.content_normalized() for p in out))


def span_reduce(polys):
    """Q-linearly independent triangular basis of the span (sparse Gauss)."""
    pivots = {}  # leading monomial -> term dict
    for p in polys:
        row = dict(p.terms)
        while row:
            lead = max(row, key=grevlex_key)
            hit = pivots.get(lead)
            if hit is None:
                break
            f = row[lead]
            for m, c in hit.items():
                v = row.get(m, Fraction(0)) - f * c
                if v:
                    row[m] = v
                else:
                    row.pop(m, None)
        if row:
            lc = row[lead]
            pivots[lead] = {m: c / lc for m, c in row.items()}
    nvars = polys[0].nvars if polys else 0
    ordered = sorted(pivots, key=grevlex_key)
    return [Poly(nvars, pivots[m]).content_normalized() for m in ordered]


def assemble_ideal(s: Slope, equations=None, normalize_at=None):
    """Coincidence equations + Plucker relations, normalized at one coordinate.

    normalize_at: index tuple like (1, 3) or None for the coordinate of
    largest modulus at the slope.  Returns (PolyIdeal, normalization index).
    """
    tuples, names = grassmann_variables(s.n, s.d)
    if equations is None:
        equations = all_equations(s)
    g = grassmann(s)
    if normalize_at is None:
        normalize_at = max(tuples, key=lambda t: abs(g[t]))
    norm_pos = tuples.index(tuple(normalize_at))
    if g[tuple(normalize_at)].is_zero():
        raise CharcheckError(f"normalization coordinate {normalize_at} vanishes")
    nvars = len(tuples)
    one = Poly.constant(nvars, 1)
    polys = [e.poly for e in equations] + plucker_polys(s.n, s.d)
    subst = [p.substitute([(norm_pos, one)]) for p in polys]
    gens = span_reduce([p for p in subst if p])
    active = tuple(i for i in range(nvars) if i != norm_pos)
    return PolyIdeal(names, gens, active), tuple(normalize_at)


# ---------------------------------------------------------------------------
# Buchberger


def _reduce_terms(terms, basis_lt):
    """Full normal form of a term dict against [(lm, lc, terms)] entries."""
    work = dict(terms)
    out = {}
    while work:
        lead = max(work, key=grevlex_key)
        c = work.pop(lead)
        for lm, lc, bt in basis_lt:
            if monomial_divides(lm, lead):
                shift = monomial_div(lead, lm)
                f = c / lc
                for m, cm in bt.items():
                    mm = tuple(a + b for a, b in zip(m, shift))
                    if mm == lead:
                        continue
                    v = work.get(mm, out.pop(mm, Fraction(0))) - f * cm
                    if v:
                        work[mm] = v
                    else:
                        work.pop(mm, None)
                break
        else:
            out[lead] = c
    return out


def normal_form(p: Poly, basis):
    """Remainder of p on multivariate division by the basis list."""
    basis_lt = [(g.leading()[0], g.leading()[1], g.terms) for g in basis if g]
    return Poly(p.nvars, _reduce_terms(p.terms, basis_lt))


def s_polynomial(f: Poly, g: Poly):
    mf, cf = f.leading()
    mg, cg = g.leading()
    lcm = monomial_lcm(mf, mg)
    tf = monomial_div(lcm, mf)
    tg = monomial_div(lcm, mg)
    terms = {}
    for m, c in f.terms.items():
        mm = tuple(a + b for a, b in zip(m, tf))
        terms[mm] = terms.get(mm, Fraction(0)) + c / cf
    for m, c in g.terms.items():
        mm = tuple(a + b for a, b in zip(m, tg))
        terms[mm] = terms.get(mm, Fraction(0)) - c / cg
    return Poly(f.nvars, terms)


def buchberger(ideal: PolyIdeal, degree_cap=DEGREE_CAP, basis_cap=BASIS_CAP):
    """Reduced Groebner basis (grevlex) of the ideal's generators."""
    import heapq

    basis = [g.monic() for g in ideal.generators if g]
    if not basis:
        return []
    lms = [g.leading()[0] for g in basis]
    heap = []
    pending = set()

    def add_pairs(k):
        for i in range(k):
            lcm = monomial_lcm(lms[i], lms[k])
            if lcm == tuple(a + b for a, b in zip(lms[i], lms[k])):
                continue  # coprime leading monomials: S-poly reduces to 0
            heapq.heappush(heap, (grevlex_key(lcm), i, k, lcm))
            pending.add((i, k))

    for k in range(len(basis)):
        add_pairs(k)
    basis_lt = [(g.leading()[0], g.leading()[1], g.terms) for g in basis]
    while heap:
        _, i, j, lcm = heapq.heappop(heap)
        if (i, j) not in pending:
            continue
        pending.discard((i, j))
        pairs = pending
        # chain criterion: some other basis element divides the lcm and both
        # of its pairs with i, j are already handled
        skip = False
        for k in range(len(basis)):
            if k in (i, j) or not monomial_divides(lms[k], lcm):
                continue
            a = (min(i, k), max(i, k))
            b = (min(j, k), max(j, k))
            if a not in pairs and b not in pairs:
                skip = True
                break
        if skip:
            continue
        sp = s_polynomial(basis[i], basis[j])
        rem = _reduce_terms(sp.terms, basis_lt)
        if not rem:
            continue
        h = Poly(sp.nvars, rem).monic()
        if h.degree() > degree_cap:
            raise ResourceLimit(f"degree {h.degree()} exceeds cap {degree_cap}")
        if len(basis) >= basis_cap:
            raise ResourceLimit(f"basis size exceeds cap {basis_cap}")
        basis.append(h)
        lms.append(h.leading()[0])
        basis_lt.append((lms[-1], Fraction(1), h.terms))
        add_pairs(len(basis) - 1)
    return _interreduce(basis)


def _interreduce(basis):
    """Minimal then reduced basis: prune dominated leads, tail-reduce, sort."""
    basis = [g for g in basis if g]
    keep = []
    for i, g in enumerate(basis):
        lm = g.leading()[0]
        dominated = any(
            monomial_divides(h.leading()[0], lm) and (j < i or h.leading()[0] != lm)
            for j, h in enumerate(basis) if j != i and monomial_divides(h.leading()[0], lm))
        if not dominated:
            keep.append(g)
    out = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        out.append(normal_form(g, others).monic())
    out.sort(key=lambda g: grevlex_key(g.leading()[0]))
    return out


def is_zero_dimensional(gb, nvars=None, active=None):
    """True iff every (active) variable has a pure-power leading monomial."""
    if not gb:
        return False
    nvars = gb[0].nvars if nvars is None else nvars
    active = range(nvars) if active is None else active
    leads = [g.leading()[0] for g in gb]
    for i in active:
        if not any(sum(m) == m[i] and m[i] > 0 for m in leads):
            return False
    return True


# ---------------------------------------------------------------------------
# univariate consequences and sign filtering


def _univariate_in(p: Poly, active):
    """Variable index if p involves exactly one active variable, else None."""
    used = {i for m in p.terms for i, e in enumerate(m) if e}
    used &= set(active)
    return used.pop() if len(used) == 1 else None


def _to_coeff_list(p: Poly, var):
    deg = max(m[var] for m in p.terms)
    coeffs = [Fraction(0)] * (deg + 1)
    for m, c in p.terms.items():
        coeffs[m[var]] += c
    return poly_trim(coeffs)


def isolate_real_roots(coeffs):
    """Disjoint rational intervals, one simple real root each (Sturm + bisection)."""
    coeffs = poly_trim(coeffs)
    if len(coeffs) <= 1:
        return []
    bound = 1 + max(abs(c) for c in coeffs[:-1]) / abs(coeffs[-1])
    intervals = [(-bound, bound)]
    out = []
    while intervals:
        lo, hi = intervals.pop()
        k = count_real_roots(coeffs, lo, hi)
        if k == 0:
            continue
        if k == 1:
            at0 = lo <= 0 <= hi and poly_eval(coeffs, Fraction(0)) == 0
            if at0:
                out.append((Fraction(0), Fraction(0)))
                continue
            if lo < 0 < hi:
                intervals.append((lo, Fraction(0)))
                intervals.append((Fraction(0), hi))
                continue
            # shrink a zero endpoint so the interval determines the sign
            if hi == 0:
                cand = lo / 2
                while count_real_roots(coeffs, lo, cand) != 1:
                    cand /= 2
                hi = cand
            elif lo == 0:
                cand = hi / 2
                while count_real_roots(coeffs, cand, hi) != 1:
                    cand /= 2
                lo = cand
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        if poly_eval(coeffs, mid) == 0:
            out.append((mid, mid))
            lo2 = mid - Fraction(1, 10 ** 6)
            hi2 = mid + Fraction(1, 10 ** 6)
            while count_real_roots(coeffs, lo2, mid) > 1:
                lo2 = (lo2 + mid) / 2
            while count_real_roots(coeffs, mid, hi2) > 1:
                hi2 = (mid + hi2) / 2
            intervals.append((lo, lo2))
            intervals.append((hi2, hi))
        else:
            intervals.append((lo, mid))
            intervals.append((mid, hi))
    return sorted(out)


def minimal_polynomial_of(var, gb, nvars, cap=8):
    """Monic univariate polynomial (ascending coefficients) of least degree
    satisfied by the variable modulo the ideal of gb, or None below cap."""
    basis_lt = [(g.leading()[0], g.leading()[1], g.terms) for g in gb]
    unit = tuple(1 if i == var else 0 for i in range(nvars))
    nf = {(0,) * nvars: Fraction(1)}
    rows = []  # (pivot mono, vector, combination over power basis)
    for k in range(cap + 1):
        vec = dict(nf)
        comb = [Fraction(0)] * (cap + 1)
        comb[k] = Fraction(1)
        for pm, pv, pc in sorted(rows, key=lambda r: grevlex_key(r[0]), reverse=True):
            f = vec.get(pm)
            if not f:
                continue
            for m, c in pv.items():
                v = vec.get(m, Fraction(0)) - f * c
                if v:
                    vec[m] = v
                else:
                    vec.pop(m, None)
            for i in range(cap + 1):
                comb[i] -= f * pc[i]
        if not vec:
            coeffs = poly_trim(comb)
            lead = coeffs[-1]
            return [c / lead for c in coeffs]
        pm = max(vec, key=grevlex_key)
        lc = vec[pm]
        rows.append((pm, {m: c / lc for m, c in vec.items()},
                     [c / lc for c in comb]))
        nf = _reduce_terms(
            {tuple(a + b for a, b in zip(m, unit)): c for m, c in nf.items()},
            basis_lt)
    return None


def _root_sign(coeffs, interval):
    lo, hi = interval
    if lo > 0:
        return 1
    if hi < 0:
        return -1
    return 0


# ---------------------------------------------------------------------------
# verdict


@dataclass
class Verdict:
    status: str  # CharacterizedByCoincidences | NotCharacterized | NonGenericInput
    names: tuple = ()
    normalization: tuple | None = None
    equations: tuple = ()
    groebner: tuple = ()
    r_bound: int | None = None
    r_witnesses: tuple = ()
    witness: dict = field(default_factory=dict)
    consequences: tuple = ()
    timings: dict = field(default_factory=dict)


def _r_bound(s: Slope, equations):
    """Max minimized r over the realizable coincidences behind the equations."""
    best = None
    witnesses = []
    for e in equations:
        try:
            c = realize(s, e.type, e.vector)
        except InconsistentSystem:
            continue
        if isinstance(c, Degenerate):
            continue
        c2, r = minimize_r(s, c)
        witnesses.append((c2, r))
        if best is None or r > best:
            best = r
    return best, tuple(witnesses)


def _free_variables(gb, active):
    leads = [g.leading()[0] for g in gb]
    return tuple(i for i in active
                 if not any(sum(m) == m[i] and m[i] > 0 for m in leads))


def _solve_linearly(gens, active):
    """Assignment {var: Fraction} if repeated linear elimination solves the
    system completely, else None."""
    gens = [Poly(g.nvars, g.terms) for g in gens if g]
    values = {}
    progress = True
    while gens and progress:
        progress = False
        for g in list(gens):
            var = _univariate_in(g, active)
            if var is None or var in values:
                continue
            coeffs = _to_coeff_list(g, var)
            if len(coeffs) != 2:
                continue
            v = -coeffs[0] / coeffs[1]
            values[var] = v
            const = Poly.constant(g.nvars, v)
            gens = [h.substitute([(var, const)]) for h in gens]
            gens = [h for h in gens if h]
            progress = True
            break
    if gens:
        return None
    return values


def _comparison_point(gb, active, free, names, exact_values, norm_pos):
    """A rational point on the positive-dimensional component, distinct from
    the slope's own coordinates: specialize one free variable to a nearby
    rational and solve the rest by linear elimination."""
    if not free:
        return None
    fv = free[0]
    v = exact_values[fv]
    lo, hi = v.interval(Fraction(1, 100))
    candidates = []
    for den in (2, 1, 3, 4):
        for num in (int(lo * den), int(lo * den) + 1, int(hi * den) + 1):
            c = Fraction(num, den)
            if c != 0 and c.denominator == den:
                candidates.append(c)
    # among candidates close to the root interval prefer the simplest; the
    # coarse closeness filter keeps the choice independent of how far the
    # interval happens to be refined already
    def dist(c):
        d = max(lo - c, c - hi)
        return d if d > 0 else Fraction(0)

    near = [c for c in candidates if dist(c) < Fraction(1, 10)]
    if near:
        candidates = near
        candidates.sort(key=lambda c: (c.denominator, dist(c)))
    else:
        candidates.sort(key=lambda c: (dist(c), c.denominator))
    nvars = gb[0].nvars
    rest = [a for a in active if a != fv]
    for c in dict.fromkeys(candidates):
        if (v.sign() > 0) != (c > 0):
            continue
        spec = [g.substitute([(fv, Poly.constant(nvars, c))]) for g in gb]
        if any(g.degree() == 0 and g for g in spec):
            continue
        sol = _solve_linearly([g for g in spec if g], rest)
        if sol is None:
            continue
        point = {names[norm_pos]: Fraction(1), names[fv]: c}
        point.update({names[i]: val for i, val in sol.items()})
        return point
    return None


def verdict(s: Slope, normalize_at=None,
            degree_cap=DEGREE_CAP, basis_cap=BASIS_CAP) -> Verdict:
    """Characterization verdict for a slope (Penrose-like inputs get the
    non-generic informational treatment)."""
    t0 = time.monotonic()
    tuples, names = grassmann_variables(s.n, s.d)
    generic, gwitness = is_generic(s)
    timings = {}

    eqs = all_equations(s)
    timings["equations"] = time.monotonic() - t0
    g = grassmann(s)
    exact = [g[t] for t in tuples]
    for e in eqs:
        if not e.poly.evaluate(exact).is_zero():
            raise CharcheckError("coincidence equation fails to vanish at the slope")

    t1 = time.monotonic()
    ideal, norm = assemble_ideal(s, equations=eqs, normalize_at=normalize_at)
    norm_pos = tuples.index(norm)
    norm_val = exact[norm_pos]
    scaled = [v / norm_val for v in exact]
    gb = buchberger(ideal, degree_cap=degree_cap, basis_cap=basis_cap)
    timings["groebner"] = time.monotonic() - t1

    if not generic:
        consequences = []
        nvars = len(tuples)
        for var in ideal.active:
            coeffs = minimal_polynomial_of(var, gb, nvars)
            if coeffs is None:
                continue
            # a zero root means the coordinate vanishes, excluded whenever the
            # slope's own coordinate does not: strip it via the sign filter
            achievable = scaled[var].sign()
            stripped = 0
            while achievable != 0 and len(coeffs) > 1 and coeffs[0] == 0:
                coeffs = coeffs[1:]
                stripped += 1
            if len(coeffs) <= 2:
                continue
            mono = [0] * nvars
            poly = Poly(nvars, {tuple(mono[:var] + [k] + mono[var + 1:]): c
                                for k, c in enumerate(coeffs)})
            roots = []
            for iv in isolate_real_roots(coeffs):
                sign = _root_sign(coeffs, iv)
                roots.append({
                    "interval": iv,
                    "sign": sign,
                    "accepted": sign == achievable,
                })
            consequences.append({
                "variable": names[var],
                "polynomial": poly.content_normalized(),
                "achievable_sign": achievable,
                "zero_roots_rejected": stripped,
                "roots": roots,
            })
        timings["total"] = time.monotonic() - t0
        return Verdict(status="NonGenericInput", names=tuple(names),
                       normalization=norm, equations=tuple(eqs),
                       groebner=tuple(gb),
                       witness={"rational_normal_vector": tuple(gwitness)},
                       consequences=tuple(consequences), timings=timings)

    if is_zero_dimensional(gb, len(tuples), ideal.active):
        r_bound, witnesses = _r_bound(s, eqs)
        timings["total"] = time.monotonic() - t0
        return Verdict(status="CharacterizedByCoincidences", names=tuple(names),
                       normalization=norm, equations=tuple(eqs),
                       groebner=tuple(gb), r_bound=r_bound,
                       r_witnesses=witnesses, timings=timings)

    free = _free_variables(gb, ideal.active)
    # family through the slope: specialize bound variables whose value at the
    # slope is rational, keep the relations purely among the free variables
    bound_subst = []
    for i in ideal.active:
        if i not in free and scaled[i].is_rational():
            bound_subst.append((i, Poly.constant(len(tuples), scaled[i].coeffs[0])))
    family = []
    for p in gb:
        q = p.substitute(bound_subst)
        if q and {i for m in q.terms for i, e in enumerate(m) if e} <= set(free):
            family.append(q.content_normalized())
    family = tuple(dict.fromkeys(family))
    point = _comparison_point(gb, ideal.active, free, names, scaled, norm_pos)
    timings["total"] = time.monotonic() - t0
    return Verdict(status="NotCharacterized", names=tuple(names),
                   normalization=norm, equations=tuple(eqs), groebner=tuple(gb),
                   witness={
                       "free_variables": tuple(names[i] for i in free),
                       "family": family,
                       "comparison_point": point,
                   },
                   timings=timings)


# ---------------------------------------------------------------------------
# JSON


def _frac_str(x):
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}" if f.denominator != 1 else str(f.numerator)


def poly_json(p: Poly, names):
    return {
        "pretty": p.pretty(names),
        "terms": [{"monomial": list(m), "coefficient": _frac_str(c)}
                  for m, c in sorted(p.terms.items(),
                                     key=lambda kv: grevlex_key(kv[0]), reverse=True)],
    }


def verdict_json(v: Verdict):
    names = list(v.names)
    out = {
        "status": v.status,
        "variables": names,
        "normalization": "G" + "".join(str(i) for i in v.normalization) if v.normalization else None,
        "equation_count": len(v.equations),
        "groebner_basis": [poly_json(p, names) for p in v.groebner],
        "timings": {k: round(t, 3) for k, t in v.timings.items()},
    }
    if v.status == "CharacterizedByCoincidences":
        out["r_bound"] = v.r_bound
        out["r_values"] = sorted({r for _, r in v.r_witnesses}, reverse=True)
    if v.status == "NotCharacterized":
        out["witness"] = {
            "free_variables": list(v.witness.get("free_variables", ())),
            "family": [poly_json(p, names) for p in v.witness.get("family", ())],
            "comparison_point": (
                {k: _frac_str(x) for k, x in v.witness["comparison_point"].items()}
                if v.witness.get("comparison_point") else None),
        }
    if v.status == "NonGenericInput":
        out["witness"] = {"rational_normal_vector":
                          list(v.witness.get("rational_normal_vector", ()))}
        out["consequences"] = [{
            "variable": c["variable"],
            "polynomial": poly_json(c["polynomial"], names),
            "achievable_sign": c["achievable_sign"],
            "roots": [{
                "interval": [_frac_str(c2) for c2 in r["interval"]],
                "sign": r["sign"],
                "accepted": r["accepted"],
            } for r in c["roots"]],
        } for c in v.consequences]
    return out

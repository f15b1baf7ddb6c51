import random
from fractions import Fraction as F
from itertools import combinations

import pytest
import sympy

from slopechar.charcheck import (PolyIdeal, ResourceLimit, assemble_ideal,
                                 buchberger, is_zero_dimensional,
                                 isolate_real_roots, minimal_polynomial_of,
                                 normal_form, plucker_polys, s_polynomial,
                                 span_reduce, verdict)
from slopechar.coincidence import grassmann_variables
from slopechar.linalg import Matrix, det
from slopechar.polyring import Poly

X, Y, Z = range(3)


def _p2(terms):
    return Poly(2, {m: F(c) for m, c in terms.items()})


def _p3(terms):
    return Poly(3, {m: F(c) for m, c in terms.items()})


def _minors(rows, d):
    n = len(rows)
    out = []
    for t in combinations(range(n), d):
        out.append(det(Matrix([rows[i] for i in t])))
    return out


def test_plucker_polys_vanish_on_minors():
    rng = random.Random(7)
    for n, d in ((4, 2), (5, 2), (6, 3)):
        polys = plucker_polys(n, d)
        for _ in range(10):
            rows = [[F(rng.randint(-5, 5)) for _ in range(d)] for _ in range(n)]
            vals = _minors(rows, d)
            for p in polys:
                assert p.evaluate(vals) == 0


def test_plucker_polys_reject_non_minor_vector():
    polys = plucker_polys(4, 2)
    assert len(polys) == 1
    tuples, _ = grassmann_variables(4, 2)
    # G12 = G34 = 1, everything else 0 violates the quadric
    vals = [F(1) if t in ((1, 2), (3, 4)) else F(0) for t in tuples]
    assert polys[0].evaluate(vals) != 0


def test_span_reduce_preserves_span():
    p = _p2({(2, 0): 2, (0, 1): 4})
    q = _p2({(2, 0): 1, (0, 1): 2})  # dependent on p
    r = _p2({(1, 1): 1})
    out = span_reduce([p, q, r, p + r])
    assert len(out) == 2
    # distinct leading monomials (triangular)
    leads = [g.leading()[0] for g in out]
    assert len(set(leads)) == 2
    # adding the inputs back does not enlarge the span
    assert len(span_reduce(out + [p, q, r])) == 2


def _to_sympy(p, gens):
    expr = 0
    for m, c in p.terms.items():
        t = sympy.Rational(c.numerator, c.denominator)
        for g, e in zip(gens, m):
            t *= g ** e
        expr += t
    return expr


HAND_MADE = [
    (2, [{(2, 0): 1, (0, 0): -2}, {(0, 1): 1, (0, 0): -1}]),
    (2, [{(1, 1): 1, (0, 0): -1}]),
    (2, [{(2, 0): 1, (0, 2): 1, (0, 0): -1}, {(1, 0): 1, (0, 1): -1}]),
    (3, [{(1, 0, 0): 1}, {(0, 1, 0): 1}, {(0, 0, 1): 1}]),
    (3, [{(2, 0, 0): 1, (0, 1, 0): -1}, {(0, 2, 0): 1, (0, 0, 1): -1},
         {(0, 0, 2): 1, (0, 0, 0): -2}]),
]


def _hand_made_ideals():
    for nv, gens in HAND_MADE:
        yield nv, [Poly(nv, {m: F(c) for m, c in g.items()}) for g in gens]


def _from_sympy(expr, syms):
    sp = sympy.Poly(expr, *syms)
    terms = {}
    for mono, c in sp.terms():
        c = sympy.Rational(c)
        terms[tuple(int(e) for e in mono)] = F(int(c.p), int(c.q))
    return Poly(len(syms), terms)


def test_buchberger_matches_reference_implementation():
    gens_syms = sympy.symbols("x0 x1 x2")
    for nv, gens in _hand_made_ideals():
        syms = gens_syms[:nv]
        gb = buchberger(PolyIdeal(["x%d" % i for i in range(nv)], gens))
        ref = sympy.groebner([_to_sympy(g, syms) for g in gens], *syms,
                             order="grevlex")
        ours = {g.content_normalized() for g in gb}
        theirs = {_from_sympy(e, syms).content_normalized() for e in ref.exprs}
        assert ours == theirs


def test_buchberger_s_polynomial_criterion(typical, ab):
    """Every S-polynomial of a computed basis reduces to zero against it."""
    bases = []
    for nv, gens in _hand_made_ideals():
        bases.append(buchberger(PolyIdeal(["x%d" % i for i in range(nv)], gens)))
    for s in (typical, ab):
        ideal, _ = assemble_ideal(s)
        bases.append(buchberger(ideal))
    for gb in bases:
        for f, g in combinations(gb, 2):
            sp = s_polynomial(f, g)
            assert normal_form(sp, gb).is_zero()


def test_is_zero_dimensional_against_reference():
    gens_syms = sympy.symbols("x0 x1 x2")
    for nv, gens in _hand_made_ideals():
        syms = gens_syms[:nv]
        gb = buchberger(PolyIdeal(["x%d" % i for i in range(nv)], gens))
        ref = sympy.groebner([_to_sympy(g, syms) for g in gens], *syms,
                             order="grevlex")
        assert is_zero_dimensional(gb, nv) == ref.is_zero_dimensional


def test_normal_form_properties():
    gens = [_p2({(2, 0): 1, (0, 0): -2}), _p2({(0, 1): 1, (0, 0): -1})]
    gb = buchberger(PolyIdeal(["x", "y"], gens))
    x = Poly.variable(2, X)
    y = Poly.variable(2, Y)
    combo = gens[0] * (x + y) + gens[1] * gens[1]
    assert normal_form(combo, gb).is_zero()
    p = x * x * y + x
    nf = normal_form(p, gb)
    assert normal_form(nf, gb) == nf


def test_minimal_polynomial_of():
    # x^2 = y, y^2 = 2  =>  x^4 = 2
    gens = [_p2({(2, 0): 1, (0, 1): -1}), _p2({(0, 2): 1, (0, 0): -2})]
    gb = buchberger(PolyIdeal(["x", "y"], gens))
    assert minimal_polynomial_of(X, gb, 2) == [F(-2), F(0), F(0), F(0), F(1)]
    assert minimal_polynomial_of(Y, gb, 2) == [F(-2), F(0), F(1)]
    # linear relation
    gens = [_p2({(1, 0): 1, (0, 0): -3}), _p2({(0, 2): 1, (0, 1): 1})]
    gb = buchberger(PolyIdeal(["x", "y"], gens))
    assert minimal_polynomial_of(X, gb, 2) == [F(-3), F(1)]


def test_isolate_real_roots_quadratic():
    # x^2 - 2
    ivs = isolate_real_roots([F(-2), F(0), F(1)])
    assert len(ivs) == 2
    (l1, h1), (l2, h2) = ivs
    assert h1 < 0 < l2  # signs are determined
    # each interval contains its root (sqrt(2) ~ 1.41421356)
    assert l1 < F(-1414214, 10 ** 6) < h1 or l1 < F(-1414213, 10 ** 6) < h1
    assert l2 < F(1414213, 10 ** 6) < h2 or l2 < F(1414214, 10 ** 6) < h2
    # no real roots
    assert isolate_real_roots([F(1), F(0), F(1)]) == []


def test_isolate_real_roots_with_zero_root():
    # x^3 - x : roots -1, 0, 1
    ivs = isolate_real_roots([F(0), F(-1), F(0), F(1)])
    assert len(ivs) == 3
    signs = []
    for lo, hi in ivs:
        if lo == hi == 0:
            signs.append(0)
        elif hi < 0:
            signs.append(-1)
        elif lo > 0:
            signs.append(1)
        else:
            signs.append(None)
    assert signs == [-1, 0, 1]


def test_isolate_real_roots_contains_rational_root():
    # (2x - 1)(x + 3) = 2x^2 + 5x - 3
    ivs = isolate_real_roots([F(-3), F(5), F(2)])
    assert len(ivs) == 2
    assert ivs[0][0] <= -3 <= ivs[0][1]
    assert ivs[1][0] <= F(1, 2) <= ivs[1][1]


def test_resource_limit(typical):
    ideal, _ = assemble_ideal(typical)
    with pytest.raises(ResourceLimit):
        buchberger(ideal, degree_cap=1)
    with pytest.raises(ResourceLimit):
        buchberger(ideal, basis_cap=1)


def test_assemble_ideal_vanishes_at_slope(typical):
    from slopechar.slope import grassmann
    tuples, _ = grassmann_variables(4, 2)
    ideal, norm = assemble_ideal(typical)
    g = grassmann(typical)
    norm_val = g[norm]
    scaled = [g[t] / norm_val for t in tuples]
    for p in ideal.generators:
        assert p.evaluate(scaled).is_zero()


def test_verdict_typical(typical):
    v = verdict(typical)
    assert v.status == "CharacterizedByCoincidences"
    assert v.r_bound is not None and v.r_bound >= 5
    from slopechar.slope import grassmann
    tuples, _ = grassmann_variables(4, 2)
    active = [i for i, t in enumerate(tuples) if t != v.normalization]
    assert is_zero_dimensional(list(v.groebner), len(v.names), active)
    # the basis vanishes at the slope's normalized coordinates
    g = grassmann(typical)
    scaled = [g[t] / g[v.normalization] for t in tuples]
    for p in v.groebner:
        assert p.evaluate(scaled).is_zero()


def test_verdict_ab(ab, ab_spec):
    v = verdict(ab, normalize_at=ab_spec.normalization)
    assert v.status == "NotCharacterized"
    assert v.witness["family"]
    pt = v.witness["comparison_point"]
    assert pt is not None
    assert pt["G13"] == F(3, 2)
    # the comparison point satisfies the whole basis
    tuples, names = grassmann_variables(4, 2)
    vals = [pt[nm] for nm in names]
    for p in v.groebner:
        assert p.evaluate(vals) == 0
    for p in v.witness["family"]:
        assert p.evaluate(vals) == 0

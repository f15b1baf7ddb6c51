"""Slope-spec files: `key = value` lines with JSON values, rationals as "p/q".

Keys: minpoly, root_interval, n, d, generators, and optionally offset,
normalization, seed.  Generators are per-column lists of entries, each entry
the ascending coefficient list of an element of Q(alpha).  `serialize` is the
canonical form; files written with it parse back byte-identically.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .numfield import NumberField
from .slope import Slope


class SpecError(Exception):
    pass


@dataclass
class SlopeSpec:
    minpoly: tuple
    root_interval: tuple
    n: int
    d: int
    generators: tuple  # d columns, each n entries, each a coeff tuple
    offset: object = None  # None | "integral-sum" | tuple of coeff tuples
    normalization: tuple | None = None  # Grassmann index tuple, e.g. (1, 2)
    seed: int = 0


def _rat(v) -> Fraction:
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, int):
        return Fraction(v)
    raise SpecError(f"expected integer or 'p/q' string, got {v!r}")


def _entry(v, k):
    if not isinstance(v, list):
        v = [v]
    coeffs = [_rat(c) for c in v]
    if len(coeffs) > k:
        raise SpecError(f"entry {v!r} has more than {k} coefficients")
    return tuple(coeffs + [Fraction(0)] * (k - len(coeffs)))


def parse_spec(text: str) -> SlopeSpec:
    raw = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise SpecError(f"line {lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        key = key.strip()
        try:
            raw[key] = json.loads(value.strip())
        except json.JSONDecodeError as exc:
            raise SpecError(f"line {lineno}: bad value for {key}: {exc}") from exc
    for key in ("minpoly", "root_interval", "n", "d", "generators"):
        if key not in raw:
            raise SpecError(f"missing key: {key}")
    minpoly = tuple(_rat(c) for c in raw["minpoly"])
    interval = tuple(_rat(c) for c in raw["root_interval"])
    if len(interval) != 2:
        raise SpecError("root_interval needs exactly two endpoints")
    n, d = raw["n"], raw["d"]
    if not (isinstance(n, int) and isinstance(d, int) and 0 < d < n):
        raise SpecError("need integers 0 < d < n")
    k = len(minpoly) - 1
    gens = raw["generators"]
    if not isinstance(gens, list) or len(gens) != d:
        raise SpecError(f"generators must list {d} vectors")
    columns = []
    for g in gens:
        if not isinstance(g, list) or len(g) != n:
            raise SpecError(f"each generator needs {n} entries")
        columns.append(tuple(_entry(e, k) for e in g))
    offset = raw.get("offset")
    if offset is not None and offset != "integral-sum":
        if not isinstance(offset, list) or len(offset) != n - d:
            raise SpecError(f"offset needs {n - d} entries or 'integral-sum'")
        offset = tuple(_entry(e, k) for e in offset)
    normalization = raw.get("normalization")
    if normalization is not None:
        if isinstance(normalization, str) and normalization.startswith("G"):
            normalization = tuple(int(c) for c in normalization[1:])
        else:
            raise SpecError("normalization must look like \"G12\"")
        if len(normalization) != d or len(set(normalization)) != d \
                or not all(1 <= i <= n for i in normalization):
            raise SpecError(f"normalization must name {d} distinct axes in 1..{n}")
    seed = raw.get("seed", 0)
    if not isinstance(seed, int):
        raise SpecError("seed must be an integer")
    return SlopeSpec(minpoly, interval, n, d, tuple(columns),
                     offset, normalization, seed)


def load_spec(path) -> SlopeSpec:
    with open(path) as fh:
        return parse_spec(fh.read())


def to_slope(spec: SlopeSpec) -> Slope:
    field = NumberField(list(spec.minpoly), spec.root_interval)
    gens = [[list(e) for e in col] for col in spec.generators]
    return Slope(field, spec.n, spec.d, gens)


def spec_offset(spec: SlopeSpec, slope: Slope):
    """Resolve the spec's offset to E'-coordinates (None if unspecified)."""
    if spec.offset is None:
        return None
    if spec.offset == "integral-sum":
        from .tiling import integral_sum_offset
        return integral_sum_offset(slope)
    return tuple(slope.field.elem(list(e)) for e in spec.offset)


def _rat_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _json_rat_list(vals):
    return "[" + ", ".join(json.dumps(_rat_str(v)) for v in vals) + "]"


def serialize(spec: SlopeSpec) -> str:
    lines = [
        f"minpoly = {_json_rat_list(spec.minpoly)}",
        f"root_interval = {_json_rat_list(spec.root_interval)}",
        f"n = {spec.n}",
        f"d = {spec.d}",
        "generators = [" + ", ".join(
            "[" + ", ".join(_json_rat_list(e) for e in col) + "]"
            for col in spec.generators) + "]",
    ]
    if spec.offset == "integral-sum":
        lines.append('offset = "integral-sum"')
    elif spec.offset is not None:
        lines.append("offset = [" + ", ".join(
            _json_rat_list(e) for e in spec.offset) + "]")
    if spec.normalization is not None:
        name = "G" + "".join(str(i) for i in spec.normalization)
        lines.append(f'normalization = "{name}"')
    if spec.seed:
        lines.append(f"seed = {spec.seed}")
    return "\n".join(lines) + "\n"

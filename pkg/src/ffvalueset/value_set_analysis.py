"""Lower bounds on the number of missed values and their exhaustive checks.

All bounds are exact ``Fraction`` values; comparisons never go through
floating point.
"""

from __future__ import annotations

import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import BudgetExceeded, ZeroDegree
from .finite_field import FieldSpec, subfield_degree, subfield_orders
from .multipoly import NEG_INFINITY, MultiPoly, degree_to_json, interpolate_dense, point_from_index
from .poly_map import DEFAULT_CAP, ImageResult, PolyMap, image, image_from_table, map_degree, output_indices
from .degree_relations import map_deg_over


def wan_bound(n: int, q: int, d: int) -> Fraction:
    """n(q-1)/d for a map of degree d on an n-dimensional space over GF(q)."""
    if d < 1:
        raise ZeroDegree("bound needs a map of degree >= 1")
    return Fraction(n * (q - 1), d)


def wan_original_bound(n: int, q: int, d: int) -> Fraction:
    """The older min{n(q-1)/d, q} form, kept for comparison only."""
    return min(wan_bound(n, q, d), Fraction(q))


def kosters_bound(n: int, h: int, q: int, deg_l) -> Fraction:
    """n*h*(q-1)/deg_l for a map on k^n with [k:l] = h and #l = q."""
    if deg_l is NEG_INFINITY or deg_l < 1:
        raise ZeroDegree("bound needs a non-constant map")
    return Fraction(n * h * (q - 1), deg_l)


@dataclass(frozen=True)
class BoundReport:
    field: str
    q: int
    h: int
    n: int
    deg: object
    deg_used: object
    bound: Fraction | None
    missed_count: int
    applicable: bool
    satisfied: bool | None

    @property
    def violation(self) -> bool:
        return self.applicable and not self.satisfied

    @property
    def slack(self) -> Fraction | None:
        return None if self.bound is None else self.missed_count - self.bound

    def to_json(self) -> dict:
        return {
            "field": self.field,
            "subfield": self.q,
            "n": self.n,
            "deg": degree_to_json(self.deg),
            "deg_l": degree_to_json(self.deg_used),
            "missed": self.missed_count,
            "bound_num": None if self.bound is None else self.bound.numerator,
            "bound_den": None if self.bound is None else self.bound.denominator,
            "applicable": self.applicable,
            "satisfied": self.satisfied,
        }


def _report(f: PolyMap, q: int, img: ImageResult) -> BoundReport:
    k = f.spec
    h = k.m // subfield_degree(k, q)
    d = map_deg_over(f, q)
    missed = img.missed_count
    if d is NEG_INFINITY or d < 1:
        bound, satisfied = None, None
    else:
        bound = kosters_bound(f.nvars, h, q, d)
        satisfied = missed * bound.denominator >= bound.numerator
    return BoundReport(
        field=k.text, q=q, h=h, n=f.nvars, deg=map_degree(f), deg_used=d, bound=bound,
        missed_count=missed, applicable=bound is not None and missed > 0, satisfied=satisfied,
    )


def verify_bound(f: PolyMap, q: int | None = None, cap: int = DEFAULT_CAP, jobs: int = 1,
                 img: ImageResult | None = None) -> BoundReport:
    """Check the lower bound for f: k^n -> k^n over the q-element subfield.

    q defaults to #k.  A precomputed image may be passed to avoid
    re-enumerating the domain.
    """
    if f.ncomponents != f.nvars:
        raise ValueError("bound checks need as many components as variables")
    if q is None:
        q = f.spec.order
    subfield_degree(f.spec, q)
    if img is None:
        img = image(f, cap=cap, jobs=jobs)
    return _report(f, q, img)


def best_subfield_bound(f: PolyMap, cap: int = DEFAULT_CAP, jobs: int = 1,
                        img: ImageResult | None = None) -> tuple[BoundReport, list[BoundReport]]:
    """Reports for every subfield and the one with the largest bound.

    Ties go to the smallest subfield.  Inapplicable reports (no bound) are
    only chosen when nothing else is available.
    """
    if img is None:
        img = image(f, cap=cap, jobs=jobs)
    reports = [verify_bound(f, q, img=img) for q in subfield_orders(f.spec)]
    best = reports[0]
    for r in reports[1:]:
        if r.bound is not None and (best.bound is None or r.bound > best.bound):
            best = r
    return best, reports


# -- truncated power series -----------------------------------------------------

def _series_product(spec: FieldSpec, values: Sequence[int], order: int) -> list[int]:
    """Coefficients 0..order-1 of prod_v (1 - v T)."""
    coeffs = [1] + [0] * (order - 1)
    for v in values:
        if v == 0:
            continue
        nv = spec.neg(v)
        for i in range(order - 1, 0, -1):
            if coeffs[i - 1]:
                coeffs[i] = spec.add(coeffs[i], spec.mul(nv, coeffs[i - 1]))
    return coeffs


def _series_mul(spec: FieldSpec, a: list[int], b: list[int], order: int) -> list[int]:
    out = [0] * order
    for i, x in enumerate(a[:order]):
        if x:
            for j in range(order - i):
                if b[j]:
                    out[i + j] = spec.add(out[i + j], spec.mul(x, b[j]))
    return out


@dataclass(frozen=True)
class SeriesCheck:
    q: int
    h: int
    deg_l: object
    truncation: int
    coefficients: tuple = field(default=())
    all_zero: bool = True

    def to_json(self) -> dict:
        return {
            "subfield": self.q,
            "h": self.h,
            "deg_l": degree_to_json(self.deg_l),
            "truncation": self.truncation,
            "coefficients": [str(c) for c in self.coefficients],
            "all_zero": self.all_zero,
        }


def _truncation(h: int, q: int, d: int) -> int:
    return -(-h * (q - 1) // d)


def _shifted(f: PolyMap) -> PolyMap:
    comp = f.components[0]
    c0 = comp.code_terms.get((0,), 0)
    return PolyMap([comp - MultiPoly.constant(f.spec, 1, c0)]) if c0 else f


def elementary_symmetric_series(f: PolyMap, q: int | None = None) -> SeriesCheck:
    """Coefficients a_i of prod_{a in k} (1 - f(a) T) for 1 <= i < ceil(h(q-1)/deg_l).

    f is first shifted so that f(0) = 0; every a_i in that range should be 0.
    """
    if f.nvars != 1 or f.ncomponents != 1:
        raise ValueError("series check is for maps k -> k")
    k = f.spec
    if q is None:
        q = k.order
    h = k.m // subfield_degree(k, q)
    g = _shifted(f)
    d = map_deg_over(g, q)
    if d is NEG_INFINITY or d < 1:
        raise ZeroDegree("series check needs a non-constant map")
    trunc = _truncation(h, q, d)
    values = [int(v) for v in output_indices(g)]
    coeffs = _series_product(k, values, trunc)
    tail = tuple(k.element(c) for c in coeffs[1:trunc])
    return SeriesCheck(q=q, h=h, deg_l=d, truncation=trunc, coefficients=tail,
                       all_zero=all(c == 0 for c in coeffs[1:trunc]))


def missed_series_identity(f: PolyMap, q: int | None = None) -> tuple[bool, list[int], list[int]]:
    """Compare prod_{a missed}(1 - aT) with prod_{b hit}(1 - bT)^(#f^-1(b) - 1) mod T^trunc.

    Returns (equal, lhs, rhs) with both sides as coefficient-code lists.
    """
    k = f.spec
    if q is None:
        q = k.order
    h = k.m // subfield_degree(k, q)
    d = map_deg_over(f, q)
    if d is NEG_INFINITY or d < 1:
        raise ZeroDegree("identity needs a non-constant map")
    trunc = _truncation(h, q, d)
    img = image(f)
    counts = img.counts
    lhs = _series_product(k, [a for a in range(k.order) if counts[a] == 0], trunc)
    rhs = [1] + [0] * (trunc - 1)
    for b in range(k.order):
        for _ in range(int(counts[b]) - 1):
            rhs = _series_mul(k, rhs, _series_product(k, [b], trunc), trunc)
    return lhs == rhs, lhs, rhs


# -- sweeps -----------------------------------------------------------------------

@dataclass
class SweepReport:
    field: str
    n: int
    mode: str
    maps: int = 0
    checked: int = 0
    applicable: int = 0
    violations: list = field(default_factory=list)
    slack: Counter = field(default_factory=Counter)
    rows: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "field": self.field,
            "n": self.n,
            "mode": self.mode,
            "maps": self.maps,
            "checked": self.checked,
            "applicable": self.applicable,
            "violations": self.violations,
            "slack": {str(k): v for k, v in sorted(self.slack.items())},
        }

    def summary(self) -> str:
        return f"{self.maps} maps, {len(self.violations)} violations"


def table_from_index(t: int, points: int, values: int) -> list[int]:
    """Value table number t: digit i (base ``values``) is the image of point i."""
    return list(point_from_index(t, values, points))


def map_from_table(spec: FieldSpec, n: int, outputs: Sequence[int]) -> PolyMap:
    """Interpolate a map k^n -> k^n given the codomain index of every point."""
    q = spec.order
    comps = []
    for j in range(n):
        coord = [(o // q ** j) % q for o in outputs]
        comps.append(interpolate_dense(coord, spec, n))
    return PolyMap(comps)


def random_reduced_map(spec: FieldSpec, n: int, rng: random.Random, max_terms: int = 6) -> PolyMap:
    comps = []
    q = spec.order
    for _ in range(n):
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            exps = tuple(rng.randrange(q) for _ in range(n))
            terms[exps] = rng.randrange(1, q)
        comps.append(MultiPoly.from_codes(spec, n, terms))
    return PolyMap(comps)


def _sweep_unit(args):
    spec, n, qs, index, outputs, f = args
    if f is None:
        f = map_from_table(spec, n, outputs)
        img = image_from_table(spec, n, n, outputs)
    else:
        img = image(f)
    return index, str(f), [verify_bound(f, q, img=img) for q in qs]


def exhaustive_bound_sweep(spec: FieldSpec, n: int = 1, mode: str = "all-functions", budget: int = 100_000,
                           seed: int = 0, subfield: int | None = None, jobs: int = 1,
                           keep_rows: bool = False) -> SweepReport:
    """Run the bound check over many maps k^n -> k^n.

    ``all-functions`` walks every value table (there are Q^n ** Q^n) and
    interpolates it; ``random-polys`` draws ``budget`` random reduced maps.
    Every subfield is checked unless ``subfield`` is given.
    """
    q_all = spec.order
    qs = [subfield] if subfield else subfield_orders(spec)
    for q in qs:
        subfield_degree(spec, q)
    points = q_all ** n
    report = SweepReport(field=spec.text, n=n, mode=mode)
    if mode == "all-functions":
        total = points ** points
        if total > budget:
            raise BudgetExceeded(f"{total} value tables exceed budget {budget}")
        units = ((spec, n, qs, t, table_from_index(t, points, points), None) for t in range(total))
    elif mode == "random-polys":
        rng = random.Random(seed)
        if points > DEFAULT_CAP:
            raise BudgetExceeded(f"{points} domain points per map exceed {DEFAULT_CAP}")
        units = ((spec, n, qs, t, None, random_reduced_map(spec, n, rng)) for t in range(budget))
    else:
        raise ValueError(f"unknown sweep mode {mode!r}")

    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sweep_unit, units, chunksize=64))
    else:
        results = [_sweep_unit(u) for u in units]

    for index, text, reports in sorted(results, key=lambda r: r[0]):
        report.maps += 1
        for r in reports:
            report.checked += 1
            if keep_rows:
                report.rows.append((index, text, r))
            if not r.applicable:
                continue
            report.applicable += 1
            report.slack[r.slack] += 1
            if r.violation:
                report.violations.append({"index": index, "map": text, **r.to_json()})
    return report

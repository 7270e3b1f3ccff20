"""Constructors for maps that meet the missed-value bound with equality."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainTooLarge, NoSuchExample
from .finite_field import FieldSpec, make_field, prime_power, subfield_embedding
from .multipoly import MultiPoly, point_index
from .poly_map import DEFAULT_CAP, ImageResult, PolyMap, image, map_deg_l, map_degree
from .value_set_analysis import BoundReport, map_from_table, verify_bound


@dataclass(frozen=True)
class ExampleArtifact:
    kind: str
    map: PolyMap
    claimed_missed: int
    claimed_degree: int
    verification: BoundReport | None
    image: ImageResult | None = None

    @property
    def verified(self) -> bool:
        return self.verification is not None

    @property
    def meets_claims(self) -> bool:
        v = self.verification
        return (v is not None and v.missed_count == self.claimed_missed
                and map_deg_l(self.map) == self.claimed_degree)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "field": self.map.spec.text,
            "components": [str(c) for c in self.map.components],
            "claimed_missed": self.claimed_missed,
            "claimed_degree": self.claimed_degree,
            "verified": self.verified,
            "report": None if self.verification is None else self.verification.to_json(),
        }


def _field_of_order(q: int) -> FieldSpec:
    p, d = prime_power(q)
    return make_field(p, d)


def norm_form(q: int, r: int) -> MultiPoly:
    """Norm from GF(q^r) to GF(q) of x_1 v_1 + ... + x_r v_r, as a form over GF(q).

    v_i = t^(i-1) is the power basis of the canonical modulus of GF(q^r).
    The product of the r Frobenius-conjugate linear forms is expanded over
    GF(q^r); its coefficients are then checked to lie in GF(q) and mapped
    back along the subfield embedding.
    """
    low = _field_of_order(q)
    big = make_field(low.p, low.m * r)
    t = big.p if big.m > 1 else 1
    basis = [big.pow(t, i) for i in range(r)]
    g = MultiPoly.constant(big, r, 1)
    for s in range(r):
        conj = {}
        for i, v in enumerate(basis):
            exps = [0] * r
            exps[i] = 1
            conj[tuple(exps)] = big.pow(v, q ** s)
        g = g * MultiPoly.from_codes(big, r, conj)
    emb = subfield_embedding(big, low)
    back = {c: i for i, c in enumerate(emb)}
    missing = [c for c in g.code_terms.values() if c not in back]
    if missing:
        raise AssertionError(f"norm form has coefficients outside GF({q}): {missing}")
    return g.map_coefficients(low, back.__getitem__)


def norm_example(q: int, n: int, cap: int = DEFAULT_CAP, jobs: int = 1) -> ExampleArtifact:
    """f = (x_1, ..., x_{n-1}, x_n * N(x_1 v_1 + ... + x_{n-1} v_{n-1})).

    Misses exactly {0}^(n-1) x l^*, i.e. q - 1 points, with deg f = n.
    Verification is skipped (left as None) when q^n exceeds ``cap``.
    """
    if n < 2:
        raise ValueError("the norm construction needs n >= 2")
    spec = _field_of_order(q)
    g = norm_form(q, n - 1)
    lifted = MultiPoly.from_codes(spec, n, {e + (1,): c for e, c in g.code_terms.items()})
    comps = [MultiPoly.variable(spec, n, i) for i in range(1, n)] + [lifted]
    f = PolyMap(comps)
    report, img = None, None
    if q ** n <= cap:
        img = image(f, cap=cap, jobs=jobs)
        report = verify_bound(f, q, img=img)
    return ExampleArtifact("norm", f, q - 1, n, report, img)


def one_missing_example(q: int, n: int, cap: int = DEFAULT_CAP) -> ExampleArtifact:
    """Map missing only the zero point: 0 goes to its successor (1, 0, ..., 0)."""
    spec = _field_of_order(q)
    points = q ** n
    if points > cap:
        raise DomainTooLarge(f"{points} points exceed cap {cap}")
    if points == 2:
        raise NoSuchExample("on GF(2) every map missing exactly one value is constant")
    outputs = list(range(points))
    outputs[0] = point_index((1,) + (0,) * (n - 1), q)
    f = map_from_table(spec, n, outputs)
    img = image(f, cap=cap)
    report = verify_bound(f, q, img=img)
    d = map_deg_l(f)
    if d != n * (q - 1):
        raise AssertionError(f"constructed map has degree {d}, expected {n * (q - 1)}")
    if map_degree(f) != d:
        raise AssertionError("interpolant is not reduced")
    return ExampleArtifact("one-missing", f, 1, n * (q - 1), report, img)

"""Digit sums and the relation between degrees over k and over a subfield.

Over k = GF(Q) with Q = q^h, a reduced monomial x_1^s_1 ... x_r^s_r has
degree s_q(s_1) + ... + s_q(s_r) once k is viewed as an h-dimensional space
over the q-element subfield.  ``deg_l_via_digits`` uses that rule;
``deg_l_oracle`` recomputes the same number by brute force (coordinates,
interpolation over the subfield) and shares no code path with it beyond the
field arithmetic.
"""

from __future__ import annotations

import itertools
from typing import Sequence

from .errors import DomainTooLarge, InvalidBase, NotReduced, ZeroPolynomial
from .finite_field import FieldElement, subfield_degree, vector_space_iso
from .multipoly import NEG_INFINITY, MultiPoly, interpolate_dense, max_degree, reduce, total_degree
from .poly_map import DEFAULT_CAP, PolyMap, evaluate_map_codes


def digits(n: int, base: int) -> list[int]:
    """Base-``base`` digits of n, least significant first; [] for 0."""
    if base < 2:
        raise InvalidBase(f"base must be >= 2, got {base}")
    if n < 0:
        raise ValueError("digit sums are defined for n >= 0")
    out = []
    while n:
        n, d = divmod(n, base)
        out.append(d)
    return out


def digit_sum(n: int, base: int) -> int:
    return sum(digits(n, base))


def check_digit_bound(q: int, h: int, m: int) -> bool:
    """(q^h - 1) | m implies s_q(m) >= h(q - 1)."""
    if m % (q ** h - 1):
        return True
    return digit_sum(m, q) >= h * (q - 1)


def deg_l_via_digits(f: MultiPoly, q: int):
    """Degree of f over the q-element subfield of its field, by digit sums.

    f must be nonzero and reduced over k (every exponent below #k).
    """
    subfield_degree(f.spec, q)
    if f.is_zero():
        raise ZeroPolynomial("digit-sum degree needs a nonzero polynomial")
    big = f.spec.order
    for exps in f.code_terms:
        if any(e >= big for e in exps):
            raise NotReduced(f"exponent vector {exps} has an entry >= {big}")
    return max(sum(digit_sum(e, q) for e in exps) for exps in f.code_terms)


def poly_deg_over(f: MultiPoly, q: int):
    """deg over the q-subfield of the function induced by any polynomial f."""
    r = reduce(f)
    return NEG_INFINITY if r.is_zero() else deg_l_via_digits(r, q)


def map_deg_over(f: PolyMap, q: int):
    return max_degree(poly_deg_over(c, q) for c in f.components)


def coordinate_tables(f: PolyMap, q: int, basis: Sequence[FieldElement] | None = None, cap: int = DEFAULT_CAP):
    """Subfield-valued coordinate functions of f on the subfield space l^(n h).

    Returns (restriction, tables): one dense value table per output
    coordinate, indexed like points of ``restriction.subfield`` in n*h
    variables.  Variable x_{(i-1)h + j + 1} is coordinate j of input x_i.
    """
    res = vector_space_iso(f.spec, q, basis)
    h, n = res.h, f.nvars
    nv = n * h
    if q ** nv > cap:
        raise DomainTooLarge(f"{q ** nv} points exceed cap {cap}")
    tables: list[list[int]] = [[] for _ in range(f.ncomponents * h)]
    for lpoint in itertools.product(range(q), repeat=nv):
        # product() varies the last slot fastest; reverse to match point order
        lpoint = lpoint[::-1]
        kpoint = [res.from_coords(lpoint[i * h:(i + 1) * h]) for i in range(n)]
        for j, y in enumerate(evaluate_map_codes(f, kpoint)):
            for s, c in enumerate(res.coords(y)):
                tables[j * h + s].append(c)
    return res, tables


def deg_l_oracle(f: PolyMap | MultiPoly, q: int, basis: Sequence[FieldElement] | None = None,
                 cap: int = DEFAULT_CAP):
    """deg over the q-subfield by restriction of scalars and interpolation."""
    if isinstance(f, MultiPoly):
        f = PolyMap([f])
    res, tables = coordinate_tables(f, q, basis, cap)
    nv = f.nvars * res.h
    return max_degree(total_degree(interpolate_dense(t, res.subfield, nv)) for t in tables)

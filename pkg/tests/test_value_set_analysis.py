import json
import random
from fractions import Fraction

import pytest

from ffvalueset.errors import BudgetExceeded, InvalidSubfieldOrder, ZeroDegree
from ffvalueset.finite_field import make_field, subfield_orders
from ffvalueset.multipoly import interpolate_dense
from ffvalueset.poly_map import PolyMap, identity_map, image, is_constant, map_deg_l, parse_map
from ffvalueset.value_set_analysis import (
    best_subfield_bound,
    elementary_symmetric_series,
    exhaustive_bound_sweep,
    kosters_bound,
    map_from_table,
    missed_series_identity,
    table_from_index,
    verify_bound,
    wan_bound,
    wan_original_bound,
)


def naive_series(spec, values, order):
    """prod (1 - v T) mod T^order by repeated polynomial multiplication."""
    coeffs = [1] + [0] * (order - 1)
    for v in values:
        nv = spec.neg(v)
        nxt = coeffs[:]
        for i in range(1, order):
            nxt[i] = spec.add(coeffs[i], spec.mul(nv, coeffs[i - 1]))
        coeffs = nxt
    return coeffs


def test_wan_bound_examples():
    assert wan_bound(2, 3, 2) == 2
    for q in (2, 3, 5, 7):
        assert wan_bound(1, q, q - 1) == 1
    assert wan_bound(3, 4, 2) == Fraction(9, 2)
    with pytest.raises(ZeroDegree):
        wan_bound(1, 3, 0)


def test_wan_original_is_min_form():
    assert wan_original_bound(3, 4, 1) == 4
    assert wan_original_bound(3, 4, 2) == 4
    assert wan_original_bound(2, 4, 3) == 2
    assert wan_original_bound(1, 5, 2) == 2


def test_subfield_bound_examples():
    for q in (2, 3, 4, 5):
        for d in range(1, 6):
            assert kosters_bound(1, 1, q, d) == wan_bound(1, q, d)
            assert kosters_bound(3, 1, q, d) == wan_bound(3, q, d)
    assert kosters_bound(1, 2, 2, 2) == 1
    assert kosters_bound(1, 2, 2, 3) == Fraction(2, 3)
    with pytest.raises(ZeroDegree):
        kosters_bound(1, 1, 3, 0)


def test_verify_bound_examples():
    k3 = make_field(3)
    r = verify_bound(identity_map(k3, 2))
    # surjective: the literal comparison 0 >= 4 fails, but nothing is violated
    assert not r.applicable and r.satisfied is False and not r.violation
    r = verify_bound(parse_map(["x1", "x1*x2"], k3))
    assert (r.missed_count, r.bound, r.applicable, r.satisfied) == (2, 2, True, True)
    assert r.slack == 0
    r = verify_bound(parse_map(["x1^2"], make_field(5)))
    assert (r.missed_count, r.bound, r.satisfied) == (2, 2, True)


def test_verify_bound_constant_map():
    r = verify_bound(parse_map(["2"], make_field(3), 1))
    assert r.bound is None and r.satisfied is None
    assert not r.applicable and not r.violation


def test_verify_bound_errors():
    k = make_field(2, 2)
    with pytest.raises(InvalidSubfieldOrder):
        verify_bound(identity_map(k, 1), 8)
    with pytest.raises(ValueError):
        verify_bound(parse_map(["x1"], k, 2))


def test_report_json_shape():
    r = verify_bound(parse_map(["x1", "x1*x2"], make_field(3)))
    j = r.to_json()
    assert list(j) == ["field", "subfield", "n", "deg", "deg_l", "missed", "bound_num", "bound_den",
                       "applicable", "satisfied"]
    assert j["bound_num"] == 2 and j["bound_den"] == 1
    json.dumps(j)


def test_best_subfield_gf4_cube():
    k = make_field(2, 2)
    best, reports = best_subfield_bound(parse_map(["x1^3"], k))
    assert [r.q for r in reports] == [2, 4]
    assert [r.deg_used for r in reports] == [2, 3]
    assert [r.bound for r in reports] == [1, 1]
    assert best.q == 2  # tie goes to the smaller subfield


def test_best_subfield_prime_field_single_report():
    best, reports = best_subfield_bound(parse_map(["x1^2"], make_field(7)))
    assert len(reports) == 1 and best is reports[0]


def test_best_subfield_is_max():
    rng = random.Random(3)
    k = make_field(2, 4)
    for _ in range(30):
        outputs = [rng.randrange(k.order) for _ in range(k.order)]
        f = map_from_table(k, 1, outputs)
        best, reports = best_subfield_bound(f)
        bounds = [r.bound for r in reports if r.bound is not None]
        if bounds:
            assert best.bound == max(bounds)
        for r in reports:
            assert not r.violation


def test_series_examples():
    c = elementary_symmetric_series(parse_map(["x1"], make_field(7)))
    assert c.truncation == 6 and len(c.coefficients) == 5 and c.all_zero
    c = elementary_symmetric_series(parse_map(["x1^2"], make_field(5)))
    assert c.truncation == 2 and [a.code for a in c.coefficients] == [0] and c.all_zero
    c = elementary_symmetric_series(parse_map(["x1^3"], make_field(2, 2)), 2)
    assert (c.h, c.deg_l, c.truncation, c.coefficients, c.all_zero) == (2, 2, 1, (), True)


def test_series_shift_and_errors():
    k = make_field(5)
    a = elementary_symmetric_series(parse_map(["x1^2"], k))
    b = elementary_symmetric_series(parse_map(["x1^2 + 3"], k))
    assert a == b
    with pytest.raises(ZeroDegree):
        elementary_symmetric_series(parse_map(["4"], k, 1))
    with pytest.raises(ValueError):
        elementary_symmetric_series(parse_map(["x1", "x2"], k))


def test_series_matches_naive_product():
    rng = random.Random(9)
    for p, m in [(2, 3), (3, 2), (7, 1)]:
        k = make_field(p, m)
        for _ in range(20):
            outputs = [0] + [rng.randrange(k.order) for _ in range(k.order - 1)]
            f = PolyMap([interpolate_dense(outputs, k, 1)])
            if is_constant(f):
                continue
            for q in subfield_orders(k):
                c = elementary_symmetric_series(f, q)
                ref = naive_series(k, outputs, c.truncation)
                assert [x.code for x in c.coefficients] == ref[1:]


@pytest.mark.parametrize("p,m", [(2, 1), (3, 1), (2, 2)])
def test_series_vanishing_exhaustive(p, m):
    k = make_field(p, m)
    Q = k.order
    for t in range(Q ** (Q - 1)):
        f = map_from_table(k, 1, [0] + table_from_index(t, Q - 1, Q))
        if is_constant(f):
            continue
        for q in subfield_orders(k):
            assert elementary_symmetric_series(f, q).all_zero


@pytest.mark.parametrize("p,m", [(2, 3), (3, 2)])
def test_series_vanishing_random(p, m):
    k = make_field(p, m)
    rng = random.Random(p * m)
    done = 0
    while done < 500:
        outputs = [0] + [rng.randrange(k.order) for _ in range(k.order - 1)]
        f = PolyMap([interpolate_dense(outputs, k, 1)])
        if is_constant(f):
            continue
        done += 1
        for q in subfield_orders(k):
            assert elementary_symmetric_series(f, q).all_zero


@pytest.mark.parametrize("p,m", [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3)])
def test_missed_series_identity(p, m):
    k = make_field(p, m)
    rng = random.Random(p + m)
    tested = 0
    for _ in range(120):
        f = map_from_table(k, 1, [rng.randrange(k.order) for _ in range(k.order)])
        if is_constant(f):
            continue
        for q in subfield_orders(k):
            ok, lhs, rhs = missed_series_identity(f, q)
            assert ok, (str(f), q, lhs, rhs)
            tested += 1
    assert tested > 0


def test_sweep_examples():
    sw = exhaustive_bound_sweep(make_field(2))
    assert sw.maps == 4 and sw.violations == []
    assert sw.summary() == "4 maps, 0 violations"
    sw = exhaustive_bound_sweep(make_field(3))
    assert sw.summary() == "27 maps, 0 violations"
    sw = exhaustive_bound_sweep(make_field(2, 2))
    assert sw.maps == 256 and sw.checked == 512 and sw.violations == []


def test_gf3_maps_missing_one_value_have_degree_two():
    k = make_field(3)
    found = 0
    for t in range(27):
        outputs = table_from_index(t, 3, 3)
        if len(set(outputs)) == 2:
            f = map_from_table(k, 1, outputs)
            assert map_deg_l(f) == 2
            assert image(f).missed_count == 1
            found += 1
    assert found == 18


def test_sweep_random_mode_and_parallel():
    k = make_field(5)
    a = exhaustive_bound_sweep(k, 2, "random-polys", budget=60, seed=4)
    b = exhaustive_bound_sweep(k, 2, "random-polys", budget=60, seed=4, jobs=2)
    assert a.to_json() == b.to_json()
    assert a.maps == 60 and a.violations == []
    c = exhaustive_bound_sweep(make_field(2, 2), 1, jobs=2, keep_rows=True)
    assert c.to_json() == exhaustive_bound_sweep(make_field(2, 2), 1).to_json()
    assert [row[0] for row in c.rows] == sorted(row[0] for row in c.rows)


def test_sweep_budget_and_mode():
    with pytest.raises(BudgetExceeded):
        exhaustive_bound_sweep(make_field(5), 1, budget=1000)
    with pytest.raises(ValueError):
        exhaustive_bound_sweep(make_field(2), 1, mode="bogus")


def test_sweep_subfield_only():
    sw = exhaustive_bound_sweep(make_field(2, 2), 1, subfield=2)
    assert sw.checked == 256


def test_table_round_trip():
    k = make_field(3)
    for t in range(27):
        outputs = table_from_index(t, 3, 3)
        f = map_from_table(k, 1, outputs)
        assert list(image(f).counts) == [outputs.count(v) for v in range(3)]

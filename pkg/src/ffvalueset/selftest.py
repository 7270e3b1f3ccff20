"""Exhaustive small-field checks behind the ``selftest`` command."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

import numpy as np

from .degree_relations import check_digit_bound, deg_l_oracle, deg_l_via_digits, digit_sum
from .example_gen import norm_example, one_missing_example
from .finite_field import make_field, norm, subfield_elements, subfield_orders
from .multipoly import MultiPoly, interpolate_dense, reduce, value_table
from .poly_map import PolyMap, is_constant
from .value_set_analysis import (
    elementary_symmetric_series,
    exhaustive_bound_sweep,
    map_from_table,
    table_from_index,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    cases: int
    failures: int
    seconds: float

    def to_json(self, timing: bool = False) -> dict:
        out = {"name": self.name, "passed": self.passed, "cases": self.cases, "failures": self.failures}
        if timing:
            out["seconds"] = round(self.seconds, 3)
        return out


def _sweep_check(fields):
    cases = fails = 0
    for p, m in fields:
        rep = exhaustive_bound_sweep(make_field(p, m), 1)
        cases += rep.checked
        fails += len(rep.violations)
    return cases, fails


def check_wan_exhaustive():
    return _sweep_check([(2, 1), (3, 1), (2, 2)])


def check_subfield_bound_gf4():
    rep = exhaustive_bound_sweep(make_field(2, 2), 1)
    return rep.checked, len(rep.violations) + (rep.checked != 512)


def check_norm_examples():
    cases = fails = 0
    for q, n in [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2), (5, 2)]:
        a = norm_example(q, n)
        cases += 1
        v = a.verification
        ok = a.meets_claims and v.missed_count * n == n * (q - 1) and v.bound == v.missed_count
        fails += not ok
    return cases, fails


def check_one_missing_examples():
    cases = fails = 0
    for q, n in [(3, 1), (4, 1), (5, 1), (2, 2), (3, 2)]:
        a = one_missing_example(q, n)
        cases += 1
        fails += not (a.meets_claims and a.verification.missed_count == 1)
    return cases, fails


def check_digit_degree_formula(seed: int = 0):
    cases = fails = 0
    for p, h in [(2, 2), (2, 3), (3, 2)]:
        k = make_field(p, h)
        for s in range(k.order):
            f = MultiPoly.from_codes(k, 1, {(s,): 1})
            cases += 1
            fails += deg_l_via_digits(f, p) != deg_l_oracle(f, p)
    rng = random.Random(seed)
    k = make_field(2, 2)
    for _ in range(200):
        r = rng.randint(1, 2)
        terms = {tuple(rng.randrange(4) for _ in range(r)): rng.randrange(1, 4) for _ in range(rng.randint(1, 5))}
        f = MultiPoly.from_codes(k, r, terms)
        cases += 1
        fails += deg_l_via_digits(f, 2) != deg_l_oracle(f, 2)
    return cases, fails


def _series_ok(f):
    return all(elementary_symmetric_series(f, q).all_zero for q in subfield_orders(f.spec))


def check_series_vanishing(seed: int = 0):
    cases = fails = 0
    for p, m in [(2, 1), (3, 1), (2, 2)]:
        k = make_field(p, m)
        Q = k.order
        for t in range(Q ** (Q - 1)):
            outputs = [0] + table_from_index(t, Q - 1, Q)
            f = map_from_table(k, 1, outputs)
            if is_constant(f):
                continue
            cases += 1
            fails += not _series_ok(f)
    rng = random.Random(seed)
    for p, m in [(2, 3), (3, 2)]:
        k = make_field(p, m)
        Q = k.order
        done = 0
        while done < 500:
            outputs = [0] + [rng.randrange(Q) for _ in range(Q - 1)]
            f = PolyMap([interpolate_dense(outputs, k, 1)])
            if is_constant(f):
                continue
            done += 1
            cases += 1
            fails += not _series_ok(f)
    return cases, fails


def check_digit_bound_lemma(limit: int = 10 ** 5):
    cases = fails = 0
    for q in (2, 3):
        for h in (1, 2, 3):
            step = q ** h - 1
            for m in range(step, limit + 1, step):
                cases += 1
                fails += not check_digit_bound(q, h, m)
    return cases, fails


def check_interpolation_roundtrip(seed: int = 0):
    cases = fails = 0
    k = make_field(2)
    for t in range(16):
        values = table_from_index(t, 4, 2)
        f = interpolate_dense(values, k, 2)
        cases += 1
        fails += value_table(f) != values or interpolate_dense(value_table(f), k, 2) != f
    rng = random.Random(seed)
    for p, n in [(2, 1), (3, 1), (3, 2)]:
        k = make_field(p)
        for _ in range(500 // 3 + 1):
            values = [rng.randrange(p) for _ in range(p ** n)]
            f = interpolate_dense(values, k, n)
            g = MultiPoly.from_codes(k, n, {tuple(rng.randrange(p) for _ in range(n)): rng.randrange(1, p)
                                            for _ in range(rng.randint(1, 4))})
            cases += 1
            fails += value_table(f) != values or interpolate_dense(value_table(g), k, n) != reduce(g)
    return cases, fails


def check_digit_subadditivity(limit: int = 2000):
    cases = fails = 0
    for base in (2, 3, 5):
        s = np.array([digit_sum(i, base) for i in range(2 * limit + 1)])
        idx = np.arange(limit + 1)
        lhs = s[idx[:, None] + idx[None, :]]
        rhs = s[idx][:, None] + s[idx][None, :]
        cases += lhs.size
        fails += int(np.count_nonzero(lhs > rhs))
    return cases, fails


def check_field_axioms():
    cases = fails = 0
    for p, m in [(2, 1), (2, 2), (3, 1), (2, 3), (3, 2), (2, 4), (5, 1), (7, 1)]:
        k = make_field(p, m)
        Q = k.order
        for a in range(Q):
            if a and k.mul(a, k.inv(a)) != 1:
                fails += 1
            for b in range(Q):
                cases += 1
                if k.mul(a, b) != k.mul_slow(a, b) or k.add(a, b) != k.add(b, a):
                    fails += 1
        for q in subfield_orders(k):
            sub = subfield_elements(k, q)
            fails += len(sub) != q
            for x in k.elements():
                fails += bool(x) and norm(k, q, x).code == 0
    return cases, fails


CHECKS = [
    ("field-axioms", check_field_axioms),
    ("wan-bound-exhaustive", check_wan_exhaustive),
    ("subfield-bound-gf4", check_subfield_bound_gf4),
    ("norm-examples", check_norm_examples),
    ("one-missing-examples", check_one_missing_examples),
    ("digit-degree-formula", check_digit_degree_formula),
    ("series-vanishing", check_series_vanishing),
    ("digit-bound-lemma", check_digit_bound_lemma),
    ("interpolation-roundtrip", check_interpolation_roundtrip),
    ("digit-subadditivity", check_digit_subadditivity),
]


def run_selftest(names=None) -> list[CheckResult]:
    out = []
    for name, fn in CHECKS:
        if names and name not in names:
            continue
        t0 = time.perf_counter()
        try:
            cases, fails = fn()
        except Exception:  # a crashing check is a failed check
            cases, fails = 0, 1
        out.append(CheckResult(name, fails == 0, cases, int(fails), time.perf_counter() - t0))
    return out

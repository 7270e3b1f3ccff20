"""Polynomial maps spec^n -> spec^m and their exhaustively computed images."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ArityMismatch, DomainTooLarge, MixedFields
from .finite_field import FieldElement, FieldSpec, exp_log_tables
from .multipoly import (
    MultiPoly,
    NEG_INFINITY,
    deg_l,
    evaluate_codes,
    max_degree,
    parse_poly,
    point_from_index,
    reduce,
    total_degree,
)

DEFAULT_CAP = 1 << 24
CHUNK = 1 << 18


class PolyMap:
    """f = (f_1, ..., f_m) with every f_j a MultiPoly in the same n variables."""

    __slots__ = ("spec", "nvars", "components")

    def __init__(self, components: Sequence[MultiPoly]):
        comps = tuple(components)
        if not comps:
            raise ValueError("a map needs at least one component")
        spec, nvars = comps[0].spec, comps[0].nvars
        for c in comps[1:]:
            if c.spec != spec:
                raise MixedFields(f"{c.spec} vs {spec}")
            if c.nvars != nvars:
                raise ArityMismatch(f"components in {c.nvars} and {nvars} variables")
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "components", comps)

    def __setattr__(self, name, value):
        raise AttributeError("PolyMap is immutable")

    def __reduce__(self):
        return (PolyMap, (self.components,))

    @property
    def ncomponents(self) -> int:
        return len(self.components)

    def __eq__(self, other):
        return isinstance(other, PolyMap) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.components) + ")"

    def __repr__(self):
        return f"PolyMap({self.spec.text}, {[str(c) for c in self.components]})"


def parse_map(texts: Sequence[str], spec: FieldSpec, nvars: int | None = None) -> PolyMap:
    """Parse one polynomial per component; by default nvars = number of components."""
    n = len(texts) if nvars is None else nvars
    return PolyMap([parse_poly(t, spec, n) for t in texts])


def identity_map(spec: FieldSpec, n: int) -> PolyMap:
    return PolyMap([MultiPoly.variable(spec, n, i) for i in range(1, n + 1)])


def evaluate_map_codes(f: PolyMap, point: Sequence[int]) -> tuple[int, ...]:
    return tuple(evaluate_codes(c, point) for c in f.components)


def evaluate_map(f: PolyMap, point: Sequence[FieldElement]) -> tuple[FieldElement, ...]:
    if len(point) != f.nvars:
        raise ArityMismatch(f"expected {f.nvars} coordinates, got {len(point)}")
    for x in point:
        if x.spec != f.spec:
            raise MixedFields(f"{x.spec} vs {f.spec}")
    codes = [x.code for x in point]
    return tuple(FieldElement(f.spec, v) for v in evaluate_map_codes(f, codes))


def map_degree(f: PolyMap):
    return max_degree(total_degree(c) for c in f.components)


def map_deg_l(f: PolyMap):
    return max_degree(deg_l(c) for c in f.components)


def reduce_map(f: PolyMap) -> PolyMap:
    return PolyMap([reduce(c) for c in f.components])


def is_constant(f: PolyMap) -> bool:
    """True iff the induced function is constant (decided on reduced forms)."""
    return map_deg_l(f) <= 0


# -- image enumeration --------------------------------------------------------

@dataclass(frozen=True)
class ImageResult:
    """Fiber sizes of f over every point of the codomain spec^m.

    ``counts[i]`` is the number of preimages of the codomain point with
    index i; points are tuples of element codes.
    """

    spec: FieldSpec
    n_in: int
    n_out: int
    counts: np.ndarray

    @property
    def domain_size(self) -> int:
        return self.spec.order ** self.n_in

    def _points(self, indices) -> list[tuple[int, ...]]:
        q = self.spec.order
        return [point_from_index(int(i), q, self.n_out) for i in indices]

    @property
    def image(self) -> list[tuple[int, ...]]:
        return self._points(np.flatnonzero(self.counts))

    @property
    def missed(self) -> list[tuple[int, ...]]:
        return self._points(np.flatnonzero(self.counts == 0))

    @property
    def fibers(self) -> dict[tuple[int, ...], int]:
        nz = np.flatnonzero(self.counts)
        return dict(zip(self._points(nz), (int(c) for c in self.counts[nz])))

    @property
    def image_size(self) -> int:
        return int(np.count_nonzero(self.counts))

    @property
    def missed_count(self) -> int:
        return int(self.counts.size - np.count_nonzero(self.counts))

    @property
    def is_surjective(self) -> bool:
        return self.missed_count == 0

    def format_point(self, point: Sequence[int]) -> tuple[str, ...]:
        return tuple(self.spec.format_code(c) for c in point)


def _vadd(spec: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    p = spec.p
    if p == 2:
        return a ^ b
    if spec.m == 1:
        return (a + b) % p
    out = np.zeros_like(a)
    pw = 1
    for _ in range(spec.m):
        out += (((a // pw) % p + (b // pw) % p) % p) * pw
        pw *= p
    return out


def _eval_block(spec: FieldSpec, nvars: int, comps: list[dict], start: int, stop: int) -> np.ndarray:
    """Codomain point indices of f at domain points start..stop-1."""
    q = spec.order
    exp_t, log_t = (np.asarray(t, dtype=np.int64) for t in exp_log_tables(spec))
    order1 = q - 1
    idx = np.arange(start, stop, dtype=np.int64)
    logs, zeros = [], []
    for i in range(nvars):
        x = (idx // q ** i) % q
        logs.append(log_t[x])
        zeros.append(x == 0)
    out = np.zeros(stop - start, dtype=np.int64)
    for j, terms in enumerate(comps):
        val = np.zeros(stop - start, dtype=np.int64)
        for exps, c in terms.items():
            lg = np.full(stop - start, log_t[c], dtype=np.int64)
            mask = np.zeros(stop - start, dtype=bool)
            for i, e in enumerate(exps):
                if e:
                    lg += e * logs[i]
                    mask |= zeros[i]
            tv = exp_t[lg % order1] if order1 > 1 else np.ones_like(lg)
            tv[mask] = 0
            val = _vadd(spec, val, tv)
        out += val * q ** j
    return out


def _scalar_block(f: PolyMap, start: int, stop: int) -> np.ndarray:
    q = f.spec.order
    out = np.empty(stop - start, dtype=np.int64)
    for k, i in enumerate(range(start, stop)):
        y = evaluate_map_codes(f, point_from_index(i, q, f.nvars))
        acc = 0
        for c in reversed(y):
            acc = acc * q + c
        out[k] = acc
    return out


def _count_block(args) -> np.ndarray:
    f, start, stop, size = args
    spec = f.spec
    if exp_log_tables(spec) is None:
        idx = _scalar_block(f, start, stop)
    else:
        comps = [c.code_terms for c in f.components]
        idx = _eval_block(spec, f.nvars, comps, start, stop)
    return np.bincount(idx, minlength=size)


def output_indices(f: PolyMap, start: int = 0, stop: int | None = None) -> np.ndarray:
    """Codomain index of f(x) for every domain index x in [start, stop)."""
    f = reduce_map(f)
    if stop is None:
        stop = f.spec.order ** f.nvars
    if exp_log_tables(f.spec) is None:
        return _scalar_block(f, start, stop)
    return _eval_block(f.spec, f.nvars, [c.code_terms for c in f.components], start, stop)


def image(f: PolyMap, cap: int = DEFAULT_CAP, jobs: int = 1) -> ImageResult:
    """Exhaustive image of f with exact fiber counts.

    The domain is split into fixed chunks; with ``jobs > 1`` they are
    evaluated in worker processes.  Partial counts are summed in chunk order.
    """
    q = f.spec.order
    n_dom = q ** f.nvars
    n_cod = q ** f.ncomponents
    if n_dom > cap or n_cod > cap:
        raise DomainTooLarge(f"{n_dom} domain / {n_cod} codomain points exceed cap {cap}")
    f = reduce_map(f)
    tasks = [(f, s, min(s + CHUNK, n_dom), n_cod) for s in range(0, n_dom, CHUNK)]
    counts = np.zeros(n_cod, dtype=np.int64)
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_count_block, tasks):
                counts += part
    else:
        for t in tasks:
            counts += _count_block(t)
    return ImageResult(f.spec, f.nvars, f.ncomponents, counts)


def image_from_table(spec: FieldSpec, n_in: int, n_out: int, outputs: Sequence[int]) -> ImageResult:
    """ImageResult for a map given by codomain indices of every domain point."""
    counts = np.bincount(np.asarray(outputs, dtype=np.int64), minlength=spec.order ** n_out)
    return ImageResult(spec, n_in, n_out, counts)


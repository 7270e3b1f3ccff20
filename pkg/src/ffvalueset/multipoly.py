"""Sparse multivariate polynomials over a FieldSpec.

Points of ``spec^n`` are tuples of element codes.  The canonical point order
is the little-endian odometer on coordinates (``x1`` varies fastest), so the
point ``(c_1, ..., c_n)`` has index ``c_1 + c_2 Q + ... + c_n Q^(n-1)`` with
``Q = spec.order``.
"""

from __future__ import annotations

import math
import re
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    ArityMismatch,
    IncompleteTable,
    MixedFields,
    PolynomialSyntaxError,
    VariableOutOfRange,
)
from .finite_field import FieldElement, FieldSpec


class _NegInfinity:
    """Degree of the zero polynomial; compares below every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __reduce__(self):
        return (_NegInfinity, ())

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("-inf")

    def __repr__(self):
        return "NEG_INFINITY"

    def __str__(self):
        return "-inf"


NEG_INFINITY = _NegInfinity()
Degree = "int | _NegInfinity"


def degree_to_json(d):
    return "-inf" if d is NEG_INFINITY else d


def _grlex_key(exps: tuple[int, ...]):
    return (sum(exps), exps)


class MultiPoly:
    """Polynomial in ``x1 .. xn`` with coefficients in ``spec``.

    ``terms`` maps exponent vectors to nonzero coefficients; the zero
    polynomial has no terms.  Instances are immutable.
    """

    __slots__ = ("spec", "nvars", "_terms")

    def __init__(self, spec: FieldSpec, nvars: int, terms: Mapping[tuple[int, ...], FieldElement] | None = None):
        if nvars < 1:
            raise ValueError("nvars must be >= 1")
        codes: dict[tuple[int, ...], int] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for {nvars} variables")
            if isinstance(c, FieldElement):
                if c.spec != spec:
                    raise MixedFields(f"{c.spec} vs {spec}")
                code = c.code
            else:
                code = int(c) % spec.p
            code = spec.add(codes.get(exps, 0), code)
            if code:
                codes[exps] = code
            else:
                codes.pop(exps, None)
        self._init(spec, nvars, codes)

    def _init(self, spec, nvars, codes):
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "_terms", codes)

    @classmethod
    def from_codes(cls, spec: FieldSpec, nvars: int, codes: Mapping[tuple[int, ...], int]) -> MultiPoly:
        """Trusted constructor: codes already reduced, exponent vectors valid."""
        self = object.__new__(cls)
        self._init(spec, nvars, {e: c for e, c in codes.items() if c})
        return self

    @classmethod
    def zero(cls, spec: FieldSpec, nvars: int) -> MultiPoly:
        return cls.from_codes(spec, nvars, {})

    @classmethod
    def constant(cls, spec: FieldSpec, nvars: int, value: FieldElement | int) -> MultiPoly:
        code = value.code if isinstance(value, FieldElement) else int(value) % spec.p
        return cls.from_codes(spec, nvars, {(0,) * nvars: code})

    @classmethod
    def variable(cls, spec: FieldSpec, nvars: int, index: int) -> MultiPoly:
        """The variable x<index>, 1-based."""
        if not 1 <= index <= nvars:
            raise VariableOutOfRange(f"x{index} with {nvars} variables")
        exps = [0] * nvars
        exps[index - 1] = 1
        return cls.from_codes(spec, nvars, {tuple(exps): 1})

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    def __reduce__(self):
        return (MultiPoly.from_codes, (self.spec, self.nvars, self._terms))

    # -- views

    @property
    def code_terms(self) -> dict[tuple[int, ...], int]:
        return dict(self._terms)

    @property
    def terms(self) -> dict[tuple[int, ...], FieldElement]:
        return {e: FieldElement(self.spec, self._terms[e]) for e in self.sorted_exponents()}

    def sorted_exponents(self) -> list[tuple[int, ...]]:
        """Exponent vectors in descending graded lexicographic order."""
        return sorted(self._terms, key=_grlex_key, reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.spec == other.spec and self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        return hash((self.spec, self.nvars, frozenset(self._terms.items())))

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"MultiPoly({self.spec.text}, {self.nvars}, {format_poly(self)!r})"

    # -- ring operations

    def _check(self, other: MultiPoly):
        if other.spec != self.spec:
            raise MixedFields(f"{self.spec} vs {other.spec}")
        if other.nvars != self.nvars:
            raise ArityMismatch(f"{self.nvars} vs {other.nvars} variables")

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        if isinstance(other, (int, FieldElement)):
            return MultiPoly.constant(self.spec, self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        add = self.spec.add
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = add(out.get(e, 0), c)
        return MultiPoly.from_codes(self.spec, self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        neg = self.spec.neg
        return MultiPoly.from_codes(self.spec, self.nvars, {e: neg(c) for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        spec = self.spec
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = spec.add(out.get(e, 0), spec.mul(c1, c2))
        return MultiPoly.from_codes(spec, self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.constant(self.spec, self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def map_coefficients(self, spec: FieldSpec, fn) -> MultiPoly:
        """Apply ``fn`` (code -> code in ``spec``) to every coefficient."""
        return MultiPoly.from_codes(spec, self.nvars, {e: fn(c) for e, c in self._terms.items()})


# -- parsing and formatting ---------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<var>x(?P<idx>\d+))|(?P<num>\d+)|(?P<op>[-+*^]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while text[pos:].strip():
        mt = _TOKEN.match(text, pos)
        if not mt:
            start = len(text) - len(text[pos:].lstrip())
            raise PolynomialSyntaxError(f"unexpected character {text[start]!r}", start)
        start = mt.end() - len(mt.group(0).lstrip())
        if mt.group("var"):
            tokens.append(("var", mt.group("idx"), start))
        elif mt.group("num"):
            tokens.append(("num", mt.group("num"), start))
        else:
            tokens.append(("op", mt.group("op"), start))
        pos = mt.end()
    tokens.append(("end", "", len(text)))
    return tokens


def parse_poly(text: str, spec: FieldSpec, nvars: int | None = None) -> MultiPoly:
    """Parse ``text`` in the grammar ``term (("+"|"-") term)*``.

    A term is a ``*``-separated product of variables ``x<i>[^e]`` and
    element literals.  When ``nvars`` is None it is the largest index used.
    """
    tokens = _tokenize(text)
    i = 0
    monomials: list[tuple[int, dict[int, int], int]] = []  # (sign, {var: exp}, coeff code)
    max_index = 0

    def peek():
        return tokens[i]

    def expect_num(what):
        nonlocal i
        kind, val, pos = tokens[i]
        if kind != "num":
            raise PolynomialSyntaxError(f"expected {what}", pos)
        i += 1
        return val, pos

    def factor(powers, coeff):
        nonlocal i, max_index
        kind, val, pos = tokens[i]
        if kind == "var":
            i += 1
            idx = int(val)
            if idx < 1 or (nvars is not None and idx > nvars):
                raise VariableOutOfRange(f"x{idx} out of range at position {pos}")
            max_index = max(max_index, idx)
            e = 1
            if peek()[:2] == ("op", "^"):
                i += 1
                e = int(expect_num("exponent")[0])
            powers[idx] = powers.get(idx, 0) + e
            return coeff
        if kind == "num":
            i += 1
            try:
                c = spec.parse_code(val)
            except PolynomialSyntaxError as err:
                raise PolynomialSyntaxError(str(err).rsplit(" at position", 1)[0], pos + err.position) from None
            if peek()[:2] == ("op", "^"):
                i += 1
                c = spec.pow(c, int(expect_num("exponent")[0]))
            return spec.mul(coeff, c)
        raise PolynomialSyntaxError("expected variable or coefficient", pos)

    def term(sign):
        nonlocal i
        powers: dict[int, int] = {}
        coeff = factor(powers, 1)
        while peek()[:2] == ("op", "*"):
            i += 1
            coeff = factor(powers, coeff)
        monomials.append((sign, powers, coeff))

    sign = 1
    if peek()[:2] == ("op", "-"):
        i += 1
        sign = -1
    term(sign)
    while peek()[0] == "op" and peek()[1] in "+-":
        sign = 1 if peek()[1] == "+" else -1
        i += 1
        term(sign)
    kind, val, pos = peek()
    if kind != "end":
        raise PolynomialSyntaxError(f"unexpected {val!r}", pos)

    n = nvars if nvars is not None else max(1, max_index)
    out: dict[tuple[int, ...], int] = {}
    for sgn, powers, coeff in monomials:
        exps = tuple(powers.get(j, 0) for j in range(1, n + 1))
        c = coeff if sgn > 0 else spec.neg(coeff)
        out[exps] = spec.add(out.get(exps, 0), c)
    return MultiPoly.from_codes(spec, n, out)


parse = parse_poly


def format_poly(f: MultiPoly) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for exps in f.sorted_exponents():
        code = f._terms[exps]
        factors = []
        for j, e in enumerate(exps, start=1):
            if e == 1:
                factors.append(f"x{j}")
            elif e > 1:
                factors.append(f"x{j}^{e}")
        if code != 1 or not factors:
            factors.insert(0, f.spec.format_code(code))
        parts.append("*".join(factors))
    return " + ".join(parts)


# -- evaluation and degrees ---------------------------------------------------

def _point_codes(f: MultiPoly, point: Sequence) -> list[int]:
    if len(point) != f.nvars:
        raise ArityMismatch(f"expected {f.nvars} coordinates, got {len(point)}")
    out = []
    for x in point:
        if isinstance(x, FieldElement):
            if x.spec != f.spec:
                raise MixedFields(f"{x.spec} vs {f.spec}")
            out.append(x.code)
        else:
            out.append(int(x))
    return out


def evaluate_codes(f: MultiPoly, point: Sequence[int]) -> int:
    spec = f.spec
    acc = 0
    for exps, c in f._terms.items():
        v = c
        for x, e in zip(point, exps):
            if e:
                v = spec.mul(v, spec.pow(x, e))
                if v == 0:
                    break
        acc = spec.add(acc, v)
    return acc


def evaluate(f: MultiPoly, point: Sequence[FieldElement]) -> FieldElement:
    return FieldElement(f.spec, evaluate_codes(f, _point_codes(f, point)))


def total_degree(f: MultiPoly):
    if f.is_zero():
        return NEG_INFINITY
    return max(sum(e) for e in f._terms)


def reduce_exponent(e: int, q: int) -> int:
    return 0 if e == 0 else (e - 1) % (q - 1) + 1


def reduce(f: MultiPoly, q: int | None = None) -> MultiPoly:
    """Replace each x_i^q by x_i until every per-variable degree is below q."""
    if q is None:
        q = f.spec.order
    spec = f.spec
    out: dict[tuple[int, ...], int] = {}
    for exps, c in f._terms.items():
        r = tuple(reduce_exponent(e, q) for e in exps)
        out[r] = spec.add(out.get(r, 0), c)
    return MultiPoly.from_codes(spec, f.nvars, out)


def is_reduced(f: MultiPoly, q: int | None = None) -> bool:
    if q is None:
        q = f.spec.order
    return all(e < q for exps in f._terms for e in exps)


def deg_l(f: MultiPoly):
    """Minimal total degree among polynomials inducing the same function."""
    return total_degree(reduce(f))


# -- points and interpolation -------------------------------------------------

def point_index(point: Sequence[int], order: int) -> int:
    idx = 0
    for c in reversed(point):
        idx = idx * order + c
    return idx


def point_from_index(idx: int, order: int, n: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        idx, c = divmod(idx, order)
        out.append(c)
    return tuple(out)


def iter_points(spec: FieldSpec, n: int) -> Iterator[tuple[int, ...]]:
    for idx in range(spec.order ** n):
        yield point_from_index(idx, spec.order, n)


def _indicator_matrix(spec: FieldSpec) -> list[list[int]]:
    """M[j][c] = coefficient of x^j in 1 - (x - c)^(q-1)."""
    q = spec.order
    binom = [math.comb(q - 1, j) % spec.p for j in range(q)]
    M = [[0] * q for _ in range(q)]
    for c in range(q):
        negc = spec.neg(c)
        for j in range(q):
            term = spec.scale(spec.pow(negc, q - 1 - j), binom[j])
            M[j][c] = spec.neg(term) if j else spec.sub(1, term)
    return M


def interpolate_dense(values: Sequence[int], spec: FieldSpec, nvars: int) -> MultiPoly:
    """Reduced polynomial taking ``values[i]`` at the point with index i.

    Computes sum_c values[c] * prod_i (1 - (x_i - c_i)^(q-1)), one variable
    at a time.
    """
    q = spec.order
    if len(values) != q ** nvars:
        raise IncompleteTable(f"expected {q ** nvars} values, got {len(values)}")
    M = _indicator_matrix(spec)
    mul, add = spec.mul, spec.add
    coeffs = list(values)
    stride = 1
    for _axis in range(nvars):
        block = stride * q
        nxt = [0] * len(coeffs)
        for base in range(0, len(coeffs), block):
            for off in range(stride):
                start = base + off
                line = coeffs[start:start + block:stride]
                nz = [(c, v) for c, v in enumerate(line) if v]
                if not nz:
                    continue
                for j in range(q):
                    row = M[j]
                    acc = 0
                    for c, v in nz:
                        acc = add(acc, mul(row[c], v))
                    nxt[start + j * stride] = acc
        coeffs = nxt
        stride = block
    terms = {point_from_index(i, q, nvars): c for i, c in enumerate(coeffs) if c}
    return reduce(MultiPoly.from_codes(spec, nvars, terms), q)


def interpolate(table: Mapping, spec: FieldSpec | None = None, nvars: int | None = None) -> MultiPoly:
    """Unique reduced polynomial inducing ``table``.

    ``table`` maps points (tuples of FieldElement, or of codes when ``spec``
    is given) to values; it must cover all of spec^n.
    """
    items = list(table.items())
    if not items:
        raise IncompleteTable("empty table")
    first_pt, first_val = items[0]
    if spec is None:
        spec = (first_val if isinstance(first_val, FieldElement) else first_pt[0]).spec
    if nvars is None:
        nvars = len(first_pt)
    q = spec.order
    values: list[int | None] = [None] * (q ** nvars)
    for pt, val in items:
        if len(pt) != nvars:
            raise ArityMismatch(f"point {pt} has wrong arity")
        codes = [x.code if isinstance(x, FieldElement) else int(x) for x in pt]
        v = val.code if isinstance(val, FieldElement) else int(val)
        values[point_index(codes, q)] = v
    if any(v is None for v in values):
        raise IncompleteTable(f"table defines {len(items)} of {q ** nvars} points")
    return interpolate_dense(values, spec, nvars)


def value_table(f: MultiPoly) -> list[int]:
    """Values of f at every point, in point-index order."""
    return [evaluate_codes(f, pt) for pt in iter_points(f.spec, f.nvars)]


def max_degree(degrees: Iterable):
    return max(degrees, default=NEG_INFINITY)

"""Exact arithmetic in GF(p^m).

Elements are encoded internally as integer *codes*: the coefficient vector
(c_0, ..., c_{m-1}) in the power basis of the modulus root ``t`` maps to
``c_0 + c_1 p + ... + c_{m-1} p^{m-1}``.  Enumeration order is the
little-endian odometer, which is exactly increasing code order, so 0 comes
first and 1 second.

For fields with at most ``TABLE_LIMIT`` elements multiplication goes
through exp/log tables built once per field; larger fields fall back to
schoolbook polynomial multiplication.
"""

from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass, field
from typing import Sequence

from .errors import (
    DivisionByZero,
    InvalidSubfieldOrder,
    MixedFields,
    NonPrimeCharacteristic,
    PolynomialSyntaxError,
    ReducibleModulus,
)

TABLE_LIMIT = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, d) with q == p**d, or raise InvalidSubfieldOrder."""
    if q < 2:
        raise InvalidSubfieldOrder(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    d, r = 0, q
    while r % p == 0:
        r //= p
        d += 1
    if r != 1:
        raise InvalidSubfieldOrder(f"{q} is not a prime power")
    return p, d


# -- polynomials over GF(p) as little-endian coefficient lists --------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial b over GF(p)."""
    r = _trim([c % p for c in a])
    db = len(b) - 1
    while len(r) - 1 >= db:
        c = r[-1]
        shift = len(r) - 1 - db
        for i, bi in enumerate(b):
            r[shift + i] = (r[shift + i] - c * bi) % p
        _trim(r)
    return r


def _monic_polys(p: int, d: int):
    """All monic degree-d polynomials, lexicographic in (c_0, ..., c_{d-1})."""
    for low in itertools.product(range(p), repeat=d):
        yield list(low) + [1]


@functools.lru_cache(maxsize=None)
def irreducibles_up_to(p: int, dmax: int) -> tuple[tuple[int, ...], ...]:
    """Monic irreducibles over GF(p) of degree 1..dmax, found by sieving."""
    found: list[tuple[int, ...]] = []
    for d in range(1, dmax + 1):
        for f in _monic_polys(p, d):
            if all(_polymod(f, g, p) for g in found if 2 * (len(g) - 1) <= d):
                found.append(tuple(f))
    return tuple(found)


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    m = len(poly) - 1
    if m < 1:
        return False
    return all(_polymod(poly, g, p) for g in irreducibles_up_to(p, m // 2))


@functools.lru_cache(maxsize=None)
def _smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    for f in _monic_polys(p, m):
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("unreachable: irreducibles exist in every degree")


# -- field description ------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """GF(p^m) presented as GF(p)[t] / (modulus)."""

    p: int
    m: int
    modulus: tuple[int, ...]

    @property
    def order(self) -> int:
        return self.p ** self.m

    @property
    def is_canonical(self) -> bool:
        return self.modulus == _smallest_irreducible(self.p, self.m)

    @property
    def text(self) -> str:
        base = f"{self.p}^{self.m}"
        if self.is_canonical:
            return base
        return base + "/" + ",".join(map(str, self.modulus))

    def __str__(self):
        return f"GF({self.text})"

    # -- codes <-> coefficient vectors

    def coeffs(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.m):
            code, c = divmod(code, self.p)
            out.append(c)
        return tuple(out)

    def code(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.m:
            raise ValueError(f"expected at most {self.m} coefficients")
        v = 0
        for c in reversed(coeffs):
            v = v * self.p + c % self.p
        return v

    def element(self, code: int) -> FieldElement:
        return FieldElement(self, code)

    def from_coeffs(self, coeffs: Sequence[int]) -> FieldElement:
        return FieldElement(self, self.code(coeffs))

    def from_int(self, n: int) -> FieldElement:
        """Image of the integer n under Z -> GF(p) -> GF(p^m)."""
        return FieldElement(self, n % self.p)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, c) for c in range(self.order)]

    # -- element text format

    def format_code(self, code: int) -> str:
        if self.m == 1:
            return str(code)
        return "".join(str(c) for c in self.coeffs(code))

    def parse_code(self, text: str) -> int:
        """Parse the element text format.

        Over a prime field the literal is a decimal integer reduced mod p.
        Otherwise it is a little-endian base-p digit string of length at most m.
        """
        s = text.strip()
        if not s.isdigit():
            raise PolynomialSyntaxError(f"bad element literal {text!r}", 0)
        if self.m == 1:
            return int(s) % self.p
        if self.p > 10:
            raise PolynomialSyntaxError("digit strings need p <= 10", 0)
        if len(s) > self.m:
            raise PolynomialSyntaxError(f"element literal longer than {self.m} digits", self.m)
        digits = [int(ch) for ch in s]
        for i, dgt in enumerate(digits):
            if dgt >= self.p:
                raise PolynomialSyntaxError(f"digit {dgt} out of range for p={self.p}", i)
        return self.code(digits)

    def parse_element(self, text: str) -> FieldElement:
        return FieldElement(self, self.parse_code(text))

    # -- arithmetic on codes

    def add(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        if self.m == 1:
            return (a + b) % p
        out, pw = 0, 1
        while a or b:
            a, da = divmod(a, p)
            b, db = divmod(b, p)
            out += ((da + db) % p) * pw
            pw *= p
        return out

    def neg(self, a: int) -> int:
        p = self.p
        if p == 2:
            return a
        if self.m == 1:
            return -a % p
        out, pw = 0, 1
        while a:
            a, da = divmod(a, p)
            out += (-da % p) * pw
            pw *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.m == 1:
            return a * b % self.p
        t = _tables(self)
        if t is None:
            return self.mul_slow(a, b)
        return t.exp[t.log[a] + t.log[b]]

    def mul_slow(self, a: int, b: int) -> int:
        """Schoolbook product reduced modulo the modulus; no tables involved."""
        ca, cb = self.coeffs(a), self.coeffs(b)
        prod = [0] * (2 * self.m - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] += x * y
        return self.code(_polymod(prod, self.modulus, self.p))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if e == 0:
            return 1
        if a == 0:
            return 0
        t = _tables(self) if self.m > 1 else None
        if t is not None:
            return t.exp[t.log[a] * e % (self.order - 1)]
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self.m == 1:
            return pow(a, -1, self.p)
        t = _tables(self)
        if t is not None:
            return t.exp[(self.order - 1 - t.log[a]) % (self.order - 1)]
        return self.pow(a, self.order - 2)

    def scale(self, a: int, n: int) -> int:
        """n * a for an integer n."""
        return self.mul(a, n % self.p)


@dataclass(frozen=True)
class _Tables:
    exp: list[int]  # length 2(Q-1) so log a + log b needs no reduction
    log: list[int]
    generator: int


@functools.lru_cache(maxsize=64)
def _tables(spec: FieldSpec) -> _Tables | None:
    q = spec.order
    if q > TABLE_LIMIT:
        return None
    if q == 2:
        return _Tables(exp=[1, 1], log=[0, 0], generator=1)
    for g in range(2, q):
        powers = [1]
        x = g
        while x != 1:
            powers.append(x)
            x = spec.mul_slow(x, g)
        if len(powers) == q - 1:
            log = [0] * q
            for i, v in enumerate(powers):
                log[v] = i
            return _Tables(exp=powers + powers, log=log, generator=g)
    raise AssertionError("multiplicative group is cyclic")


def exp_log_tables(spec: FieldSpec) -> tuple[list[int], list[int]] | None:
    """(exp, log) tables for vectorised kernels, or None above TABLE_LIMIT."""
    t = _tables(spec)
    return (t.exp, t.log) if t else None


def make_field(p: int, m: int = 1, modulus: Sequence[int] | None = None) -> FieldSpec:
    """Build GF(p^m); without a modulus the lexicographically smallest
    monic irreducible (compared from the constant term up) is used."""
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"{p} is not prime")
    if m < 1:
        raise ValueError("extension degree must be >= 1")
    if modulus is None:
        return FieldSpec(p, m, _smallest_irreducible(p, m))
    mod = tuple(int(c) for c in modulus)
    if len(mod) != m + 1 or mod[-1] != 1:
        raise ValueError(f"modulus must be monic of degree {m}")
    if any(not 0 <= c < p for c in mod):
        raise ValueError(f"modulus coefficients must lie in [0, {p})")
    if not is_irreducible(mod, p):
        raise ReducibleModulus(f"{list(mod)} factors over GF({p})")
    return FieldSpec(p, m, mod)


_FIELD_RE = re.compile(r"^\s*(\d+)\s*\^\s*(\d+)\s*(?:/\s*([\d,\s]+))?$")


def parse_field(text: str) -> FieldSpec:
    """Parse "p^m" or "p^m/c0,c1,...,cm"."""
    mt = _FIELD_RE.match(text)
    if not mt:
        raise ValueError(f"bad field spec {text!r}; expected p^m or p^m/c0,...,cm")
    p, m = int(mt.group(1)), int(mt.group(2))
    modulus = None
    if mt.group(3):
        modulus = [int(c) for c in mt.group(3).split(",") if c.strip()]
    return make_field(p, m, modulus)


class FieldElement:
    """An element of a FieldSpec; immutable and hashable."""

    __slots__ = ("spec", "code")

    def __init__(self, spec: FieldSpec, code: int):
        if not 0 <= code < spec.order:
            raise ValueError(f"code {code} out of range for {spec}")
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "code", code)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def __reduce__(self):
        return (FieldElement, (self.spec, self.code))

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.spec.coeffs(self.code)

    def _other(self, other) -> int:
        if isinstance(other, int):
            return other % self.spec.p
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.spec is not self.spec and other.spec != self.spec:
            raise MixedFields(f"{self.spec} vs {other.spec}")
        return other.code

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.spec, self.spec.add(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.spec, self.spec.sub(self.code, b))

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.spec, self.spec.sub(b, self.code))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.code))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.spec, self.spec.mul(self.code, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.spec, self.spec.mul(self.code, self.spec.inv(b)))

    def __pow__(self, e: int):
        return FieldElement(self.spec, self.spec.pow(self.code, e))

    def inverse(self) -> FieldElement:
        return FieldElement(self.spec, self.spec.inv(self.code))

    def __bool__(self):
        return self.code != 0

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.code == other.code and self.spec == other.spec
        if isinstance(other, int):
            return self.code == other % self.spec.p
        return NotImplemented

    def __hash__(self):
        return hash((self.spec, self.code))

    def __str__(self):
        return self.spec.format_code(self.code)

    def __repr__(self):
        return f"FieldElement({self.spec.text}, {self})"


# -- free functions ----------------------------------------------------------

def add(x: FieldElement, y: FieldElement) -> FieldElement:
    return x + y


def neg(x: FieldElement) -> FieldElement:
    return -x


def mul(x: FieldElement, y: FieldElement) -> FieldElement:
    return x * y


def inv(x: FieldElement) -> FieldElement:
    return x.inverse()


def power(x: FieldElement, e: int) -> FieldElement:
    return x ** e


def enumerate_elements(spec: FieldSpec) -> list[FieldElement]:
    return spec.elements()


def subfield_degree(spec: FieldSpec, q: int) -> int:
    """d such that q = p^d and d | m; raises InvalidSubfieldOrder otherwise."""
    try:
        p, d = prime_power(q)
    except InvalidSubfieldOrder:
        raise InvalidSubfieldOrder(f"{q} is not a subfield order of {spec}") from None
    if p != spec.p or spec.m % d:
        raise InvalidSubfieldOrder(f"{q} is not a subfield order of {spec}")
    return d


def subfield_orders(spec: FieldSpec) -> list[int]:
    return [spec.p ** d for d in range(1, spec.m + 1) if spec.m % d == 0]


def frobenius(x: FieldElement, q: int) -> FieldElement:
    subfield_degree(x.spec, q)
    return x ** q


def subfield_elements(spec: FieldSpec, q: int) -> list[FieldElement]:
    subfield_degree(spec, q)
    return [FieldElement(spec, c) for c in range(spec.order) if spec.pow(c, q) == c]


def norm(spec: FieldSpec, q: int, x: FieldElement) -> FieldElement:
    """Norm from GF(p^m) down to its subfield with q elements."""
    h = spec.m // subfield_degree(spec, q)
    if x.spec != spec:
        raise MixedFields(f"{x.spec} vs {spec}")
    return x ** ((q ** h - 1) // (q - 1))


@dataclass(frozen=True)
class ScalarRestriction:
    """k viewed as an h-dimensional vector space over its q-element subfield.

    ``subfield`` is a standalone canonical FieldSpec for the subfield; the
    coordinates returned by ``forward`` are elements of it.  ``embedding``
    lists, for every subfield code, the corresponding code in k.
    """

    k: FieldSpec
    subfield: FieldSpec
    h: int
    basis: tuple[int, ...]
    embedding: tuple[int, ...]
    _to_coords: dict[int, tuple[int, ...]] = field(repr=False)

    def coords(self, code: int) -> tuple[int, ...]:
        return self._to_coords[code]

    def from_coords(self, coords: Sequence[int]) -> int:
        k = self.k
        acc = 0
        for c, b in zip(coords, self.basis):
            acc = k.add(acc, k.mul(self.embedding[c], b))
        return acc

    def forward(self, x: FieldElement) -> tuple[FieldElement, ...]:
        if x.spec != self.k:
            raise MixedFields(f"{x.spec} vs {self.k}")
        return tuple(FieldElement(self.subfield, c) for c in self._to_coords[x.code])

    def inverse(self, v: Sequence[FieldElement]) -> FieldElement:
        if len(v) != self.h:
            raise ValueError(f"expected {self.h} coordinates")
        for e in v:
            if e.spec != self.subfield:
                raise MixedFields(f"{e.spec} vs {self.subfield}")
        return FieldElement(self.k, self.from_coords([e.code for e in v]))

    def embed(self, y: FieldElement) -> FieldElement:
        return FieldElement(self.k, self.embedding[y.code])

    def restrict(self, x: FieldElement) -> FieldElement:
        """Inverse of ``embed`` on elements lying in the subfield."""
        try:
            return FieldElement(self.subfield, self.embedding.index(x.code))
        except ValueError:
            raise ValueError(f"{x!r} does not lie in the {self.subfield.order}-element subfield") from None


def subfield_embedding(k: FieldSpec, sub: FieldSpec) -> tuple[int, ...]:
    """Codes in k of the images of sub's elements under a fixed embedding.

    The root of sub's modulus with smallest code in k is used as the image
    of sub's generator t.
    """
    if sub.p != k.p or k.m % sub.m:
        raise InvalidSubfieldOrder(f"{sub} does not embed in {k}")
    root = None
    for c in range(k.order):
        acc = 0
        for coef in reversed(sub.modulus):
            acc = k.add(k.mul(acc, c), coef)
        if acc == 0:
            root = c
            break
    assert root is not None
    powers = [k.pow(root, i) for i in range(sub.m)]
    out = []
    for code in range(sub.order):
        acc = 0
        for coef, pw in zip(sub.coeffs(code), powers):
            if coef:
                acc = k.add(acc, k.scale(pw, coef))
        out.append(acc)
    return tuple(out)


@functools.lru_cache(maxsize=128)
def _restriction(k: FieldSpec, q: int, basis: tuple[int, ...] | None) -> ScalarRestriction:
    d = subfield_degree(k, q)
    h = k.m // d
    sub = make_field(k.p, d)
    emb = subfield_embedding(k, sub)
    if basis is None:
        basis = tuple(k.pow(k.p if k.m > 1 else 1, j) for j in range(h))
    if len(basis) != h:
        raise ValueError(f"basis must have {h} elements")
    to_coords: dict[int, tuple[int, ...]] = {}
    for coords in itertools.product(range(q), repeat=h):
        acc = 0
        for c, b in zip(coords, basis):
            acc = k.add(acc, k.mul(emb[c], b))
        if acc in to_coords:
            raise ValueError("basis is not linearly independent over the subfield")
        to_coords[acc] = coords
    return ScalarRestriction(k, sub, h, tuple(basis), emb, to_coords)


def vector_space_iso(k: FieldSpec, q: int, basis: Sequence[FieldElement] | None = None) -> ScalarRestriction:
    """Coordinates of k over its q-element subfield.

    The default basis is 1, t, ..., t^(h-1) for the modulus root t, which
    generates k over every subfield.
    """
    codes = None if basis is None else tuple(b.code for b in basis)
    return _restriction(k, q, codes)


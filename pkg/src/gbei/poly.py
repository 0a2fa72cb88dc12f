"""Exact polynomial arithmetic on the m x n variable grid.

Monomials are packed into Python ints, one byte per variable, with the first
variable in the most significant byte.  Exponents stay below 128 so that the
top bit of each byte can act as a borrow guard: ``b`` divides ``a`` exactly
when ``((a | H) - b) & H == H``.  Total degree is ``mono % 255``.

Polynomials are plain dicts ``{monomial: coefficient}`` inside the kernel and
:class:`Polynomial` values at the public surface.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping

from .graph import Graph

DEFAULT_CHARACTERISTIC = 32003
MAX_EXPONENT = 127
ORDERS = ("degrevlex", "lex", "elim")


class PolyError(ValueError):
    pass


class CoefficientOverflow(ArithmeticError):
    """Rational coefficients grew past the configured size."""


# --------------------------------------------------------------------------
# coefficient fields


class Field:
    """Prime field F_p when ``characteristic`` is a prime, rationals when 0."""

    RATIONAL_BIT_CAP = 4096

    def __init__(self, characteristic: int = DEFAULT_CHARACTERISTIC):
        if characteristic < 0 or characteristic == 1:
            raise PolyError(f"invalid characteristic {characteristic}")
        if characteristic > 1 and not _is_prime(characteristic):
            raise PolyError(f"characteristic {characteristic} is not prime")
        self.characteristic = characteristic

    @property
    def p(self) -> int:
        return self.characteristic

    def __repr__(self) -> str:
        return "QQ" if self.p == 0 else f"GF({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self) -> int:
        return hash(self.p)

    def __call__(self, c):
        if self.p:
            if isinstance(c, Fraction):
                return c.numerator * pow(c.denominator, -1, self.p) % self.p
            return int(c) % self.p
        return Fraction(c)

    def inv(self, c):
        if self.p:
            return pow(c, -1, self.p)
        return 1 / c

    def check(self, c):
        if not self.p and (c.numerator.bit_length() > self.RATIONAL_BIT_CAP
                           or c.denominator.bit_length() > self.RATIONAL_BIT_CAP):
            raise CoefficientOverflow(
                "rational coefficient exceeded "
                f"{self.RATIONAL_BIT_CAP} bits; rerun in modular mode (e.g. characteristic 32003)"
            )
        return c


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


# --------------------------------------------------------------------------
# rings and monomial orders


@dataclass(frozen=True)
class VariableGrid:
    """Variables x_ij, (i, j) in [m] x [n], in row-major order."""

    m: int
    n: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise PolyError("grid dimensions must be positive")

    @property
    def N(self) -> int:
        return self.m * self.n

    def index(self, i: int, j: int) -> int:
        if not (1 <= i <= self.m and 1 <= j <= self.n):
            raise PolyError(f"x[{i},{j}] outside the {self.m}x{self.n} grid")
        return (i - 1) * self.n + (j - 1)

    def cell(self, k: int) -> tuple[int, int]:
        i, j = divmod(k, self.n)
        return i + 1, j + 1


@dataclass(frozen=True)
class Ring:
    """Polynomial ring on a grid, optionally with one auxiliary variable ``t``.

    The auxiliary variable, when present, is variable 0 and sits in front of
    the grid, so grid monomials have the same packed encoding in both rings.
    """

    grid: VariableGrid
    field: Field = field(default_factory=Field)
    aux: bool = False

    @property
    def nvars(self) -> int:
        return self.grid.N + (1 if self.aux else 0)

    @cached_property
    def guard(self) -> int:
        return int.from_bytes(b"\x80" * self.nvars, "big")

    @cached_property
    def full(self) -> int:
        return (1 << (8 * self.nvars)) - 1

    def var(self, i: int, j: int) -> int:
        """Packed monomial of x_ij."""
        return 1 << (8 * (self.grid.N - 1 - self.grid.index(i, j)))

    def var_index(self, k: int) -> int:
        """Packed monomial of grid variable number ``k`` (row-major)."""
        return 1 << (8 * (self.grid.N - 1 - k))

    @property
    def t(self) -> int:
        if not self.aux:
            raise PolyError("ring has no auxiliary variable")
        return 1 << (8 * self.grid.N)

    def with_aux(self) -> "Ring":
        return Ring(self.grid, self.field, True)

    def without_aux(self) -> "Ring":
        return Ring(self.grid, self.field, False)

    def exponents(self, mono: int) -> tuple[int, ...]:
        """Exponents of the grid variables (auxiliary excluded), row-major."""
        raw = mono.to_bytes(self.nvars, "big")
        return tuple(raw[1:]) if self.aux else tuple(raw)

    def from_exponents(self, exps: Iterable[int]) -> int:
        exps = list(exps)
        if len(exps) != self.grid.N:
            raise PolyError("exponent vector length differs from the grid size")
        if any(e < 0 or e > MAX_EXPONENT for e in exps):
            raise PolyError("exponents must lie in 0..127")
        return int.from_bytes(bytes(exps), "big")


def divides(a: int, b: int, guard: int) -> bool:
    """Monomial ``a`` divides monomial ``b``."""
    return ((b | guard) - a) & guard == guard


def lcm(a: int, b: int, guard: int) -> int:
    ge = ((a | guard) - b) & guard
    mask = (ge >> 7) * 0xFF
    return (a & mask) | (b & ~mask)


def degree(mono: int) -> int:
    return mono % 255


def coprime(a: int, b: int, guard: int) -> bool:
    return lcm(a, b, guard) == a + b


class MonomialOrder:
    """Sort keys turning packed monomials into comparable ints."""

    def __init__(self, name: str, ring: Ring):
        if name not in ORDERS:
            raise PolyError(f"unknown monomial order {name!r}; expected one of {ORDERS}")
        if name == "elim" and not ring.aux:
            raise PolyError("the elimination order needs a ring with an auxiliary variable")
        self.name = name
        self.ring = ring
        self._nv = ring.nvars
        self._cache: dict[int, int] = {}
        if name == "lex":
            self.key = _identity
        elif name == "degrevlex":
            self.key = self._degrevlex
        else:
            self.key = self._elim

    def _degrevlex(self, mono: int) -> int:
        k = self._cache.get(mono)
        if k is None:
            nv = self._nv
            rev = int.from_bytes(mono.to_bytes(nv, "big"), "little")
            k = ((mono % 255) << (8 * nv)) - rev
            self._cache[mono] = k
        return k

    def _elim(self, mono: int) -> int:
        k = self._cache.get(mono)
        if k is None:
            nv = self._nv
            shift = 8 * (nv - 1)
            texp = mono >> shift
            rest = mono & ((1 << shift) - 1)
            rev = int.from_bytes(rest.to_bytes(nv - 1, "big"), "little")
            k = (texp << (8 * nv + 8)) + ((rest % 255) << (8 * (nv - 1))) - rev
            self._cache[mono] = k
        return k


def _identity(mono: int) -> int:
    return mono


# --------------------------------------------------------------------------
# polynomials


@dataclass(frozen=True)
class Polynomial:
    ring: Ring
    terms: Mapping[int, object]

    @classmethod
    def from_terms(cls, ring: Ring, terms: Mapping[int, object]) -> "Polynomial":
        F = ring.field
        clean = {}
        for mono, c in terms.items():
            c = F(c)
            if c:
                clean[mono] = c
        return cls(ring, clean)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.ring == other.ring and dict(self.terms) == dict(other.terms)

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self.terms.items())))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial(self.ring, add(self.terms, other.terms, self.ring.field))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial(self.ring, add(self.terms, scale(other.terms, -1, self.ring.field), self.ring.field))

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial(self.ring, multiply(self.terms, other.terms, self.ring.field))

    def degree(self) -> int:
        return max((degree(mono) for mono in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({degree(mono) for mono in self.terms}) <= 1

    def leading_monomial(self, order: str = "degrevlex") -> int:
        if not self.terms:
            raise PolyError("the zero polynomial has no leading monomial")
        return max(self.terms, key=MonomialOrder(order, self.ring).key)

    def sorted_terms(self, order: str = "degrevlex") -> list[tuple[int, object]]:
        key = MonomialOrder(order, self.ring).key
        return sorted(self.terms.items(), key=lambda kv: key(kv[0]), reverse=True)

    def to_text(self, order: str = "degrevlex") -> str:
        return format_polynomial(self.ring, self.terms, order)

    def __str__(self) -> str:
        return self.to_text()


def add(f: Mapping[int, object], g: Mapping[int, object], F: Field) -> dict:
    out = dict(f)
    p = F.p
    for mono, c in g.items():
        v = out.get(mono, 0) + c
        if p:
            v %= p
        if v:
            out[mono] = v
        else:
            out.pop(mono, None)
    return out


def scale(f: Mapping[int, object], c, F: Field) -> dict:
    p = F.p
    if p:
        c %= p
        return {mono: v * c % p for mono, v in f.items()} if c else {}
    return {mono: v * c for mono, v in f.items()} if c else {}


def multiply(f: Mapping[int, object], g: Mapping[int, object], F: Field) -> dict:
    out: dict = {}
    p = F.p
    for a, ca in f.items():
        for b, cb in g.items():
            mono = a + b
            v = out.get(mono, 0) + ca * cb
            if p:
                v %= p
            out[mono] = v
    return {mono: c for mono, c in out.items() if c}


def minor(ring: Ring, i: int, j: int, t: int, l: int) -> dict:
    """The 2-minor x_it x_jl - x_il x_jt on rows i, j and columns t, l."""
    F = ring.field
    return add({ring.var(i, t) + ring.var(j, l): F(1)}, {ring.var(i, l) + ring.var(j, t): F(-1)}, F)


# --------------------------------------------------------------------------
# text format "x[i,j]^e*..."


def format_monomial(ring: Ring, mono: int) -> str:
    parts = []
    raw = mono.to_bytes(ring.nvars, "big")
    offset = 0
    if ring.aux:
        if raw[0]:
            parts.append("t" if raw[0] == 1 else f"t^{raw[0]}")
        offset = 1
    for k, e in enumerate(raw[offset:]):
        if e:
            i, j = ring.grid.cell(k)
            parts.append(f"x[{i},{j}]" if e == 1 else f"x[{i},{j}]^{e}")
    return "*".join(parts) if parts else "1"


def format_polynomial(ring: Ring, terms: Mapping[int, object], order: str = "degrevlex") -> str:
    if not terms:
        return "0"
    key = MonomialOrder(order, ring).key if order != "elim" or ring.aux else _identity
    out = []
    p = ring.field.p
    for mono, c in sorted(terms.items(), key=lambda kv: key(kv[0]), reverse=True):
        if p and c > p // 2:
            c = c - p
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        body = format_monomial(ring, mono)
        if body == "1":
            text = str(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{mag}*{body}"
        out.append((sign, text))
    first_sign, first = out[0]
    s = ("-" if first_sign == "-" else "") + first
    for sign, text in out[1:]:
        s += f" {sign} {text}"
    return s


_TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")
_FACTOR = re.compile(r"^(?:x\[(\d+),(\d+)\]|t)(?:\^(\d+))?$")


def parse_polynomial(ring: Ring, text: str) -> Polynomial:
    """Inverse of :meth:`Polynomial.to_text`."""
    F = ring.field
    text = text.strip()
    if text == "0":
        return Polynomial(ring, {})
    terms: dict = {}
    pos = 0
    for match in _TERM.finditer(text):
        if match.start() != pos:
            raise PolyError(f"cannot parse polynomial near {text[pos:]!r}")
        pos = match.end()
        sign = -1 if match.group(1) == "-" else 1
        coeff = Fraction(sign)
        mono = 0
        for factor in match.group(2).strip().split("*"):
            factor = factor.strip()
            if re.fullmatch(r"\d+(/\d+)?", factor):
                coeff *= Fraction(factor)
                continue
            fm = _FACTOR.match(factor)
            if not fm:
                raise PolyError(f"bad factor {factor!r}")
            e = int(fm.group(3) or 1)
            if fm.group(1):
                mono += e * ring.var(int(fm.group(1)), int(fm.group(2)))
            else:
                mono += e * ring.t
        terms = add(terms, {mono: F(coeff)}, F)
    if pos != len(text):
        raise PolyError(f"trailing text {text[pos:]!r}")
    return Polynomial(ring, terms)


# --------------------------------------------------------------------------
# ideals


@dataclass(frozen=True)
class Ideal:
    ring: Ring
    generators: tuple[Polynomial, ...]
    order: str = "degrevlex"

    def __post_init__(self):
        if self.order not in ORDERS:
            raise PolyError(f"unknown monomial order {self.order!r}")
        for g in self.generators:
            if g.ring != self.ring:
                raise PolyError("generator lives in a different ring")

    @classmethod
    def from_dicts(cls, ring: Ring, gens: Iterable[Mapping[int, object]], order: str = "degrevlex") -> "Ideal":
        return cls(ring, tuple(Polynomial(ring, dict(g)) for g in gens if g), order)

    def with_order(self, order: str) -> "Ideal":
        return Ideal(self.ring, self.generators, order)

    def is_zero(self) -> bool:
        return not any(self.generators)

    def to_json(self) -> dict:
        return {
            "m": self.ring.grid.m,
            "n": self.ring.grid.n,
            "characteristic": self.ring.field.p,
            "order": self.order,
            "generators": [g.to_text(self.order) for g in self.generators],
        }


def gbei_generators(G: Graph, m: int, field: Field | None = None, order: str = "degrevlex") -> Ideal:
    """J_{K_m,G}: one 2-minor per row pair i < j and edge {t, l} of G."""
    if m < 2:
        raise PolyError("m must be at least 2")
    ring = Ring(VariableGrid(m, G.n), field or Field())
    gens = [
        minor(ring, i, j, t, l)
        for (t, l) in G.edges()
        for i in range(1, m + 1)
        for j in range(i + 1, m + 1)
    ]
    return Ideal.from_dicts(ring, gens, order)

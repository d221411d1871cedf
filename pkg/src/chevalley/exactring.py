"""Exact scalars: Laurent polynomials in v, ring descriptors, quantum binomials."""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping, Union


class LaurentPoly:
    """Element of Z[v, v^-1] stored as a sparse exponent -> coefficient map."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[int, int] = {}
        for e, c in items:
            acc[e] = acc.get(e, 0) + c
        self._terms = tuple(sorted((e, c) for e, c in acc.items() if c))
        self._hash = None

    @classmethod
    def const(cls, c: int) -> LaurentPoly:
        return cls({0: c})

    @classmethod
    def mono(cls, e: int, c: int = 1) -> LaurentPoly:
        return cls({e: c})

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._terms)

    def terms(self) -> tuple[tuple[int, int], ...]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    @staticmethod
    def _lift(x) -> LaurentPoly:
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return LaurentPoly.const(x)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return LaurentPoly(self._terms + other._terms)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly((e, -c) for e, c in self._terms)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        acc: dict[int, int] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            if len(self._terms) == 1 and self._terms[0][1] in (1, -1):
                (e, c), = self._terms
                return LaurentPoly({-e * -n: c ** -n})
            raise ZeroDivisionError("only signed monomials are units")
        out = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def is_unit(self) -> bool:
        return len(self._terms) == 1 and self._terms[0][1] in (1, -1)

    def bar(self) -> LaurentPoly:
        """The ring involution v -> v^-1."""
        return LaurentPoly((-e, c) for e, c in self._terms)

    def subs_power(self, d: int) -> LaurentPoly:
        """Substitute v -> v^d."""
        return LaurentPoly((e * d, c) for e, c in self._terms)

    def evaluate(self, x, inv=None):
        """Evaluate at x; `inv` supplies x^-1 when negative exponents occur."""
        total = 0
        for e, c in self._terms:
            if e >= 0:
                total = total + c * x ** e
            else:
                xi = inv if inv is not None else 1 / x
                total = total + c * xi ** (-e)
        return total

    def at_one(self) -> int:
        return sum(c for _, c in self._terms)

    def __eq__(self, other) -> bool:
        other = self._lift(other)
        if other is NotImplemented:
            return False
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in reversed(self._terms):
            if e == 0:
                parts.append(str(c))
            else:
                mon = "v" if e == 1 else f"v^{e}"
                parts.append(mon if c == 1 else ("-" + mon if c == -1 else f"{c}*{mon}"))
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> list[list[int]]:
        return [[e, c] for e, c in self._terms]


V = LaurentPoly.mono(1)
ONE = LaurentPoly.const(1)
ZERO = LaurentPoly()

Scalar = Union[int, Fraction, LaurentPoly]


@lru_cache(maxsize=None)
def q_int(s: int, d: int = 1) -> LaurentPoly:
    """[s]_i = (v_i^s - v_i^-s)/(v_i - v_i^-1) with v_i = v^d, for s >= 0."""
    if s < 0:
        return -q_int(-s, d)
    return LaurentPoly({d * (s - 1 - 2 * k): 1 for k in range(s)})


@lru_cache(maxsize=None)
def q_factorial(p: int, d: int = 1) -> LaurentPoly:
    if p < 0 or d < 1:
        raise ValueError("need p >= 0 and d >= 1")
    out = ONE
    for s in range(1, p + 1):
        out = out * q_int(s, d)
    return out


@lru_cache(maxsize=None)
def _binom_row(n: int, d: int) -> tuple[LaurentPoly, ...]:
    # Pascal rule [n, t] = v^-t [n-1, t] + v^(n-t) [n-1, t-1] in v_i
    if n == 0:
        return (ONE,)
    prev = _binom_row(n - 1, d)
    row = []
    for t in range(n + 1):
        left = prev[t] * LaurentPoly.mono(-d * t) if t < n else ZERO
        right = prev[t - 1] * LaurentPoly.mono(d * (n - t)) if t > 0 else ZERO
        row.append(left + right)
    return tuple(row)


def q_binom(n: int, t: int, d: int = 1) -> LaurentPoly:
    """Gaussian binomial [n choose t]_i for any integer n and t >= 0."""
    if t < 0:
        raise ValueError("t must be non-negative")
    if n >= 0:
        return _binom_row(n, d)[t] if t <= n else ZERO
    sign = -1 if t % 2 else 1
    return _binom_row(-n + t - 1, d)[t] * sign


def int_binom(n: int, t: int) -> int:
    """Integer binomial extended to negative n by the Pascal recurrence."""
    if t < 0:
        return 0
    if n >= 0:
        return comb(n, t)
    return (-1) ** t * comb(-n + t - 1, t)


class InvalidRing(ValueError):
    pass


@dataclass(frozen=True)
class RingDescriptor:
    """A specialization of Z[v, v^-1]; scalars are plain Python values.

    kind is one of laurent, q, z, zmod, fp. For zmod/fp the scalars are ints
    reduced into [0, modulus).
    """

    kind: str
    modulus: int = 0
    v_image: int = 1

    def __post_init__(self):
        if self.kind not in ("laurent", "q", "z", "zmod", "fp"):
            raise InvalidRing(f"unknown ring kind {self.kind!r}")
        if self.kind in ("zmod", "fp") and self.modulus < 2:
            raise InvalidRing("modulus must be >= 2")
        if self.kind == "fp" and not _is_prime(self.modulus):
            raise InvalidRing(f"{self.modulus} is not prime")
        if self.kind != "laurent" and not self.is_unit(self.norm(self.v_image)):
            raise InvalidRing("image of v must be invertible")

    @classmethod
    def parse(cls, text: str) -> RingDescriptor:
        text = text.strip()
        if text in ("laurent", "q", "z"):
            return cls(text)
        m = re.fullmatch(r"(zmod|fp):(\d+)(?:,v=(-?\d+))?", text)
        if not m:
            raise InvalidRing(f"cannot parse ring {text!r}")
        kind, mod, v = m.group(1), int(m.group(2)), m.group(3)
        return cls(kind, mod, int(v) if v is not None else 1)

    def __str__(self) -> str:
        if self.kind in ("zmod", "fp"):
            s = f"{self.kind}:{self.modulus}"
            return s if self.v_image == 1 else f"{s},v={self.v_image}"
        return self.kind

    @property
    def v_is_one(self) -> bool:
        return self.kind != "laurent" and self.norm(self.v_image) == self.one

    @property
    def is_field(self) -> bool:
        return self.kind in ("q", "fp")

    @property
    def zero(self):
        return ZERO if self.kind == "laurent" else (Fraction(0) if self.kind == "q" else 0)

    @property
    def one(self):
        return ONE if self.kind == "laurent" else (Fraction(1) if self.kind == "q" else 1)

    def norm(self, x):
        if self.kind in ("zmod", "fp"):
            return x % self.modulus
        return x

    def coerce(self, x) -> Scalar:
        if isinstance(x, LaurentPoly):
            return specialize(x, self)
        if self.kind == "laurent":
            if isinstance(x, Fraction) and x.denominator != 1:
                raise InvalidRing(f"{x} is not in Z[v, v^-1]")
            return LaurentPoly.const(int(x))
        if self.kind == "q":
            return Fraction(x)
        if isinstance(x, Fraction):
            if self.kind == "z":
                if x.denominator != 1:
                    raise InvalidRing(f"{x} is not an integer")
                return int(x)
            return x.numerator * pow(x.denominator, -1, self.modulus) % self.modulus
        return self.norm(int(x))

    def is_unit(self, x) -> bool:
        if self.kind == "laurent":
            return x.is_unit()
        if self.kind == "q":
            return x != 0
        if self.kind == "z":
            return x in (1, -1)
        from math import gcd
        return gcd(x % self.modulus, self.modulus) == 1

    def inv(self, x):
        if not self.is_unit(x):
            raise ZeroDivisionError(f"{x} is not invertible in {self}")
        if self.kind == "laurent":
            return x ** -1
        if self.kind == "q":
            return 1 / x
        if self.kind == "z":
            return x
        return pow(x, -1, self.modulus)

    def pow(self, x, n: int):
        if n >= 0:
            return self.norm(x ** n) if self.kind != "laurent" else x ** n
        return self.pow(self.inv(x), -n)

    def random_element(self, rng: random.Random, size: int = 9):
        if self.kind in ("zmod", "fp"):
            return rng.randrange(self.modulus)
        if self.kind == "q":
            return Fraction(rng.randint(-size, size), rng.randint(1, size))
        if self.kind == "z":
            return rng.randint(-size, size)
        return LaurentPoly({rng.randint(-2, 2): rng.randint(-size, size) for _ in range(2)})

    def random_unit(self, rng: random.Random, size: int = 9):
        while True:
            x = self.random_element(rng, size)
            if self.is_unit(x):
                return x

    def to_json(self, x):
        if isinstance(x, LaurentPoly):
            return x.to_json()
        if isinstance(x, Fraction):
            return str(x) if x.denominator != 1 else x.numerator
        return x


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % k for k in range(2, int(n ** 0.5) + 1))


def specialize(p: LaurentPoly, ring: RingDescriptor) -> Scalar:
    """Image of a Laurent polynomial under v -> ring.v_image."""
    if ring.kind == "laurent":
        return p
    x = ring.coerce(ring.v_image)
    xi = ring.inv(x)
    total = ring.zero
    for e, c in p.terms():
        total = total + c * (ring.pow(x, e) if e >= 0 else ring.pow(xi, -e))
    return ring.norm(total)


LAURENT = RingDescriptor("laurent")
QQ = RingDescriptor("q")
ZZ = RingDescriptor("z")

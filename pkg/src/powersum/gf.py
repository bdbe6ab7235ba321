"""Exact arithmetic in small finite fields GF(p^k).

Elements are dense coefficient vectors (constant term first) reduced modulo
the smallest monic irreducible polynomial of the requested degree, where
"smallest" compares the integer encoding sum(c_i * p^i).  That choice makes
every downstream construction reproducible: two runs asked for GF(p^k) always
agree on the representation, hence on primitive elements and on the Singer
difference sets built from them.

Sizes are capped at desk scale.  The largest field the difference-set
constructions ever need is GF(32^3) = GF(2^15), so extension degrees stop
at 15 and orders must fit comfortably in a native integer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator


class NotPrimeError(ValueError):
    """The requested field characteristic is not prime."""


class DegreeOutOfRangeError(ValueError):
    """The requested extension degree is outside the supported range."""


class FieldMismatchError(ValueError):
    """Two elements from different fields were combined."""


class NotMonicError(ValueError):
    """The irreducibility test was handed a non-monic polynomial."""


MAX_EXTENSION_DEGREE = 15
MAX_FIELD_ORDER = 1 << 62


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division (desk-scale inputs)."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    factors: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            while n % p == 0:
                factors[p] = factors.get(p, 0) + 1
                n //= p
        f += 6
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


# ---------------------------------------------------------------------------
# Polynomial helpers over GF(p).  Coefficient lists, constant term first,
# normalized so the zero polynomial is the empty list.
# ---------------------------------------------------------------------------


def _trim(poly: list[int]) -> list[int]:
    n = len(poly)
    while n and poly[n - 1] == 0:
        n -= 1
    return poly[:n]


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _poly_rem(a: list[int], mod: list[int], p: int) -> list[int]:
    """Remainder of a by mod; mod need not be monic."""
    a = list(a)
    dm = len(mod) - 1
    inv_lead = pow(mod[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        a = _trim(a)
        if len(a) - 1 < dm:
            break
        shift = len(a) - 1 - dm
        factor = (a[-1] * inv_lead) % p
        for i, c in enumerate(mod):
            a[shift + i] = (a[shift + i] - factor * c) % p
    return _trim(a)


def _poly_sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [0] * n
    for i in range(n):
        ai = a[i] if i < len(a) else 0
        bi = b[i] if i < len(b) else 0
        out[i] = (ai - bi) % p
    return _trim(out)


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    while b:
        a, b = b, _poly_rem(a, b, p)
    return a


def _poly_powmod_p(base: list[int], mod: list[int], p: int) -> list[int]:
    """base^p modulo mod, by square and multiply on the exponent p."""
    result = [1]
    acc = list(base)
    e = p
    while e:
        if e & 1:
            result = _poly_rem(_poly_mul(result, acc, p), mod, p)
        e >>= 1
        if e:
            acc = _poly_rem(_poly_mul(acc, acc, p), mod, p)
    return result


def _frobenius_iterate(times: int, mod: list[int], p: int) -> list[int]:
    """x^(p^times) modulo mod."""
    t = [0, 1]
    for _ in range(times):
        t = _poly_powmod_p(t, mod, p)
    return t


def is_irreducible(poly: list[int] | tuple[int, ...], p: int) -> bool:
    """Deterministic irreducibility test over GF(p) (Rabin's criterion).

    `poly` is a monic coefficient list, constant term first.  A degree-d monic
    polynomial is irreducible iff x^(p^d) = x modulo poly and, for every prime
    divisor r of d, gcd(x^(p^(d/r)) - x, poly) is constant.
    """
    coeffs = [c % p for c in poly]
    coeffs_trimmed = _trim(coeffs)
    if len(coeffs_trimmed) != len(coeffs) or not coeffs or coeffs[-1] != 1:
        raise NotMonicError(f"polynomial {list(poly)} is not monic over GF({p})")
    d = len(coeffs) - 1
    if d < 1:
        raise NotMonicError("constant polynomials are not tested")
    if d == 1:
        return True
    x = [0, 1]
    for r in factorize(d):
        h = _frobenius_iterate(d // r, coeffs, p)
        g = _poly_gcd(coeffs, _poly_sub(h, x, p), p)
        if len(g) - 1 > 0:
            return False
    h = _frobenius_iterate(d, coeffs, p)
    return _poly_sub(h, x, p) == []


@lru_cache(maxsize=None)
def _smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Monic irreducible of degree k over GF(p) with least integer encoding.

    Candidates x^k + c, with c encoding the low-order coefficients in base p
    (constant term least significant), are scanned in increasing c.  For k = 1
    this yields the polynomial x.
    """
    if k == 1:
        return (0, 1)
    for c in range(1, p**k):
        if c % p == 0:
            continue  # zero constant term means x divides the candidate
        digits = []
        v = c
        for _ in range(k):
            digits.append(v % p)
            v //= p
        candidate = digits + [1]
        if is_irreducible(candidate, p):
            return tuple(candidate)
    raise RuntimeError(f"no irreducible polynomial of degree {k} over GF({p})")


# ---------------------------------------------------------------------------
# Field and element types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GfField:
    """The field GF(p^k) with a fixed, deterministic modulus polynomial."""

    p: int
    k: int
    modulus_poly: tuple[int, ...]
    order: int

    def element(self, coeffs) -> "GfElement":
        """Build an element from any iterable of integers (reduced mod p)."""
        vec = [c % self.p for c in coeffs]
        if len(vec) > self.k:
            raise ValueError(f"coefficient vector longer than degree {self.k}")
        vec.extend([0] * (self.k - len(vec)))
        return GfElement(self, tuple(vec))

    def from_int(self, value: int) -> "GfElement":
        """Element whose coefficient vector is `value` written in base p."""
        if not 0 <= value < self.order:
            raise ValueError(f"value {value} outside [0, {self.order})")
        digits = []
        for _ in range(self.k):
            digits.append(value % self.p)
            value //= self.p
        return GfElement(self, tuple(digits))

    @property
    def zero(self) -> "GfElement":
        return GfElement(self, (0,) * self.k)

    @property
    def one(self) -> "GfElement":
        return GfElement(self, (1,) + (0,) * (self.k - 1))

    def elements(self) -> Iterator["GfElement"]:
        for v in range(self.order):
            yield self.from_int(v)

    def __repr__(self) -> str:
        return f"GfField(GF({self.order}) = GF({self.p}^{self.k}))"


@dataclass(frozen=True)
class GfElement:
    """An element of a GfField, as a coefficient vector (constant term first)."""

    field: GfField
    coeffs: tuple[int, ...]

    def _check(self, other: "GfElement") -> None:
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")

    def __add__(self, other: "GfElement") -> "GfElement":
        self._check(other)
        p = self.field.p
        return GfElement(self.field,
                         tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "GfElement") -> "GfElement":
        self._check(other)
        p = self.field.p
        return GfElement(self.field,
                         tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "GfElement":
        p = self.field.p
        return GfElement(self.field, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other: "GfElement") -> "GfElement":
        self._check(other)
        f = self.field
        p, k = f.p, f.k
        if k == 1:
            return GfElement(f, ((self.coeffs[0] * other.coeffs[0]) % p,))
        prod = [0] * (2 * k - 1)
        for i, ai in enumerate(self.coeffs):
            if ai:
                for j, bj in enumerate(other.coeffs):
                    prod[i + j] = (prod[i + j] + ai * bj) % p
        mod = f.modulus_poly
        for i in range(2 * k - 2, k - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                shift = i - k
                for j in range(k):
                    prod[shift + j] = (prod[shift + j] - c * mod[j]) % p
        return GfElement(f, tuple(prod[:k]))

    def __pow__(self, exponent: int) -> "GfElement":
        if exponent < 0:
            return self.inv() ** (-exponent)
        result = self.field.one
        acc = self
        e = exponent
        while e:
            if e & 1:
                result = result * acc
            e >>= 1
            if e:
                acc = acc * acc
        return result

    def inv(self) -> "GfElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self ** (self.field.order - 2)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def to_int(self) -> int:
        value = 0
        for c in reversed(self.coeffs):
            value = value * self.field.p + c
        return value

    def __repr__(self) -> str:
        return f"GfElement({self.to_int()} in GF({self.field.order}))"


def make_field(p: int, k: int = 1) -> GfField:
    """Construct GF(p^k) with the deterministic (smallest) modulus polynomial.

    For k = 1 the stored modulus is the placeholder x and arithmetic is plain
    integer arithmetic mod p.
    """
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    if not 1 <= k <= MAX_EXTENSION_DEGREE:
        raise DegreeOutOfRangeError(
            f"extension degree {k} outside [1, {MAX_EXTENSION_DEGREE}]")
    order = p**k
    if order > MAX_FIELD_ORDER:
        raise DegreeOutOfRangeError(f"field order {order} exceeds the native cap")
    return GfField(p=p, k=k, modulus_poly=_smallest_irreducible(p, k), order=order)


def element_order(a: GfElement) -> int:
    """Multiplicative order: the least t >= 1 with a^t = 1.  Divides order-1."""
    if a.is_zero():
        raise ZeroDivisionError("the zero element has no multiplicative order")
    n = a.field.order - 1
    if n == 0:
        raise ValueError("trivial group")
    one = a.field.one
    t = n
    for r in factorize(n):
        while t % r == 0 and a ** (t // r) == one:
            t //= r
    return t


def primitive_element(field: GfField) -> GfElement:
    """The least generator of the multiplicative group.

    Elements are scanned in increasing integer encoding; the first with full
    order is returned, so the result is deterministic for a given field.
    """
    n = field.order - 1
    if n == 0:
        raise ValueError("GF(1) does not exist")
    one = field.one
    prime_divisors = list(factorize(n)) if n > 1 else []
    for v in range(1, field.order):
        a = field.from_int(v)
        if any((a ** (n // r)) == one for r in prime_divisors):
            continue
        return a
    raise RuntimeError("no primitive element found (impossible for a field)")

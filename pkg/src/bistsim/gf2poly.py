"""Polynomials over GF(2).

A polynomial c_0 + c_1 x + ... + c_n x^n is stored as the integer whose bit j
is c_j, so ``0b1011`` is ``1 + x + x^3``.  Addition is XOR, and the degree is
the position of the highest set bit.  The zero polynomial has no degree
(``Gf2Poly(0).degree is None``).

Two text forms are understood by :func:`parse_poly`:

* caret form, e.g. ``"1+x^2+x^5"`` (terms in any order, ``x`` alone is x^1);
* hex mask form, e.g. ``"0x25"``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import total_ordering

from .errors import DegreeError, InvalidPolynomialError, PolyDomainError, PolyParseError

MAX_DEGREE = 63
MAX_PRIMITIVE_TEST_DEGREE = 32
MAX_ENUM_DEGREE = 24

__all__ = [
    "Gf2Poly",
    "parse_poly",
    "format_poly",
    "poly_divrem",
    "poly_mulmod",
    "poly_powmod",
    "poly_gcd",
    "is_char_poly",
    "is_irreducible",
    "is_primitive",
    "enumerate_primitive",
    "enumerate_char_polys",
    "prime_factors",
    "reciprocal",
]


def _degree(a: int) -> int:
    return a.bit_length() - 1


def _mul(a: int, b: int) -> int:
    if a < b:
        a, b = b, a
    c = 0
    while b:
        if b & 1:
            c ^= a
        a <<= 1
        b >>= 1
    return c


def _divmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise PolyDomainError("division by zero polynomial")
    db = _degree(b)
    q = 0
    while a and _degree(a) >= db:
        shift = _degree(a) - db
        q |= 1 << shift
        a ^= b << shift
    return q, a


def _mod(a: int, b: int) -> int:
    db = _degree(b)
    while a and _degree(a) >= db:
        a ^= b << (_degree(a) - db)
    return a


def _mulmod(a: int, b: int, m: int) -> int:
    return _mod(_mul(a, b), m)


def _powmod(a: int, e: int, m: int) -> int:
    result = 1 if _degree(m) > 0 else 0
    a = _mod(a, m)
    while e:
        if e & 1:
            result = _mulmod(result, a, m)
        a = _mulmod(a, a, m)
        e >>= 1
    return result


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _mod(a, b)
    return a


@total_ordering
@dataclass(frozen=True)
class Gf2Poly:
    """Immutable polynomial over GF(2); bit j of ``mask`` is the coefficient c_j.

    Instances order by ``mask``, which is also the enumeration order used
    throughout the package.
    """

    mask: int

    def __post_init__(self):
        if not isinstance(self.mask, int) or self.mask < 0:
            raise ValueError(f"coefficient mask must be a non-negative int, got {self.mask!r}")
        if self.mask.bit_length() - 1 > MAX_DEGREE:
            raise DegreeError(f"degree {self.mask.bit_length() - 1} exceeds {MAX_DEGREE}")

    @classmethod
    def from_exponents(cls, exponents) -> Gf2Poly:
        mask = 0
        for e in exponents:
            mask ^= 1 << e
        return cls(mask)

    @property
    def degree(self) -> int | None:
        return None if self.mask == 0 else _degree(self.mask)

    def coeff(self, j: int) -> int:
        return (self.mask >> j) & 1

    @property
    def exponents(self) -> list[int]:
        return [j for j in range(self.mask.bit_length()) if self.mask >> j & 1]

    def is_zero(self) -> bool:
        return self.mask == 0

    def __bool__(self):
        return self.mask != 0

    def __lt__(self, other):
        if not isinstance(other, Gf2Poly):
            return NotImplemented
        return self.mask < other.mask

    def __add__(self, other):
        return Gf2Poly(self.mask ^ _as_mask(other))

    __sub__ = __add__
    __radd__ = __add__
    __rsub__ = __add__

    def __mul__(self, other):
        return Gf2Poly(_mul(self.mask, _as_mask(other)))

    __rmul__ = __mul__

    def __divmod__(self, other):
        return poly_divrem(self, _as_poly(other))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Gf2Poly({format_poly(self)!r})"

    def hex(self) -> str:
        return format_poly(self, "hex")


def _as_mask(p) -> int:
    if isinstance(p, Gf2Poly):
        return p.mask
    if isinstance(p, int):
        return p
    raise TypeError(f"expected Gf2Poly or int, got {type(p).__name__}")


def _as_poly(p) -> Gf2Poly:
    return p if isinstance(p, Gf2Poly) else Gf2Poly(_as_mask(p))


_HEX_RE = re.compile(r"\s*0[xX]([0-9a-fA-F]+)\s*\Z")
_TERM_RE = re.compile(r"\s*(?:(?P<one>1)|(?P<zero>0)|[xX](?:\s*\^\s*(?P<exp>\d+))?)\s*")


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8"))


def parse_poly(text: str) -> Gf2Poly:
    """Parse caret form (``"1+x+x^3"``) or hex mask form (``"0xb"``).

    Repeated terms cancel, so ``"x^2+x^2"`` is the zero polynomial.
    """
    if isinstance(text, Gf2Poly):
        return text
    m = _HEX_RE.match(text)
    if m:
        mask = int(m.group(1), 16)
        if mask.bit_length() - 1 > MAX_DEGREE:
            raise DegreeError(f"degree {mask.bit_length() - 1} exceeds {MAX_DEGREE} in {text!r}")
        return Gf2Poly(mask)

    mask = 0
    pos = 0
    n = len(text)
    if not text.strip():
        raise PolyParseError("empty polynomial", text, 0)
    while True:
        m = _TERM_RE.match(text, pos)
        if m is None or m.end() == pos or (m.group("one") is None and m.group("zero") is None
                                           and "x" not in m.group(0).lower()):
            raise PolyParseError("expected a term ('1', 'x' or 'x^k')", text, _byte_offset(text, pos))
        if m.group("exp") is not None:
            e = int(m.group("exp"))
            if e > MAX_DEGREE:
                raise DegreeError(f"exponent {e} exceeds {MAX_DEGREE} in {text!r}")
            mask ^= 1 << e
        elif m.group("one") is not None:
            mask ^= 1
        elif m.group("zero") is None:
            mask ^= 2
        pos = m.end()
        if pos == n:
            break
        if text[pos] != "+":
            raise PolyParseError(f"unexpected character {text[pos]!r}", text, _byte_offset(text, pos))
        pos += 1
    return Gf2Poly(mask)


def format_poly(p: Gf2Poly, form: str = "caret") -> str:
    """Render ``p`` as ``"1+x+x^3"`` (ascending powers) or ``"0xb"``."""
    if form == "hex":
        return hex(p.mask)
    if form != "caret":
        raise ValueError(f"unknown polynomial form {form!r}")
    if p.mask == 0:
        return "0"
    terms = []
    for j in p.exponents:
        terms.append("1" if j == 0 else "x" if j == 1 else f"x^{j}")
    return "+".join(terms)


def poly_divrem(dividend: Gf2Poly, divisor: Gf2Poly) -> tuple[Gf2Poly, Gf2Poly]:
    """Return ``(q, r)`` with ``dividend = q*divisor + r`` and deg r < deg divisor."""
    if _as_mask(divisor) == 0:
        raise PolyDomainError("division by zero polynomial")
    q, r = _divmod(_as_mask(dividend), _as_mask(divisor))
    return Gf2Poly(q), Gf2Poly(r)


def poly_mulmod(a: Gf2Poly, b: Gf2Poly, m: Gf2Poly) -> Gf2Poly:
    if _as_mask(m) == 0:
        raise PolyDomainError("modulus is the zero polynomial")
    return Gf2Poly(_mulmod(_as_mask(a), _as_mask(b), _as_mask(m)))


def poly_powmod(a: Gf2Poly, e: int, m: Gf2Poly) -> Gf2Poly:
    if _as_mask(m) == 0:
        raise PolyDomainError("modulus is the zero polynomial")
    if e < 0:
        raise ValueError("negative exponent")
    return Gf2Poly(_powmod(_as_mask(a), e, _as_mask(m)))


def poly_gcd(a: Gf2Poly, b: Gf2Poly) -> Gf2Poly:
    return Gf2Poly(_gcd(_as_mask(a), _as_mask(b)))


def reciprocal(p: Gf2Poly, n: int | None = None) -> Gf2Poly:
    """Degree-n reciprocal x^n p(1/x); ``n`` defaults to deg p."""
    if n is None:
        if p.degree is None:
            return p
        n = p.degree
    if p.degree is not None and p.degree > n:
        raise DegreeError(f"degree {p.degree} exceeds reciprocal order {n}")
    mask = 0
    for j in p.exponents:
        mask |= 1 << (n - j)
    return Gf2Poly(mask)


def is_char_poly(p: Gf2Poly) -> bool:
    """True when c_0 = 1 and deg p >= 1 (c_n = 1 holds by definition of degree)."""
    return p.mask & 1 == 1 and p.mask > 1


def require_char_poly(p: Gf2Poly, min_degree: int = 1, max_degree: int = MAX_DEGREE) -> int:
    """Validate ``p`` as a characteristic polynomial and return its degree."""
    if not isinstance(p, Gf2Poly):
        raise TypeError(f"expected Gf2Poly, got {type(p).__name__}")
    if p.degree is None or p.degree == 0:
        raise InvalidPolynomialError(f"{p} has no positive degree")
    if not p.mask & 1:
        raise InvalidPolynomialError(f"{p} has no constant term (c_0 must be 1)")
    if not min_degree <= p.degree <= max_degree:
        raise DegreeError(f"degree {p.degree} of {p} outside [{min_degree}, {max_degree}]")
    return p.degree


def prime_factors(m: int) -> list[int]:
    """Distinct prime factors of ``m`` by trial division, ascending."""
    if m < 1:
        raise ValueError("m must be positive")
    primes = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            primes.append(d)
            while m % d == 0:
                m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        primes.append(m)
    return primes


def _check_test_degree(p: Gf2Poly) -> int:
    n = p.degree
    if n is None or n == 0 or n > MAX_PRIMITIVE_TEST_DEGREE:
        raise DegreeError(f"primitivity test supports degrees 1..{MAX_PRIMITIVE_TEST_DEGREE}, got {n}")
    return n


def is_irreducible(p: Gf2Poly) -> bool:
    """Rabin's test: x^(2^n) = x mod p and gcd(x^(2^(n/q)) - x, p) = 1 for primes q | n."""
    n = _check_test_degree(p)
    m = p.mask
    if n == 1:
        return True
    if not m & 1:
        return False
    for q in prime_factors(n):
        h = _powmod(2, 1 << (n // q), m) ^ 2
        if _gcd(m, h) != 1:
            return False
    return _powmod(2, 1 << n, m) == 2


def is_primitive(p: Gf2Poly) -> bool:
    """True iff ``p`` is irreducible and x has multiplicative order 2^n - 1 modulo ``p``.

    Polynomials without a constant term return False; degrees outside
    1..32 raise :class:`DegreeError`.
    """
    n = _check_test_degree(p)
    m = p.mask
    if not m & 1:
        return False
    if not is_irreducible(p):
        return False
    order = (1 << n) - 1
    if n == 1:
        # GF(2)[x]/(1+x) has the single unit 1 = x
        return True
    if _powmod(2, order, m) != 1:
        return False
    return all(_powmod(2, order // q, m) != 1 for q in prime_factors(order))


def _check_enum_degree(n: int) -> None:
    if not isinstance(n, int) or not 1 <= n <= MAX_ENUM_DEGREE:
        raise DegreeError(f"enumeration supports degrees 1..{MAX_ENUM_DEGREE}, got {n!r}")


def enumerate_char_polys(n: int) -> list[Gf2Poly]:
    """Every degree-n polynomial with c_0 = c_n = 1, ascending by mask."""
    _check_enum_degree(n)
    if n == 1:
        return [Gf2Poly(0b11)]
    top = 1 << n
    return [Gf2Poly(top | (mid << 1) | 1) for mid in range(1 << (n - 1))]


def enumerate_primitive(n: int) -> list[Gf2Poly]:
    """All primitive polynomials of degree ``n``, ascending by mask.

    The count is phi(2^n - 1) / n.
    """
    _check_enum_degree(n)
    found = []
    for p in enumerate_char_polys(n):
        # even weight means 1 + x divides p
        if n > 1 and p.mask.bit_count() % 2 == 0:
            continue
        if is_primitive(p):
            found.append(p)
    return found


def euler_phi(m: int) -> int:
    result = m
    for q in prime_factors(m):
        result -= result // q
    return result


def primitive_count(n: int) -> int:
    """phi(2^n - 1) / n, the number of primitive polynomials of degree n."""
    return euler_phi((1 << n) - 1) // n


"""Internal-XOR (Galois) multi-input signature register.

The state of a k-stage register is the polynomial
s(x) = r_k x^{k-1} + ... + r_2 x + r_1, stored as an integer with bit ``i-1``
holding r_i.  A response word D_k..D_1 is stored the same way.  One clock
computes

    s(x) <- (x * s(x) mod P(x)) + d(x)

which, written stage by stage, is: fb = r_k; r_1' = fb ^ D_1;
r_{j+1}' = r_j ^ (fb & c_j) ^ D_{j+1}.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DegreeError, DimensionError, InvalidPolynomialError
from .gf2poly import Gf2Poly, poly_divrem, require_char_poly

MIN_DEGREE = 2


def _check_poly(poly: Gf2Poly) -> int:
    k = require_char_poly(poly)
    if k < MIN_DEGREE:
        raise DegreeError(f"MISR polynomial needs degree >= {MIN_DEGREE}, got {poly} (degree {k})")
    return k


@dataclass(frozen=True)
class MisrState:
    """Register contents (bit ``i-1`` is r_i) together with the feedback polynomial."""

    value: int
    poly: Gf2Poly

    def __post_init__(self):
        k = _check_poly(self.poly)
        if not 0 <= self.value < (1 << k):
            raise DimensionError(f"state {self.value} does not fit in {k} stages")

    @classmethod
    def zero(cls, poly: Gf2Poly) -> MisrState:
        return cls(0, poly)

    @property
    def k(self) -> int:
        return self.poly.degree

    @property
    def bits(self) -> tuple[int, ...]:
        """``(r_1, ..., r_k)``."""
        return tuple((self.value >> i) & 1 for i in range(self.k))

    def as_poly(self) -> Gf2Poly:
        return Gf2Poly(self.value)

    def binary(self) -> str:
        """``r_k ... r_1``."""
        return format(self.value, f"0{self.k}b")

    def hex(self) -> str:
        return format(self.value, f"0{(self.k + 3) // 4}x")

    def __str__(self):
        return self.binary()


def word_from_bits(bits: Sequence[int]) -> int:
    """Pack ``(D_1, ..., D_k)`` into an integer word."""
    word = 0
    for i, b in enumerate(bits):
        word |= (int(b) & 1) << i
    return word


def _check_word(word: int, k: int) -> int:
    if isinstance(word, (tuple, list)):
        if len(word) != k:
            raise DimensionError(f"response word of width {len(word)} for a {k}-stage MISR")
        return word_from_bits(word)
    if not 0 <= word < (1 << k):
        raise DimensionError(f"response word {word:#x} wider than {k} stages")
    return word


def misr_step(state: MisrState, word) -> MisrState:
    """Clock one response word into the register.

    ``word`` is an int (bit ``j-1`` = D_j) or a length-k bit sequence.
    """
    k = state.k
    d = _check_word(word, k)
    s = state.value << 1
    if s >> k & 1:
        s ^= state.poly.mask
    return MisrState(s ^ d, state.poly)


def fold_words(mask: int, k: int, words: Iterable[int], init: int = 0) -> int:
    """Raw-integer MISR fold without per-step validation (hot path)."""
    top = 1 << k
    s = init
    for d in words:
        s <<= 1
        if s & top:
            s ^= mask
        s ^= d
    return s


def misr_signature(poly: Gf2Poly, words: Iterable, init: MisrState | None = None) -> MisrState:
    """Final register state after feeding ``words`` in order (first word first).

    An empty sequence returns ``init``; the default ``init`` is the zero state.
    """
    k = _check_poly(poly)
    if init is None:
        init = MisrState.zero(poly)
    elif init.poly != poly:
        raise InvalidPolynomialError(f"initial state uses {init.poly}, register uses {poly}")
    checked = [_check_word(w, k) for w in words]
    return MisrState(fold_words(poly.mask, k, checked, init.value), poly)


def sisr_mod_oracle(poly: Gf2Poly, bit_stream: Sequence[int]) -> Gf2Poly:
    """D(x) mod P(x) with the first bit as the coefficient of x^{L-1}."""
    require_char_poly(poly)
    d = 0
    for b in bit_stream:
        d = (d << 1) | (int(b) & 1)
    return poly_divrem(Gf2Poly(d), poly)[1]


def sisr_quotient_stream(poly: Gf2Poly, bit_stream: Sequence[int]) -> tuple[list[int], Gf2Poly]:
    """Single-input register run that also records the bit leaving stage k.

    Returns ``(quotient_bits, final_state)``.  The emitted bits, read
    first-to-last as descending powers ending at x^0, form QO(x).
    """
    k = _check_poly(poly)
    top = 1 << k
    s = 0
    out = []
    for b in bit_stream:
        s = (s << 1) | (int(b) & 1)
        q = 1 if s & top else 0
        if q:
            s ^= poly.mask
        out.append(q)
    return out, Gf2Poly(s)


def reconstruct_from_quotient(poly: Gf2Poly, quotient_stream: Sequence[int], remainder: Gf2Poly) -> Gf2Poly:
    """QO(x) * P(x) + s(x), where ``quotient_stream`` lists QO's coefficients MSB first."""
    k = require_char_poly(poly)
    if remainder.degree is not None and remainder.degree >= k:
        raise DegreeError(f"remainder {remainder} has degree >= {k}")
    q = 0
    for b in quotient_stream:
        q = (q << 1) | (int(b) & 1)
    return Gf2Poly(q) * poly + remainder

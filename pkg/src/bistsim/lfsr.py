"""External-XOR (Fibonacci) LFSR used as the pseudo-random test-pattern generator.

Register contents are held as integers with bit ``i-1`` holding stage q_i.
Each clock shifts q_{i+1} into q_i and loads q_n with the parity of the
tapped stages::

    q_n(t+1) = c_1 q_n(t) + c_2 q_{n-1}(t) + ... + c_n q_1(t)
    q_i(t+1) = q_{i+1}(t)                       for i < n

so the serial stream read off q_1 obeys a_q = sum_j c_j a_{q-j} for the
characteristic polynomial T(x) = 1 + sum_j c_j x^j.  Under this wiring the
companion matrix has characteristic polynomial equal to the reciprocal
x^n T(1/x); :func:`char_poly_of_matrix` computes it independently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import DegreeError, DimensionError, InvalidSeedError
from .gf2poly import Gf2Poly, _mul, require_char_poly

MAX_STAGES = 24
MAX_ORACLE_STAGES = 10


@dataclass(frozen=True)
class LfsrState:
    """An n-stage register value; bit ``i-1`` of ``value`` is q_i."""

    value: int
    n: int

    def __post_init__(self):
        if not 1 <= self.n <= MAX_STAGES:
            raise DimensionError(f"stage count {self.n} outside 1..{MAX_STAGES}")
        if not 0 <= self.value < (1 << self.n):
            raise DimensionError(f"state {self.value} does not fit in {self.n} stages")

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> LfsrState:
        """Build from ``(q_1, q_2, ..., q_n)``."""
        value = 0
        for i, b in enumerate(bits):
            value |= (int(b) & 1) << i
        return cls(value, len(bits))

    @classmethod
    def from_string(cls, text: str) -> LfsrState:
        """Parse ``"q_n...q_1"`` written most significant stage first, e.g. ``"001"``."""
        return cls(int(text, 2), len(text))

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.value >> i) & 1 for i in range(self.n))

    def is_zero(self) -> bool:
        return self.value == 0

    def __str__(self):
        return format(self.value, f"0{self.n}b")


@dataclass(frozen=True)
class TransitionMatrix:
    """Companion matrix [A] acting on column vectors ordered (q_n, ..., q_1)."""

    rows: np.ndarray = field(repr=False)
    poly: Gf2Poly

    @property
    def n(self) -> int:
        return self.rows.shape[0]

    def apply(self, state: LfsrState) -> LfsrState:
        return lfsr_step(state, self)

    def __eq__(self, other):
        if not isinstance(other, TransitionMatrix):
            return NotImplemented
        return self.poly == other.poly and np.array_equal(self.rows, other.rows)

    def __hash__(self):
        return hash((self.poly, self.rows.tobytes()))


def build_transition_matrix(t_poly: Gf2Poly) -> TransitionMatrix:
    """Companion matrix for ``t_poly``; the first row is ``[c_1, c_2, ..., c_n]``."""
    n = require_char_poly(t_poly, 1, MAX_STAGES)
    rows = np.zeros((n, n), dtype=np.uint8)
    rows[0, :] = [t_poly.coeff(j) for j in range(1, n + 1)]
    for i in range(1, n):
        rows[i, i - 1] = 1
    rows.setflags(write=False)
    return TransitionMatrix(rows, t_poly)


def _state_vector(state: LfsrState) -> np.ndarray:
    return np.array(state.bits[::-1], dtype=np.uint8)


def lfsr_step(state: LfsrState, matrix: TransitionMatrix) -> LfsrState:
    """One clock: [Q(t+1)] = [A][Q(t)] over GF(2)."""
    if state.n != matrix.n:
        raise DimensionError(f"{state.n}-stage state against {matrix.n}x{matrix.n} matrix")
    nxt = (matrix.rows.astype(np.int64) @ _state_vector(state)) & 1
    return LfsrState.from_bits(nxt[::-1].tolist())


def _taps(t_poly: Gf2Poly, n: int) -> int:
    # stage q_i is tapped with coefficient c_{n+1-i}
    taps = 0
    for i in range(1, n + 1):
        if t_poly.coeff(n + 1 - i):
            taps |= 1 << (i - 1)
    return taps


def _step_int(state: int, taps: int, n: int) -> int:
    fb = (state & taps).bit_count() & 1
    return (state >> 1) | (fb << (n - 1))


def _seed_value(seed, n: int) -> int:
    if isinstance(seed, LfsrState):
        if seed.n != n:
            raise DimensionError(f"{seed.n}-stage seed for a degree-{n} polynomial")
        value = seed.value
    else:
        value = int(seed)
    if value == 0:
        raise InvalidSeedError("the all-zero seed is a fixed point and generates no patterns")
    if not 0 < value < (1 << n):
        raise InvalidSeedError(f"seed {value} does not fit in {n} stages")
    return value


@lru_cache(maxsize=256)
def lfsr_period(t_poly: Gf2Poly) -> int:
    """Cycle length of the orbit through seed 00...01.

    Equals 2^n - 1 exactly when ``t_poly`` is primitive.
    """
    n = require_char_poly(t_poly, 1, MAX_STAGES)
    taps = _taps(t_poly, n)
    state = _step_int(1, taps, n)
    p = 1
    while state != 1:
        state = _step_int(state, taps, n)
        p += 1
    return p


def state_period(t_poly: Gf2Poly, state) -> int:
    """Cycle length from an arbitrary state; the zero state has period 1."""
    n = require_char_poly(t_poly, 1, MAX_STAGES)
    start = state.value if isinstance(state, LfsrState) else int(state)
    taps = _taps(t_poly, n)
    s = _step_int(start, taps, n)
    p = 1
    while s != start:
        s = _step_int(s, taps, n)
        p += 1
    return p


def generate_test_patterns(t_poly: Gf2Poly, seed, count: int) -> list[int]:
    """Successive register states A^t * seed for t = 0..count-1.

    Each pattern is an n-bit integer (bit ``i-1`` = q_i) applied in parallel
    to the circuit inputs.
    """
    n = require_char_poly(t_poly, 1, MAX_STAGES)
    state = _seed_value(seed, n)
    if count < 1:
        raise ValueError(f"pattern count must be >= 1, got {count}")
    taps = _taps(t_poly, n)
    out = [state]
    for _ in range(count - 1):
        state = _step_int(state, taps, n)
        out.append(state)
    return out


def serial_stream(t_poly: Gf2Poly, state, count: int) -> list[int]:
    """Bits shifted out of stage q_1, starting with q_1 of ``state``."""
    n = require_char_poly(t_poly, 1, MAX_STAGES)
    s = state.value if isinstance(state, LfsrState) else int(state)
    taps = _taps(t_poly, n)
    bits = []
    for _ in range(count):
        bits.append(s & 1)
        s = _step_int(s, taps, n)
    return bits


def numerator_poly(t_poly: Gf2Poly, initial_bits: Sequence[int]) -> Gf2Poly:
    """B(x) for the history ``initial_bits = (a_{-1}, a_{-2}, ..., a_{-n})``.

    B(x) = sum_j c_j (a_{-j} + a_{-j+1} x + ... + a_{-1} x^{j-1}).
    """
    n = require_char_poly(t_poly, 1, MAX_STAGES)
    if len(initial_bits) != n:
        raise DimensionError(f"need {n} initial bits, got {len(initial_bits)}")
    mask = 0
    for j in range(1, n + 1):
        if not t_poly.coeff(j):
            continue
        for m in range(j):
            # coefficient of x^m inside the j-th bracket is a_{m-j}
            if initial_bits[j - m - 1] & 1:
                mask ^= 1 << m
    return Gf2Poly(mask)


def stream_by_long_division(t_poly: Gf2Poly, initial_bits: Sequence[int], count: int) -> list[int]:
    """First ``count`` coefficients of the power series B(x) / T(x).

    Ascending-power long division: take the constant term of the running
    remainder as the next quotient bit, cancel it with T, divide by x.
    """
    require_char_poly(t_poly, 1, MAX_STAGES)
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    rem = numerator_poly(t_poly, initial_bits).mask
    t = t_poly.mask
    out = []
    for _ in range(count):
        bit = rem & 1
        out.append(bit)
        if bit:
            rem ^= t
        rem >>= 1
    return out


def history_from_state(state: LfsrState) -> list[int]:
    """History ``(a_{-1}, ..., a_{-n})`` equal to the first n serial bits of ``state``."""
    return list(state.bits[::-1])


def matching_state(t_poly: Gf2Poly, initial_bits: Sequence[int]) -> LfsrState:
    """Register state whose q_1 output stream starts at a_0 for the given history."""
    n = require_char_poly(t_poly, 1, MAX_STAGES)
    if len(initial_bits) != n:
        raise DimensionError(f"need {n} initial bits, got {len(initial_bits)}")
    s = LfsrState.from_bits(list(initial_bits)[::-1]).value
    taps = _taps(t_poly, n)
    for _ in range(n):
        s = _step_int(s, taps, n)
    return LfsrState(s, n)


def char_poly_of_matrix(matrix) -> Gf2Poly:
    """det(A + xI) over GF(2)[x] by cofactor expansion (at most 10x10).

    Entries are GF(2)[x] polynomials; minors are memoised on the set of
    remaining columns so the expansion stays cheap.  No use is made of the
    companion structure.
    """
    rows = matrix.rows if isinstance(matrix, TransitionMatrix) else np.asarray(matrix)
    if rows.ndim != 2 or rows.shape[0] != rows.shape[1]:
        raise DimensionError(f"matrix must be square, got shape {rows.shape}")
    n = rows.shape[0]
    if n > MAX_ORACLE_STAGES:
        raise DegreeError(f"cofactor expansion limited to n <= {MAX_ORACLE_STAGES}, got {n}")
    entries = [[(int(rows[i, j]) & 1) ^ (0b10 if i == j else 0) for j in range(n)] for i in range(n)]

    @lru_cache(maxsize=None)
    def minor(r: int, cols: int) -> int:
        if r == n:
            return 1
        total = 0
        for c in range(n):
            if cols >> c & 1 and entries[r][c]:
                total ^= _mul(entries[r][c], minor(r + 1, cols & ~(1 << c)))
        return total

    return Gf2Poly(minor(0, (1 << n) - 1))

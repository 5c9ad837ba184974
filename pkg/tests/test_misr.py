import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bistsim.errors import DegreeError, DimensionError
from bistsim.gf2poly import Gf2Poly, enumerate_primitive, parse_poly, poly_divrem
from bistsim.misr import (
    MisrState,
    misr_signature,
    misr_step,
    reconstruct_from_quotient,
    sisr_mod_oracle,
    sisr_quotient_stream,
)
from oracles import naive_signature

P3 = parse_poly("1+x+x^3")
P4 = parse_poly("1+x+x^4")


class TestStep:
    @pytest.mark.parametrize("word", range(8))
    def test_zero_state_loads_word(self, word):
        assert misr_step(MisrState.zero(P3), word).value == word

    def test_feedback(self):
        st0 = MisrState(0b1000, P4)
        assert misr_step(st0, 0).binary() == "0011"
        assert poly_divrem(parse_poly("x^4"), P4)[1] == Gf2Poly(0b0011)

    def test_word_injection(self):
        assert misr_step(MisrState(0b011, P3), 0b001).binary() == "111"

    def test_stagewise_rule(self):
        # fb = r_k; r1' = fb ^ D1; r_{j+1}' = r_j ^ (fb & c_j) ^ D_{j+1}
        p = parse_poly("1+x^2+x^3+x^4+x^5")
        k = 5
        for state in range(32):
            for word in (0, 1, 0b10110, 31):
                r = [(state >> i) & 1 for i in range(k)]
                d = [(word >> i) & 1 for i in range(k)]
                fb = r[k - 1]
                nxt = [fb ^ d[0]] + [r[j - 1] ^ (fb & p.coeff(j)) ^ d[j] for j in range(1, k)]
                assert misr_step(MisrState(state, p), word).bits == tuple(nxt)

    def test_bit_sequence_word(self):
        assert misr_step(MisrState.zero(P3), (1, 0, 1)).value == 0b101

    def test_width_mismatch(self):
        with pytest.raises(DimensionError):
            misr_step(MisrState.zero(P3), 0b1000)
        with pytest.raises(DimensionError):
            misr_step(MisrState.zero(P3), (1, 0))


class TestSignature:
    def test_degree_one_rejected(self):
        with pytest.raises(DegreeError):
            misr_signature(parse_poly("1+x"), [1])

    def test_single_input(self):
        assert misr_signature(P3, [1, 0, 0]).binary() == "100"

    def test_zero_stream(self):
        assert misr_signature(P4, [0] * 20).value == 0

    def test_empty_returns_init(self):
        init = MisrState(0b101, P3)
        assert misr_signature(P3, [], init) == init
        assert misr_signature(P3, []).value == 0

    def test_rendering(self):
        sig = MisrState(0b1011, P4)
        assert sig.binary() == "1011"
        assert sig.hex() == "b"

    @given(st.data())
    def test_linearity(self, data):
        p = data.draw(st.sampled_from(enumerate_primitive(4) + enumerate_primitive(5)))
        k = p.degree
        L = data.draw(st.integers(1, 40))
        a = data.draw(st.lists(st.integers(0, 2**k - 1), min_size=L, max_size=L))
        b = data.draw(st.lists(st.integers(0, 2**k - 1), min_size=L, max_size=L))
        xor = [x ^ y for x, y in zip(a, b)]
        assert misr_signature(p, xor).value == misr_signature(p, a).value ^ misr_signature(p, b).value

    @given(st.data())
    def test_multi_input_matches_polynomial_oracle(self, data):
        p = data.draw(st.sampled_from([q for n in range(2, 7) for q in enumerate_primitive(n)]))
        k = p.degree
        words = data.draw(st.lists(st.integers(0, 2**k - 1), min_size=1, max_size=40))
        bits = [[(w >> j) & 1 for j in range(k)] for w in words]
        assert misr_signature(p, words).value == naive_signature(p.mask, bits)

    def test_aliasing_iff_zero_difference_signature(self):
        # every k = 3 stream of length <= 3 against the all-zero reference stream of that length
        for L in range(1, 4):
            streams = [[(v >> (3 * t)) & 7 for t in range(L)] for v in range(8**L)]
            sigs = [misr_signature(P3, s).value for s in streams]
            ref = streams[0]
            for s, sig in zip(streams, sigs):
                diff = [x ^ y for x, y in zip(s, ref)]
                assert (sig == sigs[0]) == (misr_signature(P3, diff).value == 0)


class TestSisrOracle:
    def test_examples(self):
        assert sisr_mod_oracle(P3, [1, 0, 0]) == parse_poly("x^2")
        assert sisr_mod_oracle(P3, [0] * 9).is_zero()
        assert sisr_mod_oracle(P3, [1, 1, 1, 0, 1, 0, 0]).is_zero()
        q, r = poly_divrem(parse_poly("x^6+x^5+x^4+x^2"), P3)
        assert r.is_zero() and q * P3 == parse_poly("x^6+x^5+x^4+x^2")

    def test_equivalence(self):
        rng = random.Random(7)
        for n in range(2, 7):
            for p in enumerate_primitive(n):
                for _ in range(50):
                    L = rng.randint(1, 64)
                    bits = [rng.randint(0, 1) for _ in range(L)]
                    assert misr_signature(p, bits).as_poly() == sisr_mod_oracle(p, bits)


class TestQuotient:
    def test_example(self):
        assert reconstruct_from_quotient(P3, [1, 0], parse_poly("x^2+x")) == parse_poly("x^4")

    def test_zero_quotient(self):
        r = parse_poly("1+x")
        assert reconstruct_from_quotient(P3, [], r) == r
        assert reconstruct_from_quotient(P3, [0, 0], r) == r

    def test_remainder_too_large(self):
        with pytest.raises(DegreeError):
            reconstruct_from_quotient(P3, [1], parse_poly("x^3"))

    @given(st.integers(0, 2**13 - 1), st.sampled_from(enumerate_primitive(3) + enumerate_primitive(5)))
    def test_divrem_round_trip(self, d, p):
        q, r = poly_divrem(Gf2Poly(d), p)
        qbits = [int(b) for b in format(q.mask, "b")] if q.mask else []
        assert reconstruct_from_quotient(p, qbits, r) == Gf2Poly(d)

    @given(st.lists(st.integers(0, 1), min_size=1, max_size=30), st.sampled_from(enumerate_primitive(4)))
    def test_register_quotient_stream(self, bits, p):
        qbits, rem = sisr_quotient_stream(p, bits)
        d = int("".join(map(str, bits)), 2)
        assert rem == misr_signature(p, bits).as_poly()
        assert reconstruct_from_quotient(p, qbits, rem) == Gf2Poly(d)

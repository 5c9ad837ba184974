"""
Primitive polynomials and maximal-length LFSRs
==============================================

A characteristic polynomial with c_0 = c_n = 1 is primitive exactly when the
LFSR it wires up cycles through every nonzero state.  This script lists them
for small degrees and checks the period of each one.
"""

from bistsim.gf2poly import enumerate_char_polys, enumerate_primitive, parse_poly, primitive_count
from bistsim.lfsr import lfsr_period

# %%
# How many are there?  The count is phi(2^n - 1) / n.
for n in range(2, 11):
    print(f"degree {n:2d}: {primitive_count(n):3d} primitive of {len(enumerate_char_polys(n)):4d} candidates")

# %%
# Degree 5 in full, with the period from seed 1.
for p in enumerate_primitive(5):
    print(f"{str(p):24s} {p.hex():6s} period {lfsr_period(p)}")

# %%
# A non-primitive polynomial gives a shorter cycle.
for text in ("1+x+x^2+x^3+x^4", "1+x^2+x^4", "1+x+x^4"):
    p = parse_poly(text)
    print(f"{text:18s} period {lfsr_period(p):2d} of 15")

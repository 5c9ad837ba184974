"""
Patterns from an LFSR, and the same stream by long division
===========================================================

Each clock applies the transition matrix to the state vector.  The serial
output stream can also be read off as the power series B(x) / T(x), with the
numerator set by the initial loading.
"""

import numpy as np

from bistsim.gf2poly import parse_poly
from bistsim.lfsr import (
    LfsrState,
    build_transition_matrix,
    char_poly_of_matrix,
    generate_test_patterns,
    history_from_state,
    lfsr_step,
    serial_stream,
    stream_by_long_division,
)

t = parse_poly("1+x+x^3")
m = build_transition_matrix(t)
print("transition matrix, columns q3 q2 q1:")
print(m.rows)

# %%
# Step the register by hand, then compare with the pattern generator.
state = LfsrState.from_string("001")
walk = []
for _ in range(7):
    walk.append(str(state))
    state = lfsr_step(state, m)
print("by matrix :", walk)
print("generator :", [format(v, "03b") for v in generate_test_patterns(t, 1, 7)])

# %%
# A different seed only rotates the same cycle.
print("seed 111  :", [format(v, "03b") for v in generate_test_patterns(t, 0b111, 7)])

# %%
# Long division reproduces the serial stream once the n history bits are dropped.
start = LfsrState.from_string("101")
div = stream_by_long_division(t, history_from_state(start), 14)
sim = serial_stream(t, start, 17)[3:]
print("division  :", "".join(map(str, div)))
print("simulated :", "".join(map(str, sim)))

# %%
# The matrix's characteristic polynomial is the reciprocal of T.
print("char poly of matrix:", char_poly_of_matrix(m), " T:", t)
print("det over GF(2):", int(round(np.linalg.det(m.rows))) % 2)

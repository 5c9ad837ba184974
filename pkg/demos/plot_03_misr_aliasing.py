"""
Signature compaction and aliasing
=================================

A MISR folds a stream of response words into a k-bit signature.  Two streams
alias when their difference stream compacts to zero, so a k-stage register
maps roughly one in 2^k error streams onto the fault-free signature.
"""

import random

from bistsim.gf2poly import parse_poly
from bistsim.misr import misr_signature, sisr_mod_oracle

p = parse_poly("1+x+x^4")

# %%
# With one input the signature is the stream polynomial mod P.
bits = [1, 0, 1, 1, 0, 0, 1, 0, 1]
print("register :", misr_signature(p, bits).binary())
print("remainder:", sisr_mod_oracle(p, bits))

# %%
# Random error streams on a 4-bit MISR: the fraction that aliases.
rng = random.Random(1)
good = [rng.getrandbits(4) for _ in range(40)]
s_g = misr_signature(p, good).value
trials, aliased = 20000, 0
for _ in range(trials):
    bad = [w ^ rng.getrandbits(4) for w in good]
    if bad != good and misr_signature(p, bad).value == s_g:
        aliased += 1
print(f"aliased {aliased} of {trials} ({aliased / trials:.4f}, 2^-4 = {2 ** -4:.4f})")

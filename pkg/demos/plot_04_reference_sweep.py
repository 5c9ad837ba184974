"""
Aliasing sweep over the reference circuits
==========================================

Every primitive T drives the inputs from every nonzero seed, every primitive
P compacts the outputs, and each stuck-at fault is classed as detected,
aliased or untested.  RC counts the faults whose signature matches the
fault-free one.  The last part checks whether RC depends on the seed.
"""

from bistsim.experiment import ExperimentConfig, check_seed_invariance, format_verdicts, run_sweep
from bistsim.gf2poly import enumerate_primitive
from bistsim.netlist import parse_netlist
from bistsim.reference import load_reference

net = load_reference("C-1")
report = run_sweep(ExperimentConfig.primitive(net))
print("\n".join(report.header_lines()))
for row in report.rows[:7]:
    print(f"T={row.t_poly}  P={row.p_poly}  seed={row.seed}  "
          f"(det, ali, unt)={row.triple}  RC={row.rc}")

# %%
# The reference circuits have unequal input and output counts, so T and P differ in
# degree.  Here RC moves with the seed.
print(format_verdicts(check_seed_invariance(report)))

# %%
# With as many outputs as inputs and T = P, a seed change only rotates the
# response stream, and RC stays put.
syn = parse_netlist("""
INPUT(a)
INPUT(b)
INPUT(c)
OUTPUT(x)
OUTPUT(y)
OUTPUT(z)
n1 = AND(a, b)
n2 = OR(b, c)
x = XOR(n1, c)
y = NAND(n2, a)
z = NOR(n1, n2)
""", "syn3")
for t in enumerate_primitive(3):
    same = run_sweep(ExperimentConfig(syn, [t], [t]))
    print(format_verdicts(check_seed_invariance(same)), end="")

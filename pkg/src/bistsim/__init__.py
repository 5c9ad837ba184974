"""LFSR-based built-in self test simulation.

Pseudo-random patterns come from an external-XOR LFSR, circuit responses are
compacted by an internal-XOR MISR, and single stuck-at faults are injected
into gate-level combinational netlists to measure signature aliasing across
characteristic polynomials and PRTPG seeds.
"""

from .errors import BistError
from .experiment import (
    AliasingReport,
    ExperimentConfig,
    FaultClass,
    check_seed_invariance,
    emit_report,
    run_single,
    run_sweep,
)
from .gf2poly import Gf2Poly, enumerate_primitive, is_primitive, parse_poly, poly_divrem
from .lfsr import (
    LfsrState,
    build_transition_matrix,
    char_poly_of_matrix,
    generate_test_patterns,
    lfsr_period,
    lfsr_step,
    stream_by_long_division,
)
from .misr import MisrState, misr_signature, misr_step, sisr_mod_oracle
from .netlist import Fault, Netlist, enumerate_faults, evaluate, evaluate_with_fault, parse_netlist
from .reference import load_reference

__version__ = "0.1.0"

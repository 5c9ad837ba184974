import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bistsim.errors import DimensionError, FaultError, NetlistError
from bistsim.netlist import (
    Fault,
    count_lines,
    enumerate_faults,
    evaluate,
    evaluate_with_fault,
    format_netlist,
    parse_netlist,
    simulate_patterns,
)
from bistsim.reference import REFERENCE_CIRCUITS, load_reference, reference_text
from conftest import bench
from oracles import NaiveCircuit

AND2 = "INPUT(a)\nINPUT(b)\nOUTPUT(y)\ny = AND(a, b)"
FULL_ADDER = """
INPUT(a)
INPUT(b)
INPUT(cin)
OUTPUT(sum)
OUTPUT(carry)
x = XOR(a, b)
sum = XOR(x, cin)
g = AND(a, b)
h = AND(x, cin)
carry = OR(g, h)
"""


class TestParse:
    def test_and(self):
        net = parse_netlist(AND2)
        assert (net.n_inputs, net.n_outputs, len(net.gates)) == (2, 1, 1)

    def test_case_insensitive_and_comments(self):
        net = parse_netlist("input(a)  # first\nInput(b)\noutput(y)\ny = nand(a,b)\n# done\n")
        assert net.gates[0].op == "NAND"

    def test_gate_order_independent_of_topology(self):
        net = parse_netlist("INPUT(a)\nOUTPUT(y)\ny = NOT(m)\nm = BUF(a)")
        assert evaluate(net, [1]) == (0,)
        assert net.order == (1, 0)

    @pytest.mark.parametrize("text,line,fragment", [
        ("INPUT(a)\nOUTPUT(y)\np = AND(q, a)\nq = AND(p, a)\ny = BUF(p)", 3, "cycle"),
        ("INPUT(a)\nOUTPUT(y)\ny = AND(a, b)", 3, "undefined"),
        ("INPUT(a)\nINPUT(b)\nOUTPUT(y)\ny = AND(a, b)\ny = OR(a, b)", 5, "already driven"),
        ("INPUT(a)\nINPUT(a)\nOUTPUT(a)", 2, "already driven"),
        ("INPUT(a)\nOUTPUT(y)\ny = NOT(a, a)", 3, "exactly 1"),
        ("INPUT(a)\nOUTPUT(y)\ny = AND(a)", 3, "at least 2"),
        ("INPUT(a)\nOUTPUT(y)\ny = MUX(a, a)", 3, "unknown gate"),
        ("INPUT(a)\nOUTPUT(y)\ny := BUF(a)", 3, "cannot parse"),
        ("INPUT(a)\nOUTPUT(z)\ny = BUF(a)", 2, "never driven"),
        ("INPUT(a)\nOUTPUT(y)\ny = BUF(1a)", 3, "bad net name"),
    ])
    def test_errors_carry_line(self, text, line, fragment):
        with pytest.raises(NetlistError) as info:
            parse_netlist(text)
        assert info.value.line == line
        assert fragment in str(info.value)

    def test_round_trip_format(self):
        net = load_reference("C-2")
        again = parse_netlist(format_netlist(net), net.name)
        assert again.gates == net.gates and again.inputs == net.inputs and again.outputs == net.outputs


class TestEvaluate:
    def test_and(self):
        net = parse_netlist(AND2)
        assert evaluate(net, (1, 1)) == (1,)
        assert evaluate(net, 0b01) == (0,)

    def test_full_adder(self):
        net = parse_netlist(FULL_ADDER)
        assert evaluate(net, (1, 1, 0)) == (0, 1)
        for a, b, c in itertools.product((0, 1), repeat=3):
            s, co = evaluate(net, (a, b, c))
            assert s + 2 * co == a + b + c

    def test_width_mismatch(self):
        with pytest.raises(DimensionError):
            evaluate(parse_netlist(AND2), (1,))
        with pytest.raises(DimensionError):
            evaluate(parse_netlist(AND2), 4)

    def test_multi_input_gates(self):
        net = parse_netlist("INPUT(a)\nINPUT(b)\nINPUT(c)\nOUTPUT(x)\nOUTPUT(n)\nx = XNOR(a, b, c)\nn = NOR(a, b, c)")
        for v in itertools.product((0, 1), repeat=3):
            assert evaluate(net, v) == (1 - sum(v) % 2, int(not any(v)))

    @pytest.mark.parametrize("name", ["syn3", "syn4", "syn5", "fanout2"])
    def test_matches_recursive_evaluation(self, name):
        text = bench(name)
        net, naive = parse_netlist(text), NaiveCircuit(text)
        for v in itertools.product((0, 1), repeat=net.n_inputs):
            assert list(evaluate(net, v)) == naive.evaluate(list(v))

    def test_packed_matches_single(self):
        net = load_reference("C-2")
        pats = list(range(32))
        words = simulate_patterns(net, pats)
        for p, w in zip(pats, words):
            bits = evaluate(net, p)
            assert w == sum(b << j for j, b in enumerate(bits))


class TestReferenceCircuits:
    def test_shapes(self):
        for key, ref in REFERENCE_CIRCUITS.items():
            net = load_reference(key)
            assert (net.n_inputs, net.n_outputs, len(net.gates)) == (ref.inputs, ref.outputs, ref.gates)

    def test_74ls139(self):
        net = load_reference("C-1")
        for g, a, b in itertools.product((0, 1), repeat=3):
            ys = evaluate(net, (g, a, b))
            expected = [1, 1, 1, 1]
            if g == 0:
                expected[2 * b + a] = 0
            assert list(ys) == expected

    def test_74ls82(self):
        net = load_reference("C-2")
        for a1, b1, a2, b2, c0 in itertools.product((0, 1), repeat=5):
            s1, s2, c2 = evaluate(net, (a1, b1, a2, b2, c0))
            assert s1 + 2 * s2 + 4 * c2 == (a1 + 2 * a2) + (b1 + 2 * b2) + c0

    def test_74h87(self):
        net = load_reference("C-3")
        for v in itertools.product((0, 1), repeat=6):
            a, b, c = v[:4], v[4], v[5]
            ys = evaluate(net, v)
            if (b, c) == (0, 0):
                assert list(ys) == [1 - x for x in a]
            elif (b, c) == (0, 1):
                assert list(ys) == list(a)  # pass-through
            elif (b, c) == (1, 0):
                assert ys == (1, 1, 1, 1)
            else:
                assert ys == (0, 0, 0, 0)

    @pytest.mark.parametrize("key", ["c1", "C1", "C-1", "c1_74ls139"])
    def test_name_forms(self, key):
        assert load_reference(key).name == "C-1"

    def test_text_available(self):
        assert "INPUT" in reference_text("C-3")


class TestFaults:
    def test_and_universe(self):
        faults = enumerate_faults(parse_netlist(AND2))
        assert [str(f) for f in faults] == ["a/sa0", "a/sa1", "b/sa0", "b/sa1", "y/sa0", "y/sa1"]

    def test_fanout_lines(self):
        net = parse_netlist(bench("fanout2"))
        on_a = [f for f in enumerate_faults(net) if f.net == "a"]
        assert len(on_a) == 6
        assert sum(f.is_branch for f in on_a) == 4

    def test_count_formula(self):
        for name in ("syn3", "syn4", "syn5", "fanout2", "buf3"):
            net = parse_netlist(bench(name))
            extra = sum(len(r) for r in net.fanout.values() if len(r) >= 2)
            assert len(enumerate_faults(net)) == 2 * (len(net.nets) + extra) == 2 * count_lines(net)

    @pytest.mark.parametrize("key,lines", [("C-1", 26), ("C-2", 54), ("C-3", 28)])
    def test_reference_hand_counts(self, key, lines):
        # C-1: 12 nets + EN(4) + AN(3) + BN(3) + AP(2) + BP(2) branches
        # C-2: 26 nets + 14 branches per adder stage
        # C-3: 20 nets + BN(4) + CN(4) branches
        assert count_lines(load_reference(key)) == lines

    def test_matches_naive_enumeration(self):
        for name in ("syn3", "syn4", "syn5", "fanout2"):
            text = bench(name)
            assert len(enumerate_faults(parse_netlist(text))) == len(NaiveCircuit(text).faults())

    def test_output_stuck(self):
        net = parse_netlist(AND2)
        for v in itertools.product((0, 1), repeat=2):
            assert evaluate_with_fault(net, v, Fault("y", 1)) == (1,)

    def test_input_stuck(self):
        assert evaluate_with_fault(parse_netlist(AND2), (1, 1), Fault("a", 0)) == (0,)

    def test_branch_is_local(self):
        net = parse_netlist(bench("fanout2"))
        # a feeds y = AND(a, b) on gate 0 pin 0 and z = OR(a, b) on gate 1 pin 0
        f = Fault("a", 0, gate=0, pin=0)
        for a, b in itertools.product((0, 1), repeat=2):
            y, z = evaluate_with_fault(net, (a, b), f)
            assert y == 0
            assert z == (a | b)
        stem = Fault("a", 0)
        for a, b in itertools.product((0, 1), repeat=2):
            assert evaluate_with_fault(net, (a, b), stem) == (0, b)

    def test_foreign_faults(self):
        net = parse_netlist(AND2)
        with pytest.raises(FaultError):
            evaluate_with_fault(net, (1, 1), Fault("q", 0))
        with pytest.raises(FaultError):
            evaluate_with_fault(net, (1, 1), Fault("a", 0, gate=0, pin=0))  # a has fanout 1
        with pytest.raises(FaultError):
            evaluate_with_fault(net, (1, 1), Fault("a", 2))

    @given(st.data())
    def test_unexcited_fault_is_invisible(self, data):
        net = load_reference(data.draw(st.sampled_from(["C-1", "C-2", "C-3"])))
        vec = data.draw(st.integers(0, 2**net.n_inputs - 1))
        fault = data.draw(st.sampled_from(enumerate_faults(net)))
        # value carried by the faulted line in the good circuit
        text = format_netlist(net)
        if fault.net not in net.outputs:
            text += f"OUTPUT({fault.net})\n"
        probe = parse_netlist(text, net.name)
        line_value = evaluate(probe, vec)[probe.outputs.index(fault.net)]
        if line_value == fault.stuck:
            assert evaluate_with_fault(net, vec, fault) == evaluate(net, vec)

    @pytest.mark.parametrize("name", ["syn3", "syn4", "fanout2"])
    def test_faulty_matches_naive(self, name):
        text = bench(name)
        net, naive = parse_netlist(text), NaiveCircuit(text)
        ours = enumerate_faults(net)
        theirs = naive.faults()
        # map naive fault tuples onto ours by identity of site
        for f in ours:
            match = [g for g in theirs if g[1] == f.net and g[3] == f.stuck and
                     (g[0] == "stem") == (not f.is_branch) and (g[2] == (f.gate, f.pin) if f.is_branch else True)]
            assert len(match) == 1
            for v in itertools.product((0, 1), repeat=net.n_inputs):
                assert list(evaluate_with_fault(net, v, f)) == naive.evaluate(list(v), match[0])

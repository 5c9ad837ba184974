"""Gate-level combinational netlists and single stuck-at faults.

Netlists use a line-oriented, bench-style grammar::

    # comment
    INPUT(a)
    OUTPUT(y)
    y = NAND(a, b)

Keywords and gate names are case-insensitive.  Declaration order matters:
the i-th ``INPUT`` is driven by PRTPG stage q_i and the j-th ``OUTPUT``
feeds MISR input D_j.

Evaluation is bit-parallel: every net carries a Python integer whose bit t
is the net's value under pattern t, so one pass over the gates simulates a
whole pattern block.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .errors import DimensionError, FaultError, NetlistError

GATE_OPS = ("AND", "OR", "NAND", "NOR", "XOR", "XNOR", "NOT", "BUF")
UNARY_OPS = ("NOT", "BUF")

_NAME = r"[A-Za-z_][A-Za-z0-9_]*"
_DECL_RE = re.compile(rf"^(INPUT|OUTPUT)\s*\(\s*({_NAME})\s*\)$", re.IGNORECASE)
_GATE_RE = re.compile(rf"^({_NAME})\s*=\s*([A-Za-z]+)\s*\((.*)\)$")
_NAME_RE = re.compile(rf"^{_NAME}$")


@dataclass(frozen=True)
class Gate:
    output: str
    op: str
    inputs: tuple[str, ...]


@dataclass(frozen=True)
class Fault:
    """Single stuck-at fault on a stem (``gate is None``) or a fanout branch.

    A branch fault sits on input pin ``pin`` of gate number ``gate``
    (declaration order) and is only visible to that gate.
    """

    net: str
    stuck: int
    gate: int | None = None
    pin: int | None = None

    @property
    def is_branch(self) -> bool:
        return self.gate is not None

    def __str__(self):
        where = self.net if self.gate is None else f"{self.net}>g{self.gate}.{self.pin}"
        return f"{where}/sa{self.stuck}"


@dataclass(frozen=True)
class Netlist:
    name: str
    inputs: tuple[str, ...]
    outputs: tuple[str, ...]
    gates: tuple[Gate, ...]
    # nets in the order they were defined (inputs and gate outputs interleaved)
    nets: tuple[str, ...]
    order: tuple[int, ...] = field(repr=False)
    fanout: dict = field(repr=False, compare=False)

    @property
    def n_inputs(self) -> int:
        return len(self.inputs)

    @property
    def n_outputs(self) -> int:
        return len(self.outputs)

    def summary(self) -> str:
        return (f"{self.name}: {self.n_inputs} inputs, {self.n_outputs} outputs, "
                f"{len(self.gates)} gates, {count_lines(self)} lines")

    def __hash__(self):
        return hash((self.name, self.inputs, self.outputs, self.gates))


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_netlist(text: str, name: str = "circuit") -> Netlist:
    """Parse and validate a netlist; errors carry the offending line number."""
    inputs: list[str] = []
    outputs: list[tuple[str, int]] = []
    gates: list[Gate] = []
    gate_lines: list[int] = []
    driver_line: dict[str, int] = {}
    nets: list[str] = []

    def define(net: str, lineno: int):
        if net in driver_line:
            raise NetlistError(f"net {net!r} already driven (first driver on line {driver_line[net]})", lineno)
        driver_line[net] = lineno
        nets.append(net)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        m = _DECL_RE.match(line)
        if m:
            kind, net = m.group(1).upper(), m.group(2)
            if kind == "INPUT":
                define(net, lineno)
                inputs.append(net)
            else:
                if any(o == net for o, _ in outputs):
                    raise NetlistError(f"output {net!r} declared twice", lineno)
                outputs.append((net, lineno))
            continue
        m = _GATE_RE.match(line)
        if not m:
            raise NetlistError(f"cannot parse {line!r}", lineno)
        out, op, args = m.group(1), m.group(2).upper(), m.group(3)
        if op not in GATE_OPS:
            raise NetlistError(f"unknown gate type {m.group(2)!r}", lineno)
        ins = [a.strip() for a in args.split(",")] if args.strip() else []
        for a in ins:
            if not _NAME_RE.match(a):
                raise NetlistError(f"bad net name {a!r}", lineno)
        if op in UNARY_OPS and len(ins) != 1:
            raise NetlistError(f"{op} takes exactly 1 input, got {len(ins)}", lineno)
        if op not in UNARY_OPS and len(ins) < 2:
            raise NetlistError(f"{op} needs at least 2 inputs, got {len(ins)}", lineno)
        define(out, lineno)
        gates.append(Gate(out, op, tuple(ins)))
        gate_lines.append(lineno)

    for g, lineno in zip(gates, gate_lines):
        for a in g.inputs:
            if a not in driver_line:
                raise NetlistError(f"undefined net {a!r}", lineno)
    for o, lineno in outputs:
        if o not in driver_line:
            raise NetlistError(f"output {o!r} is never driven", lineno)
    if not inputs:
        raise NetlistError("netlist declares no inputs")
    if not outputs:
        raise NetlistError("netlist declares no outputs")

    order = _topological_order(gates, gate_lines)
    fanout: dict[str, list[tuple[int, int]]] = {n: [] for n in nets}
    for gi, g in enumerate(gates):
        for pin, a in enumerate(g.inputs):
            fanout[a].append((gi, pin))
    return Netlist(name, tuple(inputs), tuple(o for o, _ in outputs), tuple(gates),
                   tuple(nets), order, {k: tuple(v) for k, v in fanout.items()})


def _topological_order(gates: list[Gate], gate_lines: list[int]) -> tuple[int, ...]:
    driver = {g.output: i for i, g in enumerate(gates)}
    pending = [sum(1 for a in g.inputs if a in driver) for g in gates]
    readers: dict[int, list[int]] = {i: [] for i in range(len(gates))}
    for i, g in enumerate(gates):
        for a in g.inputs:
            if a in driver:
                readers[driver[a]].append(i)
    ready = sorted(i for i, p in enumerate(pending) if p == 0)
    order = []
    while ready:
        i = ready.pop(0)
        order.append(i)
        for r in readers[i]:
            pending[r] -= 1
            if pending[r] == 0:
                ready.append(r)
        ready.sort()
    if len(order) != len(gates):
        stuck = min(i for i, p in enumerate(pending) if p > 0)
        raise NetlistError(f"combinational cycle through net {gates[stuck].output!r}", gate_lines[stuck])
    return tuple(order)


def load_netlist(path, name: str | None = None) -> Netlist:
    path = Path(path)
    return parse_netlist(path.read_text(), name or path.stem)


def format_netlist(net: Netlist) -> str:
    lines = [f"INPUT({i})" for i in net.inputs]
    lines += [f"OUTPUT({o})" for o in net.outputs]
    lines += [f"{g.output} = {g.op}({', '.join(g.inputs)})" for g in net.gates]
    return "\n".join(lines) + "\n"


def _apply(op: str, vals: list[int], ones: int) -> int:
    if op == "AND" or op == "NAND":
        v = ones
        for x in vals:
            v &= x
    elif op == "OR" or op == "NOR":
        v = 0
        for x in vals:
            v |= x
    elif op == "XOR" or op == "XNOR":
        v = 0
        for x in vals:
            v ^= x
    else:
        v = vals[0]
    if op in ("NAND", "NOR", "XNOR", "NOT"):
        v ^= ones
    return v


def check_fault(net: Netlist, fault: Fault) -> None:
    """Raise :class:`FaultError` unless ``fault`` is in the netlist's fault universe."""
    if fault.stuck not in (0, 1):
        raise FaultError(f"stuck value must be 0 or 1, got {fault.stuck!r}")
    if fault.net not in net.fanout:
        raise FaultError(f"fault {fault} names unknown net {fault.net!r}")
    if fault.gate is None:
        if fault.pin is not None:
            raise FaultError(f"stem fault {fault} must not name a pin")
        return
    if (fault.gate, fault.pin) not in net.fanout[fault.net]:
        raise FaultError(f"fault {fault}: gate {fault.gate} pin {fault.pin} does not read {fault.net!r}")
    if len(net.fanout[fault.net]) < 2:
        raise FaultError(f"fault {fault}: net {fault.net!r} has no fanout branches")


def simulate_packed(net: Netlist, packed_inputs: Sequence[int], width: int,
                    fault: Fault | None = None) -> list[int]:
    """Evaluate ``width`` patterns at once.

    ``packed_inputs[i]`` holds input i's value under pattern t in bit t.
    Returns one packed integer per output, in declared order.
    """
    if len(packed_inputs) != net.n_inputs:
        raise DimensionError(f"expected {net.n_inputs} inputs, got {len(packed_inputs)}")
    ones = (1 << width) - 1
    stem_net = branch = None
    forced = 0
    if fault is not None:
        check_fault(net, fault)
        forced = ones if fault.stuck else 0
        if fault.gate is None:
            stem_net = fault.net
        else:
            branch = (fault.gate, fault.pin)
    values: dict[str, int] = {}
    for name, v in zip(net.inputs, packed_inputs):
        values[name] = forced if name == stem_net else v & ones
    for gi in net.order:
        g = net.gates[gi]
        ins = [values[a] for a in g.inputs]
        if branch is not None and branch[0] == gi:
            ins[branch[1]] = forced
        v = _apply(g.op, ins, ones)
        values[g.output] = forced if g.output == stem_net else v
    return [values[o] for o in net.outputs]


def pack_patterns(patterns: Sequence[int], n: int) -> list[int]:
    """Transpose pattern words (bit i-1 = input i) into per-input bit planes."""
    planes = [0] * n
    for t, p in enumerate(patterns):
        for i in range(n):
            if p >> i & 1:
                planes[i] |= 1 << t
    return planes


def unpack_words(planes: Sequence[int], width: int) -> list[int]:
    """Inverse of :func:`pack_patterns` for output planes."""
    words = [0] * width
    for j, plane in enumerate(planes):
        bit = 1 << j
        t = 0
        while plane:
            if plane & 1:
                words[t] |= bit
            plane >>= 1
            t += 1
    return words


def simulate_patterns(net: Netlist, patterns: Sequence[int], fault: Fault | None = None) -> list[int]:
    """Response words (bit j-1 = output j) for each pattern word."""
    planes = simulate_packed(net, pack_patterns(patterns, net.n_inputs), len(patterns), fault)
    return unpack_words(planes, len(patterns))


def _vector_word(net: Netlist, input_vector) -> int:
    if isinstance(input_vector, int):
        if not 0 <= input_vector < (1 << net.n_inputs):
            raise DimensionError(f"input word {input_vector} wider than {net.n_inputs} inputs")
        return input_vector
    if len(input_vector) != net.n_inputs:
        raise DimensionError(f"expected {net.n_inputs} input bits, got {len(input_vector)}")
    word = 0
    for i, b in enumerate(input_vector):
        word |= (int(b) & 1) << i
    return word


def evaluate(net: Netlist, input_vector) -> tuple[int, ...]:
    """Output bits in declared order for one input vector.

    ``input_vector`` is a bit sequence in declared input order or an int
    with bit i-1 holding input i.
    """
    return evaluate_with_fault(net, input_vector, None)


def evaluate_with_fault(net: Netlist, input_vector, fault: Fault | None) -> tuple[int, ...]:
    word = _vector_word(net, input_vector)
    planes = [(word >> i) & 1 for i in range(net.n_inputs)]
    return tuple(simulate_packed(net, planes, 1, fault))


def enumerate_faults(net: Netlist) -> list[Fault]:
    """Uncollapsed single stuck-at faults, two per line.

    Every net is a line (its stem); a net read by two or more gate pins
    additionally contributes one line per reading pin.  Order: for each net
    in definition order, stem s-a-0, s-a-1; then the branches of all nets
    in (gate, pin) order, s-a-0 before s-a-1.
    """
    faults = []
    for n in net.nets:
        faults.append(Fault(n, 0))
        faults.append(Fault(n, 1))
    for gi, g in enumerate(net.gates):
        for pin, a in enumerate(g.inputs):
            if len(net.fanout[a]) >= 2:
                faults.append(Fault(a, 0, gi, pin))
                faults.append(Fault(a, 1, gi, pin))
    return faults


def count_lines(net: Netlist) -> int:
    """N_L: stems plus fanout branches."""
    return len(net.nets) + sum(len(r) for r in net.fanout.values() if len(r) >= 2)

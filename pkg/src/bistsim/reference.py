"""Reconstructed reference circuits C-1, C-2 and C-3 and their published targets."""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from .netlist import Netlist, parse_netlist


@dataclass(frozen=True)
class ReferenceCircuit:
    key: str
    filename: str
    part: str
    inputs: int
    outputs: int
    gates: int
    faults: int
    np: int
    ns: int


REFERENCE_CIRCUITS = {
    "C-1": ReferenceCircuit("C-1", "c1_74ls139.bench",
                            "SN74LS139 dual 2-to-4 line decoder/demultiplexer (one half)",
                            3, 4, 9, 58, 2, 7),
    "C-2": ReferenceCircuit("C-2", "c2_74ls82.bench", "SN74LS82 2-bit binary full adder",
                            5, 3, 21, 148, 6, 31),
    "C-3": ReferenceCircuit("C-3", "c3_74h87.bench",
                            "SN74H87 4-bit true/complement, zero/one element",
                            6, 4, 14, 64, 6, 63),
}


def _normalise(key: str) -> str | None:
    k = key.strip().upper().replace("_", "-")
    if k.endswith(".BENCH"):
        k = k[:-6]
    for ref in REFERENCE_CIRCUITS.values():
        if k in (ref.key, ref.key.replace("-", ""), ref.filename.upper()[:-6].replace("_", "-")):
            return ref.key
    return None


def is_reference(key: str) -> bool:
    return _normalise(key) is not None


def reference_info(key: str) -> ReferenceCircuit:
    norm = _normalise(key)
    if norm is None:
        raise KeyError(f"no reference circuit named {key!r}; choose from {sorted(REFERENCE_CIRCUITS)}")
    return REFERENCE_CIRCUITS[norm]


def reference_text(key: str) -> str:
    ref = reference_info(key)
    return resources.files("bistsim").joinpath("circuits").joinpath(ref.filename).read_text()


def load_reference(key: str) -> Netlist:
    """Parse one of the shipped reference netlists; ``key`` accepts ``"C-2"``, ``"c2"`` or the file stem."""
    ref = reference_info(key)
    return parse_netlist(reference_text(key), ref.key)

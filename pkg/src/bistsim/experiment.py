"""Aliasing sweeps over PRTPG polynomials, MISR polynomials and PRTPG seeds.

For every (T, P, seed) the fault-free circuit and each single stuck-at
fault are driven with one pattern block from the LFSR, the response words
are compacted by a zero-initialised MISR, and each fault is classified:

* UNTESTED - the faulty response stream equals the fault-free one;
* ALIASED  - the streams differ but the signatures agree;
* DETECTED - the signatures differ.

``rc`` counts signature matches (aliased + untested); ``aliased`` is the
strict count.
"""

from __future__ import annotations

import csv
import io
import json
import os
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Sequence

from .errors import DimensionError, InvalidSeedError, ReportError
from .gf2poly import Gf2Poly, enumerate_primitive, parse_poly, require_char_poly
from .lfsr import MAX_STAGES, generate_test_patterns, lfsr_period
from .misr import MIN_DEGREE, fold_words
from .netlist import Fault, Netlist, count_lines, enumerate_faults, simulate_patterns
from .reference import is_reference, reference_info

CSV_COLUMNS = ("circuit", "t_poly", "p_poly", "seed", "length", "detected", "aliased",
               "untested", "rc", "s_g_hex", "aliasing_probability")


class FaultClass(str, Enum):
    DETECTED = "DETECTED"
    ALIASED = "ALIASED"
    UNTESTED = "UNTESTED"


@dataclass(frozen=True)
class FaultOutcome:
    fault: Fault
    cls: FaultClass
    signature: int


@dataclass(frozen=True)
class ReportRow:
    circuit: str
    t_poly: Gf2Poly
    p_poly: Gf2Poly
    seed: int
    length: int
    detected: int
    aliased: int
    untested: int
    s_g: int
    outcomes: tuple[FaultOutcome, ...] | None = field(default=None, compare=False, repr=False)

    @property
    def total(self) -> int:
        return self.detected + self.aliased + self.untested

    @property
    def rc(self) -> int:
        return self.aliased + self.untested

    @property
    def triple(self) -> tuple[int, int, int]:
        return (self.detected, self.aliased, self.untested)

    @property
    def aliasing_probability(self) -> float:
        return self.aliased / self.total if self.total else 0.0

    @property
    def s_g_hex(self) -> str:
        k = self.p_poly.degree
        return format(self.s_g, f"0{(k + 3) // 4}x")

    def as_dict(self) -> dict:
        return {
            "circuit": self.circuit,
            "t_poly": str(self.t_poly),
            "p_poly": str(self.p_poly),
            "seed": self.seed,
            "length": self.length,
            "detected": self.detected,
            "aliased": self.aliased,
            "untested": self.untested,
            "rc": self.rc,
            "s_g_hex": self.s_g_hex,
            "aliasing_probability": f"{self.aliasing_probability:.6f}",
        }


@dataclass
class AliasingReport:
    circuit: str
    n_inputs: int
    n_outputs: int
    n_gates: int
    n_lines: int
    rows: list[ReportRow]

    @property
    def total_faults(self) -> int:
        return 2 * self.n_lines

    def pairs(self) -> list[tuple[Gf2Poly, Gf2Poly]]:
        seen = []
        for r in self.rows:
            if (r.t_poly, r.p_poly) not in seen:
                seen.append((r.t_poly, r.p_poly))
        return seen

    def header_lines(self) -> list[str]:
        lines = [f"circuit {self.circuit}: {self.n_inputs} inputs, {self.n_outputs} outputs, "
                 f"{self.n_gates} gates, N_L = {self.n_lines} lines, {self.total_faults} faults injected"]
        if is_reference(self.circuit):
            ref = reference_info(self.circuit)
            lines.append(f"reference {ref.key} ({ref.part}): {ref.inputs} inputs, {ref.outputs} outputs, "
                         f"{ref.gates} gates, {ref.faults} faults injected")
            delta = self.total_faults - ref.faults
            if delta or (self.n_inputs, self.n_outputs, self.n_gates) != (ref.inputs, ref.outputs, ref.gates):
                lines.append(f"delta: fault count {delta:+d} against reference "
                             "(reconstructed netlist, uncollapsed stem + fanout-branch line model)")
        return lines

    def metadata(self) -> dict:
        meta = {
            "circuit": self.circuit,
            "inputs": self.n_inputs,
            "outputs": self.n_outputs,
            "gates": self.n_gates,
            "lines": self.n_lines,
            "faults": self.total_faults,
        }
        if is_reference(self.circuit):
            ref = reference_info(self.circuit)
            meta["reference"] = {"part": ref.part, "inputs": ref.inputs, "outputs": ref.outputs,
                                 "gates": ref.gates, "faults": ref.faults,
                                 "fault_delta": self.total_faults - ref.faults}
        return meta

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for r in self.rows:
            writer.writerow(r.as_dict())
        return buf.getvalue()

    def to_json(self) -> str:
        doc = dict(self.metadata())
        doc["header"] = self.header_lines()
        doc["rows"] = [r.as_dict() for r in self.rows]
        return json.dumps(doc, indent=2) + "\n"

    def to_table(self) -> str:
        """RC matrix with PRTPG polynomials as rows and MISR polynomials as columns.

        Raises :class:`ReportError` if any pair's RC changes with the seed,
        since a single cell could not represent it.
        """
        if not self.rows:
            raise ReportError("empty report")
        verdicts = {(v.t_poly, v.p_poly): v for v in check_seed_invariance(self, min_seeds=1)}
        bad = [v for v in verdicts.values() if not v.invariant]
        if bad:
            v = bad[0]
            raise ReportError(f"RC for T={v.t_poly}, P={v.p_poly} varies with the seed "
                              f"({v.describe()}); cannot collapse to one table cell")
        t_polys = sorted({t for t, _ in verdicts})
        p_polys = sorted({p for _, p in verdicts})
        width0 = max(len("T \\ P"), *(len(str(t)) for t in t_polys))
        widths = [max(len(str(p)), 4) for p in p_polys]
        out = ["# " + line for line in self.header_lines()]
        n_seeds = {len(v.rc_by_seed) for v in verdicts.values()}
        out.append(f"# RC = faults whose signature equals the fault-free signature, "
                   f"identical over {'/'.join(map(str, sorted(n_seeds)))} seeds per cell")
        out.append("  ".join(["T \\ P".ljust(width0)] + [str(p).rjust(w) for p, w in zip(p_polys, widths)]))
        for t in t_polys:
            cells = []
            for p, w in zip(p_polys, widths):
                v = verdicts.get((t, p))
                cells.append(("-" if v is None else str(v.rc)).rjust(w))
            out.append("  ".join([str(t).ljust(width0)] + cells))
        return "\n".join(out) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "csv":
            return self.to_csv()
        if fmt == "json":
            return self.to_json()
        if fmt == "table":
            return self.to_table()
        raise ValueError(f"unknown report format {fmt!r}")


@dataclass(frozen=True)
class ExperimentConfig:
    """One sweep: ``seeds`` is ``"all"`` or a list of ints, ``pattern_length`` is ``"auto"`` or an int."""

    netlist: Netlist
    t_polys: tuple[Gf2Poly, ...]
    p_polys: tuple[Gf2Poly, ...]
    seeds: object = "all"
    pattern_length: object = "auto"

    def __post_init__(self):
        object.__setattr__(self, "t_polys", tuple(self.t_polys))
        object.__setattr__(self, "p_polys", tuple(self.p_polys))
        if not isinstance(self.seeds, str):
            object.__setattr__(self, "seeds", tuple(int(s) for s in self.seeds))
        self.validate()

    @classmethod
    def primitive(cls, netlist: Netlist, **kwargs) -> ExperimentConfig:
        """All primitive T of degree n_inputs against all primitive P of degree n_outputs."""
        return cls(netlist, enumerate_primitive(netlist.n_inputs),
                   enumerate_primitive(netlist.n_outputs), **kwargs)

    def validate(self) -> None:
        n, k = self.netlist.n_inputs, self.netlist.n_outputs
        if n > MAX_STAGES:
            raise DimensionError(f"{n} inputs exceed the {MAX_STAGES}-stage PRTPG limit")
        if not self.t_polys or not self.p_polys:
            raise ValueError("at least one PRTPG and one MISR polynomial are required")
        for t in self.t_polys:
            if require_char_poly(t) != n:
                raise DimensionError(f"PRTPG polynomial {t} has degree {t.degree}, circuit has {n} inputs")
        for p in self.p_polys:
            d = require_char_poly(p)
            if d < max(k, MIN_DEGREE):
                raise DimensionError(f"MISR polynomial {p} has degree {d}; need >= {max(k, MIN_DEGREE)} "
                                     f"for {k} outputs")
        if isinstance(self.seeds, str):
            if self.seeds != "all":
                raise ValueError(f"seeds must be 'all' or a list, got {self.seeds!r}")
        else:
            if not self.seeds:
                raise InvalidSeedError("empty seed list")
            for s in self.seeds:
                if not 0 < s < (1 << n):
                    raise InvalidSeedError(f"seed {s} is not a nonzero {n}-bit value")
        if self.pattern_length != "auto":
            if not isinstance(self.pattern_length, int) or self.pattern_length < 1:
                raise ValueError(f"pattern length must be 'auto' or a positive int, got {self.pattern_length!r}")

    def seed_list(self) -> list[int]:
        if self.seeds == "all":
            return list(range(1, 1 << self.netlist.n_inputs))
        return sorted(set(self.seeds))

    def length_for(self, t_poly: Gf2Poly) -> int:
        return lfsr_period(t_poly) if self.pattern_length == "auto" else self.pattern_length


def _classify(netlist: Netlist, faults: Sequence[Fault], t_poly: Gf2Poly, p_polys: Sequence[Gf2Poly],
              seed: int, length: int, keep_outcomes: bool) -> list[ReportRow]:
    patterns = generate_test_patterns(t_poly, seed, length)
    good = simulate_patterns(netlist, patterns)
    faulty = [simulate_patterns(netlist, patterns, f) for f in faults]
    rows = []
    for p in p_polys:
        k = p.degree
        s_g = fold_words(p.mask, k, good)
        counts = {c: 0 for c in FaultClass}
        outcomes = []
        for f, words in zip(faults, faulty):
            if words == good:
                cls, sig = FaultClass.UNTESTED, s_g
            else:
                sig = fold_words(p.mask, k, words)
                cls = FaultClass.ALIASED if sig == s_g else FaultClass.DETECTED
            counts[cls] += 1
            if keep_outcomes:
                outcomes.append(FaultOutcome(f, cls, sig))
        rows.append(ReportRow(netlist.name, t_poly, p, seed, length,
                              counts[FaultClass.DETECTED], counts[FaultClass.ALIASED],
                              counts[FaultClass.UNTESTED], s_g,
                              tuple(outcomes) if keep_outcomes else None))
    return rows


def run_single(netlist: Netlist, t_poly: Gf2Poly, p_poly: Gf2Poly, seed: int,
               length: int | None = None, keep_outcomes: bool = False) -> ReportRow:
    """One (T, P, seed) cell of the sweep; ``length`` defaults to the period of T."""
    t_poly, p_poly = parse_poly(t_poly), parse_poly(p_poly)
    config = ExperimentConfig(netlist, (t_poly,), (p_poly,), (seed,),
                              "auto" if length is None else length)
    faults = enumerate_faults(netlist)
    return _classify(netlist, faults, t_poly, (p_poly,), seed, config.length_for(t_poly), keep_outcomes)[0]


def _run_task(args):
    netlist, faults, t_poly, p_polys, seed, length, keep = args
    return _classify(netlist, faults, t_poly, p_polys, seed, length, keep)


def run_sweep(config: ExperimentConfig, jobs: int | None = 1, keep_outcomes: bool = False) -> AliasingReport:
    """Every (T, P, seed) row, ordered by T, then P, then seed.

    ``jobs`` > 1 farms (T, seed) cells out to worker processes; ``None`` uses
    every core.  Row order does not depend on ``jobs``.
    """
    net = config.netlist
    faults = enumerate_faults(net)
    p_polys = sorted(config.p_polys)
    tasks = [(net, faults, t, p_polys, s, config.length_for(t), keep_outcomes)
             for t in sorted(config.t_polys) for s in config.seed_list()]
    if jobs is None:
        jobs = os.cpu_count() or 1
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, len(tasks))) as pool:
            results = list(pool.map(_run_task, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        results = [_run_task(task) for task in tasks]
    rows = [r for chunk in results for r in chunk]
    rows.sort(key=lambda r: (r.t_poly, r.p_poly, r.seed))
    return AliasingReport(net.name, net.n_inputs, net.n_outputs, len(net.gates), count_lines(net), rows)


@dataclass(frozen=True)
class InvarianceVerdict:
    t_poly: Gf2Poly
    p_poly: Gf2Poly
    rc_by_seed: dict
    triple_by_seed: dict

    @property
    def invariant(self) -> bool:
        return len(set(self.rc_by_seed.values())) == 1

    @property
    def triple_invariant(self) -> bool:
        return len(set(self.triple_by_seed.values())) == 1

    @property
    def verdict(self) -> str:
        return "INVARIANT" if self.invariant else "VARIANT"

    @property
    def rc(self) -> int | None:
        return next(iter(self.rc_by_seed.values())) if self.invariant else None

    def seeds_by_rc(self) -> dict[int, list[int]]:
        groups = defaultdict(list)
        for s, rc in self.rc_by_seed.items():
            groups[rc].append(s)
        return dict(sorted(groups.items()))

    def describe(self) -> str:
        if self.invariant and self.triple_invariant:
            d, a, u = next(iter(self.triple_by_seed.values()))
            return f"RC={self.rc} (detected {d}, aliased {a}, untested {u}) for all {len(self.rc_by_seed)} seeds"
        if self.invariant:
            return f"RC={self.rc} for all seeds, but the (detected, aliased, untested) split varies"
        parts = [f"RC={rc} at seeds {','.join(map(str, seeds))}" for rc, seeds in self.seeds_by_rc().items()]
        return "; ".join(parts)


def check_seed_invariance(report: AliasingReport, min_seeds: int = 2) -> list[InvarianceVerdict]:
    """Per (T, P) pair, whether RC and the outcome triple are the same for every seed."""
    rc = defaultdict(dict)
    triples = defaultdict(dict)
    for r in report.rows:
        rc[(r.t_poly, r.p_poly)][r.seed] = r.rc
        triples[(r.t_poly, r.p_poly)][r.seed] = r.triple
    verdicts = []
    for key in report.pairs():
        if len(rc[key]) < min_seeds:
            raise ReportError(f"pair T={key[0]}, P={key[1]} has {len(rc[key])} seed(s); "
                              f"seed invariance needs at least {min_seeds}")
        verdicts.append(InvarianceVerdict(key[0], key[1], dict(rc[key]), dict(triples[key])))
    return verdicts


def format_verdicts(verdicts: Sequence[InvarianceVerdict]) -> str:
    lines = []
    for v in verdicts:
        tag = v.verdict if v.triple_invariant or not v.invariant else "INVARIANT (RC only)"
        lines.append(f"{str(v.t_poly):24s} {str(v.p_poly):24s} {tag:20s} {v.describe()}")
    return "\n".join(lines) + "\n"


def emit_report(report: AliasingReport, fmt: str = "csv", destination=None) -> str:
    """Render ``report`` as csv, json or table; write it to ``destination`` if given.

    ``destination`` may be a path or a writable text stream.
    """
    if not report.rows:
        raise ReportError("refusing to emit an empty report")
    text = report.render(fmt)
    if destination is None:
        return text
    if hasattr(destination, "write"):
        destination.write(text)
        return text
    try:
        Path(destination).write_text(text)
    except OSError as exc:
        raise ReportError(f"cannot write report to {destination}: {exc}") from exc
    return text

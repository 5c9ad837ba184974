"""Command-line front end: ``bistsim <subcommand> [flags]``.

Exit status is 0 on success, 1 on a domain error (bad polynomial, netlist,
seed, unwritable file, ...) and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import platform
import sys
import time
from pathlib import Path

from . import __version__
from .errors import BistError
from .experiment import (
    ExperimentConfig,
    check_seed_invariance,
    emit_report,
    format_verdicts,
    run_sweep,
)
from .gf2poly import enumerate_char_polys, enumerate_primitive, is_primitive, parse_poly
from .lfsr import LfsrState, generate_test_patterns, lfsr_period
from .misr import MisrState, misr_signature
from .netlist import count_lines, enumerate_faults, load_netlist
from .reference import is_reference, load_reference, reference_info


class UsageError(Exception):
    pass


def resolve_netlist(target: str):
    path = Path(target)
    if path.is_file():
        return load_netlist(path)
    if is_reference(target):
        return load_reference(target)
    raise BistError(f"netlist {target!r} is neither a readable file nor a reference circuit (C-1, C-2, C-3)")


def parse_poly_list(text: str, degree: int):
    """Comma-separated polynomials, or the keywords ``primitive`` / ``all`` at ``degree``."""
    word = text.strip().lower()
    if word == "primitive":
        return enumerate_primitive(degree)
    if word == "all":
        return enumerate_char_polys(degree)
    return [parse_poly(tok) for tok in text.split(",") if tok.strip()]


def parse_seeds(text: str):
    if text.strip().lower() == "all":
        return "all"
    seeds = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        try:
            seeds.append(int(tok, 0))
        except ValueError:
            raise UsageError(f"bad seed {tok!r}") from None
    return seeds


def parse_length(text: str):
    if text.strip().lower() == "auto":
        return "auto"
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"bad pattern length {text!r}") from None


def parse_state(text: str, n: int) -> int:
    text = text.strip()
    if text.lower().startswith("0x"):
        return int(text, 16)
    if len(text) == n and set(text) <= {"0", "1"}:
        return int(text, 2)
    return int(text, 10)


def _write(text: str, out: str | None):
    if out:
        emit_to = Path(out)
        try:
            emit_to.write_text(text)
        except OSError as exc:
            raise BistError(f"cannot write {out}: {exc}") from exc
    else:
        sys.stdout.write(text)


def cmd_polys(args):
    polys = enumerate_char_polys(args.degree) if args.all else enumerate_primitive(args.degree)
    if args.format == "json":
        _write(json.dumps([{"poly": str(p), "hex": p.hex(), "primitive": is_primitive(p)} for p in polys],
                          indent=2) + "\n", args.out)
    else:
        lines = [f"{str(p):28s} {p.hex():>8s}" + ("" if not args.all else
                                                   ("  primitive" if is_primitive(p) else ""))
                 for p in polys]
        lines.append(f"# {len(polys)} polynomial(s) of degree {args.degree}")
        _write("\n".join(lines) + "\n", args.out)


def cmd_period(args):
    lines = []
    for p in (parse_poly(tok) for tok in args.poly.split(",") if tok.strip()):
        n = p.degree
        period = lfsr_period(p)
        tag = "maximal" if period == (1 << n) - 1 else "not maximal"
        lines.append(f"{str(p):28s} degree {n:2d}  period {period}  ({tag})")
    _write("\n".join(lines) + "\n", args.out)


def cmd_patterns(args):
    p = parse_poly(args.poly)
    n = p.degree
    seed = parse_state(args.seed, n)
    count = lfsr_period(p) if args.count is None else args.count
    pats = generate_test_patterns(p, seed, count)
    _write("\n".join(str(LfsrState(v, n)) for v in pats) + "\n", args.out)


def cmd_signature(args):
    p = parse_poly(args.poly)
    k = p.degree
    words = [parse_state(w, k) for w in args.words.split(",") if w.strip()]
    init = MisrState(parse_state(args.init, k), p) if args.init else None
    sig = misr_signature(p, words, init)
    _write(f"{sig.binary()} 0x{sig.hex()}\n", args.out)


def cmd_faults(args):
    net = resolve_netlist(args.netlist)
    faults = enumerate_faults(net)
    lines = [f"# {net.summary()}", f"# {len(faults)} faults (2 x N_L, N_L = {count_lines(net)})"]
    if is_reference(net.name):
        ref = reference_info(net.name)
        lines.append(f"# reference fault count {ref.faults} (delta {len(faults) - ref.faults:+d})")
    lines += [f"{i + 1:4d} {f}" for i, f in enumerate(faults)]
    _write("\n".join(lines) + "\n", args.out)


def _config(args):
    net = resolve_netlist(args.netlist)
    t_polys = parse_poly_list(args.tpolys, net.n_inputs)
    p_polys = parse_poly_list(args.ppolys, max(net.n_outputs, 2))
    return ExperimentConfig(net, t_polys, p_polys, parse_seeds(args.seeds), parse_length(args.length))


def _write_meta(args, config, started: float):
    meta = {
        "version": __version__,
        "python": platform.python_version(),
        "argv": sys.argv[1:],
        "circuit": config.netlist.name,
        "started": time.strftime("%Y-%m-%dT%H:%M:%S", time.localtime(started)),
        "elapsed_s": round(time.time() - started, 3),
    }
    text = json.dumps(meta, indent=2) + "\n"
    if args.out:
        Path(args.out + ".meta.json").write_text(text)
    else:
        sys.stderr.write(text)


def cmd_run(args):
    started = time.time()
    config = _config(args)
    report = run_sweep(config, jobs=args.jobs)
    emit_report(report, args.format, args.out or sys.stdout)
    if args.meta:
        _write_meta(args, config, started)


def cmd_verify(args):
    started = time.time()
    config = _config(args)
    report = run_sweep(config, jobs=args.jobs)
    verdicts = check_seed_invariance(report)
    if args.format == "json":
        doc = {
            "header": report.header_lines(),
            "verdicts": [{"t_poly": str(v.t_poly), "p_poly": str(v.p_poly), "verdict": v.verdict,
                          "triple_invariant": v.triple_invariant, "rc_by_seed": v.rc_by_seed}
                         for v in verdicts],
        }
        text = json.dumps(doc, indent=2) + "\n"
    else:
        text = "".join("# " + h + "\n" for h in report.header_lines()) + format_verdicts(verdicts)
        n_var = sum(not v.invariant for v in verdicts)
        text += f"# {len(verdicts) - n_var} INVARIANT, {n_var} VARIANT\n"
    _write(text, args.out)
    if args.meta:
        _write_meta(args, config, started)


def _jobs(text: str) -> int | None:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("--jobs must be >= 0 (0 = all cores)")
    return None if value == 0 else value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bistsim", description="LFSR/MISR built-in self test simulator")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("polys", help="list primitive (or all) characteristic polynomials of a degree")
    p.add_argument("--degree", type=int, required=True)
    kind = p.add_mutually_exclusive_group()
    kind.add_argument("--primitive", action="store_true", help="primitive polynomials only (default)")
    kind.add_argument("--all", action="store_true", help="every polynomial with c_0 = c_n = 1")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_polys)

    p = sub.add_parser("period", help="LFSR period of one or more polynomials")
    p.add_argument("--poly", required=True, help="comma-separated polynomials")
    p.add_argument("--out")
    p.set_defaults(func=cmd_period)

    p = sub.add_parser("patterns", help="test patterns produced from a seed")
    p.add_argument("--poly", required=True)
    p.add_argument("--seed", required=True, help="q_n..q_1 as binary, or an int / hex value")
    p.add_argument("--count", type=int, help="default: one full period")
    p.add_argument("--out")
    p.set_defaults(func=cmd_patterns)

    p = sub.add_parser("signature", help="MISR signature of a word stream")
    p.add_argument("--poly", required=True)
    p.add_argument("--words", required=True, help="comma-separated words, r_k..r_1 binary or int/hex")
    p.add_argument("--init", help="initial register state (default zero)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_signature)

    p = sub.add_parser("faults", help="enumerate the stuck-at fault universe of a netlist")
    p.add_argument("--netlist", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_faults)

    for name, func, formats, default in (("run", cmd_run, ("csv", "json", "table"), "csv"),
                                         ("verify-invariance", cmd_verify, ("text", "json"), "text")):
        p = sub.add_parser(name, help="aliasing sweep" if name == "run" else "per-pair seed-invariance verdicts")
        p.add_argument("--netlist", required=True, help="netlist file or reference name C-1/C-2/C-3")
        p.add_argument("--tpolys", default="primitive", help="'primitive', 'all' or comma-separated list")
        p.add_argument("--ppolys", default="primitive", help="'primitive', 'all' or comma-separated list")
        p.add_argument("--seeds", default="all", help="'all' or comma-separated seeds (bit i-1 = q_i)")
        p.add_argument("--length", default="auto", help="'auto' (= LFSR period) or a pattern count")
        p.add_argument("--format", choices=formats, default=default)
        p.add_argument("--out")
        p.add_argument("--jobs", type=_jobs, default=None, help="worker processes (default: all cores)")
        p.add_argument("--meta", action="store_true", help="also record run metadata (timestamps)")
        p.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"bistsim: error: {exc}", file=sys.stderr)
        return 2
    except (BistError, KeyError, ValueError, OSError) as exc:
        print(f"bistsim: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Command-line sweep over input squeezing for both cloning machines.

Writes one record per grid point with the entanglement criteria and clone
fidelities of both machines, all derived from the circuit outputs, plus a
threshold report locating where the whole-state machine's criteria cross 1.
Optionally cross-checks the criteria with the sampling oracle.
"""

import argparse
import json
import math
import sys
from contextlib import nullcontext
from dataclasses import dataclass

import numpy as np

from .circuits import UNITY_GAIN, clone_state, epr_source, global_ecloner, local_ecloner
from .criteria import correlation_matrix, epr_paradox, inseparability, squeezing_db
from .fidelity import pure_mixed_fidelity
from .montecarlo import estimate_criteria, sample_circuit

CSV_HEADER = "v_s,squeezing_db,i_local,i_global,eps_local,eps_global,f_local,f_global"
MC_COLUMNS = (
    "mc_i_local",
    "mc_i_local_err",
    "mc_eps_local",
    "mc_eps_local_err",
    "mc_i_global",
    "mc_i_global_err",
    "mc_eps_global",
    "mc_eps_global_err",
)
BISECTION_TOL = 1e-9
V_MIN_FLOOR = 0.001


@dataclass
class SweepRecord:
    """One grid point of the sweep; mc fields stay None without sampling."""

    v_s: float
    squeezing_db: float
    i_local: float
    i_global: float
    eps_local: float
    eps_global: float
    f_local: float
    f_global: float
    mc: dict | None = None

    def as_dict(self):
        row = {
            "v_s": self.v_s,
            "squeezing_db": self.squeezing_db,
            "i_local": self.i_local,
            "i_global": self.i_global,
            "eps_local": self.eps_local,
            "eps_global": self.eps_global,
            "f_local": self.f_local,
            "f_global": self.f_global,
        }
        if self.mc is not None:
            row.update(self.mc)
        return row


class _Parser(argparse.ArgumentParser):
    """argparse with exit code 1 (not 2) for invalid flags."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser():
    parser = _Parser(
        prog="ecloner",
        description=(
            "Sweep the input squeezing variance and report entanglement "
            "criteria and fidelities for the local and global cloning machines."
        ),
    )
    parser.add_argument("--points", type=int, default=200, help="grid points (default 200)")
    parser.add_argument(
        "--v-min", type=float, default=0.01, help="smallest squeezing variance (default 0.01)"
    )
    parser.add_argument(
        "--format", choices=("csv", "json"), default="csv", help="output format (default csv)"
    )
    parser.add_argument("--output", default=None, help="output path (default stdout)")
    parser.add_argument(
        "--mc-shots",
        type=int,
        default=0,
        help="sampling-oracle shots per grid point and machine (0 disables)",
    )
    parser.add_argument("--seed", type=int, default=0, help="master seed for the oracle")
    parser.add_argument(
        "--gain",
        type=float,
        default=UNITY_GAIN,
        help=(
            "expert: cloner feedforward gain (default sqrt(2), the unity-gain "
            "setting that copies clone amplitudes exactly; other values bias "
            "the clones and break the fixed-fidelity records)"
        ),
    )
    return parser


def _validate(parser, args):
    if args.points < 2:
        parser.error(f"--points must be at least 2, got {args.points}")
    # below ~1e-3 the 1e-9 spectral validation runs out of double-precision
    # headroom in the squeeze-gate chains
    if not V_MIN_FLOOR <= args.v_min < 1.0:
        parser.error(f"--v-min must lie in [{V_MIN_FLOOR}, 1), got {args.v_min}")
    if args.mc_shots != 0 and args.mc_shots < 100:
        parser.error(f"--mc-shots must be 0 or at least 100, got {args.mc_shots}")
    if not math.isfinite(args.gain) or args.gain <= 0:
        parser.error(f"--gain must be a positive finite number, got {args.gain}")


def _mc_seed(master_seed, point_index, machine_index):
    seq = np.random.SeedSequence(master_seed, spawn_key=(point_index, machine_index))
    return int(seq.generate_state(1, dtype=np.uint64)[0])


def _evaluate_point(v_s, gain, mc_shots=0, mc_seeds=(0, 0)):
    epr = epr_source(v_s)
    local = local_ecloner(epr, gain=gain)
    glob = global_ecloner(epr, v_s, gain=gain)

    cm_local = correlation_matrix(local.state, local.clone1)
    cm_global = correlation_matrix(glob.state, glob.clone1)
    record = SweepRecord(
        v_s=v_s,
        squeezing_db=squeezing_db(v_s),
        i_local=inseparability(cm_local),
        i_global=inseparability(cm_global),
        eps_local=epr_paradox(cm_local),
        eps_global=epr_paradox(cm_global),
        f_local=pure_mixed_fidelity(epr, clone_state(local)).value,
        f_global=pure_mixed_fidelity(epr, clone_state(glob)).value,
    )
    if mc_shots:
        mc = {}
        for name, seed in zip(("local", "global"), mc_seeds):
            run = sample_circuit(name, v_s, 0.0, mc_shots, seed, gain=gain)
            est = estimate_criteria(run)
            mc[f"mc_i_{name}"] = est.inseparability
            mc[f"mc_i_{name}_err"] = est.inseparability_err
            mc[f"mc_eps_{name}"] = est.epr_paradox
            mc[f"mc_eps_{name}_err"] = est.epr_paradox_err
        record.mc = mc
    return record


def _global_criterion(which, v_s, gain):
    glob = global_ecloner(epr_source(v_s), v_s, gain=gain)
    cm = correlation_matrix(glob.state, glob.clone1)
    return inseparability(cm) if which == "i" else epr_paradox(cm)


def _bisect_crossing(which, lo, hi, gain):
    """Root of criterion(v) = 1 on [lo, hi], or None without a sign change."""
    f_lo = _global_criterion(which, lo, gain) - 1.0
    f_hi = _global_criterion(which, hi, gain) - 1.0
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if f_lo * f_hi > 0:
        return None
    while hi - lo > BISECTION_TOL:
        mid = 0.5 * (lo + hi)
        f_mid = _global_criterion(which, mid, gain) - 1.0
        if f_mid == 0.0:
            return mid
        if f_lo * f_mid < 0:
            hi = mid
        else:
            lo, f_lo = mid, f_mid
    return 0.5 * (lo + hi)


def _threshold_lines(gain):
    lines = [f"thresholds for the global machine (bisection to {BISECTION_TOL:g})"]
    for which, label, literature in (
        ("i", "inseparability", "literature: 3 dB"),
        ("eps", "epr_paradox", "literature: 5.7 dB"),
    ):
        root = _bisect_crossing(which, V_MIN_FLOOR, 1.0, gain)
        if root is None:
            lines.append(f"{label} = 1: no crossing for v_s in (0, 1] at gain {gain:.12g}")
        else:
            lines.append(
                f"{label} = 1 at v_s = {root:.9f} ({squeezing_db(root):.4f} dB); {literature}"
            )
    lines.append(
        "note: the v_s = 0.67 sometimes quoted for the epr_paradox crossing is "
        "inconsistent with 5.7 dB (0.67 is 1.74 dB); the analytic root is "
        "v_s = 2 - sqrt(3) = 0.2679"
    )
    return lines


def _fmt(value):
    return f"{value:.12g}"


def _write_csv(stream, records, threshold_lines):
    columns = CSV_HEADER.split(",")
    if records and records[0].mc is not None:
        columns = columns + list(MC_COLUMNS)
    stream.write(",".join(columns) + "\n")
    for record in records:
        row = record.as_dict()
        stream.write(",".join(_fmt(row[c]) for c in columns) + "\n")
    for line in threshold_lines:
        stream.write(f"# {line}\n")


def _write_json(stream, records):
    payload = [{k: float(_fmt(v)) for k, v in r.as_dict().items()} for r in records]
    json.dump(payload, stream, indent=2)
    stream.write("\n")


def run_sweep(args, stdout=None, stderr=None):
    """Evaluate the grid and emit records; returns the process exit code."""
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr

    grid = np.geomspace(args.v_min, 1.0, args.points)
    grid[-1] = 1.0
    records = []
    for idx, v_s in enumerate(grid):
        seeds = (_mc_seed(args.seed, idx, 0), _mc_seed(args.seed, idx, 1))
        records.append(_evaluate_point(float(v_s), args.gain, args.mc_shots, seeds))
    threshold_lines = _threshold_lines(args.gain)

    try:
        sink = open(args.output, "w") if args.output else nullcontext(stdout)
    except OSError as exc:
        print(f"ecloner: cannot write {args.output}: {exc}", file=stderr)
        return 2
    with sink as stream:
        if args.format == "csv":
            _write_csv(stream, records, threshold_lines)
        else:
            _write_json(stream, records)
            for line in threshold_lines:
                print(f"# {line}", file=stderr)
    return 0


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(parser, args)
    return run_sweep(args)


if __name__ == "__main__":
    sys.exit(main())

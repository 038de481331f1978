"""Command-line interface: ``qchain run|oracle|export-qasm|energy-table``.

Exit codes: 0 success, 1 usage or input error, 2 resource cap exceeded.
The default output directory for ``run`` comes from ``QCHAIN_OUTPUT_DIR``.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

import numpy as np

from . import analysis
from ._validation import MAX_STATE_QUBITS, CapExceededError
from .circuit import build_qaoa_circuit, export_qasm
from .estimator import QaoaChainSolver
from .ising import ChainSpec, energy_table, ground_states, to_bitstring
from .statevector import QaoaParameters

log = logging.getLogger("qchain")

OUTPUT_ENV = "QCHAIN_OUTPUT_DIR"
RUN_FILES = ("trace.json", "histogram.csv", "summary.json")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _atoms(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if not 3 <= n <= MAX_STATE_QUBITS:
        raise argparse.ArgumentTypeError(f"--atoms must be in [3, {MAX_STATE_QUBITS}], got {n}")
    return n


def _nonneg(text: str) -> int:
    try:
        v = int(float(text)) if "e" in text.lower() else int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {v}")
    return v


def _positive(text: str) -> int:
    v = _nonneg(text)
    if v == 0:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def cmd_run(args) -> None:
    out = Path(args.output_dir)
    solver = QaoaChainSolver(
        n_atoms=args.atoms,
        coupling=args.coupling,
        layers=args.layers,
        epochs=args.epochs,
        learning_rate=args.learning_rate,
        per_edge=args.per_edge,
        n_seeds=args.seeds,
        random_state=args.seed,
    )
    chain = ChainSpec(args.atoms, args.coupling)
    # fail on caps before spending time on training
    ground_states(chain)

    log.info("training n=%d p=%d for %d epochs over %d seed(s)", args.atoms, args.layers, args.epochs, args.seeds)
    solver.fit()
    probs = solver.predict_proba()
    log.info("sampling %d configurations", args.samples)
    counts = solver.sample(args.samples, n_workers=args.workers)
    hist = analysis.histogram(counts, args.atoms)

    min_energy, ground = ground_states(chain)
    gsp = analysis.ground_state_probability(probs, chain)
    baseline = analysis.uniform_baseline(args.atoms)
    summary = {
        "n_atoms": args.atoms,
        "layers": args.layers,
        "epochs": args.epochs,
        "samples": args.samples,
        "seed": solver.seed_,
        "trainable_parameters": int(solver.params_.size),
        "ground_state_probability": gsp,
        "uniform_baseline": float(baseline),
        "enhancement_ratio": gsp / float(baseline),
        "initial_energy": solver.trace_.energies[0],
        "final_energy": solver.trace_.final_energy,
        "min_energy": min_energy,
        "sampled_ground_state_fraction": (
            int(sum(counts[z] for z in sorted(ground))) / args.samples if args.samples else None
        ),
        "sampled_energy": (
            analysis.sampled_energy(counts, energy_table(chain)) if args.samples else None
        ),
    }
    if args.report_unit is not None:
        summary["report_unit"] = args.report_unit
        for key in ("initial_energy", "final_energy", "min_energy"):
            summary[key + "_scaled"] = summary[key] * args.report_unit

    payloads = {
        "trace.json": _dumps(solver.trace_.to_dict()),
        "histogram.csv": analysis.histogram_csv(hist, args.top_k),
        "summary.json": _dumps(summary),
    }
    out.mkdir(parents=True, exist_ok=True)
    written = []
    try:
        for name in RUN_FILES:
            path = out / name
            path.write_text(payloads[name])
            written.append(path)
    except BaseException:
        for path in written:
            path.unlink(missing_ok=True)
        raise
    print(
        f"ground-state probability {gsp:.6g} "
        f"({summary['enhancement_ratio']:.4g}x uniform baseline), "
        f"final energy {summary['final_energy']:.6g}; wrote {out}"
    )


def cmd_oracle(args) -> None:
    chain = ChainSpec(args.atoms, args.coupling)
    e_min, ground = ground_states(chain)
    baseline = analysis.uniform_baseline(args.atoms)
    print(f"atoms: {chain.n_atoms}")
    print(f"coupling: {chain.coupling!r}")
    print(f"min_energy: {e_min!r}")
    print("ground_states: " + " ".join(to_bitstring(z, chain.n_atoms) for z in sorted(ground)))
    print(f"uniform_baseline: {baseline.numerator}/{baseline.denominator}")


def load_parameters(path: Path) -> QaoaParameters:
    """Read angles from ``{"gammas": [...], "betas": [...]}`` or a saved trace."""
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read parameter file {path}: {exc}")
    if not isinstance(data, dict):
        raise UsageError("parameter file must hold a JSON object")
    gammas = data.get("gammas", data.get("final_gammas"))
    betas = data.get("betas", data.get("final_betas"))
    if gammas is None or betas is None:
        raise UsageError("parameter file needs 'gammas' and 'betas' arrays")
    try:
        return QaoaParameters(gammas, betas)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"malformed parameters: {exc}")


def _write(text: str, target: str) -> None:
    if target == "-":
        sys.stdout.write(text)
    else:
        Path(target).write_text(text)


def cmd_export_qasm(args) -> None:
    chain = ChainSpec(args.atoms, args.coupling)
    params = load_parameters(args.params)
    _write(export_qasm(build_qaoa_circuit(chain, params)), args.output)


def cmd_energy_table(args) -> None:
    table = energy_table(ChainSpec(args.atoms, args.coupling))
    lines = ["index,energy"]
    lines.extend(f"{z},{e!r}" for z, e in enumerate(table.tolist()))
    _write("\n".join(lines) + "\n", args.output)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qchain", description="QAOA ground-state search on a ferromagnetic Ising ring.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="train, sample and report")
    run.add_argument("--atoms", type=_atoms, default=12)
    run.add_argument("--layers", type=_nonneg, default=10)
    run.add_argument("--epochs", type=_nonneg, default=125)
    run.add_argument("--samples", type=_nonneg, default=50_000_000)
    run.add_argument("--seed", type=_nonneg, default=0)
    run.add_argument("--seeds", type=_positive, default=1, help="independent trainings; best final energy wins")
    run.add_argument("--learning-rate", type=float, default=0.01)
    run.add_argument("--coupling", type=float, default=1.0)
    run.add_argument("--report-unit", type=float, default=None, help="physical size of one J, e.g. 1.5 (peV)")
    run.add_argument("--top-k", type=_positive, default=10)
    run.add_argument("--per-edge", action="store_true", help="one cost angle per bond and layer")
    run.add_argument("--workers", type=_positive, default=1, help="sampling threads")
    run.add_argument("--output-dir", default=os.environ.get(OUTPUT_ENV, "."))
    run.set_defaults(func=cmd_run)

    oracle = sub.add_parser("oracle", help="exact ground states by exhaustive search")
    oracle.add_argument("--atoms", type=_atoms, default=12)
    oracle.add_argument("--coupling", type=float, default=1.0)
    oracle.set_defaults(func=cmd_oracle)

    qasm = sub.add_parser("export-qasm", help="write the circuit as OpenQASM 2.0")
    qasm.add_argument("--atoms", type=_atoms, default=12)
    qasm.add_argument("--coupling", type=float, default=1.0)
    qasm.add_argument("--params", required=True, help="JSON with gammas/betas (a trace.json also works)")
    qasm.add_argument("--output", default="-")
    qasm.set_defaults(func=cmd_export_qasm)

    table = sub.add_parser("energy-table", help="dump index,energy for every configuration")
    table.add_argument("--atoms", type=_atoms, default=12)
    table.add_argument("--coupling", type=float, default=1.0)
    table.add_argument("--output", default="-")
    table.set_defaults(func=cmd_energy_table)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        args.func(args)
    except CapExceededError as exc:
        print(f"qchain: resource cap: {exc}", file=sys.stderr)
        return 2
    except (UsageError, ValueError, TypeError) as exc:
        print(f"qchain: error: {exc}", file=sys.stderr)
        return 1
    return 0

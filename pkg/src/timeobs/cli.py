"""Command-line front end: JSON problem in, CSV/JSON artifacts out.

Commands: tg (time-operator matrix + commutator diagnostics), canonical
(density samples + covariance record), cauchy (convergence ladder), zeroset
(sublevel-measure scaling + mean-log record), claims (full demonstration
suite).  Exit codes: 0 success, 2 unreadable/malformed input, 3 physics
precondition violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import claims as claims_mod
from . import serialize
from .canonical import CanonicalDensity, density_at, verify_covariance
from .denseness import cauchy_state, distance_to_eigenstate
from .errors import PhysicsError, SchemaError
from .operators import (
    build_hamiltonian,
    build_time_operator,
    commutator,
    hermiticity_defect,
    spectral_norm,
    weak_commutator,
)
from .rng import random_state
from .spectral import DEFAULT_CONFIG, EnergySpectrum, QuantumState, build_spectrum
from .zeroset import TrigSignal, paley_wiener_integral, sublevel_measure

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_PHYSICS = 3

COMMANDS = ("tg", "canonical", "cauchy", "zeroset", "claims")
DEFAULT_EPSILONS = claims_mod.DEFAULT_EPSILONS
_DEFAULT_LEVELS = 8
_MAX_CAUCHY_N = 512


@dataclass(frozen=True)
class RunConfig:
    """Validated invocation: one command plus its numeric knobs."""

    command: str
    output_path: str
    input_path: str | None = None
    grid: int = 1000
    tau_max: float = 10.0
    epsilons: tuple[float, ...] = DEFAULT_EPSILONS
    seed: int = 0
    target: int = 0

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if int(self.grid) < 2:
            raise ValueError("grid must be at least 2")
        if not self.tau_max > 0.0:
            raise ValueError("tau-max must be positive")
        if not self.epsilons or any(not e > 0.0 for e in self.epsilons):
            raise ValueError("every eps must be strictly positive")
        if int(self.target) < 0:
            raise ValueError("target must be nonnegative")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="timeobs",
        description=(
            "Canonical time statistics and time-operator diagnostics for "
            "discrete-spectrum quantum systems."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    descriptions = {
        "tg": "export the time-operator matrix and commutator diagnostics",
        "canonical": "sample the canonical density and verify the shift law",
        "cauchy": "emit the zero-sum convergence ladder",
        "zeroset": "scan sublevel measures and the mean-log integral",
        "claims": "run the full demonstration suite",
    }
    for name in COMMANDS:
        cmd = sub.add_parser(name, help=descriptions[name])
        cmd.add_argument("--input", "-i", default=None, help="problem JSON path")
        cmd.add_argument(
            "--output", "-o", required=True, help="output directory for artifacts"
        )
        cmd.add_argument("--grid", type=int, default=1000, help="grid points / cells")
        cmd.add_argument("--tau-max", type=float, default=10.0, help="scan horizon")
        cmd.add_argument(
            "--eps",
            type=float,
            action="append",
            default=None,
            help="sublevel threshold (repeatable)",
        )
        cmd.add_argument("--seed", type=int, default=0, help="random-state seed")
        cmd.add_argument("--target", type=int, default=0, help="eigenstate index")
    return parser


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        config = RunConfig(
            command=ns.command,
            input_path=ns.input,
            output_path=ns.output,
            grid=ns.grid,
            tau_max=ns.tau_max,
            epsilons=tuple(ns.eps) if ns.eps else DEFAULT_EPSILONS,
            seed=ns.seed,
            target=ns.target,
        )
        return run(config)
    except PhysicsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PHYSICS
    except json.JSONDecodeError as exc:
        print(
            f"parse error: {exc.msg} (line {exc.lineno}, column {exc.colno})",
            file=sys.stderr,
        )
        return EXIT_PARSE
    except (SchemaError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


def run(config: RunConfig) -> int:
    out_dir = Path(config.output_path)
    out_dir.mkdir(parents=True, exist_ok=True)
    runner = {
        "tg": _cmd_tg,
        "canonical": _cmd_canonical,
        "cauchy": _cmd_cauchy,
        "zeroset": _cmd_zeroset,
        "claims": _cmd_claims,
    }[config.command]
    runner(config, out_dir)
    return EXIT_OK


def _load_problem(
    config: RunConfig, need_state: bool, in_zero_sum: bool
) -> tuple[EnergySpectrum, QuantumState | None]:
    """Problem from --input, or the default harmonic system with a seeded state."""
    if config.input_path is not None:
        spectrum, state = serialize.load_problem(config.input_path)
    else:
        spectrum = build_spectrum("harmonic", _DEFAULT_LEVELS, omega=1.0, hbar=1.0)
        state = None
    if need_state and state is None:
        state = random_state(spectrum.size, config.seed, in_zero_sum=in_zero_sum)
    return spectrum, state


def _cmd_tg(config: RunConfig, out_dir: Path) -> None:
    spectrum, _ = _load_problem(config, need_state=False, in_zero_sum=False)
    top = build_time_operator(spectrum)
    ham = build_hamiltonian(spectrum)
    comm = commutator(top, ham)
    weak = weak_commutator(spectrum)
    diagnostics = {
        "basis_size": spectrum.size,
        "hermiticity_defect": hermiticity_defect(top.entries),
        "spectral_norm": spectral_norm(top),
        "max_weak_defect": float(np.max(np.abs(comm.entries - weak.entries))),
        "max_diagonal_entry": float(np.max(np.abs(np.diag(comm.entries)))),
    }
    serialize.dump_matrix(out_dir / "tg_matrix.json", top)
    serialize.write_json(out_dir / "tg_diagnostics.json", diagnostics)
    print(f"wrote {out_dir / 'tg_matrix.json'} and {out_dir / 'tg_diagnostics.json'}")


def _cmd_canonical(config: RunConfig, out_dir: Path) -> None:
    spectrum, state = _load_problem(config, need_state=True, in_zero_sum=False)
    density = CanonicalDensity.from_state(spectrum, state)
    ts = np.linspace(0.0, config.tau_max, config.grid)
    ps = density_at(density, ts)
    serialize.write_csv(out_dir / "density.csv", ("t", "p"), zip(ts, ps))
    tau = 0.5 * config.tau_max
    record = {
        "tau": tau,
        "max_deviation": verify_covariance(spectrum, state, tau, ts),
        "grid_points": config.grid,
    }
    serialize.write_json(out_dir / "covariance.json", record)
    print(f"wrote {out_dir / 'density.csv'} and {out_dir / 'covariance.json'}")


def _cmd_cauchy(config: RunConfig, out_dir: Path) -> None:
    max_n = min(max(config.grid, 1), _MAX_CAUCHY_N)
    rows = []
    n = 1
    while n <= max_n:
        if n >= max(config.target, 1):
            step = cauchy_state(n, target=config.target)
            leading = float(step.state.coeffs[config.target].real)
            rows.append((n, leading, distance_to_eigenstate(step, config.target)))
        n *= 2
    serialize.write_csv(out_dir / "convergence.csv", ("N", "c0", "distance"), rows)
    print(f"wrote {out_dir / 'convergence.csv'}")


def _cmd_zeroset(config: RunConfig, out_dir: Path) -> None:
    spectrum, state = _load_problem(config, need_state=True, in_zero_sum=True)
    sig = TrigSignal.from_state(spectrum, state)
    window = config.tau_max
    base_grid = max(1000, config.grid)
    rows = []
    for eps in sorted(set(config.epsilons), reverse=True):
        report = sublevel_measure(sig, eps, window, base_grid=base_grid)
        rows.append((report.epsilon, report.measure, report.error_bound))
    serialize.write_csv(
        out_dir / "measure_scaling.csv", ("epsilon", "measure", "error_bound"), rows
    )
    panels = max(100, config.grid // 4)
    coarse = paley_wiener_integral(sig, window, panels)
    fine = paley_wiener_integral(sig, window, 2 * panels)
    rel = abs(fine - coarse) / max(abs(fine), 1e-300)
    record = {
        "window": window,
        "panels": 2 * panels,
        "value": fine,
        "converged": bool(rel <= claims_mod.PW_STABILITY_TOL),
    }
    serialize.write_json(out_dir / "paley_wiener.json", record)
    print(f"wrote {out_dir / 'measure_scaling.csv'} and {out_dir / 'paley_wiener.json'}")


def _cmd_claims(config: RunConfig, out_dir: Path) -> None:
    spectrum, state = _load_problem(config, need_state=True, in_zero_sum=True)
    summary = claims_mod.run_claims(
        spectrum,
        state,
        grid=config.grid,
        tau_max=config.tau_max,
        epsilons=config.epsilons,
        config=DEFAULT_CONFIG,
    )
    document = {
        "seed": config.seed,
        "grid": config.grid,
        "tau_max": config.tau_max,
        "spectrum": serialize.spectrum_to_dict(spectrum),
        "state": serialize.state_to_dict(state),
        "claims": summary,
    }
    serialize.write_json(out_dir / "claims.json", document)
    print(f"wrote {out_dir / 'claims.json'}")


if __name__ == "__main__":
    sys.exit(main())

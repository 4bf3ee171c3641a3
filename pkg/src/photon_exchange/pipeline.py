"""
Batch front-end for the workbench.

Each subcommand reads an experiment config, runs one experiment and writes a
JSON report or a CSV curve whose metadata is enough to rerun it.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

from pydantic import BaseModel

from . import __version__
from .dynamics import PulseSequence, evolve_sequence
from .errors import CertificationError, ConfigError, DomainError, PhotonExchangeError, UnphysicalBeamSplitterError
from .nogo import BACKENDS, OptimizationTask, certify_nogo, fit_loglog_slope, require_certified, tradeoff_curve
from .observables import coupling_product_from_hamiltonian, probe_report, return_probability, scaling_table
from .optics import absorption_curve, ns_gate_search
from .sector import DickeModel, basis_state, enumerate_sector
from .utils import (
    SCHEMA_VERSION,
    ConfigManager,
    build_metadata,
    canonicalize,
    load_experiment_config,
    parse_experiment_config,
    setup_logging,
    write_csv,
    write_json,
)
from .utils.experiment_config import COMMANDS, config_to_dict

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_CERTIFICATION = 3

DEFAULT_OUTPUTS = {
    "evolve": "evolve.json",
    "tradeoff": "tradeoff.csv",
    "nogo-cert": "nogo_cert.json",
    "scaling": "scaling.csv",
    "bs": "bs.csv",
    "ns": "ns.json",
}

TRADEOFF_COLUMNS = ["budget", "best_phi_nl_abs", "achieved_loss", "seed", "restart", "carried_from"]
SCALING_COLUMNS = ["n_atoms", "product", "ratio", "product_from_hamiltonian"]
BS_COLUMNS = ["d", "p0", "p1", "p2"]


class ExperimentRunner:
    """
    Runs workbench experiments from validated configs.

    Handles:
    1. Sequence evolution reports
    2. Loss/phase tradeoff curves and no-go certification
    3. Coupling scaling tables
    4. Linear-optics experiments (lossy beam splitter, NS gate)
    """

    def __init__(self, config_manager: Optional[ConfigManager] = None, threads: Optional[int] = None):
        """
        Initialize the runner.

        Args:
            config_manager: Configuration manager instance (creates default if None)
            threads: Restart threads; defaults to PHOTON_EXCHANGE_THREADS
        """
        if config_manager is None:
            config_manager = ConfigManager()

        self.config_manager = config_manager
        self.runtime_config = config_manager.get_runtime_config()
        self.tolerances = config_manager.get_tolerance_config()
        self.search_config = config_manager.get_search_config()
        self.threads = max(1, threads if threads is not None else self.runtime_config.threads)
        if self.runtime_config.backend not in BACKENDS:
            raise ConfigError(
                f"PHOTON_EXCHANGE_BACKEND must be one of {BACKENDS}, got {self.runtime_config.backend!r}",
                keys=["PHOTON_EXCHANGE_BACKEND"],
            )

        self._handlers: Dict[str, Callable[[Any, Path], Dict[str, Any]]] = {
            "evolve": self.run_evolve,
            "tradeoff": self.run_tradeoff,
            "nogo-cert": self.run_nogo_cert,
            "scaling": self.run_scaling,
            "bs": self.run_bs,
            "ns": self.run_ns,
        }
        logger.info(f"Experiment runner initialized (threads={self.threads})")

    def run(self, config: BaseModel, out: Optional[str] = None, seed: Optional[int] = None) -> Dict[str, Any]:
        """
        Run one experiment.

        Args:
            config: Validated experiment config
            out: Output path (default depends on the command)
            seed: Overrides the config seed

        Returns:
            Summary dictionary with the output path and headline numbers

        Raises:
            ConfigError: If the config cannot be interpreted
            CertificationError: If nogo-cert finds a violation (after writing its report)
        """
        command = config.command
        overrides = {key: value for key, value in self._env_defaults(command).items() if key not in config.model_fields_set}
        if seed is not None:
            if "seed" in type(config).model_fields:
                overrides["seed"] = seed
            else:
                logger.warning(f"Command {command} takes no seed; ignoring --seed {seed}")
        if overrides:
            logger.debug(f"Resolved {command} settings: {overrides}")
            config = parse_experiment_config({**config_to_dict(config), **overrides}, command)
        out_path = Path(out or DEFAULT_OUTPUTS[command])
        logger.info(f"Running {command} -> {out_path}")
        summary = self._handlers[command](config, out_path)
        summary["output_file"] = str(out_path)
        return summary

    def _env_defaults(self, command: str) -> Dict[str, Any]:
        """Search settings from the environment, used where the config leaves them out."""
        if command not in ("tradeoff", "nogo-cert"):
            return {}
        defaults: Dict[str, Any] = {
            "coupling_bound": self.search_config.coupling_bound,
            "duration_bound": self.search_config.duration_bound,
            "max_evaluations_per_stage": self.search_config.max_evaluations_per_stage,
        }
        if command == "nogo-cert":
            defaults["phase_threshold"] = self.tolerances.phase_certification
        return defaults

    def _metadata(self, config: BaseModel) -> Dict[str, Any]:
        return build_metadata(config.command, config_to_dict(config), getattr(config, "seed", None))

    def _model(self, label: Any) -> DickeModel:
        try:
            return DickeModel.from_label(label)
        except DomainError as e:
            raise ConfigError(str(e), keys=["n_atoms"])

    def _task(self, config: BaseModel, model: DickeModel, variant: Any) -> OptimizationTask:
        return OptimizationTask(
            model=model,
            variant=variant,
            n_segments=config.n_segments,
            coupling_bound=config.coupling_bound,
            duration_bound=config.duration_bound,
            seed=config.seed,
            restarts=config.restarts,
            loss_tolerance=self.tolerances.loss_tolerance,
            amplitude_tolerance=self.tolerances.phase_amplitude,
            penalty_start=self.search_config.penalty_start,
            penalty_stop=self.search_config.penalty_stop,
            penalty_factor=self.search_config.penalty_factor,
            max_evaluations_per_stage=config.max_evaluations_per_stage,
            threads=self.threads,
            backend=self.runtime_config.backend,
        )

    def run_evolve(self, config: BaseModel, out: Path) -> Dict[str, Any]:
        """Probe report plus the trajectory of the configured initial state."""
        model = self._model(config.n_atoms)
        seq = PulseSequence.from_segments([s.model_dump() for s in config.segments])
        try:
            seq.validate(self.search_config.coupling_bound)
        except DomainError as e:
            raise ConfigError(str(e), keys=["segments"])
        try:
            sector = enumerate_sector(sum(config.initial), model)
            initial = basis_state(sector, config.initial)
        except DomainError as e:
            raise ConfigError(f"Invalid initial state {config.initial}: {e}", keys=["initial"])

        report = probe_report(seq, model, config.variant, self.tolerances.phase_amplitude)
        final, trajectory = evolve_sequence(seq, initial)
        payload = {
            "report": report.to_dict(),
            "initial": {
                "occupation": list(config.initial),
                "return_probability": return_probability(final, initial),
                "final_state": final.to_dict(),
                "trajectory": [
                    {",".join(map(str, occ)): p for occ, p in snapshot.probabilities().items()}
                    for snapshot in trajectory
                ],
            },
        }
        write_json(out, payload, self._metadata(config))
        return {"p0": report.p0, "phi_nl": report.phi_nl, "composite_loss": report.composite_loss}

    def run_tradeoff(self, config: BaseModel, out: Path) -> Dict[str, Any]:
        """Best |phi_NL| per budget, with witnesses in a sibling JSON file."""
        model = self._model(config.n_atoms)
        points = tradeoff_curve(self._task(config, model, config.variant), config.budgets)
        slope = fit_loglog_slope(points)
        metadata = self._metadata(config)
        rows = [p.to_dict() for p in points]
        write_csv(out, TRADEOFF_COLUMNS, rows, metadata, extra_metadata={"loglog_slope": slope})
        write_json(out.with_suffix(".witnesses.json"), {"points": rows, "loglog_slope": slope}, metadata)
        return {"points": len(points), "loglog_slope": slope, "best_phi_nl_abs": points[-1].best_phi_nl_abs}

    def run_nogo_cert(self, config: BaseModel, out: Path) -> Dict[str, Any]:
        """Writes the certification report, then raises if any entry failed."""
        models = [self._model(label) for label in config.models]
        template = self._task(config, models[0], config.variants[0])
        entries = certify_nogo(
            models,
            config.variants,
            template,
            samples=config.samples,
            phase_threshold=config.phase_threshold,
        )
        passed = all(e.passed for e in entries)
        write_json(out, {"passed": passed, "entries": [e.to_dict() for e in entries]}, self._metadata(config))
        require_certified(entries)
        return {"passed": passed, "entries": len(entries)}

    def run_scaling(self, config: BaseModel, out: Path) -> Dict[str, Any]:
        rows = []
        for row in scaling_table(config.n_values, config.eps):
            data = row.to_dict()
            data["product_from_hamiltonian"] = coupling_product_from_hamiltonian(row.n_atoms, config.eps)
            rows.append(data)
        write_csv(out, SCALING_COLUMNS, rows, self._metadata(config))
        return {"rows": len(rows), "last_ratio": rows[-1]["ratio"]}

    def run_bs(self, config: BaseModel, out: Path) -> Dict[str, Any]:
        try:
            curve = absorption_curve(config.t, config.r, config.d_values)
        except UnphysicalBeamSplitterError as e:
            raise ConfigError(str(e), keys=["t", "r"])
        rows: List[Dict[str, Any]] = [{"d": d, **stats.to_dict()} for d, stats in curve]
        write_csv(out, BS_COLUMNS, rows, self._metadata(config))
        return {"rows": len(rows), "p2_at_last_d": rows[-1]["p2"]}

    def run_ns(self, config: BaseModel, out: Path) -> Dict[str, Any]:
        result = ns_gate_search(
            seed=config.seed,
            restarts=config.restarts,
            threads=self.threads,
            fidelity_tolerance=config.fidelity_tolerance,
            max_evaluations_per_stage=config.max_evaluations_per_stage,
            backend=self.runtime_config.backend,
        )
        write_json(out, result.to_dict(), self._metadata(config))
        return {"success_prob": result.success_prob, "fidelity": result.fidelity}


def _load(args: argparse.Namespace, command: str) -> BaseModel:
    if args.config:
        return load_experiment_config(args.config, command)
    return parse_experiment_config({"schema_version": SCHEMA_VERSION}, command)


def _error_payload(error: Exception) -> Dict[str, Any]:
    if isinstance(error, ConfigError):
        return error.to_dict()
    if isinstance(error, CertificationError):
        return {
            "error": "certification",
            "message": str(error),
            "failed": [f"{e.n_atoms}/{e.variant}" for e in error.entries],
        }
    if isinstance(error, PhotonExchangeError):
        return {"error": type(error).__name__, "message": str(error)}
    return {"error": "internal", "message": str(error)}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="Experiment config (JSON, or YAML by suffix)", default=None)
    common.add_argument("--out", help="Output file (default depends on the command)", default=None)
    common.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"], default=None, help="Logging level")
    common.add_argument("--env-file", help="Path to .env file with configuration", default=None)

    parser = argparse.ArgumentParser(
        prog="photon-exchange", description="Photon-exchange phase searches and linear-optics postselection experiments"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        sub = subparsers.add_parser(command, parents=[common], help=f"Run the {command} experiment")
        sub.add_argument("--seed", type=int, default=None, help="Override the config seed")
        sub.add_argument("--threads", type=int, default=None, help="Worker threads for restarts")
    canon = subparsers.add_parser("canonicalize", parents=[common], help="Print a config in canonical JSON")
    canon.add_argument("target", choices=COMMANDS, help="Command the config belongs to")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for CLI usage."""
    args = build_parser().parse_args(argv)

    try:
        config_manager = ConfigManager(env_file=args.env_file)
        runtime = config_manager.get_runtime_config()
        setup_logging(level=args.log_level or runtime.log_level, log_file=runtime.log_file)

        if args.command == "canonicalize":
            text = canonicalize(_load(args, args.target))
            if args.out:
                Path(args.out).write_text(text, encoding="utf-8")
            else:
                sys.stdout.write(text)
            return EXIT_OK

        runner = ExperimentRunner(config_manager, threads=args.threads)
        summary = runner.run(_load(args, args.command), out=args.out, seed=args.seed)
    except ConfigError as e:
        print(json.dumps(_error_payload(e)), file=sys.stderr)
        return EXIT_CONFIG
    except CertificationError as e:
        logger.error(f"Certification failed: {e}")
        print(json.dumps(_error_payload(e)), file=sys.stderr)
        return EXIT_CERTIFICATION
    except PhotonExchangeError as e:
        logger.error(f"{args.command} failed: {e}")
        print(json.dumps(_error_payload(e)), file=sys.stderr)
        return EXIT_FAILURE
    except ValueError as e:
        # Malformed environment values
        print(json.dumps(_error_payload(ConfigError(str(e)))), file=sys.stderr)
        return EXIT_CONFIG
    except Exception as e:
        logger.error(f"{args.command} failed: {e}", exc_info=True)
        print(json.dumps(_error_payload(e)), file=sys.stderr)
        return EXIT_FAILURE

    print(f"\n=== {args.command} complete ===")
    for key, value in summary.items():
        print(f"{key}: {value}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

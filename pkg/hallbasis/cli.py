from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

from pydantic import BaseModel, ValidationError

from .errors import HallBasisError, TensorFileError
from .invariants import BASIS_NAMES, hall_invariants
from .irreducibility import verify_minimality
from .isotropy import run_isotropy_fuzz
from .logs import install_log_handler
from .models import (
    CommandConfig,
    FieldReport,
    InvariantsReport,
    OutputMode,
    PointSource,
    Settings,
)
from .storage import load_settings, load_tensor
from .tensor_core import hall_field
from .witnesses import CASE_IDS, run_all_witnesses

logger = logging.getLogger("hallbasis.cli")

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report on stdout")
    common.add_argument("--config", type=Path, default=None, help="settings JSON (default app_data/settings.json)")
    common.add_argument("--log-level", default=None, help="DEBUG / INFO / WARNING / ERROR")

    parser = argparse.ArgumentParser(
        prog="hallbasis",
        description="Invariants of the 3D Hall tensor and checks of their minimal integrity / irreducible function bases.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("invariants", parents=[common], help="print the ten basis invariants of a tensor file")
    p.add_argument("path", type=Path)
    p.add_argument("--exact", action="store_true", help="rational arithmetic, values printed as fractions")

    p = sub.add_parser("verify-integrity", parents=[common], help="exact rank certification at degrees 2, 4, 6")
    p.add_argument("--source", choices=[s.value for s in PointSource], default=PointSource.PAPER.value)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--rows-multiplier", type=_positive_int, default=None)

    p = sub.add_parser("verify-function-basis", parents=[common], help="replay the ten witness pairs")
    p.add_argument("--case", type=int, choices=list(CASE_IDS), default=None, metavar="N")
    p.add_argument("--coincidence-tol", type=_positive_float, default=None)
    p.add_argument("--separation-floor", type=_positive_float, default=None)

    p = sub.add_parser("isotropy-fuzz", parents=[common], help="random orthogonal transformations of random tensors")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--trials", type=_positive_int, default=None)
    p.add_argument("--tol", type=_positive_float, default=None)

    p = sub.add_parser("field", parents=[common], help="electric field E_i = k_ijk J_j H_k")
    p.add_argument("path", type=Path)
    p.add_argument("--current", type=float, nargs=3, required=True, metavar=("J1", "J2", "J3"))
    p.add_argument("--magnetic", type=float, nargs=3, required=True, metavar=("H1", "H2", "H3"))
    return parser


def _pick(value, default):
    return default if value is None else value


def command_config(args: argparse.Namespace, settings: Settings) -> CommandConfig:
    """Merge command-line flags over the settings record."""
    return CommandConfig(
        subcommand=args.subcommand,
        input_path=getattr(args, "path", None),
        seed=_pick(getattr(args, "seed", None), settings.seed),
        trials=_pick(getattr(args, "trials", None), settings.fuzz_trials),
        coincidence_tol=_pick(getattr(args, "coincidence_tol", None), settings.coincidence_tol),
        separation_floor=_pick(getattr(args, "separation_floor", None), settings.separation_floor),
        isotropy_tol=_pick(getattr(args, "tol", None), settings.isotropy_tol),
        output=OutputMode.JSON if args.json else OutputMode.HUMAN,
    )


def _emit(cfg: CommandConfig, report: BaseModel, human: Callable[[], List[str]]) -> None:
    if cfg.output is OutputMode.JSON:
        print(report.model_dump_json(indent=2))
    else:
        print("\n".join(human()))


def _format_value(x) -> str:
    return str(x) if not isinstance(x, float) else f"{x:.12g}"


# ===== subcommands =====

def cmd_invariants(cfg: CommandConfig, args: argparse.Namespace, settings: Settings) -> int:
    k = load_tensor(cfg.input_path, exact=args.exact)
    values = hall_invariants(k)
    report = InvariantsReport(
        exact=args.exact,
        invariants={n: (str(v) if args.exact else float(v)) for n, v in zip(BASIS_NAMES, values)},
    )
    _emit(cfg, report, lambda: [f"{n} = {_format_value(v)}" for n, v in report.invariants.items()])
    return EXIT_PASS


def cmd_verify_integrity(cfg: CommandConfig, args: argparse.Namespace, settings: Settings) -> int:
    report = verify_minimality(
        source=PointSource(args.source),
        seed=cfg.seed,
        rows_multiplier=_pick(args.rows_multiplier, settings.rows_multiplier),
        bound=settings.random_entry_bound,
        max_workers=settings.max_workers,
        float_threshold=settings.float_rank_threshold,
    )

    def human() -> List[str]:
        lines = [f"source: {report.source.value}" + (f" (seed {report.seed})" if report.seed is not None else "")]
        for r in report.reports:
            lines.append(
                f"degree {r.degree}: rank {r.rank} / {r.monomial_count} monomials, "
                f"{r.point_count} points, float rank {r.float_rank} -> {'ok' if r.passed else 'DEFICIT'}"
            )
        lines.append("PASS" if report.passed else "FAIL")
        return lines

    _emit(cfg, report, human)
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_verify_function_basis(cfg: CommandConfig, args: argparse.Namespace, settings: Settings) -> int:
    report = run_all_witnesses(
        coincidence_tol=cfg.coincidence_tol,
        separation_floor=cfg.separation_floor,
        case_ids=[args.case] if args.case is not None else None,
        max_workers=settings.max_workers,
    )

    def human() -> List[str]:
        lines = []
        for c in report.cases:
            lines.append(
                f"case {c.case_id:2d} {c.target}: delta {c.target_delta:.6g}, "
                f"max mismatch {c.max_mismatch:.3e} ({c.worst_invariant}) -> {'ok' if c.passed else 'FAIL'}"
            )
            if c.transcription_note:
                lines.append(
                    f"  note: {c.transcription_note}; documented pair mismatch "
                    f"{c.printed_max_mismatch:.3e} ({c.printed_worst_invariant})"
                )
        lines.append(f"{report.passed_count}/{report.case_count} cases separate")
        return lines

    _emit(cfg, report, human)
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_isotropy_fuzz(cfg: CommandConfig, args: argparse.Namespace, settings: Settings) -> int:
    report = run_isotropy_fuzz(
        seed=cfg.seed,
        trials=cfg.trials,
        tensor_count=settings.fuzz_tensor_count,
        tol=cfg.isotropy_tol,
        identity_tol=settings.identity_tol,
        bound=settings.random_entry_bound,
        max_workers=settings.max_workers,
    )

    def human() -> List[str]:
        lines = [f"seed {report.seed}, {report.trials} trials over {report.tensor_count} tensors"]
        lines += [f"  {n}: {d:.3e}" for n, d in report.per_invariant.items()]
        lines.append(f"max relative deviation {report.max_relative_deviation:.3e} (tol {report.tolerance:.1e})")
        lines.append(f"hemitropy deviation {report.max_hemitropy_deviation:.3e}")
        lines.append(f"identity residual {report.max_identity_residual:.3e}")
        lines.append("PASS" if report.passed else "FAIL")
        return lines

    _emit(cfg, report, human)
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_field(cfg: CommandConfig, args: argparse.Namespace, settings: Settings) -> int:
    k = load_tensor(cfg.input_path)
    e = hall_field(k, args.current, args.magnetic)
    report = FieldReport(current=list(args.current), magnetic=list(args.magnetic), electric=[float(x) + 0.0 for x in e])
    _emit(cfg, report, lambda: ["E = (" + ", ".join(_format_value(x) for x in report.electric) + ")"])
    return EXIT_PASS


COMMANDS: Dict[str, Callable[[CommandConfig, argparse.Namespace, Settings], int]] = {
    "invariants": cmd_invariants,
    "verify-integrity": cmd_verify_integrity,
    "verify-function-basis": cmd_verify_function_basis,
    "isotropy-fuzz": cmd_isotropy_fuzz,
    "field": cmd_field,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors, 0 on --help
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    if args.config is not None and not args.config.exists():
        print(f"error: config file not found: {args.config}", file=sys.stderr)
        return EXIT_USAGE
    settings = load_settings(args.config)
    install_log_handler(args.log_level or settings.log_level, json_lines=args.json)

    try:
        cfg = command_config(args, settings)
    except ValidationError as e:
        print(f"error: {e.errors()[0].get('msg', e)}", file=sys.stderr)
        return EXIT_USAGE

    try:
        return COMMANDS[cfg.subcommand](cfg, args, settings)
    except TensorFileError as e:
        logger.error("cannot read tensor file: %s", e)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except HallBasisError as e:
        logger.exception("%s failed", cfg.subcommand)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

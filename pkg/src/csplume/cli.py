"""
Command-line interface: ``csplume <command>``.

Commands mirror the pipeline stages (synth, sample, reconstruct, detect,
compare) plus ``init``/``run`` for a whole manifest and ``sweep`` over rates.

Exit codes: 0 success, 2 bad arguments, 3 format error, 4 dimension mismatch,
5 solver non-convergence under ``--strict``.
"""

import argparse
import json
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

from csplume import __version__
from csplume.cube.hsc import load_video, save_video
from csplume.errors import (
    ConvergenceError,
    CsPlumeError,
    DimensionMismatchError,
    FormatError,
    InvalidParameterError,
    NonPowerOfTwoError,
)
from csplume.models.detection import DetectionConfig, Statistic
from csplume.models.manifest import PipelineManifest
from csplume.models.solver import SolverConfig
from csplume.models.synth import SynthConfig
from csplume.pipeline.compare import compare_counts
from csplume.pipeline.manifest import load_manifest, save_manifest
from csplume.pipeline.runner import run_pipeline
from csplume.pipeline.stages import (
    detect,
    load_truth_mask,
    reconstruct_video,
    sample_video,
    score_detection,
    synthesize,
    write_detection,
)
from csplume.pipeline.sweep import run_sweep, sweep_table
from csplume.pipeline.tables import (
    load_signature,
    read_counts,
    read_scores,
    write_comparison,
    write_scores,
    write_sweep,
)
from csplume.sampling.hsm import load_measurements, save_measurements
from csplume.synth.scenarios import get_scenario, list_scenarios
from csplume.utils.formatting import (
    print_comparison_summary,
    print_solver_summary,
    print_sweep_table,
)

logger = logging.getLogger("csplume")

EXIT_OK = 0
EXIT_BAD_ARGUMENTS = 2
EXIT_FORMAT = 3
EXIT_DIMENSION = 4
EXIT_NOT_CONVERGED = 5


def exit_code_for(error: CsPlumeError | OSError) -> int:
    """Map an error to the documented exit code."""
    if isinstance(error, ConvergenceError):
        return EXIT_NOT_CONVERGED
    if isinstance(error, FormatError):
        return EXIT_FORMAT
    if isinstance(error, (DimensionMismatchError, NonPowerOfTwoError)):
        return EXIT_DIMENSION
    # parameter, selection, manifest, degenerate-input and file-system errors
    return EXIT_BAD_ARGUMENTS


def parse_frames(text: str) -> list[int]:
    """
    Parse frame selections like ``0:20``, ``3,5,7`` or ``0:5,9``.

    ``a:b`` is half-open, as in Python slicing.

    Example:
        >>> parse_frames("0:3,7")
        [0, 1, 2, 7]
    """
    frames: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            if ":" in part:
                start, stop = part.split(":", 1)
                frames.extend(range(int(start), int(stop)))
            else:
                frames.append(int(part))
        except ValueError as exc:
            raise argparse.ArgumentTypeError(f"bad frame selection {part!r}") from exc
    if not frames:
        raise argparse.ArgumentTypeError(f"empty frame selection {text!r}")
    return frames


def parse_rates(text: str) -> list[float]:
    """Comma-separated sampling rates, e.g. ``0.05,0.1,0.2``."""
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad rate list {text!r}") from exc


def configure_logging(verbose: bool, quiet: bool) -> None:
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")


# Shared option groups

def _add_solver_options(parser: argparse.ArgumentParser) -> None:
    defaults = SolverConfig()
    group = parser.add_argument_group("solver")
    group.add_argument("--mu", type=float, default=defaults.mu, help="constraint weight")
    group.add_argument("--lam", type=float, default=defaults.lam, help="splitting weight")
    group.add_argument("--max-outer", type=int, default=defaults.max_outer)
    group.add_argument("--max-inner", type=int, default=defaults.max_inner)
    group.add_argument("--tol-constraint", type=float, default=defaults.tol_constraint)
    group.add_argument("--tol-change", type=float, default=defaults.tol_change)


def _solver_config(args: argparse.Namespace) -> SolverConfig:
    return SolverConfig(
        mu=args.mu,
        lam=args.lam,
        max_outer=args.max_outer,
        max_inner=args.max_inner,
        tol_constraint=args.tol_constraint,
        tol_change=args.tol_change,
    )


def _add_detection_options(parser: argparse.ArgumentParser) -> None:
    defaults = DetectionConfig()
    group = parser.add_argument_group("detection")
    group.add_argument(
        "--statistic",
        choices=[s.value for s in Statistic],
        default=defaults.statistic.value,
    )
    group.add_argument("--radius", type=int, default=defaults.neighborhood_radius,
                       help="bulk coherence window radius")
    group.add_argument("--persistence", type=int, default=defaults.persistence_length,
                       help="consecutive frames required above threshold")
    group.add_argument("--margin", type=float, default=defaults.threshold_margin,
                       help="threshold = (1 + margin) * background max")
    group.add_argument("--no-demean", action="store_true",
                       help="score the pixel under test without removing the background mean")
    group.add_argument("--signature-is-absolute", action="store_true",
                       help="the signature is a radiance, centre it on the background mean")
    group.add_argument("--bins", type=int, default=defaults.histogram_bins)


def _detection_config(args: argparse.Namespace) -> DetectionConfig:
    return DetectionConfig(
        neighborhood_radius=args.radius,
        persistence_length=args.persistence,
        threshold_margin=args.margin,
        statistic=Statistic(args.statistic),
        demean=not args.no_demean,
        signature_is_absolute=args.signature_is_absolute,
        histogram_bins=args.bins,
    )


# Commands

def _scenario(args: argparse.Namespace) -> SynthConfig:
    if args.config:
        try:
            cfg = SynthConfig.from_dict(json.loads(Path(args.config).read_text()))
        except (json.JSONDecodeError, TypeError) as exc:
            raise InvalidParameterError(f"invalid scenario file {args.config}: {exc}") from exc
    else:
        found = get_scenario(args.scenario)
        if found is None:
            raise InvalidParameterError(
                f"unknown scenario {args.scenario!r}; choose from {list_scenarios()}"
            )
        cfg = found
    overrides = {
        "seed": args.seed,
        "frame_count": args.frames,
        "peak_strength": args.kappa,
        "noise_sigma": args.noise,
    }
    data = cfg.to_dict()
    data.update({key: value for key, value in overrides.items() if value is not None})
    return SynthConfig.from_dict(data)


def cmd_synth(args: argparse.Namespace) -> int:
    cfg = _scenario(args)
    out = Path(args.out)
    truth = Path(args.truth) if args.truth else out.with_suffix(".truth.hsc")
    signature = Path(args.signature) if args.signature else out.with_suffix(".signature.txt")
    synthesize(cfg, out, truth, signature, workers=args.workers)
    out.with_suffix(".config.json").write_text(json.dumps(cfg.to_dict(), indent=2) + "\n")
    print(f"video:     {out}\ntruth:     {truth}\nsignature: {signature}")
    return EXIT_OK


def cmd_sample(args: argparse.Namespace) -> int:
    video = load_video(args.video)
    measurements, op = sample_video(video, args.rate, args.seed, flip_signs=not args.no_sign_flips)
    save_measurements(measurements, args.out)
    print(f"{len(measurements)} frames, k={op.k} of n={op.n} ({100 * op.effective_rate:.2f}%) -> {args.out}")
    return EXIT_OK


def cmd_reconstruct(args: argparse.Namespace) -> int:
    measurements = load_measurements(args.measurements)
    video, reports = reconstruct_video(
        measurements,
        cfg=_solver_config(args),
        workers=args.workers,
        strict=args.strict,
    )
    save_video(video, args.out)
    print_solver_summary(reports)
    return EXIT_OK


def cmd_detect(args: argparse.Namespace) -> int:
    video = load_video(args.video)
    signature = load_signature(args.signature, video.b)
    cfg = _detection_config(args)
    result = detect(video, signature, args.background_frames, cfg, workers=args.workers)
    frame = write_detection(result, cfg, args.counts, args.histogram, args.histogram_frame)
    if args.scores:
        if not args.truth or args.kappa is None:
            raise InvalidParameterError("--scores needs --truth and --kappa")
        mask = load_truth_mask(args.truth, args.kappa)
        write_scores(score_detection(result, mask), args.scores)
    print(f"threshold: {result.threshold:.6g}")
    print(f"peak:      {max(result.counts)} px at frame {result.peak_frame()} (histogram frame {frame})")
    return EXIT_OK


def cmd_compare(args: argparse.Namespace) -> int:
    raw = read_counts(args.counts_raw)
    recon = read_counts(args.counts_recon)
    scores_raw = read_scores(args.scores_raw) if args.scores_raw else None
    scores_recon = read_scores(args.scores_recon) if args.scores_recon else None
    summary = compare_counts(raw, recon, scores_raw, scores_recon)
    write_comparison(raw, recon, args.out)
    print_comparison_summary(summary)
    return EXIT_OK


def cmd_init(args: argparse.Namespace) -> int:
    found = get_scenario(args.scenario)
    if found is None:
        raise InvalidParameterError(f"unknown scenario {args.scenario!r}; choose from {list_scenarios()}")
    manifest = PipelineManifest(
        workdir=args.workdir,
        synth=found,
        rate=args.rate,
        operator_seed=args.seed,
        workers=args.workers,
    )
    save_manifest(manifest, args.manifest)
    print(f"manifest: {args.manifest}")
    return EXIT_OK


def cmd_run(args: argparse.Namespace) -> int:
    manifest = load_manifest(args.manifest)
    stored_workdir = json.loads(Path(args.manifest).read_text())["workdir"]
    summary = run_pipeline(manifest, strict=args.strict)
    save_manifest(manifest, args.manifest, workdir=stored_workdir)
    print_comparison_summary(summary)
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    video = load_video(args.video)
    signature = load_signature(args.signature, video.b)
    mask = load_truth_mask(args.truth, args.kappa)
    points = run_sweep(
        video,
        mask,
        signature,
        args.rates,
        args.background_frames,
        seed=args.seed,
        flip_signs=not args.no_sign_flips,
        solver=_solver_config(args),
        detection=_detection_config(args),
        workers=args.workers,
    )
    write_sweep(sweep_table(points), args.out)
    print_sweep_table(points)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="csplume",
        description="Compressive sampling, reconstruction and plume detection for hyperspectral video.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    parser.add_argument("-q", "--quiet", action="store_true", help="warnings only")
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("synth", help="generate a synthetic plume video")
    p.add_argument("--scenario", default="default", help=f"one of {list_scenarios()}")
    p.add_argument("--config", help="scenario JSON file (overrides --scenario)")
    p.add_argument("--seed", type=int)
    p.add_argument("--frames", type=int)
    p.add_argument("--kappa", type=float, help="peak plume strength")
    p.add_argument("--noise", type=float, help="noise standard deviation")
    p.add_argument("--out", required=True, help="output HSC video")
    p.add_argument("--truth", help="ground-truth alpha HSC (default <out>.truth.hsc)")
    p.add_argument("--signature", help="signature text file (default <out>.signature.txt)")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_synth)

    p = commands.add_parser("sample", help="measure a video with a Walsh-Hadamard operator")
    p.add_argument("video")
    p.add_argument("--rate", type=float, default=0.10)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--no-sign-flips", action="store_true")
    p.add_argument("--out", required=True, help="output HSM file")
    p.set_defaults(func=cmd_sample)

    p = commands.add_parser("reconstruct", help="split Bregman reconstruction of an HSM file")
    p.add_argument("measurements")
    p.add_argument("--out", required=True, help="output HSC video")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--strict", action="store_true", help="exit 5 if any band does not converge")
    _add_solver_options(p)
    p.set_defaults(func=cmd_reconstruct)

    p = commands.add_parser("detect", help="run one detection arm on a video")
    p.add_argument("video")
    p.add_argument("--signature", required=True)
    p.add_argument("--background-frames", type=parse_frames, required=True, help="e.g. 0:20")
    p.add_argument("--counts", required=True, help="output frame,count CSV")
    p.add_argument("--histogram", required=True, help="output histogram CSV")
    p.add_argument("--histogram-frame", type=int, help="frame to histogram (default: peak)")
    p.add_argument("--scores", help="output per-frame scores CSV against ground truth")
    p.add_argument("--truth", help="ground-truth alpha HSC")
    p.add_argument("--kappa", type=float, help="peak strength the truth was generated with")
    p.add_argument("--workers", type=int, default=1)
    _add_detection_options(p)
    p.set_defaults(func=cmd_detect)

    p = commands.add_parser(
        "compare",
        help="compare raw and reconstructed count curves",
        description="Compare raw and reconstructed count curves. Separation gaps are read from "
        "the per-frame scores CSVs and are reported as n/a unless both --scores-raw and "
        "--scores-recon are given.",
    )
    p.add_argument("counts_raw")
    p.add_argument("counts_recon")
    p.add_argument("--out", required=True, help="output comparison CSV")
    p.add_argument("--scores-raw", help="raw-arm scores CSV (detect --scores), needed for gaps")
    p.add_argument(
        "--scores-recon", help="reconstructed-arm scores CSV (detect --scores), needed for gaps"
    )
    p.set_defaults(func=cmd_compare)

    p = commands.add_parser("init", help="write a pipeline manifest")
    p.add_argument("manifest")
    p.add_argument("--scenario", default="default")
    p.add_argument("--workdir", default=".")
    p.add_argument("--rate", type=float, default=0.10)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_init)

    p = commands.add_parser("run", help="run the whole pipeline from a manifest")
    p.add_argument("manifest")
    p.add_argument("--strict", action="store_true")
    p.set_defaults(func=cmd_run)

    p = commands.add_parser("sweep", help="detection statistics across sampling rates")
    p.add_argument("video")
    p.add_argument("--signature", required=True)
    p.add_argument("--truth", required=True)
    p.add_argument("--kappa", type=float, required=True)
    p.add_argument("--background-frames", type=parse_frames, required=True)
    p.add_argument("--rates", type=parse_rates, default=[0.05, 0.10, 0.20, 0.50])
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--no-sign-flips", action="store_true")
    p.add_argument("--out", required=True, help="output sweep CSV")
    p.add_argument("--workers", type=int, default=1)
    _add_solver_options(p)
    _add_detection_options(p)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose, args.quiet)
    try:
        return int(args.func(args))
    except (CsPlumeError, OSError) as exc:
        logger.error("%s", exc)
        return exit_code_for(exc)


if __name__ == "__main__":
    sys.exit(main())

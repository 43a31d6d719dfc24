"""Command-line experiment runner.

Exit codes: 0 success, 1 usage error, 2 I/O error, 3 numerical failure.
"""
import argparse
import logging
import sys
from pathlib import Path

from .errors import DimensionError, ImageError, NumericalError
from .experiments import DEFAULT_VARIANTS, ExperimentSpec, TaskError, run_experiment, write_csv

log = logging.getLogger("sqholo")

EXIT_USAGE, EXIT_IO, EXIT_NUMERICAL = 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _levels(text):
    if text in ("continuous", "inf"):
        return None
    return int(text)


def _csv_list(cast):
    def parse(text):
        return tuple(cast(v) for v in text.split(",") if v)
    return parse


def build_parser():
    p = _Parser(prog="sqholo", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    help_text = {
        "single": "single-transform frames (one row per replicate)",
        "gs": "Gerchberg-Saxton convergence",
        "sweep-sigma": "sweep the narrow-band seed width",
        "sweep-levels": "sweep the number of phase levels",
        "multiplex": "time-multiplexed average of independent frames",
    }
    for name, text in help_text.items():
        s = sub.add_parser(name, help=text)
        s.add_argument("--image", default="coffee",
                       help="PGM/PNG path or bundled name (coffee, camera)")
        s.add_argument("--size", type=int, default=128,
                       help="resample to SIZE x SIZE (nearest); 0 keeps native size")
        s.add_argument("--target-domain", choices=("intensity", "amplitude"), default="intensity")
        s.add_argument("--levels", type=_levels, default=256,
                       help="phase levels, or 'continuous'")
        s.add_argument("--sigma", type=float,
                       default=0.01 if name == "sweep-levels" else 0.05)
        s.add_argument("--strategy", type=_csv_list(str), default=DEFAULT_VARIANTS,
                       help="comma-separated variants, e.g. nnq-uniform,ssq-banded")
        s.add_argument("--fresnel-q", type=float, default=0.0,
                       help="quadratic phase coefficient (rad/pixel^2); 0 = Fraunhofer")
        s.add_argument("--subframes", type=int, default=24)
        s.add_argument("--iterations", type=int, default=25)
        s.add_argument("--replicates", type=int, default=20)
        s.add_argument("--seed", type=int, default=0)
        if name.startswith("sweep"):
            cast = float if name == "sweep-sigma" else int
            s.add_argument("--values", type=_csv_list(cast), default=(),
                           help="comma-separated sweep values")
        s.add_argument("--workers", type=int, default=1)
        s.add_argument("--timing", action="store_true",
                       help="record wall times (makes the CSV non-reproducible)")
        s.add_argument("--out", default="-", help="CSV path, '-' for stdout")
        s.add_argument("--plot", action="store_true",
                       help="also render an SVG figure next to the CSV")
    return p


def spec_from_args(args):
    return ExperimentSpec(
        kind=args.command,
        image=args.image,
        size=args.size or None,
        target_domain=args.target_domain,
        levels=args.levels,
        sigma=args.sigma,
        fresnel_q=args.fresnel_q,
        subframes=args.subframes,
        iterations=args.iterations,
        variants=tuple(args.strategy),
        sweep=getattr(args, "values", ()),
        replicates=args.replicates,
        seed=args.seed,
        workers=args.workers,
        timing=args.timing,
    )


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        spec = spec_from_args(args)
    except (ValueError, DimensionError) as exc:
        parser.error(str(exc))

    try:
        result = run_experiment(spec)
    except ImageError as exc:
        log.error("%s", exc)
        return EXIT_IO
    except TaskError as exc:
        log.error("%s", exc)
        if isinstance(exc.cause, (ValueError, DimensionError)) and not isinstance(exc.cause, NumericalError):
            return EXIT_USAGE
        return EXIT_NUMERICAL

    try:
        if args.out == "-":
            write_csv(result, sys.stdout)
            plot_path = Path(f"{spec.kind}.svg")
        else:
            out = Path(args.out)
            with open(out, "w", newline="") as fh:
                write_csv(result, fh)
            plot_path = out.with_suffix(".svg")
        if args.plot:
            from .report import plot_summary

            plot_summary(result, plot_path)
            log.info("figure written to %s", plot_path)
    except OSError as exc:
        log.error("%s", exc)
        return EXIT_IO
    return 0


if __name__ == "__main__":
    sys.exit(main())

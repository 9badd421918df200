import argparse
import logging
import sys
from collections.abc import Sequence

from horserace.cli.commands import COMMANDS
from horserace.cli.config import load_config
from horserace.config import logger
from horserace.utils.errors import ComputationError, ConfigError, IngestionError

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INGESTION = 3
EXIT_COMPUTATION = 4
EXIT_IO = 5

# flag dest -> config key; values are passed through as strings
_FLAG_KEYS = {
    "realizations": "realizations",
    "survey": "survey",
    "candidate": "candidate",
    "horizons": "horizons",
    "losses": "losses",
    "cut": "cut",
    "benchmarks": "benchmarks",
    "cv_source": "cv_source",
    "out": "out",
    "seed": "seed",
    "workers": "workers",
}


def _common_arguments() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat key = value config file")
    common.add_argument("--out", help="output directory (default: out)")
    common.add_argument("--seed", help="master seed for simulated critical values")
    common.add_argument("--workers", help="threads for grid cells and AR fits")
    common.add_argument("--realizations", help="period,value CSV of realized inflation")
    common.add_argument(
        "--forecast",
        action="append",
        default=[],
        metavar="LABEL=PATH",
        help="origin,horizon,value forecast panel (repeatable)",
    )
    common.add_argument("--survey", help="pub_year,pub_month,target_year,value survey CSV")
    common.add_argument("--candidate", help="source label tested against every other source")
    common.add_argument("--horizons", help="comma-separated horizons, e.g. 0,1,2,4,8,12")
    common.add_argument("--losses", help="comma-separated losses, e.g. quadratic,absolute,linex(0.5)")
    common.add_argument("--cut", help="sub-sample cut: auto, none or YYYYQn")
    common.add_argument("--benchmarks", help="comma-separated benchmarks to generate: rw, ar")
    common.add_argument("--cv-source", dest="cv_source", help="fixed_b, fixed_b_simulated or standard_normal")
    common.add_argument(
        "--set",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override any config key (repeatable)",
    )
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug logging")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="horserace",
        description="Compare inflation forecasts with random-walk and AR benchmarks under fixed-b inference.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    common = _common_arguments()

    descriptions = {
        "bench": "write benchmark forecast panels",
        "summary": "summary statistics of forecast errors",
        "compare": "Diebold-Mariano test grid with plot data",
        "mz": "rationality regressions",
        "fluct": "rolling-window Diebold-Mariano statistics",
        "align-survey": "turn fixed-event survey forecasts into a fixed-horizon panel",
    }
    for name, description in descriptions.items():
        subparsers.add_parser(name, parents=[common], help=description, description=description)
    return parser


def collect_overrides(args: argparse.Namespace) -> dict[str, str]:
    """Command-line settings as config overrides. Dedicated flags win over --set."""
    overrides: dict[str, str] = {}
    for item in args.set:
        key, separator, value = item.partition("=")
        if not separator or not key.strip():
            raise ConfigError(f"--set expects KEY=VALUE, got {item!r}")
        overrides[key.strip().lower()] = value.strip()

    if args.forecast:
        overrides["forecasts"] = ",".join(args.forecast)
    for dest, key in _FLAG_KEYS.items():
        value = getattr(args, dest)
        if value is not None:
            overrides[key] = value
    return overrides


def _configure_logging(verbosity: int):
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)

    try:
        config = load_config(args.config, collect_overrides(args))
        paths = COMMANDS[args.command](config)
    except ConfigError as exc:
        print(f"horserace: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except IngestionError as exc:
        print(f"horserace: {exc}", file=sys.stderr)
        return EXIT_INGESTION
    except ComputationError as exc:
        print(f"horserace: {exc}", file=sys.stderr)
        return EXIT_COMPUTATION
    except OSError as exc:
        print(f"horserace: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO

    logger.info(f"{args.command} wrote {len(paths)} files")
    for path in paths:
        print(path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

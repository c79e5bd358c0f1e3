import argparse
import logging
import os
import sys

from dotenv import load_dotenv

from src.sweep.csv_output import write_result
from src.sweep.runner import run_sweep
from src.sweep.spec import build_spec, read_config_entries
from src.utils import config
from src.utils.env_utils import ensure_env_file_exists, get_env_value
from src.utils.exceptions import CasimirError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CONVERGENCE = 2
EXIT_INTERNAL = 3

# command-line flag -> config key; flags override the file
FLAG_KEYS = {
    "materials": "materials",
    "f": "f",
    "wavelength": "lambda",
    "H": "H",
    "R": "R",
    "a_points": "a_points",
    "outputs": "outputs",
    "rel_tol": "rel_tol",
    "abs_tol": "abs_tol",
    "max_subdivisions": "max_subdivisions",
    "m_max": "m_max",
    "series_tail_tol": "series_tail_tol",
    "threads": "threads",
}


class SweepArgumentParser(argparse.ArgumentParser):
    """Usage errors exit with status 1 like every other input error."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = SweepArgumentParser(
        description="Casimir-Lifshitz forces between lamellar heterostructures: parameter sweep to CSV"
    )
    parser.add_argument("--config", type=str, help="Sweep file in key=value format")
    parser.add_argument("--materials", type=str, help="High and low material, e.g. gold,air")
    parser.add_argument("--f", type=str, help="Fill fraction(s), comma separated")
    parser.add_argument("--lambda", dest="wavelength", type=str, help="Wavelength with unit, e.g. 1um")
    parser.add_argument("--H", type=str, help="Gap(s) with unit, e.g. 100nm,300nm")
    parser.add_argument("--R", type=str, help="Sphere radius with unit, e.g. 180um")
    parser.add_argument("--a-points", dest="a_points", type=str, help="Displacements on [0, 1)")
    parser.add_argument(
        "--outputs", type=str, help=f"Comma separated subset of {','.join(config.OUTPUT_CHOICES)}"
    )
    parser.add_argument("--rel-tol", dest="rel_tol", type=str, help="Relative tolerance of the ζ integrals")
    parser.add_argument("--abs-tol", dest="abs_tol", type=str, help="Absolute tolerance floor")
    parser.add_argument("--max-subdivisions", dest="max_subdivisions", type=str, help="Bisections per integral")
    parser.add_argument("--m-max", dest="m_max", type=str, help="Largest harmonic index")
    parser.add_argument("--series-tail-tol", dest="series_tail_tol", type=str, help="Harmonic series tail tolerance")
    parser.add_argument(
        "--threads", type=str, help=f"Worker threads (default: ${config.THREADS_ENV_VAR} or 1)"
    )
    parser.add_argument("--out", type=str, help="Row table path (default: stdout)")
    parser.add_argument("--summary", type=str, help="Per-(f, H) summary table path")
    parser.add_argument(
        "--log-level",
        type=str,
        default=get_env_value(os.environ, config.LOG_LEVEL_ENV_VAR, "INFO"),
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help=f"Logging level (default: ${config.LOG_LEVEL_ENV_VAR} or INFO)",
    )
    return parser


def collect_entries(args: argparse.Namespace):
    entries = {}
    if args.config:
        with open(args.config, "r", encoding="utf-8") as f:
            entries = read_config_entries(f.read())
    for flag, key in FLAG_KEYS.items():
        value = getattr(args, flag)
        if value is not None:
            entries[key] = (None, value)
    return entries


def main(argv=None) -> int:
    load_dotenv()
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=getattr(logging, args.log_level))

    try:
        spec = build_spec(collect_entries(args))
    except (CasimirError, OSError) as e:
        logger.error(f"❌ {e}")
        return EXIT_USAGE

    try:
        result = run_sweep(spec)
        text = write_result(result, args.out, args.summary)
    except KeyboardInterrupt:
        logger.info("🛑 Interrupted, no output written")
        return EXIT_INTERNAL
    except Exception as e:
        logger.error(f"❌ Sweep failed: {e}", exc_info=True)
        return EXIT_INTERNAL

    if args.out is None:
        sys.stdout.write(text)
    if result.failed:
        logger.warning("Some blocks did not converge; their rows are flagged in the status column")
        return EXIT_CONVERGENCE
    return EXIT_OK


if __name__ == "__main__":
    # Ensure .env file exists before loading it
    ensure_env_file_exists()
    sys.exit(main())

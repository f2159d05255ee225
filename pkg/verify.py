"""
Command-line front end for the verification suites.

    python verify.py appendix-a --kmax 128
    python verify.py mahowald --pmax 512 --format tsv
    python verify.py all --jobs 4 --out report.json
    python verify.py diagram "X(11)" -3 8 --dot
"""
import argparse
import logging
import sys

from services.steenrod_service import build_cell_diagram, render_dot, render_text
from services.suite_service import (
    DEFAULT_JOBS,
    DEFAULT_KMAX,
    DEFAULT_MMAX,
    DEFAULT_PMAX,
    DEFAULT_QMAX,
    SUITES,
    SuiteParams,
    canonical_json,
    render_json,
    render_tsv,
    run_suite,
)
from utils.errors import ParameterError
from utils.log_setup import configure_logging
from utils.param_validator import validate_spectrum_label, validate_window

LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def build_parser():
    parser = argparse.ArgumentParser(
        description="Exact verification of the Pin(2) Mahowald line computations")
    subparsers = parser.add_subparsers(dest="command", required=True)

    verbosity = argparse.ArgumentParser(add_help=False)
    verbosity.add_argument("-v", "--verbose", action="count", default=0,
                           help="Log progress to stderr (-v info, -vv debug)")

    shared = argparse.ArgumentParser(add_help=False, parents=[verbosity])
    shared.add_argument("--kmax", type=int, default=DEFAULT_KMAX, help="Largest k swept")
    shared.add_argument("--mmax", type=int, default=DEFAULT_MMAX, help="Largest Thom spectrum index m swept")
    shared.add_argument("--pmax", type=int, default=DEFAULT_PMAX, help="Largest level p swept")
    shared.add_argument("--qmax", type=int, default=DEFAULT_QMAX, help="Largest level q swept")
    shared.add_argument("--deg-bound", type=int, default=None, help="Degree bound on P(A), default 4k+8")
    shared.add_argument("--jobs", type=int, default=DEFAULT_JOBS, help="Worker processes")
    shared.add_argument("--format", choices=["json", "tsv"], default="json", help="Report format")
    shared.add_argument("--out", default=None, help="Write the report to this path instead of stdout")

    for name in SUITES + ("all",):
        subparsers.add_parser(name, parents=[shared], help=f"Run the {name} suite")

    diagram = subparsers.add_parser("diagram", parents=[verbosity], help="Print the cell diagram of X(m) on [a, b]")
    diagram.add_argument("spectrum", help='Spectrum label, e.g. "X(11)"')
    diagram.add_argument("a", help="Bottom cell dimension")
    diagram.add_argument("b", help="Top cell dimension")
    diagram.add_argument("--dot", action="store_true", help="Emit DOT instead of the line format")
    return parser


def _write(text, path):
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)


def run_diagram(args):
    is_valid, m, error = validate_spectrum_label(args.spectrum)
    if not is_valid:
        raise ParameterError(error)
    is_valid, window, error = validate_window(args.a, args.b)
    if not is_valid:
        raise ParameterError(error)
    desc = build_cell_diagram(m, *window)
    sys.stdout.write(render_dot(desc, f"X({m})") if args.dot else render_text(desc))
    return EXIT_OK


def run_report(args):
    params = SuiteParams(
        kmax=args.kmax,
        mmax=args.mmax,
        pmax=args.pmax,
        qmax=args.qmax,
        deg_bound=args.deg_bound,
        jobs=args.jobs,
    )
    report = run_suite(args.command, params)
    _write(render_tsv(report) if args.format == "tsv" else render_json(report), args.out)
    if not report.passed:
        sys.stderr.write("FAIL " + canonical_json(report.first_failure()) + "\n")
        return EXIT_FAILED
    return EXIT_OK


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    try:
        if args.command == "diagram":
            return run_diagram(args)
        return run_report(args)
    except ParameterError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

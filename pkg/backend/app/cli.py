"""
OreSolve CLI - Command-line front end for the difference operator engine
Prints one JSON report per run; the exit code mirrors the report status
"""
import argparse
import logging
import sys
from typing import List, Optional

from app.core.config import settings
from app.core.errors import OreSolveError, ParseError, RequiresExtension
from app.core.logging_setup import setup_logging
from app.services import pipeline
from app.services.corpus import corpus
from app.services.pipeline import EXIT_CODES, USAGE_EXIT, RunOptions
from app.services.solve import REQUIRES_EXTENSION
from app.services.report import build_report, to_json

logger = logging.getLogger(__name__)

SINGLE = ("factor", "absfactor", "section", "solve3", "solve4", "sympow", "extpow")
PAIRED = ("symprod", "gaugehom", "projhom")


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _engine_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--filter", choices=("det", "none"), default=None,
                   help="determinant filter on candidate types (default from settings)")
    p.add_argument("--trace", action="store_true", help="log one line per tested candidate")
    p.add_argument("--progress", action="store_true", help="show progress bars")
    p.add_argument("--seed", type=int, default=None, help="seed for randomized choices and checks")
    p.add_argument("--workers", type=int, default=None, help="threads for candidate testing")
    p.add_argument("--degree-cap", type=int, default=None, help="largest polynomial degree searched")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings in the report")
    p.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING ...")


def build_parser() -> Parser:
    parser = Parser(prog="oresolve", description="Solve order 3 and 4 difference operators "
                                                 "in terms of order 2 operators")
    sub = parser.add_subparsers(dest="command", parser_class=Parser)
    for name in SINGLE:
        p = sub.add_parser(name, help=f"{name} an operator")
        p.add_argument("operator", help="operator text in x and t, or @name for a corpus entry")
        if name == "factor":
            p.add_argument("--order", type=int, required=True)
        if name == "section":
            p.add_argument("--p", type=int, required=True)
        if name in ("sympow", "extpow"):
            p.add_argument("--d", type=int, required=True)
        _engine_flags(p)
    for name in PAIRED:
        p = sub.add_parser(name, help=f"{name} of two operators")
        p.add_argument("operator", help="first operator")
        p.add_argument("target", help="second operator")
        if name == "projhom":
            p.add_argument("--terms", type=int, default=None)
        _engine_flags(p)
    p = sub.add_parser("verify", help="check a corpus entry against its oracle and determinant")
    p.add_argument("entry")
    p.add_argument("--terms", type=int, default=None)
    _engine_flags(p)
    p = sub.add_parser("check", help="run a corpus entry's expected command and compare")
    p.add_argument("entry")
    _engine_flags(p)
    p = sub.add_parser("corpus", help="list corpus entries")
    p.add_argument("--log-level", default=None)
    return parser


def _apply_settings(args: argparse.Namespace) -> None:
    setup_logging(args.log_level or settings.log_level)
    for flag, attr in (("trace", "trace"), ("progress", "progress")):
        if getattr(args, flag, False):
            setattr(settings, attr, True)
    for flag, attr in (("seed", "seed"), ("workers", "workers"), ("degree_cap", "degree_cap")):
        value = getattr(args, flag, None)
        if value is not None:
            setattr(settings, attr, value)


def _options(args: argparse.Namespace) -> RunOptions:
    flt = getattr(args, "filter", None)
    return RunOptions(
        order=getattr(args, "order", None),
        p=getattr(args, "p", None),
        d=getattr(args, "d", None),
        terms=getattr(args, "terms", None),
        use_filter=None if flt is None else flt == "det",
        timings=getattr(args, "timings", False),
    )


def _list_corpus() -> int:
    for name, entry in corpus.load().items():
        expected = f"{entry.expected.command} {' '.join(f'{k}={v}' for k, v in entry.expected.params.items())}" \
            if entry.expected else "-"
        print(f"{name:20s} order {entry.operator.order}  {expected.strip():45s} {entry.description}")
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("missing command")
        _apply_settings(args)
        if args.command == "corpus":
            return _list_corpus()
        if args.command == "check":
            checked = pipeline.check_entry(args.entry, _options(args).use_filter)
            print(to_json(build_report(checked.result)))
            for m in checked.mismatches:
                print(f"mismatch: {m}", file=sys.stderr)
            return 0 if checked.ok else 1
        operands = [args.entry] if args.command == "verify" else \
            [args.operator] + ([args.target] if args.command in PAIRED else [])
        result = pipeline.run(args.command, operands, _options(args))
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"error: {e}", file=sys.stderr)
        return USAGE_EXIT
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        if e.text:
            print(f"  {e.text}\n  {' ' * e.position}^", file=sys.stderr)
        return USAGE_EXIT
    except RequiresExtension as e:
        print(f"requires extension: {e}", file=sys.stderr)
        return EXIT_CODES[REQUIRES_EXTENSION]
    except OreSolveError as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE_EXIT
    print(to_json(build_report(result)))
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())

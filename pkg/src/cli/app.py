"""
Command-line application

    composer.py solve --kb corpus/population-dynamics.kb \
        --scenario corpus/pred-prey-prey.scenario --prefs corpus/population-dynamics.prefs
    composer.py solve --problem corpus/six-attribute.problem --max-solutions 3
    composer.py dump-csp --kb ... --scenario ...
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from ..config import Settings
from ..core.adpcsp import dump_problem
from ..core.errors import ComposerError
from .config import COMMANDS, OUTPUT_FORMATS, RunConfig
from .pipeline import (
    UnsatisfiableScenario, build_problem, check_labels, generate_space, load_knowledge_base, run,
)
from .render import render_kb, render_labels, render_result, render_space

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNSATISFIABLE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="composer",
        description="Compose ecological models from a knowledge base, a scenario and preferences",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--kb", dest="kb_paths", action="append", type=Path, default=[],
                        help="knowledge base file (repeatable)")
    parser.add_argument("--scenario", dest="scenario_path", type=Path)
    parser.add_argument("--problem", dest="problem_path", type=Path,
                        help="standalone constraint problem file, instead of --kb/--scenario")
    parser.add_argument("--prefs", dest="pref_path", type=Path)
    parser.add_argument("--require", dest="requirements", action="append", default=[],
                        help="required global property, e.g. '(endogenous size-1)' (repeatable)")
    parser.add_argument("--max-solutions", type=int, default=Settings.MAX_SOLUTIONS)
    parser.add_argument("--format", dest="output_format", choices=OUTPUT_FORMATS, default=Settings.OUTPUT_FORMAT)
    parser.add_argument("--oracle-bound", type=int,
                        help="cross-check labels or solutions against enumeration up to this bound")
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="-v for stage messages, -vv for every step")
    return parser


def configure_logging(verbosity: int) -> None:
    logging.basicConfig(
        level=Settings.get_log_level(verbosity),
        format=Settings.LOG_FORMAT,
        stream=sys.stderr,
        force=True,
    )


def execute(cfg: RunConfig) -> str:
    """Run one command and return what it prints"""
    if cfg.command == "solve":
        return render_result(run(cfg), cfg.output_format)
    if cfg.command == "dump-csp":
        return dump_problem(build_problem(cfg)[1])
    if cfg.command == "check-kb":
        return render_kb(load_knowledge_base(cfg)[0])
    space = generate_space(cfg)
    if cfg.command == "dump-space":
        return render_space(space)
    if cfg.oracle_bound is not None:
        check_labels(space.atms, cfg.oracle_bound)
    return render_labels(space)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    try:
        cfg = RunConfig(
            command=args.command,
            kb_paths=args.kb_paths,
            scenario_path=args.scenario_path,
            problem_path=args.problem_path,
            pref_path=args.pref_path,
            requirements=args.requirements,
            max_solutions=args.max_solutions,
            output_format=args.output_format,
            oracle_bound=args.oracle_bound,
        )
        output = execute(cfg)
    except ValidationError as e:
        for error in e.errors():
            print(f"invalid configuration: {error['msg']}", file=sys.stderr)
        return EXIT_ERROR
    except UnsatisfiableScenario as e:
        print(e.describe(), file=sys.stderr)
        return EXIT_UNSATISFIABLE
    except ComposerError as e:
        print(e.describe(), file=sys.stderr)
        return EXIT_ERROR
    sys.stdout.write(output)
    return EXIT_OK

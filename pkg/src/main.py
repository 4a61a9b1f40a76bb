import argparse
import sys
from logging import getLogger

from pydantic import ValidationError

from src.cli.schemas import Command, OutputFormat, RunConfig, RunResult
from src.cli.service import render
from src.cli.views import EXIT_MISMATCH, EXIT_USAGE
from src.config import settings
from src.context import get_run_id
from src.cover_counts.schemas import CountMethod
from src.exceptions import ContourOrderingError, DegreeMismatchError, IntegralityError, WorkBoundExceededError
from src.graph_enum.schemas import GraphClassVariant
from src.logging_config import setup_logging
from src.middleware import with_run_id
from src.router import command_router


log = getLogger(__name__)


@with_run_id
def run(config: RunConfig) -> RunResult:
    handler = command_router[config.command]
    try:
        exit_code, report = handler(config)
    except WorkBoundExceededError as e:
        log.error(f"Run ID: [{get_run_id()}] {e}")
        return RunResult(
            exit_code=EXIT_USAGE,
            error=f"error: {e.what} needs ~{e.estimate} operations, work bound is {e.bound} (raise --work-bound)",
        )
    except IntegralityError as e:
        log.error(f"Run ID: [{get_run_id()}] {e}")
        return RunResult(exit_code=EXIT_MISMATCH, error=f"error: {e}")
    except (ValueError, DegreeMismatchError, ContourOrderingError) as e:
        log.error(f"Run ID: [{get_run_id()}] invalid input: {e}")
        return RunResult(exit_code=EXIT_USAGE, error=f"error: {e}")

    return RunResult(exit_code=exit_code, output=render(report, config.output_format))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=[f.value for f in OutputFormat], help="report format (default: text)")
    common.add_argument("--output", dest="output_path", help="write the report here instead of stdout")
    common.add_argument("--work-bound", type=int, help=f"max elementary operations per count (default: {settings.work_bound})")
    common.add_argument("--threads", type=int, help="worker threads (env HURWITZ_CX_THREADS)")

    parser = argparse.ArgumentParser(
        prog=settings.project_name,
        description="Exact counts of simply-ramified covers of C^x, checked against graph integrals.",
        epilog=(
            "Feasible ranges: bruteforce counts d <= 6, b <= 5; fast counts d <= 8, b <= 6 "
            "and well beyond; graph refinement d <= 5, b <= 4."
        ),
    )
    commands = parser.add_subparsers(dest="command", required=True)

    count = commands.add_parser(Command.COUNT.value, parents=[common], help="n_{b;d;e} for one key")
    count.add_argument("--b", type=int, default=0)
    count.add_argument("--d", type=int, nargs="+", required=True, help="parts d_1 .. d_k")
    count.add_argument("--e", type=int, nargs="+", required=True, help="parts e_1 .. e_l")
    count.add_argument("--method", choices=[m.value for m in CountMethod])

    graphs = commands.add_parser(Command.GRAPHS.value, parents=[common], help="list the graph class G_{b,k,l}")
    graphs.add_argument("--b", type=int, default=0)
    graphs.add_argument("--k", type=int, default=1)
    graphs.add_argument("--l", type=int, default=1)
    graphs.add_argument("--variant", choices=[v.value for v in GraphClassVariant])

    integral = commands.add_parser(Command.INTEGRAL.value, parents=[common], help="graph integrals at one coefficient")
    integral.add_argument("--b", type=int, default=0)
    integral.add_argument("--d", type=int, nargs="+", required=True)
    integral.add_argument("--e", type=int, nargs="+", required=True)
    integral.add_argument("--variant", choices=[v.value for v in GraphClassVariant])
    integral.add_argument("--numeric-check", action="store_true", help="compare contour quadrature with the exact series")
    integral.add_argument("--z", type=float, help="value of every z (default: 0.2)")
    integral.add_argument("--w", type=float, help="value of every w (default: 1.0)")
    integral.add_argument("--truncation", type=int, help="series degree cutoff D")
    integral.add_argument("--quadrature-points", type=int)

    table = commands.add_parser(Command.TABLE.value, parents=[common], help="coefficients of F_{b,k,l}")
    table.add_argument("--b", type=int, default=0)
    table.add_argument("--k", type=int, default=1)
    table.add_argument("--l", type=int, default=1)
    table.add_argument("--d-max", type=int, required=True)
    table.add_argument("--method", choices=[m.value for m in CountMethod])

    boson = commands.add_parser(Command.VERIFY_BOSON.value, parents=[common], help="check the boson formula")
    boson.add_argument("--b-max", type=int, required=True)
    boson.add_argument("--k-max", type=int, default=1)
    boson.add_argument("--l-max", type=int, default=1)
    boson.add_argument("--d-max", type=int, required=True)
    boson.add_argument("--per-graph", action="store_true", help="compare graph by graph")

    fermion = commands.add_parser(Command.VERIFY_FERMION.value, parents=[common], help="check the fermion product formula")
    fermion.add_argument("--b-max", type=int, required=True)
    fermion.add_argument("--d-max", type=int, required=True)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging()

    values = {name: value for name, value in vars(args).items() if value is not None}
    try:
        config = RunConfig(**values)
    except ValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    result = run(config)
    if result.error:
        print(result.error, file=sys.stderr)
    if result.output:
        if config.output_path:
            config.output_path.write_text(result.output, encoding="utf-8")
        else:
            sys.stdout.write(result.output)
    return result.exit_code


if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        pass

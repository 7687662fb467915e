"""Command-line interface for multiset-codes.

Exposes bounds, code constructions, encoding and decoding, B_t set checks,
exact search and channel simulation. Results go to stdout as JSON (default)
or CSV; diagnostics go to stderr.

Exit codes: 0 on success, 1 for invalid parameters, failed decodes, bad
configuration and usage errors, 2 for exceeded caps and internal failures.
"""

import csv
import functools
import io
import json
import logging
import sys
from dataclasses import dataclass
from typing import Any, Callable, Optional, TypeVar

import click

from src.channel import REPORT_SCHEMA_VERSION
from src.codes import (
    DeletionCode,
    ExplicitCode,
    build_code,
    constant_word_code,
    decode_symbols,
    distance_example_codes,
    quaternary_size5_code,
    ternary_size6_code,
)
from src.config_parser import SUPPORTED_FORMATS, ConfigError, ConfigParser, Settings
from src.errors import DecodingError, ParameterError, ResourceLimitError
from src.logging_config import configure_logging
from src.multiset_core import MultisetWord
from src.pipeline import ExperimentPipeline, PipelineError
from src.sidon import BtSetCandidate, find_bt_collision

logger = logging.getLogger(__name__)

__version__ = "1.0.0"

#: Code families accepted by --kind
CODE_KINDS = ["binary", "summod", "cyclic", "ternary", "parity"]

#: Integers beyond this are written as decimal strings
MAX_JSON_INT = 2**63 - 1

F = TypeVar("F", bound=Callable[..., Any])


def _usage_error(message: str) -> click.UsageError:
    error = click.UsageError(message)
    error.exit_code = 1
    return error


class _Command(click.Command):
    """Command whose usage errors exit with status 1."""

    def parse_args(self, ctx: click.Context, args: list[str]) -> list[str]:
        try:
            return super().parse_args(ctx, args)
        except click.UsageError as e:
            e.exit_code = 1
            raise


class _Group(click.Group):
    """Group whose usage errors, unknown subcommands included, exit with status 1."""

    command_class = _Command

    def parse_args(self, ctx: click.Context, args: list[str]) -> list[str]:
        try:
            return super().parse_args(ctx, args)
        except click.UsageError as e:
            e.exit_code = 1
            raise

    def resolve_command(
        self, ctx: click.Context, args: list[str]
    ) -> tuple[Optional[str], Optional[click.Command], list[str]]:
        try:
            return super().resolve_command(ctx, args)
        except click.UsageError as e:
            e.exit_code = 1
            raise


class ResidueType(click.ParamType):
    """A residue a >= 0, or 'auto' for the largest class."""

    name = "residue"

    def convert(self, value: Any, param: Optional[click.Parameter], ctx: Optional[click.Context]) -> Optional[int]:
        if value is None or isinstance(value, int):
            return value
        if str(value).lower() == "auto":
            return None
        try:
            return int(value)
        except ValueError:
            self.fail(f"{value!r} is neither an integer nor 'auto'", param, ctx)


@dataclass
class CliState:
    """Settings and output format shared by all subcommands."""

    settings: Settings
    output_format: str
    config_path: Optional[str] = None


def _jsonable(value: Any) -> Any:
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return str(value) if abs(value) > MAX_JSON_INT else value
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _to_csv(rows: list[dict[str, Any]]) -> str:
    fieldnames: list[str] = []
    for row in rows:
        fieldnames.extend(k for k in row if k not in fieldnames)
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=fieldnames, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(
            {k: json.dumps(v) if isinstance(v, (dict, list)) else v for k, v in row.items()}
        )
    return buffer.getvalue().rstrip("\n")


def _emit(state: CliState, data: dict[str, Any], rows: Optional[list[dict[str, Any]]] = None) -> None:
    """Write a result to stdout in the selected format.

    Args:
        state: CLI state holding the output format
        data: Full result, written as one JSON object
        rows: Table written instead of data in CSV mode (default: data as one row)
    """
    data = _jsonable(data)
    if state.output_format == "csv":
        click.echo(_to_csv(_jsonable(rows) if rows is not None else [data]))
    else:
        click.echo(json.dumps(data, sort_keys=True))


def _handle_errors(func: F) -> F:
    """Map library errors to 'Error: ...' on stderr and the documented exit codes."""

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except click.ClickException:
            raise
        except (ParameterError, DecodingError, ConfigError) as e:
            click.echo(f"Error: {str(e)}", err=True)
            sys.exit(1)
        except (ResourceLimitError, PipelineError) as e:
            click.echo(f"Error: {str(e)}", err=True)
            sys.exit(2)
        except Exception as e:
            logger.debug("Unexpected error", exc_info=True)
            click.echo(f"Error: Unexpected error - {str(e)}", err=True)
            sys.exit(2)

    return wrapper  # type: ignore[return-value]


def _read_json_input(inline: Optional[str], what: str) -> str:
    if inline is not None:
        return inline
    data = click.get_text_stream("stdin").read().strip()
    if not data:
        raise _usage_error(f"provide {what} as an option or on stdin")
    return data


def _code_options(func: F) -> F:
    """Options identifying a code: --kind, --n, --q, --t, --a."""
    options = [
        click.option("--kind", type=click.Choice(CODE_KINDS), required=True, help="Code family"),
        click.option("--n", "n", type=int, required=True, help="Cardinality of codewords"),
        click.option("--q", "q", type=int, default=None, help="Alphabet size (implied for binary, ternary)"),
        click.option("--t", "t", type=int, default=None, help="Deletions to correct"),
        click.option("--a", "a", type=ResidueType(), default="auto", help="Residue, or 'auto' (default)"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _build(
    state: CliState, kind: str, n: int, q: Optional[int], t: Optional[int], a: Optional[int]
) -> DeletionCode:
    logger.debug(f"building {kind} code: n={n}, q={q}, t={t}, a={a}")
    return build_code(kind, n, q, t, a, cap=state.settings.enumeration_cap)


@click.group(cls=_Group, invoke_without_command=True)
@click.option(
    "--config",
    "config_path",
    type=click.Path(exists=True, dir_okay=False),
    help="Configuration file with defaults and batch jobs (.multiset-codes.yaml)",
)
@click.option(
    "--format",
    "output_format",
    type=click.Choice(SUPPORTED_FORMATS),
    default=None,
    help="Output format (default: json, or the config file's format)",
)
@click.option("-v", "--verbose", is_flag=True, help="Enable debug logging for detailed output")
@click.option("-q", "--quiet", is_flag=True, help="Only log warnings and errors")
@click.option("--version", is_flag=True, help="Show version")
@click.pass_context
def main(
    ctx: click.Context,
    config_path: Optional[str],
    output_format: Optional[str],
    verbose: bool,
    quiet: bool,
    version: bool,
) -> None:
    """Multiset deletion codes: bounds, constructions, decoding and search.

    \b
    Examples:
      multiset-codes bounds --n 10 --q 3 --t 8
      multiset-codes construct --kind cyclic --n 6 --q 3 --t 2
      multiset-codes search --n 4 --q 3 --t 1
      echo '[0,2,2]' | multiset-codes decode --kind cyclic --n 6 --q 3 --t 2 --a 0
      multiset-codes --config .multiset-codes.yaml batch
    """
    # Configure logging early
    configure_logging(verbose=verbose, quiet=quiet)

    if version:
        click.echo(f"multiset-codes v{__version__} (report schema {REPORT_SCHEMA_VERSION})")
        ctx.exit(0)

    logger.debug(f"CLI invoked with config={config_path}, format={output_format}")
    try:
        if config_path:
            settings = ConfigParser(config_path).get_settings()
        else:
            settings = Settings.from_environment()
    except ConfigError as e:
        click.echo(f"Error: {str(e)}", err=True)
        sys.exit(1)

    ctx.obj = CliState(settings, output_format or settings.output_format, config_path)
    if ctx.invoked_subcommand is None:
        click.echo(ctx.get_help())


@main.command()
@click.option("--n", "n", type=int, required=True, help="Cardinality")
@click.option("--q", "q", type=int, required=True, help="Alphabet size")
@click.option("--t", "t", type=int, required=True, help="Deletions to correct")
@click.option("--all", "show_all", is_flag=True, help="Include applicability and parameters of every bound")
@click.pass_obj
@_handle_errors
def bounds(state: CliState, n: int, q: int, t: int, show_all: bool) -> None:
    """Evaluate every upper bound on S_q(n, t) and name the best one.

    Bounds outside their regime are reported as "n/a".
    """
    job = {"task": "bounds", "n": n, "q": q, "t": t, "all": show_all}
    report = ExperimentPipeline(state.settings).run_job(job)
    if show_all:
        rows = report["reports"]
    else:
        rows = [{"name": name, "value": value} for name, value in report["bounds"].items()]
    _emit(state, report, rows=rows)


@main.command()
@_code_options
@click.pass_obj
@_handle_errors
def construct(state: CliState, kind: str, n: int, q: Optional[int], t: Optional[int], a: Optional[int]) -> None:
    """Print code parameters, size and redundancy."""
    _emit(state, _build(state, kind, n, q, t, a).describe())


@main.command()
@_code_options
@click.option("--index", "index", type=int, required=True, help="Message index in [0, size)")
@click.pass_obj
@_handle_errors
def encode(
    state: CliState, kind: str, n: int, q: Optional[int], t: Optional[int], a: Optional[int], index: int
) -> None:
    """Map a message index to its codeword."""
    code = _build(state, kind, n, q, t, a)
    word = code.encode(index)
    _emit(state, {"index": index, "codeword": list(word.counts)})


@main.command()
@_code_options
@click.option("--word", "word", default=None, help="Received word as a JSON count array (default: stdin)")
@click.option("--symbols", "symbols", default=None, help="Received tokens as a JSON list of symbols")
@click.pass_obj
@_handle_errors
def decode(
    state: CliState,
    kind: str,
    n: int,
    q: Optional[int],
    t: Optional[int],
    a: Optional[int],
    word: Optional[str],
    symbols: Optional[str],
) -> None:
    """Recover the codeword and the deleted multiset from a received word."""
    code = _build(state, kind, n, q, t, a)
    if word is not None and symbols is not None:
        raise _usage_error("--word and --symbols are mutually exclusive")
    if symbols is not None:
        try:
            tokens = json.loads(symbols)
        except json.JSONDecodeError as e:
            raise ParameterError(f"Invalid symbols JSON: {str(e)}") from e
        if not isinstance(tokens, list) or not all(isinstance(s, int) for s in tokens):
            raise ParameterError("--symbols must be a JSON list of integers")
        result = decode_symbols(code, tokens)
    else:
        received = MultisetWord.from_json(_read_json_input(word, "the received word"), q=code.q)
        result = code.decode(received)
    _emit(state, {**result.to_dict(), "deletions": result.pattern.n})


@main.command()
@click.option("--g", "g", type=int, required=True, help="Order of the cyclic group Z_g")
@click.option("--elements", "elements", required=True, help="Comma-separated residues, e.g. 0,1,3")
@click.option("--t", "t", type=int, required=True, help="Largest number of summands")
@click.pass_obj
@_handle_errors
def sidon(state: CliState, g: int, elements: str, t: int) -> None:
    """Check whether a subset of Z_g is a B_t set."""
    try:
        values = tuple(int(e) for e in elements.split(",") if e.strip())
    except ValueError as e:
        raise ParameterError(f"--elements must be comma-separated integers: {str(e)}") from e
    cand = BtSetCandidate(g, values)
    collision = find_bt_collision(cand, t, cap=state.settings.enumeration_cap)
    _emit(
        state,
        {
            "g": g,
            "elements": list(cand.elements),
            "t": t,
            "is_bt_set": collision is None,
            "collision": None if collision is None else [list(x.counts) for x in collision],
        },
    )


@main.command()
@click.option("--n", "n", type=int, required=True, help="Cardinality")
@click.option("--q", "q", type=int, required=True, help="Alphabet size")
@click.option("--t", "t", type=int, required=True, help="Deletions to correct")
@click.option("--cap", "cap", type=int, default=None, help="Largest space searched exactly")
@click.option("--node-limit", "node_limit", type=int, default=None, help="Stop after this many nodes")
@click.option("--emit-witness/--no-witness", default=True, help="Include the optimal code")
@click.pass_obj
@_handle_errors
def search(
    state: CliState, n: int, q: int, t: int, cap: Optional[int], node_limit: Optional[int], emit_witness: bool
) -> None:
    """Compute S_q(n, t) exactly by branch and bound."""
    job = {"task": "search", "n": n, "q": q, "t": t, "cap": cap, "node_limit": node_limit, "emit_witness": emit_witness}
    _emit(state, ExperimentPipeline(state.settings).run_job(job))


@main.command()
@_code_options
@click.option("--mode", type=click.Choice(["exhaustive", "random"]), default="exhaustive", help="Pattern source")
@click.option("--t-max", "t_max", type=int, default=None, help="Deletions per transmission (default: the code's t)")
@click.option("--seed", type=int, default=0, help="Random seed (random mode)")
@click.option("--trials", type=int, default=1000, help="Transmissions (random mode)")
@click.option("--workers", type=int, default=None, help="Decoding threads (random mode)")
@click.pass_obj
@_handle_errors
def simulate(
    state: CliState,
    kind: str,
    n: int,
    q: Optional[int],
    t: Optional[int],
    a: Optional[int],
    mode: str,
    t_max: Optional[int],
    seed: int,
    trials: int,
    workers: Optional[int],
) -> None:
    """Send codewords through the deletion channel and decode them."""
    job: dict[str, Any] = {
        "task": "simulate",
        "kind": kind,
        "n": n,
        "q": q,
        "t": t,
        "a": a,
        "mode": mode,
        "seed": seed,
        "trials": trials,
        "workers": workers,
    }
    if t_max is not None:
        job["t_max"] = t_max
    report = ExperimentPipeline(state.settings).run_job(job)
    _emit(state, report, rows=report["failures"] or [{k: v for k, v in report.items() if k != "failures"}])


FIXTURES: dict[str, Callable[[], ExplicitCode]] = {
    "ternary6": ternary_size6_code,
    "quaternary5": quaternary_size5_code,
    "distance3": lambda: distance_example_codes()[0],
    "distance4": lambda: distance_example_codes()[1],
}


@main.command()
@click.option("--t", "t", type=int, default=None, help="Deletions to correct (default: the fixture's t)")
@click.option("--words", "words", default=None, help="JSON list of count arrays (default: stdin)")
@click.option("--fixture", type=click.Choice(sorted(FIXTURES)), default=None, help="Verify a built-in code")
@click.option("--constant", "constant", nargs=2, type=int, default=None, help="Constant-word code for N Q")
@click.pass_obj
@_handle_errors
def verify(
    state: CliState,
    t: Optional[int],
    words: Optional[str],
    fixture: Optional[str],
    constant: Optional[tuple[int, int]],
) -> None:
    """Check a code by minimum distance and by disjoint deletion outputs."""
    if fixture or constant:
        code = FIXTURES[fixture]() if fixture else constant_word_code(*constant)  # type: ignore[misc]
        word_list = [list(w.counts) for w in code.words]
        t = code.t if t is None else t
    else:
        if t is None:
            raise _usage_error("--t is required unless --fixture or --constant is given")
        try:
            word_list = json.loads(_read_json_input(words, "the code words"))
        except json.JSONDecodeError as e:
            raise ParameterError(f"Invalid words JSON: {str(e)}") from e
        if not isinstance(word_list, list) or not all(isinstance(w, list) for w in word_list):
            raise ParameterError("words must be a JSON list of count arrays")
    report = ExperimentPipeline(state.settings).run_job({"task": "verify", "t": t, "words": word_list})
    _emit(state, report)


@main.command()
@click.pass_obj
@_handle_errors
def batch(state: CliState) -> None:
    """Run the jobs listed in the --config file."""
    if not state.config_path:
        raise _usage_error("batch needs --config")
    config = ConfigParser(state.config_path)
    config.validate()
    jobs = config.get_jobs()

    def progress_callback(message: str) -> None:
        click.echo(f"[*] {message}", err=True)

    pipeline = ExperimentPipeline(state.settings, progress_callback=progress_callback)
    results = pipeline.process_batch(jobs)
    _emit(state, {"results": results}, rows=[{"job": r["job"], "task": r["task"], "report": r["report"]} for r in results])


if __name__ == "__main__":
    main()

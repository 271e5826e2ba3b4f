"""Main CLI entry point for qsna."""

import os
from pathlib import Path
from typing import Optional

import typer
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from . import __app_name__, __version__
from .arbitrage import ArbitrageWitness, diagnose, find_arbitrage, verify_witness
from .config import get_config, parse_range
from .harness import gen_instance, run_all
from .market import ScenarioTree, validate
from .market.codec import InstanceFormatError, dump_tree, dumps, load_tree, read_json
from .priors import METHODS, construct_pstar

console = Console()
err_console = Console(stderr=True)

# Exit codes
EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2

app = typer.Typer(
    name=__app_name__,
    help="Quasi-sure no-arbitrage on finite multi-prior scenario trees",
    add_completion=False,
)


def version_callback(value: bool) -> None:
    """Show version and exit."""
    if value:
        console.print(f"[bold blue]{__app_name__}[/bold blue] version [green]{__version__}[/green]")
        raise typer.Exit()


@app.callback()
def main(
    version: Optional[bool] = typer.Option(
        None, "--version", "-v", callback=version_callback, is_eager=True,
        help="Show version information."
    ),
    debug: bool = typer.Option(
        False, "--debug", "-d",
        help="Enable debug mode with detailed logging."
    ),
) -> None:
    """qsna - decide robust no-arbitrage, extract witnesses, build P*."""
    # Set debug mode before anything logs
    if debug:
        os.environ["QSNA_LOG_LEVEL"] = "DEBUG"
        err_console.print("[yellow]Debug mode enabled: Detailed logging will be shown.[/yellow]")

    from .logging_config import get_logger
    logger = get_logger()
    logger.debug("qsna starting")


# ───────────────────── Helpers ─────────────────────

def _fail(message: str, code: int = EXIT_INPUT) -> None:
    err_console.print(Panel.fit(f"[red]{message}[/red]", title="[bold red]Error[/bold red]", border_style="red"))
    raise typer.Exit(code)


def _load_instance(path: Path, require_valid: bool = True) -> ScenarioTree:
    try:
        tree = load_tree(path)
    except InstanceFormatError as e:
        _fail(f"{path}: {e}")
    except OSError as e:
        _fail(f"cannot read {path}: {e.strerror or e}")
    if require_valid:
        violations = validate(tree)
        if violations:
            _fail(f"{path}: invalid instance: " + "; ".join(violations[:5]))
    return tree


def _resolve_format(fmt: Optional[str]) -> str:
    fmt = fmt or get_config().format
    if fmt not in ("json", "text"):
        raise typer.BadParameter(f"format must be json or text, got {fmt!r}", param_hint="--format")
    return fmt


def _emit(data: dict, output: Optional[Path], fmt: str, render) -> None:
    """Write the JSON document to ``output`` or stdout; text mode renders it instead."""
    text = dumps(data)
    if output is not None:
        output.write_text(text, encoding="utf-8")
    if fmt == "text":
        render(data)
    elif output is None:
        typer.echo(text, nl=False)


def _range_option(value: Optional[str], name: str):
    if value is None:
        return None
    try:
        return parse_range(value)
    except ValueError as e:
        raise typer.BadParameter(str(e), param_hint=name)


def _verdict_style(ok: bool) -> str:
    return "[green]yes[/green]" if ok else "[red]no[/red]"


# ───────────────────── Text renderings ─────────────────────

def _render_validation(data: dict) -> None:
    if data["valid"]:
        console.print(Panel.fit("[green]Instance is valid[/green]", border_style="cyan"))
        return
    table = Table(show_header=True, header_style="bold magenta", border_style="cyan")
    table.add_column("Violation", style="red")
    for violation in data["violations"]:
        table.add_row(violation)
    console.print(table)


def _render_report(data: dict) -> None:
    table = Table(show_header=True, header_style="bold magenta", border_style="cyan")
    table.add_column("Node", style="cyan")
    table.add_column("NA holds")
    table.add_column("Relevant")
    table.add_column("Witness / certificate", style="dim")
    for verdict in data["nodes"]:
        detail = verdict.get("witness") or verdict.get("certificate") or []
        table.add_row(
            repr(verdict["node"]),
            _verdict_style(verdict["holds"]),
            "yes" if verdict["relevant"] else "polar",
            ", ".join(detail),
        )
    console.print(table)
    title = "NA(Q^T) holds" if data["global_na"] else "NA(Q^T) fails"
    lines = [f"failing relevant nodes: {data['failing_relevant'] or 'none'}",
             f"failing polar nodes: {data['failing_polar'] or 'none'}"]
    console.print(Panel.fit("\n".join(lines), title=f"[bold blue]{title}[/bold blue]", border_style="blue"))


def _render_witness(data: dict) -> None:
    table = Table(show_header=True, header_style="bold magenta", border_style="cyan")
    table.add_column("Node", style="cyan")
    table.add_column("Position", style="green")
    for node, position in sorted(data["strategy"]["positions"].items()):
        table.add_row(repr(node), ", ".join(position))
    console.print(table)
    console.print(f"profit path: [bold]{'/'.join(data['profit_path'])}[/bold]")


def _render_certificate(data: dict) -> None:
    table = Table(show_header=True, header_style="bold magenta", border_style="cyan")
    table.add_column("Node", style="cyan")
    table.add_column("Kernel weights", style="dim")
    table.add_column("Aff match")
    table.add_column("0 in Ri")
    for check in data["checks"]:
        weights = data["kernels"].get(check["node"], [])
        table.add_row(repr(check["node"]), ", ".join(weights),
                      _verdict_style(check["aff_match"]), _verdict_style(check["ri_zero"]))
    console.print(table)
    status = "[green]valid[/green]" if data["valid"] else "[red]invalid[/red]"
    console.print(f"P* certificate ({data['method']}): {status}")


def _render_verification(data: dict) -> None:
    if data["valid"]:
        console.print(Panel.fit("[green]Witness verified[/green]", border_style="cyan"))
        return
    for problem in data["problems"]:
        console.print(f"[red]- {problem}[/red]")


def _render_harness(data: dict, wall_time: float) -> None:
    table = Table(show_header=True, header_style="bold magenta", border_style="cyan")
    table.add_column("Check", style="cyan")
    table.add_column("Instances", justify="right")
    table.add_column("Agree", justify="right", style="green")
    table.add_column("Skipped", justify="right", style="dim")
    table.add_column("Disagree", justify="right", style="red")
    for name, stats in data["checks"].items():
        table.add_row(name, str(stats["instances"]), str(stats["agreements"]),
                      str(stats["skipped"]), str(len(stats["disagreements"])))
    console.print(table)
    status = "[green]all checks agree[/green]" if data["ok"] else "[red]disagreements found[/red]"
    console.print(f"{data['n_instances']} instances, {status} [dim]({wall_time:.2f}s)[/dim]")
    for name, stats in data["checks"].items():
        for item in stats["disagreements"]:
            console.print(f"[red]{name}[/red] seed {item['seed']}: {item['problems'][0]}")


# ───────────────────── Commands ─────────────────────

INPUT_OPTION = typer.Option(..., "--input", "-i", help="Instance file (canonical JSON)")
OUTPUT_OPTION = typer.Option(None, "--output", "-o", help="Write the JSON result to this file")
FORMAT_OPTION = typer.Option(None, "--format", "-f", help="Output format: json or text")


@app.command("validate")
def validate_command(
    input: Path = INPUT_OPTION,
    output: Optional[Path] = OUTPUT_OPTION,
    format: Optional[str] = FORMAT_OPTION,
) -> None:
    """Check an instance file against every invariant of the market model."""
    fmt = _resolve_format(format)
    tree = _load_instance(input, require_valid=False)
    violations = validate(tree)
    _emit({"valid": not violations, "violations": violations}, output, fmt, _render_validation)
    raise typer.Exit(EXIT_OK if not violations else EXIT_NEGATIVE)


@app.command("check-na")
def check_na_command(
    input: Path = INPUT_OPTION,
    output: Optional[Path] = OUTPUT_OPTION,
    format: Optional[str] = FORMAT_OPTION,
) -> None:
    """Diagnose NA at every node and decide quasi-sure NA for the tree."""
    fmt = _resolve_format(format)
    report = diagnose(_load_instance(input))
    _emit(report.to_dict(), output, fmt, _render_report)
    raise typer.Exit(EXIT_OK if report.global_holds else EXIT_NEGATIVE)


@app.command("find-arbitrage")
def find_arbitrage_command(
    input: Path = INPUT_OPTION,
    output: Optional[Path] = OUTPUT_OPTION,
    format: Optional[str] = FORMAT_OPTION,
) -> None:
    """Extract an arbitrage witness (strategy, measure, profit path)."""
    fmt = _resolve_format(format)
    witness = find_arbitrage(_load_instance(input))
    if witness is None:
        err_console.print("[yellow]no arbitrage exists[/yellow]")
        raise typer.Exit(EXIT_NEGATIVE)
    _emit(witness.to_dict(), output, fmt, _render_witness)
    raise typer.Exit(EXIT_OK)


@app.command("construct-pstar")
def construct_pstar_command(
    input: Path = INPUT_OPTION,
    output: Optional[Path] = OUTPUT_OPTION,
    format: Optional[str] = FORMAT_OPTION,
    method: str = typer.Option("mixture", "--method", "-m", help="p-hat construction: mixture or greedy"),
) -> None:
    """Build the dominating prior P* and its per-node certificate."""
    fmt = _resolve_format(format)
    if method not in METHODS:
        raise typer.BadParameter(f"method must be one of {', '.join(METHODS)}", param_hint="--method")
    certificate = construct_pstar(_load_instance(input), method)
    _emit(certificate.to_dict(), output, fmt, _render_certificate)
    raise typer.Exit(EXIT_OK if certificate.valid else EXIT_NEGATIVE)


@app.command("verify-witness")
def verify_witness_command(
    input: Path = INPUT_OPTION,
    witness: Path = typer.Option(..., "--witness", "-w", help="Witness file produced by find-arbitrage"),
    output: Optional[Path] = OUTPUT_OPTION,
    format: Optional[str] = FORMAT_OPTION,
) -> None:
    """Re-check a witness exactly against an instance."""
    fmt = _resolve_format(format)
    tree = _load_instance(input)
    try:
        parsed = ArbitrageWitness.from_dict(read_json(witness))
    except InstanceFormatError as e:
        _fail(f"{witness}: {e}")
    except OSError as e:
        _fail(f"cannot read {witness}: {e.strerror or e}")
    problems = verify_witness(tree, parsed)
    _emit({"valid": not problems, "problems": problems}, output, fmt, _render_verification)
    raise typer.Exit(EXIT_OK if not problems else EXIT_NEGATIVE)


SEED_OPTION = typer.Option(None, "--seed", "-s", help="Seed (default: QSNA_SEED or 0)")
PERIODS_OPTION = typer.Option(None, "--periods", help="Horizon, N or LO-HI")
DIM_OPTION = typer.Option(None, "--dim", help="Asset dimension, N or LO-HI")
LABELS_OPTION = typer.Option(None, "--labels", help="Alphabet size, N or LO-HI")
GENERATORS_OPTION = typer.Option(None, "--generators", help="Generators per node, N or LO-HI")
DENOMINATOR_OPTION = typer.Option(None, "--denominator-bound", help="Largest grid denominator")
FORCE_OPTION = typer.Option(False, "--force-arbitrage", help="Plant an arbitrage at a relevant node")


def _generator_config(seed, periods, dim, labels, generators, denominator_bound, force_arbitrage):
    try:
        return get_config().generator_config(
            force_arbitrage=force_arbitrage,
            seed=seed,
            periods=_range_option(periods, "--periods"),
            dims=_range_option(dim, "--dim"),
            labels=_range_option(labels, "--labels"),
            generators=_range_option(generators, "--generators"),
            denominator_bound=denominator_bound,
        )
    except ValueError as e:
        # pydantic's ValidationError is a ValueError
        raise typer.BadParameter(str(e))


@app.command("gen")
def gen_command(
    output: Optional[Path] = OUTPUT_OPTION,
    seed: Optional[int] = SEED_OPTION,
    periods: Optional[str] = PERIODS_OPTION,
    dim: Optional[str] = DIM_OPTION,
    labels: Optional[str] = LABELS_OPTION,
    generators: Optional[str] = GENERATORS_OPTION,
    denominator_bound: Optional[int] = DENOMINATOR_OPTION,
    force_arbitrage: bool = FORCE_OPTION,
) -> None:
    """Generate a random instance in the canonical format."""
    config = _generator_config(seed, periods, dim, labels, generators, denominator_bound, force_arbitrage)
    text = dump_tree(gen_instance(config))
    if output is not None:
        output.write_text(text, encoding="utf-8")
    else:
        typer.echo(text, nl=False)


@app.command("harness")
def harness_command(
    output: Optional[Path] = OUTPUT_OPTION,
    format: Optional[str] = FORMAT_OPTION,
    seed: Optional[int] = SEED_OPTION,
    periods: Optional[str] = PERIODS_OPTION,
    dim: Optional[str] = DIM_OPTION,
    labels: Optional[str] = LABELS_OPTION,
    generators: Optional[str] = GENERATORS_OPTION,
    denominator_bound: Optional[int] = DENOMINATOR_OPTION,
    force_arbitrage: bool = FORCE_OPTION,
    instances: Optional[int] = typer.Option(None, "--instances", "-n", min=0, help="Corpus size"),
) -> None:
    """Cross-check every criterion against the LP oracles on a random corpus."""
    fmt = _resolve_format(format)
    config = _generator_config(seed, periods, dim, labels, generators, denominator_bound, force_arbitrage)
    settings = get_config()
    count = settings.instances if instances is None else instances
    report = run_all(config, count, class_samples=settings.class_samples)
    _emit(report.to_dict(), output, fmt, lambda data: _render_harness(data, report.wall_time))
    raise typer.Exit(EXIT_OK if report.ok else EXIT_NEGATIVE)


def run() -> None:
    """Entry point for the CLI."""
    app()

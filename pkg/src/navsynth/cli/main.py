"""
navsynth command-line interface.

Generates grounded navigation-instruction datasets from a map bundle and a
template grammar, and evaluates goal predictions against them.

Examples:
  navsynth synth-map --out data/
  navsynth validate-map --entities data/entities.jsonl --streets data/streets.jsonl
  navsynth generate --entities data/entities.jsonl --streets data/streets.jsonl \\
      --mode cfg --n 1000 --seed 7 --out out/cfg.jsonl
  navsynth stats out/cfg.jsonl
  navsynth evaluate out/cfg.jsonl --baseline landmark \\
      --entities data/entities.jsonl --streets data/streets.jsonl --cdf-out cdf.csv
  navsynth grammar enumerate

Environment Variables:
  NAVSYNTH_*                 settings overrides (see navsynth.config)
  NAVSYNTH_REWRITER_TOKEN    bearer token of the http rewriter
"""

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import click
import yaml
from pydantic import ValidationError

from navsynth import __version__
from navsynth.cli.runconfig import RunConfig, split_config_file
from navsynth.config import AppSettings, WorkerKind, get_settings, load_yaml_config
from navsynth.exceptions import NavSynthError
from navsynth.generator import (
    DatasetGenerator,
    dataset_stats,
    file_sha256,
    find_placeholder_residue,
    read_records,
    template_pool_for,
    verify_records,
    write_records,
    write_stats_csv,
)
from navsynth.grammar import (
    TemplatePool,
    count_templates,
    enumerate_templates,
    lint_grammar,
    minimal_cover,
    parse_grammar,
)
from navsynth.logging import RunLedger, get_logger, setup_logging
from navsynth.mapgraph import build_grid_city, load_bundle, validate_bundle, write_bundle
from navsynth.mapgraph.bundle import MapBundle
from navsynth.metrics import (
    cdf_export,
    evaluate,
    join_predictions,
    landmark_baseline,
    read_predictions,
    write_cdf_csv,
    write_report,
)
from navsynth.models import GenerationMode, MetricsConfig, RunManifest, Template
from navsynth.rewriters import create_rewriter


logger = get_logger(__name__)

MODE_CHOICES = [m.value for m in GenerationMode]


class CommandError(click.ClickException):
    """Pipeline failure reported on stderr with exit code 1."""

    def show(self, file: Any = None) -> None:
        click.echo(f"[ERROR] {self.format_message()}", err=True)


class NavSynthGroup(click.Group):
    """Command group that turns library errors into exit code 1."""

    def invoke(self, ctx: click.Context) -> Any:
        try:
            return super().invoke(ctx)
        except NavSynthError as e:
            logger.debug("Command failed", error_type=type(e).__name__)
            raise CommandError(str(e)) from e


@dataclass
class CliState:
    settings: AppSettings
    run_values: dict[str, Any]


# ========== Helpers ==========


def _state(ctx: click.Context) -> CliState:
    state = ctx.find_object(CliState)
    if state is None:
        raise click.UsageError("command must run inside the navsynth group")
    return state


def _run_config(ctx: click.Context, **flags: Any) -> tuple[RunConfig, AppSettings]:
    state = _state(ctx)
    try:
        config = RunConfig.resolve(state.settings, state.run_values, **flags)
        return config, config.apply(state.settings)
    except ValidationError as e:
        raise click.UsageError(f"invalid run configuration: {e}") from e


def _load_bundle(config: RunConfig, settings: AppSettings) -> MapBundle:
    try:
        entities, streets = config.require_bundle()
    except ValueError as e:
        raise click.UsageError(str(e)) from e
    return load_bundle(entities, streets, settings.map)


def _load_templates(config: RunConfig, settings: AppSettings) -> list[Template]:
    grammar = parse_grammar(config.grammar)
    return enumerate_templates(grammar, cap=settings.generation.template_cap)


def bundle_sha256(entities: Path, streets: Path) -> str:
    """Digest over the digests of both bundle files."""
    digest = hashlib.sha256()
    digest.update(file_sha256(entities).encode("ascii"))
    digest.update(file_sha256(streets).encode("ascii"))
    return digest.hexdigest()


def manifest_path(out: Path) -> Path:
    return out.with_name(out.name + ".manifest.json")


def _echo_ok(message: str) -> None:
    click.echo(f"[OK] {message}")


def _echo_info(message: str) -> None:
    click.echo(f"[INFO] {message}")


def _echo_warning(message: str) -> None:
    click.echo(f"[WARN] {message}", err=True)


def _echo_table(rows: list[tuple[str, str]]) -> None:
    width = max(len(name) for name, _ in rows)
    for name, value in rows:
        click.echo(f"  {name:<{width}}  {value}")


def _echo_templates(templates: list[Template]) -> None:
    for t in templates:
        click.echo(f"{t.id}\t{t.style.value}\t{t.text}")


bundle_options = [
    click.option("--entities", type=click.Path(exists=True, dir_okay=False, path_type=Path)),
    click.option("--streets", type=click.Path(exists=True, dir_okay=False, path_type=Path)),
]

grammar_option = click.option(
    "--grammar",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="Grammar file (default: shipped grammar)",
)


def with_bundle_options(fn: Any) -> Any:
    for option in reversed(bundle_options):
        fn = option(fn)
    return fn


# ========== Commands ==========


@click.group(cls=NavSynthGroup)
@click.version_option(__version__, prog_name="navsynth")
@click.option(
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
    default=None,
    help="Log level (default: from settings)",
)
@click.option("--log-format", type=click.Choice(["json", "text"]), default=None)
@click.option(
    "--config",
    "config_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="YAML run configuration",
)
@click.pass_context
def cli(
    ctx: click.Context, log_level: str | None, log_format: str | None, config_path: Path | None
) -> None:
    """Grounded navigation-instruction dataset generation and evaluation."""
    settings = get_settings()
    run_values: dict[str, Any] = {}
    if config_path is not None:
        try:
            run_values, sections = split_config_file(load_yaml_config(config_path))
            settings = settings.with_overrides(sections)
        except (ValueError, yaml.YAMLError) as e:
            raise click.UsageError(f"{config_path}: {e}") from e

    setup_logging(
        level=(log_level or settings.logging.level.value).upper(),
        format=log_format or settings.logging.format,
        log_file=settings.logging.file,
        include_caller=settings.logging.include_caller,
    )
    ctx.obj = CliState(settings=settings, run_values=run_values)


@cli.command("validate-map")
@with_bundle_options
@click.pass_context
def validate_map_cmd(ctx: click.Context, entities: Path | None, streets: Path | None) -> None:
    """Run every load-time check on a map bundle; diagnostics go to stderr as JSON."""
    config, settings = _run_config(ctx, entities=entities, streets=streets)
    try:
        entities_path, streets_path = config.require_bundle()
    except ValueError as e:
        raise click.UsageError(str(e)) from e

    report = validate_bundle(entities_path, streets_path, settings.map)
    payload = {
        "clean": report.is_clean,
        "errors": len(report.errors),
        "diagnostics": [d.model_dump(mode="json") for d in report.diagnostics],
    }
    click.echo(json.dumps(payload, indent=2), err=True)

    if not report.is_clean:
        click.echo(f"[FAIL] {len(report.errors)} error(s) in bundle", err=True)
        ctx.exit(1)
    bundle = report.bundle
    summary = (
        f"bundle clean: {len(bundle.entities)} entities, "
        f"{bundle.node_count} nodes, {bundle.edge_count} edges"
        if bundle is not None
        else "bundle clean"
    )
    _echo_ok(summary)


@cli.command("generate")
@with_bundle_options
@grammar_option
@click.option("--mode", type=click.Choice(MODE_CHOICES), default=None)
@click.option("--n", "n", type=click.IntRange(min=0), default=None, help="Records to generate")
@click.option("--seed", type=click.IntRange(min=0, max=2**64 - 1), default=None)
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None)
@click.option("--retries", type=click.IntRange(min=0), default=None)
@click.option("--rewriter", default=None, help="identity | fixture:PATH | http:URL")
@click.option("--jobs", type=click.IntRange(min=1), default=None, help="Parallel workers")
@click.option(
    "--executor",
    type=click.Choice([k.value for k in WorkerKind]),
    default=None,
    help="Run workers as threads or forked processes",
)
@click.option(
    "--ledger", type=click.Path(dir_okay=False, path_type=Path), default=None, help="Run ledger"
)
@click.pass_context
def generate_cmd(
    ctx: click.Context,
    entities: Path | None,
    streets: Path | None,
    grammar: Path | None,
    mode: str | None,
    n: int | None,
    seed: int | None,
    out: Path | None,
    retries: int | None,
    rewriter: str | None,
    jobs: int | None,
    executor: str | None,
    ledger: Path | None,
) -> None:
    """Generate a JSONL dataset and its manifest."""
    config, settings = _run_config(
        ctx,
        entities=entities,
        streets=streets,
        grammar=grammar,
        mode=mode,
        n=n,
        seed=seed,
        out=out,
        retries=retries,
        rewriter=rewriter,
        jobs=jobs,
        executor=executor,
    )
    if config.out is None:
        raise click.UsageError("--out is required")

    bundle = _load_bundle(config, settings)
    templates = _load_templates(config, settings) if config.mode.uses_grammar else []
    pool = template_pool_for(config.mode, templates)
    instruction_rewriter = None
    if config.mode is GenerationMode.PROMPT:
        try:
            instruction_rewriter = create_rewriter(config.rewriter, settings.rewriter)
        except ValueError as e:
            raise click.BadParameter(str(e), param_hint="--rewriter") from e

    generator = DatasetGenerator(
        bundle, config.mode, settings, pool, instruction_rewriter, RunLedger(ledger)
    )
    result = generator.generate(config.n, config.seed, config.jobs)
    dataset_sha = write_records(result.records, config.out)

    entities_path, streets_path = config.require_bundle()
    manifest = RunManifest(
        version=__version__,
        config=config.model_dump(mode="json"),
        grammar_sha256=file_sha256(config.grammar) if config.mode.uses_grammar else None,
        bundle_sha256=bundle_sha256(entities_path, streets_path),
        dataset_sha256=dataset_sha,
        template_pool_size=len(pool) if pool is not None else "n/a",
        records_requested=config.n,
        records_written=len(result.records),
        misses=result.misses,
        missed_indices=result.missed_indices,
        wall_time_s=result.wall_time_s,
    )
    target = manifest_path(config.out)
    target.write_text(manifest.model_dump_json(indent=2) + "\n", encoding="utf-8")

    if result.misses:
        _echo_warning(f"{result.misses} of {config.n} record(s) could not be generated")
    _echo_ok(f"Wrote {len(result.records)} record(s) to {config.out}")
    _echo_info(f"Manifest: {target}")


@cli.command("stats")
@click.argument("dataset", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), help="CSV output")
def stats_cmd(dataset: Path, out: Path | None) -> None:
    """Average token length, average entities and vocabulary of a dataset."""
    stats = dataset_stats(read_records(dataset))
    _echo_table(stats.as_rows())
    if out is not None:
        write_stats_csv(stats, out)
        _echo_info(f"CSV: {out}")


@cli.command("evaluate")
@click.argument("dataset", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option(
    "--predictions",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help='JSONL of {"id": str, "pred": [lon, lat]}',
)
@click.option("--baseline", type=click.Choice(["landmark"]), default=None)
@with_bundle_options
@click.option(
    "--radius",
    "radii",
    type=click.FloatRange(min=0.0),
    multiple=True,
    help="Accuracy radius in meters (repeatable)",
)
@click.option(
    "--out",
    type=click.Path(dir_okay=False, path_type=Path),
    help="Report JSON (printed after the table when omitted)",
)
@click.option("--cdf-out", type=click.Path(dir_okay=False, path_type=Path), help="CDF CSV")
@click.pass_context
def evaluate_cmd(
    ctx: click.Context,
    dataset: Path,
    predictions: Path | None,
    baseline: str | None,
    entities: Path | None,
    streets: Path | None,
    radii: tuple[float, ...],
    out: Path | None,
    cdf_out: Path | None,
) -> None:
    """Score goal predictions (or a baseline) against a dataset."""
    if (predictions is None) == (baseline is None):
        raise click.UsageError("give exactly one of --predictions or --baseline")
    config, settings = _run_config(ctx, entities=entities, streets=streets, radii=radii)
    records = read_records(dataset)

    if baseline is not None:
        bundle = _load_bundle(config, settings)
        radius = settings.metrics.baseline_radius_m
        outputs = {r.id: landmark_baseline(bundle, r.start, radius) for r in records}
        fallbacks = sum(1 for p in outputs.values() if p.fallback)
        if fallbacks:
            _echo_warning(f"{fallbacks} prediction(s) fell back to the start point")
        predicted = {key: p.point for key, p in outputs.items()}
    elif predictions is not None:
        predicted = read_predictions(predictions)
    else:
        predicted = {}

    pairs = join_predictions(records, predicted)
    metrics_config = MetricsConfig(
        epsilon=settings.metrics.epsilon,
        h_max=settings.metrics.h_max_m,
        radii=config.radii,
    )
    report = evaluate(pairs, metrics_config)
    _echo_table(report.as_rows())

    if out is not None:
        write_report(report, out)
        _echo_info(f"Report: {out}")
    else:
        click.echo(report.model_dump_json(indent=2))
    if cdf_out is not None:
        points = cdf_export(
            pairs, settings.metrics.cdf_max_distance_m, settings.metrics.cdf_steps
        )
        write_cdf_csv(points, cdf_out)
        _echo_info(f"CDF: {cdf_out}")


@cli.command("verify")
@click.argument("dataset", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@with_bundle_options
@grammar_option
@click.option("--ledger", type=click.Path(dir_okay=False, path_type=Path), default=None)
@click.option("--report", type=click.Path(dir_okay=False, path_type=Path), help="Reports JSONL")
@click.pass_context
def verify_cmd(
    ctx: click.Context,
    dataset: Path,
    entities: Path | None,
    streets: Path | None,
    grammar: Path | None,
    ledger: Path | None,
    report: Path | None,
) -> None:
    """Check placeholder residue and re-derive the grounding of template records."""
    config, settings = _run_config(ctx, entities=entities, streets=streets, grammar=grammar)
    records = read_records(dataset)

    residue_failures = 0
    for record in records:
        residue = find_placeholder_residue(record.instruction)
        if residue:
            residue_failures += 1
            click.echo(f"[FAIL] {record.id}: unresolved placeholders {residue}")

    bundle = _load_bundle(config, settings)
    pool = TemplatePool(_load_templates(config, settings))
    checked = grounding_failures = 0
    lines: list[str] = []
    for item in verify_records(records, bundle, pool, settings, RunLedger(ledger)):
        checked += 1
        lines.append(item.model_dump_json())
        if not item.passed:
            grounding_failures += 1
            click.echo(f"[FAIL] {item.to_summary()}")

    if report is not None:
        report.write_text("".join(line + "\n" for line in lines), encoding="utf-8")

    if residue_failures or grounding_failures:
        click.echo(
            f"[FAIL] residue: {residue_failures}, grounding: {grounding_failures} "
            f"of {checked} checked",
            err=True,
        )
        ctx.exit(1)
    _echo_ok(f"{len(records)} record(s) free of residue, {checked} grounding check(s) passed")


@cli.command("synth-map")
@click.option("--out", type=click.Path(file_okay=False, path_type=Path), required=True)
@click.option("--rows", type=click.IntRange(min=2), default=21, show_default=True)
@click.option("--cols", type=click.IntRange(min=2), default=21, show_default=True)
@click.option("--spacing", type=click.FloatRange(min=1.0), default=100.0, show_default=True)
@click.option("--n-entities", type=click.IntRange(min=0), default=1500, show_default=True)
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True)
def synth_map_cmd(
    out: Path, rows: int, cols: int, spacing: float, n_entities: int, seed: int
) -> None:
    """Write a synthetic grid-city bundle."""
    city = build_grid_city(
        rows=rows, cols=cols, spacing_m=spacing, n_entities=n_entities, seed=seed
    )
    entities_path, streets_path = write_bundle(city, out)
    _echo_ok(f"Wrote {entities_path} and {streets_path}")


# ========== Grammar commands ==========


@cli.group("grammar", cls=NavSynthGroup)
def grammar_group() -> None:
    """Inspect a template grammar."""


@grammar_group.command("enumerate")
@grammar_option
@click.option("--dump", is_flag=True, help="Print every template")
@click.pass_context
def grammar_enumerate_cmd(ctx: click.Context, grammar: Path | None, dump: bool) -> None:
    """Count (and optionally list) the templates of a grammar."""
    config, settings = _run_config(ctx, grammar=grammar)
    parsed = parse_grammar(config.grammar)
    total = count_templates(parsed)
    if dump:
        _echo_templates(enumerate_templates(parsed, cap=settings.generation.template_cap))
    click.echo(f"{total} templates ({parsed.rule_count} production rules)")


@grammar_group.command("minimal")
@grammar_option
@click.option("--dump", is_flag=True, help="Print the cover templates")
@click.pass_context
def grammar_minimal_cmd(ctx: click.Context, grammar: Path | None, dump: bool) -> None:
    """Greedy minimal cover of the grammar's placeholder and style features."""
    config, settings = _run_config(ctx, grammar=grammar)
    templates = _load_templates(config, settings)
    cover = minimal_cover(templates)
    if dump:
        _echo_templates(cover)
    click.echo(f"{len(cover)} templates in minimal cover (of {len(templates)})")


@grammar_group.command("lint")
@grammar_option
@click.pass_context
def grammar_lint_cmd(ctx: click.Context, grammar: Path | None) -> None:
    """Report grammar errors and warnings; exit 1 on any error."""
    config, settings = _run_config(ctx, grammar=grammar)
    diagnostics = lint_grammar(config.grammar, cap=settings.generation.template_cap)
    for diagnostic in diagnostics:
        click.echo(diagnostic.to_string())
    errors = [d for d in diagnostics if d.severity.is_blocking]
    if errors:
        ctx.exit(1)


def run() -> None:
    """Console entry point."""
    cli(prog_name="navsynth")


def main() -> None:
    """Main entry point (alias for run)."""
    run()


if __name__ == "__main__":
    run()

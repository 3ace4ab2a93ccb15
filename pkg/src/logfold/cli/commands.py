"""Click command definitions for the logfold CLI."""

import sys
from pathlib import Path
from typing import Callable, Optional

import click
from pydantic import ValidationError

from logfold.community.louvain import louvain
from logfold.community.network_io import save_community_network
from logfold.config.settings import AppConfig
from logfold.discovery.alpha import alpha_discover
from logfold.discovery.net_io import load_gspn, save_gspn
from logfold.discovery.substructures import detect_substructures
from logfold.eventlog.timing import temporal_split
from logfold.eventlog.writer import write_csv
from logfold.harness.experiment import ExperimentRunner, load_log
from logfold.harness.synthetic import SyntheticSpec, generate_synthetic
from logfold.predictor.workflow import evaluate_point
from logfold.predpoints.selection import (
    PredictionPointSet,
    community_activity_sets,
    select_prediction_points,
)
from logfold.simplify.simplifier import build_manifest, simplify_log
from logfold.socialnet.builder import build_social_network
from logfold.socialnet.edgelist import load_social_network
from logfold.utils.exceptions import LogFoldError, StageError
from logfold.utils.logging import setup_logging

EXIT_FAILURE = 1


def _split_points(ctx: click.Context, param: click.Parameter, value: Optional[str]) -> Optional[list[str]]:
    if value is None:
        return None
    points = [p.strip() for p in value.split(",") if p.strip()]
    if not points:
        raise click.BadParameter("expected a comma-separated list of activity labels")
    return points


def _load_config(config_path: Optional[str] = None, **cli_args: object) -> AppConfig:
    """
    Load configuration from multiple sources with proper priority.

    Priority order:
    1. Command-line arguments (highest)
    2. Configuration file (YAML)
    3. Environment variables
    4. Default values (lowest)

    Raises:
        click.UsageError: If the configuration is invalid (exit code 2)
    """
    try:
        config = AppConfig.from_yaml(config_path) if config_path else AppConfig()
        return config.merge_with_cli_args(**cli_args)  # type: ignore[arg-type]
    except (ValidationError, ValueError) as e:
        raise click.UsageError(f"Invalid configuration: {e}") from e


def _run_stage(stage: str, action: Callable[[], object]) -> object:
    """Run one command body, turning library errors into a tagged message and exit 1."""
    try:
        return action()
    except StageError as e:
        click.echo(f"❌ {e}", err=True)
    except (LogFoldError, FileNotFoundError) as e:
        click.echo(f"❌ [{stage}] {e}", err=True)
    sys.exit(EXIT_FAILURE)


def _setup(verbose: bool, log_file: Optional[str]) -> None:
    setup_logging(level="WARNING", log_file=Path(log_file) if log_file else None, verbose=verbose)


def common_options(func: Callable) -> Callable:
    """Options every subcommand shares."""
    decorators = [
        click.option("--config", "-c", type=click.Path(exists=True, path_type=str), help="Configuration file (YAML)"),
        click.option("--seed", type=int, help="Random seed (default 42)"),
        click.option("--verbose", "-v", is_flag=True, help="Enable verbose (DEBUG) logging"),
        click.option("--log-file", type=click.Path(path_type=str), help="Also write DEBUG logs to this file"),
    ]
    for decorator in reversed(decorators):
        func = decorator(func)
    return func


def input_option(required: bool = False) -> Callable:
    help_text = "Event log CSV" + ("" if required else " (default: synthetic sepsis log)")
    return click.option(
        "--input", "-i", "input_path", required=required, type=click.Path(exists=True, path_type=str), help=help_text
    )


def points_option(func: Callable) -> Callable:
    return click.option(
        "--points",
        callback=_split_points,
        help="Comma-separated prediction points (replaces community-based selection)",
    )(func)


def out_dir_option(func: Callable) -> Callable:
    return click.option(
        "--out-dir", "-o", type=click.Path(path_type=str), help="Output directory (default: ./output)"
    )(func)


@click.group()
@click.version_option(version="0.1.0")
def main() -> None:
    """
    logfold: event log simplification guarded by remaining-time prediction.

    Folds sequence, or and self-loop substructures of a discovered process
    model while keeping the prediction error at chosen prediction points
    within a deviation budget.
    """
    pass


@main.command()
@common_options
@click.option("--cases", type=click.IntRange(min=1), default=1000, show_default=True, help="Number of cases")
@click.option("--noise-activity", type=str, help="Inject an activity whose duration is independent of the outcome")
@click.option("--output", "-o", required=True, type=click.Path(path_type=str), help="CSV file to write")
def generate(
    config: Optional[str],
    seed: Optional[int],
    verbose: bool,
    log_file: Optional[str],
    cases: int,
    noise_activity: Optional[str],
    output: str,
) -> None:
    """
    Generate a synthetic sepsis-like event log.

    Example:
        logfold generate --cases 1000 --seed 42 --output sepsis.csv
    """
    _setup(verbose, log_file)
    app_config = _load_config(config, seed=seed)

    def action() -> None:
        spec = SyntheticSpec(cases=cases, noise_activity=noise_activity)
        log = generate_synthetic(spec, app_config.seed)
        path = write_csv(log, output)
        click.echo(f"✓ Wrote {len(log)} cases, {log.event_count} events to {path}")

    _run_stage("generate", action)


@main.command()
@common_options
@input_option()
@out_dir_option
def discover(
    config: Optional[str],
    seed: Optional[int],
    verbose: bool,
    log_file: Optional[str],
    input_path: Optional[str],
    out_dir: Optional[str],
) -> None:
    """
    Discover a net with the alpha miner and write it as JSON.

    Example:
        logfold discover --input sepsis.csv --out-dir ./output
    """
    _setup(verbose, log_file)
    app_config = _load_config(config, input_path=input_path, output_dir=out_dir, seed=seed)

    def action() -> None:
        log = load_log(app_config)
        net = alpha_discover(log)
        directory = Path(app_config.output.directory)
        directory.mkdir(parents=True, exist_ok=True)
        path = save_gspn(net, directory / app_config.output.gspn_file)
        click.echo(f"✓ {len(net.transitions)} transitions, {len(net.places)} places -> {path}")
        if net.self_loops:
            click.echo(f"   Self-looping activities: {', '.join(sorted(net.self_loops))}")
        for cand in detect_substructures(net):
            click.echo(f"   • {cand.name} (k={cand.activity_count})")

    _run_stage("discover", action)


@main.command()
@common_options
@input_option()
@click.option("--social-network", type=click.Path(exists=True, path_type=str), help="Edge list (a,b,weight)")
@out_dir_option
def communities(
    config: Optional[str],
    seed: Optional[int],
    verbose: bool,
    log_file: Optional[str],
    input_path: Optional[str],
    social_network: Optional[str],
    out_dir: Optional[str],
) -> None:
    """
    Cluster performers into resource communities with Louvain.

    Example:
        logfold communities --social-network handover.csv --out-dir ./output
    """
    _setup(verbose, log_file)
    app_config = _load_config(config, input_path=input_path, output_dir=out_dir, seed=seed)

    def action() -> None:
        if social_network:
            network = load_social_network(social_network)
        else:
            network = build_social_network(load_log(app_config))
        rcn = louvain(network)
        directory = Path(app_config.output.directory)
        directory.mkdir(parents=True, exist_ok=True)
        path = save_community_network(rcn, directory / app_config.output.communities_file)
        click.echo(f"✓ {len(rcn.communities)} communities, Q = {rcn.modularity:.4f} -> {path}")
        for community in rcn.communities:
            click.echo(f"   • {community.id}: {', '.join(community.members)}")

    _run_stage("communities", action)


@main.command()
@common_options
@input_option()
@click.option("--social-network", type=click.Path(exists=True, path_type=str), help="Edge list (a,b,weight)")
@click.option("--multiplicity", type=click.IntRange(min=1), help="Points per community (default 1)")
def points(
    config: Optional[str],
    seed: Optional[int],
    verbose: bool,
    log_file: Optional[str],
    input_path: Optional[str],
    social_network: Optional[str],
    multiplicity: Optional[int],
) -> None:
    """
    Select one prediction point per resource community.

    Example:
        logfold points --input sepsis.csv
    """
    _setup(verbose, log_file)
    app_config = _load_config(config, input_path=input_path, seed=seed)

    def action() -> None:
        log = load_log(app_config)
        network = load_social_network(social_network) if social_network else build_social_network(log)
        rcn = louvain(network)
        selected = select_prediction_points(
            community_activity_sets(log, rcn),
            multiplicity=multiplicity or app_config.points.multiplicity,
            community_ids=[c.id for c in rcn.communities],
        )
        for point in selected.points:
            click.echo(f"{point}\t{selected.provenance.get(point, '')}")
        if selected.uncovered:
            click.echo(f"⚠️  Communities without a point: {', '.join(selected.uncovered)}", err=True)

    _run_stage("points", action)


@main.command()
@common_options
@input_option(required=True)
@click.option("--net", "net_path", type=click.Path(exists=True, path_type=str), help="Net JSON (default: alpha miner)")
@click.option("--fold", "folds", multiple=True, help="Candidate to fold, e.g. 'SelfLoop:CRP' (default: all)")
@points_option
@out_dir_option
def simplify(
    config: Optional[str],
    seed: Optional[int],
    verbose: bool,
    log_file: Optional[str],
    input_path: str,
    net_path: Optional[str],
    folds: tuple[str, ...],
    points: Optional[list[str]],
    out_dir: Optional[str],
) -> None:
    """
    Fold chosen candidates of a log without assessing them.

    Example:
        logfold simplify --input sepsis.csv --fold SelfLoop:CRP --points "ER Triage"
    """
    _setup(verbose, log_file)
    app_config = _load_config(
        config, input_path=input_path, output_dir=out_dir, seed=seed, points=points, net_path=net_path
    )

    def action() -> None:
        log = load_log(app_config)
        net = load_gspn(app_config.input.net_path) if app_config.input.net_path else alpha_discover(log)
        protected = app_config.points.override
        candidates = detect_substructures(net, protected)
        if folds:
            by_name = {c.name: c for c in candidates}
            unknown = [name for name in folds if name not in by_name]
            if unknown:
                raise click.BadParameter(
                    f"unknown candidates {unknown}; available: {sorted(by_name)}", param_hint="--fold"
                )
            candidates = [by_name[name] for name in folds]
        simplified, new_net, folded = simplify_log(
            log, net, candidates, protected, app_config.processing.overwrite_or_delay
        )
        out = app_config.output
        directory = Path(out.directory)
        directory.mkdir(parents=True, exist_ok=True)
        write_csv(simplified, directory / out.simplified_log_file)
        save_gspn(new_net, directory / out.simplified_gspn_file)
        manifest = build_manifest(log, simplified, folded)
        manifest.save(directory / out.manifest_file)
        click.echo(
            f"✓ {len(folded)} folds: {log.event_count} -> {simplified.event_count} events "
            f"({manifest.reduction * 100:.1f}% reduction) in {directory}"
        )

    _run_stage("simplify", action)


def _experiment_command(baselines: Optional[bool]) -> Callable:
    def command(
        config: Optional[str],
        seed: Optional[int],
        verbose: bool,
        log_file: Optional[str],
        input_path: Optional[str],
        net_path: Optional[str],
        budget_gamma: Optional[float],
        budget_g: Optional[float],
        points: Optional[list[str]],
        out_dir: Optional[str],
        workers: Optional[int],
        **extra: Optional[bool],
    ) -> None:
        _setup(verbose, log_file)
        app_config = _load_config(
            config,
            input_path=input_path,
            output_dir=out_dir,
            seed=seed,
            budget_gamma=budget_gamma,
            budget_g=budget_g,
            points=points,
            net_path=net_path,
            baselines=extra.get("baselines", baselines),
            workers=workers,
        )
        is_valid, errors = app_config.validate_paths()
        if not is_valid:
            click.echo("❌ Configuration errors:", err=True)
            for error in errors:
                click.echo(f"   • {error}", err=True)
            sys.exit(EXIT_FAILURE)

        result = _run_stage("run", lambda: ExperimentRunner(app_config, progress=True).run())
        report = result.report  # type: ignore[attr-defined]
        click.echo("\n📊 Summary:")
        click.echo(f"   • Budget: {report.spent:.1f} of {report.budget.limit:.1f} s spent")
        click.echo(f"   • Accepted folds: {', '.join(report.accepted) or 'none'}")
        for s in report.summaries:
            click.echo(
                f"   • {s.point}: MAE {s.original_mae:.1f} -> {s.simplified_mae:.1f} s, "
                f"{s.reduction_pct:.1f}% fewer events"
            )

    return command


def experiment_options(func: Callable) -> Callable:
    decorators = [
        common_options,
        input_option(),
        click.option("--net", "net_path", type=click.Path(exists=True, path_type=str), help="Net JSON (default: alpha miner)"),
        click.option("--budget-gamma", type=click.FloatRange(min=0), help="Gamma in seconds (default: original MAE)"),
        click.option("--budget-g", type=click.FloatRange(min=0), help="Slack multiplier g (default 1)"),
        points_option,
        out_dir_option,
        click.option("--workers", type=click.IntRange(min=1), help="Threads for candidate assessment"),
    ]
    for decorator in reversed(decorators):
        func = decorator(func)
    return func


optimize = main.command(
    name="optimize",
    help="Assess candidates, solve the budgeted knapsack and write the simplified log and report.",
)(experiment_options(_experiment_command(baselines=False)))

run = main.command(
    name="run",
    help="Run the full pipeline, including the filter baseline comparison when enabled.",
)(
    experiment_options(
        click.option("--baselines/--no-baselines", default=None, help="Compare against the filter baselines")(
            _experiment_command(baselines=None)
        )
    )
)


@main.command()
@common_options
@input_option()
@points_option
def evaluate(
    config: Optional[str],
    seed: Optional[int],
    verbose: bool,
    log_file: Optional[str],
    input_path: Optional[str],
    points: Optional[list[str]],
) -> None:
    """
    Train and score the remaining-time predictor at prediction points.

    Example:
        logfold evaluate --input sepsis.csv --points "ER Triage,CRP"
    """
    _setup(verbose, log_file)
    app_config = _load_config(config, input_path=input_path, seed=seed, points=points)
    if not app_config.points.override:
        raise click.UsageError("evaluate needs --points (or points.override in the configuration)")

    def action() -> None:
        log = load_log(app_config)
        train, test = temporal_split(log, app_config.split.fraction)
        selected = PredictionPointSet.from_override(app_config.points.override)
        for point in selected.points:
            result = evaluate_point(train, test, point, app_config.predictor)
            click.echo(
                f"{point}\tMAE {result.mae:.3f} s\t"
                f"(train {result.train_samples}, test {result.test_samples} samples)"
            )

    _run_stage("evaluate", action)

"""
CLI commands module for antbench.

This module contains the Typer command definitions: `bench run`,
`bench stability`, `stats compare`, `dataset info`, `config` and `version`.

Exit codes: 0 when every requested experiment completed, 1 when some
dataset or experiment failed (partial results are kept), 2 for usage errors
such as a missing path, an invalid parameter or an unparsable matrix.
"""
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

import typer
from rich.console import Console
from rich.table import Table

from .. import __version__
from ..config import ExperimentConfig, ensure_config_exists, get_default_config_path
from ..dataset.loader import DatasetParseError, SchemaNotFoundError, load_dataset, resolve_dataset_path
from ..managers.reports import ReportManager
from ..managers.runner import BenchRunner
from ..models import ComparisonResult
from ..stats import (
    CONTROL_VS_ALL,
    HOMMEL,
    SHAFFER,
    MatrixParseError,
    average_ranks,
    best_algorithm,
    compare_to_control,
    comparisons_frame,
    friedman_frame,
    friedman_test,
    iman_davenport,
    pairwise_comparisons,
    ranks_frame,
    read_result_matrix,
)

# Initialize Rich console and logger
console = Console()
logger = logging.getLogger(__name__)

EXIT_FAILED = 1
EXIT_USAGE = 2

app = typer.Typer(
    name="antbench",
    help="🐜 antbench - ant-colony rule classifiers, bagged ensembles and their statistical comparison.",
    no_args_is_help=True,
    rich_markup_mode="rich",
    add_completion=True,
    pretty_exceptions_show_locals=False
)
bench_app = typer.Typer(help="🧪 Run evaluation protocols over datasets.", no_args_is_help=True)
stats_app = typer.Typer(help="📊 Friedman ranks and post hoc comparisons.", no_args_is_help=True)
dataset_app = typer.Typer(help="📚 Inspect datasets.", no_args_is_help=True)
app.add_typer(bench_app, name="bench")
app.add_typer(stats_app, name="stats")
app.add_typer(dataset_app, name="dataset")


def _usage_error(message: str, hint: Optional[str] = None) -> typer.Exit:
    console.print(f"❌ {message}", style="red")
    if hint:
        console.print(f"💡 {hint}", style="dim")
    logger.error(message)
    return typer.Exit(EXIT_USAGE)


def _overrides(datasets: List[str], seed, profile, algo, replicas, folds, iterations, out, ants,
               workers, protocol) -> Dict[str, Any]:
    overrides: Dict[str, Any] = {
        "datasets": datasets or None,
        "seed": seed,
        "profile": profile,
        "algorithm": algo,
        "folds": folds,
        "iterations": iterations,
        "output_dir": out,
        "workers": workers,
        "protocol": protocol,
    }
    if ants is not None:
        overrides["antminer"] = {"num_ants": ants}
    if replicas is not None:
        overrides["ensemble"] = {"replicas": replicas}
    return overrides


def _run_bench(datasets: List[str], config_path: Optional[Path], overrides: Dict[str, Any],
               verbose: bool) -> None:
    try:
        config = ExperimentConfig.load_from_yaml(config_path, overrides)
    except FileNotFoundError as e:
        raise _usage_error(str(e))
    except ValueError as e:
        raise _usage_error(f"Invalid configuration: {e}")

    if not config.datasets:
        raise _usage_error("No datasets given", "Pass dataset paths or list them under 'datasets' in the config file")
    try:
        paths = [resolve_dataset_path(d) for d in config.datasets]
    except FileNotFoundError as e:
        raise _usage_error(str(e), "Set ANTBENCH_DATA_DIR to resolve dataset names")

    output_dir = Path(config.output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    setup_logging(output_dir / "bench.log", verbose)
    logger.info(f"antbench {__version__}: master_seed={config.seed}")
    logger.info(f"Effective configuration: {config.describe()}")

    runner = BenchRunner(config, paths, ReportManager(output_dir))
    outcome = runner.run()
    if outcome.records:
        console.print(runner.render(outcome))
    if not outcome.ok:
        raise typer.Exit(EXIT_FAILED)
    console.print(f"✅ Results written to [cyan]{output_dir}[/cyan]", style="green")


# ============================================================================
# Bench Commands
# ============================================================================

@bench_app.command("run")
def bench_run(
    datasets: Optional[List[str]] = typer.Argument(None, help="Dataset files or names in ANTBENCH_DATA_DIR"),
    seed: Optional[int] = typer.Option(None, "--seed", "-s", help="Master seed"),
    profile: Optional[str] = typer.Option(None, "--profile", help="Parameter profile: paper or desk"),
    algo: Optional[str] = typer.Option(None, "--algo", "-a", help="antminer, bagged or both"),
    replicas: Optional[int] = typer.Option(None, "--replicas", "-T", help="Bootstrap replicas of the ensemble"),
    folds: Optional[int] = typer.Option(None, "--folds", "-k", help="Cross-validation folds"),
    iterations: Optional[int] = typer.Option(None, "--iterations", "-i", help="Repetitions of the protocol"),
    out: Optional[str] = typer.Option(None, "--out", "-o", help="Output directory"),
    config_path: Optional[Path] = typer.Option(None, "--config", "-c", help="YAML config file"),
    ants: Optional[int] = typer.Option(None, "--ants", help="Ants per colony"),
    workers: Optional[int] = typer.Option(None, "--workers", "-w", help="Worker processes"),
    protocol: Optional[str] = typer.Option(None, "--protocol", "-p", help="auto, cv, holdout or stability"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log to the terminal as well"),
) -> None:
    """
    🧪 Evaluate learners on datasets and write per-run and summary CSVs.

    With protocol 'auto', antminer runs repeated stratified cross-validation
    and bagged runs repeated 70/30 hold-out.

    Examples:
        antbench bench run tests/fixtures/iris.csv --profile desk --seed 1
        antbench bench run iris wine --algo both --out results/
        antbench bench run iris --algo bagged --replicas 10 --iterations 10
    """
    overrides = _overrides(datasets, seed, profile, algo, replicas, folds, iterations, out, ants, workers, protocol)
    _run_bench(datasets, config_path, overrides, verbose)


@bench_app.command("stability")
def bench_stability(
    datasets: Optional[List[str]] = typer.Argument(None, help="Dataset files or names in ANTBENCH_DATA_DIR"),
    seed: Optional[int] = typer.Option(None, "--seed", "-s", help="Master seed"),
    profile: Optional[str] = typer.Option(None, "--profile", help="Parameter profile: paper or desk"),
    algo: Optional[str] = typer.Option("both", "--algo", "-a", help="antminer, bagged or both"),
    replicas: Optional[int] = typer.Option(None, "--replicas", "-T", help="Bootstrap replicas of the ensemble"),
    folds: Optional[int] = typer.Option(None, "--folds", "-k", help="Cross-validation folds"),
    out: Optional[str] = typer.Option(None, "--out", "-o", help="Output directory"),
    config_path: Optional[Path] = typer.Option(None, "--config", "-c", help="YAML config file"),
    ants: Optional[int] = typer.Option(None, "--ants", help="Ants per colony"),
    workers: Optional[int] = typer.Option(None, "--workers", "-w", help="Worker processes"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log to the terminal as well"),
) -> None:
    """
    📈 Per-fold test errors of one cross-validation run (plot data).

    Every algorithm sees the same folds; curves go to <out>/stability/.

    Examples:
        antbench bench stability iris wine --profile desk
    """
    overrides = _overrides(datasets, seed, profile, algo, replicas, folds, None, out, ants, workers, "stability")
    _run_bench(datasets, config_path, overrides, verbose)


# ============================================================================
# Statistics Commands
# ============================================================================

def _comparison_table(title: str, results: List[ComparisonResult]) -> Table:
    table = Table(title=title)
    table.add_column("Hypothesis", style="cyan")
    table.add_column("z", justify="right")
    table.add_column("p", justify="right")
    table.add_column("Threshold", justify="right")
    table.add_column("Adjusted p", justify="right")
    table.add_column("Significant", justify="center")
    for r in results:
        table.add_row(r.label, f"{r.z:.4f}", f"{r.p_value:.4g}", f"{r.threshold:.6g}",
                      f"{r.adjusted_p:.4g}", "✅" if r.significant else "-")
    return table


@stats_app.command("compare")
def stats_compare(
    matrix_csv: Path = typer.Argument(..., help="Matrix CSV (datasets x algorithms) or a bench summary.csv"),
    alpha: float = typer.Option(0.05, "--alpha", help="Family-wise significance level"),
    mode: str = typer.Option("all", "--mode", "-m",
                             help="control-vs-all, hommel, shaffer-pairwise or all"),
    control: Optional[str] = typer.Option(None, "--control", help="Control algorithm (default: best rank)"),
    out: Path = typer.Option(Path("stats"), "--out", "-o", help="Output directory"),
) -> None:
    """
    📊 Friedman test with step-down post hoc comparisons.

    Writes ranks.csv, friedman.csv and one comparison table per mode.

    Examples:
        antbench stats compare results/summary.csv
        antbench stats compare table3.csv --mode shaffer-pairwise --alpha 0.05
    """
    modes = (CONTROL_VS_ALL, HOMMEL, SHAFFER)
    if mode != "all" and mode not in modes:
        raise _usage_error(f"Invalid mode '{mode}'. Expected one of: all, {', '.join(modes)}")
    if not 0.0 <= alpha <= 1.0:
        raise _usage_error(f"alpha must lie in [0, 1], got {alpha}")
    try:
        matrix = read_result_matrix(matrix_csv)
    except FileNotFoundError as e:
        raise _usage_error(str(e))
    except MatrixParseError as e:
        raise _usage_error(f"Cannot parse matrix: {e}")

    ranks = average_ranks(matrix)
    if control is not None and control not in ranks.algorithms:
        raise _usage_error(f"Unknown control algorithm '{control}'", f"Columns: {', '.join(ranks.algorithms)}")
    control = control or best_algorithm(ranks)
    n, m = matrix.shape
    chi2, p = friedman_test(matrix)
    f_stat, f_p = iman_davenport(matrix)

    reports = ReportManager(out)
    reports.ensure_directory()
    reports.write_frame(ranks_frame(ranks, matrix.datasets), "ranks.csv", index=True)
    reports.write_frame(friedman_frame(chi2, p, f_stat, f_p, n, m, control), "friedman.csv")

    rank_table = Table(title="Average ranks")
    rank_table.add_column("Algorithm", style="cyan")
    rank_table.add_column("Rank", justify="right")
    for name, r in sorted(zip(ranks.algorithms, ranks.average_ranks), key=lambda item: item[1]):
        rank_table.add_row(name, f"{r:.4f}")
    console.print(rank_table)
    console.print(f"Friedman χ² = {chi2:.4f}, p = {p:.4g} (n={n}, m={m})")
    console.print(f"Iman-Davenport F = {f_stat:.4f}, p = {f_p:.4g}")

    selected = modes if mode == "all" else (mode,)
    for current in selected:
        if current == SHAFFER:
            results = pairwise_comparisons(ranks, alpha, SHAFFER)
            title = f"Pairwise comparisons (Shaffer, α={alpha})"
        else:
            results = compare_to_control(ranks, control, alpha, current)
            title = f"Control {control} vs. all ({current}, α={alpha})"
        reports.write_frame(comparisons_frame(results), f"{current}.csv")
        console.print(_comparison_table(title, results))
    console.print(f"✅ Tables written to [cyan]{out}[/cyan]", style="green")


# ============================================================================
# Dataset Commands
# ============================================================================

@dataset_app.command("info")
def dataset_info(
    path: str = typer.Argument(..., help="Dataset file or name in ANTBENCH_DATA_DIR"),
    class_attribute: Optional[str] = typer.Option(None, "--class", help="Class attribute of an ARFF file"),
) -> None:
    """
    📚 Summarize a dataset: attribute kinds, classes and examples.

    Examples:
        antbench dataset info tests/fixtures/iris.csv
    """
    try:
        resolved = resolve_dataset_path(path)
        data = load_dataset(resolved, class_attribute=class_attribute)
    except SchemaNotFoundError as e:
        raise _usage_error(str(e), "CSV datasets need a <name>.schema.yaml sidecar")
    except FileNotFoundError as e:
        raise _usage_error(str(e))
    except (DatasetParseError, ValueError) as e:
        console.print(f"❌ {e}", style="red")
        raise typer.Exit(EXIT_FAILED)

    table = Table(title=f"Dataset {data.name}")
    for column in ("Nominal", "Continuous", "Classes", "Examples"):
        table.add_column(column, justify="right")
    table.add_row(str(data.nominal_count), str(data.continuous_count),
                  str(len(data.class_domain)), str(len(data)))
    console.print(table)
    console.print(
        f"{data.name}: {data.continuous_count} continuous, {data.nominal_count} nominal, "
        f"{len(data.class_domain)} classes, {len(data)} examples"
    )
    counts = ", ".join(f"{label}={count}" for label, count in zip(data.class_domain, data.class_counts()))
    console.print(f"Class distribution: {counts}", style="dim")


# ============================================================================
# Configuration and Utility Commands
# ============================================================================

@app.command()
def config(
    show: bool = typer.Option(False, "--show", "-s", help="Show full config.yaml content"),
) -> None:
    """
    ⚙️ Show current configuration settings.

    By default shows the effective settings. Use --show to display the full
    config.yaml file.

    Examples:
        antbench config           # Show effective settings
        antbench config --show    # Show full config.yaml content
    """
    config_path = get_default_config_path()
    ensure_config_exists(config_path)

    if show:
        console.print(f"📄 Config file: [cyan]{config_path}[/cyan]\n", style="bold")
        content = config_path.read_text()
        from rich.syntax import Syntax
        syntax = Syntax(content, "yaml", theme="monokai", line_numbers=True)
        console.print(syntax)
        return

    try:
        effective = ExperimentConfig.load_from_yaml(config_path)
    except ValueError as e:
        raise _usage_error(f"Invalid configuration in {config_path}: {e}")
    console.print("⚙️ antbench configuration:", style="bold")
    console.print(f"📄 Config file: [cyan]{config_path}[/cyan]")
    console.print(f"🎛️  Profile: {effective.profile}")
    console.print(f"🧪 Algorithm: {effective.algorithm} (protocol {effective.protocol})")
    console.print(f"🔁 Folds x iterations: {effective.folds} x {effective.iterations}")
    console.print(f"🐜 Ants per colony: {effective.antminer.num_ants}")
    console.print(f"🎒 Ensemble replicas: {effective.ensemble.replicas}")
    console.print(f"🎲 Master seed: {effective.seed}")
    console.print(f"📁 Output directory: {effective.output_dir}")
    console.print("\n💡 Use [cyan]antbench config --show[/cyan] to see full config.yaml")


@app.command()
def version() -> None:
    """
    📦 Show antbench version information.
    """
    console.print("🐜 antbench", style="bold blue")
    console.print(f"Version: {__version__}")
    console.print("Ant-colony rule induction, bagging and nonparametric comparison")


# ============================================================================
# Error Handling and Main Entry
# ============================================================================

def setup_logging(log_file: Optional[Path] = None, verbose: bool = False) -> None:
    """
    Setup logging configuration for the CLI.

    Args:
        log_file: Log destination; defaults to ~/.antbench/antbench.log
        verbose: Enable debug logging and terminal output if True
    """
    if log_file is None:
        log_dir = Path.home() / '.antbench'
        log_dir.mkdir(parents=True, exist_ok=True)
        log_file = log_dir / 'antbench.log'

    level = logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[
            logging.FileHandler(log_file, encoding='utf-8'),
            logging.StreamHandler() if verbose else logging.NullHandler()
        ],
        force=True,
    )


def main() -> None:
    """
    Main entry point for the CLI application.

    Handles global exception catching and logging setup.
    """
    try:
        setup_logging()
        app()
    except KeyboardInterrupt:
        console.print("\n👋 Interrupted", style="yellow")
        raise typer.Exit(0)
    except Exception as e:
        console.print(f"❌ Unexpected error: {e}", style="red")
        logger.exception("Unexpected error in CLI")
        raise typer.Exit(1)


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""
Main entry point for the smoothdist command line.
"""

import json
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional

import numpy as np
import typer
import yaml
from rich.console import Console

from smoothdist import __version__
from smoothdist.core.bench import BenchConfig, run_benchmark, write_records_csv, write_summary_json
from smoothdist.core.config import Config
from smoothdist.core.errors import ConfigError, SmoothDistError
from smoothdist.core.gap import DistanceOptions, differentiable_distance, path_from_dict, sweep, write_sweep_csv
from smoothdist.core.geometry import SUBSET_METHODS, RigidPose, random_polytope, rotation_dof
from smoothdist.core.geometry.io import load_polytope
from smoothdist.core.logger import LOG_FORMAT, setup_logger
from smoothdist.core.p2s import P2SMetric, calibrate as calibrate_metric
from smoothdist.core.p2s import load_metric, metric_to_dict, validate_hessian_bounds
from smoothdist.core.phi import PhiParams, validate_basic_p2s
from smoothdist.utils.display import (
    create_progress,
    display_key_value_table,
    display_report,
    print_banner,
    print_error,
    print_info,
    print_success,
    print_warning,
    set_colors,
)
from smoothdist.utils.validators import (
    parse_vector,
    validate_choice,
    validate_file_exists,
    validate_positive,
    validate_range,
    validate_required,
)

app = typer.Typer(
    name="smoothdist",
    help="Differentiable distances between convex polytopes",
    add_completion=False,
)

# version and help text; diagnostics use the stderr console in utils.display
console = Console()

EXIT_VALIDATION = 1
EXIT_USAGE = 2


@contextmanager
def cli_errors() -> Iterator[None]:
    """Map library errors onto exit codes: bad input -> 2, solver failures -> 1."""
    try:
        yield
    except (ConfigError, ValueError, FileNotFoundError) as e:
        print_error(str(e))
        raise typer.Exit(code=EXIT_USAGE)
    except SmoothDistError as e:
        print_error(str(e))
        raise typer.Exit(code=EXIT_VALIDATION)


def _config(ctx: typer.Context) -> Config:
    if ctx.obj is None:
        ctx.obj = Config()
    return ctx.obj


def _pick(value: Any, config: Config, key: str) -> Any:
    return config.get(key) if value is None else value


def _phi(config: Config, h: Optional[float], k: Optional[int]) -> PhiParams:
    return PhiParams(h=float(_pick(h, config, "phi.h")), k=int(_pick(k, config, "phi.k")))


def _weight_settings(config: Config) -> Dict[str, Any]:
    """Uniform-weight margin and subset search shared by every metric the CLI builds."""
    method = str(config.get("metric.subset_method"))
    validate_choice(method, SUBSET_METHODS, "metric.subset_method")
    margin = float(config.get("metric.weight_margin"))
    validate_positive(margin, "metric.weight_margin")
    return {"weight_margin": margin, "method": method}


def _solver_options(
        config: Config,
        tol: Optional[float],
        max_iter: Optional[int],
        anderson: Optional[int],
        section: str = "solver",
        with_gradient: bool = False,
) -> DistanceOptions:
    return DistanceOptions(
        tol=float(_pick(tol, config, f"{section}.tol")),
        max_iter=int(_pick(max_iter, config, f"{section}.max_iter")),
        with_gradient=with_gradient,
        certify=bool(config.get("solver.certify")),
        anderson=int(_pick(anderson, config, "solver.anderson")),
        euclid_tol=float(config.get("euclid.tol")),
        euclid_max_iter=int(config.get("euclid.max_iter")),
    )


def _emit(data: Dict[str, Any], out: Optional[Path]) -> None:
    text = json.dumps(data, indent=2)
    if out is None:
        typer.echo(text)
        return
    out.write_text(text + "\n", encoding="utf-8")
    print_success(f"wrote {out}")


def _load_body(
        path: Path,
        phi: PhiParams,
        eps: float,
        sigma: float,
        weight: Optional[float],
        settings: Dict[str, Any],
) -> P2SMetric:
    """A body file is either a polytope document or a metric document referencing one."""
    validate_file_exists(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ConfigError(f"{path}: invalid JSON: {e}") from e
    if isinstance(data, dict) and "polytope" in data:
        return load_metric(path)
    return P2SMetric.build(load_polytope(path), phi, eps=eps, sigma=sigma, weights=weight, **settings)


def _pose(translation: Optional[str], rotation: Optional[str], dim: int) -> RigidPose:
    t = parse_vector(translation, dim, "translation") if translation else [0.0] * dim
    r = parse_vector(rotation, rotation_dof(dim), "rotation") if rotation else [0.0] * rotation_dof(dim)
    return RigidPose.from_rotvec(np.array(r), np.array(t))


@app.callback(invoke_without_command=True)
def main(
        ctx: typer.Context,
        version: bool = typer.Option(
            None, "--version", "-v", help="Show version and exit"
        ),
        verbose: bool = typer.Option(
            False, "--verbose", help="Enable verbose output"
        ),
        config_file: Optional[str] = typer.Option(
            None, "--config", "-c", help="Path to configuration file"
        ),
) -> None:
    """
    smoothdist - differentiable distances between convex polytopes.
    """
    if version:
        console.print(f"[bold blue]smoothdist[/bold blue] version [bold green]{__version__}[/bold green]")
        raise typer.Exit()

    with cli_errors():
        config = Config(config_file=config_file)
    colors = bool(config.get("display.colors", True))
    set_colors(colors)
    console.no_color = not colors
    setup_logger(
        level=str(config.get("logging.level", "INFO")),
        verbose=verbose or bool(config.get("app.debug", False)),
        fmt=str(config.get("logging.format", LOG_FORMAT)),
        colors=colors,
    )
    ctx.obj = config

    if ctx.invoked_subcommand is None:
        print_banner()
        console.print(ctx.get_help())


@app.command()
def dist(
        ctx: typer.Context,
        body_a: Path = typer.Argument(..., help="Polytope or metric JSON of body A"),
        body_b: Path = typer.Argument(..., help="Polytope or metric JSON of body B"),
        pose_a_t: Optional[str] = typer.Option(None, "--pose-a-t", help="Translation of A, e.g. 0,0,0"),
        pose_a_rot: Optional[str] = typer.Option(None, "--pose-a-rot", help="Rotation of A (angle or rotvec)"),
        pose_b_t: Optional[str] = typer.Option(None, "--pose-b-t", help="Translation of B"),
        pose_b_rot: Optional[str] = typer.Option(None, "--pose-b-rot", help="Rotation of B (angle or rotvec)"),
        h: Optional[float] = typer.Option(None, "--h", help="Kernel smoothing parameter"),
        k: Optional[int] = typer.Option(None, "--k", help="Kernel differentiability order"),
        eps: Optional[float] = typer.Option(None, "--eps", help="Scale of the covering-ball term"),
        sigma: Optional[float] = typer.Option(None, "--sigma", help="Scale of the weak metric"),
        weight: Optional[float] = typer.Option(None, "--weight", help="Uniform facet weight"),
        tol: Optional[float] = typer.Option(None, "--tol", help="Alternation step tolerance"),
        max_iter: Optional[int] = typer.Option(None, "--max-iter", help="Alternation budget"),
        anderson: Optional[int] = typer.Option(None, "--anderson", help="Anderson window, 0 for the plain iteration"),
        gradient: bool = typer.Option(False, "--gradient", help="Include the pose gradient"),
        out: Optional[Path] = typer.Option(None, "--out", "-o", help="Write JSON here instead of stdout"),
) -> None:
    """
    Compute the differentiable distance between two posed polytopes.
    """
    config = _config(ctx)
    with cli_errors():
        phi = _phi(config, h, k)
        eps_value = float(_pick(eps, config, "metric.eps"))
        sigma_value = float(_pick(sigma, config, "metric.sigma"))
        settings = _weight_settings(config)
        metric_a = _load_body(body_a, phi, eps_value, sigma_value, weight, settings)
        metric_b = _load_body(body_b, phi, eps_value, sigma_value, weight, settings)
        options = _solver_options(config, tol, max_iter, anderson, with_gradient=gradient)
        pose_a = _pose(pose_a_t, pose_a_rot, metric_a.dim)
        pose_b = _pose(pose_b_t, pose_b_rot, metric_b.dim)
        result = differentiable_distance(metric_a, metric_b, pose_a, pose_b, options)
    _emit(result.to_dict(), out)


@app.command()
def bench(
        ctx: typer.Context,
        n_pairs: Optional[int] = typer.Option(None, "--n-pairs", help="Number of admissible pairs"),
        dim: Optional[int] = typer.Option(None, "--dim", help="Ambient dimension"),
        n_ineq: Optional[int] = typer.Option(None, "--n-ineq", help="Inequalities per polytope"),
        min_dist: Optional[float] = typer.Option(None, "--min-dist", help="Minimum Euclidean distance"),
        h: Optional[float] = typer.Option(None, "--h", help="Kernel smoothing parameter"),
        k: Optional[int] = typer.Option(None, "--k", help="Kernel differentiability order"),
        eps: Optional[float] = typer.Option(None, "--eps", help="Scale of the covering-ball term"),
        sigma: Optional[float] = typer.Option(None, "--sigma", help="Scale of the weak metric (without calibration)"),
        weight: Optional[float] = typer.Option(None, "--weight", help="Uniform facet weight, e.g. 0.1667"),
        calibrate: Optional[bool] = typer.Option(
            None, "--calibrate/--no-calibrate", help="Calibrate (eps, sigma) once per polytope"
        ),
        samples: Optional[int] = typer.Option(None, "--samples", help="Hessian checks per calibration"),
        tol: Optional[float] = typer.Option(None, "--tol", help="Alternation step tolerance"),
        max_iter: Optional[int] = typer.Option(None, "--max-iter", help="Alternation budget"),
        seed: Optional[int] = typer.Option(None, "--seed", help="Base seed"),
        scale: Optional[float] = typer.Option(None, "--scale", help="Polytope length scale"),
        workers: int = typer.Option(1, "--workers", help="Worker processes"),
        out: Path = typer.Option(Path("bench_records.csv"), "--out", "-o", help="Records CSV path"),
) -> None:
    """
    Run the convergence benchmark over random polytope pairs.
    """
    config = _config(ctx)
    with cli_errors():
        settings = _weight_settings(config)
        bench_config = BenchConfig(
            n_pairs=int(_pick(n_pairs, config, "bench.n_pairs")),
            dim=int(_pick(dim, config, "bench.dim")),
            n_ineq=int(_pick(n_ineq, config, "bench.n_ineq")),
            min_euclid_dist=float(_pick(min_dist, config, "bench.min_dist")),
            phi=_phi(config, h, k),
            eps=float(_pick(eps, config, "metric.eps")),
            sigma=float(_pick(sigma, config, "metric.sigma")),
            tol=float(_pick(tol, config, "solver.tol")),
            max_iter=int(_pick(max_iter, config, "solver.max_iter")),
            seed=int(_pick(seed, config, "bench.seed")),
            scale=float(_pick(scale, config, "bench.scale")),
            weight=weight,
            calibrate=bool(_pick(calibrate, config, "bench.calibrate")),
            calibration_samples=int(_pick(samples, config, "bench.calibration_samples")),
            target_margin=float(config.get("metric.target_margin")),
            weight_margin=settings["weight_margin"],
            subset_method=settings["method"],
            euclid_tol=float(config.get("euclid.tol")),
            euclid_max_iter=int(config.get("euclid.max_iter")),
            workers=workers,
        )
        with create_progress(transient=True) as progress:
            task = progress.add_task("Solving pairs", total=bench_config.n_pairs)
            stats = run_benchmark(bench_config, progress=lambda done: progress.update(task, completed=done))

        write_records_csv(stats.records, out)
        summary_path = out.with_name(f"{out.stem}_summary.json")
        write_summary_json(stats, bench_config, summary_path)

    display_key_value_table(stats.aggregates(), title="Benchmark")
    print_success(f"wrote {out} and {summary_path}")
    if stats.n_converged < stats.n_pairs:
        print_warning(f"{stats.n_pairs - stats.n_converged} pairs did not converge")


@app.command("sweep")
def sweep_command(
        ctx: typer.Context,
        body_a: Path = typer.Argument(..., help="Polytope or metric JSON of body A"),
        body_b: Path = typer.Argument(..., help="Polytope or metric JSON of body B"),
        path_spec: Path = typer.Option(..., "--path", help="Path document (JSON)"),
        n_samples: int = typer.Option(200, "--n-samples", help="Samples of tau in [0, 1]"),
        h: Optional[float] = typer.Option(None, "--h", help="Kernel smoothing parameter"),
        k: Optional[int] = typer.Option(None, "--k", help="Kernel differentiability order"),
        eps: Optional[float] = typer.Option(None, "--eps", help="Scale of the covering-ball term"),
        sigma: Optional[float] = typer.Option(None, "--sigma", help="Scale of the weak metric"),
        weight: Optional[float] = typer.Option(None, "--weight", help="Uniform facet weight"),
        tol: Optional[float] = typer.Option(None, "--tol", help="Alternation step tolerance (sweep.tol)"),
        max_iter: Optional[int] = typer.Option(None, "--max-iter", help="Alternation budget (sweep.max_iter)"),
        anderson: Optional[int] = typer.Option(None, "--anderson", help="Anderson window, 0 for the plain iteration"),
        out: Path = typer.Option(Path("sweep.csv"), "--out", "-o", help="Sweep CSV path"),
) -> None:
    """
    Sample the distance and its derivative along a rigid-motion path.
    """
    config = _config(ctx)
    with cli_errors():
        phi = _phi(config, h, k)
        eps_value = float(_pick(eps, config, "metric.eps"))
        sigma_value = float(_pick(sigma, config, "metric.sigma"))
        settings = _weight_settings(config)
        metric_a = _load_body(body_a, phi, eps_value, sigma_value, weight, settings)
        metric_b = _load_body(body_b, phi, eps_value, sigma_value, weight, settings)
        validate_file_exists(path_spec)
        try:
            path = path_from_dict(json.loads(path_spec.read_text(encoding="utf-8")))
        except json.JSONDecodeError as e:
            raise ConfigError(f"{path_spec}: invalid JSON: {e}") from e
        options = _solver_options(config, tol, max_iter, anderson, section="sweep")
        rows = sweep(metric_a, metric_b, path, n_samples, options)
        write_sweep_csv(rows, out)

    failed = sum(1 for row in rows if not row.converged)
    if failed:
        print_warning(f"{failed} of {len(rows)} samples failed")
    print_success(f"wrote {len(rows)} rows to {out}")


@app.command("calibrate")
def calibrate_command(
        ctx: typer.Context,
        polytope_path: Path = typer.Argument(..., help="Polytope JSON"),
        h: Optional[float] = typer.Option(None, "--h", help="Kernel smoothing parameter"),
        k: Optional[int] = typer.Option(None, "--k", help="Kernel differentiability order"),
        eps: Optional[float] = typer.Option(None, "--eps", help="Fixed eps"),
        weight: Optional[float] = typer.Option(None, "--weight", help="Uniform facet weight"),
        target_margin: Optional[float] = typer.Option(None, "--target-margin", help="Hessian-norm margin"),
        samples: Optional[int] = typer.Option(None, "--samples", help="Random Hessian checks"),
        seed: Optional[int] = typer.Option(None, "--seed", help="Sampler seed"),
        out: Optional[Path] = typer.Option(None, "--out", "-o", help="Write the metric JSON here"),
) -> None:
    """
    Choose (eps, sigma) for a polytope and emit its metric document.
    """
    config = _config(ctx)
    with cli_errors():
        validate_file_exists(polytope_path)
        polytope = load_polytope(polytope_path)
        phi = _phi(config, h, k)
        settings = _weight_settings(config)
        eps_value, sigma_value = calibrate_metric(
            polytope,
            phi,
            weights=weight,
            target_margin=float(_pick(target_margin, config, "metric.target_margin")),
            eps0=float(_pick(eps, config, "metric.eps")),
            n_samples=int(_pick(samples, config, "metric.calibration_samples")),
            seed=int(_pick(seed, config, "bench.seed")),
            **settings,
        )
        metric = P2SMetric.build(polytope, phi, eps=eps_value, sigma=sigma_value, weights=weight, **settings)
    print_info(f"eps = {eps_value:.6g}, sigma = {sigma_value:.6g}")
    reference = polytope_path.resolve()
    if out is not None:
        try:
            reference = polytope_path.resolve().relative_to(out.resolve().parent)
        except ValueError:
            pass
    _emit(metric_to_dict(metric, reference), out)


@app.command()
def validate(
        ctx: typer.Context,
        polytope_path: Optional[Path] = typer.Argument(None, help="Polytope JSON (random if omitted)"),
        h: Optional[float] = typer.Option(None, "--h", help="Kernel smoothing parameter"),
        k: Optional[int] = typer.Option(None, "--k", help="Kernel differentiability order"),
        eps: Optional[float] = typer.Option(None, "--eps", help="Scale of the covering-ball term"),
        sigma: Optional[float] = typer.Option(None, "--sigma", help="Scale of the weak metric"),
        weight: Optional[float] = typer.Option(None, "--weight", help="Uniform facet weight"),
        samples: Optional[int] = typer.Option(None, "--samples", help="Random Hessian checks"),
        seed: Optional[int] = typer.Option(None, "--seed", help="Seed for the polytope and samples"),
        dim: Optional[int] = typer.Option(None, "--dim", help="Dimension of the random polytope"),
        n_ineq: Optional[int] = typer.Option(None, "--n-ineq", help="Inequalities of the random polytope"),
        out: Optional[Path] = typer.Option(None, "--out", "-o", help="Write both reports as JSON"),
) -> None:
    """
    Run the kernel and metric validators; exit 1 if any check fails.
    """
    config = _config(ctx)
    with cli_errors():
        phi = _phi(config, h, k)
        seed_value = int(_pick(seed, config, "bench.seed"))
        n_samples = int(_pick(samples, config, "metric.calibration_samples"))
        validate_range(n_samples, 1, None, "samples")
        if polytope_path is not None:
            validate_file_exists(polytope_path)
            polytope = load_polytope(polytope_path)
        else:
            polytope = random_polytope(
                seed_value,
                dim=int(_pick(dim, config, "bench.dim")),
                n_ineq=int(_pick(n_ineq, config, "bench.n_ineq")),
            )
        eps_value = float(_pick(eps, config, "metric.eps"))
        sigma_value = float(_pick(sigma, config, "metric.sigma"))
        validate_positive(eps_value, "eps")
        validate_positive(sigma_value, "sigma")
        settings = _weight_settings(config)
        kernel_report = validate_basic_p2s(phi)
        metric = P2SMetric.build(polytope, phi, eps=eps_value, sigma=sigma_value, weights=weight, **settings)
        metric_report = validate_hessian_bounds(metric, n_samples=n_samples, seed=seed_value)

    display_report(kernel_report)
    display_report(metric_report)
    if out is not None:
        _emit({"kernel": kernel_report.to_dict(), "metric": metric_report.to_dict()}, out)
    if not (kernel_report.passed and metric_report.passed):
        print_error("validation failed")
        raise typer.Exit(code=EXIT_VALIDATION)
    print_success("all checks passed")


def _apply_override(config: Config, assignment: str) -> None:
    key, sep, raw = assignment.partition("=")
    if not sep:
        raise ValueError(f"override must look like KEY=VALUE, got {assignment!r}")
    validate_required(key.strip(), "override key")
    try:
        value = yaml.safe_load(raw)
    except yaml.YAMLError as e:
        raise ConfigError(f"override {assignment!r}: {e}") from e
    current = config.get(key.strip())
    # YAML reads 1e-6 as a string; follow the type of the value being replaced
    if isinstance(value, str) and isinstance(current, (int, float)) and not isinstance(current, bool):
        try:
            value = type(current)(value)
        except ValueError as e:
            raise ConfigError(f"override {assignment!r}: expected {type(current).__name__}") from e
    config.set(key.strip(), value)


@app.command()
def info(
        ctx: typer.Context,
        overrides: Optional[List[str]] = typer.Option(
            None, "--set", help="Override a setting, e.g. solver.tol=1e-6 (repeatable)"
        ),
        save: Optional[Path] = typer.Option(None, "--save", help="Write the effective configuration as YAML"),
) -> None:
    """
    Display the effective configuration, optionally overridden and saved.
    """
    config = _config(ctx)
    with cli_errors():
        for assignment in overrides or []:
            _apply_override(config, assignment)
        if save is not None:
            config.save(str(save))
    flat: Dict[str, Any] = {"version": __version__}
    for section, values in config.to_dict().items():
        if isinstance(values, dict):
            for key, value in values.items():
                flat[f"{section}.{key}"] = value
        else:
            flat[section] = values
    display_key_value_table(flat, title="smoothdist configuration")
    if save is not None:
        print_success(f"wrote {save}")


def main_wrapper() -> None:
    """Wrapper function to handle interrupts gracefully."""
    try:
        app()
    except KeyboardInterrupt:
        print_warning("interrupted")
        sys.exit(130)


if __name__ == "__main__":
    main_wrapper()

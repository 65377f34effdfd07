"""Experiment runner: one function per experiment, each returning a :class:`ResultTable`.

:func:`run_experiment` dispatches on ``cfg.experiment``, writes the CSV with
the resolved configuration echoed in its header, and returns where it went.
"""

from __future__ import annotations

import dataclasses
from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Any, TypeVar

import numpy as np

from ppide.constants import DEFAULT_FFT_SIZES, DEFAULT_INFVAR_EDGE_SHARE, TABLE1_FD_H, TABLE1_FFT_H, TABLE1_RTOL
from ppide.core.alpha_bridge import AlphaQuery, PricingProblem, price_real_alpha, split_jump_march
from ppide.core.fft_ref import compensation_value, euler_march, laplace_kernel, tempered_kernel_weights, test_integral_fft
from ppide.core.grid import Grid, build_fft_grid, build_grid, extend_fft_domain
from ppide.core.model import GtspParams, JumpSide, terminal_condition
from ppide.core.pp_stepper import basic_model_pair, march
from ppide.core.stability import assess_cn_stability, assess_vg_stability
from ppide.core.vg_stepper import VgStepConfig
from ppide.experiments.config import ExperimentConfig, GridSettings
from ppide.experiments.results import ResultTable, write_csv
from ppide.utils.interpolation import combine, lagrange_weights
from ppide.utils.logger import get_logger
from ppide.utils.paths import prepare_output_dir, result_filename

_log = get_logger(__name__)

T = TypeVar("T")
R = TypeVar("R")


@dataclass(frozen=True)
class ExperimentResult:
    experiment: str
    path: Path
    table: ResultTable
    config_hash: str


# ──────────────────────────────────────────────────────────────────────────────
# Shared helpers
# ──────────────────────────────────────────────────────────────────────────────

def _pmap(threads: int, fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
    with ThreadPoolExecutor(max_workers=max(1, threads), thread_name_prefix="sweep") as pool:
        return list(pool.map(fn, items))


def _time_steps(cfg: ExperimentConfig) -> int:
    # A zero-step run still needs a valid grid; the march is simply skipped.
    return max(cfg.grid.n_time, 1)


def _fd_grid(cfg: ExperimentConfig) -> Grid:
    g = cfg.grid
    return build_grid(g.x_min, g.x_max, g.n_space, cfg.market.maturity, _time_steps(cfg))


def _with_side(params: GtspParams, side: JumpSide, **values: float) -> GtspParams:
    suffix = "plus" if side is JumpSide.POSITIVE else "minus"
    return dataclasses.replace(params, **{f"{k}_{suffix}": v for k, v in values.items()})


def _problem(
    cfg: ExperimentConfig, grid: Grid, params: GtspParams | None = None, *, single_side: bool = False
) -> PricingProblem:
    s = cfg.scheme
    return PricingProblem(
        params=params if params is not None else cfg.model,
        market=cfg.market,
        grid=grid,
        pade=s.pade,
        compensated=s.compensated,
        rhs_sign=s.rhs_sign,
        delta_weight=s.delta_weight,
        nu_star=s.nu_star,
        m_intervals=s.m_intervals,
        time_order=s.time_order,
        sides=(s.side,) if single_side else s.sides,
        query_side=s.side,
        n_steps=cfg.grid.n_time,
    )


def _fd_solve(cfg: ExperimentConfig, problem: PricingProblem, threads: int) -> tuple[np.ndarray, bool, dict[str, Any]]:
    """Direct march at an integer exponent, α-interpolation otherwise."""
    alpha = cfg.scheme.side.select(problem.params).alpha
    if alpha == round(alpha) and alpha <= 1:
        return split_jump_march(problem), problem.compensated or alpha >= 0, {}
    sol = price_real_alpha(AlphaQuery(alpha, cfg.sweep.anchors, cfg.sweep.alpha_scaling), problem, threads=threads)  # type: ignore[arg-type]
    meta = sol.metadata
    return sol.values, meta.compensated, {
        "anchors": meta.anchors, "mode": meta.mode, "schemes": meta.schemes, "scaling": meta.scaling,
    }


def _fft_solve(
    cfg: ExperimentConfig, params: GtspParams, n_space: int, *, compensated: bool
) -> tuple[np.ndarray, np.ndarray]:
    """Explicit Euler FFT reference on the padded ``(-x*, x*)`` window; returns window nodes and values."""
    side = cfg.scheme.side
    padded = extend_fft_domain(build_fft_grid(cfg.grid.x_star, n_space, cfg.market.maturity, _time_steps(cfg)))
    sp = side.select(params)
    weight = cfg.scheme.delta_weight * sp.sqrt_v
    kernel = tempered_kernel_weights(side, weight * sp.lam, sp.nu, sp.alpha, padded.n_nodes, padded.h)
    mode = cfg.scheme.compensation
    if compensated and sp.alpha >= 0 and mode == "analytic":
        _log.info("alpha=%g has no analytic compensator; using the discrete kernel mass", sp.alpha)
        mode = "discrete"
    comp = compensation_value(mode, sp, kernel, padded.h) if compensated else 0.0  # type: ignore[arg-type]
    c = euler_march(
        kernel, terminal_condition(padded, cfg.market), padded.theta, cfg.grid.n_time,
        compensated, comp, h=padded.h, sign=cfg.scheme.rhs_sign,
    )
    return padded.window_nodes, padded.restrict(c)


def _on_nodes(x_target: np.ndarray, x: np.ndarray, values: np.ndarray) -> np.ndarray:
    return np.interp(x_target, x, values)


# ──────────────────────────────────────────────────────────────────────────────
# Experiments
# ──────────────────────────────────────────────────────────────────────────────

def fd_vs_fft(cfg: ExperimentConfig, threads: int) -> ResultTable:
    """FD solution on the log-price grid against FFT references of growing size."""
    grid = _fd_grid(cfg)
    fd, compensated, meta = _fd_solve(cfg, _problem(cfg, grid, single_side=True), threads)
    x_fd = grid.nodes
    table = ResultTable(("n_fft", "x", "c_fd", "c_fft", "diff"), metadata=dict(meta))
    refs = _pmap(threads, lambda n: _fft_solve(cfg, cfg.model, n, compensated=compensated), cfg.grid.fft_sizes)
    for n, (x, c_fft) in zip(cfg.grid.fft_sizes, refs):
        inside = (x_fd >= x[0]) & (x_fd <= x[-1])
        on_fd = _on_nodes(x_fd[inside], x, c_fft)
        diff = fd[inside] - on_fd
        table.add_rows(x_fd[inside], fd[inside], on_fd, diff, n_fft=n)
        table.metadata[f"max_abs_diff_{n}"] = float(np.max(np.abs(diff))) if diff.size else float("nan")
    return table


def alpha_interp(cfg: ExperimentConfig, threads: int) -> ResultTable:
    """Real-α solution by anchor interpolation, with a shifted anchor set and an FFT reference."""
    grid = _fd_grid(cfg)
    x_fd = grid.nodes
    problem = _problem(cfg, grid, single_side=True)
    alpha = cfg.sweep.alpha_real
    query = AlphaQuery(alpha, cfg.sweep.anchors, cfg.sweep.alpha_scaling)  # type: ignore[arg-type]
    sol = price_real_alpha(query, problem, threads=threads)
    shifted_query = dataclasses.replace(query, anchor_alphas=tuple(a - 1 for a in query.anchor_alphas))
    shifted = price_real_alpha(shifted_query, problem, threads=threads)
    plain = combine(lagrange_weights(query.anchor_alphas, alpha), [sol.anchor_values[a] for a in query.anchor_alphas])

    compensated = sol.metadata.compensated
    x, c_fft = _fft_solve(cfg, _with_side(cfg.model, cfg.scheme.side, alpha=alpha), cfg.sweep.reference_n, compensated=compensated)
    ref = _on_nodes(x_fd, x, c_fft)
    diff = sol.values - ref

    # Deviation at the anchor nearest the target, for scale; ties go toward zero.
    check = min(query.anchor_alphas, key=lambda a: (abs(a - alpha), -a))
    xa, ca = _fft_solve(cfg, _with_side(cfg.model, cfg.scheme.side, alpha=float(check)), cfg.sweep.reference_n, compensated=compensated)
    anchor_diff = sol.anchor_values[check] - _on_nodes(x_fd, xa, ca)

    meta = sol.metadata
    table = ResultTable(
        ("x", "c_interp", "c_shifted", "c_fft", "diff"),
        metadata={
            "alpha_real": alpha,
            "anchors": meta.anchors,
            "mode": meta.mode,
            "schemes": meta.schemes,
            "compensated": compensated,
            "scaling": meta.scaling,
            "shifted_anchors": shifted.metadata.anchors,
            "shift_max_abs_diff": float(np.max(np.abs(sol.values - shifted.values))),
            "max_abs_diff": float(np.max(np.abs(diff))),
            "plain_max_abs_diff": float(np.max(np.abs(plain - ref))),
            "anchor_check_alpha": check,
            "anchor_check_max_abs_diff": float(np.max(np.abs(anchor_diff))),
        },
    )
    table.add_rows(x_fd, sol.values, shifted.values, ref, diff)
    return table


def vg_case(cfg: ExperimentConfig, threads: int) -> ResultTable:
    """α = 0 on the query side against a discretely compensated FFT reference."""
    side = cfg.scheme.side
    params = _with_side(cfg.model, side, alpha=0.0)
    grid = _fd_grid(cfg)
    fd = split_jump_march(_problem(cfg, grid, params, single_side=True))
    vg = VgStepConfig.from_model(params, side, grid.theta, grid.h)
    x, c_fft = _fft_solve(cfg, params, cfg.sweep.reference_n, compensated=True)
    ref = _on_nodes(grid.nodes, x, c_fft)
    table = ResultTable(
        ("x", "c_vg", "c_fft", "diff"),
        metadata={"m_real": vg.m_real, "max_abs_diff": float(np.max(np.abs(fd - ref)))},
    )
    table.add_rows(grid.nodes, fd, ref, fd - ref)
    return table


def _interior(n_nodes: int) -> slice:
    margin = max(1, round(DEFAULT_INFVAR_EDGE_SHARE * n_nodes))
    return slice(margin, n_nodes - margin)


def _infvar_sweep(cfg: ExperimentConfig, threads: int, key: str, values: tuple[Any, ...]) -> ResultTable:
    """March the α = 1 problem for each value of *key* and tabulate successive changes.

    A ν* sweep keeps the quadrature spacing Δ of the configured ``(ν*, M)``
    pair, so M grows with ν* and only the truncation moves.
    """
    side = cfg.scheme.side
    params = _with_side(cfg.model, side, alpha=1.0, nu=cfg.sweep.infvar_nu)
    base = _problem(cfg, _fd_grid(cfg), params, single_side=True)
    if key == "nu_star":
        spacing = (cfg.scheme.nu_star - cfg.sweep.infvar_nu) / cfg.scheme.m_intervals
        problems = [
            dataclasses.replace(base, nu_star=v, m_intervals=max(2, 2 * round((v - cfg.sweep.infvar_nu) / (2 * spacing))))
            for v in values
        ]
    else:
        problems = [dataclasses.replace(base, **{key: v}) for v in values]
    solutions = _pmap(threads, split_jump_march, problems)
    inner = _interior(base.grid.n_nodes)
    table = ResultTable((key, "m_intervals", "max_abs_change", "interior_max_abs_change"))
    previous = None
    for value, problem, sol in zip(values, problems, solutions):
        if previous is None:
            change = interior = float("nan")
        else:
            change = float(np.max(np.abs(sol - previous)))
            interior = float(np.max(np.abs(sol[inner] - previous[inner])))
        table.add_row(value, problem.m_intervals, change, interior)
        previous = sol
    return table


def infvar_nu_star_sweep(cfg: ExperimentConfig, threads: int) -> ResultTable:
    """α = 1 solutions as the quadrature truncation ν* grows."""
    return _infvar_sweep(cfg, threads, "nu_star", cfg.sweep.nu_star_values)


def infvar_m_sweep(cfg: ExperimentConfig, threads: int) -> ResultTable:
    """α = 1 solutions as the Simpson interval count M grows."""
    return _infvar_sweep(cfg, threads, "m_intervals", cfg.sweep.m_values)


def stability_sweep(cfg: ExperimentConfig, threads: int) -> ResultTable:
    """Measured spectral radii of the Crank-Nicolson and α = 0 iterations."""
    w = cfg.sweep
    side = cfg.scheme.side
    sp = side.select(cfg.model)
    table = ResultTable(
        ("scheme", "alpha", "nu", "h", "theta", "zeta", "spectral_radius", "inf_norm", "stable", "condition")
    )
    cn_cases = [(a, h, t) for a in w.stability_alpha for h in w.stability_h for t in w.stability_theta]
    reports = _pmap(
        threads,
        lambda c: assess_cn_stability(c[0], sp.nu, sp.lam, c[1], c[2], w.stability_n, sqrt_v=sp.sqrt_v, side=side),
        cn_cases,
    )
    for (a, h, t), r in zip(cn_cases, reports):
        table.add_row("cn11", a, sp.nu, h, t, r.zeta_analytic, r.spectral_radius_measured, r.inf_norm, r.stable, r.condition)
    for nu in w.stability_nu:
        for h in w.vg_h:
            r = assess_vg_stability(nu, h, 1, w.stability_n, side)
            table.add_row("vg", 0, nu, h, float("nan"), r.zeta_analytic, r.spectral_radius_measured, r.inf_norm, r.stable, r.condition)
    table.metadata["all_cn_stable"] = all(r.stable for r in reports)
    return table


def test_integral(cfg: ExperimentConfig, threads: int) -> ResultTable:
    """FFT quadrature error of the closed-form test integral across grid sizes."""
    nu = cfg.scheme.side.select(cfg.model).nu
    table = ResultTable(("alpha", "n_space", "h", "max_abs_error", "error_at_zero"))
    cases = [(a, n) for a in cfg.sweep.test_alphas for n in cfg.grid.fft_sizes]
    results = _pmap(
        threads,
        lambda c: test_integral_fft(build_fft_grid(cfg.grid.x_star, c[1], cfg.market.maturity, 1), nu, c[0]),
        cases,
    )
    for (a, n), res in zip(cases, results):
        zero = int(np.argmin(np.abs(res.x)))
        table.add_row(a, n, 2 * cfg.grid.x_star / n, res.max_error, float(res.error[zero]))
    return table


test_integral.__test__ = False  # type: ignore[attr-defined]


def basic_model(cfg: ExperimentConfig, threads: int) -> ResultTable:
    """Laplace-jump model: Crank-Nicolson on the third-order PDE against direct quadrature."""
    b = cfg.basic
    grid = build_grid(b.x_min, b.x_max, cfg.grid.n_space, cfg.market.maturity, _time_steps(cfg))
    c0 = terminal_condition(grid, cfg.market)
    fd = march(basic_model_pair(b.alpha, b.lam, grid.theta, grid.n_nodes, grid.h), c0, cfg.grid.n_time)
    kernel = laplace_kernel(b.alpha, b.lam, grid.n_nodes, grid.h)
    ref = euler_march(kernel, c0, grid.theta, cfg.grid.n_time, True, b.lam, h=grid.h, sign=-1)
    table = ResultTable(("x", "c_fd", "c_fft", "diff"), metadata={"max_abs_diff": float(np.max(np.abs(fd - ref)))})
    table.add_rows(grid.nodes, fd, ref, fd - ref)
    return table


_EXPERIMENTS: dict[str, Callable[[ExperimentConfig, int], ResultTable]] = {
    "fd_vs_fft": fd_vs_fft,
    "alpha_interp": alpha_interp,
    "vg_case": vg_case,
    "infvar_nu_star_sweep": infvar_nu_star_sweep,
    "infvar_m_sweep": infvar_m_sweep,
    "stability_sweep": stability_sweep,
    "test_integral": test_integral,
    "basic_model": basic_model,
}


# ──────────────────────────────────────────────────────────────────────────────
# Public API
# ──────────────────────────────────────────────────────────────────────────────

def run_experiment(cfg: ExperimentConfig, *, threads: int = 1) -> ExperimentResult:
    """Run ``cfg.experiment`` and write ``<output_path>/<experiment>.csv``.

    Raises:
        OSError: If the output directory is not writable.
        PpideError: Propagated from the numerical modules.
    """
    _log.info("Running %s (config %s, threads=%d)", cfg.experiment, cfg.config_hash[:12], threads)
    table = _EXPERIMENTS[cfg.experiment](cfg, threads)
    out_dir = prepare_output_dir(cfg.output_path)
    header = [("experiment", cfg.experiment), ("config_hash", cfg.config_hash), *cfg.flat_items()]
    path = write_csv(table, out_dir / result_filename(cfg.experiment), header)
    return ExperimentResult(cfg.experiment, path, table, cfg.config_hash)


def table1_rows(grid: GridSettings) -> ResultTable:
    """Grid steps of the FD log-price grid and of each FFT window size."""
    table = ResultTable(("column", "n_space", "x_min", "x_max", "h", "h_published", "matches"))
    published = dict(zip(DEFAULT_FFT_SIZES, TABLE1_FFT_H))

    def _row(label: str, n: int, lo: float, hi: float, pub: float) -> None:
        h = (hi - lo) / n
        ok = bool(abs(h - pub) <= TABLE1_RTOL * pub) if np.isfinite(pub) else False
        table.add_row(label, n, lo, hi, h, pub, ok)

    _row(f"FD_{grid.n_space}", grid.n_space, grid.x_min, grid.x_max, TABLE1_FD_H if grid.n_space == 256 else float("nan"))
    for n in grid.fft_sizes:
        _row(f"FFT_{n}", n, -grid.x_star, grid.x_star, published.get(n, float("nan")))
    return table


def emit_table1(grid: GridSettings, path: Path) -> ResultTable:
    """Write the grid-step table to *path* and return it."""
    table = table1_rows(grid)
    write_csv(table, path, [("table", "grid_steps")])
    return table

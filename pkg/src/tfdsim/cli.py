"""Command-line front end: thermal experiments as CSV files.

Four subcommands: ``magnetization`` (thermal-vacuum <Mz> against beta),
``evolve`` (magnetization components against time), ``beta-sweep``
(transverse precession traces across temperatures) and ``verify``
(structural self-checks).

Exact expectation values are the default; ``--shots`` switches to
seeded sampling.  In exact mode the exit status doubles as an
acceptance gate: any deviation from the closed forms above 1e-9 makes
the command exit nonzero, so a CI job can run the experiments directly.
"""
from __future__ import annotations

import argparse
import math
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from tfdsim import oracle, reporting
from tfdsim.core import StateVector, sample_shots
from tfdsim.dynamics import (
    InitialStateKind,
    build_tfd_hamiltonian,
    evolve_to,
    magnetization_series,
    prepare_initial_state,
)
from tfdsim.thermal import ThermalParams
from tfdsim.verify import format_report, run_verification

#: exact-mode deviations above this trip the nonzero exit status
GATE_TOL = 1e-9

_ORACLE_LABELS = {
    InitialStateKind.THERMAL_VACUUM: "vacuum",
    InitialStateKind.EXCITED_THERMAL: "excited",
    InitialStateKind.PLUS_THERMAL: "plus",
}
_BASIS_INDEX = {"X": 0, "Y": 1, "Z": 2}


@dataclass
class RunConfig:
    """Bag of knobs shared by the experiment subcommands.

    Defaults mirror the reference setup: omega 0.5, one mode, beta grid
    [0.1, 5.0] with 50 points, dt 0.1, t_max 10.0, sweep betas
    (0.01, 1.0, 10.0).
    """

    omega: float = 0.5
    n_modes: int = 1
    beta: float = 1.0
    beta_min: float = 0.1
    beta_max: float = 5.0
    beta_steps: int = 50
    beta_values: tuple[float, ...] = (0.01, 1.0, 10.0)
    dt: float = 0.1
    t_max: float = 10.0
    state: InitialStateKind = InitialStateKind.PLUS_THERMAL
    shots: int | None = None
    seed: int = 0
    out: Path | None = None
    plot: bool = False
    plot_script: bool = False

    def validate(self) -> None:
        if not 0.0 < self.omega < math.inf:
            raise ValueError(f"omega must be positive, got {self.omega!r}")
        if self.n_modes < 1 or self.n_modes > 4:
            raise ValueError("n-modes must be between 1 and 4")
        if self.beta < 0 or self.beta_min < 0 or any(b < 0 for b in self.beta_values):
            raise ValueError("beta values must be non-negative")
        if self.beta_steps < 1:
            raise ValueError("beta-steps must be at least 1")
        if self.beta_max < self.beta_min:
            raise ValueError("beta-max must not be below beta-min")
        if not self.beta_values:
            raise ValueError("beta-values must not be empty")
        if self.dt <= 0 or self.t_max <= 0:
            raise ValueError("dt and t-max must be positive")
        if self.shots is not None and self.shots < 1:
            raise ValueError("shots must be positive")


def time_grid(dt: float, t_max: float) -> np.ndarray:
    """Sample times covering [0, t_max) in steps of dt.

    The end point is excluded; a tiny slack keeps grids like
    (0.1, 10.0) at exactly 100 points despite binary rounding.
    """
    if dt <= 0 or t_max <= 0:
        raise ValueError("dt and t_max must be positive")
    count = int(math.floor(t_max / dt - 1e-9)) + 1
    return dt * np.arange(count)


def beta_grid(cfg: RunConfig) -> np.ndarray:
    return np.linspace(cfg.beta_min, cfg.beta_max, cfg.beta_steps)


def _shot_components(
    state: StateVector, n_modes: int, shots: int, seed: int, row: int
) -> dict[str, float]:
    """Per-row sampled estimates of the three magnetization sums.

    Every (row, basis, wire) triple gets its own child seed, so rows
    are independent yet fully reproducible from the one CLI seed.
    """
    out = {}
    for basis, b_index in _BASIS_INDEX.items():
        total = 0.0
        for wire in range(n_modes):
            child = np.random.SeedSequence(entropy=seed, spawn_key=(row, b_index, wire))
            counts = sample_shots(state, wire, basis, shots, child)
            total += counts.mean
        out[basis] = total
    return out


def _output_path(cfg: RunConfig, default_name: str) -> Path:
    if cfg.out is not None:
        return Path(cfg.out)
    return reporting.default_output_dir() / default_name


def _summary(
    command: str,
    rows: int,
    max_err: float,
    path: Path,
    elapsed: float,
    extras: list[Path],
) -> str:
    parts = [
        f"{command}: {rows} rows -> {path}",
        f"max abs err {max_err:.3e}",
        f"{elapsed:.2f} s",
    ]
    parts.extend(str(extra) for extra in extras)
    return ", ".join(parts)


def _figure_paths(cfg: RunConfig, csv_path: Path, kind: str, render) -> list[Path]:
    """Optional figure and plot-script emission next to the CSV."""
    extras: list[Path] = []
    if cfg.plot:
        extras.append(render(csv_path.with_suffix(".png")))
    if cfg.plot_script:
        script = csv_path.with_name(csv_path.stem + "_plot.py")
        extras.append(reporting.emit_plot_script(kind, csv_path, script))
    return extras


def cmd_magnetization(cfg: RunConfig) -> int:
    """Thermal-vacuum magnetization across the beta grid (one CSV row per beta)."""
    cfg.validate()
    started = time.perf_counter()
    betas = beta_grid(cfg)
    rows = []
    max_err = 0.0
    mx_col, my_col, mz_col = [], [], []
    for row_index, beta in enumerate(betas):
        p = ThermalParams(beta=float(beta), omega=cfg.omega)
        if cfg.shots is None:
            series = magnetization_series(
                InitialStateKind.THERMAL_VACUUM, p, cfg.omega, [0.0], cfg.n_modes
            )
            mx, my, mz = float(series.mx[0]), float(series.my[0]), float(series.mz[0])
        else:
            state = prepare_initial_state(
                InitialStateKind.THERMAL_VACUUM, p, cfg.n_modes
            )
            sampled = _shot_components(state, cfg.n_modes, cfg.shots, cfg.seed, row_index)
            mx, my, mz = sampled["X"], sampled["Y"], sampled["Z"]
        mz_theory = cfg.n_modes * oracle.magnetization_z(float(beta), cfg.omega)
        abs_err = abs(mz - mz_theory)
        max_err = max(max_err, abs_err)
        rows.append((float(beta), mx, my, mz, mz_theory, abs_err))
        mx_col.append(mx)
        my_col.append(my)
        mz_col.append(mz)
    path = _output_path(cfg, "magnetization.csv")
    count = reporting.write_csv(
        path, ["beta", "mx", "my", "mz", "mz_theory", "abs_err"], rows
    )
    extras = _figure_paths(
        cfg,
        path,
        "magnetization",
        lambda png: reporting.render_magnetization_figure(
            betas, mz_col, [r[4] for r in rows], cfg.omega, png
        ),
    )
    elapsed = time.perf_counter() - started
    print(_summary("magnetization", count, max_err, path, elapsed, extras))
    if cfg.shots is None and max_err > GATE_TOL:
        return 1
    return 0


def cmd_evolve(cfg: RunConfig) -> int:
    """Time evolution of one initial state; simulated and closed-form columns."""
    cfg.validate()
    started = time.perf_counter()
    times = time_grid(cfg.dt, cfg.t_max)
    p = ThermalParams(beta=cfg.beta, omega=cfg.omega)
    label = _ORACLE_LABELS[cfg.state]
    if cfg.shots is None:
        series = magnetization_series(cfg.state, p, cfg.omega, times, cfg.n_modes)
        measured = list(zip(series.mx, series.my, series.mz))
    else:
        h = build_tfd_hamiltonian(cfg.omega, cfg.n_modes)
        state0 = prepare_initial_state(cfg.state, p, cfg.n_modes)
        measured = []
        for row_index, t in enumerate(times):
            state = evolve_to(state0, h, float(t))
            sampled = _shot_components(state, cfg.n_modes, cfg.shots, cfg.seed, row_index)
            measured.append((sampled["X"], sampled["Y"], sampled["Z"]))
    rows = []
    max_err = 0.0
    for t, (mx, my, mz) in zip(times, measured):
        ref = oracle.expectations_for(label, cfg.beta, cfg.omega, float(t))
        theory = (cfg.n_modes * ref.mx, cfg.n_modes * ref.my, cfg.n_modes * ref.mz)
        max_err = max(
            max_err,
            abs(mx - theory[0]),
            abs(my - theory[1]),
            abs(mz - theory[2]),
        )
        rows.append((float(t), float(mx), float(my), float(mz)) + theory)
    path = _output_path(cfg, "evolution.csv")
    count = reporting.write_csv(
        path,
        ["t", "mx", "my", "mz", "mx_theory", "my_theory", "mz_theory"],
        rows,
    )
    extras = _figure_paths(
        cfg,
        path,
        "evolution",
        lambda png: reporting.render_evolution_figure(
            times,
            [r[1] for r in rows],
            [r[2] for r in rows],
            [r[3] for r in rows],
            cfg.beta,
            cfg.omega,
            png,
        ),
    )
    elapsed = time.perf_counter() - started
    print(_summary("evolve", count, max_err, path, elapsed, extras))
    if cfg.shots is None and max_err > GATE_TOL:
        return 1
    return 0


def cmd_beta_sweep_evolution(cfg: RunConfig) -> int:
    """Transverse precession traces for several betas in one long-format CSV.

    The per-beta amplitude column holds the peak of sqrt(mx^2 + my^2)
    over the grid; for exact evolution that peak is grid-independent
    because the transverse magnitude is constant in time.
    """
    cfg.validate()
    started = time.perf_counter()
    times = time_grid(cfg.dt, cfg.t_max)
    rows = []
    curves: dict[float, tuple[np.ndarray, np.ndarray]] = {}
    max_err = 0.0
    for b_index, beta in enumerate(cfg.beta_values):
        p = ThermalParams(beta=float(beta), omega=cfg.omega)
        if cfg.shots is None:
            series = magnetization_series(
                InitialStateKind.PLUS_THERMAL, p, cfg.omega, times, cfg.n_modes
            )
            mx, my = series.mx, series.my
        else:
            h = build_tfd_hamiltonian(cfg.omega, cfg.n_modes)
            state0 = prepare_initial_state(InitialStateKind.PLUS_THERMAL, p, cfg.n_modes)
            mx_list, my_list = [], []
            for row_index, t in enumerate(times):
                state = evolve_to(state0, h, float(t))
                sampled = _shot_components(
                    state, cfg.n_modes, cfg.shots, cfg.seed, b_index * len(times) + row_index
                )
                mx_list.append(sampled["X"])
                my_list.append(sampled["Y"])
            mx, my = np.array(mx_list), np.array(my_list)
        amplitude = float(np.max(np.hypot(mx, my)))
        amplitude_theory = cfg.n_modes * oracle.transverse_amplitude(
            float(beta), cfg.omega
        )
        max_err = max(max_err, abs(amplitude - amplitude_theory))
        curves[float(beta)] = (times, np.asarray(mx))
        for t, value in zip(times, mx):
            rows.append(
                (float(beta), float(t), float(value), amplitude, amplitude_theory)
            )
    path = _output_path(cfg, "beta_sweep.csv")
    count = reporting.write_csv(
        path, ["beta", "t", "mx", "amplitude", "amplitude_theory"], rows
    )
    extras = _figure_paths(
        cfg,
        path,
        "beta-sweep",
        lambda png: reporting.render_beta_sweep_figure(curves, cfg.omega, png),
    )
    elapsed = time.perf_counter() - started
    print(_summary("beta-sweep", count, max_err, path, elapsed, extras))
    if cfg.shots is None and max_err > GATE_TOL:
        return 1
    return 0


def cmd_verify(
    n_modes: int = 3,
    samples: int = 20,
    seed: int = 20260815,
    string_mode: str = "standard",
    out: Path | None = None,
) -> int:
    """Run the structural self-checks; exit 0 only if everything passes."""
    started = time.perf_counter()
    results = run_verification(
        n_modes=n_modes, samples=samples, seed=seed, string_mode=string_mode
    )
    report = format_report(results)
    print(report)
    if out is not None:
        out = Path(out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(report + "\n", encoding="ascii")
    elapsed = time.perf_counter() - started
    print(f"verify: {elapsed:.2f} s")
    return 0 if all(r.passed for r in results) else 1


def _add_common_arguments(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--omega", type=float, default=0.5, help="mode energy (default 0.5)")
    sub.add_argument(
        "--n-modes", type=int, default=1, help="number of physical modes (default 1)"
    )
    sub.add_argument("--out", type=Path, default=None, help="output CSV path")
    sub.add_argument(
        "--shots",
        type=int,
        default=None,
        help="sample this many shots per point instead of exact expectations",
    )
    sub.add_argument(
        "--seed", type=int, default=0, help="base seed for shot sampling (default 0)"
    )
    sub.add_argument(
        "--plot", action="store_true", help="render a PNG figure next to the CSV"
    )
    sub.add_argument(
        "--plot-script",
        action="store_true",
        help="write a standalone plotting script next to the CSV",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tfdsim",
        description="Thermal-state preparation and precession experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    mag = sub.add_parser(
        "magnetization", help="thermal-vacuum magnetization across a beta grid"
    )
    _add_common_arguments(mag)
    mag.add_argument("--beta-min", type=float, default=0.1)
    mag.add_argument("--beta-max", type=float, default=5.0)
    mag.add_argument("--beta-steps", type=int, default=50)

    evo = sub.add_parser("evolve", help="real-time magnetization of one state")
    _add_common_arguments(evo)
    evo.add_argument("--beta", type=float, default=1.0)
    evo.add_argument("--dt", type=float, default=0.1)
    evo.add_argument("--t-max", type=float, default=10.0)
    evo.add_argument(
        "--state",
        choices=[kind.value for kind in InitialStateKind],
        default=InitialStateKind.PLUS_THERMAL.value,
    )

    sweep = sub.add_parser(
        "beta-sweep", help="transverse precession traces across temperatures"
    )
    _add_common_arguments(sweep)
    sweep.add_argument(
        "--beta-values",
        type=float,
        nargs="+",
        default=[0.01, 1.0, 10.0],
        metavar="BETA",
    )
    sweep.add_argument("--dt", type=float, default=0.1)
    sweep.add_argument("--t-max", type=float, default=10.0)

    ver = sub.add_parser("verify", help="run the structural self-checks")
    ver.add_argument("--n-modes", type=int, default=3)
    ver.add_argument("--samples", type=int, default=20)
    ver.add_argument("--seed", type=int, default=20260815)
    ver.add_argument(
        "--string-mode",
        choices=["standard", "omit", "flip"],
        default="standard",
        help="debug hook: run the anticommutation suite with broken strings",
    )
    ver.add_argument("--out", type=Path, default=None, help="also write the report here")
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(
        omega=args.omega,
        n_modes=args.n_modes,
        shots=args.shots,
        seed=args.seed,
        out=args.out,
        plot=args.plot,
        plot_script=args.plot_script,
    )
    if args.command == "magnetization":
        cfg.beta_min = args.beta_min
        cfg.beta_max = args.beta_max
        cfg.beta_steps = args.beta_steps
    elif args.command == "evolve":
        cfg.beta = args.beta
        cfg.dt = args.dt
        cfg.t_max = args.t_max
        cfg.state = InitialStateKind(args.state)
    elif args.command == "beta-sweep":
        cfg.beta_values = tuple(args.beta_values)
        cfg.dt = args.dt
        cfg.t_max = args.t_max
    return cfg


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return cmd_verify(
                n_modes=args.n_modes,
                samples=args.samples,
                seed=args.seed,
                string_mode=args.string_mode,
                out=args.out,
            )
        cfg = _config_from_args(args)
        if args.command == "magnetization":
            return cmd_magnetization(cfg)
        if args.command == "evolve":
            return cmd_evolve(cfg)
        return cmd_beta_sweep_evolution(cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Delimited output, figure rendering and plot-script emission.

CSV files are the interchange format: fixed header, comma separator,
15-significant-digit floats, LF line endings, no locale surprises.  The
byte content depends only on the data, so identical runs produce
identical files.

Figures are optional.  matplotlib is imported lazily inside the render
functions (with the Agg backend forced), so nothing plot-related is
touched unless a figure was actually requested.  Plot-script emission
goes one step further and only writes a small standalone Python script
that reads the CSV by its file name; the tool itself never imports a
plotting library on that path.
"""
from __future__ import annotations

import os
from pathlib import Path
from typing import Iterable, Sequence


def format_float(value: float) -> str:
    """Render a float with 15 significant digits ('.15g')."""
    return format(float(value), ".15g")


def _render_cell(value: object) -> str:
    if isinstance(value, bool):
        raise TypeError("boolean cells are ambiguous in CSV output")
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_float(value)
    return str(value)


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence[object]]) -> int:
    """Write rows under a header; returns the number of data rows."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with open(path, "w", encoding="ascii", newline="\n") as handle:
        handle.write(",".join(header) + "\n")
        for row in rows:
            cells = [_render_cell(cell) for cell in row]
            if len(cells) != len(header):
                raise ValueError(
                    f"row has {len(cells)} cells for {len(header)} columns"
                )
            handle.write(",".join(cells) + "\n")
            count += 1
    return count


def default_output_dir() -> Path:
    """Output directory: $TFDSIM_OUTPUT_DIR if set, else the working directory."""
    configured = os.environ.get("TFDSIM_OUTPUT_DIR", "")
    return Path(configured) if configured else Path(".")


def _pyplot():
    import matplotlib

    matplotlib.use("Agg", force=True)
    import matplotlib.pyplot as plt

    return plt


def render_magnetization_figure(betas, mz, mz_theory, omega: float, path: Path) -> Path:
    """Magnetization vs inverse temperature with the closed-form curve."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(betas, mz_theory, "-", color="tab:gray", label="tanh(beta*omega/2)")
    ax.plot(betas, mz, "o", ms=3.5, color="tab:blue", label="simulated")
    ax.set_xlabel("inverse temperature beta")
    ax.set_ylabel("<Mz>")
    ax.set_title(f"Thermal magnetization (omega={omega:g})")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return Path(path)


def render_evolution_figure(times, mx, my, mz, beta: float, omega: float, path: Path) -> Path:
    """Three magnetization components against time."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.5, 4.0))
    ax.plot(times, mx, label="<Mx>")
    ax.plot(times, my, label="<My>")
    ax.plot(times, mz, label="<Mz>")
    ax.set_xlabel("t")
    ax.set_ylabel("magnetization")
    ax.set_title(f"Precession at beta={beta:g}, omega={omega:g}")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return Path(path)


def render_beta_sweep_figure(curves, omega: float, path: Path) -> Path:
    """One <Mx>(t) trace per beta; ``curves`` maps beta -> (times, mx)."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.5, 4.0))
    for beta, (times, mx) in curves.items():
        ax.plot(times, mx, label=f"beta={beta:g}")
    ax.set_xlabel("t")
    ax.set_ylabel("<Mx>")
    ax.set_title(f"Transverse damping across temperatures (omega={omega:g})")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return Path(path)


_PLOT_SCRIPT_BODIES = {
    "magnetization": """\
columns = load_columns()
plt.plot(columns["beta"], columns["mz_theory"], "-", label="theory")
plt.plot(columns["beta"], columns["mz"], "o", ms=3.5, label="simulated")
plt.xlabel("inverse temperature beta")
plt.ylabel("<Mz>")
""",
    "evolution": """\
columns = load_columns()
for name in ("mx", "my", "mz"):
    plt.plot(columns["t"], columns[name], label="<M%s>" % name[-1])
plt.xlabel("t")
plt.ylabel("magnetization")
""",
    "beta-sweep": """\
columns = load_columns()
betas = sorted(set(columns["beta"]))
for beta in betas:
    rows = [k for k, b in enumerate(columns["beta"]) if b == beta]
    plt.plot([columns["t"][k] for k in rows],
             [columns["mx"][k] for k in rows],
             label="beta=%g" % beta)
plt.xlabel("t")
plt.ylabel("<Mx>")
""",
}


def emit_plot_script(kind: str, csv_path: Path, script_path: Path) -> Path:
    """Write a standalone plotting script next to the CSV.

    The script refers to the CSV by file name, so the pair can be moved
    together.  Only plain text is written here; matplotlib is imported
    by the emitted script when the user runs it, not by this function.
    """
    if kind not in _PLOT_SCRIPT_BODIES:
        raise ValueError(f"unknown plot-script kind {kind!r}")
    csv_path, script_path = Path(csv_path), Path(script_path)
    csv_name = os.path.relpath(csv_path, script_path.parent)
    preamble = f'''\
#!/usr/bin/env python3
"""Plot {csv_name} (generated alongside the data; safe to edit)."""
import csv
from pathlib import Path

import matplotlib.pyplot as plt

CSV = Path(__file__).resolve().parent / {csv_name!r}


def load_columns():
    with open(CSV, newline="") as handle:
        reader = csv.DictReader(handle)
        rows = list(reader)
    return {{name: [float(row[name]) for row in rows] for name in reader.fieldnames}}


'''
    tail = '''
plt.legend()
plt.tight_layout()
plt.savefig(CSV.with_suffix(".png"), dpi=150)
print("wrote", CSV.with_suffix(".png"))
'''
    script_path.parent.mkdir(parents=True, exist_ok=True)
    with open(script_path, "w", encoding="ascii", newline="\n") as handle:
        handle.write(preamble + _PLOT_SCRIPT_BODIES[kind] + tail)
    return script_path

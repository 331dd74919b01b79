"""Closed-form reference values for the thermal precession observables.

Everything here reduces to the mixing angle: the longitudinal
magnetization of the thermal vacuum is ``tanh(beta*omega/2) =
cos(2*theta)`` and the transverse precession amplitude of the
superposition state is ``cos(theta)``.  These are the formulas the
simulation paths are tested against; they share no code with the
simulator.

``transverse_amplitude`` is evaluated as ``1/sqrt(1 + exp(-beta*omega))``,
which is the same expression as ``exp(beta*omega/2)/sqrt(exp(beta*omega)+1)``
but does not overflow for large ``beta*omega``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple


def _check_params(beta: float, omega: float) -> None:
    if not beta >= 0.0:
        raise ValueError(f"beta must be non-negative, got {beta!r}")
    if not 0.0 < omega < math.inf:
        raise ValueError(f"omega must be positive and finite, got {omega!r}")


class OracleExpectations(NamedTuple):
    """Reference (mx, my, mz) triple for one parameter point."""

    mx: float
    my: float
    mz: float


def magnetization_z(beta: float, omega: float) -> float:
    """Thermal-vacuum longitudinal magnetization tanh(beta*omega/2)."""
    _check_params(beta, omega)
    return math.tanh(0.5 * beta * omega)


def transverse_amplitude(beta: float, omega: float) -> float:
    """Precession amplitude cos(theta) of the superposition state."""
    _check_params(beta, omega)
    return 1.0 / math.sqrt(1.0 + math.exp(-beta * omega))


def expectations_plus_state(beta: float, omega: float, t: float) -> OracleExpectations:
    """Superposition-state expectations at time t.

    The transverse pair rotates at frequency omega with amplitude
    cos(theta); mz is time independent.
    """
    _check_params(beta, omega)
    amplitude = transverse_amplitude(beta, omega)
    phase = omega * t
    mz = 0.5 * (math.tanh(0.5 * beta * omega) - 1.0)
    return OracleExpectations(
        mx=amplitude * math.cos(phase),
        my=amplitude * math.sin(phase),
        mz=mz,
    )


def expectations_z_eigenstates(
    kind: str, beta: float, omega: float
) -> OracleExpectations:
    """Expectations for the rotated vacuum or excited state.

    Both are stationary: no transverse component, and
    ``mz = +-tanh(beta*omega/2)`` with the sign set by ``kind``
    ('vacuum' or 'excited').
    """
    _check_params(beta, omega)
    if kind == "vacuum":
        sign = 1.0
    elif kind == "excited":
        sign = -1.0
    else:
        raise ValueError(f"kind must be 'vacuum' or 'excited', got {kind!r}")
    return OracleExpectations(mx=0.0, my=0.0, mz=sign * math.tanh(0.5 * beta * omega))


def expectations_for(kind: str, beta: float, omega: float, t: float) -> OracleExpectations:
    """Dispatch on the state label: 'plus', 'vacuum' or 'excited'."""
    if kind == "plus":
        return expectations_plus_state(beta, omega, t)
    return expectations_z_eigenstates(kind, beta, omega)


@dataclass(frozen=True)
class GoldenRecord:
    """One line of the golden-value file: inputs and expected outputs."""

    kind: str
    beta: float
    omega: float
    t: float
    mx: float
    my: float
    mz: float


def load_golden_records(path: Path) -> tuple[GoldenRecord, ...]:
    """Parse a golden-value file (comma-separated, '#' comments)."""
    records = []
    with open(path, encoding="ascii") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields = [cell.strip() for cell in line.split(",")]
            if len(fields) != 7:
                raise ValueError(f"{path}:{lineno}: expected 7 fields, got {len(fields)}")
            kind = fields[0]
            if kind not in ("plus", "vacuum", "excited"):
                raise ValueError(f"{path}:{lineno}: unknown state label {kind!r}")
            beta, omega, t, mx, my, mz = map(float, fields[1:])
            records.append(
                GoldenRecord(kind=kind, beta=beta, omega=omega, t=t, mx=mx, my=my, mz=mz)
            )
    if not records:
        raise ValueError(f"{path}: no records found")
    return tuple(records)

"""On-disk formats: single states (JSON) and branches (CSV).

Floats are serialized with 17 significant digits, which round-trips
every double bit-exactly, so parse(serialize(x)) == x field for field.
Both writers accept ``timestamp=False`` to suppress the one
non-deterministic header line; everything else is byte-stable across
identical runs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .contour import FloatArray, VortexContourCoeffs
from .continuation import Branch
from .solver import SolveReport

__all__ = [
    "StateFile",
    "BranchRow",
    "BranchFile",
    "save_state",
    "load_state",
    "save_branch",
    "load_branch",
]

STATE_FORMAT = "vstate"
BRANCH_FORMAT = "vstate-branch"
SCHEMA_VERSION = 1


def _fmt(x: float) -> str:
    x = float(x)
    if not np.isfinite(x):
        raise ValueError(f"cannot serialize non-finite value {x}")
    return format(x, ".17g")


def _timestamp() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


@dataclass(frozen=True)
class StateFile:
    """One solved (or attempted) state, ready for disk."""

    schema_version: int
    b: float
    m: int
    omega: float
    modes: int
    nodes: int
    a1: FloatArray
    a2: FloatArray
    residual_max: float
    iterations: int
    converged: bool

    @classmethod
    def from_report(
        cls, report: SolveReport, omega: float, nodes: int
    ) -> "StateFile":
        coeffs = report.coeffs
        return cls(
            schema_version=SCHEMA_VERSION,
            b=coeffs.b,
            m=coeffs.fold,
            omega=float(omega),
            modes=coeffs.modes,
            nodes=int(nodes),
            a1=np.array(coeffs.a1),
            a2=np.array(coeffs.a2),
            residual_max=report.residual_max,
            iterations=report.iterations,
            converged=report.converged,
        )

    def coefficients(self) -> VortexContourCoeffs:
        return VortexContourCoeffs(
            b=self.b, fold=self.m, modes=self.modes, a1=self.a1, a2=self.a2
        )


def _state_document(state: StateFile, timestamp: bool) -> str:
    lines = ["{"]
    lines.append(f'  "format": "{STATE_FORMAT}",')
    lines.append(f'  "schema_version": {state.schema_version},')
    if timestamp:
        lines.append(f'  "created": "{_timestamp()}",')
    lines.append(f'  "b": {_fmt(state.b)},')
    lines.append(f'  "m": {state.m},')
    lines.append(f'  "omega": {_fmt(state.omega)},')
    lines.append(f'  "modes": {state.modes},')
    lines.append(f'  "nodes": {state.nodes},')
    for name, values in (("a1", state.a1), ("a2", state.a2)):
        body = ",\n".join(f"    {_fmt(v)}" for v in values)
        lines.append(f'  "{name}": [\n{body}\n  ],')
    lines.append(f'  "residual_max": {_fmt(state.residual_max)},')
    lines.append(f'  "iterations": {state.iterations},')
    lines.append(f'  "converged": {"true" if state.converged else "false"}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def save_state(path: str | Path, state: StateFile, timestamp: bool = True) -> None:
    Path(path).write_text(_state_document(state, timestamp))


def load_state(path: str | Path) -> StateFile:
    raw = json.loads(Path(path).read_text())
    if raw.get("format") != STATE_FORMAT:
        raise ValueError(f"{path}: not a {STATE_FORMAT} document")
    version = raw.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ValueError(f"{path}: unsupported schema_version {version}")
    a1 = np.array(raw["a1"], dtype=np.float64)
    a2 = np.array(raw["a2"], dtype=np.float64)
    if len(a1) != raw["modes"] or len(a2) != raw["modes"]:
        raise ValueError(f"{path}: coefficient arrays do not match modes")
    return StateFile(
        schema_version=version,
        b=float(raw["b"]),
        m=int(raw["m"]),
        omega=float(raw["omega"]),
        modes=int(raw["modes"]),
        nodes=int(raw["nodes"]),
        a1=a1,
        a2=a2,
        residual_max=float(raw["residual_max"]),
        iterations=int(raw["iterations"]),
        converged=bool(raw["converged"]),
    )


@dataclass(frozen=True)
class BranchRow:
    omega: float
    distance: float
    iterations: int
    a1_1: float
    a2_1: float
    converged: bool


@dataclass(frozen=True)
class BranchFile:
    """A traced branch: header metadata plus one row per state."""

    schema_version: int
    b: float
    m: int
    origin: str
    omega_step: float
    modes: int
    nodes: int
    rows: list[BranchRow]
    terminated_at: float | None

    @classmethod
    def from_branch(
        cls, branch: Branch, omega_step: float, modes: int, nodes: int
    ) -> "BranchFile":
        rows = [
            BranchRow(
                omega=record.omega,
                distance=record.distance,
                iterations=record.report.iterations,
                a1_1=float(record.report.coeffs.a1[0]),
                a2_1=float(record.report.coeffs.a2[0]),
                converged=record.report.converged,
            )
            for record in branch.records
        ]
        return cls(
            schema_version=SCHEMA_VERSION,
            b=branch.b,
            m=branch.m,
            origin=branch.origin,
            omega_step=float(omega_step),
            modes=int(modes),
            nodes=int(nodes),
            rows=rows,
            terminated_at=branch.terminated_at,
        )


def save_branch(path: str | Path, bf: BranchFile, timestamp: bool = True) -> None:
    lines = [
        f"# format: {BRANCH_FORMAT}",
        f"# schema_version: {bf.schema_version}",
    ]
    if timestamp:
        lines.append(f"# created: {_timestamp()}")
    lines += [
        f"# b: {_fmt(bf.b)}",
        f"# m: {bf.m}",
        f"# origin: {bf.origin}",
        f"# omega_step: {_fmt(bf.omega_step)}",
        f"# modes: {bf.modes}",
        f"# nodes: {bf.nodes}",
        "omega,distance,iterations,a1_1,a2_1,converged",
    ]
    for row in bf.rows:
        lines.append(
            ",".join(
                (
                    _fmt(row.omega),
                    _fmt(row.distance),
                    str(row.iterations),
                    _fmt(row.a1_1),
                    _fmt(row.a2_1),
                    "true" if row.converged else "false",
                )
            )
        )
    if bf.terminated_at is not None:
        lines.append(f"{_fmt(bf.terminated_at)},,,,,terminated")
    Path(path).write_text("\n".join(lines) + "\n")


def load_branch(path: str | Path) -> BranchFile:
    header: dict[str, str] = {}
    rows: list[BranchRow] = []
    terminated_at = None
    saw_columns = False
    for line in Path(path).read_text().splitlines():
        if not line.strip():
            continue
        if line.startswith("#"):
            key, _, value = line[1:].partition(":")
            header[key.strip()] = value.strip()
            continue
        if not saw_columns:
            expected = "omega,distance,iterations,a1_1,a2_1,converged"
            if line.strip() != expected:
                raise ValueError(f"{path}: unexpected column row {line!r}")
            saw_columns = True
            continue
        fields = line.split(",")
        if len(fields) != 6:
            raise ValueError(f"{path}: malformed row {line!r}")
        if fields[5] == "terminated":
            terminated_at = float(fields[0])
            continue
        rows.append(
            BranchRow(
                omega=float(fields[0]),
                distance=float(fields[1]),
                iterations=int(fields[2]),
                a1_1=float(fields[3]),
                a2_1=float(fields[4]),
                converged=fields[5] == "true",
            )
        )
    if header.get("format") != BRANCH_FORMAT:
        raise ValueError(f"{path}: not a {BRANCH_FORMAT} document")
    version = int(header.get("schema_version", "-1"))
    if version != SCHEMA_VERSION:
        raise ValueError(f"{path}: unsupported schema_version {version}")
    return BranchFile(
        schema_version=version,
        b=float(header["b"]),
        m=int(header["m"]),
        origin=header["origin"],
        omega_step=float(header["omega_step"]),
        modes=int(header["modes"]),
        nodes=int(header["nodes"]),
        rows=rows,
        terminated_at=terminated_at,
    )

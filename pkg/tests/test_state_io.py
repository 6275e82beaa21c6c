"""State and branch files: round trips, determinism, validation."""

import json

import numpy as np
import pytest

from vstates import (
    BranchFile,
    SolverConfig,
    StateFile,
    load_branch,
    load_state,
    save_branch,
    save_state,
    sweep,
)
from vstates.state_io import BranchRow

from conftest import REFERENCE_OMEGA


def test_state_roundtrip_bit_exact(tmp_path, reference_state):
    state = StateFile.from_report(reference_state, REFERENCE_OMEGA, 256)
    path = tmp_path / "state.json"
    save_state(path, state, timestamp=False)
    loaded = load_state(path)
    assert loaded.b == state.b
    assert loaded.m == state.m
    assert loaded.omega == state.omega
    assert loaded.modes == state.modes and loaded.nodes == state.nodes
    assert loaded.iterations == state.iterations
    assert loaded.converged == state.converged
    assert loaded.residual_max == state.residual_max  # 17 digits round-trip
    assert np.array_equal(np.asarray(loaded.a1), np.asarray(state.a1))
    assert np.array_equal(np.asarray(loaded.a2), np.asarray(state.a2))


def test_state_coefficients_rebuild_the_contour(reference_state):
    state = StateFile.from_report(reference_state, REFERENCE_OMEGA, 256)
    coeffs = state.coefficients()
    assert np.array_equal(coeffs.a1, reference_state.coeffs.a1)
    assert np.array_equal(coeffs.a2, reference_state.coeffs.a2)
    assert coeffs.b == 0.63 and coeffs.fold == 4


def test_state_saves_are_deterministic(tmp_path, reference_state):
    state = StateFile.from_report(reference_state, REFERENCE_OMEGA, 256)
    first = tmp_path / "a.json"
    second = tmp_path / "b.json"
    save_state(first, state, timestamp=False)
    save_state(second, state, timestamp=False)
    assert first.read_bytes() == second.read_bytes()

    stamped = tmp_path / "c.json"
    save_state(stamped, state, timestamp=True)
    assert load_state(stamped).omega == state.omega


def test_state_file_validation(tmp_path, reference_state):
    state = StateFile.from_report(reference_state, REFERENCE_OMEGA, 256)
    path = tmp_path / "state.json"
    save_state(path, state, timestamp=False)
    doc = json.loads(path.read_text())

    wrong_format = dict(doc, format="not-a-state")
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(wrong_format))
    with pytest.raises(ValueError):
        load_state(bad)

    wrong_version = dict(doc, schema_version=99)
    bad.write_text(json.dumps(wrong_version))
    with pytest.raises(ValueError):
        load_state(bad)

    chopped = dict(doc, a1=doc["a1"][:-1])
    bad.write_text(json.dumps(chopped))
    with pytest.raises(ValueError):
        load_state(bad)


def test_nonfinite_values_refused(tmp_path, reference_state):
    state = StateFile.from_report(reference_state, REFERENCE_OMEGA, 256)
    broken = StateFile(
        schema_version=state.schema_version,
        b=state.b,
        m=state.m,
        omega=float("nan"),
        modes=state.modes,
        nodes=state.nodes,
        a1=state.a1,
        a2=state.a2,
        residual_max=state.residual_max,
        iterations=state.iterations,
        converged=state.converged,
    )
    with pytest.raises(ValueError):
        save_state(tmp_path / "nan.json", broken, timestamp=False)


def test_branch_roundtrip(tmp_path):
    config = SolverConfig(modes=31, nodes=256)
    branch = sweep(0.63, 4, 0.1350, 0.1360, 5e-4, config)
    bf = BranchFile.from_branch(branch, 5e-4, 31, 256)
    path = tmp_path / "branch.csv"
    save_branch(path, bf, timestamp=False)
    loaded = load_branch(path)
    assert loaded.b == 0.63 and loaded.m == 4
    assert loaded.origin == "omega_minus"
    assert loaded.omega_step == 5e-4
    assert loaded.terminated_at is None
    assert len(loaded.rows) == len(branch.records)
    for row, record in zip(loaded.rows, branch.records):
        assert row.omega == record.omega
        assert row.distance == record.distance
        assert row.iterations == record.report.iterations
        assert row.a1_1 == record.report.coeffs.a1[0]
        assert row.converged


def test_branch_terminated_marker(tmp_path):
    rows = [BranchRow(omega=0.17, distance=0.3, iterations=4, a1_1=0.05, a2_1=-0.04, converged=True)]
    bf = BranchFile(
        schema_version=1, b=0.6, m=4, origin="omega_plus", omega_step=-5e-4,
        modes=31, nodes=512, rows=rows, terminated_at=0.1695,
    )
    path = tmp_path / "terminated.csv"
    save_branch(path, bf, timestamp=False)
    text = path.read_text()
    assert text.count("terminated") == 1
    loaded = load_branch(path)
    assert loaded.terminated_at == 0.1695
    assert len(loaded.rows) == 1


def test_branch_rejects_malformed_rows(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("# format: vstate-branch\nomega,distance\n0.1,0.3\n")
    with pytest.raises(ValueError):
        load_branch(path)

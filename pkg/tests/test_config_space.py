"""Sweeps, implicit-curve tracing, admissible masks, and exporters."""

import json
import math
import os

import numpy as np
import pytest

from rigidfold.config_space import (
    AdmissibleRegion,
    ConfigSample,
    CurveTrace,
    SurfaceGrid,
    admissible_region,
    export,
    load_samples_json,
    make_sample,
    samples_to_csv,
    sweep_model,
    trace_implicit_curve,
)
from rigidfold.core_geometry import g60
from rigidfold.errors import OutOfRangeError
from rigidfold.fold_models import FoldMode, FoldModel, two_pair_curve_residual

PI = math.pi
G = g60()


def test_make_sample_flat():
    s = make_sample(G, np.zeros(6))
    assert s.residual < 1e-14
    assert s.valid
    assert s.branch == 0


def test_make_sample_open_chain_is_invalid():
    s = make_sample(G, [1.0, 0.0, 0.0, 0.0, 0.0, 0.0])
    assert not s.valid
    assert s.residual > 0.1


@pytest.mark.parametrize(
    "model,mode,n,kind",
    [
        (FoldModel.DEGREE4, 1, 15, CurveTrace),
        (FoldModel.DEGREE4, 2, 15, CurveTrace),
        (FoldModel.TRIFOLD, 1, 25, CurveTrace),
        (FoldModel.BOWTIE, 2, 15, CurveTrace),
        (FoldModel.IGLOO1DOF, 1, 15, CurveTrace),
        (FoldModel.OPPOSITES, 1, 6, SurfaceGrid),
        (FoldModel.IGLOO2DOF, 1, 6, SurfaceGrid),
        (FoldModel.TWOPAIR, 1, 30, CurveTrace),
        (FoldModel.FULLY_GENERAL, 1, 20, CurveTrace),
        (FoldModel.ALMOST_GENERAL, 1, 6, SurfaceGrid),
    ],
)
def test_sweeps_close(model, mode, n, kind):
    result = sweep_model(FoldMode(model, mode, PI / 3.0, PI / 3.0), n)
    assert isinstance(result, kind)
    assert result.samples
    assert max(s.residual for s in result.samples) < 1e-8


def test_sweep_sample_counts():
    trace = sweep_model(FoldMode(FoldModel.TRIFOLD, 1, PI / 3.0, PI / 3.0), 40)
    assert len(trace.samples) == 40
    grid = sweep_model(FoldMode(FoldModel.OPPOSITES, 1, 0.9, 0.8), 5)
    assert len(grid.samples) == 25


def test_two_pair_sweep_reports_closure():
    trace = sweep_model(FoldMode(FoldModel.TWOPAIR), 20)
    assert trace.closed


def test_sweep_needs_two_points():
    with pytest.raises(OutOfRangeError):
        sweep_model(FoldMode(FoldModel.TRIFOLD), 1)


# --- tracing -------------------------------------------------------------------

def test_trace_unit_circle():
    trace = trace_implicit_curve(lambda x, y: x * x + y * y - 1.0, (1.0, 0.0))
    assert trace.closed
    assert 300 < len(trace.samples) < 330  # circumference / step
    for s in trace.samples:
        assert abs(math.hypot(*s.rho) - 1.0) < 1e-6


def test_trace_exhausts_budget_on_open_curves():
    trace = trace_implicit_curve(lambda x, y: y, (0.0, 0.0), max_steps=50)
    assert not trace.closed
    assert trace.note == "step budget exhausted"
    assert len(trace.samples) == 51


def test_trace_rejects_off_curve_seed():
    with pytest.raises(OutOfRangeError):
        trace_implicit_curve(lambda x, y: x * x + y * y - 1.0, (0.5, 0.0))


def test_trace_two_pair_figure_eight():
    """One walk from the origin covers both loops, crossing the node twice."""
    trace = trace_implicit_curve(two_pair_curve_residual, (0.0, 0.0))
    assert trace.closed
    assert len(trace.samples) > 400
    near_origin = [i for i, s in enumerate(trace.samples) if np.linalg.norm(s.rho) < 0.03]
    interior = [i for i in near_origin if 20 < i < len(trace.samples) - 20]
    assert interior, "trace never re-crossed the node"
    for s in trace.samples:
        assert abs(two_pair_curve_residual(*s.rho)) < 1e-8


# --- admissible region -----------------------------------------------------------

def test_admissible_region_shape_and_origin():
    region = admissible_region(0.4, grid_n=21)
    assert isinstance(region, AdmissibleRegion)
    assert region.mask.shape == (21, 21)
    assert region.mask.dtype == bool
    assert region.mask.any()
    assert region.mask[10, 10]  # (rho4, rho5) = (0, 0) stays reachable


def test_admissible_region_point_reflection():
    plus = admissible_region(0.4, grid_n=15)
    minus = admissible_region(-0.4, grid_n=15)
    assert np.array_equal(minus.mask, plus.mask[::-1, ::-1])


def test_admissible_region_needs_grid():
    with pytest.raises(OutOfRangeError):
        admissible_region(0.0, grid_n=1)


# --- export ----------------------------------------------------------------------

def _samples():
    sweep = sweep_model(FoldMode(FoldModel.TRIFOLD, 1, PI / 3.0, PI / 3.0), 8)
    return sweep.samples


def test_csv_export(tmp_path):
    path = tmp_path / "sweep.csv"
    report = export(_samples(), "csv", str(path))
    assert report.written == 8 and report.skipped == 0
    raw = path.read_bytes()
    assert b"\r" not in raw
    lines = raw.decode().splitlines()
    assert lines[0] == "rho1,rho2,rho3,rho4,rho5,rho6,residual,valid,branch"
    assert len(lines) == 9
    cells = lines[1].split(",")
    assert cells[-2] in ("true", "false")
    assert len(cells) == 9


def test_json_export_round_trips_bit_exactly(tmp_path):
    path = tmp_path / "sweep.json"
    samples = _samples()
    export(samples, "json", str(path))
    loaded = load_samples_json(str(path))
    assert len(loaded) == len(samples)
    for a, b in zip(samples, loaded):
        assert np.array_equal(a.rho, b.rho)
        assert a.residual == b.residual
        assert a.valid == b.valid
        assert a.branch == b.branch


def test_obj_export_writes_fans(tmp_path):
    path = tmp_path / "sweep.obj"
    samples = _samples()
    report = export(samples, "obj", str(path), pattern=None)
    text = path.read_text()
    objects = [ln for ln in text.splitlines() if ln.startswith("o ")]
    verts = [ln for ln in text.splitlines() if ln.startswith("v ")]
    faces = [ln for ln in text.splitlines() if ln.startswith("f ")]
    assert len(objects) == report.written
    assert len(verts) == report.written * 7  # apex + six tips
    assert len(faces) == report.written * 6


def test_obj_export_skips_invalid_samples(tmp_path):
    samples = _samples() + [ConfigSample(np.ones(6), residual=1.0, valid=False)]
    report = export(samples, "obj", str(tmp_path / "mixed.obj"))
    assert report.skipped == 1
    assert report.written == 8


def test_export_rejects_unknown_format_and_empty_input(tmp_path):
    with pytest.raises(OutOfRangeError):
        export(_samples(), "stl", str(tmp_path / "x.stl"))
    with pytest.raises(OutOfRangeError):
        export([], "csv", str(tmp_path / "x.csv"))


def test_csv_uses_twelve_significant_digits():
    s = [ConfigSample(np.array([1.0 / 3.0, 0.0]), residual=1e-15, valid=True)]
    text = samples_to_csv(s)
    assert "0.333333333333" in text


def test_thread_env_var_does_not_change_results(monkeypatch):
    mode = FoldMode(FoldModel.IGLOO2DOF, 1, 1.0, 0.8)
    monkeypatch.delenv("RIGIDFOLD_THREADS", raising=False)
    serial = sweep_model(mode, 6)
    monkeypatch.setenv("RIGIDFOLD_THREADS", "4")
    threaded = sweep_model(mode, 6)
    assert len(serial.samples) == len(threaded.samples)
    for a, b in zip(serial.samples, threaded.samples):
        assert np.array_equal(a.rho, b.rho)
        assert a.residual == b.residual

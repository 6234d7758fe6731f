"""Configuration-space sampling, implicit-curve tracing, masks and export.

Samples are angle vectors tagged with their loop-closure defect and a
validity verdict (closes and does not self-intersect).  One-parameter
families are swept over their reachable drive interval, two-parameter
families over a grid; the two-pair relation curve is traced with a
predictor-corrector walker that can march straight through the node where
its two loops cross.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .core_geometry import (
    CreasePattern,
    closure_residual,
    folded_geometry,
    g60,
    self_intersects,
)
from .errors import (
    BranchAmbiguityError,
    DegenerateConfigurationError,
    NoSolutionError,
    NotClosedError,
    OutOfRangeError,
)
from .fold_models import (
    FoldMode,
    FoldModel,
    almost_general,
    bowtie,
    bowtie_pattern,
    bowtie_vector,
    degree4_fold,
    degree4_pattern,
    general_fold,
    general_rho2,
    igloo_1dof,
    igloo_pattern,
    igloo_rho1,
    igloo_rho4,
    igloo_vector,
    opposites_pattern,
    opposites_solve,
    opposites_vector,
    trifold,
    trifold_drive_limit,
    trifold_pattern,
    trifold_vector,
    two_pair_complete,
    two_pair_curve_residual,
    two_pair_pattern,
    two_pair_vector,
)

DEFAULT_TOL = 1e-8
_TRACE_STEP = 0.02
_NODE_GRAD_TOL = 1e-6

PI = math.pi


def _thread_count() -> int:
    raw = os.environ.get("RIGIDFOLD_THREADS", "").strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _pmap(fn, items):
    """Order-preserving map, fanned out over threads when allowed to."""
    items = list(items)
    n = _thread_count()
    if n <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


@dataclass
class ConfigSample:
    """One sampled folded state: angles, closure defect, validity, branch tag."""

    rho: np.ndarray
    residual: float
    valid: bool
    branch: int | str = 0


@dataclass
class CurveTrace:
    samples: list[ConfigSample] = field(default_factory=list)
    closed: bool = False
    note: str = ""


@dataclass
class SurfaceGrid:
    drive1: np.ndarray
    drive2: np.ndarray
    samples: list[ConfigSample] = field(default_factory=list)


@dataclass
class AdmissibleRegion:
    rho6: float
    rho4_axis: np.ndarray
    rho5_axis: np.ndarray
    mask: np.ndarray  # boolean, mask[i, j] at (rho4_axis[i], rho5_axis[j])


@dataclass(frozen=True)
class ExportReport:
    written: int
    skipped: int


def make_sample(pattern: CreasePattern, rho, branch=0, tol: float = DEFAULT_TOL) -> ConfigSample:
    """Evaluate closure and the self-intersection test for one angle vector."""
    rho = np.asarray(rho, dtype=float)
    residual = closure_residual(pattern, rho)
    valid = False
    if residual < tol:
        state = folded_geometry(pattern, rho, tol=tol)
        valid = not self_intersects(pattern, state)
    return ConfigSample(rho=rho, residual=residual, valid=valid, branch=branch)


# ---------------------------------------------------------------------------
# sweeping

def _sweep_1dof(pattern, drives, assemble, tol, branch) -> CurveTrace:
    samples = _pmap(lambda d: make_sample(pattern, assemble(d), branch, tol), drives)
    return CurveTrace(samples=samples, closed=False, note="sweep")


def sweep_model(mode: FoldMode, n: int, tol: float = DEFAULT_TOL) -> CurveTrace | SurfaceGrid:
    """Sample a family: n points over the drive interval, or an n-by-n grid.

    One-parameter families return a CurveTrace ordered by drive value;
    two-parameter families return a SurfaceGrid.  Grid points outside a
    family's admissible set are skipped rather than reported as invalid
    samples, so a returned sample always corresponds to a solve.
    """
    if n < 2:
        raise OutOfRangeError(f"need at least 2 samples, got {n}")
    model, m, a, b = mode.model, mode.mode, mode.alpha, mode.beta

    if model is FoldModel.DEGREE4:
        pat = degree4_pattern(a, b)
        drives = np.linspace(-PI, PI, n)
        return _sweep_1dof(pat, drives, lambda d: degree4_fold(a, b, m, d), tol, m)

    if model is FoldModel.TRIFOLD:
        pat = trifold_pattern(b)
        lim = trifold_drive_limit(b)
        drives = np.linspace(-lim, lim, n)
        return _sweep_1dof(pat, drives, lambda d: trifold_vector(*trifold(b, m, d)), tol, m)

    if model is FoldModel.BOWTIE:
        pat = bowtie_pattern(b, m)
        drives = np.linspace(-PI, PI, n)
        return _sweep_1dof(pat, drives, lambda d: bowtie_vector(d, bowtie(b, m, d)), tol, m)

    if model is FoldModel.IGLOO1DOF:
        pat = igloo_pattern(a, b)
        drives = np.linspace(-PI, PI, n)

        def asm(d):
            r1, r2, r3 = igloo_1dof(a, b, m, d)
            return igloo_vector(r1, r2, r3, d)

        return _sweep_1dof(pat, drives, asm, tol, m)

    if model is FoldModel.OPPOSITES:
        pat = opposites_pattern(a, b)
        d1 = np.linspace(-PI, PI, n)
        d2 = np.linspace(-PI, PI, n)

        def solve_point(pair):
            r1, r2 = pair
            sol = opposites_solve(a, b, rho1=r1, rho2=r2)
            r3 = 0.0 if sol.free else sol.angles[0]
            return make_sample(pat, opposites_vector(r1, r2, r3), 0, tol)

        samples = _pmap(solve_point, [(r1, r2) for r1 in d1 for r2 in d2])
        return SurfaceGrid(drive1=d1, drive2=d2, samples=samples)

    if model is FoldModel.IGLOO2DOF:
        pat = igloo_pattern(a, b)
        d1 = np.linspace(-PI, PI, n)
        d2 = np.linspace(-PI, PI, n)

        def solve_point(pair):
            r2, r3 = pair
            try:
                r1 = igloo_rho1(a, b, r2, r3)
                r4 = igloo_rho4(a, b, r2, r3)
            except BranchAmbiguityError:
                return None
            return make_sample(pat, igloo_vector(r1, r2, r3, r4), 0, tol)

        samples = [s for s in _pmap(solve_point, [(r2, r3) for r2 in d1 for r3 in d2]) if s]
        return SurfaceGrid(drive1=d1, drive2=d2, samples=samples)

    if model is FoldModel.TWOPAIR:
        trace = trace_implicit_curve(two_pair_curve_residual, (0.0, 0.0), step=_TRACE_STEP, tol=tol)
        idx = np.linspace(0, len(trace.samples) - 1, n).round().astype(int)
        pat = two_pair_pattern()
        out = []
        for i in idx:
            r1, r2 = trace.samples[i].rho[:2]
            r3, r4 = two_pair_complete(r1, r2, tol=max(tol, DEFAULT_TOL))[0]
            out.append(make_sample(pat, two_pair_vector(r1, r2, r3, r4), 0, tol))
        return CurveTrace(samples=out, closed=trace.closed, note="resampled relation curve")

    if model is FoldModel.FULLY_GENERAL:
        pat = g60()
        rng = np.random.default_rng(0)
        out = []
        attempts = 0
        while len(out) < n and attempts < 40 * n:
            attempts += 1
            r4, r5, r6 = rng.uniform(-PI, PI, 3)
            try:
                sols = general_fold(r4, r5, r6, tol=max(tol, DEFAULT_TOL))
            except NoSolutionError:
                continue
            for j, v in enumerate(sols):
                out.append(make_sample(pat, v, j + 1, tol))
        return CurveTrace(samples=out[:n], closed=False, note="seeded random drive triples")

    if model is FoldModel.ALMOST_GENERAL:
        pat = g60()
        d1 = np.linspace(-PI, PI, n)
        d2 = np.linspace(-PI, PI, n)

        def solve_point(pair):
            r4, r5 = pair
            try:
                sols = almost_general(r4, r5, tol=max(tol, DEFAULT_TOL))
            except NoSolutionError:
                return []
            return [make_sample(pat, v, j + 1, tol) for j, v in enumerate(sols)]

        nested = _pmap(solve_point, [(r4, r5) for r4 in d1 for r5 in d2])
        return SurfaceGrid(drive1=d1, drive2=d2, samples=[s for batch in nested for s in batch])

    raise OutOfRangeError(f"unknown model {model}")


# ---------------------------------------------------------------------------
# implicit-curve tracing

def _grad(fn, x: float, y: float, h: float = 1e-6) -> np.ndarray:
    return np.array([
        (fn(x + h, y) - fn(x - h, y)) / (2.0 * h),
        (fn(x, y + h) - fn(x, y - h)) / (2.0 * h),
    ])


def _node_directions(fn, p: np.ndarray, r: float) -> list[np.ndarray]:
    """Zero-crossing directions of fn on a small circle around a singular point."""
    thetas = np.linspace(-PI, PI, 721)
    vals = np.array([fn(p[0] + r * math.cos(t), p[1] + r * math.sin(t)) for t in thetas])
    dirs = []
    for i in range(len(thetas) - 1):
        a, b = vals[i], vals[i + 1]
        if a == 0.0 or a * b < 0.0:
            t = thetas[i] if a == 0.0 else thetas[i] + (thetas[i + 1] - thetas[i]) * abs(a) / (abs(a) + abs(b))
            dirs.append(np.array([math.cos(t), math.sin(t)]))
    return dirs


def _correct(fn, q: np.ndarray, tol: float) -> tuple[np.ndarray, bool]:
    """Newton along the gradient (orthogonal to the tangent); near-singular
    gradients leave the point as predicted so the walker crosses nodes."""
    for _ in range(25):
        f = fn(q[0], q[1])
        if abs(f) <= 1e-12:
            return q, True
        grd = _grad(fn, q[0], q[1])
        g2 = float(grd @ grd)
        if g2 < _NODE_GRAD_TOL**2:
            return q, True
        q = q - f * grd / g2
    return q, abs(fn(q[0], q[1])) <= tol


def trace_implicit_curve(residual_fn, seed, step: float = _TRACE_STEP, tol: float = DEFAULT_TOL,
                         max_steps: int = 20000) -> CurveTrace:
    """Predictor-corrector walk along one connected zero-set component.

    The tangent is the 90-degree rotation of the central-difference
    gradient, oriented to keep moving forward; where the gradient is
    near-singular (a node) the walker keeps its previous direction and
    marches straight through.  The trace closes when it returns to the
    seed with a matching direction, so a figure-eight is traversed fully,
    crossing its node twice, before closing.
    """
    p0 = np.array([float(seed[0]), float(seed[1])])
    if abs(residual_fn(p0[0], p0[1])) > 1e-7:
        raise OutOfRangeError(f"seed {tuple(p0)} is not on the curve")

    g0 = _grad(residual_fn, p0[0], p0[1])
    if float(np.hypot(*g0)) < _NODE_GRAD_TOL:
        dirs = _node_directions(residual_fn, p0, step)
        if not dirs:
            return CurveTrace(samples=[ConfigSample(p0, abs(residual_fn(*p0)), True, 0)],
                              closed=True, note="isolated zero")
        tangent = dirs[0]
    else:
        tangent = np.array([g0[1], -g0[0]])
        tangent = tangent / np.linalg.norm(tangent)
    start_dir = tangent.copy()

    samples = [ConfigSample(p0.copy(), abs(residual_fn(*p0)), True, 0)]
    p = p0.copy()
    closed = False
    note = ""
    for i in range(max_steps):
        q = p + step * tangent
        q, ok = _correct(residual_fn, q, tol)
        if not ok:
            note = f"corrector diverged at step {i}"
            break
        move = q - p
        if float(np.linalg.norm(move)) < 1e-12:
            note = f"stalled at step {i}"
            break
        g = _grad(residual_fn, q[0], q[1])
        gn = float(np.hypot(*g))
        if gn < _NODE_GRAD_TOL:
            new_tan = move / np.linalg.norm(move)  # straight through the node
        else:
            new_tan = np.array([g[1], -g[0]]) / gn
            if float(new_tan @ move) < 0.0:
                new_tan = -new_tan
        samples.append(ConfigSample(q.copy(), abs(residual_fn(*q)), abs(residual_fn(*q)) < tol, 0))
        p, tangent = q, new_tan
        if i > 4 and float(np.linalg.norm(p - p0)) < 0.75 * step and float(tangent @ start_dir) > 0.7:
            closed = True
            break
    else:
        note = "step budget exhausted"
    return CurveTrace(samples=samples, closed=closed, note=note)


# ---------------------------------------------------------------------------
# admissible drive region of the fully general family

def admissible_region(rho6: float, grid_n: int = 201, tol: float = DEFAULT_TOL) -> AdmissibleRegion:
    """Boolean (rho4, rho5) mask: a branch exists and at least one closes."""
    if grid_n < 2:
        raise OutOfRangeError(f"grid_n must be >= 2, got {grid_n}")
    axis = np.linspace(-PI, PI, grid_n)
    r4g, r5g = np.meshgrid(axis, axis, indexing="ij")
    s4, c4 = np.sin(r4g), np.cos(r4g)
    s5, c5 = np.sin(r5g), np.cos(r5g)
    s6, c6 = math.sin(rho6), math.cos(rho6)
    rhs = 0.25 * (
        1.0 + c6 - 2.0 * s4 * s5 - 2.0 * c6 * s4 * s5 - 2.0 * s5 * s6
        + c5 * (1.0 + c6 - 4.0 * s4 * s6)
        + c4 * (1.0 - 3.0 * c6 + c5 * (1.0 + c6) - 2.0 * s5 * s6)
    )
    candidate = np.abs(rhs) <= 1.0

    idx = np.argwhere(candidate)

    def closes(ij):
        i, j = ij
        try:
            general_fold(float(axis[i]), float(axis[j]), rho6, tol=tol)
        except NoSolutionError:
            return False
        return True

    flags = _pmap(closes, list(map(tuple, idx)))
    mask = np.zeros_like(candidate)
    for (i, j), f in zip(idx, flags):
        mask[i, j] = f
    return AdmissibleRegion(rho6=rho6, rho4_axis=axis, rho5_axis=axis, mask=mask)


# ---------------------------------------------------------------------------
# export

def _flatten_samples(samples) -> list[ConfigSample]:
    if isinstance(samples, (CurveTrace, SurfaceGrid)):
        return list(samples.samples)
    if isinstance(samples, ConfigSample):
        return [samples]
    return list(samples)


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def export(samples, format: str, path: str, pattern: CreasePattern | None = None,
           tol: float = DEFAULT_TOL) -> ExportReport:
    """Write samples to csv, json or obj.

    csv: one row per sample, angle columns then residual, valid, branch,
    12 significant digits, LF line endings.  json: an array of objects
    with the same keys, floats at full round-trip precision.  obj: one
    mesh object per valid sample (vertex at the origin, unit crease tips,
    triangular sector faces); invalid samples are skipped and counted.
    """
    flat = _flatten_samples(samples)
    if not flat:
        raise OutOfRangeError("nothing to export")
    if format == "csv":
        text = samples_to_csv(flat)
        skipped = 0
    elif format == "json":
        text = samples_to_json(flat)
        skipped = 0
    elif format == "obj":
        text, skipped = samples_to_obj(flat, pattern, tol)
    else:
        raise OutOfRangeError(f"unknown format {format!r}")
    with open(path, "w", newline="\n") as fh:
        fh.write(text)
    return ExportReport(written=len(flat) - skipped, skipped=skipped)


def samples_to_csv(flat: list[ConfigSample]) -> str:
    width = max(len(s.rho) for s in flat)
    header = ",".join([f"rho{i + 1}" for i in range(width)] + ["residual", "valid", "branch"])
    lines = [header]
    for s in flat:
        angles = [_fmt(float(x)) for x in s.rho] + [""] * (width - len(s.rho))
        lines.append(",".join(angles + [_fmt(s.residual), "true" if s.valid else "false", str(s.branch)]))
    return "\n".join(lines) + "\n"


def samples_to_json(flat: list[ConfigSample]) -> str:
    objs = []
    for s in flat:
        rec: dict = {f"rho{i + 1}": float(x) for i, x in enumerate(s.rho)}
        rec["residual"] = float(s.residual)
        rec["valid"] = bool(s.valid)
        rec["branch"] = s.branch if isinstance(s.branch, str) else int(s.branch)
        objs.append(rec)
    return json.dumps(objs, indent=1) + "\n"


def load_samples_json(path: str) -> list[ConfigSample]:
    """Inverse of the json export; residuals round-trip bit-exactly."""
    with open(path) as fh:
        data = json.load(fh)
    out = []
    for rec in data:
        keys = sorted((k for k in rec if k.startswith("rho")), key=lambda k: int(k[3:]))
        rho = np.array([rec[k] for k in keys])
        out.append(ConfigSample(rho=rho, residual=rec["residual"], valid=rec["valid"],
                                branch=rec["branch"]))
    return out


def samples_to_obj(flat: list[ConfigSample], pattern: CreasePattern | None,
                   tol: float = DEFAULT_TOL) -> tuple[str, int]:
    lines = []
    skipped = 0
    offset = 0
    for m, s in enumerate(flat):
        pat = pattern
        if pat is None:
            if len(s.rho) != 6:
                raise OutOfRangeError("obj export needs an explicit pattern for non-6-crease samples")
            pat = g60()
        if not s.valid or s.residual >= tol:
            skipped += 1
            continue
        try:
            state = folded_geometry(pat, s.rho, tol=max(tol, s.residual * 2 + 1e-300))
        except NotClosedError:  # sample came from a different pattern
            skipped += 1
            continue
        lines.append(f"o sample_{m:04d}")
        lines.append("v 0 0 0")
        for tip in state.crease_images:
            lines.append("v " + " ".join(_fmt(float(c)) for c in tip))
        k = pat.n
        for i in range(k):
            a = offset + 2 + i
            b = offset + 2 + (i + 1) % k
            lines.append(f"f {offset + 1} {a} {b}")
        offset += k + 1
    return "\n".join(lines) + "\n", skipped

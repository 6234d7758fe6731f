"""First- and second-order foldability analysis at the unfolded state.

The closure map of a flat vertex, Taylor-expanded along straight velocity
paths rho(t) = t*v with zero acceleration, yields a linear 3x3 matrix
condition and a quadratic one.  Restricting the velocities to be constant
on the classes of a crease coloring turns both into small systems in the
class unknowns; real solution rays of that system are the candidate
folding modes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core_geometry import CreasePattern
from .errors import OutOfRangeError

_NULL_TOL = 1e-12
_RAY_TOL = 1e-9
_DEDUPE_TOL = 1e-6
_CONE_SAMPLES = 64


@dataclass(frozen=True)
class VelocityVector:
    """Folding-angle velocities, one per crease, first nonzero entry +1."""

    rho_dot: tuple[float, ...]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.rho_dot, dtype=float)


@dataclass(frozen=True)
class ModeSolution:
    """Real velocity rays compatible with a coloring, or the lack thereof."""

    color_pattern: tuple[int, ...]
    velocities: tuple[VelocityVector, ...]
    foldable: bool


def _skew_xy(c: np.ndarray) -> np.ndarray:
    # in-plane crease: only the planar part of the cross-product matrix survives
    lx, ly = float(c[0]), float(c[1])
    return np.array([[0.0, 0.0, ly], [0.0, 0.0, -lx], [-ly, lx, 0.0]])


def first_order_matrix(pattern: CreasePattern, v) -> np.ndarray:
    """Linear term of the closure map along velocities ``v`` at the flat state."""
    v = np.asarray(v, dtype=float)
    if v.shape != (pattern.n,):
        raise OutOfRangeError(f"expected {pattern.n} velocities, got shape {v.shape}")
    out = np.zeros((3, 3))
    for vi, c in zip(v, pattern.creases):
        out += vi * _skew_xy(c)
    return out


def second_order_matrix(pattern: CreasePattern, v) -> np.ndarray:
    """Quadratic term of the closure map along ``v``, zero accelerations assumed."""
    v = np.asarray(v, dtype=float)
    if v.shape != (pattern.n,):
        raise OutOfRangeError(f"expected {pattern.n} velocities, got shape {v.shape}")
    cs = pattern.creases
    out = np.zeros((3, 3))
    for i in range(pattern.n):
        for j in range(pattern.n):
            a, b = (i, j) if i <= j else (j, i)
            lix, liy = cs[i][0], cs[i][1]
            ljx, ljy = cs[j][0], cs[j][1]
            lax, lay = cs[a][0], cs[a][1]
            lbx, lby = cs[b][0], cs[b][1]
            m = np.array([
                [-liy * ljy, lay * lbx, 0.0],
                [lax * lby, -lix * ljx, 0.0],
                [0.0, 0.0, -lix * ljx - liy * ljy],
            ])
            out += v[i] * v[j] * m
    return out


def _class_list(color_pattern) -> list[int]:
    """Normalize a coloring to first-occurrence integer labels 1..k."""
    if hasattr(color_pattern, "classes"):
        raw = list(color_pattern.classes)
    else:
        raw = list(color_pattern)
    relabel: dict = {}
    out = []
    for label in raw:
        if label not in relabel:
            relabel[label] = len(relabel) + 1
        out.append(relabel[label])
    return out


def symmetry_reduced_system(pattern: CreasePattern, color_pattern):
    """Reduce both order conditions by a coloring.

    Returns (L, Q, E): L x = 0 is the first-order condition on the k class
    velocities x, and x^T Q x = 0 is the one scalar component of the
    quadratic condition that does not vanish identically once L x = 0
    holds.  E is the n-by-k class indicator, so the full velocity vector
    is E x.
    """
    cls = _class_list(color_pattern)
    n = pattern.n
    if len(cls) != n:
        raise OutOfRangeError(f"coloring length {len(cls)} != {n} creases")
    k = max(cls)
    th = pattern.crease_angles
    E = np.zeros((n, k))
    for i, c in enumerate(cls):
        E[i, c - 1] = 1.0
    L = np.vstack([np.cos(th), np.sin(th)]) @ E
    S = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            S[i, j] = np.sin(th[j] - th[i])
    M = E.T @ S @ E
    Q = 0.5 * (M + M.T)
    return L, Q, E


def _normalize_ray(v: np.ndarray) -> np.ndarray | None:
    for x in v:
        if abs(x) > _NULL_TOL:
            return v / x
    return None


def symmetric_mode_solve(pattern: CreasePattern, color_pattern) -> ModeSolution:
    """All real velocity rays whose class structure matches the coloring.

    The first-order condition is linear, so its solution space is the null
    space of L.  Within that space the quadratic condition defines a cone;
    rays are harvested from the eigen-decomposition of the restricted
    quadratic form (null eigenvectors, balanced mixes of positive/negative
    eigenvectors, and a fixed batch of seeded random cone points), then
    deduplicated and sorted.  No real ray means not foldable.
    """
    cls = _class_list(color_pattern)
    L, Q, E = symmetry_reduced_system(pattern, cls)
    k = Q.shape[0]

    _, sv, vt = np.linalg.svd(L)
    rank = int(np.sum(sv > _NULL_TOL))
    N = vt[rank:].T  # k x m null-space basis
    m = N.shape[1]

    cone_points: list[np.ndarray] = []
    if m > 0:
        Qn = N.T @ Q @ N
        lam, W = np.linalg.eigh(Qn)
        zero_idx = [i for i in range(m) if abs(lam[i]) <= _NULL_TOL]
        pos_idx = [i for i in range(m) if lam[i] > _NULL_TOL]
        neg_idx = [i for i in range(m) if lam[i] < -_NULL_TOL]
        for i in zero_idx:
            cone_points.append(W[:, i])
        for i in pos_idx:
            for j in neg_idx:
                a = np.sqrt(-lam[j])
                b = np.sqrt(lam[i])
                cone_points.append(a * W[:, i] + b * W[:, j])
                cone_points.append(a * W[:, i] - b * W[:, j])
        if pos_idx and neg_idx:
            rng = np.random.default_rng(0)
            P = W[:, pos_idx]
            Ng = W[:, neg_idx]
            for _ in range(_CONE_SAMPLES):
                x = rng.standard_normal(m)
                xp = P @ (P.T @ x)
                xn = Ng @ (Ng.T @ x)
                qp = float(xp @ Qn @ xp)
                qn = -float(xn @ Qn @ xn)
                if qp > _NULL_TOL and qn > _NULL_TOL:
                    cone_points.append(xp / np.sqrt(qp) + xn / np.sqrt(qn))

    rays: list[np.ndarray] = []
    seen: set = set()
    for w in cone_points:
        x = N @ w
        if np.max(np.abs(L @ x)) > _RAY_TOL or abs(x @ Q @ x) > _RAY_TOL:
            continue
        v6 = _normalize_ray(E @ x)
        if v6 is None:
            continue
        key = tuple(np.round(v6 / _DEDUPE_TOL).astype(np.int64))
        if key in seen:
            continue
        seen.add(key)
        rays.append(v6)
    rays.sort(key=lambda v: tuple(v))

    return ModeSolution(
        color_pattern=tuple(cls),
        velocities=tuple(VelocityVector(tuple(float(x) for x in v)) for v in rays),
        foldable=bool(rays),
    )


def ray_class_values(color_pattern, velocity: VelocityVector | np.ndarray) -> np.ndarray:
    """Per-class velocity values of a ray, indexed by class label order."""
    cls = _class_list(color_pattern)
    v = velocity.as_array() if isinstance(velocity, VelocityVector) else np.asarray(velocity, float)
    k = max(cls)
    vals = np.zeros(k)
    seen = [False] * k
    for c, x in zip(cls, v):
        if not seen[c - 1]:
            vals[c - 1] = x
            seen[c - 1] = True
    return vals

"""Bracelet colorings of six creases and their foldability classification.

A coloring of the six creases encodes a folding-angle symmetry: creases of
equal color fold with equal angle.  Colorings are identified up to the
dihedral symmetries of the hexagon and up to renaming of colors, i.e. as
k-colored bracelet patterns.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core_geometry import g60
from .errors import OutOfRangeError
from .second_order_rigidity import (
    ray_class_values,
    symmetric_mode_solve,
    symmetry_reduced_system,
)

_DISTINCT_TOL = 1e-9
_RANK_TOL = 1e-9

#: conventional representative coloring -> family name (keys need not be canonical)
NAMED_REPRESENTATIVES = {
    (1, 2, 1, 2, 1, 2): "trifold",
    (1, 2, 2, 1, 2, 2): "bow tie",
    (1, 2, 3, 1, 2, 3): "opposites",
    (1, 2, 3, 4, 3, 2): "igloo",
    (1, 1, 2, 2, 3, 4): "two pair",
    (1, 1, 2, 3, 4, 5): "almost general",
    (1, 2, 3, 4, 5, 6): "fully general",
}


@dataclass(frozen=True, order=True)
class ColorPattern:
    """Canonical 6-bead coloring: labels appear in first-occurrence order 1..k."""

    classes: tuple[int, ...]

    def __post_init__(self):
        if len(self.classes) != 6:
            raise OutOfRangeError(f"expected 6 classes, got {len(self.classes)}")
        nxt = 1
        for c in self.classes:
            if c == nxt:
                nxt += 1
            elif not 1 <= c < nxt:
                raise OutOfRangeError(f"labels not in first-occurrence order: {self.classes}")

    @property
    def k(self) -> int:
        return max(self.classes)

    def __str__(self) -> str:
        return "".join(str(c) for c in self.classes)


@dataclass(frozen=True)
class Table1Row:
    k: int
    pattern_count: int
    foldable_patterns: tuple[tuple[ColorPattern, str | None, int], ...]


def _first_occurrence(seq) -> tuple[int, ...]:
    relabel: dict = {}
    out = []
    for x in seq:
        if x not in relabel:
            relabel[x] = len(relabel) + 1
        out.append(relabel[x])
    return tuple(out)


# the 12 dihedral position maps of a hexagon
_DIHEDRAL = [lambda i, r=r: (i + r) % 6 for r in range(6)] + [
    lambda i, r=r: (r - i) % 6 for r in range(6)
]


def canonical_form(coloring) -> ColorPattern:
    """Lexicographically smallest first-occurrence relabeling over all 12 images."""
    seq = list(coloring)
    if len(seq) != 6:
        raise OutOfRangeError(f"expected 6 labels, got {len(seq)}")
    best = min(_first_occurrence(seq[g(i)] for i in range(6)) for g in _DIHEDRAL)
    return ColorPattern(best)


#: canonical pattern classes -> family name
NAMED_PATTERNS = {
    canonical_form(rep).classes: name for rep, name in NAMED_REPRESENTATIVES.items()
}


def _restricted_growth(n: int):
    """All first-occurrence labelings of n beads (one per set partition)."""
    def rec(prefix, used):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for c in range(1, used + 2):
            yield from rec(prefix + [c], max(used, c))
    yield from rec([], 0)


@lru_cache(maxsize=1)
def _all_patterns() -> tuple[ColorPattern, ...]:
    return tuple(sorted({canonical_form(s) for s in _restricted_growth(6)}))


def enumerate_patterns(k: int) -> list[ColorPattern]:
    """All canonical bracelet patterns on six beads using exactly k colors."""
    if not 1 <= k <= 6:
        raise OutOfRangeError(f"k must be in 1..6, got {k}")
    return [p for p in _all_patterns() if p.k == k]


def _distinct_class_rays(pattern, pat: ColorPattern):
    """Rays whose class velocities are pairwise distinct (the coloring is exact)."""
    sol = symmetric_mode_solve(pattern, pat)
    out = []
    for vel in sol.velocities:
        vals = ray_class_values(pat, vel)
        k = len(vals)
        if all(abs(vals[p] - vals[q]) > _DISTINCT_TOL for p in range(k) for q in range(p + 1, k)):
            out.append(vals)
    return out


def _ray_dof(L: np.ndarray, Q: np.ndarray, vals: np.ndarray) -> int:
    J = np.vstack([L, 2.0 * (Q @ vals)[None, :]])
    return int(L.shape[1] - np.linalg.matrix_rank(J, tol=_RANK_TOL))


def classify_g60() -> list[Table1Row]:
    """Classify every bracelet pattern on the flat 60-degree vertex.

    A pattern counts as foldable only if some real velocity ray keeps all
    of its classes at pairwise distinct values; rays that merge classes
    belong to a coarser pattern.  DOF is the generic solution dimension at
    a found ray: class count minus the rank of the combined linear
    constraint and the gradient of the quadratic one.
    """
    G = g60()
    rows = []
    for k in range(1, 7):
        pats = enumerate_patterns(k)
        foldable = []
        for pat in pats:
            rays = _distinct_class_rays(G, pat)
            if not rays:
                continue
            L, Q, _ = symmetry_reduced_system(G, pat)
            dof = min(_ray_dof(L, Q, vals) for vals in rays)
            foldable.append((pat, NAMED_PATTERNS.get(pat.classes), dof))
        rows.append(Table1Row(k=k, pattern_count=len(pats), foldable_patterns=tuple(foldable)))
    return rows

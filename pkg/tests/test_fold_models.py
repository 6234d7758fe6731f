"""Closed-form family evaluators, checked against the loop-closure residual.

Every evaluator must hand back angle vectors whose rotation product is the
identity to near machine precision; that residual is the oracle for all of
these tests, independent of how each formula was derived.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rigidfold.core_geometry import closure_residual, g60, wrap_angle
from rigidfold.errors import (
    InconsistentPointError,
    NoSolutionError,
    OutOfRangeError,
)
from rigidfold.fold_models import (
    FoldMode,
    FoldModel,
    almost_general,
    bowtie,
    bowtie_multiplier,
    bowtie_pattern,
    bowtie_vector,
    degree4_fold,
    degree4_multipliers,
    degree4_pattern,
    general_c3_image,
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
    pleat_multiplier,
    resch_fold,
    trifold,
    trifold_drive_limit,
    trifold_multiplier,
    trifold_pattern,
    trifold_vector,
    two_pair_complete,
    two_pair_curve_residual,
    two_pair_pattern,
    two_pair_vector,
)

PI = math.pi
SQRT3 = math.sqrt(3.0)
G = g60()


def fold_eq(a: float, b: float, tol: float = 1e-12) -> bool:
    """Angle equality modulo 2*pi, with +pi and -pi identified."""
    d = abs(wrap_angle(a - b))
    return min(d, 2.0 * PI - d) < tol or abs(d - PI) < tol and _both_flat(a, b)


def _both_flat(a: float, b: float) -> bool:
    return abs(abs(wrap_angle(a)) - PI) < 1e-9 and abs(abs(wrap_angle(b)) - PI) < 1e-9


# --- degree 4 ----------------------------------------------------------------

def test_degree4_multiplier_closed_forms_agree():
    """cos/sin ratio form equals the tan product form for both constants."""
    for a, b in [(math.radians(50), math.radians(70)), (0.4, 2.2), (1.0, 1.0)]:
        p, q = degree4_multipliers(a, b)
        ta, tb = math.tan(a / 2.0), math.tan(b / 2.0)
        assert math.isclose(p.value, (1.0 - ta * tb) / (1.0 + ta * tb), rel_tol=1e-13)
        assert math.isclose(p.value, math.cos((a + b) / 2.0) / math.cos((a - b) / 2.0),
                            rel_tol=1e-13)
        assert math.isclose(q.value, (ta - tb) / (ta + tb), abs_tol=1e-13)
        assert math.isclose(q.value, math.sin((a - b) / 2.0) / math.sin((a + b) / 2.0),
                            abs_tol=1e-13)


def test_degree4_modes_close():
    for a, b in [(math.radians(50), math.radians(70)), (0.7, 2.0)]:
        pat = degree4_pattern(a, b)
        for mode in (1, 2):
            for d in np.linspace(-3.0, 3.0, 21):
                rho = degree4_fold(a, b, mode, d)
                assert closure_residual(pat, rho) < 1e-12


def test_degree4_mode_structure():
    rho = degree4_fold(0.9, 1.3, 1, 0.8)
    assert rho[1] == 0.8 and rho[3] == 0.8 and math.isclose(rho[0], -rho[2], abs_tol=1e-15)
    rho = degree4_fold(0.9, 1.3, 2, 0.8)
    assert rho[0] == 0.8 and rho[2] == 0.8 and math.isclose(rho[1], -rho[3], abs_tol=1e-15)


def test_degree4_domain():
    with pytest.raises(OutOfRangeError):
        degree4_multipliers(0.0, 1.0)
    with pytest.raises(OutOfRangeError):
        degree4_multipliers(1.0, PI)


def test_pleat_multiplier_identity():
    for x in (0.3, 1.0, 2.5):
        assert math.isclose(pleat_multiplier(x), math.tan(PI / 4.0 - x / 2.0), rel_tol=1e-13)
    p, _ = degree4_multipliers(0.8, PI / 2.0)
    assert math.isclose(pleat_multiplier(0.8), p.value, rel_tol=1e-13)


# --- trifold ------------------------------------------------------------------

def test_trifold_multiplier_at_equilateral():
    assert abs(trifold_multiplier(PI / 3.0) + (2.0 + SQRT3)) < 1e-12


def test_trifold_closes_across_betas_and_modes():
    for beta in (0.4, PI / 3.0, 1.0, 1.9):
        pat = trifold_pattern(beta)
        lim = trifold_drive_limit(beta)
        for mode in (1, 2):
            for d in np.linspace(-lim, lim, 25):
                rho = trifold_vector(*trifold(beta, mode, d))
                assert closure_residual(pat, rho) < 1e-12


def test_trifold_drive_limit_hits_flat_fold():
    lim = trifold_drive_limit(0.4)
    assert 0.0 < lim < PI
    r1, r2 = trifold(0.4, 1, lim)
    assert abs(abs(r1) - PI) < 1e-9  # companion reaches the flat fold exactly
    with pytest.raises(OutOfRangeError):
        trifold(0.4, 1, lim + 1e-6)


def test_trifold_limit_at_equilateral_is_pi_over_3():
    assert abs(trifold_drive_limit(PI / 3.0) - PI / 3.0) < 1e-9


@settings(max_examples=40)
@given(
    st.floats(0.1, 2.0 * PI / 3.0 - 0.1),
    st.floats(-0.9, 0.9),
)
def test_trifold_is_odd_in_the_drive(beta, frac):
    d = frac * trifold_drive_limit(beta)
    for mode in (1, 2):
        fwd = trifold(beta, mode, d)
        bwd = trifold(beta, mode, -d)
        assert math.isclose(fwd[0], -bwd[0], abs_tol=1e-10)
        assert math.isclose(fwd[1], -bwd[1], abs_tol=1e-10)


# --- bow tie ------------------------------------------------------------------

def test_bowtie_closes_both_modes():
    for beta in (0.5, PI / 3.0, 1.2):
        for mode in (1, 2):
            pat = bowtie_pattern(beta, mode)
            for d in np.linspace(-3.0, 3.0, 21):
                rho = bowtie_vector(d, bowtie(beta, mode, d))
                assert closure_residual(pat, rho) < 1e-12


def test_bowtie_modes_coincide_at_60_degrees():
    assert math.isclose(bowtie_multiplier(PI / 3.0, 1), -0.5, abs_tol=1e-15)
    assert math.isclose(bowtie_multiplier(PI / 3.0, 2), -0.5, abs_tol=1e-15)
    for d in np.linspace(-3.0, 3.0, 41):
        assert abs(bowtie(PI / 3.0, 1, d) - bowtie(PI / 3.0, 2, d)) < 1e-12


def test_bowtie_domain():
    with pytest.raises(OutOfRangeError):
        bowtie_multiplier(1.6, 1)  # first sector would be nonpositive


# --- opposites ----------------------------------------------------------------

def test_opposites_each_unknown_closes():
    a, b = 0.9, 0.7
    pat = opposites_pattern(a, b)
    known = {"rho1": 0.8, "rho2": -0.5, "rho3": 1.1}
    for missing in ("rho1", "rho2", "rho3"):
        kwargs = {k: v for k, v in known.items() if k != missing}
        sol = opposites_solve(a, b, **kwargs)
        assert not sol.free
        for val in sol.angles:
            full = dict(kwargs)
            full[missing] = val
            rho = opposites_vector(full["rho1"], full["rho2"], full["rho3"])
            assert closure_residual(pat, rho) < 1e-12


def test_opposites_flat_pair_leaves_third_free():
    sol = opposites_solve(0.9, 0.7, rho1=0.0, rho2=0.0)
    assert sol.free


def test_opposites_needs_exactly_two_angles():
    with pytest.raises(OutOfRangeError):
        opposites_solve(0.9, 0.7, rho1=0.5)
    with pytest.raises(OutOfRangeError):
        opposites_solve(0.9, 0.7, rho1=0.5, rho2=0.1, rho3=0.2)


# --- igloo --------------------------------------------------------------------

def test_igloo_completion_closes_on_a_grid():
    a, b = 1.0, 0.8
    pat = igloo_pattern(a, b)
    for r2 in np.linspace(-2.8, 2.8, 9):
        for r3 in np.linspace(-2.8, 2.8, 9):
            rho = igloo_vector(igloo_rho1(a, b, r2, r3), r2, r3, igloo_rho4(a, b, r2, r3))
            assert closure_residual(pat, rho) < 1e-12


def test_igloo_flat_input_returns_flat():
    assert igloo_rho1(1.0, 0.8, 0.0, 0.0) == 0.0
    assert igloo_rho4(1.0, 0.8, 1e-14, -1e-14) == 0.0


def test_igloo_1dof_closes_and_matches_completion():
    a, b = 1.0, 0.8
    pat = igloo_pattern(a, b)
    for mode in (1, 2):
        for d in np.linspace(-3.0, 3.0, 21):
            r1, r2, r3 = igloo_1dof(a, b, mode, d)
            rho = igloo_vector(r1, r2, r3, d)
            assert closure_residual(pat, rho) < 1e-12
            assert fold_eq(igloo_rho1(a, b, r2, r3), r1, tol=1e-9)


def test_igloo_right_angle_keeps_first_crease_flat():
    a = 0.7
    for mode in (1, 2):
        for d in np.linspace(-3.0, 3.0, 31):
            r1, r2, _ = igloo_1dof(a, PI / 2.0, mode, d)
            assert abs(r1) < 1e-10
            assert min(abs(r2 - d / 2.0), abs(r2 + d / 2.0)) < 1e-9
    # the two modes pick opposite signs of rho2
    r2_m1 = igloo_1dof(a, PI / 2.0, 1, 1.0)[1]
    r2_m2 = igloo_1dof(a, PI / 2.0, 2, 1.0)[1]
    assert math.isclose(r2_m1, -r2_m2, abs_tol=1e-12)


# --- two pair -----------------------------------------------------------------

def test_two_pair_curve_passes_through_origin():
    assert two_pair_curve_residual(0.0, 0.0) == 0.0
    assert abs(two_pair_curve_residual(1.0, 0.0)) > 1.0  # generic point is off


def test_two_pair_curve_is_swap_symmetric():
    rng = np.random.default_rng(11)
    for _ in range(50):
        x, y = rng.uniform(-PI, PI, 2)
        assert abs(two_pair_curve_residual(x, y) - two_pair_curve_residual(y, x)) < 1e-10


def test_two_pair_completion_at_origin():
    assert two_pair_complete(0.0, 0.0) == [(0.0, 0.0)]


def _on_curve_point(rho1: float, lo: float, hi: float) -> float:
    """Bisect the relation in rho2 at fixed rho1; bracket must change sign."""
    f = lambda y: two_pair_curve_residual(rho1, y)
    assert f(lo) * f(hi) < 0
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if f(lo) * f(mid) <= 0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def test_two_pair_completion_closes_off_origin():
    pat = two_pair_pattern()
    r2 = _on_curve_point(1.5, -2.356, -2.094)
    comps = two_pair_complete(1.5, r2)
    assert comps
    for r3, r4 in comps:
        assert closure_residual(pat, two_pair_vector(1.5, r2, r3, r4)) < 1e-8


def test_two_pair_rejects_off_curve_input():
    with pytest.raises(InconsistentPointError):
        two_pair_complete(1.0, 0.0)


# --- general and almost general -------------------------------------------------

def test_general_x_identity():
    """First coordinate of the folded third crease depends only on rho2."""
    rng = np.random.default_rng(5)
    for _ in range(100):
        r1, r2 = rng.uniform(-PI, PI, 2)
        x = general_c3_image(r1, r2)[0]
        assert abs(x - (1.0 - 3.0 * math.cos(r2)) / 4.0) < 1e-12


def test_general_fold_branches_close():
    rng = np.random.default_rng(17)
    solved = 0
    while solved < 30:
        d = rng.uniform(-PI, PI, 3)
        try:
            sols = general_fold(*d)
        except NoSolutionError:
            continue
        for v in sols:
            assert closure_residual(G, v) < 1e-8
            assert np.allclose(v[3:], d, atol=1e-15)  # drives pass through
        solved += 1


def test_general_fold_no_branch_raises():
    assert general_rho2(2.197659, -0.666474, -0.12765) == []
    with pytest.raises(NoSolutionError):
        general_fold(2.197659, -0.666474, -0.12765)


def test_general_flat_drives_give_flat_state():
    sols = general_fold(0.0, 0.0, 0.0)
    assert len(sols) == 1
    assert np.allclose(sols[0], 0.0, atol=1e-12)


def test_almost_general_ties_first_two_creases():
    rng = np.random.default_rng(23)
    solved = 0
    while solved < 20:
        r4, r5 = rng.uniform(-PI, PI, 2)
        try:
            sols = almost_general(r4, r5)
        except NoSolutionError:
            continue
        for v in sols:
            assert v[0] == v[1]
            assert closure_residual(G, v) < 1e-8
        solved += 1


# --- seven-vertex patch ---------------------------------------------------------

def test_resch_vertices_all_close():
    limit = trifold_drive_limit(PI / 3.0)
    for t in (-limit, -0.5, 0.0, 0.3, limit):
        states = resch_fold(t)
        assert set(states) == {f"r{i}" for i in range(1, 8)}
        for vec in states.values():
            assert closure_residual(G, vec) < 1e-12


def test_resch_center_is_the_trifold():
    t = 0.3
    states = resch_fold(t)
    assert np.allclose(states["r1"], trifold_vector(*trifold(PI / 3.0, 1, t)), atol=1e-12)
    # the shared crease feeds the drive back in
    assert fold_eq(states["r2"][0], t, tol=1e-9)


def test_resch_symmetry_triples():
    states = resch_fold(-0.4)
    assert np.array_equal(states["r2"], states["r3"])
    assert np.array_equal(states["r3"], states["r4"])
    assert np.array_equal(states["r5"], states["r6"])
    assert np.array_equal(states["r6"], states["r7"])


def test_resch_flat_at_zero():
    states = resch_fold(0.0)
    for vec in states.values():
        assert np.allclose(vec, 0.0, atol=1e-15)


def test_resch_rejects_out_of_range_drive():
    limit = trifold_drive_limit(PI / 3.0)
    with pytest.raises(OutOfRangeError):
        resch_fold(limit + 1e-3)


# --- mode descriptors ------------------------------------------------------------

def test_fold_mode_validation():
    FoldMode(FoldModel.TRIFOLD, 2, PI / 3.0, PI / 3.0)
    with pytest.raises(OutOfRangeError):
        FoldMode(FoldModel.TRIFOLD, 3, PI / 3.0, PI / 3.0)
    with pytest.raises(OutOfRangeError):
        FoldMode(FoldModel.TRIFOLD, 1, PI / 3.0, 2.5)  # beta outside (0, 2pi/3)

"""Stable-region sweep and tilt-bound tests (coarse grids for speed)."""

import math

import numpy as np
import pytest

from pivotgrasp.geometry import GraspConfig, ObjectSpec
from pivotgrasp.stability import (
    SweepCellError,
    beta_upper_bound,
    default_alpha_grid,
    default_beta_grid,
    degree_grid,
    grasp_plane_csv,
    grasp_plane_sweep,
    is_stable,
    min_alpha,
    region_map_csv,
    region_map_meta,
    region_sweep,
)
from pivotgrasp.wrenches import FRICTIONLESS, FrictionSet

BUSHING = ObjectSpec("bushing", a=34.0, b=17.0, D=34.0, d=28.0)
DELTA = 7.2
SET_B = FrictionSet(0.0, 0.0, 0.4)
SET_C = FrictionSet(0.2, 0.4, 0.4)


def cfg_for(l_a, alpha, beta):
    return GraspConfig(l_a=l_a, alpha=alpha, beta=beta, delta=DELTA,
                       hole_offset=BUSHING.D / 2 - DELTA)


class TestIsStable:
    def test_frictionless_flat_has_no_closure(self):
        for alpha_deg in (10, 30, 50, 70):
            cfg = cfg_for(0.7, math.radians(alpha_deg), 0.0)
            assert not is_stable(BUSHING, cfg, FRICTIONLESS, "form_closure")

    def test_full_friction_reference_grasp(self):
        cfg = cfg_for(0.9, math.pi / 10, 0.0)
        assert is_stable(BUSHING, cfg, SET_C, "force_balance")
        assert not is_stable(BUSHING, cfg, FRICTIONLESS, "force_balance")

    def test_unknown_mode_rejected(self):
        with pytest.raises(ValueError):
            is_stable(BUSHING, cfg_for(0.5, 0.5, 0.0), SET_C, "levitation")


class TestRegionSweep:
    def test_single_cell_grid(self):
        alpha, beta = math.radians(61.0), math.radians(10.0)
        rmap = region_sweep(BUSHING, SET_B, 0.5, (alpha,), (beta,), delta=DELTA)
        assert rmap.feasible.shape == (1, 1)
        assert rmap.feasible[0, 0] == is_stable(BUSHING, cfg_for(0.5, alpha, beta), SET_B)

    def test_friction_expands_region(self):
        alpha_grid = degree_grid(5.0, 85.0, 5.0)
        beta_grid = degree_grid(0.0, 90.0, 5.0)
        maps = [
            region_sweep(BUSHING, fr, 0.7, alpha_grid, beta_grid, delta=DELTA)
            for fr in (FRICTIONLESS, SET_B, SET_C)
        ]
        assert maps[0].feasible_cells() < maps[1].feasible_cells() < maps[2].feasible_cells()
        # set inclusion cell-for-cell
        assert not np.any(maps[0].feasible & ~maps[1].feasible)
        assert not np.any(maps[1].feasible & ~maps[2].feasible)

    def test_larger_la_reaches_smaller_alpha_but_lower_beta(self):
        alpha_grid = degree_grid(1.0, 89.0, 1.0)
        beta_grid = degree_grid(0.0, 90.0, 2.0)
        small = region_sweep(BUSHING, SET_B, 0.5, alpha_grid, beta_grid, delta=DELTA)
        large = region_sweep(BUSHING, SET_B, 0.9, alpha_grid, beta_grid, delta=DELTA)

        def min_alpha_at_flat(rmap):
            col = rmap.feasible[:, 0]
            return next(i for i in range(len(col)) if col[i])

        def max_beta_any(rmap):
            rows = np.where(rmap.feasible.any(axis=0))[0]
            return rows[-1] if len(rows) else -1

        assert min_alpha_at_flat(large) < min_alpha_at_flat(small)
        assert max_beta_any(large) < max_beta_any(small)

    def test_parallel_evaluation_identical(self):
        alpha_grid = degree_grid(5.0, 85.0, 10.0)
        beta_grid = degree_grid(0.0, 90.0, 10.0)
        seq = region_sweep(BUSHING, SET_C, 0.6, alpha_grid, beta_grid, delta=DELTA, workers=1)
        par = region_sweep(BUSHING, SET_C, 0.6, alpha_grid, beta_grid, delta=DELTA, workers=2)
        assert np.array_equal(seq.feasible, par.feasible)

    def test_axis_validation(self):
        with pytest.raises(ValueError):
            region_sweep(BUSHING, SET_B, 0.5, (0.3, 0.2), (0.0,), delta=DELTA)
        with pytest.raises(ValueError):
            region_sweep(BUSHING, SET_B, 0.5, (0.0,), (0.0,), delta=DELTA)  # alpha = 0 excluded
        with pytest.raises(ValueError):
            region_sweep(BUSHING, SET_B, 0.5, (0.3,), (0.0, math.pi), delta=DELTA)

    def test_cell_errors_carry_coordinates(self):
        with pytest.raises(SweepCellError) as err:
            region_sweep(BUSHING, SET_B, 1.5, (0.3,), (0.0,), delta=DELTA)
        assert err.value.alpha == 0.3 and err.value.beta == 0.0

    def test_default_grids(self):
        alpha = default_alpha_grid()
        beta = default_beta_grid()
        assert len(alpha) == 179 and len(beta) == 181
        assert 0.0 < alpha[0] and alpha[-1] < math.pi / 2
        assert beta[0] == 0.0 and beta[-1] == pytest.approx(math.pi / 2, rel=1e-15)


class TestBetaUpperBound:
    def test_small_la_survives_full_rotation(self):
        bound = beta_upper_bound(BUSHING, SET_B, 0.3, math.radians(61.0), delta=DELTA)
        assert bound.status == "not_finite"
        assert not bound.finite and bound.value is None

    def test_large_la_has_finite_bound_past_com_crossing(self):
        bound = beta_upper_bound(BUSHING, SET_B, 0.9, math.radians(1.0), delta=DELTA)
        assert bound.status == "finite" and bound.finite
        # the bound can only appear after the centre of mass passes the corner
        assert bound.value > math.atan2(BUSHING.a, BUSHING.b) - 1e-3

    def test_bound_brackets_feasibility(self):
        bound = beta_upper_bound(BUSHING, SET_B, 0.9, math.radians(1.0), delta=DELTA)
        eps = 1e-4
        below = cfg_for(0.9, math.radians(1.0), bound.value - 2 * eps)
        above = cfg_for(0.9, math.radians(1.0), bound.value + 2 * eps)
        assert is_stable(BUSHING, below, SET_B)
        assert not is_stable(BUSHING, above, SET_B)

    def test_infeasible_at_start(self):
        bound = beta_upper_bound(BUSHING, SET_B, 0.4, math.radians(10.0), delta=DELTA)
        assert bound.status == "infeasible_at_start"
        assert bound.value is None and not bound.finite

    def test_transitions_recorded(self):
        bound = beta_upper_bound(BUSHING, SET_B, 0.9, math.radians(1.0), delta=DELTA)
        assert bound.transitions[0] == bound.value

    def test_non_monotone_region_reports_all_transitions(self):
        # Just above the flat-position alpha threshold the region has a
        # narrow infeasible notch right after beta = 0 before resuming, so
        # two transitions appear; the first is returned as the bound.
        bound = beta_upper_bound(BUSHING, SET_B, 0.4, math.radians(60.0), delta=DELTA)
        assert bound.status == "finite"
        assert len(bound.transitions) == 2
        assert math.degrees(bound.transitions[0]) < 5.0
        assert math.degrees(bound.transitions[1]) > 85.0
        assert bound.value == bound.transitions[0]
        # notch interior confirmed unstable, resumed region stable
        assert not is_stable(BUSHING, cfg_for(0.4, math.radians(60.0), math.radians(2.0)), SET_B)
        assert is_stable(BUSHING, cfg_for(0.4, math.radians(60.0), math.radians(8.0)), SET_B)


class TestMinAlpha:
    def test_matches_direct_scan(self):
        got = min_alpha(BUSHING, SET_B, 0.5, 0.0, delta=DELTA, step_deg=1.0)
        scan = next(
            a for a in degree_grid(1.0, 89.0, 1.0)
            if is_stable(BUSHING, cfg_for(0.5, a, 0.0), SET_B)
        )
        assert got == scan

    def test_non_increasing_in_la(self):
        values = [
            min_alpha(BUSHING, SET_B, la, 0.0, delta=DELTA, step_deg=1.0)
            for la in (0.5, 0.6, 0.7, 0.8, 0.9)
        ]
        assert all(v is not None for v in values)
        assert all(v2 <= v1 for v1, v2 in zip(values, values[1:]))

    def test_frictionless_flat_none(self):
        for la in (0.3, 0.6, 0.9):
            assert min_alpha(BUSHING, FRICTIONLESS, la, 0.0, delta=DELTA, step_deg=2.0) is None


class TestSerialization:
    def test_region_csv_layout(self):
        rmap = region_sweep(BUSHING, SET_B, 0.5, degree_grid(60.0, 62.0, 1.0),
                            degree_grid(0.0, 2.0, 1.0), delta=DELTA)
        lines = region_map_csv(rmap).strip().split("\n")
        assert lines[0] == "alpha_deg/beta_deg,0,1,2"
        assert len(lines) == 4
        first = lines[1].split(",")
        assert first[0] == "60"
        assert set("".join(first[1:])) <= {"0", "1"}

    def test_region_meta_fields(self):
        rmap = region_sweep(BUSHING, SET_B, 0.5, (math.radians(61.0),), (0.0,), delta=DELTA)
        meta = region_map_meta(rmap, BUSHING)
        assert meta["object"]["name"] == "bushing"
        assert meta["friction"] == {"mu_S": 0.0, "mu_H": 0.0, "mu_G": 0.4}
        assert meta["l_a"] == 0.5 and meta["mode"] == "force_balance"
        assert meta["alpha_grid"]["count"] == 1

    def test_grasp_plane_csv_layout(self):
        gmap = grasp_plane_sweep(BUSHING, SET_C, math.pi / 10, (0.65, 0.9),
                                 degree_grid(0.0, 4.0, 2.0), delta=DELTA)
        lines = grasp_plane_csv(gmap).strip().split("\n")
        assert lines[0] == "l_a/beta_deg,0,2,4"
        assert lines[1].startswith("0.65,") and lines[2].startswith("0.9,")

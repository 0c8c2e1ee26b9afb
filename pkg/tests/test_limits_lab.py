import json
import math

import numpy as np
import pytest

from platevac import em3d, limits_lab, scalar1d
from platevac.errors import DomainError, FitError
from platevac.geometry import Geometry, Position
from platevac.limits_lab import (
    Clustering,
    CommutationModel,
    DensityProfile,
    Endpoint,
    GridSpec,
)
from platevac.regsum import RegScheme
from platevac.scalar1d import Couplings, EnergySplit

G1 = Geometry(1.0)

FREE_DELTAS = [0.02, 0.01, 0.005, 0.0025]
FREE_EPSILONS = [1e-3, 5e-4, 2.5e-4]
INTERACTING_EPSILONS = [0.04, 0.02, 0.01, 0.005]


def eh_density_source(g, p, _scheme, c=em3d.EhCouplings()):
    return em3d.eh_correction_density(g, p, c)


class TestGrids:
    def test_uniform_grid_hits_midpoint(self):
        grid = limits_lab.theta_grid(GridSpec(101))
        assert len(grid) == 101
        assert grid[50] == pytest.approx(math.pi / 2, rel=1e-15)
        assert 0.0 < grid[0] and grid[-1] < math.pi

    def test_clustered_grid_is_interior_and_increasing(self):
        grid = limits_lab.theta_grid(GridSpec(64, Clustering.ENDPOINTS))
        assert all(b > a for a, b in zip(grid, grid[1:]))
        assert 0.0 < grid[0] and grid[-1] < math.pi
        uniform = limits_lab.theta_grid(GridSpec(64))
        assert grid[0] < uniform[0]  # clustered toward the walls

    def test_single_point_grid_rejected(self):
        with pytest.raises(DomainError):
            GridSpec(1)


class TestSampleProfile:
    def test_scalar_profile_midpoint(self):
        profile = limits_lab.sample_profile(
            scalar1d.density_split, G1, RegScheme.zeta(), GridSpec(101)
        )
        assert profile.values[50].electric == pytest.approx(math.pi / 24.0, rel=1e-12)

    def test_em_profile_is_constant(self):
        profile = limits_lab.sample_profile(
            em3d.density_split, G1, RegScheme.zeta(), GridSpec(101)
        )
        exact = em3d.free_casimir_density(G1)
        for split in profile.values:
            assert split.total == pytest.approx(exact, rel=1e-8)

    def test_scalar_valued_source_is_wrapped(self):
        profile = limits_lab.sample_profile(
            eh_density_source, G1, RegScheme.zeta(), GridSpec(11)
        )
        assert all(v.magnetic == 0.0 for v in profile.values)

    def test_deterministic(self):
        a = limits_lab.sample_profile(scalar1d.density_split, G1, RegScheme.zeta(), GridSpec(21))
        b = limits_lab.sample_profile(scalar1d.density_split, G1, RegScheme.zeta(), GridSpec(21))
        assert a.grid == b.grid
        assert all(x.total == y.total for x, y in zip(a.values, b.values))

    def test_profile_invariants(self):
        with pytest.raises(DomainError):
            DensityProfile(
                g=G1,
                scheme=RegScheme.zeta(),
                grid=(0.2, 0.1),
                values=(
                    EnergySplit.from_parts(0.0, 0.0),
                    EnergySplit.from_parts(0.0, 0.0),
                ),
            )
        with pytest.raises(DomainError):
            DensityProfile(
                g=G1, scheme=RegScheme.zeta(), grid=(0.1, 0.2),
                values=(EnergySplit.from_parts(0.0, 0.0),),
            )


class TestFitDivergence:
    SPEC = GridSpec(200, Clustering.ENDPOINTS)

    def test_scalar_electric_exponent(self):
        profile = limits_lab.sample_profile(scalar1d.density_split, G1, RegScheme.zeta(), self.SPEC)
        fit = limits_lab.fit_divergence(
            profile, Endpoint.LEFT, component="electric", constant_part=-math.pi / 48.0
        )
        assert fit.exponent == pytest.approx(-2.0, abs=0.02)
        assert fit.conclusive

    def test_em_correlator_exponent(self):
        profile = limits_lab.sample_profile(
            lambda g, p, _s: em3d.correlators(g, p).e2, G1, RegScheme.zeta(), self.SPEC
        )
        fit = limits_lab.fit_divergence(
            profile, Endpoint.LEFT, component="electric",
            constant_part=-math.pi ** 2 / (16.0 * 45.0),
        )
        assert fit.exponent == pytest.approx(-4.0, abs=0.02)

    def test_eh_correction_exponent(self):
        c = em3d.EhCouplings()
        profile = limits_lab.sample_profile(eh_density_source, G1, RegScheme.zeta(), self.SPEC)
        fit = limits_lab.fit_divergence(
            profile, Endpoint.LEFT, component="electric",
            constant_part=em3d.eh_correction_constant(G1, c),
        )
        assert fit.exponent == pytest.approx(-8.0, abs=0.1)

    def test_right_endpoint_matches_left(self):
        profile = limits_lab.sample_profile(scalar1d.density_split, G1, RegScheme.zeta(), self.SPEC)
        left = limits_lab.fit_divergence(
            profile, Endpoint.LEFT, component="electric", constant_part=-math.pi / 48.0
        )
        right = limits_lab.fit_divergence(
            profile, Endpoint.RIGHT, component="electric", constant_part=-math.pi / 48.0
        )
        assert left.exponent == pytest.approx(right.exponent, abs=1e-6)

    def test_default_constant_uses_midpoint(self):
        profile = limits_lab.sample_profile(scalar1d.density_split, G1, RegScheme.zeta(), self.SPEC)
        fit = limits_lab.fit_divergence(profile, Endpoint.LEFT, component="electric")
        assert fit.exponent == pytest.approx(-2.0, abs=0.02)

    def test_window_halving_stability(self):
        profile = limits_lab.sample_profile(
            scalar1d.density_split, G1, RegScheme.zeta(), GridSpec(400, Clustering.ENDPOINTS)
        )
        wide = limits_lab.fit_divergence(
            profile, Endpoint.LEFT, component="electric",
            constant_part=-math.pi / 48.0, n_points=6, window=0.1,
        )
        narrow = limits_lab.fit_divergence(
            profile, Endpoint.LEFT, component="electric",
            constant_part=-math.pi / 48.0, n_points=6, window=0.05,
        )
        assert abs(wide.exponent - narrow.exponent) < 0.05

    def test_all_zero_residuals_diagnosed(self):
        profile = limits_lab.sample_profile(
            lambda g, p, _s: 1.0, G1, RegScheme.zeta(), GridSpec(16)
        )
        with pytest.raises(FitError):
            limits_lab.fit_divergence(
                profile, Endpoint.LEFT, component="electric", constant_part=1.0
            )


class TestEpsilonExpansionCheck:
    def test_interior_slopes(self):
        fits = limits_lab.epsilon_expansion_check([0.5, 1.0, 2.0], [0.04, 0.02, 0.01])
        for fit in fits:
            assert fit.slope == pytest.approx(4.0, abs=0.1)
            assert not fit.breakdown

    def test_right_angle_slope_survives_vanishing_coefficient(self):
        fit = limits_lab.epsilon_expansion_check([math.pi / 2], [0.04, 0.02, 0.01])[0]
        assert fit.slope == pytest.approx(4.0, abs=0.1)

    def test_breakdown_region_flagged(self):
        fit = limits_lab.epsilon_expansion_check([0.005], [0.04, 0.02, 0.01])[0]
        assert fit.breakdown

    def test_requires_geometric_ratio_two(self):
        with pytest.raises(DomainError):
            limits_lab.epsilon_expansion_check([1.0], [0.04, 0.02, 0.013])
        with pytest.raises(DomainError):
            limits_lab.epsilon_expansion_check([1.0], [0.04, 0.02])


class TestCommutationReport:
    def test_free_scalar(self):
        report = limits_lab.commutation_report(
            G1, CommutationModel.FREE_SCALAR, deltas=FREE_DELTAS, epsilons=FREE_EPSILONS
        )
        assert report.sum_then_regularize == pytest.approx(-math.pi / 24.0, rel=1e-12)
        assert report.window_fit_exponent == pytest.approx(-1.0, abs=0.02)
        assert report.cutoff_spread < 1e-8
        assert report.verdict.agrees
        assert report.verdict.difference < 1e-7 * abs(report.sum_then_regularize)

    def test_free_scalar_window_monotone(self):
        report = limits_lab.commutation_report(
            G1, CommutationModel.FREE_SCALAR, deltas=FREE_DELTAS, epsilons=FREE_EPSILONS
        )
        partials = [r.partial_total for r in report.window_rows]
        # deltas decrease along the rows, the window integrals grow
        assert all(b > a for a, b in zip(partials, partials[1:]))

    def test_interacting_scalar(self):
        c = Couplings(alpha=0.01, m=10.0)
        report = limits_lab.commutation_report(
            G1,
            CommutationModel.INTERACTING_SCALAR,
            deltas=FREE_DELTAS,
            epsilons=INTERACTING_EPSILONS,
            couplings=c,
        )
        expected = -math.pi / 24.0 - 0.01 * math.pi ** 2 / 14400.0
        assert report.sum_then_regularize == pytest.approx(expected, rel=1e-12)
        assert report.sum_then_regularize == pytest.approx(-0.13090655, abs=5e-9)
        assert report.verdict.agrees
        assert report.verdict.difference < 1e-7 * abs(report.sum_then_regularize)
        assert report.notes  # measured construction is flagged

    def test_free_window_estimates_track_partials(self):
        report = limits_lab.commutation_report(
            G1, CommutationModel.FREE_SCALAR, deltas=FREE_DELTAS, epsilons=FREE_EPSILONS
        )
        for row in report.window_rows:
            # the cot term dominates the window integral near delta -> 0
            assert row.partial_total == pytest.approx(
                row.divergent_estimate, rel=0.05
            )

    def test_report_serializes(self):
        report = limits_lab.commutation_report(
            G1, CommutationModel.FREE_SCALAR, deltas=FREE_DELTAS, epsilons=FREE_EPSILONS
        )
        payload = report.to_dict()
        text = json.dumps(payload)
        again = json.loads(text)
        assert again["verdict"]["agrees"] is True
        assert len(again["integrate_then_regularize"]) == len(FREE_DELTAS)
        assert len(again["cutoff_full_interval"]) == len(FREE_EPSILONS)

    def test_validation(self):
        with pytest.raises(DomainError):
            limits_lab.commutation_report(
                G1, CommutationModel.FREE_SCALAR, deltas=[0.01, 0.02], epsilons=FREE_EPSILONS
            )
        with pytest.raises(DomainError):
            limits_lab.commutation_report(
                G1, CommutationModel.FREE_SCALAR, deltas=[0.6], epsilons=FREE_EPSILONS
            )
        with pytest.raises(DomainError):
            limits_lab.commutation_report(
                G1, CommutationModel.FREE_SCALAR, deltas=FREE_DELTAS, epsilons=[0.1, -0.05]
            )
        with pytest.raises(DomainError):
            limits_lab.commutation_report(
                G1, CommutationModel.INTERACTING_SCALAR, deltas=FREE_DELTAS,
                epsilons=INTERACTING_EPSILONS,
            )

import numpy as np
import pytest

from tenfold1d import (
    DiscretizationSpec,
    OracleReport,
    PiecewiseDiracProfile,
    TightBindingModel,
    count_near_zero_localized,
    discretize_dirac_junction,
    finite_chain,
    oracle_compare,
)
from tenfold1d.errors import BadSpec, IncompatibleBoundary


class TestDiscretizationSpec:
    def test_defaults(self):
        spec = DiscretizationSpec()
        assert spec.length is None and spec.cells is None
        assert spec.core_fraction == 0.5 and spec.min_weight == 0.9

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"length": 0.0},
            {"length": -1.0},
            {"step": 0.0},
            {"energy_window": -0.1},
            {"cells": 0},
            {"core_fraction": 0.0},
            {"core_fraction": 1.5},
            {"min_weight": 0.0},
            {"min_weight": 1.1},
        ],
    )
    def test_validation(self, kwargs):
        with pytest.raises(BadSpec):
            DiscretizationSpec(**kwargs)

    def test_frozen(self):
        with pytest.raises(AttributeError):
            DiscretizationSpec().cells = 3


@pytest.fixture(scope="module")
def wall_oracle():
    profile = PiecewiseDiracProfile([-np.eye(1), np.eye(1)], [0.0])
    spec = DiscretizationSpec(length=20.0, step=0.1, energy_window=0.1)
    H = discretize_dirac_junction(profile, spec)
    return H, count_near_zero_localized(H, spec)


class TestDiscretizeDirac:
    def test_needs_geometry(self):
        p = PiecewiseDiracProfile([-np.eye(1), np.eye(1)], [0.0])
        with pytest.raises(BadSpec):
            discretize_dirac_junction(p, DiscretizationSpec(step=0.1))
        with pytest.raises(BadSpec):
            discretize_dirac_junction(p, DiscretizationSpec(length=10.0))
        with pytest.raises(BadSpec):
            discretize_dirac_junction(p, DiscretizationSpec(length=1.0, step=2.0))

    def test_hermitian(self, wall_oracle):
        H, _ = wall_oracle
        assert np.abs(H - H.conj().T).max() == 0.0

    def test_constant_mass_has_clean_gap(self):
        # no junction, no wall binding: the spectrum must respect the bulk
        # gap (-1, 1) up to discretization error
        p = PiecewiseDiracProfile([np.eye(1), np.eye(1)], [0.0])
        spec = DiscretizationSpec(length=20.0, step=0.1, energy_window=0.9)
        H = discretize_dirac_junction(p, spec)
        report = count_near_zero_localized(H, spec)
        assert report.near_zero == 0

    def test_wall_hosts_one_zero_mode(self, wall_oracle):
        _, report = wall_oracle
        assert report.near_zero == 1
        assert report.localized == 1
        assert np.abs(report.energies).max() <= 1e-8
        assert report.core_weights[0] >= 0.99

    def test_wall_passes_comparison(self, wall_oracle):
        _, report = wall_oracle
        assert oracle_compare((1, 1), report) == "PASS"

    def test_two_channel_wall(self):
        p = PiecewiseDiracProfile([-np.eye(2), np.eye(2)], [0.0])
        spec = DiscretizationSpec(length=14.0, step=0.1, energy_window=0.1)
        with pytest.warns(UserWarning, match="short"):
            H = discretize_dirac_junction(p, spec)
        report = count_near_zero_localized(H, spec)
        assert report.near_zero == 2 and report.localized == 2

    def test_coarse_step_warns(self):
        p = PiecewiseDiracProfile([-2.0 * np.eye(1), 2.0 * np.eye(1)], [0.0])
        spec = DiscretizationSpec(length=12.0, step=0.2, energy_window=0.1)
        with pytest.warns(UserWarning, match="coarse"):
            discretize_dirac_junction(p, spec)

    def test_indefinite_end_mass_warns(self):
        W = np.diag([1.0, -1.0])
        p = PiecewiseDiracProfile([W, W], [0.0])
        spec = DiscretizationSpec(length=25.0, step=0.1, energy_window=0.1)
        with pytest.warns(UserWarning, match="indefinite"):
            discretize_dirac_junction(p, spec)


class TestFiniteChain:
    def test_needs_cells(self):
        m = TightBindingModel([np.eye(1)], [np.zeros((1, 1))])
        with pytest.raises(BadSpec):
            finite_chain(m, m, DiscretizationSpec(length=5.0))

    def test_block_size_gate(self):
        a = TightBindingModel([np.eye(1)], [np.zeros((1, 1))])
        b = TightBindingModel([np.eye(2)], [np.zeros((2, 2))])
        with pytest.raises(IncompatibleBoundary):
            finite_chain(a, b, DiscretizationSpec(cells=5))

    def test_uniform_chain_band(self):
        # open uniform chain: eigenvalues 2 cos(k pi / (n+1))
        m = TightBindingModel([np.eye(1)], [np.zeros((1, 1))])
        H = finite_chain(m, m, DiscretizationSpec(cells=30))
        evals = np.linalg.eigvalsh(H)
        n = H.shape[0]
        want = 2.0 * np.cos(np.arange(n, 0, -1) * np.pi / (n + 1))
        assert np.abs(evals - want).max() <= 1e-12

    def test_extended_states_fail_localization(self):
        # gapless chain: modes near zero exist but spread over the whole
        # box, so the localization filter rejects them
        m = TightBindingModel([np.eye(1)], [np.zeros((1, 1))])
        spec = DiscretizationSpec(cells=30, energy_window=0.2)
        report = count_near_zero_localized(finite_chain(m, m, spec), spec)
        assert report.near_zero >= 1
        assert report.localized == 0

    def test_dimerization_seam(self):
        # (1,2)|(2,1) seam: one protected seam mode plus one weak-bond
        # edge mode at the left wall, both at zero; only the seam mode
        # survives the localization filter
        z = [np.zeros((1, 1)), np.zeros((1, 1))]
        left = TightBindingModel([np.array([[1.0]]), np.array([[2.0]])], z)
        right = TightBindingModel([np.array([[2.0]]), np.array([[1.0]])], z)
        spec = DiscretizationSpec(cells=100, energy_window=1e-3)
        report = count_near_zero_localized(finite_chain(left, right, spec), spec)
        assert report.near_zero == 2
        assert report.localized == 1
        assert report.core_weights[0] >= 0.99
        assert report.core_weights[-1] <= 0.01

    def test_trivial_seam_is_empty(self):
        z = [np.zeros((1, 1)), np.zeros((1, 1))]
        m = TightBindingModel([np.array([[2.0]]), np.array([[1.0]])], z)
        spec = DiscretizationSpec(cells=100, energy_window=1e-3)
        report = count_near_zero_localized(finite_chain(m, m, spec), spec)
        assert report.near_zero == 0 and report.localized == 0


class TestCountNearZero:
    def test_needs_window(self):
        with pytest.raises(BadSpec):
            count_near_zero_localized(np.zeros((4, 4)), DiscretizationSpec())

    def test_rejects_non_hermitian(self):
        spec = DiscretizationSpec(energy_window=0.5)
        H = np.zeros((4, 4))
        H[0, 1] = 1.0
        with pytest.raises(ValueError):
            count_near_zero_localized(H, spec)

    def test_degenerate_cluster_counted_canonically(self, rng):
        # one zero mode in the core, one at the wall, exactly degenerate:
        # whatever mixture eigh returns, the canonical weights are 1 and 0
        dim = 8
        e_wall = np.zeros(dim)
        e_wall[0] = 1.0
        e_core = np.zeros(dim)
        e_core[4] = 1.0
        P = np.outer(e_wall, e_wall) + np.outer(e_core, e_core)
        H = 3.0 * (np.eye(dim) - P)
        spec = DiscretizationSpec(energy_window=0.5)
        report = count_near_zero_localized(H, spec)
        assert report.near_zero == 2
        assert report.localized == 1
        assert np.allclose(np.sort(report.core_weights), [0.0, 1.0], atol=1e-12)


class TestOracleCompare:
    def test_tuple_and_object_forms(self):
        oracle = OracleReport(1, 1, np.zeros(1), np.ones(1))

        class R:
            predicted = 1
            bound = 1

        assert oracle_compare((1, 1), oracle) == "PASS"
        assert oracle_compare(R(), oracle) == "PASS"

    def test_verdict_table(self):
        make = lambda loc: OracleReport(loc, loc, np.zeros(loc), np.ones(loc))
        assert oracle_compare((2, 1), make(0)) == "FAIL"
        assert oracle_compare((2, 1), make(1)) == "WARN"
        assert oracle_compare((2, 1), make(2)) == "PASS"
        assert oracle_compare((2, 1), make(3)) == "WARN"
        assert oracle_compare((0, 0), make(0)) == "PASS"

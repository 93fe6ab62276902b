"""Tests for the channel components and model variants."""

import math

import numpy as np
import pytest

from src.channel.base import ChannelModel, ClusterSet, RisState
from src.channel.beam import (
    BeamGrid,
    array_response,
    beam_frequencies,
    beam_transform,
    dirichlet,
    nearest_beam,
    spatial_frequencies,
    transform_matrix,
)
from src.channel.generator import (
    ChannelGenerator,
    combined_channel,
    planar_baseline,
    rician_weights,
    spherical_oracle,
)
from src.channel.legs import legs
from src.channel.nlos import generate_clusters, nlos_cir_beam, nlos_cir_geometry, nlos_paths
from src.channel.paths import antenna_entry, antenna_matrix, beam_entry
from src.channel.ris import (
    aligned_scale,
    make_ris_state,
    ris_cir_beam,
    ris_cir_geometry,
    ris_paths,
    ris_peak_beam,
    subarray_weights,
    wrap_phase,
)
from src.core.config import Scenario
from src.core.errors import DomainError
from src.geometry.base import AnglePair, ArraySpec, Side
from src.geometry.kinematics import antenna_offset, distance, terminal_position
from src.partition.fraunhofer import element_partition, partition_grid, ris_element_positions
from src.stats.capacity import modeling_error


class TestSpatialFrequencies:
    """Test spatial frequencies and array responses."""

    def test_boresight(self):
        """Test a horizontal path along a horizontal half-wavelength array."""
        array = ArraySpec(count=2, spacing=0.05, azimuth_tilt=0.3, vertical_tilt=0.0)
        theta_azi, theta_ver = spatial_frequencies(AnglePair(0.3, 0.0), array, 0.1)

        assert theta_azi == pytest.approx(0.5)
        assert theta_ver == 0.0

    def test_vertical_path(self):
        """Test a vertical path has no azimuth frequency."""
        array = ArraySpec(count=2, spacing=0.05, azimuth_tilt=0.3, vertical_tilt=0.5)
        theta_azi, _ = spatial_frequencies(AnglePair(1.2, math.pi / 2), array, 0.1)
        assert theta_azi == pytest.approx(0.0, abs=1e-15)

    @pytest.mark.parametrize(
        "length,theta,expected",
        [
            (1, 0.37, [1.0]),
            (2, 0.25, [1.0, 1j]),
            (3, 0.0, [1.0, 1.0, 1.0]),
        ],
    )
    def test_array_response(self, length, theta, expected):
        """Test known response vectors."""
        np.testing.assert_allclose(array_response(length, theta, 0.0), expected, atol=1e-15)

    def test_array_response_empty(self):
        """Test an empty array is rejected."""
        with pytest.raises(DomainError):
            array_response(0, 0.1, 0.1)

    def test_dirichlet_peak(self):
        """Test the kernel sum peaks at the array length."""
        assert dirichlet(4, np.array([0.0]))[0] == pytest.approx(4.0)
        assert dirichlet(4, np.array([0.25]))[0] == pytest.approx(0.0, abs=1e-14)


class TestBeamTransform:
    """Test the unitary beam-domain transform."""

    def test_beam_grid(self):
        """Test beam frequencies of a 4-element array."""
        np.testing.assert_allclose(beam_frequencies(4), [-0.375, -0.125, 0.125, 0.375])

    def test_nearest_beam(self):
        """Test a path lands in the beam at its mirrored spatial frequency, modulo 1."""
        beams = beam_frequencies(4)
        assert nearest_beam(0.1, beams) == 2
        assert nearest_beam(-0.3, beams) == 4
        assert nearest_beam(0.45, beams) == 1

    def test_transform_is_unitary(self):
        """Test U^H U = I."""
        for n in (1, 2, 5, 16):
            u = transform_matrix(n)
            np.testing.assert_allclose(u.conj().T @ u, np.eye(n), atol=1e-12)

    def test_single_antenna(self):
        """Test a 1 x 1 transform is the identity."""
        h = np.array([[0.3 - 0.4j]])
        np.testing.assert_allclose(beam_transform(h, BeamGrid(1, 1)), h)

    def test_zero_matrix(self):
        """Test the zero matrix stays zero."""
        np.testing.assert_array_equal(beam_transform(np.zeros((3, 2)), BeamGrid(2, 3)), 0)

    def test_identity_norm(self):
        """Test the Frobenius norm of a transformed 2 x 2 identity."""
        h_beam = beam_transform(np.eye(2), BeamGrid(2, 2))
        assert np.linalg.norm(h_beam) == pytest.approx(math.sqrt(2))

    def test_norm_preserved(self):
        """Test the Frobenius norm is preserved for random matrices."""
        rng = np.random.default_rng(5)
        for _ in range(30):
            p, q = rng.integers(1, 17, size=2)
            h = rng.normal(size=(q, p)) + 1j * rng.normal(size=(q, p))
            h_beam = beam_transform(h, BeamGrid(int(p), int(q)))
            assert np.linalg.norm(h_beam) == pytest.approx(np.linalg.norm(h), rel=1e-10)

    def test_shape_mismatch(self):
        """Test a matrix of the wrong shape is rejected."""
        with pytest.raises(DomainError):
            beam_transform(np.zeros((2, 3)), BeamGrid(2, 3))


class TestRisComponent:
    """Test the RIS component."""

    def test_dual_path(self, small_scenario):
        """Test the kernel form equals the transformed antenna matrix."""
        scenario = small_scenario.with_overrides(ris__phase_policy="zero")
        for t in (0.0, 1.3, 4.0):
            partition = partition_grid(scenario, t, side=3)
            state = make_ris_state(scenario, partition, t)

            h_geometry, delays_geometry = ris_cir_geometry(scenario, partition, state, t)
            h_beam, delays_beam = ris_cir_beam(scenario, partition, state, t)

            grid = BeamGrid(scenario.uav.antennas, scenario.vehicle.antennas)
            np.testing.assert_allclose(h_beam, beam_transform(h_geometry, grid), rtol=0, atol=1e-10)
            np.testing.assert_array_equal(delays_geometry, delays_beam)
            assert len(delays_geometry) == partition.subarray_count

    def test_dual_path_random_phases(self, small_scenario):
        """Test the dual path under the random phase policy and array-factor weights."""
        scenario = small_scenario.with_overrides(
            ris__phase_policy="random", ris__weighting="array_factor", vehicle__antennas=3
        )
        generator = ChannelGenerator(scenario)
        for model in (ChannelModel.SUBARRAY, ChannelModel.SPHERICAL):
            paths = generator.ris_paths(model, 2.0, realization=4)
            h = antenna_matrix(paths, 4, 3)
            h_beam = generator.matrix(paths, ChannelModel.BEAM)
            expected = beam_transform(h, generator.grid)
            np.testing.assert_allclose(h_beam, expected, rtol=0, atol=1e-10)

    def test_entries_match_matrix(self, small_scenario):
        """Test single-entry evaluation matches the full matrix."""
        generator = ChannelGenerator(small_scenario)
        paths = generator.ris_paths(ChannelModel.SUBARRAY, 1.0)
        h = antenna_matrix(paths, 4, 4)
        h_beam = generator.matrix(paths, ChannelModel.BEAM)

        for p, q in ((1, 1), (2, 4), (4, 3)):
            assert antenna_entry(paths, p, q, 4, 4) == pytest.approx(h[q - 1, p - 1], abs=1e-12)
            assert beam_entry(paths, p, q, generator.grid) == pytest.approx(
                h_beam[q - 1, p - 1], abs=1e-12
            )

    def test_cophased_single_element(self):
        """Test a co-phased single element between static terminals gives 1."""
        scenario = Scenario().with_overrides(
            uav__antennas=1,
            vehicle__antennas=1,
            uav__speed=0.0,
            vehicle__speed=0.0,
            ris__elements_x=1,
            ris__elements_z=1,
            ris__phase_policy="co-phasing",
        )
        h = ChannelGenerator(scenario).ris_matrix(ChannelModel.SUBARRAY, 1.0)
        assert h[0, 0] == pytest.approx(1.0 + 0.0j, abs=1e-9)

    def test_ris_off(self, small_scenario):
        """Test zero reflection amplitude switches the component off."""
        scenario = small_scenario.with_overrides(ris__amplitude=0.0)
        for model in ChannelModel:
            h = ChannelGenerator(scenario).ris_matrix(model, 1.0)
            np.testing.assert_array_equal(h, 0)

    def test_two_elements_sum_spherical_terms(self):
        """Test two 1-element sub-arrays give the sum of the per-element spherical terms."""
        scenario = Scenario().with_overrides(
            uav__antennas=1,
            vehicle__antennas=1,
            uav__speed=0.0,
            vehicle__speed=0.0,
            ris__elements_x=2,
            ris__elements_z=1,
            ris__phase_policy="zero",
        )
        partition = element_partition(scenario, 2.0)
        state = make_ris_state(scenario, partition, 2.0)
        h, _ = ris_cir_geometry(scenario, partition, state, 2.0)

        uav = terminal_position(Side.UAV, scenario, 2.0)
        vehicle = terminal_position(Side.VEHICLE, scenario, 2.0)
        expected = sum(
            np.exp(-1j * scenario.wavenumber * (distance(uav, r) + distance(vehicle, r)))
            for r in ris_element_positions(scenario.ris_spec).reshape(-1, 3)
        )
        assert h[0, 0] == pytest.approx(expected, abs=1e-9)

    def test_degenerate_geometry(self):
        """Test a terminal at a sub-array center is rejected."""
        scenario = Scenario().with_overrides(
            ris__elements_x=1, ris__elements_z=1, ris__center=(0.0, 0.0, 50.0)
        )
        with pytest.raises(DomainError):
            ChannelGenerator(scenario).ris_matrix(ChannelModel.SPHERICAL, 0.0)

    def test_cophasing_phases_wrapped(self, small_scenario):
        """Test co-phasing cancels path and Doppler phase, wrapped to [0, 2pi)."""
        partition = partition_grid(small_scenario, 1.0)
        state = make_ris_state(small_scenario, partition, 1.0)

        assert np.all(state.phase >= 0)
        assert np.all(state.phase < 2 * math.pi)
        geometry = legs(small_scenario, partition.centers, 1.0)
        expected = wrap_phase(small_scenario.wavenumber * geometry.length - geometry.doppler_phase)
        np.testing.assert_array_equal(state.phase, expected)

    def test_random_phases_need_stream(self, small_scenario):
        """Test the random policy requires a random stream."""
        scenario = small_scenario.with_overrides(ris__phase_policy="random")
        with pytest.raises(DomainError):
            make_ris_state(scenario, partition_grid(scenario, 1.0), 1.0)

    def test_random_phases_deterministic(self, small_scenario):
        """Test random RIS phases depend only on seed and realization."""
        scenario = small_scenario.with_overrides(ris__phase_policy="random")
        first = ChannelGenerator(scenario).ris_state(ChannelModel.SUBARRAY, 1.0, realization=3)
        second = ChannelGenerator(scenario).ris_state(ChannelModel.SUBARRAY, 1.0, realization=3)
        other = ChannelGenerator(scenario).ris_state(ChannelModel.SUBARRAY, 1.0, realization=4)

        np.testing.assert_array_equal(first.phase, second.phase)
        assert not np.array_equal(first.phase, other.phase)

    def test_weights(self, small_scenario):
        """Test the sub-array weighting modes."""
        partition = partition_grid(small_scenario, 1.0, side=3)

        weights = subarray_weights(small_scenario, partition, 1.0)
        np.testing.assert_array_equal(weights, partition.counts)
        assert weights.sum() == 64

        unit = small_scenario.with_overrides(ris__weighting="unit")
        np.testing.assert_array_equal(subarray_weights(unit, partition, 1.0), 1)

        factor = small_scenario.with_overrides(ris__weighting="array_factor")
        weights = subarray_weights(factor, partition, 1.0)
        assert np.all(np.abs(weights) <= partition.counts + 1e-9)

    def test_array_factor_single_elements(self, small_scenario):
        """Test array-factor weights of 1-element sub-arrays are 1."""
        scenario = small_scenario.with_overrides(ris__weighting="array_factor")
        partition = element_partition(scenario, 1.0)
        np.testing.assert_allclose(subarray_weights(scenario, partition, 1.0), 1.0)

    def test_ris_state_validation(self):
        """Test RIS states reject unwrapped phases and invalid amplitudes."""
        with pytest.raises(DomainError):
            RisState(amplitude=np.ones(2), phase=np.array([0.0, 2 * math.pi]))
        with pytest.raises(DomainError):
            RisState(amplitude=np.array([1.5]), phase=np.array([0.0]))
        with pytest.raises(DomainError):
            RisState(amplitude=np.ones(2), phase=np.zeros(3))

    def test_unit_mean_power(self, small_scenario):
        """Test the co-phased RIS component has unit mean entry power in every model."""
        generator = ChannelGenerator(small_scenario)
        for model in ChannelModel:
            h = generator.ris_matrix(model, 1.0)
            assert np.mean(np.abs(h) ** 2) == pytest.approx(1.0, rel=1e-9)

    def test_aligned_scale_ignores_phases(self, small_scenario):
        """Test the normalizer depends on gain magnitudes only."""
        scenario = small_scenario.with_overrides(ris__phase_policy="zero")
        partition = partition_grid(scenario, 2.0, side=3)
        zero = make_ris_state(scenario, partition, 2.0)
        cophased = make_ris_state(
            scenario.with_overrides(ris__phase_policy="co-phasing"), partition, 2.0
        )

        first = aligned_scale(scenario, ris_paths(scenario, partition, zero, 2.0))
        second = aligned_scale(scenario, ris_paths(scenario, partition, cophased, 2.0))
        assert first == pytest.approx(second, rel=1e-12)
        assert first > 0

    def test_cophasing_aligns_moving_panel(self, small_scenario):
        """Test co-phased gains are real and positive at the regulation time."""
        paths = ChannelGenerator(small_scenario).ris_paths(ChannelModel.SUBARRAY, 3.0)
        np.testing.assert_allclose(np.angle(paths.gain), 0.0, atol=1e-8)

    def test_held_regulation(self, small_scenario):
        """Test a regulation held from an earlier time drifts out of phase."""
        generator = ChannelGenerator(small_scenario)
        held = generator.ris_paths(ChannelModel.SUBARRAY, 3.05, regulated_at=3.0)

        assert np.ptp(np.angle(held.gain)) > 1e-3
        assert generator.ris_paths(ChannelModel.SUBARRAY, 3.0, regulated_at=3.0) is (
            generator.ris_paths(ChannelModel.SUBARRAY, 3.0)
        )

    def test_peak_beam_pair(self, small_scenario):
        """Test the RIS beam pair holds the largest beam-domain coefficient."""
        scenario = small_scenario.with_overrides(ris__elements_x=1, ris__elements_z=1)
        h = ChannelGenerator(scenario).ris_matrix(ChannelModel.BEAM, 1.0)
        q_max, p_max = np.unravel_index(np.argmax(np.abs(h)), h.shape)

        assert ris_peak_beam(scenario, 1.0) == (p_max + 1, q_max + 1)

    def test_exact_antenna_phases(self, static_scenario):
        """Test every sub-array term carries the phase of the centered antenna offsets."""
        scenario = static_scenario.with_overrides(
            uav__antennas=3,
            vehicle__antennas=3,
            ris__elements_x=4,
            ris__elements_z=4,
            ris__phase_policy="zero",
        )
        partition = partition_grid(scenario, 1.0, side=2)
        state = make_ris_state(scenario, partition, 1.0)
        h, _ = ris_cir_geometry(scenario, partition, state, 1.0)

        geometry = legs(scenario, partition.centers, 1.0)
        k = scenario.wavenumber
        for p in range(1, 4):
            for q in range(1, 4):
                uav_phase = geometry.direction_uav @ antenna_offset(scenario.uav_array, p)
                vehicle_phase = geometry.direction_vehicle @ antenna_offset(
                    scenario.vehicle_array, q
                )
                expected = np.sum(
                    partition.counts
                    * np.exp(-1j * k * geometry.length)
                    * np.exp(1j * k * (uav_phase + vehicle_phase))
                )
                assert h[q - 1, p - 1] == pytest.approx(expected, abs=1e-9)

    @pytest.mark.slow
    def test_dual_path_randomized(self):
        """Test the kernel form against the transform over random array sizes."""
        rng = np.random.default_rng(31)
        for realization in range(20):
            uav_count, vehicle_count = (int(n) for n in rng.integers(1, 9, size=2))
            scenario = Scenario().with_overrides(
                uav__antennas=uav_count,
                vehicle__antennas=vehicle_count,
                ris__elements_x=6,
                ris__elements_z=6,
                ris__phase_policy="random",
                scatterers__clusters=2,
                scatterers__rays_per_cluster=3,
            )
            t = float(rng.uniform(0.0, 8.0))
            grid = BeamGrid(uav_count, vehicle_count)

            partition = partition_grid(scenario, t, side=int(rng.integers(1, 4)))
            state = make_ris_state(scenario, partition, t, np.random.default_rng(realization))
            h_geometry, _ = ris_cir_geometry(scenario, partition, state, t)
            h_beam, _ = ris_cir_beam(scenario, partition, state, t)
            expected = beam_transform(h_geometry, grid)
            np.testing.assert_allclose(h_beam, expected, rtol=0, atol=1e-10)

            clusters = generate_clusters(scenario, 2024, realization)
            h_geometry, _ = nlos_cir_geometry(scenario, clusters, t)
            h_beam, _ = nlos_cir_beam(scenario, clusters, t)
            expected = beam_transform(h_geometry, grid)
            np.testing.assert_allclose(h_beam, expected, rtol=0, atol=1e-10)


class TestModelCollapse:
    """Test the limits that tie the model variants together."""

    def test_oracle_collapse(self, small_scenario):
        """Test 1-element sub-arrays reproduce the spherical oracle."""
        scenario = small_scenario.with_overrides(partition__forced_side=1)
        generator = ChannelGenerator(scenario)
        for t in (0.0, 2.5):
            np.testing.assert_allclose(
                generator.ris_matrix(ChannelModel.SUBARRAY, t),
                generator.ris_matrix(ChannelModel.SPHERICAL, t),
                rtol=1e-12,
                atol=0,
            )

    @pytest.mark.slow
    def test_oracle_collapse_randomized(self):
        """Test the oracle collapse over random panels, arrays, placements and times."""
        rng = np.random.default_rng(2024)
        for _ in range(50):
            scenario = Scenario().with_overrides(
                uav__antennas=int(rng.integers(1, 7)),
                vehicle__antennas=int(rng.integers(1, 7)),
                uav__azimuth_tilt=float(rng.uniform(0.0, math.pi)),
                ris__elements_x=int(rng.integers(1, 9)),
                ris__elements_z=int(rng.integers(1, 9)),
                ris__center=(
                    float(rng.uniform(20.0, 80.0)),
                    float(rng.uniform(30.0, 70.0)),
                    float(rng.uniform(5.0, 40.0)),
                ),
                partition__forced_side=1,
            )
            t = float(rng.uniform(0.0, 8.0))
            generator = ChannelGenerator(scenario)
            np.testing.assert_allclose(
                generator.ris_matrix(ChannelModel.SUBARRAY, t),
                generator.ris_matrix(ChannelModel.SPHERICAL, t),
                rtol=1e-12,
                atol=0,
            )

    def test_far_field_collapse(self, small_scenario):
        """Test a single sub-array reproduces the planar baseline exactly."""
        scenario = small_scenario.with_overrides(ris__elements_x=4, ris__elements_z=4)
        generator = ChannelGenerator(scenario)

        assert generator.partition(ChannelModel.SUBARRAY, 1.0).is_single
        np.testing.assert_array_equal(
            generator.ris_matrix(ChannelModel.SUBARRAY, 1.0),
            generator.ris_matrix(ChannelModel.PLANAR, 1.0),
        )

    def test_single_element_panel(self, small_scenario):
        """Test a 1 x 1 panel makes the oracle and the planar baseline identical."""
        scenario = small_scenario.with_overrides(ris__elements_x=1, ris__elements_z=1)
        oracle = spherical_oracle(scenario, None, 1.0)
        planar = planar_baseline(scenario, None, 1.0)

        np.testing.assert_array_equal(oracle.ris, planar.ris)

    def test_near_field_differs(self, small_scenario):
        """Test the planar baseline deviates from the oracle on a 4 x 4 panel."""
        scenario = small_scenario.with_overrides(ris__elements_x=4, ris__elements_z=4)
        oracle = spherical_oracle(scenario, None, 1.0)
        planar = planar_baseline(scenario, None, 1.0)

        error = modeling_error(planar.ris, oracle.ris)
        assert math.isfinite(error)

    def test_explicit_ris_state(self, static_scenario):
        """Test an explicit RIS state replaces the configured policy."""
        generator = ChannelGenerator(static_scenario)
        partition = generator.partition(ChannelModel.SPHERICAL, 1.0)
        state = RisState(
            amplitude=np.zeros(partition.subarray_count), phase=np.zeros(partition.subarray_count)
        )
        realization = spherical_oracle(static_scenario, state, 1.0)
        np.testing.assert_array_equal(realization.ris, 0)


class TestNlosComponent:
    """Test the scattered component."""

    def test_phase_compensated_ray(self, static_scenario):
        """Test one ray whose initial phase cancels its path phase."""
        scenario = static_scenario.with_overrides(uav__antennas=1, vehicle__antennas=1)
        center = np.array([[50.0, 0.0, 10.0]])
        length = legs(scenario, center, 1.0).length
        clusters = ClusterSet(
            centers=center,
            rays=center[:, None, :],
            initial_phase=(scenario.wavenumber * length).reshape(1, 1),
        )
        h, delays = nlos_cir_geometry(scenario, clusters, 1.0)

        assert h[0, 0] == pytest.approx(1.0 + 0.0j, abs=1e-12)
        assert delays[0] == pytest.approx(length[0] / 299_792_458.0)

    def test_coherent_rays(self, static_scenario):
        """Test coincident rays with equal phase add coherently to sqrt(n_L)."""
        scenario = static_scenario.with_overrides(uav__antennas=1, vehicle__antennas=1)
        center = np.array([[40.0, 5.0, 12.0]])
        clusters = ClusterSet(
            centers=center,
            rays=np.repeat(center[:, None, :], 4, axis=1),
            initial_phase=np.full((1, 4), 0.3),
        )
        h, _ = nlos_cir_geometry(scenario, clusters, 1.0)
        assert abs(h[0, 0]) == pytest.approx(2.0)

    def test_empty_cluster(self, small_scenario):
        """Test a cluster without rays is rejected."""
        clusters = ClusterSet(
            centers=np.zeros((1, 3)), rays=np.zeros((1, 0, 3)), initial_phase=np.zeros((1, 0))
        )
        with pytest.raises(DomainError):
            nlos_paths(small_scenario, clusters, 1.0)

    def test_dual_path(self, small_scenario):
        """Test the kernel form equals the transformed antenna matrix."""
        scenario = small_scenario.with_overrides(uav__antennas=3, vehicle__antennas=5)
        clusters = generate_clusters(scenario, 2024, 0)
        grid = BeamGrid(3, 5)

        h_geometry, _ = nlos_cir_geometry(scenario, clusters, 1.5)
        h_beam, _ = nlos_cir_beam(scenario, clusters, 1.5)
        np.testing.assert_allclose(h_beam, beam_transform(h_geometry, grid), rtol=0, atol=1e-10)

    def test_clusters_deterministic(self, small_scenario):
        """Test clusters depend only on seed and realization."""
        first = generate_clusters(small_scenario, 7, 2)
        second = generate_clusters(small_scenario, 7, 2)
        other = generate_clusters(small_scenario, 7, 3)

        np.testing.assert_array_equal(first.rays, second.rays)
        np.testing.assert_array_equal(first.initial_phase, second.initial_phase)
        assert not np.array_equal(first.centers, other.centers)

    def test_clusters_in_box(self, small_scenario):
        """Test cluster centers are drawn inside the configured box."""
        clusters = generate_clusters(small_scenario, 1, 0)
        box = small_scenario.scatterers

        assert clusters.rays.shape == (3, 4, 3)
        assert np.all(clusters.centers >= np.array(box.box_min))
        assert np.all(clusters.centers <= np.array(box.box_max))
        assert np.all((clusters.initial_phase >= 0) & (clusters.initial_phase < 2 * math.pi))

    def test_cluster_delays(self, small_scenario):
        """Test every ray of a cluster carries the cluster center delay."""
        clusters = generate_clusters(small_scenario, 1, 0)
        paths = nlos_paths(small_scenario, clusters, 1.0)

        np.testing.assert_array_equal(paths.group, np.repeat(np.arange(3), 4))
        expected = legs(small_scenario, clusters.centers, 1.0).delay
        np.testing.assert_allclose(paths.group_delays(), expected)


class TestRicianMixing:
    """Test the Rician combination of both components."""

    def test_weights(self):
        """Test Rician weights for known factors."""
        assert rician_weights(1.0) == pytest.approx((math.sqrt(0.5), math.sqrt(0.5)))
        assert rician_weights(0.0) == (0.0, 1.0)
        assert rician_weights(math.inf) == (1.0, 0.0)

        w_ris, w_nlos = rician_weights(1e12)
        assert w_ris == pytest.approx(1.0)
        assert w_nlos == pytest.approx(1e-6)

    def test_ris_only(self, small_scenario):
        """Test an infinite factor leaves only the RIS component."""
        scenario = small_scenario.with_overrides(channel__rician_k=math.inf)
        realization = combined_channel(scenario, 1.0, ChannelModel.BEAM)
        np.testing.assert_array_equal(realization.combined, realization.ris)

    def test_nlos_only(self, small_scenario):
        """Test a zero factor leaves only the NLoS component."""
        scenario = small_scenario.with_overrides(channel__rician_k=0.0)
        realization = combined_channel(scenario, 1.0, ChannelModel.SUBARRAY, realization=2)
        np.testing.assert_array_equal(realization.combined, realization.nlos)

    def test_equal_mix(self, small_scenario):
        """Test K = 1 weighs both components by sqrt(0.5)."""
        realization = combined_channel(small_scenario, 1.0, ChannelModel.SUBARRAY)
        np.testing.assert_allclose(
            realization.combined, math.sqrt(0.5) * (realization.ris + realization.nlos), atol=1e-14
        )

    def test_realization_fields(self, small_scenario):
        """Test realization shapes and delay maps."""
        generator = ChannelGenerator(small_scenario)
        realization = generator.realization(ChannelModel.SUBARRAY, 1.0, realization=1)

        assert realization.shape == (4, 4)
        partition = generator.partition(ChannelModel.SUBARRAY, 1.0)
        assert len(realization.ris_delays) == partition.subarray_count
        assert len(realization.nlos_delays) == 3
        assert realization.rician_k == 1.0

    def test_realizations_reproducible(self, small_scenario):
        """Test the same realization index gives the same matrix."""
        first = ChannelGenerator(small_scenario).realization(ChannelModel.BEAM, 2.0, realization=5)
        second = ChannelGenerator(small_scenario).realization(ChannelModel.BEAM, 2.0, realization=5)
        np.testing.assert_array_equal(first.combined, second.combined)


class TestChannelModel:
    """Test model tags."""

    def test_parse(self):
        """Test model names are case-insensitive."""
        assert ChannelModel.parse("BEAM") is ChannelModel.BEAM
        assert ChannelModel.parse(" subarray ") is ChannelModel.SUBARRAY

    def test_parse_unknown(self):
        """Test unknown names list the valid models."""
        with pytest.raises(DomainError, match="spherical"):
            ChannelModel.parse("foo")

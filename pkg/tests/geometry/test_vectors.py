import math

import pytest
import numpy as np

from risloc.types import Direction, Position3
from risloc.geometry import (
    Orientation,
    direction_to_global,
    global_to_direction,
    make_upa,
    ris_phase_profile,
    steering_vector,
    unit_vector,
    wavenumber_vector,
)

wavelength = 0.005


@pytest.fixture(scope="module")
def upa():
    return make_upa(16, 4, wavelength / 2)


class TestVectors:
    @pytest.mark.parametrize(
        "direction, expected",
        [
            (Direction(0.0, 0.0), [0, 1, 0]),
            (Direction(math.pi / 2, 0.0), [1, 0, 0]),
            (Direction(0.0, math.pi / 2), [0, 0, 1]),
        ],
    )
    def test_unit_vector(self, direction, expected):
        np.testing.assert_allclose(unit_vector(direction), expected, atol=1e-15)

    def test_wavenumber_length(self):
        g = wavenumber_vector(Direction.from_degrees(20, 10), wavelength)
        assert np.linalg.norm(g) == pytest.approx(2 * math.pi / wavelength)

    def test_boresight_steering_is_all_ones(self, upa):
        np.testing.assert_allclose(steering_vector(upa, Direction(0, 0), wavelength), 1.0)

    @pytest.mark.parametrize("az, el", [(10, 0), (-37, 5), (45, -20)])
    def test_steering_entries_have_unit_modulus(self, upa, az, el):
        a = steering_vector(upa, Direction.from_degrees(az, el), wavelength)
        np.testing.assert_allclose(np.abs(a), 1.0)

    def test_two_element_steering(self):
        layout = make_upa(2, 1, wavelength / 2)
        a = steering_vector(layout, Direction.from_degrees(30), wavelength)
        # half-wavelength pitch and sin(30) = 1/2 give a quarter-turn offset
        assert a[1] / a[0] == pytest.approx(1j)

    def test_phase_profile_is_unit_modulus(self, upa):
        omega = ris_phase_profile(upa, Direction.from_degrees(12), wavelength)
        np.testing.assert_allclose(np.abs(omega), 1.0)

    @pytest.mark.parametrize("n_az, n_el", [(16, 4), (16, 16)])
    @pytest.mark.parametrize("az, el", [(0, 0), (12, 0), (-30, 4)])
    def test_matched_beam_gain(self, n_az, n_el, az, el):
        layout = make_upa(n_az, n_el, wavelength / 2)
        theta = Direction.from_degrees(az, el)
        a = steering_vector(layout, theta, wavelength)
        gain = a @ np.diag(ris_phase_profile(layout, theta, wavelength)) @ a
        assert abs(gain) == pytest.approx(n_az * n_el, rel=1e-9)

    @pytest.mark.parametrize("n_az, n_el", [(16, 4), (16, 16)])
    def test_beam_gain_bounded_over_sweep(self, n_az, n_el):
        layout = make_upa(n_az, n_el, wavelength / 2)
        theta = Direction.from_degrees(7.3, 0)
        a = steering_vector(layout, theta, wavelength)
        for az in np.linspace(-45, 45, 61):
            omega = ris_phase_profile(layout, Direction.from_degrees(az), wavelength)
            assert abs(np.sum(a * a * omega)) <= n_az * n_el * (1 + 1e-12)

    def test_invalid_direction(self, upa):
        with pytest.raises(ValueError, match=r".*Invalid direction*"):
            steering_vector(upa, Direction(0.0, 3.0), wavelength)

    def test_invalid_wavelength(self):
        with pytest.raises(ValueError, match=r".*Invalid wavelength*"):
            wavenumber_vector(Direction(0.0), 0.0)


class TestGlobalDirections:
    ris = Position3(0, 13.38, 0)

    def test_boresight_from_facing_ris(self):
        point = direction_to_global(
            Direction(0, 0), 13.38, self.ris, Orientation.facing((0, -1, 0))
        )
        np.testing.assert_allclose(point, [0, 0, 0], atol=1e-12)

    def test_zero_distance_returns_ris(self):
        assert direction_to_global(Direction.from_degrees(30), 0.0, self.ris) == self.ris

    @pytest.mark.parametrize("distance", [-1.0, math.inf])
    def test_invalid_distance(self, distance):
        with pytest.raises(ValueError, match=r".*Invalid distance*"):
            direction_to_global(Direction(0.0), distance, self.ris)

    @pytest.mark.parametrize("az, el, d", [(0, 0, 13.38), (25, -10, 3.0), (-60, 30, 100.0)])
    def test_round_trip(self, az, el, d):
        orientation = Orientation.from_euler("zx", [40, 15], degrees=True)
        direction = Direction.from_degrees(az, el)
        point = direction_to_global(direction, d, self.ris, orientation)
        distance, recovered = global_to_direction(point, self.ris, orientation)
        assert distance == pytest.approx(d, abs=1e-9)
        assert recovered.azimuth == pytest.approx(direction.azimuth, abs=1e-12)
        assert recovered.elevation == pytest.approx(direction.elevation, abs=1e-12)

    def test_coincident_point_is_boresight(self):
        assert global_to_direction(self.ris, self.ris) == (0.0, Direction(0.0, 0.0))

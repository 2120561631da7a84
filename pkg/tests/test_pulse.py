import numpy as np
import numpy.testing as npt
import pytest

from scipy.integrate import quad

from mcwave import AmbiguityGrid, ArgumentError, PulseShape, ambiguity, build_ambiguity_grid

@pytest.fixture(scope='module')
def pulse() -> PulseShape:
    return PulseShape()

def _quad_ambiguity(pulse: PulseShape, tau: float, nu: float) -> complex:
    lower = max(-pulse.truncation, tau - pulse.truncation)
    upper = min(pulse.truncation, tau + pulse.truncation)

    def integrand(t: float) -> complex:
        return complex(pulse.samples(t)[0] * pulse.samples(t - tau)[0] * np.exp(-2j * np.pi * nu * (t - tau)))

    real, _ = quad(lambda t: integrand(t).real, lower, upper, limit=400)
    imag, _ = quad(lambda t: integrand(t).imag, lower, upper, limit=400)

    return real + 1j * imag

class TestPulseShape(object):
    def test_has_unit_energy(self, pulse):
        npt.assert_allclose(ambiguity(pulse, 0.0, 0.0), 1.0, atol=1e-12)

    @pytest.mark.parametrize('lag', [-4, -3, -2, -1, 1, 2, 3, 4])
    def test_is_symbol_period_orthogonal(self, pulse, lag):
        assert abs(ambiguity(pulse, float(lag), 0.0)) < 1e-2

    def test_samples_vanish_outside_truncation(self, pulse):
        npt.assert_array_equal(pulse.samples([-8.5, 9.0, 100.0]), 0.0)

    def test_samples_are_even(self, pulse):
        t = np.linspace(0.0, 7.5, 31)

        npt.assert_allclose(pulse.samples(t), pulse.samples(-t))

    @pytest.mark.parametrize('kwargs', [{'rolloff': 1.5}, {'rolloff': -0.1}, {'truncation': 0}, {'oversampling': 0}])
    def test_rejects_invalid_parameters(self, kwargs):
        with pytest.raises(ArgumentError):
            PulseShape(**kwargs)

    def test_handles_zero_rolloff(self):
        npt.assert_allclose(ambiguity(PulseShape(rolloff=0.0), 0.0, 0.0), 1.0, atol=1e-12)

class TestAmbiguity(object):
    @pytest.mark.parametrize('tau, nu', [(0.4, 0.01), (-1.3, 0.002), (2.0, -0.02)])
    def test_matches_adaptive_quadrature(self, tau, nu):
        pulse = PulseShape(truncation=4)

        npt.assert_allclose(ambiguity(pulse, tau, nu), _quad_ambiguity(pulse, tau, nu), atol=1e-3)

    def test_is_zero_beyond_support(self, pulse):
        assert ambiguity(pulse, pulse.support, 0.01) == 0
        assert ambiguity(pulse, -pulse.support - 0.5, 0.0) == 0

    def test_is_real_without_doppler(self, pulse):
        assert abs(ambiguity(pulse, 0.7, 0.0).imag) < 1e-12

    def test_is_bounded_by_energy(self, pulse, rng):
        for tau, nu in zip(rng.uniform(-4, 4, 10), rng.uniform(-0.05, 0.05, 10)):
            assert abs(ambiguity(pulse, tau, nu)) <= 1.0 + 1e-9

    def test_doppler_reduces_peak(self, pulse):
        assert abs(ambiguity(pulse, 0.0, 0.05)) < abs(ambiguity(pulse, 0.0, 0.0))

    def test_rejects_non_finite_arguments(self, pulse):
        with pytest.raises(ArgumentError):
            ambiguity(pulse, np.inf, 0.0)

class TestAmbiguityGrid(object):
    @pytest.fixture(scope='class')
    def grid(self) -> AmbiguityGrid:
        return build_ambiguity_grid(PulseShape(truncation=4), (-2.0, 2.0), (-0.02, 0.02), (33, 5))

    def test_returns_cached_node_values(self, grid):
        npt.assert_allclose(grid.at(grid.taus[5], grid.nus[1]), ambiguity(grid.pulse, grid.taus[5], grid.nus[1]))

    def test_interpolates_between_nodes(self, grid):
        npt.assert_allclose(grid.at(0.33, 0.005), ambiguity(grid.pulse, 0.33, 0.005), atol=5e-3)

    def test_rejects_queries_outside_grid(self, grid):
        with pytest.raises(ArgumentError):
            grid.at(3.0, 0.0)

    def test_rejects_empty_range(self):
        with pytest.raises(ArgumentError):
            build_ambiguity_grid(PulseShape(truncation=4), (1.0, 0.0), (0.0, 0.0), (2, 1))

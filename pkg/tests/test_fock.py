import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import poisson

from photonholes import CutoffError, CutoffPolicy, coherent_state, log_factorial, squeezed_vacuum
from photonholes.fock import number_state, thermal_distribution


def test_log_factorial_small():
    assert log_factorial(0) == 0.0
    assert log_factorial(1) == 0.0


def test_log_factorial_against_exact_integer():
    for n in (5, 20, 57, 170, 300):
        exact = float(mpmath.log(mpmath.mpf(math.factorial(n))))
        assert log_factorial(n) == pytest.approx(exact, rel=1e-13)
    assert log_factorial(20) == pytest.approx(math.log(2432902008176640000), rel=1e-14)


def test_log_factorial_vectorized():
    n = np.arange(10)
    expected = [math.log(math.factorial(int(k))) for k in n]
    np.testing.assert_allclose(log_factorial(n), expected, rtol=1e-14, atol=1e-15)


def test_log_factorial_negative():
    with pytest.raises(ValueError):
        log_factorial(-1)


class TestCoherent:
    def test_vacuum(self):
        v = coherent_state(0.0, 1.3)
        assert v.cutoff == 0
        assert v.amplitudes[0] == 1

    def test_two_photon_probability(self):
        v = coherent_state(1.0, 0.0, CutoffPolicy(1e-12))
        mp_value = mpmath.exp(-1) / mpmath.factorial(2)
        assert abs(v.amplitudes[2]) ** 2 == pytest.approx(float(mp_value), rel=1e-14)
        assert abs(v.amplitudes[2]) ** 2 == pytest.approx(0.18394, abs=1e-5)

    def test_phase_factorizes(self):
        phi = 0.7
        a = coherent_state(1.4, phi, min_cutoff=20)
        b = coherent_state(1.4, 0.0, min_cutoff=20)
        n = np.arange(21)
        np.testing.assert_allclose(a.amplitudes, b.amplitudes * np.exp(1j * n * phi), rtol=1e-13, atol=0)

    @pytest.mark.parametrize("mag", [0.1, 1.0, 2.5, 4.0])
    def test_poisson_marginal(self, mag):
        v = coherent_state(mag)
        n = np.arange(v.cutoff + 1)
        np.testing.assert_allclose(v.probabilities(), poisson.pmf(n, mag**2), rtol=1e-12)

    @pytest.mark.parametrize("mag", [0.0, 0.3, 1.0, 3.0, 5.5])
    def test_normalization_within_tail(self, mag):
        policy = CutoffPolicy(1e-12)
        v = coherent_state(mag, 0.3, policy)
        assert v.tail_bound <= policy.tail_epsilon
        assert 1 - policy.tail_epsilon <= v.norm() <= 1 + 1e-12

    def test_prefix_stability(self):
        short = coherent_state(1.7, 0.4, min_cutoff=12)
        long = coherent_state(1.7, 0.4, min_cutoff=60)
        np.testing.assert_array_equal(long.amplitudes[: short.cutoff + 1], short.amplitudes)

    def test_large_photon_numbers_do_not_overflow(self):
        v = coherent_state(5.0, min_cutoff=120)
        assert np.all(np.isfinite(v.amplitudes))

    def test_hard_max_exceeded(self):
        with pytest.raises(CutoffError, match="hard_max"):
            coherent_state(6.0, policy=CutoffPolicy(1e-12, 128))
        with pytest.raises(CutoffError):
            coherent_state(1.0, policy=CutoffPolicy(1e-12, 5))

    def test_invalid_magnitude(self):
        with pytest.raises(ValueError):
            coherent_state(-1.0)
        with pytest.raises(ValueError):
            coherent_state(float("nan"))


class TestSqueezed:
    def test_vacuum(self):
        v = squeezed_vacuum(0.0)
        assert v.amplitudes[0] == 1 and v.norm() == 1

    def test_two_photon_amplitude(self):
        r = 0.1
        v = squeezed_vacuum(r, CutoffPolicy(1e-12))
        expected = -math.tanh(r) / (math.sqrt(2) * math.sqrt(math.cosh(r)))
        assert v.amplitudes[2].real == pytest.approx(expected, rel=1e-14)
        assert v.amplitudes[2].real == pytest.approx(-0.07033, abs=5e-5)

    def test_against_direct_formula_high_precision(self):
        r = 0.6
        v = squeezed_vacuum(r, min_cutoff=40)
        mpmath.mp.dps = 40
        t, ch = mpmath.tanh(r), mpmath.cosh(r)
        for m in range(21):
            exact = (-1) ** m * mpmath.sqrt(mpmath.factorial(2 * m)) / (2**m * mpmath.factorial(m))
            exact *= t**m / mpmath.sqrt(ch)
            assert v.amplitudes[2 * m].real == pytest.approx(float(exact), rel=1e-12, abs=1e-300)

    def test_normalization_converges(self):
        norms = [squeezed_vacuum(0.5, min_cutoff=c).norm() for c in (4, 10, 20, 40)]
        assert np.all(np.diff(norms) >= 0)
        assert norms[-1] == pytest.approx(1.0, abs=1e-12)

    @given(st.floats(0.0, 1.0))
    @settings(max_examples=50, deadline=None)
    def test_parity_and_normalization(self, r):
        v = squeezed_vacuum(r)
        assert np.all(v.amplitudes[1::2] == 0)
        assert 1 - 1e-12 <= v.norm() <= 1 + 1e-12
        assert v.tail_bound <= 1e-12

    def test_mean_photon_number(self):
        v = squeezed_vacuum(0.8)
        assert v.mean_photon() == pytest.approx(math.sinh(0.8) ** 2, rel=1e-10)

    def test_hard_max_exceeded(self):
        with pytest.raises(CutoffError):
            squeezed_vacuum(3.0)


class TestThermal:
    def test_zero(self):
        p = thermal_distribution(0.0)
        assert p[0] == 1 and p.sum() == 1

    def test_closed_form(self):
        p = thermal_distribution(1.0)
        assert p[0] == pytest.approx(0.5, rel=1e-15)
        assert p[1] == pytest.approx(0.25, rel=1e-15)

    @pytest.mark.parametrize("nbar", [0.01, 0.5, 2.0, 3.0])
    def test_normalization(self, nbar):
        p = thermal_distribution(nbar)
        assert 1 - 1e-12 <= p.sum() <= 1 + 1e-12


def test_number_state():
    v = number_state(3, cutoff=5)
    assert v.cutoff == 5 and v.amplitudes[3] == 1 and v.norm() == 1
    with pytest.raises(ValueError):
        number_state(3, cutoff=2)


def test_policy_validation():
    with pytest.raises(ValueError):
        CutoffPolicy(0.0)
    with pytest.raises(ValueError):
        CutoffPolicy(1e-12, -1)


def test_thermal_hard_max():
    with pytest.raises(CutoffError):
        thermal_distribution(10.0)

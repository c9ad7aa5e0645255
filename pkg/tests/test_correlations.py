import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from photonholes import (
    DetectorArray,
    HoleSpec,
    JointDistribution,
    ZeroMeanError,
    beamsplitter,
    classical_floor,
    coherent_state,
    coincidence_probability,
    falling_moment,
    g_mn,
    g_n,
    joint_distribution,
    loss_channel,
    mean_photon,
    number_state,
    solve_holes,
    squeezed_vacuum,
    tensor,
    thermal_distribution,
)
from photonholes.correlations import CorrelationReport, falling_factorial, poisson_mixture
from photonholes.scan import output_distribution


def test_falling_factorial():
    np.testing.assert_array_equal(falling_factorial(np.arange(6), 3), [0, 0, 0, 6, 24, 60])
    np.testing.assert_array_equal(falling_factorial(np.arange(3), 0), [1, 1, 1])


@pytest.mark.parametrize("mu", [0.1, 1.0, 4.0])
@pytest.mark.parametrize("order", [1, 2, 5])
def test_poisson_factorial_moments(mu, order):
    p = poisson_mixture([mu], [1.0], max_order=order)
    assert falling_moment(p, order) == pytest.approx(mu**order, rel=1e-12)
    assert g_n(p, order).value == pytest.approx(1.0, abs=1e-11)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_thermal_g(n):
    # high moments weight the tail, so go well past the default cutoff
    p = thermal_distribution(0.7, min_cutoff=120)
    assert g_n(p, n).value == pytest.approx(math.factorial(n), rel=1e-9)


@pytest.mark.parametrize("k", [1, 2, 3, 6])
def test_fock_g2(k):
    p = number_state(k).probabilities()
    assert g_n(p, 2).value == pytest.approx(1 - 1 / k, abs=1e-15)


def test_coherent_product_is_unity():
    d = joint_distribution(tensor(coherent_state(1.3, 0.2, min_cutoff=40), coherent_state(0.7, 1.0, min_cutoff=40)))
    for m, n in [(1, 1), (2, 2), (5, 0), (0, 3), (3, 1)]:
        assert g_mn(d, m, n).value == pytest.approx(1.0, abs=1e-10)


def test_thermal_product_gives_factorials():
    d = JointDistribution.product(thermal_distribution(0.4, min_cutoff=100), thermal_distribution(1.1, min_cutoff=100))
    for m, n in [(1, 1), (2, 2), (3, 1)]:
        assert g_mn(d, m, n).value == pytest.approx(math.factorial(m) * math.factorial(n), rel=1e-9)


def test_reduces_to_single_mode():
    d = joint_distribution(beamsplitter(tensor(coherent_state(1.0, 0.3), squeezed_vacuum(0.3))))
    assert g_mn(d, 2, 0).value == pytest.approx(g_n(d.marginal(1), 2).value, rel=1e-13)
    assert g_mn(d, 0, 3).value == pytest.approx(g_n(d.marginal(2), 3).value, rel=1e-13)


mixtures = st.integers(1, 5).flatmap(
    lambda k: st.tuples(
        st.lists(st.floats(0.0, 3.0), min_size=k, max_size=k),
        st.lists(st.floats(0.01, 1.0), min_size=k, max_size=k),
    )
)


def _mixture(spec, order):
    means, w = spec
    w = np.array(w) / np.sum(w)
    return poisson_mixture(means, w, max_order=order)


@given(mixtures, mixtures, st.sampled_from([(1, 1), (2, 2), (5, 0), (3, 2)]))
@settings(max_examples=200, deadline=None)
def test_separable_mixtures_respect_bound(spec1, spec2, order):
    m, n = order
    p1, p2 = _mixture(spec1, m), _mixture(spec2, n)
    assume(falling_moment(p1, 1) > 1e-3 and falling_moment(p2, 1) > 1e-3)
    g = g_mn(JointDistribution.product(p1, p2), m, n).value
    assert g >= 1 - 1e-9


def test_correlated_mixture_can_dip_below_unity():
    # anticorrelated coherent mixtures are classical yet not separable products
    a = np.outer(poisson_mixture([2.0], [1.0], 2), poisson_mixture([0.0], [1.0], 2)[:1])
    b = np.outer(poisson_mixture([0.0], [1.0], 2)[:1], poisson_mixture([2.0], [1.0], 2))
    size = max(a.shape[0], b.shape[1])
    p = np.zeros((size, size))
    p[: a.shape[0], :1] += 0.5 * a
    p[:1, : b.shape[1]] += 0.5 * b
    assert g_mn(JointDistribution(p), 1, 1).value < 1e-12


@pytest.mark.parametrize("eta", [0.9, 0.5, 0.125])
def test_loss_invariance(eta):
    d = output_distribution(math.sqrt(3 * 0.2), 1.0, 0.2, min_cutoff=12)
    lossy = loss_channel(d, eta, eta)
    for m, n in [(1, 1), (2, 2), (5, 0)]:
        assert g_mn(lossy, m, n).value == pytest.approx(g_mn(d, m, n).value, rel=1e-8)


@pytest.mark.parametrize("target,bound", [((1, 1), 1e-6), ((2, 2), 1e-6), ((5, 0), 1e-3)])
def test_hole_state_near_zero(target, bound):
    spec = HoleSpec(*target)
    sol = solve_holes(spec)[-1]
    d = output_distribution(math.sqrt(sol.gamma * spec.r), sol.phi, spec.r, min_cutoff=2 * sum(target) + 4)
    report = g_mn(d, *target, label="hole")
    assert report.value < bound
    assert report.nonclassical and report.classical_margin < -0.99
    assert report.label == "hole"


def test_zero_mean():
    d = joint_distribution(tensor(number_state(0), coherent_state(1.0)))
    with pytest.raises(ZeroMeanError):
        g_mn(d, 1, 1)
    with pytest.raises(ZeroMeanError):
        g_n(number_state(0).probabilities(), 2)
    # ZeroMeanError is also a ZeroDivisionError
    with pytest.raises(ZeroDivisionError):
        g_mn(d, 2, 0)


def test_order_validation():
    d = joint_distribution(tensor(coherent_state(1.0), coherent_state(1.0)))
    with pytest.raises(ValueError):
        g_mn(d, 0, 0)
    with pytest.raises(ValueError):
        g_n([0.5, 0.5], 0)


class TestClassicalFloor:
    def dist(self):
        return output_distribution(math.sqrt(3 * 0.2), 1.0, 0.2, min_cutoff=12)

    def test_moment_units(self):
        d = self.dist()
        assert classical_floor(d, 2, 2) == pytest.approx(mean_photon(d, 1) ** 2 * mean_photon(d, 2) ** 2)
        assert classical_floor(d, 5, 0) == pytest.approx(mean_photon(d, 1) ** 5)

    def test_poisson_saturates_click_floor(self):
        d = joint_distribution(tensor(coherent_state(0.9), coherent_state(1.2)))
        arrays = (DetectorArray(2, 0.125), DetectorArray(2, 0.125))
        assert classical_floor(d, 2, 2, arrays) == pytest.approx(coincidence_probability(d, 2, 2, *arrays), rel=1e-9)

    def test_unmonitored_mode(self):
        d = self.dist()
        arrays = (DetectorArray(5, 0.125), None)
        floor = classical_floor(d, 5, 0, arrays)
        assert 0 < floor < 1


def test_report_properties():
    r = CorrelationReport((2, 2), 0.25)
    assert r.classical_margin == -0.75 and r.nonclassical
    assert not CorrelationReport((1, 1), 1.0).nonclassical


def test_mixture_validation():
    with pytest.raises(ValueError):
        poisson_mixture([1.0, 2.0], [0.5])
    with pytest.raises(ValueError):
        poisson_mixture([1.0], [0.5])
    with pytest.raises(ValueError):
        poisson_mixture([-1.0], [1.0])

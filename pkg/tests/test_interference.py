"""Momentum-space discrimination: densities, likelihood ratio, power."""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from supertime.constants import CODATA
from supertime.errors import ValidationError
from supertime.interference import (
    Hypothesis,
    SuperposedWavepacket,
    discriminate,
    momentum_density_coherent,
    momentum_density_mixed,
    power_curve,
    required_precision,
    sample_momenta,
    spin_protocol_visibility,
)
from supertime.interference import noisy_density_coherent, noisy_density_mixed

PACKET = SuperposedWavepacket(sigma=0.05, d=1.0)  # s d = 10


def test_densities_nonnegative_and_normalized():
    for packet in (PACKET, SuperposedWavepacket(sigma=0.4, d=1.0, phase_phi=1.0)):
        for density in (momentum_density_coherent, momentum_density_mixed):
            total, _ = quad(lambda k: density(k, packet), -np.inf, np.inf,
                            limit=400)
            assert total == pytest.approx(1.0, abs=1e-8)
        k = np.linspace(-40.0, 40.0, 2001)
        assert np.all(momentum_density_coherent(k, packet) >= 0.0)
        assert np.all(momentum_density_mixed(k, packet) >= 0.0)


def test_noisy_densities_normalized():
    noise = 2.0 * PACKET.momentum_spread
    for density in (noisy_density_coherent, noisy_density_mixed):
        total, _ = quad(lambda k: density(k, PACKET, noise), -np.inf, np.inf,
                        limit=400)
        assert total == pytest.approx(1.0, abs=1e-8)


def test_noisy_density_matches_numerical_convolution():
    # Closed-form fringe parameters (c, V, beta) vs direct convolution of the
    # clean coherent density with the Gaussian noise kernel.
    packet = SuperposedWavepacket(sigma=0.2, d=1.0, phase_phi=0.4)
    noise = 3.0
    for k0 in (-2.0, 0.0, 1.3, 4.0):
        direct, _ = quad(
            lambda kp: momentum_density_coherent(kp, packet)
            * math.exp(-0.5 * ((k0 - kp) / noise) ** 2)
            / (math.sqrt(2.0 * math.pi) * noise),
            -np.inf, np.inf, limit=400)
        assert noisy_density_coherent(k0, packet, noise) == pytest.approx(
            direct, rel=1e-8)


def test_phase_average_of_coherent_density_is_the_mixture():
    rng = np.random.default_rng(12)
    ks = rng.normal(scale=2.0 * PACKET.momentum_spread, size=100)
    phis = np.linspace(0.0, 2.0 * math.pi, 512, endpoint=False)
    for k in ks:
        mean = np.mean([
            momentum_density_coherent(
                k, SuperposedWavepacket(sigma=PACKET.sigma, d=PACKET.d,
                                        phase_phi=float(phi)))
            for phi in phis
        ])
        assert mean == pytest.approx(
            float(momentum_density_mixed(k, PACKET)), abs=1e-8)


def test_required_precision_is_pi_hbar_over_d():
    assert required_precision(1e-6) == pytest.approx(
        math.pi * CODATA.hbar / 1e-6, rel=1e-12)
    with pytest.raises(ValidationError):
        required_precision(0.0)


def test_sampler_matches_density_histogram():
    packet = SuperposedWavepacket(sigma=0.1, d=1.0)
    samples = sample_momenta(packet, Hypothesis.COHERENT, 200_000, 0.0, seed=1)
    edges = np.linspace(-15.0, 15.0, 61)
    hist, _ = np.histogram(samples, bins=edges, density=True)
    # Bin-averaged density (the fringes curve strongly within a bin, so the
    # midpoint value would carry a systematic binning bias).
    fine = np.linspace(-15.0, 15.0, 60 * 32 + 1)
    rho = momentum_density_coherent(fine, packet)
    expected = rho[:-1].reshape(60, 32).mean(axis=1)
    mask = expected > 5e-3
    assert np.max(np.abs(hist[mask] - expected[mask]) / expected[mask]) < 0.15


def test_sampler_reproducible_and_noise_added():
    a = sample_momenta(PACKET, Hypothesis.MIXED, 1000, 0.5, seed=3)
    b = sample_momenta(PACKET, Hypothesis.MIXED, 1000, 0.5, seed=3)
    assert np.array_equal(a, b)
    c = sample_momenta(PACKET, Hypothesis.MIXED, 1000, 0.5, seed=4)
    assert not np.array_equal(a, c)


def test_llr_decides_correctly_at_low_noise():
    noise = 0.02 * math.pi / PACKET.d
    coh = sample_momenta(PACKET, Hypothesis.COHERENT, 5000, noise, seed=5)
    mix = sample_momenta(PACKET, Hypothesis.MIXED, 5000, noise, seed=6)
    assert discriminate(coh, PACKET, noise).decision is Hypothesis.COHERENT
    assert discriminate(mix, PACKET, noise).decision is Hypothesis.MIXED


def test_llr_finite_below_machine_epsilon_visibility():
    # Deep-noise fringe visibility ~1e-20: the statistic must stay nonzero
    # instead of collapsing to log(1) = 0.
    noise = 10.0 * math.pi / PACKET.d
    samples = sample_momenta(PACKET, Hypothesis.COHERENT, 1000, noise, seed=7)
    result = discriminate(samples, PACKET, noise)
    assert result.log_likelihood_ratio != 0.0
    assert abs(result.log_likelihood_ratio) < 1e-12


def test_power_monotone_non_increasing_with_crn():
    levels = np.array([0.1, 0.3, 0.5, 0.7, 0.85, 0.95, 1.05, 1.15, 1.25, 10.0])
    packet = SuperposedWavepacket(sigma=0.1, d=1.0)  # s d = 5
    powers = power_curve(packet, 10_000, levels * math.pi, trials=200, seed=0)
    assert all(b <= a for a, b in zip(powers, powers[1:]))
    assert powers[0] > 0.99


def test_power_crossing_near_required_precision():
    # Noise where power crosses 0.75 is within a factor 3 of pi/d for
    # s d in {5, 20, 100}.
    for sd in (5.0, 20.0, 100.0):
        packet = SuperposedWavepacket(sigma=1.0 / (2.0 * sd), d=1.0)
        levels = math.pi * np.array([1.0 / 3.0, 3.0])
        lo, hi = power_curve(packet, 4000, levels, trials=60, seed=2)
        assert lo > 0.75 > hi, f"crossing outside [pi/3, 3 pi] for sd={sd}"


def test_power_curve_deterministic_in_seed():
    levels = [0.5 * math.pi, 2.0 * math.pi]
    a = power_curve(PACKET, 2000, levels, trials=30, seed=11)
    b = power_curve(PACKET, 2000, levels, trials=30, seed=11)
    assert np.array_equal(a, b)


def test_spin_visibility_monotone_in_t0_and_bounded():
    q, d = 1e-15, 1e-9
    t0s = np.logspace(-14, -10, 12)
    vis = [spin_protocol_visibility(q, d, float(t0)).visibility for t0 in t0s]
    assert all(0.0 < v <= 1.0 for v in vis)
    assert all(b >= a for a, b in zip(vis, vis[1:]))


def test_spin_protocol_probabilities():
    res = spin_protocol_visibility(1e-15, 1e-9, 1e-12, kappa=2)
    assert res.p_plus_coherent == pytest.approx(0.5 * (1.0 + res.visibility))
    assert res.p_plus_collapsed == 0.5
    base = spin_protocol_visibility(1e-15, 1e-9, 1e-12, kappa=1)
    assert res.visibility == pytest.approx(base.visibility**2, rel=1e-12)
    with pytest.raises(ValidationError):
        spin_protocol_visibility(1e-15, 1e-9, 1e-12, kappa=3)


def test_exact_normalization_includes_packet_overlap():
    # At d = 0 with phi = 0 the two packets coincide: the density is the
    # single-packet Gaussian, not twice it.
    packet = SuperposedWavepacket(sigma=0.3, d=0.0)
    total, _ = quad(lambda k: momentum_density_coherent(k, packet),
                    -np.inf, np.inf)
    assert total == pytest.approx(1.0, abs=1e-8)


def test_validation():
    with pytest.raises(ValidationError):
        SuperposedWavepacket(sigma=0.0, d=1.0)
    with pytest.raises(ValidationError):
        SuperposedWavepacket(sigma=1.0, d=-1.0)
    with pytest.raises(ValidationError):
        sample_momenta(PACKET, Hypothesis.MIXED, 0, 0.0, seed=0)
    with pytest.raises(ValidationError):
        sample_momenta(PACKET, Hypothesis.MIXED, 10, -1.0, seed=0)
    with pytest.raises(ValidationError):
        discriminate(np.array([]), PACKET, 0.0)

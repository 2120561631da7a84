import numpy as np
import numpy.testing as npt
import pytest

from conftest import brute_force_channel, random_symbols

from mcwave import channel

from mcwave import (
    ArgumentError,
    ChannelRealization,
    LinkState,
    add_awgn,
    build_channel_matrix,
    effective_gain,
    link_matrix,
    precompensate,
    sample_links
)

class TestSampleLinks(object):
    def test_never_blocks_without_blocking_rate(self, rng):
        realization = sample_links(0.0, 3.0, 0.015, 64, rng)

        assert realization.blocked_count == 0

    def test_always_blocks_at_full_blocking_rate(self, rng):
        realization = sample_links(1.0, 3.0, 0.015, 16, rng)

        assert realization.all_blocked

    def test_blocking_frequency_matches_rate(self, rng):
        realization = sample_links(0.3, 3.0, 0.015, 20000, rng)

        assert abs(realization.blocked_count / 20000 - 0.3) < 0.02

    def test_offsets_lie_within_bounds(self, rng):
        realization = sample_links(0.5, 2.5, 0.02, 500, rng)

        taus = np.array([link.tau for link in realization.links])
        nus  = np.array([link.nu for link in realization.links])

        assert np.all((taus >= 0) & (taus <= 2.5))
        assert np.all(np.abs(nus) <= 0.02)

    def test_is_reproducible_from_seed(self):
        first  = sample_links(0.2, 3.0, 0.015, 4, np.random.default_rng(7), seed=7)
        second = sample_links(0.2, 3.0, 0.015, 4, np.random.default_rng(7), seed=7)

        assert first == second

    def test_blockage_does_not_depend_on_offset_stream(self):
        first  = sample_links(0.5, 3.0, 0.015, 32, np.random.default_rng(1), np.random.default_rng(2))
        second = sample_links(0.5, 3.0, 0.015, 32, np.random.default_rng(1), np.random.default_rng(3))

        assert [link.blocked for link in first.links] == [link.blocked for link in second.links]

    @pytest.mark.parametrize('q, tau_max, nu_max, m_ap', [(-0.1, 1, 0, 4), (1.1, 1, 0, 4), (0.2, -1, 0, 4), (0.2, 1, -0.1, 4), (0.2, 1, 0, 0)])
    def test_rejects_invalid_arguments(self, rng, q, tau_max, nu_max, m_ap):
        with pytest.raises(ArgumentError):
            sample_links(q, tau_max, nu_max, m_ap, rng)

class TestEffectiveGain(object):
    def test_is_zero_for_blocked_link(self, short_pulse):
        assert effective_gain(LinkState(True, 0.0, 0.0), 3, 3, short_pulse, 8) == 0

    def test_is_identity_for_aligned_link(self, short_pulse):
        link = LinkState(False, 0.0, 0.0)

        npt.assert_allclose(effective_gain(link, 5, 5, short_pulse, 8), 1.0, atol=1e-12)

        assert abs(effective_gain(link, 5, 6, short_pulse, 8)) < 5e-2

    def test_rotates_with_transmit_index(self, short_pulse):
        link = LinkState(False, 0.0, 0.4)

        first  = effective_gain(link, 2, 2, short_pulse, 8)
        second = effective_gain(link, 3, 3, short_pulse, 8)

        npt.assert_allclose(second / first, np.exp(2j * np.pi * 0.4 / 8), atol=1e-12)

    def test_rejects_negative_indices(self, short_pulse):
        with pytest.raises(ArgumentError):
            effective_gain(LinkState(False, 0.0, 0.0), -1, 0, short_pulse, 8)

class TestBuildChannelMatrix(object):
    def test_matches_entrywise_evaluation(self, two_links, short_pulse):
        fast = build_channel_matrix(two_links, 12, short_pulse, 4)

        npt.assert_allclose(fast.matrix, brute_force_channel(two_links, 12, short_pulse, 4), atol=1e-12)

    def test_sums_single_link_matrices(self, two_links, short_pulse):
        total = sum(link_matrix(link, 20, short_pulse, 8) for link in two_links.links)

        npt.assert_allclose(build_channel_matrix(two_links, 20, short_pulse, 8).matrix, total, atol=1e-12)

    def test_is_zero_when_all_links_blocked(self, short_pulse):
        realization = ChannelRealization((LinkState(True, 1.0, 0.1), LinkState(True, 0.0, 0.0)))

        npt.assert_array_equal(build_channel_matrix(realization, 10, short_pulse, 4).matrix, 0)

    def test_bandwidth_bounds_non_zero_entries(self, two_links, short_pulse):
        g = build_channel_matrix(two_links, 40, short_pulse, 8)

        rows, cols = np.nonzero(g.matrix)

        assert np.all(np.abs(cols - rows) <= g.bandwidth)

    def test_top_left_block_does_not_depend_on_length(self, two_links, short_pulse):
        short = build_channel_matrix(two_links, 10, short_pulse, 4).matrix
        long  = build_channel_matrix(two_links, 17, short_pulse, 4).matrix

        npt.assert_allclose(long[:10, :10], short, atol=1e-14)

    def test_apply_multiplies_by_matrix(self, two_links, short_pulse, rng):
        g = build_channel_matrix(two_links, 16, short_pulse, 4)

        x = random_symbols(rng, 16)

        npt.assert_allclose(g.apply(x), g.matrix @ x)

    def test_draws_taps_from_one_ambiguity_grid_per_link(self, two_links, short_pulse, monkeypatch):
        grids = []

        original = channel.build_ambiguity_grid

        def recorded(*args):
            grids.append(original(*args))

            return grids[-1]

        monkeypatch.setattr(channel, 'build_ambiguity_grid', recorded)

        blocked = ChannelRealization((*two_links.links, LinkState(True, 0.9, 0.1)), 0)

        build_channel_matrix(blocked, 12, short_pulse, 4)

        assert len(grids) == 2

        for grid, link in zip(grids, two_links.links):
            npt.assert_allclose(np.diff(grid.taus), 1.0, atol=1e-12)
            npt.assert_allclose(grid.nus, link.doppler_per_sample(4))

            offset = grid.taus[0] - link.tau

            assert offset == pytest.approx(round(offset), abs=1e-9)

    def test_rejects_non_positive_length(self, two_links, short_pulse):
        with pytest.raises(ArgumentError):
            build_channel_matrix(two_links, 0, short_pulse, 4)

class TestAddAwgn(object):
    def test_noise_variance_matches_density(self, rng):
        noisy = add_awgn(np.zeros(200000), 0.25, rng)

        npt.assert_allclose(np.mean(np.abs(noisy) ** 2), 0.25, rtol=0.02)
        npt.assert_allclose(np.var(noisy.real), 0.125, rtol=0.03)

    def test_returns_copy_without_noise(self, rng):
        signal = random_symbols(rng, 8)

        noisy = add_awgn(signal, 0.0, rng)

        npt.assert_array_equal(noisy, signal)

        assert noisy is not signal

    def test_rejects_negative_density(self, rng):
        with pytest.raises(ArgumentError):
            add_awgn(np.ones(4), -1.0, rng)

class TestPrecompensate(object):
    def test_passes_through_by_default(self, two_links):
        assert precompensate(two_links) is two_links

    def test_applies_hook_to_every_link(self, two_links):
        compensated = precompensate(two_links, lambda link: LinkState(link.blocked, 0.0, 0.0))

        assert all(link.tau == 0 and link.nu == 0 for link in compensated.links)
        assert compensated.rng_seed == two_links.rng_seed

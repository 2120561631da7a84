import numpy as np
import numpy.testing as npt
import pytest

from conftest import random_symbols

from mcwave import (
    Alphabet,
    ArgumentError,
    BlockFreqChannel,
    DimensionError,
    FrameGeometry,
    Waveform,
    block_channels,
    channel_row_energy,
    equalize_ofdm,
    equalize_sc,
    map_bits,
    mmse_weights,
    receive_front_end,
    transmit
)

def _delay_channel(length: int, delay: int) -> np.ndarray:
    return np.eye(length, k=-delay)

def _run(geom: FrameGeometry, g: np.ndarray, x: np.ndarray, n0: float = 0.0) -> np.ndarray:
    rx = receive_front_end(g @ transmit(x, geom).tx_samples, geom.waveform, geom, g)

    equalizer = equalize_sc if geom.waveform is Waveform.Sc else equalize_ofdm

    return equalizer(rx, block_channels(rx, n0, 1.0))

class TestMmseWeights(object):
    def test_matches_elementwise_formula(self, rng):
        h = random_symbols(rng, 25).reshape(5, 5)

        weights = mmse_weights(BlockFreqChannel(h, 0.3, 2.0)).diagonal

        for l in range(5):
            expected = 2.0 * np.conj(h[l, l]) / (2.0 * np.sum(np.abs(h[l]) ** 2) + 0.3)

            npt.assert_allclose(weights[l], expected)

    def test_inverts_diagonal_channel_without_noise(self, rng):
        h = np.diag(random_symbols(rng, 6))

        weights = mmse_weights(BlockFreqChannel(h, 0.0, 1.0)).diagonal

        npt.assert_allclose(weights * np.diagonal(h), 1.0)

    def test_dead_bins_get_zero_weight(self):
        weights = mmse_weights(BlockFreqChannel(np.zeros((3, 3)), 0.0, 1.0)).diagonal

        npt.assert_array_equal(weights, 0)

    def test_shrinks_with_noise(self):
        h = np.eye(2)

        quiet = mmse_weights(BlockFreqChannel(h, 0.01, 1.0)).diagonal
        loud  = mmse_weights(BlockFreqChannel(h, 1.0, 1.0)).diagonal

        assert np.all(np.abs(loud) < np.abs(quiet))

    def test_reuses_precomputed_row_energy(self, rng):
        h = random_symbols(rng, 36).reshape(6, 6)

        energy = channel_row_energy(h)

        npt.assert_allclose(energy, [np.sum(np.abs(row) ** 2) for row in h])

        for es in (0.25, 1.0, 4.0):
            channel = BlockFreqChannel(h, 0.1, es)

            npt.assert_array_equal(mmse_weights(channel, energy).diagonal, mmse_weights(channel).diagonal)

    def test_rejects_row_energy_of_other_length(self):
        with pytest.raises(DimensionError):
            mmse_weights(BlockFreqChannel(np.eye(4), 0.1, 1.0), np.ones(3))

class TestBlockFreqChannel(object):
    def test_rejects_non_square_matrix(self):
        with pytest.raises(DimensionError):
            BlockFreqChannel(np.ones((2, 3)), 0.0, 1.0)

    @pytest.mark.parametrize('n0, es', [(-1.0, 1.0), (0.0, 0.0), (np.inf, 1.0)])
    def test_rejects_invalid_statistics(self, n0, es):
        with pytest.raises(ArgumentError):
            BlockFreqChannel(np.eye(2), n0, es)

class TestCirculantExactness(object):
    @pytest.mark.parametrize('waveform', [Waveform.Sc, Waveform.Ofdm])
    @pytest.mark.parametrize('delay', [0, 1, 2, 3])
    def test_recovers_symbols_for_integer_delay(self, rng, waveform, delay):
        geom = FrameGeometry(waveform, 16, 4, 3)

        alphabet = Alphabet.qpsk()

        x = map_bits(rng.integers(0, 2, 2 * geom.info_symbols), alphabet)

        x_hat = _run(geom, _delay_channel(geom.tx_len, delay), x)

        assert np.max(np.abs(x_hat - x)) <= 1e-6

    def test_recovers_symbols_for_multipath_within_prefix(self, rng):
        geom = FrameGeometry(Waveform.Sc, 16, 4, 3)

        g = _delay_channel(geom.tx_len, 0) + 0.5 * _delay_channel(geom.tx_len, 2) - 0.2j * _delay_channel(geom.tx_len, 3)

        x = random_symbols(rng, geom.info_symbols)

        npt.assert_allclose(_run(geom, g, x), x, atol=1e-9)

class TestEqualizers(object):
    def test_sc_output_length(self, rng):
        geom = FrameGeometry(Waveform.Sc, 8, 4, 2)

        x = random_symbols(rng, geom.info_symbols)

        assert _run(geom, np.eye(geom.tx_len), x, 0.1).size == geom.info_symbols

    def test_noise_shrinks_estimates(self, rng):
        geom = FrameGeometry(Waveform.Ofdm, 8, 4, 2)

        x = random_symbols(rng, geom.info_symbols)

        npt.assert_allclose(_run(geom, np.eye(geom.tx_len), x, 1.0), x / 2.0, atol=1e-12)

    def test_rejects_frame_of_other_waveform(self, rng):
        geom = FrameGeometry(Waveform.Ofdm, 8, 4, 2)

        rx = receive_front_end(np.zeros(geom.tx_len), geom.waveform, geom, np.eye(geom.tx_len))

        with pytest.raises(ArgumentError):
            equalize_sc(rx, block_channels(rx, 0.1, 1.0))

    def test_rejects_missing_block_channels(self):
        geom = FrameGeometry(Waveform.Sc, 8, 4, 2)

        rx = receive_front_end(np.zeros(geom.tx_len), geom.waveform, geom, np.eye(geom.tx_len))

        with pytest.raises(DimensionError):
            equalize_sc(rx, block_channels(rx, 0.1, 1.0)[:-1])

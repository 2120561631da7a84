import numpy as np
import numpy.testing as npt
import pytest

from conftest import random_symbols

from mcwave import ArgumentError, DimensionError, FrameGeometry, Waveform, block_split, cp_add, cp_remove

from mcwave.framing import block_cp_add_matrix, cp_add_matrix, cp_remove_matrix

class TestFrameGeometry(object):
    @pytest.mark.parametrize('waveform', [Waveform.Sc, Waveform.Ofdm])
    def test_block_waveform_lengths(self, waveform):
        geom = FrameGeometry(waveform, 32, 16, 3)

        assert geom.block_count == 16
        assert geom.info_per_block == 29
        assert geom.info_symbols == 464
        assert geom.total_cp == 48
        assert geom.tx_len == 512

    def test_otfs_lengths(self):
        geom = FrameGeometry(Waveform.Otfs, 32, 16, 3)

        assert geom.block_count == 1
        assert geom.info_symbols == 512
        assert geom.total_cp == 3
        assert geom.tx_len == 515

    def test_compares_by_value(self):
        assert FrameGeometry(Waveform.Sc, 8, 4, 2) == FrameGeometry(Waveform.Sc, 8, 4, 2)
        assert FrameGeometry(Waveform.Sc, 8, 4, 2) != FrameGeometry(Waveform.Ofdm, 8, 4, 2)
        assert len({FrameGeometry(Waveform.Otfs, 8, 4, 2), FrameGeometry(Waveform.Otfs, 8, 4, 2)}) == 1

    def test_repr_names_waveform_and_length(self):
        assert repr(FrameGeometry(Waveform.Otfs, 4, 4, 1)) == 'FrameGeometry<OTFS, M=4, N=4, l_cp=1, tx_len=17>'

    @pytest.mark.parametrize('m, n, l_cp', [(0, 4, 0), (4, 0, 0), (4, 4, 4), (4, 4, -1), (4, 4, 3)])
    def test_rejects_invalid_dimensions(self, m, n, l_cp):
        with pytest.raises(ArgumentError):
            FrameGeometry(Waveform.Sc, m, n, l_cp)

class TestCyclicPrefix(object):
    @pytest.mark.parametrize('waveform', list(Waveform))
    def test_matches_dense_matrices(self, rng, waveform):
        geom = FrameGeometry(waveform, 8, 4, 2)

        x = random_symbols(rng, geom.info_symbols)

        y = cp_add(x, geom)

        npt.assert_allclose(y, cp_add_matrix(geom) @ x)
        npt.assert_allclose(cp_remove(y, geom), cp_remove_matrix(geom) @ y)

    def test_prefix_copies_block_tail(self, rng):
        geom = FrameGeometry(Waveform.Sc, 8, 4, 3)

        x = random_symbols(rng, geom.info_symbols)

        blocks = cp_add(x, geom).reshape(4, 8)

        npt.assert_array_equal(blocks[:, :3], blocks[:, -3:])

    def test_removal_inverts_insertion(self, rng):
        geom = FrameGeometry(Waveform.Otfs, 4, 4, 1)

        x = random_symbols(rng, geom.info_symbols)

        npt.assert_array_equal(cp_remove(cp_add(x, geom), geom), x)

    def test_zero_prefix_is_identity(self, rng):
        geom = FrameGeometry(Waveform.Ofdm, 4, 2, 0)

        x = random_symbols(rng, 8)

        npt.assert_array_equal(cp_add(x, geom), x)

    def test_block_matrix_stacks_identity_tail(self):
        npt.assert_array_equal(block_cp_add_matrix(3, 1), [[0, 0, 1], [1, 0, 0], [0, 1, 0], [0, 0, 1]])

    def test_rejects_length_mismatch(self):
        geom = FrameGeometry(Waveform.Sc, 8, 4, 2)

        with pytest.raises(DimensionError):
            cp_add(np.ones(32), geom)

        with pytest.raises(DimensionError):
            cp_remove(np.ones(24), geom)

class TestBlockSplit(object):
    def test_splits_into_equal_blocks(self, rng):
        geom = FrameGeometry(Waveform.Ofdm, 8, 4, 2)

        x = random_symbols(rng, geom.info_symbols)

        blocks = block_split(x, geom)

        assert len(blocks) == 4
        assert all(block.size == 6 for block in blocks)

        npt.assert_array_equal(np.concatenate(blocks), x)

    def test_rejects_indivisible_length(self):
        with pytest.raises(DimensionError):
            block_split(np.ones(7), FrameGeometry(Waveform.Sc, 8, 4, 2))

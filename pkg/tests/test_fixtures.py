import json

import numpy as np
import numpy.testing as npt
import pytest

from pathlib import Path

from conftest import brute_force_channel

from mcwave import ArgumentError, EmissionError, FixtureScale, Waveform, build_channel_matrix, frame_seed, sample_links

from mcwave.fixtures import (
    FIXTURE_PULSE,
    FIXTURE_Q,
    build_fixture,
    decode_complex,
    encode_complex,
    fixture_name,
    generate_fixture,
    load_fixture,
    main
)

from mcwave.harness import frame_streams

GOLDEN_DIRECTORY = Path(__file__).resolve().parent / 'fixtures'

@pytest.fixture(scope='module')
def golden():
    path = GOLDEN_DIRECTORY / fixture_name(FixtureScale.Tiny, 0)

    if not path.exists():
        generate_fixture(FixtureScale.Tiny, 0, GOLDEN_DIRECTORY)

    return load_fixture(path)

@pytest.fixture(scope='module')
def fresh():
    return build_fixture(FixtureScale.Tiny, 0)

@pytest.fixture(scope='module')
def fixture_path(tmp_path_factory):
    return generate_fixture(FixtureScale.Tiny, 0, tmp_path_factory.mktemp('fixtures'))

@pytest.fixture(scope='module')
def fixture(fixture_path):
    return load_fixture(fixture_path)

class TestComplexEncoding(object):
    def test_round_trips_matrix(self):
        value = np.array([[1 + 2j, -0.5j], [3.0, 0.25 - 1j]])

        assert encode_complex(value)[0][0] == [1.0, 2.0]

        npt.assert_array_equal(decode_complex(encode_complex(value)), value)

    def test_rejects_non_pairs(self):
        with pytest.raises(ArgumentError):
            decode_complex([[1.0, 2.0, 3.0]])

class TestFixture(object):
    def test_file_is_named_after_scale_and_seed(self, fixture_path):
        assert fixture_path.name == fixture_name(FixtureScale.Tiny, 0) == 'fixture_tiny_seed0.json'

    def test_is_self_describing(self, fixture_path):
        contents = json.loads(fixture_path.read_text())

        assert contents['format'] == 'mcwave-fixture'
        assert (contents['M'], contents['N'], contents['l_cp']) == (4, 4, 1)
        assert set(contents['waveforms']) == {'SC', 'OFDM', 'OTFS'}

    def test_generation_is_deterministic(self, fixture_path, tmp_path):
        again = generate_fixture(FixtureScale.Tiny, 0, tmp_path)

        assert again.read_text() == fixture_path.read_text()

    def test_seed_changes_contents(self, fixture_path, tmp_path):
        other = generate_fixture(FixtureScale.Tiny, 1, tmp_path)

        assert other.read_text() != fixture_path.read_text()

    def test_channel_matrix_matches_entrywise_construction(self, fixture):
        for waveform in Waveform:
            geom = fixture.geometry(waveform)

            expected = brute_force_channel(fixture.realization, geom.tx_len, FIXTURE_PULSE, geom.m)

            npt.assert_allclose(fixture.channel_matrices[waveform], expected, atol=1e-10)

    def test_channel_matrix_reproduces_from_realization(self, fixture):
        geom = fixture.geometry(Waveform.Otfs)

        g = build_channel_matrix(fixture.realization, geom.tx_len, FIXTURE_PULSE, geom.m).matrix

        npt.assert_array_equal(g, fixture.channel_matrices[Waveform.Otfs])

    def test_frequency_channels_have_block_shapes(self, fixture):
        [otfs] = fixture.freq_channels[Waveform.Otfs]

        assert otfs.shape == (16, 16)

        for waveform in (Waveform.Sc, Waveform.Ofdm):
            blocks = fixture.freq_channels[waveform]

            assert len(blocks) == 4
            assert all(block.shape == (3, 3) for block in blocks)

    def test_first_weights_follow_mmse_rule(self, fixture):
        [h] = fixture.freq_channels[Waveform.Otfs]

        expected = np.zeros(h.shape[0], dtype=np.complex128)

        for l in range(h.shape[0]):
            expected[l] = np.conj(h[l, l]) / (np.sum(np.abs(h[l]) ** 2) + fixture.n0)

        npt.assert_allclose(fixture.first_weights, expected, atol=1e-12)

    def test_trace_is_consistent(self, fixture):
        assert fixture.symbols.shape == fixture.received.shape == fixture.estimate.shape == (16,)
        assert [entry.iteration for entry in fixture.diagnostics] == list(range(1, len(fixture.diagnostics) + 1))
        assert fixture.diagnostics[0].prior_variance == 1.0
        assert all(entry.mse is not None for entry in fixture.diagnostics)

    def test_rejects_foreign_file(self, tmp_path):
        path = tmp_path / 'other.json'

        path.write_text(json.dumps({'format': 'something-else'}))

        with pytest.raises(ArgumentError):
            load_fixture(path)

    def test_rejects_missing_file(self, tmp_path):
        with pytest.raises(EmissionError):
            load_fixture(tmp_path / 'missing.json')

class TestGoldenFixture(object):
    def test_realization_is_unchanged(self, golden, fresh):
        assert golden.realization == fresh.realization
        assert golden.realization.rng_seed == fresh.realization.rng_seed

    def test_channels_are_unchanged(self, golden, fresh):
        for waveform in Waveform:
            npt.assert_allclose(golden.channel_matrices[waveform], fresh.channel_matrices[waveform], atol=1e-12)

            assert len(golden.freq_channels[waveform]) == len(fresh.freq_channels[waveform])

            for stored, drawn in zip(golden.freq_channels[waveform], fresh.freq_channels[waveform]):
                npt.assert_allclose(stored, drawn, atol=1e-12)

    def test_detector_trace_is_unchanged(self, golden, fresh):
        assert golden.n0 == fresh.n0

        npt.assert_array_equal(golden.symbols, fresh.symbols)
        npt.assert_allclose(golden.received, fresh.received, atol=1e-12)
        npt.assert_allclose(golden.first_weights, fresh.first_weights, atol=1e-12)
        npt.assert_allclose(golden.estimate, fresh.estimate, atol=1e-9)

        assert len(golden.diagnostics) == len(fresh.diagnostics)

        for stored, drawn in zip(golden.diagnostics, fresh.diagnostics):
            assert stored.iteration == drawn.iteration

            npt.assert_allclose(stored[1:], drawn[1:], rtol=1e-9)

    def test_realization_replays_from_stored_frame_seed(self, golden):
        _, blockage_seed, offset_seed, _ = frame_streams(golden.realization.rng_seed)

        assert golden.realization.rng_seed == frame_seed(golden.seed, 0)

        replayed = sample_links(
            FIXTURE_Q,
            float(golden.l_cp),
            0.015,
            len(golden.realization.links),
            np.random.default_rng(blockage_seed),
            np.random.default_rng(offset_seed),
            seed=golden.realization.rng_seed
        )

        assert replayed == golden.realization

def test_command_line_writes_fixture(tmp_path):
    assert main(['--scale', 'small', '--seed', '3', '--out', str(tmp_path)]) == 0

    fixture = load_fixture(tmp_path / 'fixture_small_seed3.json')

    assert fixture.dimensions == (8, 4)
    assert fixture.channel_matrices[Waveform.Sc].shape == (32, 32)

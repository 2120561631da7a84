"""
Golden fixtures for hermetic tests.

A fixture is a self-describing JSON file holding one seeded channel realization, the
dense time domain channel and the per-block frequency domain channels of every waveform,
and a step by step trace of the cross-domain detector on one OTFS frame. Complex numbers
are written as ``[re, im]`` pairs.

The golden tiny fixture under ``tests/fixtures`` is written by the first test run that
finds it missing and compared against a fresh draw on every later run. After a
deliberate change to the model it is regenerated explicitly::

    python -m mcwave.fixtures --scale tiny --seed 0 --out tests/fixtures
"""
from . import __version__

from .cdid         import CdidConfig, run_cdid
from .channel      import add_awgn, build_channel_matrix, sample_links
from .config       import FixtureScale, Waveform
from .equalization import mmse_weights
from .errors       import ArgumentError, EmissionError
from .framing      import FrameGeometry
from .harness      import frame_seed, frame_streams
from .mapping      import Alphabet, map_bits
from .modems       import receive_front_end, transmit
from .numerics     import dft
from .pulse        import PulseShape

from .data._types import IterationDiagnostics
from .data.frame  import BlockFreqChannel
from .data.link   import ChannelRealization

import json
import logging
import sys

import numpy as np

from argparse     import ArgumentParser
from dataclasses  import dataclass
from numpy        import ndarray
from numpy.random import default_rng
from pathlib      import Path
from typing       import Final, Self, Sequence

logger = logging.getLogger(__name__)

FIXTURE_FORMAT: Final[str] = 'mcwave-fixture'
"""str: The format tag of a fixture file."""

FIXTURE_M_AP: Final[int] = 2
"""int: The number of access points of a fixture."""

FIXTURE_L_CP: Final[int] = 1
"""int: The cyclic prefix length of a fixture."""

FIXTURE_Q: Final[float] = 0.2
"""float: The blocking rate a fixture realization is drawn with."""

FIXTURE_SNR_DB: Final[float] = 10.0
"""float: The SNR of the traced OTFS frame."""

FIXTURE_PULSE: Final[PulseShape] = PulseShape(rolloff=0.3, truncation=4, oversampling=16)
"""PulseShape: The transmit pulse of a fixture."""

def encode_complex(value) -> list:
    """
    Encodes a complex array as nested lists ending in ``[re, im]`` pairs.

    Parameters
    ----------
    value : array_like
        A complex scalar, vector or matrix.

    Returns
    -------
    list
        The nested pairs.
    """
    array = np.asarray(value, dtype=np.complex128)

    return np.stack((array.real, array.imag), axis=-1).tolist()

def decode_complex(data) -> ndarray:
    """
    Decodes nested ``[re, im]`` pairs written by `encode_complex`.

    Parameters
    ----------
    data : list
        The nested pairs.

    Raises
    ------
    ArgumentError
        If the innermost lists are not pairs.

    Returns
    -------
    ndarray
        The complex array.
    """
    pairs = np.asarray(data, dtype=np.float64)

    if pairs.ndim == 0 or pairs.shape[-1] != 2:
        raise ArgumentError('Complex values must be encoded as [re, im] pairs.')

    return pairs[..., 0] + 1j * pairs[..., 1]

@dataclass(frozen=True, eq=False)
class Fixture:
    """Represents a decoded golden fixture."""
    scale: FixtureScale
    """FixtureScale: The grid size of the fixture."""

    seed: int
    """int: The master seed the fixture was drawn from."""

    l_cp: int
    """int: The cyclic prefix length."""

    realization: ChannelRealization
    """ChannelRealization: The drawn link states."""

    channel_matrices: dict[Waveform, ndarray]
    """dict[Waveform, ndarray]: The dense ``tx_len x tx_len`` time domain channel of every waveform."""

    freq_channels: dict[Waveform, tuple[ndarray, ...]]
    """dict[Waveform, tuple[ndarray, ...]]: The frequency domain channel of every block and waveform."""

    n0: float
    """float: The noise variance of the traced OTFS frame."""

    symbols: ndarray
    """ndarray: The transmitted delay-Doppler symbols of the traced frame."""

    received: ndarray
    """ndarray: The received frequency domain samples ``q`` of the traced frame."""

    first_weights: ndarray
    """ndarray: The MMSE weights of the first detector iteration."""

    diagnostics: tuple[IterationDiagnostics, ...]
    """tuple[IterationDiagnostics, ...]: The per-iteration detector bookkeeping."""

    estimate: ndarray
    """ndarray: The final delay-Doppler estimates of the traced frame."""

    @property
    def dimensions(self) -> tuple[int, int]:
        """
        Gets the grid dimensions.

        Returns
        -------
        tuple[int, int]
            M and N.
        """
        return self.scale.dimensions

    def geometry(self, waveform: Waveform) -> FrameGeometry:
        """
        Gets the frame geometry of a waveform at the fixture scale.

        Parameters
        ----------
        waveform : Waveform
            The waveform.

        Returns
        -------
        FrameGeometry
            The geometry.
        """
        m, n = self.dimensions

        return FrameGeometry(waveform, m, n, self.l_cp)

    @classmethod
    def parse(cls, data: dict) -> Self:
        """
        Parses a dictionary written by `as_serializable`.

        Parameters
        ----------
        data : dict
            The fixture contents.

        Raises
        ------
        ArgumentError
            If the dictionary is not a fixture.

        Returns
        -------
        Fixture
            An instance of the `Fixture` class populated with the parsed data.
        """
        if data.get('format') != FIXTURE_FORMAT:
            raise ArgumentError('Not a fixture file.')

        waveforms = {Waveform.parse(tag): values for tag, values in data['waveforms'].items()}

        trace = data['cdid']

        return cls(
            scale=FixtureScale[data['scale'].capitalize()],
            seed=int(data['seed']),
            l_cp=int(data['l_cp']),
            realization=ChannelRealization.parse(data['realization']),
            channel_matrices={
                waveform: decode_complex(values['G']) for waveform, values in waveforms.items()
            },
            freq_channels={
                waveform: tuple(decode_complex(h) for h in values['H']) for waveform, values in waveforms.items()
            },
            n0=float(trace['n0']),
            symbols=decode_complex(trace['symbols']),
            received=decode_complex(trace['received']),
            first_weights=decode_complex(trace['first_weights']),
            diagnostics=tuple(IterationDiagnostics(**entry) for entry in trace['diagnostics']),
            estimate=decode_complex(trace['estimate'])
        )

    def as_serializable(self) -> dict:
        """
        Returns a dictionary with JSON serializable values.

        Returns
        -------
        dict
            The self-describing fixture contents.
        """
        m, n = self.dimensions

        return {
            'format':      FIXTURE_FORMAT,
            'version':     __version__,
            'scale':       self.scale.name.lower(),
            'seed':        self.seed,
            'M':           m,
            'N':           n,
            'l_cp':        self.l_cp,
            'realization': self.realization.as_serializable(),
            'waveforms': {
                waveform.tag: {
                    'G': encode_complex(self.channel_matrices[waveform]),
                    'H': [encode_complex(h) for h in self.freq_channels[waveform]]
                }
                for waveform in self.channel_matrices
            },
            'cdid': {
                'snr_db':        FIXTURE_SNR_DB,
                'n0':            self.n0,
                'symbols':       encode_complex(self.symbols),
                'received':      encode_complex(self.received),
                'first_weights': encode_complex(self.first_weights),
                'diagnostics':   [entry._asdict() for entry in self.diagnostics],
                'estimate':      encode_complex(self.estimate)
            }
        }

def build_fixture(scale: FixtureScale, seed: int) -> Fixture:
    """
    Draws the contents of a fixture.

    Parameters
    ----------
    scale : FixtureScale
        The grid size.
    seed : int
        The master seed.

    Returns
    -------
    Fixture
        The fixture.
    """
    m, n = scale.dimensions

    first_frame = frame_seed(seed, 0)

    bit_seed, blockage_seed, offset_seed, noise_seed = frame_streams(first_frame)

    realization = sample_links(
        FIXTURE_Q,
        float(FIXTURE_L_CP),
        0.015,
        FIXTURE_M_AP,
        default_rng(blockage_seed),
        default_rng(offset_seed),
        seed=first_frame
    )

    matrices = {}

    channels = {}

    alphabet = Alphabet.qpsk()

    n0 = alphabet.energy / 10 ** (FIXTURE_SNR_DB / 10)

    for waveform in Waveform:
        geom = FrameGeometry(waveform, m, n, FIXTURE_L_CP)

        g = build_channel_matrix(realization, geom.tx_len, FIXTURE_PULSE, m).matrix

        matrices[waveform] = g

        channels[waveform] = tuple(receive_front_end(np.zeros(geom.tx_len), waveform, geom, g).freq_channels)

    geom = FrameGeometry(Waveform.Otfs, m, n, FIXTURE_L_CP)

    bits = default_rng(bit_seed).integers(0, 2, geom.info_symbols * alphabet.bits_per_symbol)

    x = map_bits(bits, alphabet)

    y = add_awgn(matrices[Waveform.Otfs] @ transmit(x, geom).tx_samples, n0, default_rng(noise_seed))

    rx = receive_front_end(y, Waveform.Otfs, geom, matrices[Waveform.Otfs])

    q = dft(rx.time_blocks[0], geom.info_symbols)

    h = rx.freq_channels[0]

    first_weights = mmse_weights(BlockFreqChannel(h, n0, alphabet.energy)).diagonal

    result = run_cdid(q, h, alphabet, n0, m, n, CdidConfig(tolerance=0.0), reference=x)

    return Fixture(
        scale=scale,
        seed=seed,
        l_cp=FIXTURE_L_CP,
        realization=realization,
        channel_matrices=matrices,
        freq_channels=channels,
        n0=n0,
        symbols=x,
        received=q,
        first_weights=first_weights,
        diagnostics=result.diagnostics,
        estimate=result.x_hat
    )

def fixture_name(scale: FixtureScale, seed: int) -> str:
    """
    Gets the file name of a fixture, ``fixture_<scale>_seed<seed>.json``.

    Parameters
    ----------
    scale : FixtureScale
        The grid size.
    seed : int
        The master seed.

    Returns
    -------
    str
        The file name.
    """
    return f'fixture_{scale.name.lower()}_seed{seed}.json'

def generate_fixture(scale: FixtureScale, seed: int, directory: str | Path) -> Path:
    """
    Draws a fixture and writes it to a directory.

    Parameters
    ----------
    scale : FixtureScale
        The grid size.
    seed : int
        The master seed.
    directory : str | Path
        The output directory; created if missing.

    Raises
    ------
    EmissionError
        If the file cannot be written.

    Returns
    -------
    Path
        The written file.
    """
    path = Path(directory) / fixture_name(scale, seed)

    contents = build_fixture(scale, seed).as_serializable()

    try:
        path.parent.mkdir(parents=True, exist_ok=True)

        path.write_text(json.dumps(contents, indent=1), encoding='utf-8')
    except OSError as error:
        raise EmissionError(f'Cannot write "{path}": {error.strerror}.') from error

    logger.info('Wrote %s fixture with seed %d to %s.', scale.name.lower(), seed, path)

    return path

def load_fixture(path: str | Path) -> Fixture:
    """
    Reads a fixture written by `generate_fixture`.

    Parameters
    ----------
    path : str | Path
        The fixture file.

    Raises
    ------
    EmissionError
        If the file cannot be read.
    ArgumentError
        If the file is not a fixture.

    Returns
    -------
    Fixture
        The decoded fixture.
    """
    try:
        contents = json.loads(Path(path).read_text(encoding='utf-8'))
    except OSError as error:
        raise EmissionError(f'Cannot read "{path}": {error.strerror}.') from error

    return Fixture.parse(contents)

def main(argv: Sequence[str] = None) -> int:
    parser = ArgumentParser(prog='python -m mcwave.fixtures', description='Writes golden test fixtures.')

    parser.add_argument('--scale', choices=('tiny', 'small'), default='tiny', help='grid size of the fixture')
    parser.add_argument('--seed', type=int, default=0, help='master seed')
    parser.add_argument('--out', type=Path, default=Path('tests/fixtures'), help='output directory')

    args = parser.parse_args(argv)

    logging.basicConfig(level=logging.INFO, format='%(asctime)s %(levelname)s %(name)s: %(message)s')

    try:
        generate_fixture(FixtureScale[args.scale.capitalize()], args.seed, args.out)
    except EmissionError as error:
        logger.error('%s', error)

        return 3

    return 0

if __name__ == '__main__':
    sys.exit(main())

"""
Monte Carlo driver of the waveform comparison.

A sweep runs every configured waveform over a grid of blocking rates, SNR points and
frames. Each frame derives a 64-bit frame seed from the master seed and the frame
index, and splits it into one stream each for the data bits, the blockage, the offsets
and the noise. The frame seed is stored with the channel realization, so any frame can
be replayed on its own. All waveforms and SNR points of a frame see the same channel
realization, the same bits and the same normalized noise, which keeps the comparison
paired.
"""
from . import __version__

from .cdid         import CdidConfig, run_cdid
from .channel      import add_awgn, build_channel_matrix, precompensate, sample_links
from .config       import Modulation, OutputFormat, Waveform
from .equalization import block_channels, equalize_ofdm, equalize_sc
from .errors       import ArgumentError, ConfigError, EmissionError
from .framing      import FrameGeometry
from .mapping      import Alphabet, map_bits
from .metrics      import effective_throughput, pragmatic_capacity, symbol_error_rate
from .modems       import receive_front_end, transmit
from .numerics     import dft
from .pulse        import PulseShape

from .data._types import CdfPoint
from .data.link   import ChannelRealization
from .data.record import CSV_COLUMNS, ResultRecord

import csv
import json
import logging
import sys

import numpy as np

from argparse           import ArgumentParser
from concurrent.futures import ProcessPoolExecutor
from dataclasses        import dataclass
from numpy.random       import SeedSequence, default_rng
from pathlib            import Path
from time               import perf_counter
from tqdm               import tqdm
from typing             import Any, Callable, Final, Iterable, Mapping, NamedTuple, Self, Sequence

logger = logging.getLogger(__name__)

OUTAGE_THRESHOLD: Final[float] = 0.05
"""float: The capacity in bits per symbol below which a frame counts as an outage."""

EXIT_CONFIG_ERROR: Final[int] = 2
"""int: The exit code of a configuration error."""

EXIT_EMISSION_ERROR: Final[int] = 3
"""int: The exit code of an I/O error."""

def _to_int(value: Any) -> int:
    number = float(value)

    if not number.is_integer():
        raise ValueError(f'{value} is not an integer')

    return int(number)

def _to_bool(value: Any) -> bool:
    if isinstance(value, bool):
        return value

    normalized = str(value).strip().lower()

    if normalized in ('true', 'yes', 'on', '1'):
        return True

    if normalized in ('false', 'no', 'off', '0'):
        return False

    raise ValueError(f'{value} is not a boolean')

def _to_list(value: Any, item: Callable[[Any], Any]) -> tuple:
    if isinstance(value, str):
        parts = [part.strip() for part in value.split(',') if part.strip()]
    elif isinstance(value, Iterable):
        parts = list(value)
    else:
        parts = [value]

    return tuple(item(part) for part in parts)

def _to_waveforms(value: Any) -> tuple[Waveform, ...]:
    waveforms = _to_list(value, lambda part: part if isinstance(part, Waveform) else Waveform.parse(str(part)))

    return tuple(sorted(set(waveforms)))

def _to_grid(value: Any) -> tuple[float, ...]:
    if isinstance(value, str) and ':' in value:
        start, stop, step = (float(part) for part in value.split(':'))

        if step <= 0 or stop < start:
            raise ValueError('expected start:stop:step with a positive step and stop >= start')

        count = int(np.floor((stop - start) / step + 1e-9)) + 1

        return tuple(float(start + index * step) for index in range(count))

    return _to_list(value, float)

def _to_enum(parse: Callable[[str], Any], kind: type) -> Callable[[Any], Any]:
    return lambda value: value if isinstance(value, kind) else parse(str(value))

class _ConfigKey(NamedTuple):
    """Represents one recognised configuration key."""
    field: str
    """str: The `RunConfig` field the key sets."""

    convert: Callable[[Any], Any]
    """Callable[[Any], Any]: Converts a raw string or native value to the field type."""

CONFIG_KEYS: Final[dict[str, _ConfigKey]] = {
    'waveforms':           _ConfigKey('waveforms',           _to_waveforms),
    'modulation':          _ConfigKey('modulation',          _to_enum(Modulation.parse, Modulation)),
    'frame.M':             _ConfigKey('m',                   _to_int),
    'frame.N':             _ConfigKey('n',                   _to_int),
    'frame.l_cp':          _ConfigKey('l_cp',                _to_int),
    'channel.q':           _ConfigKey('q',                   lambda value: _to_list(value, float)),
    'channel.tau_max':     _ConfigKey('tau_max',             float),
    'channel.nu_max':      _ConfigKey('nu_max',              float),
    'channel.m_ap':        _ConfigKey('m_ap',                _to_int),
    'snr_db':              _ConfigKey('snr_grid_db',         _to_grid),
    'frames':              _ConfigKey('frames_per_point',    _to_int),
    'seed':                _ConfigKey('seed',                _to_int),
    'cdid.iterations':     _ConfigKey('cdid_iterations',     _to_int),
    'cdid.damping':        _ConfigKey('cdid_damping',        float),
    'cdid.variance_floor': _ConfigKey('cdid_variance_floor', float),
    'cdid.variance_cap':   _ConfigKey('cdid_variance_cap',   float),
    'cdid.tolerance':      _ConfigKey('cdid_tolerance',      float),
    'pulse.rolloff':       _ConfigKey('pulse_rolloff',       float),
    'pulse.truncation':    _ConfigKey('pulse_truncation',    _to_int),
    'pulse.oversampling':  _ConfigKey('pulse_oversampling',  _to_int),
    'output.path':         _ConfigKey('output_path',         Path),
    'output.format':       _ConfigKey('output_format',       _to_enum(OutputFormat.parse, OutputFormat)),
    'harness.workers':     _ConfigKey('workers',             _to_int),
    'harness.timing':      _ConfigKey('timing',              _to_bool)
}
"""dict[str, _ConfigKey]: The recognised configuration keys and the fields they set."""

@dataclass(frozen=True)
class RunConfig:
    """
    Represents the complete configuration of a sweep.

    The defaults describe four access points serving one user with a 32 x 16 grid, a
    prefix of 3 samples, QPSK and a blocking rate of 0.2. Every field is set by exactly
    one dotted key of `CONFIG_KEYS`.
    """
    waveforms: tuple[Waveform, ...] = (Waveform.Sc, Waveform.Ofdm, Waveform.Otfs)
    """tuple[Waveform, ...]: The compared waveforms, in record order."""

    modulation: Modulation = Modulation.Qpsk
    """Modulation: The constellation of the information symbols."""

    m: int = 32
    """int: The block length M, also the number of delay bins."""

    n: int = 16
    """int: The number of blocks N, also the number of Doppler bins."""

    l_cp: int = 3
    """int: The cyclic prefix length."""

    q: tuple[float, ...] = (0.2,)
    """tuple[float, ...]: The blocking rates of the sweep."""

    tau_max: float = 3.0
    """float: The largest link time offset in symbol periods."""

    nu_max: float = 0.015
    """float: The largest link frequency offset in subcarrier spacings."""

    m_ap: int = 4
    """int: The number of access points."""

    snr_grid_db: tuple[float, ...] = tuple(float(snr) for snr in range(0, 15, 2))
    """tuple[float, ...]: The transmit SNR points per access point in dB."""

    frames_per_point: int = 100
    """int: The number of frames per sweep point."""

    seed: int = 0
    """int: The master seed."""

    cdid_iterations: int = 8
    """int: The largest number of cross-domain iterations."""

    cdid_damping: float = 1.0
    """float: The damping of the cross-domain extrinsic means."""

    cdid_variance_floor: float = 1e-8
    """float: The extrinsic variance floor relative to E_s."""

    cdid_variance_cap: float = 1e8
    """float: The extrinsic variance cap relative to E_s."""

    cdid_tolerance: float = 1e-4
    """float: The relative variance change that stops the cross-domain iterations."""

    pulse_rolloff: float = 0.3
    """float: The root-raised-cosine rolloff."""

    pulse_truncation: int = 8
    """int: The half support of the pulse in symbol periods."""

    pulse_oversampling: int = 16
    """int: The quadrature samples per symbol period."""

    output_path: Path = Path('results.csv')
    """Path: The file the records are written to."""

    output_format: OutputFormat = OutputFormat.Csv
    """OutputFormat: The format of the output file."""

    workers: int = 1
    """int: The number of worker processes."""

    timing: bool = True
    """bool: True to measure receiver wall time, False to write 0 for reproducible output."""

    def __post_init__(self) -> None:
        """
        Validates the configuration.

        Raises
        ------
        ConfigError
            If a value is outside of its range; the error names the configuration key.
        """
        checks = (
            ('waveforms',           len(self.waveforms) > 0,                  'At least one waveform is required.'),
            ('frame.M',             self.m > 0,                               'Must be a positive integer.'),
            ('frame.N',             self.n > 0,                               'Must be a positive integer.'),
            ('frame.l_cp',          0 <= self.l_cp <= (self.m - self.l_cp),   'Must be non-negative and at most M - l_cp.'),
            ('channel.q',           len(self.q) > 0,                          'At least one blocking rate is required.'),
            ('channel.q',           all(0 <= q <= 1 for q in self.q),         'Blocking rates must be within the range of 0 and 1.'),
            ('channel.tau_max',     self.tau_max >= 0,                        'Must be non-negative.'),
            ('channel.nu_max',      self.nu_max >= 0,                         'Must be non-negative.'),
            ('channel.m_ap',        self.m_ap > 0,                            'Must be a positive integer.'),
            ('snr_db',              len(self.snr_grid_db) > 0,                'At least one SNR point is required.'),
            ('snr_db',              all(np.isfinite(self.snr_grid_db)),       'SNR points must be finite.'),
            ('frames',              self.frames_per_point >= 1,               'Must be a positive integer.'),
            ('cdid.iterations',     self.cdid_iterations >= 1,                'Must be a positive integer.'),
            ('cdid.damping',        0 < self.cdid_damping <= 1,               'Must be within the range of 0 (exclusive) and 1.'),
            ('cdid.variance_floor', self.cdid_variance_floor > 0,             'Must be positive.'),
            ('cdid.variance_cap',   self.cdid_variance_cap > self.cdid_variance_floor, 'Must be greater than the variance floor.'),
            ('cdid.variance_cap',   np.isfinite(self.cdid_variance_cap),      'Must be finite.'),
            ('cdid.tolerance',      self.cdid_tolerance >= 0,                 'Must be non-negative.'),
            ('pulse.rolloff',       0 <= self.pulse_rolloff <= 1,             'Must be within the range of 0 and 1.'),
            ('pulse.truncation',    self.pulse_truncation >= 1,               'Must be a positive integer.'),
            ('pulse.oversampling',  self.pulse_oversampling >= 1,             'Must be a positive integer.'),
            ('harness.workers',     self.workers >= 1,                        'Must be a positive integer.')
        )

        for key, valid, message in checks:
            if not valid:
                raise ConfigError(message, key=key)

    @property
    def alphabet(self) -> Alphabet:
        """
        Gets the constellation of the configured modulation.

        Returns
        -------
        Alphabet
            The unit energy alphabet.
        """
        return Alphabet.for_modulation(self.modulation)

    @property
    def cdid(self) -> CdidConfig:
        """
        Gets the cross-domain detector settings.

        Returns
        -------
        CdidConfig
            The settings built from the ``cdid.*`` keys.
        """
        return CdidConfig(
            max_iterations=self.cdid_iterations,
            variance_floor=self.cdid_variance_floor,
            variance_cap=self.cdid_variance_cap,
            damping=self.cdid_damping,
            tolerance=self.cdid_tolerance
        )

    @property
    def point_count(self) -> int:
        """
        Gets the number of records a sweep produces.

        Returns
        -------
        int
            The product of the waveform, blocking rate, SNR and frame counts.
        """
        return len(self.waveforms) * len(self.q) * len(self.snr_grid_db) * self.frames_per_point

    @property
    def pulse(self) -> PulseShape:
        """
        Gets the transmit pulse.

        Returns
        -------
        PulseShape
            The pulse built from the ``pulse.*`` keys.
        """
        return PulseShape(
            rolloff=self.pulse_rolloff,
            truncation=self.pulse_truncation,
            oversampling=self.pulse_oversampling
        )

    def geometry(self, waveform: Waveform) -> FrameGeometry:
        """
        Gets the frame geometry of a waveform.

        Parameters
        ----------
        waveform : Waveform
            The waveform.

        Returns
        -------
        FrameGeometry
            The geometry for the configured M, N and prefix length.
        """
        return FrameGeometry(waveform, self.m, self.n, self.l_cp)

    @classmethod
    def parse(cls, data: Mapping[str, Any]) -> Self:
        """
        Builds a configuration from dotted keys over the defaults.

        Parameters
        ----------
        data : Mapping[str, Any]
            Raw string values, as read from a file, or native values.

        Raises
        ------
        ConfigError
            If a key is unknown or a value is malformed or out of range.

        Returns
        -------
        RunConfig
            An instance of the `RunConfig` class populated with the parsed data.
        """
        values = {}

        for key, raw in data.items():
            if key not in CONFIG_KEYS:
                raise ConfigError('Unknown configuration key.', key=key)

            entry = CONFIG_KEYS[key]

            try:
                values[entry.field] = entry.convert(raw)
            except ConfigError:
                raise
            except (TypeError, ValueError) as error:
                raise ConfigError(f'Invalid value "{raw}" ({error}).', key=key) from error

        return cls(**values)

    def as_serializable(self) -> dict:
        """
        Returns a dictionary of dotted keys with JSON serializable values.

        The result parses back into an equal configuration.

        Returns
        -------
        dict
            Every configuration key with its value.
        """
        result = {}

        for key, entry in CONFIG_KEYS.items():
            value = getattr(self, entry.field)

            match value:
                case tuple() if key == 'waveforms':
                    value = [waveform.tag for waveform in value]
                case tuple():
                    value = list(value)
                case Modulation() | OutputFormat():
                    value = value.name.lower()
                case Path():
                    value = str(value)

            result[key] = value

        return result

def load_config(path: str | Path) -> dict[str, str]:
    """
    Reads a flat ``key = value`` configuration file.

    ``#`` starts a comment and blank lines are ignored.

    Parameters
    ----------
    path : str | Path
        The configuration file.

    Raises
    ------
    ConfigError
        If the file cannot be read, a line is malformed or a key is unknown. The message
        names the line number.

    Returns
    -------
    dict[str, str]
        The raw values by key, for `RunConfig.parse`.
    """
    try:
        lines = Path(path).read_text(encoding='utf-8').splitlines()
    except OSError as error:
        raise ConfigError(f'Cannot read configuration file "{path}": {error.strerror}.') from error

    values = {}

    for number, line in enumerate(lines, start=1):
        content = line.split('#', 1)[0].strip()

        if not content:
            continue

        key, separator, value = content.partition('=')

        key = key.strip()

        if not separator or not key:
            raise ConfigError(f'Line {number}: expected "key = value".')

        if key not in CONFIG_KEYS:
            raise ConfigError(f'Line {number}: unknown configuration key.', key=key)

        values[key] = value.strip()

    return values

class _Unit(NamedTuple):
    """Represents one unit of parallel work, a frame at one blocking rate."""
    cfg: RunConfig

    q: float

    frame: int

def frame_seed(seed: int, frame: int) -> int:
    """
    Derives the seed of one frame from the master seed and the frame index.

    The frame seed alone determines every random draw of the frame, so a frame can be
    replayed from the seed stored in its channel realization or capacity sample.

    Parameters
    ----------
    seed : int
        The master seed.
    frame : int
        The frame index.

    Raises
    ------
    ArgumentError
        If the frame index is negative.

    Returns
    -------
    int
        A 64-bit frame seed.
    """
    if frame < 0:
        raise ArgumentError('Frame indices must be non-negative.')

    return int(SeedSequence(seed, spawn_key=(frame,)).generate_state(1, np.uint64)[0])

def frame_streams(frame_seed: int) -> tuple[SeedSequence, SeedSequence, SeedSequence, SeedSequence]:
    """
    Splits a frame seed into the independent random streams of the frame.

    Parameters
    ----------
    frame_seed : int
        The seed of the frame.

    Returns
    -------
    tuple[SeedSequence, SeedSequence, SeedSequence, SeedSequence]
        The seeds of the bit, blockage, offset and noise streams.
    """
    bits, blockage, offsets, noise = SeedSequence(frame_seed).spawn(4)

    return bits, blockage, offsets, noise

def draw_realization(cfg: RunConfig, q: float, frame_seed: int) -> ChannelRealization:
    """
    Draws the precompensated link states of one frame.

    Parameters
    ----------
    cfg : RunConfig
        The sweep configuration.
    q : float
        The blocking rate.
    frame_seed : int
        The seed of the frame.

    Returns
    -------
    ChannelRealization
        The link states, tagged with the frame seed.
    """
    _, blockage_seed, offset_seed, _ = frame_streams(frame_seed)

    return precompensate(sample_links(
        q,
        cfg.tau_max,
        cfg.nu_max,
        cfg.m_ap,
        default_rng(blockage_seed),
        default_rng(offset_seed),
        seed=frame_seed
    ))

class _Detection(NamedTuple):
    """Represents the detector output of one waveform at one SNR point."""
    decisions: np.ndarray
    """ndarray: The estimates the symbol error rate is counted on."""

    scored: np.ndarray
    """ndarray: The estimates the pragmatic capacity is fitted on."""

    iterations: int
    """int: The number of cross-domain iterations; zero for the equalizers."""

def _detect(cfg: RunConfig, geom: FrameGeometry, rx, alphabet: Alphabet, n0: float) -> _Detection:
    match geom.waveform:
        case Waveform.Sc:
            x_hat = equalize_sc(rx, block_channels(rx, n0, alphabet.energy))

            return _Detection(x_hat, x_hat, 0)
        case Waveform.Ofdm:
            x_hat = equalize_ofdm(rx, block_channels(rx, n0, alphabet.energy))

            return _Detection(x_hat, x_hat, 0)

    q = dft(rx.time_blocks[0], geom.info_symbols)

    result = run_cdid(q, rx.freq_channels[0], alphabet, n0, geom.m, geom.n, cfg.cdid)

    # Posterior means are pulled onto the constellation; capacity is fitted on the APP input
    return _Detection(result.x_hat, result.dd_estimate, result.iterations)

def simulate_frame(cfg: RunConfig, q: float, frame: int) -> list[ResultRecord]:
    """
    Runs every waveform and SNR point of one frame.

    Parameters
    ----------
    cfg : RunConfig
        The sweep configuration.
    q : float
        The blocking rate.
    frame : int
        The frame index.

    Returns
    -------
    list[ResultRecord]
        One record per waveform and SNR point.
    """
    seed = frame_seed(cfg.seed, frame)

    bit_seed, _, _, noise_seed = frame_streams(seed)

    alphabet = cfg.alphabet

    geometries = [cfg.geometry(waveform) for waveform in cfg.waveforms]

    longest = max(geom.info_symbols for geom in geometries)

    bits = default_rng(bit_seed).integers(0, 2, longest * alphabet.bits_per_symbol)

    realization = draw_realization(cfg, q, seed)

    channel = build_channel_matrix(realization, max(geom.tx_len for geom in geometries), cfg.pulse, cfg.m)

    logger.debug('Frame %d at q=%g: %d of %d links blocked.', frame, q, realization.blocked_count, cfg.m_ap)

    records = []

    for geom in geometries:
        x = map_bits(bits[:geom.info_symbols * alphabet.bits_per_symbol], alphabet)

        tx = transmit(x, geom)

        matrix = channel.matrix[:geom.tx_len, :geom.tx_len]

        clean = matrix @ tx.tx_samples

        for snr_db in cfg.snr_grid_db:
            n0 = alphabet.energy / 10 ** (snr_db / 10)

            y = add_awgn(clean, n0, default_rng(noise_seed))

            start = perf_counter()

            rx = receive_front_end(y, geom.waveform, geom, matrix)

            detection = _detect(cfg, geom, rx, alphabet, n0)

            capacity = pragmatic_capacity(x, detection.scored, alphabet)

            ser = symbol_error_rate(x, detection.decisions, alphabet)

            wall_ms = (perf_counter() - start) * 1e3 if cfg.timing else 0.0

            records.append(ResultRecord(geom.waveform, snr_db, q, frame, capacity, ser, detection.iterations, wall_ms))

    return records

def _simulate_unit(unit: _Unit) -> list[ResultRecord]:
    return simulate_frame(unit.cfg, unit.q, unit.frame)

def run_sweep(cfg: RunConfig, progress: bool = False) -> list[ResultRecord]:
    """
    Runs the Monte Carlo sweep.

    Frames are processed in worker processes when ``cfg.workers`` exceeds 1. The records
    are returned ordered by waveform, blocking rate, SNR point and frame regardless of
    completion order.

    Parameters
    ----------
    cfg : RunConfig
        The sweep configuration.
    progress : bool, optional
        True to display a progress bar.

    Returns
    -------
    list[ResultRecord]
        One record per waveform, blocking rate, SNR point and frame.
    """
    units = [_Unit(cfg, q, frame) for q in cfg.q for frame in range(cfg.frames_per_point)]

    logger.info(
        'Sweeping %s over %d blocking rate(s), %d SNR point(s) and %d frame(s) per point.',
        ', '.join(waveform.tag for waveform in cfg.waveforms),
        len(cfg.q),
        len(cfg.snr_grid_db),
        cfg.frames_per_point
    )

    bar = tqdm(total=len(units), unit='frame', disable=not progress, ncols=80)

    records = []

    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as executor:
            for batch in executor.map(_simulate_unit, units):
                records.extend(batch)

                bar.update()
    else:
        for unit in units:
            records.extend(_simulate_unit(unit))

            bar.update()

    bar.close()

    q_order   = {q: index for index, q in enumerate(cfg.q)}
    snr_order = {snr: index for index, snr in enumerate(cfg.snr_grid_db)}

    records.sort(key=lambda record: (record.waveform, q_order[record.q], snr_order[record.snr_db], record.frame))

    return records

def aggregate_cdf(
    records:  Sequence[ResultRecord],
    waveform: Waveform,
    snr_db:   float,
    q:        float = None,
    seed:     int   = 0
) -> list[CdfPoint]:
    """
    Builds the empirical CDF of the pragmatic capacity at one sweep point.

    Every selected record is projected onto its capacity sample, so each step of the
    distribution names the frame seed that replays it.

    Parameters
    ----------
    records : Sequence[ResultRecord]
        The sweep records.
    waveform : Waveform
        The waveform to select.
    snr_db : float
        The SNR point to select.
    q : float, optional
        The blocking rate to select; all rates when omitted.
    seed : int, optional
        The master seed the records were produced with.

    Raises
    ------
    ArgumentError
        If no record matches the selection.

    Returns
    -------
    list[CdfPoint]
        The sorted capacities with cumulative probabilities ``k / n``.
    """
    samples = sorted(
        (
            record.capacity_sample(frame_seed(seed, record.frame))
            for record in records
            if record.waveform is waveform and record.snr_db == snr_db and (q is None or record.q == q)
        ),
        key=lambda sample: sample.value
    )

    if not samples:
        raise ArgumentError(f'No records for {waveform.tag} at {snr_db} dB.')

    count = len(samples)

    return [
        CdfPoint(sample.value, (index + 1) / count, sample.frame_seed) for index, sample in enumerate(samples)
    ]

def summarize(records: Sequence[ResultRecord], cfg: RunConfig) -> list[dict]:
    """
    Aggregates the records of every sweep point.

    Parameters
    ----------
    records : Sequence[ResultRecord]
        The sweep records.
    cfg : RunConfig
        The configuration the records were produced with.

    Returns
    -------
    list[dict]
        Per waveform, SNR point and blocking rate: the frame count, mean capacity and its
        standard error, mean symbol error rate, mean iterations, mean wall time, outage
        fraction and effective throughput.
    """
    groups: dict[tuple, list[ResultRecord]] = {}

    for record in records:
        groups.setdefault((record.waveform, record.snr_db, record.q), []).append(record)

    points = []

    for (waveform, snr_db, q), group in groups.items():
        capacities = np.array([record.capacity_bits for record in group])

        sem = float(capacities.std(ddof=1) / np.sqrt(capacities.size)) if capacities.size > 1 else 0.0

        mean_capacity = float(capacities.mean())

        points.append({
            'waveform':        waveform.tag,
            'snr_db':          snr_db,
            'q':               q,
            'frames':          len(group),
            'capacity_mean':   mean_capacity,
            'capacity_sem':    sem,
            'ser_mean':        float(np.mean([record.ser for record in group])),
            'cdid_iters_mean': float(np.mean([record.cdid_iters for record in group])),
            'wall_ms_mean':    float(np.mean([record.wall_ms for record in group])),
            'outage':          float(np.mean(capacities < OUTAGE_THRESHOLD)),
            'throughput':      effective_throughput(mean_capacity, cfg.geometry(waveform))
        })

    return points

def emit(
    records: Sequence[ResultRecord],
    fmt:     OutputFormat,
    path:    str | Path,
    cfg:     RunConfig = None
) -> None:
    """
    Writes the records to a file.

    CSV output has exactly the columns of `CSV_COLUMNS` with nine significant digit
    floats. JSON output carries the package version, the configuration echo, the records
    and the per-point summary.

    Parameters
    ----------
    records : Sequence[ResultRecord]
        The records to write.
    fmt : OutputFormat
        The output format.
    path : str | Path
        The output file.
    cfg : RunConfig, optional
        The configuration to echo; defaults to the built-in configuration.

    Raises
    ------
    EmissionError
        If the file cannot be written; the message names the path.
    """
    path = Path(path)

    try:
        with path.open('w', encoding='utf-8', newline='') as file:
            if fmt is OutputFormat.Csv:
                writer = csv.writer(file, lineterminator='\n')

                writer.writerow(CSV_COLUMNS)
                writer.writerows(record.as_csv_row() for record in records)
            else:
                cfg = cfg or RunConfig()

                json.dump(
                    {
                        'version': __version__,
                        'config':  cfg.as_serializable(),
                        'records': [record.as_serializable() for record in records],
                        'summary': summarize(records, cfg)
                    },
                    file,
                    indent=2
                )
    except OSError as error:
        raise EmissionError(f'Cannot write "{path}": {error.strerror}.') from error

    logger.info('Wrote %d record(s) to %s.', len(records), path)

def read_records(path: str | Path) -> list[ResultRecord]:
    """
    Reads records back from a CSV or JSON file written by `emit`.

    Parameters
    ----------
    path : str | Path
        The file; a ``.json`` suffix selects JSON.

    Raises
    ------
    EmissionError
        If the file cannot be read.

    Returns
    -------
    list[ResultRecord]
        The records in file order.
    """
    path = Path(path)

    try:
        with path.open('r', encoding='utf-8', newline='') as file:
            if path.suffix.lower() == '.json':
                rows = json.load(file)['records']
            else:
                rows = list(csv.DictReader(file))
    except OSError as error:
        raise EmissionError(f'Cannot read "{path}": {error.strerror}.') from error

    return [ResultRecord.parse(row) for row in rows]

def _create_parser() -> ArgumentParser:
    parser = ArgumentParser(
        prog='mcwave',
        description='Compares SC, OFDM and OTFS downlink from multiple access points with blockage.'
    )

    parser.add_argument('--config', type=Path, help='flat key = value configuration file')
    parser.add_argument('--preset', help='named preset to start from')
    parser.add_argument('--waveforms', help='comma separated waveforms, e.g. SC,OTFS')
    parser.add_argument('--snr', help='SNR points in dB, a list or start:stop:step')
    parser.add_argument('--frames', help='frames per sweep point')
    parser.add_argument('--q', help='comma separated blocking rates')
    parser.add_argument('--seed', help='master seed')
    parser.add_argument('--out', help='output file')
    parser.add_argument('--format', choices=('csv', 'json'), help='output format')
    parser.add_argument('--cdid-iters', help='largest number of cross-domain iterations')
    parser.add_argument('--workers', help='number of worker processes')
    parser.add_argument('--no-timing', action='store_true', help='write wall_ms = 0 for reproducible output')
    parser.add_argument('--set', action='append', default=[], metavar='KEY=VALUE', help='override any configuration key')

    verbosity = parser.add_mutually_exclusive_group()

    verbosity.add_argument('-v', '--verbose', action='store_true', help='log debug messages')
    verbosity.add_argument('-q', '--quiet', action='store_true', help='log warnings and errors only')

    return parser

_FLAG_KEYS: Final[dict[str, str]] = {
    'waveforms':  'waveforms',
    'snr':        'snr_db',
    'frames':     'frames',
    'q':          'channel.q',
    'seed':       'seed',
    'out':        'output.path',
    'format':     'output.format',
    'cdid_iters': 'cdid.iterations',
    'workers':    'harness.workers'
}

def resolve_config(args) -> RunConfig:
    """
    Merges a preset, a configuration file and command-line flags, in increasing precedence.

    Parameters
    ----------
    args : argparse.Namespace
        The parsed command-line arguments.

    Raises
    ------
    ConfigError
        If any source is invalid.

    Returns
    -------
    RunConfig
        The resolved configuration.
    """
    from .presets import PRESETS

    mapping: dict[str, Any] = {}

    if args.preset:
        if args.preset not in PRESETS:
            raise ConfigError(f'Unknown preset "{args.preset}".', key='--preset')

        mapping.update(PRESETS[args.preset].as_serializable())

    if args.config:
        mapping.update(load_config(args.config))

    for attribute, key in _FLAG_KEYS.items():
        value = getattr(args, attribute)

        if value is not None:
            mapping[key] = value

    if args.no_timing:
        mapping['harness.timing'] = False

    for item in args.set:
        key, separator, value = item.partition('=')

        if not separator:
            raise ConfigError(f'Expected KEY=VALUE, got "{item}".', key='--set')

        mapping[key.strip()] = value.strip()

    return RunConfig.parse(mapping)

def main(argv: Sequence[str] = None) -> int:
    """
    Runs the command-line interface.

    Parameters
    ----------
    argv : Sequence[str], optional
        The arguments; defaults to ``sys.argv[1:]``.

    Returns
    -------
    int
        0 on success, 2 on a configuration error, 3 on an I/O error.
    """
    args = _create_parser().parse_args(argv)

    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO

    logging.basicConfig(level=level, format='%(asctime)s %(levelname)s %(name)s: %(message)s')

    try:
        cfg = resolve_config(args)
    except ConfigError as error:
        logger.error('Invalid configuration: %s', error)

        return EXIT_CONFIG_ERROR

    records = run_sweep(cfg, progress=not args.quiet and sys.stderr.isatty())

    for point in summarize(records, cfg):
        logger.info(
            '%-4s q=%-4g %5.1f dB: capacity %.4f +- %.4f bits, SER %.4f.',
            point['waveform'],
            point['q'],
            point['snr_db'],
            point['capacity_mean'],
            point['capacity_sem'],
            point['ser_mean']
        )

    try:
        emit(records, cfg.output_format, cfg.output_path, cfg)
    except EmissionError as error:
        logger.error('%s', error)

        return EXIT_EMISSION_ERROR

    return 0

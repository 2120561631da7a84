from ..config import Waveform
from ..errors import ArgumentError

from dataclasses import asdict, dataclass
from typing      import Final, Self

CSV_COLUMNS: Final[tuple[str, ...]] = (
    'waveform',
    'snr_db',
    'q',
    'frame',
    'capacity_bits',
    'ser',
    'cdid_iters',
    'wall_ms'
)
"""tuple[str, ...]: The exact column order of the result CSV file."""

FLOAT_FORMAT: Final[str] = '{:.9g}'
"""str: The format of every floating point CSV field, nine significant digits."""

@dataclass(frozen=True)
class ResultRecord:
    """
    Represents the outcome of one frame of one waveform at one sweep point.

    This class is the unit of sweep output. One record exists per waveform, blocking rate,
    SNR point and frame.
    """
    waveform: Waveform
    """Waveform: The waveform of the frame."""

    snr_db: float
    """float: The transmit SNR per access point in dB."""

    q: float
    """float: The blocking rate of the sweep point."""

    frame: int
    """int: The frame index within the sweep point."""

    capacity_bits: float
    """float: The pragmatic capacity in bits per symbol."""

    ser: float
    """float: The symbol error rate of the hard decisions."""

    cdid_iters: int
    """int: The number of cross-domain iterations, 0 for the single-shot equalizers."""

    wall_ms: float
    """float: The receiver wall time in milliseconds, 0 when timing is disabled."""

    @classmethod
    def parse(cls, data: dict) -> Self:
        """
        Parses a CSV row or a JSON object with the record fields.

        Parameters
        ----------
        data : dict
            The field values, as strings or as native values.

        Raises
        ------
        ArgumentError
            If a field is missing or malformed.

        Returns
        -------
        ResultRecord
            An instance of the `ResultRecord` class populated with the parsed data.
        """
        try:
            return cls(
                waveform=Waveform.parse(str(data['waveform'])),
                snr_db=float(data['snr_db']),
                q=float(data['q']),
                frame=int(data['frame']),
                capacity_bits=float(data['capacity_bits']),
                ser=float(data['ser']),
                cdid_iters=int(data['cdid_iters']),
                wall_ms=float(data['wall_ms'])
            )
        except (KeyError, ValueError) as error:
            raise ArgumentError(f'Malformed result record: {error}') from error

    def as_csv_row(self) -> tuple[str, ...]:
        """
        Returns the record as formatted CSV fields, in the order of `CSV_COLUMNS`.

        Returns
        -------
        tuple[str, ...]
            The field strings.
        """
        return (
            self.waveform.tag,
            FLOAT_FORMAT.format(self.snr_db),
            FLOAT_FORMAT.format(self.q),
            str(self.frame),
            FLOAT_FORMAT.format(self.capacity_bits),
            FLOAT_FORMAT.format(self.ser),
            str(self.cdid_iters),
            FLOAT_FORMAT.format(self.wall_ms)
        )

    def as_serializable(self) -> dict:
        """
        Returns a dictionary with JSON serializable values.

        Returns
        -------
        dict
            The record fields keyed by their CSV column names.
        """
        values = asdict(self)

        values['waveform'] = self.waveform.tag

        return values

    def capacity_sample(self, frame_seed: int) -> 'CapacitySample':
        """
        Projects the record onto its capacity sample.

        Parameters
        ----------
        frame_seed : int
            The seed of the frame's random stream.

        Returns
        -------
        CapacitySample
            The waveform, sweep point and capacity of the record.
        """
        return CapacitySample(self.waveform, self.snr_db, self.q, self.capacity_bits, frame_seed)

@dataclass(frozen=True)
class CapacitySample:
    """Represents the pragmatic capacity of one frame at one sweep point."""
    waveform: Waveform
    """Waveform: The waveform of the frame."""

    snr_db: float
    """float: The transmit SNR per access point in dB."""

    q: float
    """float: The blocking rate."""

    value: float
    """float: The pragmatic capacity in bits per symbol."""

    frame_seed: int
    """int: The seed of the frame's random stream."""

    def __post_init__(self) -> None:
        """
        Validates the sample.

        Raises
        ------
        ArgumentError
            If the capacity is negative.
        """
        if self.value < 0:
            raise ArgumentError('Capacity samples must be non-negative.')

from .errors import ConfigError

from enum   import IntEnum, unique
from typing import Self

@unique
class Waveform(IntEnum):
    """
    Represents the three waveforms that are compared by the simulator.

    The integer value fixes the deterministic output order of records.
    """
    Sc   = 0
    Ofdm = 1
    Otfs = 2

    @property
    def tag(self) -> str:
        """
        Gets the upper case tag used in configuration files and result records.

        Returns
        -------
        str
            One of ``SC``, ``OFDM`` or ``OTFS``.
        """
        return self.name.upper()

    @classmethod
    def parse(cls, value: str) -> Self:
        """
        Parses a waveform tag, ignoring case and surrounding whitespace.

        Parameters
        ----------
        value : str
            The waveform tag, e.g. ``otfs``.

        Raises
        ------
        ConfigError
            If the tag does not name a waveform.

        Returns
        -------
        Waveform
            The matching waveform member.
        """
        normalized = value.strip().upper()

        for member in cls:
            if member.tag == normalized:
                return member

        raise ConfigError(f'Unknown waveform "{value}".', key='waveforms')

@unique
class TransformDirection(IntEnum):
    """Represents the direction of a unitary transform."""
    Forward = 0
    Inverse = 1

@unique
class MessageDirection(IntEnum):
    """
    Represents the direction of an extrinsic message in the cross-domain detector.

    Messages either travel from the time domain estimator to the delay-Doppler domain
    detector, or back.
    """
    TimeToDelayDoppler = 0
    DelayDopplerToTime = 1

@unique
class PulseKind(IntEnum):
    """Represents the supported transmit shaping pulses."""
    RootRaisedCosine = 0

@unique
class Modulation(IntEnum):
    """
    Represents the supported constellations.

    The integer value is the constellation order.
    """
    Qpsk  = 4
    Qam16 = 16
    Qam64 = 64

    @classmethod
    def parse(cls, value: str) -> Self:
        """
        Parses a modulation name such as ``qpsk`` or ``qam16``.

        Parameters
        ----------
        value : str
            The modulation name.

        Raises
        ------
        ConfigError
            If the name does not match a supported modulation.

        Returns
        -------
        Modulation
            The matching modulation member.
        """
        normalized = value.strip().lower()

        for member in cls:
            if member.name.lower() == normalized:
                return member

        raise ConfigError(f'Unknown modulation "{value}".', key='modulation')

@unique
class OutputFormat(IntEnum):
    """Represents the formats that sweep results can be emitted in."""
    Csv  = 0
    Json = 1

    @classmethod
    def parse(cls, value: str) -> Self:
        """
        Parses an output format name.

        Parameters
        ----------
        value : str
            Either ``csv`` or ``json``.

        Raises
        ------
        ConfigError
            If the name is neither.

        Returns
        -------
        OutputFormat
            The matching format member.
        """
        normalized = value.strip().lower()

        for member in cls:
            if member.name.lower() == normalized:
                return member

        raise ConfigError(f'Unknown output format "{value}".', key='output.format')

@unique
class FixtureScale(IntEnum):
    """
    Represents the sizes of the golden fixtures.

    The ``Tiny`` scale uses a 4 x 4 delay-Doppler grid, ``Small`` an 8 x 4 grid.
    """
    Tiny  = 0
    Small = 1

    @property
    def dimensions(self) -> tuple[int, int]:
        """
        Gets the (M, N) grid dimensions of the scale.

        Returns
        -------
        tuple[int, int]
            The number of delay bins and Doppler bins.
        """
        return (4, 4) if self is FixtureScale.Tiny else (8, 4)

from ..config   import Waveform
from ..errors   import ArgumentError, DimensionError
from ..numerics import as_matrix

import numpy as np

from dataclasses import dataclass, field
from numpy       import ndarray

@dataclass(frozen=True, eq=False)
class TxFrame:
    """
    Represents one transmitted frame.

    The transmitted samples hold the information symbols mapped to the time domain by the
    waveform's transform, with a cyclic prefix in front of every block.
    """
    waveform: Waveform
    """Waveform: The waveform the frame was modulated with."""

    info_symbols: ndarray = field(repr=False)
    """ndarray: The information symbols in the waveform's modulation domain."""

    tx_samples: ndarray = field(repr=False)
    """ndarray: The ``tx_len`` transmitted time domain samples."""

    @property
    def tx_len(self) -> int:
        """
        Gets the number of transmitted samples.

        Returns
        -------
        int
            The length of ``tx_samples``.
        """
        return self.tx_samples.size

@dataclass(frozen=True, eq=False)
class RxFrame:
    """
    Represents one received frame after the receive front end.

    Every block carries its prefix-free time samples, its vector in the waveform's
    detection domain and the matching effective channel matrices. Single carrier and OFDM
    frames hold ``N`` blocks in the frequency domain. An OTFS frame holds a single block
    whose detection domain is the delay-Doppler domain; its frequency domain channel is
    the full ``M N x M N`` matrix.
    """
    waveform: Waveform
    """Waveform: The waveform the frame was received with."""

    time_blocks: tuple[ndarray, ...] = field(repr=False)
    """tuple[ndarray, ...]: The received samples of every block after prefix removal."""

    domain_vectors: tuple[ndarray, ...] = field(repr=False)
    """tuple[ndarray, ...]: The received vector of every block in the detection domain."""

    time_channels: tuple[ndarray, ...] = field(repr=False)
    """tuple[ndarray, ...]: The effective time domain matrix of every block."""

    freq_channels: tuple[ndarray, ...] = field(repr=False)
    """tuple[ndarray, ...]: The effective frequency domain matrix of every block."""

    @property
    def block_count(self) -> int:
        """
        Gets the number of received blocks.

        Returns
        -------
        int
            The number of domain vectors.
        """
        return len(self.domain_vectors)

@dataclass(frozen=True, eq=False)
class BlockFreqChannel:
    """Represents the frequency domain channel of one block together with the signal statistics."""
    h: ndarray = field(repr=False)
    """ndarray: The square ``L x L`` frequency domain channel matrix."""

    n0: float
    """float: The noise variance per complex sample."""

    es: float
    """float: The average symbol energy E_s."""

    def __post_init__(self) -> None:
        """
        Validates the channel.

        Raises
        ------
        DimensionError
            If the matrix is not square.
        ArgumentError
            If the noise variance is negative or the symbol energy is not positive.
        """
        matrix = as_matrix(self.h, 'h')

        if matrix.shape[0] != matrix.shape[1]:
            raise DimensionError('Block channel matrices must be square.')

        if not np.isfinite(self.n0) or self.n0 < 0:
            raise ArgumentError('Noise density must be a non-negative finite number.')

        if not np.isfinite(self.es) or self.es <= 0:
            raise ArgumentError('Symbol energy must be a positive finite number.')

        object.__setattr__(self, 'h', matrix)

    @property
    def length(self) -> int:
        """
        Gets the block length.

        Returns
        -------
        int
            The matrix dimension L.
        """
        return self.h.shape[0]

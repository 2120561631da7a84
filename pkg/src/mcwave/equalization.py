"""
Single-tap MMSE frequency domain equalizers for the single carrier and OFDM waveforms.

Both equalizers weigh every frequency bin by

    W[l, l] = E_s conj(h[l, l]) / (E_s sum_j |h[l, j]| ** 2 + N0)

where the sum runs over the block length, so that the inter-carrier interference of the
block's row counts as noise.
"""
from .config   import Waveform
from .errors   import ArgumentError, DimensionError
from .numerics import as_matrix, idft

from .data._types import MmseWeights
from .data.frame  import BlockFreqChannel, RxFrame

import numpy as np

from numpy  import ndarray
from typing import Sequence

def channel_row_energy(h) -> ndarray:
    """
    Gets the squared norm of every row of a frequency domain channel.

    Parameters
    ----------
    h : array_like
        The square frequency domain channel.

    Returns
    -------
    ndarray
        ``sum_j |h[l, j]| ** 2`` for every bin ``l``.
    """
    return np.sum(np.abs(as_matrix(h, 'h')) ** 2, axis=1)

def mmse_weights(ch: BlockFreqChannel, row_energy: ndarray | None = None) -> MmseWeights:
    """
    Computes the single-tap MMSE weights of one block.

    Parameters
    ----------
    ch : BlockFreqChannel
        The frequency domain channel and its signal statistics.
    row_energy : ndarray, optional
        The precomputed squared norm of every channel row. Detectors that reweight the
        same channel with a changing a priori variance pass it once per frame.

    Raises
    ------
    DimensionError
        If the row energies do not match the block length.

    Returns
    -------
    MmseWeights
        One weight per frequency bin; zero where the bin receives neither signal nor
        noise.
    """
    if row_energy is None:
        row_energy = channel_row_energy(ch.h)

    if row_energy.shape != (ch.length,):
        raise DimensionError(f'Expected {ch.length} row energies, got shape {row_energy.shape}.')

    denominator = ch.es * row_energy + ch.n0

    numerator = ch.es * np.conj(np.diagonal(ch.h))

    diagonal = np.divide(
        numerator,
        denominator,
        out=np.zeros_like(numerator),
        where=denominator > 0
    )

    return MmseWeights(diagonal)

def block_channels(rx: RxFrame, n0: float, es: float) -> list[BlockFreqChannel]:
    """
    Pairs every frequency domain block channel of a frame with the signal statistics.

    Parameters
    ----------
    rx : RxFrame
        The received frame.
    n0 : float
        The noise variance per complex sample.
    es : float
        The average symbol energy.

    Returns
    -------
    list[BlockFreqChannel]
        One channel per block.
    """
    return [BlockFreqChannel(h, n0, es) for h in rx.freq_channels]

def _check_frame(rx: RxFrame, channels: Sequence[BlockFreqChannel], waveform: Waveform) -> None:
    if rx.waveform is not waveform:
        raise ArgumentError(f'Expected a {waveform.tag} frame, got {rx.waveform.tag}.')

    if len(channels) != rx.block_count:
        raise DimensionError(f'Expected {rx.block_count} block channels, got {len(channels)}.')

    for vector, channel in zip(rx.domain_vectors, channels):
        if channel.length != vector.size:
            raise DimensionError(f'Block channel of length {channel.length} does not match block length {vector.size}.')

def equalize_sc(rx: RxFrame, channels: Sequence[BlockFreqChannel]) -> ndarray:
    """
    Equalizes a single carrier frame in the frequency domain.

    Every block is weighted bin by bin and transformed back to the time domain.

    Parameters
    ----------
    rx : RxFrame
        A received single carrier frame.
    channels : Sequence[BlockFreqChannel]
        The frequency domain channel of every block.

    Raises
    ------
    ArgumentError
        If the frame is not a single carrier frame.
    DimensionError
        If the channels do not match the blocks.

    Returns
    -------
    ndarray
        The ``L_SC N`` time domain symbol estimates.
    """
    _check_frame(rx, channels, Waveform.Sc)

    blocks = []

    for vector, channel in zip(rx.domain_vectors, channels):
        weights = mmse_weights(channel)

        blocks.append(idft(weights.diagonal * vector, vector.size))

    return np.concatenate(blocks)

def equalize_ofdm(rx: RxFrame, channels: Sequence[BlockFreqChannel]) -> ndarray:
    """
    Equalizes an OFDM frame subcarrier by subcarrier.

    Parameters
    ----------
    rx : RxFrame
        A received OFDM frame.
    channels : Sequence[BlockFreqChannel]
        The frequency domain channel of every block.

    Raises
    ------
    ArgumentError
        If the frame is not an OFDM frame.
    DimensionError
        If the channels do not match the blocks.

    Returns
    -------
    ndarray
        The ``M_OFDM N`` subcarrier symbol estimates.
    """
    _check_frame(rx, channels, Waveform.Ofdm)

    return np.concatenate([
        mmse_weights(channel).diagonal * vector for vector, channel in zip(rx.domain_vectors, channels)
    ])

"""
Transmit chains and receive front ends of the three waveforms.

The simulation runs at symbol rate: the matched filter output is represented exactly by
the ambiguity function coefficients of the effective channel matrix, so no oversampled
waveform is synthesized.

The per-block channel of a single carrier or OFDM block is cut from the frame-wide time
domain matrix as its diagonal block, with the cyclic prefix folded in and inter-block
leakage ignored. The OTFS frame is a single block, so its channel is exact.
"""
from .channel  import EffectiveChannelMatrix
from .config   import TransformDirection, Waveform
from .errors   import ArgumentError, DimensionError
from .framing  import FrameGeometry, block_split, cp_add, cp_remove
from .numerics import as_matrix, as_vector, dft, doppler_transform, frequency_conjugate, idft

from .data.frame import RxFrame, TxFrame

import numpy as np

from numpy import ndarray

def _check_geometry(waveform: Waveform, geom: FrameGeometry) -> None:
    if geom.waveform is not waveform:
        raise ArgumentError(f'Frame geometry is for {geom.waveform.tag}, not {waveform.tag}.')

def _check_symbols(x, geom: FrameGeometry) -> ndarray:
    vector = as_vector(x, 'x')

    if vector.size != geom.info_symbols:
        raise DimensionError(f'Expected {geom.info_symbols} information symbols, got {vector.size}.')

    return vector

def sc_transmit(x, geom: FrameGeometry) -> TxFrame:
    """
    Builds a single carrier frame.

    Parameters
    ----------
    x : array_like
        The ``L_SC N`` time domain information symbols.
    geom : FrameGeometry
        A single carrier frame geometry.

    Raises
    ------
    ArgumentError
        If the geometry is not a single carrier geometry.
    DimensionError
        If the number of symbols does not match the geometry.

    Returns
    -------
    TxFrame
        The symbols with a prefix in front of every block.
    """
    _check_geometry(Waveform.Sc, geom)

    symbols = _check_symbols(x, geom)

    return TxFrame(Waveform.Sc, symbols, cp_add(symbols, geom))

def ofdm_transmit(x, geom: FrameGeometry) -> TxFrame:
    """
    Builds an OFDM frame.

    Parameters
    ----------
    x : array_like
        The ``M_OFDM N`` subcarrier symbols, one block of ``M_OFDM`` after another.
    geom : FrameGeometry
        An OFDM frame geometry.

    Raises
    ------
    ArgumentError
        If the geometry is not an OFDM geometry.
    DimensionError
        If the number of symbols does not match the geometry.

    Returns
    -------
    TxFrame
        The per-block inverse DFT of the symbols with a prefix in front of every block.
    """
    _check_geometry(Waveform.Ofdm, geom)

    symbols = _check_symbols(x, geom)

    blocks = symbols.reshape(geom.block_count, geom.info_per_block)

    time = np.concatenate([idft(block, geom.info_per_block) for block in blocks])

    return TxFrame(Waveform.Ofdm, symbols, cp_add(time, geom))

def otfs_transmit(x, geom: FrameGeometry) -> TxFrame:
    """
    Builds an OTFS frame.

    Parameters
    ----------
    x : array_like
        The ``M N`` delay-Doppler symbols, vectorized column-major.
    geom : FrameGeometry
        An OTFS frame geometry.

    Raises
    ------
    ArgumentError
        If the geometry is not an OTFS geometry.
    DimensionError
        If the number of symbols does not match the geometry.

    Returns
    -------
    TxFrame
        The inverse Zak transform of the symbols behind a single prefix.
    """
    _check_geometry(Waveform.Otfs, geom)

    symbols = _check_symbols(x, geom)

    time = doppler_transform(symbols, geom.m, geom.n, TransformDirection.Inverse)

    return TxFrame(Waveform.Otfs, symbols, cp_add(time, geom))

def transmit(x, geom: FrameGeometry) -> TxFrame:
    """
    Builds a frame of the geometry's waveform.

    Parameters
    ----------
    x : array_like
        The information symbols.
    geom : FrameGeometry
        The frame geometry.

    Returns
    -------
    TxFrame
        The transmitted frame.
    """
    match geom.waveform:
        case Waveform.Sc:
            return sc_transmit(x, geom)
        case Waveform.Ofdm:
            return ofdm_transmit(x, geom)
        case _:
            return otfs_transmit(x, geom)

def fold_cyclic_prefix(block, l_cp: int) -> ndarray:
    """
    Reduces the channel of one transmitted block to its prefix-free equivalent.

    This evaluates ``R_CP G A_CP`` with index arithmetic instead of matrix products:
    the prefix rows are dropped and the prefix columns are added onto the block tail
    columns they copy.

    Parameters
    ----------
    block : array_like
        The square channel matrix of one block including its prefix.
    l_cp : int
        The prefix length.

    Raises
    ------
    DimensionError
        If the matrix is not square or not longer than the prefix.

    Returns
    -------
    ndarray
        The square channel between information symbols and prefix-free samples.
    """
    matrix = as_matrix(block, 'block')

    size = matrix.shape[0]

    if matrix.shape[1] != size or size <= l_cp:
        raise DimensionError('Block channel must be square and longer than the prefix.')

    folded = matrix[l_cp:, l_cp:].copy()

    if l_cp:
        folded[:, size - 2 * l_cp:] += matrix[l_cp:, :l_cp]

    return folded

def block_time_channels(g: EffectiveChannelMatrix | ndarray, geom: FrameGeometry) -> list[ndarray]:
    """
    Extracts the effective time domain matrix of every block.

    Parameters
    ----------
    g : EffectiveChannelMatrix | ndarray
        The frame-wide time domain channel covering at least ``tx_len`` samples.
    geom : FrameGeometry
        The frame geometry.

    Raises
    ------
    DimensionError
        If the channel covers fewer samples than the frame.

    Returns
    -------
    list[ndarray]
        One ``info_per_block x info_per_block`` matrix per block.
    """
    matrix = g.matrix if isinstance(g, EffectiveChannelMatrix) else as_matrix(g, 'G')

    if matrix.shape[0] < geom.tx_len or matrix.shape[1] < geom.tx_len:
        raise DimensionError(f'Channel of size {matrix.shape[0]} is shorter than the frame ({geom.tx_len}).')

    length = geom.block_len

    channels = []

    for index in range(geom.block_count):
        start = index * length

        block = matrix[start:start + length, start:start + length]

        channels.append(fold_cyclic_prefix(block, geom.l_cp))

    return channels

def receive_front_end(
    y_time,
    waveform: Waveform,
    geom:     FrameGeometry,
    g:        EffectiveChannelMatrix | ndarray
) -> RxFrame:
    """
    Converts received samples into detection domain vectors and per-block channels.

    Single carrier and OFDM blocks are transformed to the frequency domain by a per-block
    DFT, with frequency domain channels ``F G_n F^H``. The OTFS block is transformed to
    the delay-Doppler domain by the forward Zak transform, which inverts the transmit
    transform, and keeps the full ``M N x M N`` frequency domain channel used by the
    cross-domain detector.

    Parameters
    ----------
    y_time : array_like
        The ``tx_len`` received samples.
    waveform : Waveform
        The waveform of the frame.
    geom : FrameGeometry
        The frame geometry.
    g : EffectiveChannelMatrix | ndarray
        The frame-wide time domain channel.

    Raises
    ------
    ArgumentError
        If the geometry does not belong to the waveform.
    DimensionError
        If the number of samples does not match the geometry.

    Returns
    -------
    RxFrame
        The received frame.
    """
    _check_geometry(Waveform(waveform), geom)

    samples = as_vector(y_time, 'y_time')

    if samples.size != geom.tx_len:
        raise DimensionError(f'Expected {geom.tx_len} received samples, got {samples.size}.')

    time_blocks = block_split(cp_remove(samples, geom), geom)

    time_channels = block_time_channels(g, geom)

    freq_channels = [frequency_conjugate(matrix) for matrix in time_channels]

    if geom.waveform is Waveform.Otfs:
        domain_vectors = [doppler_transform(time_blocks[0], geom.m, geom.n, TransformDirection.Forward)]
    else:
        domain_vectors = [dft(block, geom.info_per_block) for block in time_blocks]

    return RxFrame(
        geom.waveform,
        tuple(time_blocks),
        tuple(domain_vectors),
        tuple(time_channels),
        tuple(freq_channels)
    )

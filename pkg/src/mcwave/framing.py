from .config   import Waveform
from .errors   import ArgumentError, DimensionError
from .numerics import as_vector

import numpy as np

from numpy  import ndarray
from typing import Final

class FrameGeometry(object):
    """
    Represents the frame structure of one waveform.

    This class derives every length of a frame from the waveform, the grid dimensions
    ``M x N`` and the cyclic prefix length. Single carrier and OFDM frames consist of
    ``N`` blocks of ``M`` samples, each a cyclic prefix followed by ``M - l_cp``
    information symbols. An OTFS frame is a single block of ``M N`` information symbols
    preceded by one cyclic prefix, so that it is ``l_cp`` samples longer.
    """
    _block_count: Final[int]

    _info_per_block: Final[int]

    _l_cp: Final[int]

    _m: Final[int]

    _n: Final[int]

    _waveform: Final[Waveform]

    def __init__(self, waveform: Waveform, m: int, n: int, l_cp: int) -> None:
        """
        Initializes an instance using the provided waveform and dimensions.

        Parameters
        ----------
        waveform : Waveform
            The waveform the frame carries.
        m : int
            The number of samples per block (delay bins for OTFS).
        n : int
            The number of blocks (Doppler bins for OTFS).
        l_cp : int
            The cyclic prefix length.

        Raises
        ------
        ArgumentError
            If ``m`` or ``n`` is not positive, ``l_cp`` is not within ``[0, m)``, or the
            prefix is longer than the information part of a block.
        """
        if m <= 0 or n <= 0:
            raise ArgumentError('Frame dimensions must be positive integers.')

        if not 0 <= l_cp < m:
            raise ArgumentError('Cyclic prefix length must be non-negative and less than M.')

        self._waveform = Waveform(waveform)

        self._m = m

        self._n = n

        self._l_cp = l_cp

        if self._waveform is Waveform.Otfs:
            self._info_per_block = m * n

            self._block_count = 1
        else:
            self._info_per_block = m - l_cp

            self._block_count = n

        if l_cp > self._info_per_block:
            raise ArgumentError('Cyclic prefix cannot be longer than the information part of a block.')

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FrameGeometry):
            return NotImplemented

        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        """
        Returns a string representation of the object.

        Returns
        -------
        str
            The class name, waveform tag, dimensions and transmitted length.
        """
        return '{}<{}, M={}, N={}, l_cp={}, tx_len={}>'.format(
            self.__class__.__name__,
            self._waveform.tag,
            self._m,
            self._n,
            self._l_cp,
            self.tx_len
        )

    def _key(self) -> tuple:
        return (self._waveform, self._m, self._n, self._l_cp)

    @property
    def block_count(self) -> int:
        """
        Gets the number of CP-separated blocks.

        Returns
        -------
        int
            ``N`` for single carrier and OFDM, 1 for OTFS.
        """
        return self._block_count

    @property
    def block_len(self) -> int:
        """
        Gets the transmitted length of one block, including its prefix.

        Returns
        -------
        int
            ``info_per_block + l_cp``.
        """
        return self._info_per_block + self._l_cp

    @property
    def info_per_block(self) -> int:
        """
        Gets the number of information symbols per block.

        Returns
        -------
        int
            ``M - l_cp`` for single carrier and OFDM, ``M N`` for OTFS.
        """
        return self._info_per_block

    @property
    def info_symbols(self) -> int:
        """
        Gets the number of information symbols per frame.

        Returns
        -------
        int
            ``info_per_block * block_count``.
        """
        return self._info_per_block * self._block_count

    @property
    def l_cp(self) -> int:
        """
        Gets the length of a single cyclic prefix.

        Returns
        -------
        int
            The prefix length.
        """
        return self._l_cp

    @property
    def m(self) -> int:
        """
        Gets the number of samples per block, or delay bins for OTFS.

        Returns
        -------
        int
            The grid dimension M.
        """
        return self._m

    @property
    def n(self) -> int:
        """
        Gets the number of blocks, or Doppler bins for OTFS.

        Returns
        -------
        int
            The grid dimension N.
        """
        return self._n

    @property
    def total_cp(self) -> int:
        """
        Gets the number of prefix samples per frame.

        Returns
        -------
        int
            ``l_cp * block_count``.
        """
        return self._l_cp * self._block_count

    @property
    def tx_len(self) -> int:
        """
        Gets the number of transmitted samples per frame.

        Returns
        -------
        int
            ``M N`` for single carrier and OFDM, ``M N + l_cp`` for OTFS.
        """
        return self.block_len * self._block_count

    @property
    def waveform(self) -> Waveform:
        """
        Gets the waveform the frame carries.

        Returns
        -------
        Waveform
            The waveform.
        """
        return self._waveform

def cp_add(x, geom: FrameGeometry) -> ndarray:
    """
    Prefixes every block with a copy of its last ``l_cp`` samples.

    Parameters
    ----------
    x : array_like
        The ``info_symbols`` samples of the frame.
    geom : FrameGeometry
        The frame geometry.

    Raises
    ------
    DimensionError
        If the vector length differs from ``geom.info_symbols``.

    Returns
    -------
    ndarray
        The ``tx_len`` transmitted samples.
    """
    vector = as_vector(x)

    if vector.size != geom.info_symbols:
        raise DimensionError(f'Expected {geom.info_symbols} samples, got {vector.size}.')

    blocks = vector.reshape(geom.block_count, geom.info_per_block)

    if geom.l_cp == 0:
        return blocks.reshape(-1).copy()

    return np.hstack((blocks[:, -geom.l_cp:], blocks)).reshape(-1)

def cp_remove(y, geom: FrameGeometry) -> ndarray:
    """
    Drops the first ``l_cp`` samples of every block.

    Parameters
    ----------
    y : array_like
        The ``tx_len`` received samples.
    geom : FrameGeometry
        The frame geometry.

    Raises
    ------
    DimensionError
        If the vector length differs from ``geom.tx_len``.

    Returns
    -------
    ndarray
        The ``info_symbols`` samples after prefix removal.
    """
    vector = as_vector(y)

    if vector.size != geom.tx_len:
        raise DimensionError(f'Expected {geom.tx_len} samples, got {vector.size}.')

    return vector.reshape(geom.block_count, geom.block_len)[:, geom.l_cp:].reshape(-1)

def block_split(x, geom: FrameGeometry) -> list[ndarray]:
    """
    Splits a frame into its contiguous blocks.

    Parameters
    ----------
    x : array_like
        A vector whose length is a multiple of ``geom.block_count``.
    geom : FrameGeometry
        The frame geometry.

    Raises
    ------
    DimensionError
        If the length is not divisible by the block count.

    Returns
    -------
    list[ndarray]
        ``block_count`` blocks of equal length.
    """
    vector = as_vector(x)

    if vector.size % geom.block_count:
        raise DimensionError(f'Length {vector.size} is not divisible into {geom.block_count} blocks.')

    return list(vector.reshape(geom.block_count, -1))

def block_cp_add_matrix(info_len: int, l_cp: int) -> ndarray:
    """
    Materializes the 0/1 prefix insertion matrix of one block.

    Parameters
    ----------
    info_len : int
        The number of information samples of the block.
    l_cp : int
        The prefix length.

    Returns
    -------
    ndarray
        The ``(l_cp + info_len) x info_len`` matrix stacking the last ``l_cp`` rows of the
        identity on top of the identity.
    """
    identity = np.eye(info_len)

    return np.vstack((identity[info_len - l_cp:], identity))

def block_cp_remove_matrix(info_len: int, l_cp: int) -> ndarray:
    """
    Materializes the 0/1 prefix removal matrix of one block.

    Parameters
    ----------
    info_len : int
        The number of information samples of the block.
    l_cp : int
        The prefix length.

    Returns
    -------
    ndarray
        The ``info_len x (l_cp + info_len)`` identity with its first ``l_cp`` rows removed.
    """
    return np.eye(l_cp + info_len)[l_cp:]

def cp_add_matrix(geom: FrameGeometry) -> ndarray:
    """
    Materializes the frame-wide prefix insertion matrix.

    Returns
    -------
    ndarray
        The block diagonal ``tx_len x info_symbols`` 0/1 matrix.
    """
    return np.kron(np.eye(geom.block_count), block_cp_add_matrix(geom.info_per_block, geom.l_cp))

def cp_remove_matrix(geom: FrameGeometry) -> ndarray:
    """
    Materializes the frame-wide prefix removal matrix.

    Returns
    -------
    ndarray
        The block diagonal ``info_symbols x tx_len`` 0/1 matrix.
    """
    return np.kron(np.eye(geom.block_count), block_cp_remove_matrix(geom.info_per_block, geom.l_cp))

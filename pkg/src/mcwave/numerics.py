"""
Unitary transforms and dense helpers shared by every other module.

All transforms use the unitary ``1/sqrt(n)`` normalization in both directions, so that
variances are preserved when a vector moves between the time, frequency and
delay-Doppler domains. Every fast transform has a dense matrix counterpart which the
tests use as an oracle.
"""
from .config import TransformDirection
from .errors import ArgumentError, DimensionError

import numpy as np

from numpy     import ndarray
from scipy.fft import fft, ifft

def as_vector(x, name: str = 'x') -> ndarray:
    """
    Validates and converts the input to a one-dimensional complex vector.

    Parameters
    ----------
    x : array_like
        The values to convert.
    name : str, optional
        The argument name used in error messages.

    Raises
    ------
    DimensionError
        If the input is not one-dimensional or is empty.
    ArgumentError
        If the input contains non-finite entries.

    Returns
    -------
    ndarray
        A ``complex128`` copy-free view where possible.
    """
    vector = np.asarray(x, dtype=np.complex128)

    if vector.ndim != 1 or vector.size == 0:
        raise DimensionError(f'{name} must be a non-empty one-dimensional vector.')

    if not np.all(np.isfinite(vector)):
        raise ArgumentError(f'{name} contains non-finite entries.')

    return vector

def as_matrix(a, name: str = 'matrix') -> ndarray:
    """
    Validates and converts the input to a two-dimensional complex matrix.

    Parameters
    ----------
    a : array_like
        The values to convert.
    name : str, optional
        The argument name used in error messages.

    Raises
    ------
    DimensionError
        If the input is not two-dimensional or is empty.
    ArgumentError
        If the input contains non-finite entries.

    Returns
    -------
    ndarray
        A ``complex128`` matrix.
    """
    matrix = np.asarray(a, dtype=np.complex128)

    if matrix.ndim != 2 or matrix.size == 0:
        raise DimensionError(f'{name} must be a non-empty two-dimensional matrix.')

    if not np.all(np.isfinite(matrix)):
        raise ArgumentError(f'{name} contains non-finite entries.')

    return matrix

def _check_size(x: ndarray, size: int) -> None:
    if size <= 0:
        raise ArgumentError('Transform size must be a positive integer.')

    if x.size != size:
        raise DimensionError(f'Vector of length {x.size} does not match transform size {size}.')

def dft(x, size: int) -> ndarray:
    """
    Applies the unitary discrete Fourier transform.

    Parameters
    ----------
    x : array_like
        The input vector of length ``size``.
    size : int
        The transform size.

    Raises
    ------
    DimensionError
        If the vector length differs from ``size``.

    Returns
    -------
    ndarray
        ``F_size @ x`` with ``F[k, n] = exp(-2j pi k n / size) / sqrt(size)``.
    """
    vector = as_vector(x)

    _check_size(vector, size)

    return fft(vector, norm='ortho')

def idft(x, size: int) -> ndarray:
    """
    Applies the unitary inverse discrete Fourier transform.

    Parameters
    ----------
    x : array_like
        The input vector of length ``size``.
    size : int
        The transform size.

    Raises
    ------
    DimensionError
        If the vector length differs from ``size``.

    Returns
    -------
    ndarray
        ``F_size^H @ x``.
    """
    vector = as_vector(x)

    _check_size(vector, size)

    return ifft(vector, norm='ortho')

def doppler_transform(x, m: int, n: int, direction: TransformDirection) -> ndarray:
    """
    Applies the Kronecker structured transform along the Doppler axis of a vectorized grid.

    The vector is the column-major vectorization of an ``m x n`` grid, so that entry
    ``(k, l)`` is stored at index ``l * m + k``. The forward direction applies
    ``kron(F_n, I_m)``, the inverse direction ``kron(F_n^H, I_m)``; both are computed as
    ``m`` interleaved length-``n`` transforms.

    Parameters
    ----------
    x : array_like
        The vectorized grid of length ``m * n``.
    m : int
        The number of delay bins.
    n : int
        The number of Doppler bins.
    direction : TransformDirection
        Whether to apply the forward or the inverse transform.

    Raises
    ------
    ArgumentError
        If ``m`` or ``n`` is not positive.
    DimensionError
        If the vector length differs from ``m * n``.

    Returns
    -------
    ndarray
        The transformed vector, in the same vectorization.
    """
    vector = as_vector(x)

    if m <= 0 or n <= 0:
        raise ArgumentError('Grid dimensions must be positive integers.')

    if vector.size != m * n:
        raise DimensionError(f'Vector of length {vector.size} does not match a {m} x {n} grid.')

    grid = vector.reshape(n, m)

    if direction is TransformDirection.Forward:
        return fft(grid, axis=0, norm='ortho').reshape(-1)

    return ifft(grid, axis=0, norm='ortho').reshape(-1)

def dft_matrix(size: int) -> ndarray:
    """
    Materializes the unitary DFT matrix.

    Parameters
    ----------
    size : int
        The matrix dimension.

    Returns
    -------
    ndarray
        The ``size x size`` matrix ``F``.
    """
    if size <= 0:
        raise ArgumentError('Transform size must be a positive integer.')

    indices = np.arange(size)

    return np.exp(-2j * np.pi * np.outer(indices, indices) / size) / np.sqrt(size)

def doppler_matrix(m: int, n: int, direction: TransformDirection) -> ndarray:
    """
    Materializes the Kronecker structured Doppler transform matrix.

    Parameters
    ----------
    m : int
        The number of delay bins.
    n : int
        The number of Doppler bins.
    direction : TransformDirection
        Whether to build ``kron(F_n, I_m)`` or ``kron(F_n^H, I_m)``.

    Returns
    -------
    ndarray
        The ``m n x m n`` transform matrix.
    """
    f_n = dft_matrix(n)

    if direction is TransformDirection.Inverse:
        f_n = f_n.conj().T

    return np.kron(f_n, np.eye(m))

def frequency_conjugate(g) -> ndarray:
    """
    Conjugates a square time domain matrix by the unitary DFT.

    Parameters
    ----------
    g : array_like
        A square matrix.

    Raises
    ------
    DimensionError
        If the matrix is not square.

    Returns
    -------
    ndarray
        ``F @ g @ F^H``, computed with two batched FFTs.
    """
    matrix = as_matrix(g)

    if matrix.shape[0] != matrix.shape[1]:
        raise DimensionError('Only square matrices can be conjugated by the DFT.')

    return ifft(fft(matrix, axis=0, norm='ortho'), axis=1, norm='ortho')

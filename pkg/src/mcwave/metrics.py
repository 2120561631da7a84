"""
Pragmatic capacity, auxiliary channel fitting and symbol error statistics.

The pragmatic capacity of a frame is the symbol-level generalized mutual information
between the transmitted symbols and the receiver's estimates under a fitted scalar
Gaussian auxiliary channel ``x_hat = alpha x + noise``.
"""
from .errors   import DegenerateFitError, DimensionError
from .framing  import FrameGeometry
from .mapping  import Alphabet, nearest_indices
from .numerics import as_vector

from .data._types import AuxChannelModel

import logging

import numpy as np

from numpy         import ndarray
from scipy.special import logsumexp
from typing        import Final

logger = logging.getLogger(__name__)

SIGMA2_FLOOR: Final[float] = 1e-12
"""float: The smallest auxiliary channel noise variance."""

def _pair(x, x_hat) -> tuple[ndarray, ndarray]:
    reference = as_vector(x, 'x')
    estimate  = as_vector(x_hat, 'x_hat')

    if reference.size != estimate.size:
        raise DimensionError(f'Symbol vectors differ in length ({reference.size} != {estimate.size}).')

    return reference, estimate

def fit_aux_channel(x, x_hat) -> AuxChannelModel:
    """
    Fits a scalar Gaussian channel from the transmitted symbols to their estimates.

    Parameters
    ----------
    x : array_like
        The transmitted symbols.
    x_hat : array_like
        The estimates, of equal length.

    Raises
    ------
    DimensionError
        If the lengths differ or are less than 2.
    DegenerateFitError
        If the transmitted symbols have no energy.

    Returns
    -------
    AuxChannelModel
        The least-squares gain and the floored residual variance.
    """
    reference, estimate = _pair(x, x_hat)

    if reference.size < 2:
        raise DimensionError('At least two symbols are required to fit a channel.')

    energy = np.vdot(reference, reference).real

    if energy == 0:
        raise DegenerateFitError('Cannot fit a channel to symbols without energy.')

    alpha = complex(np.vdot(reference, estimate) / energy)

    sigma2 = float(np.mean(np.abs(estimate - alpha * reference) ** 2))

    return AuxChannelModel(alpha, max(sigma2, SIGMA2_FLOOR))

def pragmatic_capacity(x, x_hat, alphabet: Alphabet) -> float:
    """
    Estimates the pragmatic capacity of one frame.

    With the fitted channel and ``p(y | a) ~ exp(-|y - alpha a| ** 2 / sigma2)`` this is

        I = mean_k log2(p(x_hat_k | x_k) / mean_a p(x_hat_k | a))

    evaluated in the log domain and clipped to ``[0, bits_per_symbol]``.

    Parameters
    ----------
    x : array_like
        The transmitted symbols.
    x_hat : array_like
        The estimates, of equal length.
    alphabet : Alphabet
        The constellation of the transmitted symbols.

    Raises
    ------
    DimensionError
        If the lengths differ.

    Returns
    -------
    float
        The capacity in bits per symbol; 0 for a degenerate fit.
    """
    reference, estimate = _pair(x, x_hat)

    try:
        alpha, sigma2 = fit_aux_channel(reference, estimate)
    except DegenerateFitError:
        logger.warning('Degenerate auxiliary channel fit, capacity set to zero.')

        return 0.0

    matched = -np.abs(estimate - alpha * reference) ** 2 / sigma2

    candidates = -np.abs(estimate[:, np.newaxis] - alpha * alphabet.points[np.newaxis, :]) ** 2 / sigma2

    nats = matched - logsumexp(candidates, axis=1) + np.log(alphabet.order)

    return float(np.clip(np.mean(nats) / np.log(2.0), 0.0, alphabet.bits_per_symbol))

def symbol_error_rate(x, x_hat, alphabet: Alphabet) -> float:
    """
    Counts the hard decision errors of a frame.

    Parameters
    ----------
    x : array_like
        The transmitted symbols.
    x_hat : array_like
        The estimates, of equal length.
    alphabet : Alphabet
        The constellation.

    Raises
    ------
    DimensionError
        If the lengths differ.

    Returns
    -------
    float
        The fraction of estimates whose nearest point differs from the transmitted one.
    """
    reference, estimate = _pair(x, x_hat)

    return float(np.mean(nearest_indices(reference, alphabet) != nearest_indices(estimate, alphabet)))

def effective_throughput(capacity: float, geom: FrameGeometry) -> float:
    """
    Scales a per-symbol capacity by the share of transmitted samples that carry data.

    Parameters
    ----------
    capacity : float
        The pragmatic capacity in bits per symbol.
    geom : FrameGeometry
        The frame geometry.

    Returns
    -------
    float
        The capacity in bits per transmitted sample.
    """
    return capacity * geom.info_symbols / geom.tx_len

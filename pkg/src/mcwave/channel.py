"""
Random multi-connectivity link realizations and the effective channel matrix.

Each of the ``M_AP`` access points transmits the same samples; the user receives their
superposition, every copy scaled by a Bernoulli blockage gain, delayed by the link's
time offset and rotated by its frequency offset. After matched filtering the sample
``m`` depends on the transmitted sample ``n`` through

    g[m, n] = h exp(2j pi n nu) conj(A_p((n - m) + tau, nu))

summed over the links, where ``A_p`` is the pulse ambiguity function.
"""
from .data.link import ChannelRealization, LinkState
from .errors    import ArgumentError
from .numerics  import as_vector
from .pulse     import PulseShape, ambiguity, build_ambiguity_grid

import logging

import numpy as np

from dataclasses  import dataclass, field
from numpy        import ndarray
from numpy.random import Generator
from typing       import Callable

logger = logging.getLogger(__name__)

@dataclass(frozen=True, eq=False)
class EffectiveChannelMatrix:
    """Represents the banded time domain channel between transmitted and received samples."""
    matrix: ndarray = field(repr=False)
    """ndarray: The ``length x length`` complex matrix."""

    bandwidth: int
    """int: An upper bound on ``|n - m|`` for any non-zero entry."""

    @property
    def length(self) -> int:
        """
        Gets the number of samples the matrix acts on.

        Returns
        -------
        int
            The matrix dimension.
        """
        return self.matrix.shape[0]

    def apply(self, x) -> ndarray:
        """
        Passes transmitted samples through the channel, without noise.

        Parameters
        ----------
        x : array_like
            The transmitted samples.

        Returns
        -------
        ndarray
            The received, matched filtered samples.
        """
        return self.matrix @ as_vector(x)

def sample_links(
    q:          float,
    tau_max:    float,
    nu_max:     float,
    m_ap:       int,
    rng:        Generator,
    offset_rng: Generator = None,
    seed:       int = None
) -> ChannelRealization:
    """
    Draws one multi-connectivity channel realization.

    Every link is blocked independently with probability ``q``. Time offsets are uniform
    on ``[0, tau_max]`` and frequency offsets uniform on ``[-nu_max, nu_max]``.

    Parameters
    ----------
    q : float
        The blocking rate.
    tau_max : float
        The maximum time offset in symbol periods.
    nu_max : float
        The maximum frequency offset in subcarrier spacings.
    m_ap : int
        The number of access points.
    rng : Generator
        The stream the blockage is drawn from.
    offset_rng : Generator, optional
        The stream the offsets are drawn from; defaults to ``rng``.
    seed : int, optional
        The frame seed recorded in the realization.

    Raises
    ------
    ArgumentError
        If ``q`` is not a probability, an offset bound is negative, or ``m_ap`` is not
        positive.

    Returns
    -------
    ChannelRealization
        The drawn link states.
    """
    if not 0.0 <= q <= 1.0:
        raise ArgumentError('Blocking rate must be within the range of 0 and 1.')

    if tau_max < 0 or nu_max < 0:
        raise ArgumentError('Offset bounds must be non-negative.')

    if m_ap <= 0:
        raise ArgumentError('The number of access points must be positive.')

    offset_rng = offset_rng or rng

    blocked = rng.random(m_ap) < q

    taus = offset_rng.uniform(0.0, tau_max, m_ap)
    nus  = offset_rng.uniform(-nu_max, nu_max, m_ap)

    links = tuple(
        LinkState(bool(b), float(tau), float(nu)) for b, tau, nu in zip(blocked, taus, nus)
    )

    realization = ChannelRealization(links, seed)

    logger.debug('Drew %d links, %d blocked.', m_ap, realization.blocked_count)

    return realization

def precompensate(
    realization: ChannelRealization,
    hook:        Callable[[LinkState], LinkState] = None
) -> ChannelRealization:
    """
    Applies a per access point delay-Doppler pre-compensation to a realization.

    The drawn offsets are already residual offsets, so the default is a pass-through.

    Parameters
    ----------
    realization : ChannelRealization
        The drawn realization.
    hook : Callable[[LinkState], LinkState], optional
        A function mapping a link to its state after pre-compensation.

    Returns
    -------
    ChannelRealization
        The compensated realization.
    """
    if hook is None:
        return realization

    return ChannelRealization(tuple(hook(link) for link in realization.links), realization.rng_seed)

def effective_gain(link: LinkState, m: int, n: int, pulse: PulseShape, subcarriers: int) -> complex:
    """
    Evaluates one effective channel coefficient of a single link.

    Parameters
    ----------
    link : LinkState
        The link state.
    m : int
        The received sample index.
    n : int
        The transmitted sample index.
    pulse : PulseShape
        The shared transmit pulse.
    subcarriers : int
        The number of subcarriers M defining the frequency offset unit.

    Raises
    ------
    ArgumentError
        If a sample index is negative.

    Returns
    -------
    complex
        ``h exp(2j pi n nu) conj(A_p((n - m) + tau, nu))``.
    """
    if m < 0 or n < 0:
        raise ArgumentError('Sample indices must be non-negative.')

    if link.blocked:
        return 0j

    nu = link.doppler_per_sample(subcarriers)

    phase = np.exp(2j * np.pi * n * nu)

    return complex(link.gain * phase * np.conj(ambiguity(pulse, (n - m) + link.tau, nu)))

def _taps(link: LinkState, pulse: PulseShape, subcarriers: int) -> tuple[ndarray, ndarray]:
    """Returns the lags ``n - m`` with non-zero coefficients and the conjugated ambiguity values."""
    nu = link.doppler_per_sample(subcarriers)

    lags = np.arange(int(np.floor(-pulse.support - link.tau)), int(np.ceil(pulse.support - link.tau)) + 1)

    # One delay node per integer lag, on the link's own Doppler
    grid = build_ambiguity_grid(pulse, (lags[0] + link.tau, lags[-1] + link.tau), (nu, nu), (lags.size, 1))

    return lags, np.conj(grid.values[:, 0])

def link_matrix(link: LinkState, length: int, pulse: PulseShape, subcarriers: int) -> ndarray:
    """
    Builds the time domain matrix of a single link.

    Parameters
    ----------
    link : LinkState
        The link state.
    length : int
        The number of transmitted samples.
    pulse : PulseShape
        The shared transmit pulse.
    subcarriers : int
        The number of subcarriers M defining the frequency offset unit.

    Raises
    ------
    ArgumentError
        If ``length`` is not positive.

    Returns
    -------
    ndarray
        The ``length x length`` banded matrix of the link.
    """
    if length <= 0:
        raise ArgumentError('Channel length must be a positive integer.')

    matrix = np.zeros((length, length), dtype=np.complex128)

    if link.blocked:
        return matrix

    phase = np.exp(2j * np.pi * np.arange(length) * link.doppler_per_sample(subcarriers))

    lags, values = _taps(link, pulse, subcarriers)

    for lag, value in zip(lags, values):
        rows = np.arange(max(0, -lag), min(length, length - lag))

        if rows.size:
            matrix[rows, rows + lag] += value * phase[rows + lag]

    return matrix

def build_channel_matrix(
    realization: ChannelRealization,
    length:      int,
    pulse:       PulseShape,
    subcarriers: int
) -> EffectiveChannelMatrix:
    """
    Builds the effective time domain channel matrix summed over all links.

    Parameters
    ----------
    realization : ChannelRealization
        The link states of the frame.
    length : int
        The number of transmitted samples of the active frame.
    pulse : PulseShape
        The shared transmit pulse.
    subcarriers : int
        The number of subcarriers M defining the frequency offset unit.

    Raises
    ------
    ArgumentError
        If ``length`` is not positive.

    Returns
    -------
    EffectiveChannelMatrix
        The banded sum of the link matrices.
    """
    if length <= 0:
        raise ArgumentError('Channel length must be a positive integer.')

    matrix = np.zeros((length, length), dtype=np.complex128)

    largest_delay = max((link.tau for link in realization.links), default=0.0)

    for link in realization.links:
        matrix += link_matrix(link, length, pulse, subcarriers)

    bandwidth = int(pulse.support) + int(np.ceil(largest_delay))

    return EffectiveChannelMatrix(matrix, bandwidth)

def add_awgn(signal, n0: float, rng: Generator) -> ndarray:
    """
    Adds circularly-symmetric complex white Gaussian noise.

    Parameters
    ----------
    signal : array_like
        The noiseless samples.
    n0 : float
        The noise variance per complex sample.
    rng : Generator
        The noise stream.

    Raises
    ------
    ArgumentError
        If ``n0`` is negative.

    Returns
    -------
    ndarray
        The noisy samples; an unchanged copy when ``n0`` is zero.
    """
    if n0 < 0:
        raise ArgumentError('Noise density must be non-negative.')

    signal = as_vector(signal, 'signal')

    if n0 == 0:
        return signal.copy()

    noise = rng.standard_normal((2, signal.size))

    return signal + np.sqrt(n0 / 2.0) * (noise[0] + 1j * noise[1])

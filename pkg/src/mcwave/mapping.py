"""
Bit to symbol mapping, hard demapping and the Gaussian APP symbol detector.

Square QAM alphabets are Gray labelled per axis. The first half of the bits of a symbol
selects the in-phase level and the second half the quadrature level, and the index of
a point is the integer value of its bits read most significant bit first. For QPSK this
gives ``b0 b1 -> ((1 - 2 b0) + 1j (1 - 2 b1)) / sqrt(2)``.
"""
from .config      import Modulation
from .data._types import AppResult, SoftSymbolEnsemble
from .errors      import ArgumentError
from .numerics    import as_vector

import numpy as np

from dataclasses   import dataclass, field
from numpy         import ndarray
from scipy.special import softmax
from typing        import Self

@dataclass(frozen=True, eq=False)
class Alphabet:
    """Represents a zero-mean constellation together with its bit labels."""
    points: ndarray = field(repr=False)
    """ndarray: The complex points, indexed by the integer value of their bit label."""

    bits_per_symbol: int
    """int: The number of bits carried by one point."""

    energy: float
    """float: The average symbol energy E_s."""

    def __post_init__(self) -> None:
        """
        Validates the alphabet.

        Raises
        ------
        ArgumentError
            If the number of points is not ``2 ** bits_per_symbol``, or the points are
            not zero mean with average energy ``energy``.
        """
        points = np.asarray(self.points, dtype=np.complex128)

        if self.bits_per_symbol <= 0 or points.size != 2 ** self.bits_per_symbol:
            raise ArgumentError('An alphabet must hold 2 ** bits_per_symbol points.')

        if abs(points.mean()) > 1e-9 * max(1.0, self.energy):
            raise ArgumentError('Alphabet points must be zero mean.')

        if abs(np.mean(np.abs(points) ** 2) - self.energy) > 1e-9 * max(1.0, self.energy):
            raise ArgumentError('Alphabet energy does not match its points.')

        object.__setattr__(self, 'points', points)

    @property
    def order(self) -> int:
        """
        Gets the number of points.

        Returns
        -------
        int
            ``2 ** bits_per_symbol``.
        """
        return self.points.size

    @property
    def peak_energy(self) -> float:
        """
        Gets the largest point energy.

        Returns
        -------
        float
            ``max |a| ** 2`` over the points.
        """
        return float(np.max(np.abs(self.points) ** 2))

    @classmethod
    def qpsk(cls, energy: float = 1.0) -> Self:
        """
        Creates the Gray labelled QPSK alphabet.

        Parameters
        ----------
        energy : float, optional
            The average symbol energy.

        Returns
        -------
        Alphabet
            The points ``(+-1 +-1j) sqrt(energy / 2)``.
        """
        return cls.qam(4, energy)

    @classmethod
    def qam(cls, order: int, energy: float = 1.0) -> Self:
        """
        Creates a Gray labelled square QAM alphabet.

        Parameters
        ----------
        order : int
            The number of points, an even power of two.
        energy : float, optional
            The average symbol energy.

        Raises
        ------
        ArgumentError
            If the order is not an even power of two, or the energy is not positive.

        Returns
        -------
        Alphabet
            The alphabet, indexed by bit label.
        """
        bits = int(order).bit_length() - 1

        if order < 4 or 2 ** bits != order or bits % 2:
            raise ArgumentError('QAM order must be an even power of two.')

        if energy <= 0:
            raise ArgumentError('Symbol energy must be positive.')

        half = bits // 2

        labels = np.arange(order)

        in_phase   = _gray_level(labels >> half, half)
        quadrature = _gray_level(labels & ((1 << half) - 1), half)

        scale = np.sqrt(energy * 3.0 / (2.0 * (order - 1)))

        return cls(scale * (in_phase + 1j * quadrature), bits, float(energy))

    @classmethod
    def for_modulation(cls, modulation: Modulation, energy: float = 1.0) -> Self:
        """
        Creates the alphabet of a configured modulation.

        Parameters
        ----------
        modulation : Modulation
            The modulation.
        energy : float, optional
            The average symbol energy.

        Returns
        -------
        Alphabet
            The matching square QAM alphabet.
        """
        return cls.qam(int(modulation), energy)

def _gray_level(labels: ndarray, bits: int) -> ndarray:
    """Maps Gray labels of one axis to the PAM levels ``2 ** bits - 1, ..., -(2 ** bits - 1)``."""
    binary = labels.copy()

    shift = labels >> 1

    while np.any(shift):
        binary ^= shift

        shift >>= 1

    return ((1 << bits) - 1 - 2 * binary).astype(float)

def _check_bits(bits) -> ndarray:
    values = np.asarray(bits)

    if values.ndim != 1:
        raise ArgumentError('Bits must be a one-dimensional sequence.')

    if values.size and not np.all((values == 0) | (values == 1)):
        raise ArgumentError('Bits must be either 0 or 1.')

    return values.astype(np.int64)

def map_bits(bits, alphabet: Alphabet) -> ndarray:
    """
    Maps a bit sequence to constellation points.

    Parameters
    ----------
    bits : array_like
        The bits, most significant bit of each label first.
    alphabet : Alphabet
        The target constellation.

    Raises
    ------
    ArgumentError
        If the number of bits is not divisible by ``bits_per_symbol`` or an entry is
        neither 0 nor 1.

    Returns
    -------
    ndarray
        One point per ``bits_per_symbol`` bits.
    """
    values = _check_bits(bits)

    if values.size % alphabet.bits_per_symbol:
        raise ArgumentError('Number of bits is not divisible by the bits per symbol.')

    weights = 1 << np.arange(alphabet.bits_per_symbol - 1, -1, -1)

    indices = values.reshape(-1, alphabet.bits_per_symbol) @ weights

    return alphabet.points[indices]

def nearest_indices(symbols, alphabet: Alphabet) -> ndarray:
    """
    Decides every symbol for the nearest constellation point.

    Parameters
    ----------
    symbols : array_like
        The noisy symbols.
    alphabet : Alphabet
        The constellation.

    Returns
    -------
    ndarray
        The point index of every symbol; ties go to the lowest index.
    """
    values = as_vector(symbols, 'symbols')

    distances = np.abs(values[:, np.newaxis] - alphabet.points[np.newaxis, :]) ** 2

    return np.argmin(distances, axis=1)

def hard_demap(symbols, alphabet: Alphabet) -> ndarray:
    """
    Maps noisy symbols back to the bits of their nearest points.

    Parameters
    ----------
    symbols : array_like
        The noisy symbols.
    alphabet : Alphabet
        The constellation.

    Returns
    -------
    ndarray
        ``bits_per_symbol`` bits per symbol as ``uint8``.
    """
    indices = nearest_indices(symbols, alphabet)

    shifts = np.arange(alphabet.bits_per_symbol - 1, -1, -1)

    return ((indices[:, np.newaxis] >> shifts) & 1).astype(np.uint8).reshape(-1)

def app_detect(prior: SoftSymbolEnsemble, alphabet: Alphabet) -> AppResult:
    """
    Computes the a posteriori symbol distributions under a Gaussian observation model.

    Every position ``l`` is treated as ``x_bar[l] = a + e`` with ``e`` complex Gaussian of
    the shared prior variance, so that ``P(a) ~ exp(-|x_bar[l] - a| ** 2 / variance)``.
    The probabilities are normalized in the log domain.

    Parameters
    ----------
    prior : SoftSymbolEnsemble
        The observed means and their shared variance.
    alphabet : Alphabet
        The constellation with uniform a priori probabilities.

    Raises
    ------
    ArgumentError
        If the prior variance is negative or not finite.

    Returns
    -------
    AppResult
        The categorical posterior means, variances and probabilities. A zero prior
        variance yields hard decisions with zero posterior variance.
    """
    means = as_vector(prior.means, 'prior.means')

    if not np.isfinite(prior.variance) or prior.variance < 0:
        raise ArgumentError('Prior variance must be a non-negative finite number.')

    distances = np.abs(means[:, np.newaxis] - alphabet.points[np.newaxis, :]) ** 2

    if prior.variance == 0:
        indices = np.argmin(distances, axis=1)

        probabilities = np.zeros_like(distances)
        probabilities[np.arange(means.size), indices] = 1.0

        return AppResult(alphabet.points[indices], np.zeros(means.size), probabilities)

    probabilities = softmax(-distances / prior.variance, axis=1)

    posterior_means = probabilities @ alphabet.points

    second_moments = probabilities @ (np.abs(alphabet.points) ** 2)

    variances = np.clip(second_moments - np.abs(posterior_means) ** 2, 0.0, None)

    return AppResult(posterior_means, variances, probabilities)

"""
Transmit shaping pulse and its ambiguity function.

Time is measured in symbol periods (``T_s = 1``) and Doppler in cycles per symbol period.
The ambiguity function

    A_p(tau, nu) = integral of p(t) p*(t - tau) exp(-2j pi nu (t - tau)) dt

is evaluated by composite Simpson quadrature over the overlap of the two truncated
supports, so that the integrand is smooth on the whole integration interval.
"""
from .config import PulseKind
from .errors import ArgumentError

import numpy as np

from dataclasses       import dataclass, field
from functools         import cached_property
from numpy             import ndarray
from scipy.integrate   import simpson
from scipy.interpolate import RegularGridInterpolator

@dataclass(frozen=True)
class PulseShape:
    """
    Represents a truncated, unit-energy transmit pulse.

    The pulse is a root-raised-cosine truncated to ``[-truncation, truncation]`` symbol
    periods and renormalized to unit energy under the same quadrature rule that evaluates
    the ambiguity function, so that ``A_p(0, 0) == 1``.
    """
    kind: PulseKind = PulseKind.RootRaisedCosine
    """PulseKind: The pulse family."""

    rolloff: float = 0.3
    """float: The excess bandwidth factor in [0, 1]."""

    truncation: int = 8
    """int: The half support in symbol periods."""

    oversampling: int = 16
    """int: The number of quadrature samples per symbol period."""

    def __post_init__(self) -> None:
        """
        Validates the pulse parameters.

        Raises
        ------
        ArgumentError
            If the rolloff is outside of [0, 1], or the truncation or oversampling is not
            a positive integer.
        """
        if not 0.0 <= self.rolloff <= 1.0:
            raise ArgumentError('Rolloff must be within the range of 0 and 1.')

        if int(self.truncation) != self.truncation or self.truncation <= 0:
            raise ArgumentError('Truncation must be a positive integer.')

        if int(self.oversampling) != self.oversampling or self.oversampling <= 0:
            raise ArgumentError('Oversampling must be a positive integer.')

    @cached_property
    def _scale(self) -> float:
        span = self.truncation

        t = np.linspace(-span, span, 2 * span * self.oversampling + 1)

        energy = simpson(np.abs(_root_raised_cosine(t, self.rolloff)) ** 2, x=t)

        return 1.0 / np.sqrt(energy)

    @property
    def support(self) -> float:
        """
        Gets the half support of the ambiguity function in symbol periods.

        Returns
        -------
        float
            Twice the pulse truncation; the ambiguity function is exactly zero beyond.
        """
        return 2.0 * self.truncation

    def samples(self, t) -> ndarray:
        """
        Evaluates the truncated, normalized pulse.

        Parameters
        ----------
        t : array_like
            Time instants in symbol periods.

        Returns
        -------
        ndarray
            The real pulse values, zero outside of the truncated support.
        """
        t = np.asarray(t, dtype=float)

        values = self._scale * _root_raised_cosine(t, self.rolloff)

        return np.where(np.abs(t) <= self.truncation, values, 0.0)

def _root_raised_cosine(t: ndarray, beta: float) -> ndarray:
    """
    Evaluates the untruncated root-raised-cosine pulse with unit symbol period.

    The two removable singularities at ``t == 0`` and ``|4 beta t| == 1`` are replaced by
    their limits.
    """
    t = np.atleast_1d(np.asarray(t, dtype=float))

    h = np.empty_like(t)

    at_zero = t == 0.0

    at_pole = np.zeros_like(at_zero) if beta == 0.0 else np.abs(np.abs(4.0 * beta * t) - 1.0) < 1e-9

    regular = ~(at_zero | at_pole)

    h[at_zero] = 1.0 + beta * (4.0 / np.pi - 1.0)

    if np.any(at_pole):
        quarter = np.pi / (4.0 * beta)

        h[at_pole] = beta / np.sqrt(2.0) * (
            (1.0 + 2.0 / np.pi) * np.sin(quarter) + (1.0 - 2.0 / np.pi) * np.cos(quarter)
        )

    r = t[regular]

    h[regular] = (
        np.sin(np.pi * r * (1.0 - beta)) + 4.0 * beta * r * np.cos(np.pi * r * (1.0 + beta))
    ) / (np.pi * r * (1.0 - (4.0 * beta * r) ** 2))

    return h

def ambiguity(pulse: PulseShape, tau: float, nu: float) -> complex:
    """
    Evaluates the ambiguity function of the pulse.

    Parameters
    ----------
    pulse : PulseShape
        The pulse to correlate.
    tau : float
        The delay in symbol periods.
    nu : float
        The Doppler in cycles per symbol period.

    Raises
    ------
    ArgumentError
        If ``tau`` or ``nu`` is not finite.

    Returns
    -------
    complex
        ``A_p(tau, nu)``; exactly zero when ``|tau|`` reaches twice the truncation.
    """
    if not (np.isfinite(tau) and np.isfinite(nu)):
        raise ArgumentError('Delay and Doppler must be finite.')

    span = pulse.truncation

    lower = max(-span, tau - span)
    upper = min(span, tau + span)

    if upper <= lower:
        return 0j

    # Simpson needs an even number of intervals.
    intervals = int(np.ceil((upper - lower) * pulse.oversampling))
    intervals += intervals % 2

    intervals = max(intervals, 2)

    t = np.linspace(lower, upper, intervals + 1)

    integrand = (
        pulse.samples(t)
        * pulse.samples(t - tau)
        * np.exp(-2j * np.pi * nu * (t - tau))
    )

    return complex(simpson(integrand, x=t))

@dataclass(frozen=True, eq=False)
class AmbiguityGrid:
    """
    Represents ambiguity function samples cached on a regular (delay, Doppler) grid.

    Queries between the nodes are answered by cubic interpolation of the real and
    imaginary parts when both axes hold at least four nodes, and by linear interpolation
    otherwise.
    """
    pulse: PulseShape
    """PulseShape: The pulse the grid was computed for."""

    taus: ndarray
    """ndarray: The delay nodes in symbol periods."""

    nus: ndarray
    """ndarray: The Doppler nodes in cycles per symbol period."""

    values: ndarray = field(repr=False)
    """ndarray: The ``len(taus) x len(nus)`` matrix of ambiguity values."""

    def at(self, tau: float, nu: float) -> complex:
        """
        Gets the ambiguity value at or between grid nodes.

        Parameters
        ----------
        tau : float
            The delay within the grid range.
        nu : float
            The Doppler within the grid range.

        Raises
        ------
        ArgumentError
            If the query lies outside of the grid.

        Returns
        -------
        complex
            The cached or interpolated ambiguity value.
        """
        if not (self.taus[0] <= tau <= self.taus[-1] and self.nus[0] <= nu <= self.nus[-1]):
            raise ArgumentError('Query lies outside of the ambiguity grid.')

        exact_tau = np.flatnonzero(self.taus == tau)
        exact_nu  = np.flatnonzero(self.nus == nu)

        if exact_tau.size and exact_nu.size:
            return complex(self.values[exact_tau[0], exact_nu[0]])

        if self.taus.size < 2 or self.nus.size < 2:
            raise ArgumentError('Degenerate grids can only be queried at their nodes.')

        return complex(self._real((tau, nu)) + 1j * self._imag((tau, nu)))

    @cached_property
    def _method(self) -> str:
        return 'cubic' if min(self.taus.size, self.nus.size) >= 4 else 'linear'

    @cached_property
    def _real(self) -> RegularGridInterpolator:
        return RegularGridInterpolator((self.taus, self.nus), self.values.real, method=self._method)

    @cached_property
    def _imag(self) -> RegularGridInterpolator:
        return RegularGridInterpolator((self.taus, self.nus), self.values.imag, method=self._method)

def build_ambiguity_grid(
    pulse:     PulseShape,
    tau_range: tuple[float, float],
    nu_range:  tuple[float, float],
    steps:     tuple[int, int]
) -> AmbiguityGrid:
    """
    Precomputes the ambiguity function on a regular grid.

    Parameters
    ----------
    pulse : PulseShape
        The pulse to evaluate.
    tau_range : tuple[float, float]
        The inclusive delay range.
    nu_range : tuple[float, float]
        The inclusive Doppler range.
    steps : tuple[int, int]
        The number of nodes along each axis. A single node is allowed only for a
        degenerate range.

    Raises
    ------
    ArgumentError
        If a range is empty or not finite, or a step count is invalid.

    Returns
    -------
    AmbiguityGrid
        The cached grid.
    """
    axes = []

    for (lower, upper), count in zip((tau_range, nu_range), steps):
        if not (np.isfinite(lower) and np.isfinite(upper)) or upper < lower:
            raise ArgumentError('Grid ranges must be finite and non-empty.')

        if count < 1 or (count < 2 and upper > lower):
            raise ArgumentError('Grid steps must be at least 2 for a non-degenerate range.')

        axes.append(np.linspace(lower, upper, count))

    taus, nus = axes

    values = np.array([[ambiguity(pulse, tau, nu) for nu in nus] for tau in taus])

    return AmbiguityGrid(pulse, taus, nus, values)

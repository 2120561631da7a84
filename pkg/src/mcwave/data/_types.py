from ..config import MessageDirection

from numpy  import ndarray
from typing import NamedTuple

class SoftSymbolEnsemble(NamedTuple):
    """
    Represents Gaussian soft symbols that share one variance.

    Every position is modelled as an independent complex Gaussian with its own mean and
    the common scalar variance.
    """
    means: ndarray
    """ndarray: The complex means, one per symbol position."""

    variance: float
    """float: The shared, non-negative variance."""

class ExtrinsicMessage(NamedTuple):
    """Represents a Gaussian extrinsic message exchanged by the cross-domain detector."""
    means: ndarray
    """ndarray: The complex extrinsic means."""

    variance: float
    """float: The extrinsic variance, clamped to the configured floor and cap."""

    direction: MessageDirection
    """MessageDirection: The domain the message travels to."""

class AppResult(NamedTuple):
    """Represents the output of the a posteriori probability symbol detector."""
    means: ndarray
    """ndarray: The posterior mean of every symbol position."""

    variances: ndarray
    """ndarray: The posterior variance of every symbol position."""

    probabilities: ndarray
    """ndarray: A (positions x alphabet size) matrix of categorical posteriors."""

class MmseWeights(NamedTuple):
    """Represents the diagonal of a single-tap MMSE equalizer."""
    diagonal: ndarray
    """ndarray: The complex weight of every frequency bin."""

class AuxChannelModel(NamedTuple):
    """Represents a fitted scalar Gaussian channel ``x_hat = alpha x + noise``."""
    alpha: complex
    """complex: The least-squares complex gain."""

    sigma2: float
    """float: The residual noise variance, floored at a small positive value."""

class CdfPoint(NamedTuple):
    """Represents one step of an empirical cumulative distribution function."""
    capacity: float
    """float: The pragmatic capacity in bits per symbol."""

    probability: float
    """float: The fraction of samples that are less than or equal to the capacity."""

    frame_seed: int | None = None
    """int | None: The seed that replays the frame of this step."""

class IterationDiagnostics(NamedTuple):
    """Represents the bookkeeping of one cross-domain detector iteration."""
    iteration: int
    """int: The one-based iteration index."""

    prior_variance: float
    """float: The a priori time domain variance the iteration started from."""

    posterior_variance: float
    """float: The time domain a posteriori variance after frequency domain MMSE."""

    time_to_dd_variance: float
    """float: The variance of the extrinsic message passed to the delay-Doppler domain."""

    dd_to_time_variance: float
    """float: The mean posterior variance returned by the delay-Doppler detector."""

    mse: float | None
    """float | None: The delay-Doppler mean squared error, if the reference was known."""

class CdidResult(NamedTuple):
    """Represents the output of the cross-domain iterative detector."""
    x_hat: ndarray
    """ndarray: The delay-Doppler posterior means of the last iteration."""

    symbol_probs: ndarray
    """ndarray: A (positions x alphabet size) matrix of categorical posteriors."""

    diagnostics: tuple[IterationDiagnostics, ...]
    """tuple[IterationDiagnostics, ...]: The bookkeeping of every executed iteration."""

    iterations: int
    """int: The number of executed iterations."""

    dd_estimate: ndarray
    """
    ndarray: The delay-Doppler extrinsic means fed to the last APP pass.

    Unlike the posterior means these are not pulled onto the constellation, so they keep
    the Gaussian error statistics the pragmatic capacity is defined for.
    """

    dd_variance: float
    """float: The variance of the extrinsic estimate."""

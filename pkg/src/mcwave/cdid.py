"""
Frequency domain equalization based cross-domain iterative detection for OTFS.

Each iteration runs a frequency domain MMSE estimator with parallel interference
cancellation on the time domain symbols and an APP detector on the delay-Doppler
symbols. The two exchange Gaussian extrinsic messages through the unitary Zak
transform. Time domain symbols are modelled as Gaussian with individual means and one
shared variance, so every message carries a mean vector and a scalar variance.
"""
from .config       import MessageDirection, TransformDirection
from .equalization import channel_row_energy, mmse_weights
from .errors       import ArgumentError, DimensionError
from .mapping      import Alphabet, app_detect
from .numerics     import as_matrix, as_vector, dft, doppler_transform, idft

from .data._types import CdidResult, ExtrinsicMessage, IterationDiagnostics, SoftSymbolEnsemble
from .data.frame  import BlockFreqChannel

import logging

import numpy as np

from dataclasses import dataclass, field
from numpy       import ndarray

logger = logging.getLogger(__name__)

@dataclass(frozen=True)
class CdidConfig:
    """
    Represents the settings of the cross-domain detector.

    The variance floor and cap are relative to the average symbol energy E_s.
    """
    max_iterations: int = 8
    """int: The largest number of iterations."""

    variance_floor: float = 1e-8
    """float: The smallest extrinsic variance, relative to E_s."""

    variance_cap: float = 1e8
    """float: The largest extrinsic variance, relative to E_s."""

    damping: float = 1.0
    """float: The weight of the new extrinsic means against the previous ones, in (0, 1]."""

    tolerance: float = 1e-4
    """float: The relative change of the time to delay-Doppler variance that stops iterating."""

    def __post_init__(self) -> None:
        """
        Validates the settings.

        Raises
        ------
        ArgumentError
            If a setting is outside of its range.
        """
        if int(self.max_iterations) != self.max_iterations or self.max_iterations < 1:
            raise ArgumentError('The number of iterations must be a positive integer.')

        if not 0 < self.variance_floor < self.variance_cap:
            raise ArgumentError('Variance floor must be positive and less than the cap.')

        if not np.isfinite(self.variance_cap):
            raise ArgumentError('Variance cap must be finite.')

        if not 0 < self.damping <= 1:
            raise ArgumentError('Damping must be within the range of 0 (exclusive) and 1.')

        if self.tolerance < 0:
            raise ArgumentError('Tolerance must be non-negative.')

@dataclass
class CdidState:
    """Represents the a priori time domain information an iteration starts from."""
    s_bar: ndarray = field(repr=False)
    """ndarray: The a priori means of the ``M N`` time domain symbols."""

    v_s_bar: float
    """float: The shared a priori variance."""

    iteration: int = 0
    """int: The number of completed iterations."""

    diagnostics: list[IterationDiagnostics] = field(default_factory=list, repr=False)
    """list[IterationDiagnostics]: The bookkeeping of the completed iterations."""

    def __post_init__(self) -> None:
        """
        Validates the state.

        Raises
        ------
        ArgumentError
            If the variance is not a positive finite number.
        """
        self.s_bar = as_vector(self.s_bar, 's_bar')

        if not np.isfinite(self.v_s_bar) or self.v_s_bar <= 0:
            raise ArgumentError('A priori variance must be a positive finite number.')

def fde_sic_step(state: CdidState, q, h, n0: float, row_energy: ndarray | None = None) -> tuple[ndarray, ndarray]:
    """
    Runs the frequency domain MMSE estimator with interference cancellation.

    The a priori frequency domain symbols are ``z_bar = F s_bar`` with variance
    ``v_s_bar``. Every bin is then updated as

        z_hat[l] = z_bar[l] + W[l, l] (q[l] - (H z_bar)[l])

    with the single-tap MMSE weight ``W[l, l]`` for the a priori variance, and its error
    variance is ``v_bar (1 - W[l, l] h[l, l])``. The cancelled interference is computed
    once per iteration from the a priori means.

    Parameters
    ----------
    state : CdidState
        The a priori time domain information.
    q : array_like
        The ``M N`` received frequency domain samples.
    h : array_like
        The ``M N x M N`` frequency domain channel.
    n0 : float
        The noise variance per complex sample.
    row_energy : ndarray, optional
        The squared norm of every channel row; computed from ``h`` when omitted.

    Raises
    ------
    DimensionError
        If the vector and matrix sizes do not agree.

    Returns
    -------
    tuple[ndarray, ndarray]
        The a posteriori frequency domain means and their error variances.
    """
    received = as_vector(q, 'q')

    size = received.size

    if state.s_bar.size != size:
        raise DimensionError(f'A priori means of length {state.s_bar.size} do not match {size} bins.')

    matrix = as_matrix(h, 'h')

    if matrix.shape != (size, size):
        raise DimensionError(f'Channel of shape {matrix.shape} does not match {size} bins.')

    z_bar = dft(state.s_bar, size)

    weights = mmse_weights(BlockFreqChannel(matrix, n0, state.v_s_bar), row_energy).diagonal

    residual = received - matrix @ z_bar

    z_hat = z_bar + weights * residual

    v_e = state.v_s_bar * np.real(1.0 - weights * np.diagonal(matrix))

    return z_hat, np.clip(v_e, 0.0, state.v_s_bar)

def time_variance_aggregate(v_e) -> float:
    """
    Aggregates per-bin error variances into one shared variance.

    Parameters
    ----------
    v_e : array_like
        The non-negative error variances.

    Raises
    ------
    DimensionError
        If the sequence is empty.
    ArgumentError
        If an entry is negative or not finite.

    Returns
    -------
    float
        The arithmetic mean.
    """
    values = np.asarray(v_e, dtype=float).reshape(-1)

    if values.size == 0:
        raise DimensionError('Cannot aggregate an empty variance sequence.')

    if not np.all(np.isfinite(values)) or np.any(values < 0):
        raise ArgumentError('Variances must be non-negative finite numbers.')

    return float(values.mean())

def extrinsic_combine(
    posterior: SoftSymbolEnsemble,
    prior:     SoftSymbolEnsemble,
    cfg:       CdidConfig,
    direction: MessageDirection = MessageDirection.TimeToDelayDoppler,
    energy:    float = 1.0
) -> ExtrinsicMessage:
    """
    Removes the prior's contribution from a Gaussian posterior.

    The extrinsic precision is the difference of the two precisions. When it is not
    positive the update carries no information: the message gets the capped variance and
    passes the posterior means through. Otherwise the variance is clamped to the floor
    and cap, and the means are ``v (m_hat / v_hat - m_bar / v_bar)``.

    Parameters
    ----------
    posterior : SoftSymbolEnsemble
        The a posteriori means and variance.
    prior : SoftSymbolEnsemble
        The a priori means and variance.
    cfg : CdidConfig
        The floor and cap settings.
    direction : MessageDirection, optional
        The domain the message travels to.
    energy : float, optional
        The symbol energy the floor and cap are relative to.

    Raises
    ------
    DimensionError
        If the mean vectors differ in length.
    ArgumentError
        If the prior variance is not positive.

    Returns
    -------
    ExtrinsicMessage
        The extrinsic message.
    """
    posterior_means = as_vector(posterior.means, 'posterior.means')
    prior_means     = as_vector(prior.means, 'prior.means')

    if posterior_means.size != prior_means.size:
        raise DimensionError('Posterior and prior means must have equal lengths.')

    if not prior.variance > 0:
        raise ArgumentError('Prior variance must be positive.')

    floor = cfg.variance_floor * energy
    cap   = cfg.variance_cap * energy

    v_hat = max(posterior.variance, floor)

    precision = 1.0 / v_hat - 1.0 / prior.variance

    if precision <= 0:
        return ExtrinsicMessage(posterior_means.copy(), cap, direction)

    variance = float(np.clip(1.0 / precision, floor, cap))

    means = variance * (posterior_means / v_hat - prior_means / prior.variance)

    return ExtrinsicMessage(means, variance, direction)

def cross_domain_pass(msg: ExtrinsicMessage, m: int, n: int) -> SoftSymbolEnsemble:
    """
    Moves an extrinsic message between the time and the delay-Doppler domain.

    Time to delay-Doppler messages go through ``kron(F_N, I_M)``, delay-Doppler to time
    messages through its inverse. The unitary transform leaves the shared variance of
    independent Gaussians unchanged.

    Parameters
    ----------
    msg : ExtrinsicMessage
        The message to transform.
    m : int
        The number of delay bins.
    n : int
        The number of Doppler bins.

    Raises
    ------
    DimensionError
        If the message length differs from ``m * n``.

    Returns
    -------
    SoftSymbolEnsemble
        The transformed means with the unchanged variance.
    """
    if msg.direction is MessageDirection.TimeToDelayDoppler:
        direction = TransformDirection.Forward
    else:
        direction = TransformDirection.Inverse

    return SoftSymbolEnsemble(doppler_transform(msg.means, m, n, direction), msg.variance)

def run_cdid(
    q,
    h,
    alphabet:  Alphabet,
    n0:        float,
    m:         int,
    n:         int,
    cfg:       CdidConfig = CdidConfig(),
    reference: ndarray = None
) -> CdidResult:
    """
    Detects the delay-Doppler symbols of one OTFS frame.

    Starting from zero-mean time domain symbols of variance E_s, every iteration

    1. estimates the frequency domain symbols with interference cancellation,
    2. returns them to the time domain with the mean error variance,
    3. passes the time domain extrinsic message to the delay-Doppler domain,
    4. runs the APP detector on it,
    5. and returns the detector's extrinsic message as the next time domain prior.

    Iterating stops after ``cfg.max_iterations`` or once the variance of the time to
    delay-Doppler message changes by less than ``cfg.tolerance`` relative.

    Parameters
    ----------
    q : array_like
        The ``M N`` received frequency domain samples ``F r``.
    h : array_like
        The ``M N x M N`` frequency domain channel.
    alphabet : Alphabet
        The constellation of the delay-Doppler symbols.
    n0 : float
        The noise variance per complex sample.
    m : int
        The number of delay bins.
    n : int
        The number of Doppler bins.
    cfg : CdidConfig, optional
        The detector settings.
    reference : ndarray, optional
        The transmitted delay-Doppler symbols; enables the per-iteration mean squared
        error in the diagnostics.

    Raises
    ------
    DimensionError
        If the sizes of ``q``, ``h`` and the grid do not agree.
    ArgumentError
        If the channel holds non-finite entries or ``n0`` is negative.

    Returns
    -------
    CdidResult
        The final posterior means, the symbol probabilities, the diagnostics and the
        delay-Doppler extrinsic estimate the last APP pass was run on.
    """
    received = as_vector(q, 'q')
    matrix   = as_matrix(h, 'h')

    size = m * n

    if received.size != size or matrix.shape != (size, size):
        raise DimensionError(f'Expected {size} bins and a {size} x {size} channel for a {m} x {n} grid.')

    if not np.isfinite(n0) or n0 < 0:
        raise ArgumentError('Noise density must be a non-negative finite number.')

    if reference is not None:
        reference = as_vector(reference, 'reference')

        if reference.size != size:
            raise DimensionError(f'Reference of length {reference.size} does not match {size} symbols.')

    es = alphabet.energy

    state = CdidState(np.zeros(size, dtype=np.complex128), es)

    row_energy = channel_row_energy(matrix)

    previous = None

    app = dd_prior = None

    for iteration in range(1, cfg.max_iterations + 1):
        z_hat, v_e = fde_sic_step(state, received, matrix, n0, row_energy)

        posterior = SoftSymbolEnsemble(idft(z_hat, size), time_variance_aggregate(v_e))

        to_dd = extrinsic_combine(
            posterior,
            SoftSymbolEnsemble(state.s_bar, state.v_s_bar),
            cfg,
            MessageDirection.TimeToDelayDoppler,
            es
        )

        if previous is not None and cfg.damping < 1:
            to_dd = to_dd._replace(means=cfg.damping * to_dd.means + (1 - cfg.damping) * previous.means)

        dd_prior = cross_domain_pass(to_dd, m, n)

        app = app_detect(dd_prior, alphabet)

        dd_variance = float(np.mean(app.variances))

        dd_message = ExtrinsicMessage(app.means, dd_variance, MessageDirection.DelayDopplerToTime)

        to_time = extrinsic_combine(
            cross_domain_pass(dd_message, m, n),
            SoftSymbolEnsemble(to_dd.means, to_dd.variance),
            cfg,
            MessageDirection.DelayDopplerToTime,
            es
        )

        mse = None if reference is None else float(np.mean(np.abs(app.means - reference) ** 2))

        state.diagnostics.append(IterationDiagnostics(
            iteration,
            state.v_s_bar,
            posterior.variance,
            to_dd.variance,
            dd_variance,
            mse
        ))

        logger.debug(
            'Iteration %d: prior %.3e, posterior %.3e, T->DD %.3e, DD->T %.3e.',
            iteration,
            state.v_s_bar,
            posterior.variance,
            to_dd.variance,
            dd_variance
        )

        state = CdidState(to_time.means, to_time.variance, iteration, state.diagnostics)

        if previous is not None and abs(to_dd.variance - previous.variance) <= cfg.tolerance * previous.variance:
            logger.debug('Stopped after iteration %d, extrinsic variance converged.', iteration)

            break

        previous = to_dd

    return CdidResult(
        app.means,
        app.probabilities,
        tuple(state.diagnostics),
        state.iteration,
        dd_prior.means,
        dd_prior.variance
    )

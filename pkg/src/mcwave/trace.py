"""
Traceability of the system model to the code.

Every relation of the signal model and the receivers maps to the operation that
implements it and to the stage of the signal chain it belongs to. The table is rendered
in the documentation, one labelled section per stage, and checked by the tests: each
target must resolve and each relation must appear once.
"""
from importlib import import_module
from typing    import Any, Final, NamedTuple

class TraceEntry(NamedTuple):
    """Represents one model relation and its implementation."""
    relation: str
    """str: The name of the relation."""

    expression: str
    """str: The relation in plain notation."""

    target: str
    """str: The implementing ``module.operation`` relative to the package."""

    stage: str
    """str: The stage of the signal chain the relation belongs to; one documentation section each."""

    @property
    def anchor(self) -> str:
        """
        Gets the documentation label of the entry's stage.

        Returns
        -------
        str
            ``trace-`` followed by the lower-case stage with hyphens for spaces.
        """
        return 'trace-' + '-'.join(self.stage.lower().split())

TRACE_TABLE: Final[tuple[TraceEntry, ...]] = (
    TraceEntry(
        'Unitary DFT',
        'F[k, l] = exp(-2j pi k l / L) / sqrt(L)',
        'numerics.dft',
        'Transforms'
    ),
    TraceEntry(
        'Zak domain transform',
        's = kron(F_N^H, I_M) x',
        'numerics.doppler_transform',
        'Transforms'
    ),
    TraceEntry(
        'Transmit pulse',
        'p(t) T_s-orthogonal, unit energy',
        'pulse.PulseShape',
        'Pulse'
    ),
    TraceEntry(
        'Ambiguity function',
        'A_p(tau, nu) = int p(t) conj(p(t - tau)) exp(-2j pi nu (t - tau)) dt',
        'pulse.ambiguity',
        'Pulse'
    ),
    TraceEntry(
        'Bernoulli link blockage',
        'h_i = 0 with probability q, 1 with probability 1 - q',
        'channel.sample_links',
        'Channel'
    ),
    TraceEntry(
        'Effective channel coefficient',
        'g_i[m, n] = h_i exp(2j pi n nu_i) conj(A_p((n - m) T_s + tau_i, nu_i))',
        'channel.effective_gain',
        'Channel'
    ),
    TraceEntry(
        'Multi-link time domain input-output relation',
        'r = sum_i G_i x_tilde + w',
        'channel.build_channel_matrix',
        'Channel'
    ),
    TraceEntry(
        'Additive white Gaussian noise',
        'w ~ CN(0, N0 I)',
        'channel.add_awgn',
        'Channel'
    ),
    TraceEntry(
        'Cyclic prefix insertion',
        'A_CP = [C_CP, I]^T',
        'framing.cp_add_matrix',
        'Framing'
    ),
    TraceEntry(
        'Cyclic prefix removal',
        'R_CP = I without its first L_CP rows',
        'framing.cp_remove',
        'Framing'
    ),
    TraceEntry(
        'Single carrier transmit block',
        'x_tilde = A_CP x_SC',
        'modems.sc_transmit',
        'Transmitters'
    ),
    TraceEntry(
        'OFDM transmit block',
        'x_tilde = A_CP kron(I_N, F^H) x_OFDM',
        'modems.ofdm_transmit',
        'Transmitters'
    ),
    TraceEntry(
        'OTFS transmit frame',
        'x_tilde = A_CP kron(F_N^H, I_M) x_OTFS',
        'modems.otfs_transmit',
        'Transmitters'
    ),
    TraceEntry(
        'Block time domain channel',
        'G_n = R_CP G A_CP restricted to block n',
        'modems.block_time_channels',
        'Receiver front end'
    ),
    TraceEntry(
        'Frequency and delay-Doppler domain input-output relations',
        'q = F G_n F^H z + F w; y_OTFS = kron(F_N, I_M) R_CP G A_CP kron(F_N^H, I_M) x + noise',
        'modems.receive_front_end',
        'Receiver front end'
    ),
    TraceEntry(
        'Single-tap MMSE weight',
        'W[l, l] = E_s conj(h_ll) / (E_s sum_j |h_lj|^2 + N0)',
        'equalization.mmse_weights',
        'Equalizers'
    ),
    TraceEntry(
        'Single carrier frequency domain equalization',
        'x_hat = F^H W q',
        'equalization.equalize_sc',
        'Equalizers'
    ),
    TraceEntry(
        'OFDM per subcarrier equalization',
        'x_hat = W y',
        'equalization.equalize_ofdm',
        'Equalizers'
    ),
    TraceEntry(
        'Frequency domain MMSE with interference cancellation',
        'z_hat[l] = z_bar[l] + W[l, l] (q[l] - (H z_bar)[l]), v_e[l] = v_bar (1 - W[l, l] h_ll)',
        'cdid.fde_sic_step',
        'Cross-domain detector'
    ),
    TraceEntry(
        'Time domain a posteriori variance',
        'v_hat = mean_l v_e[l]',
        'cdid.time_variance_aggregate',
        'Cross-domain detector'
    ),
    TraceEntry(
        'Gaussian extrinsic information',
        'v = (1 / v_hat - 1 / v_bar)^-1, m = v (m_hat / v_hat - m_bar / v_bar)',
        'cdid.extrinsic_combine',
        'Cross-domain detector'
    ),
    TraceEntry(
        'Cross-domain message transform',
        'DD <- kron(F_N, I_M) time, time <- kron(F_N^H, I_M) DD',
        'cdid.cross_domain_pass',
        'Cross-domain detector'
    ),
    TraceEntry(
        'A posteriori symbol probabilities',
        'P(x = a) ~ exp(-|m - a|^2 / v)',
        'mapping.app_detect',
        'Cross-domain detector'
    ),
    TraceEntry(
        'Cross-domain iterative detection',
        'iterate estimator and detector with extrinsic exchange',
        'cdid.run_cdid',
        'Cross-domain detector'
    ),
    TraceEntry(
        'Pragmatic capacity',
        'I = E[log2(p(x_hat | x) / sum_a P(a) p(x_hat | a))]',
        'metrics.pragmatic_capacity',
        'Metric'
    )
)
"""tuple[TraceEntry, ...]: The model relations in signal flow order."""

def resolve(entry: TraceEntry) -> Any:
    """
    Looks up the object implementing a relation.

    Parameters
    ----------
    entry : TraceEntry
        The table entry.

    Raises
    ------
    ImportError
        If the module does not exist.
    AttributeError
        If the module has no such operation.

    Returns
    -------
    Any
        The implementing function or class.
    """
    module_name, _, attribute = entry.target.rpartition('.')

    return getattr(import_module(f'{__package__}.{module_name}'), attribute)

def render_table() -> str:
    """
    Renders the table as reStructuredText, one labelled list table per stage.

    Every section carries the label of `TraceEntry.anchor`, so other pages can link a
    stage with ``:ref:``.

    Returns
    -------
    str
        The table markup.
    """
    stages: dict[str, list[TraceEntry]] = {}

    for entry in TRACE_TABLE:
        stages.setdefault(entry.stage, []).append(entry)

    lines = []

    for stage, entries in stages.items():
        lines.extend((
            f'.. _{entries[0].anchor}:',
            '',
            stage,
            '-' * len(stage),
            '',
            '.. list-table::',
            '   :header-rows: 1',
            '   :widths: 30 45 25',
            '',
            '   * - Relation',
            '     - Expression',
            '     - Implementation'
        ))

        for entry in entries:
            lines.extend((
                f'   * - {entry.relation}',
                f'     - ``{entry.expression}``',
                f'     - :func:`mcwave.{entry.target}`'
            ))

        lines.append('')

    return '\n'.join(lines)

"""
mcwave-python: A link-level simulator comparing SC, OFDM and OTFS in multi-connectivity downlinks.

Copyright (C) 2024 BluDay

Several access points serve one user with the same frame. Every link is blocked at random
and reaches the user with its own residual time and frequency offset. The simulator
draws such channels, runs the single carrier and OFDM frequency domain equalizers and
the OTFS cross-domain iterative detector, and scores every frame by its pragmatic
capacity.
"""

__author__      = 'BluDay'
__copyrights__  = '© 2024 BluDay'
__credits__     = 'BluDay'
__description__ = 'A link-level simulator comparing SC, OFDM and OTFS in multi-connectivity downlinks.'
__license__     = 'MIT'
__maintainer__  = 'BluDay'
__title__       = 'mcwave-python'
__url__         = 'https://bluday.github.io/mcwave-python'
__version__     = '1.0'

from .cdid import (
    CdidConfig,
    CdidState,
    cross_domain_pass,
    extrinsic_combine,
    fde_sic_step,
    run_cdid,
    time_variance_aggregate
)

from .channel import (
    EffectiveChannelMatrix,
    add_awgn,
    build_channel_matrix,
    effective_gain,
    link_matrix,
    precompensate,
    sample_links
)

from .config import (
    FixtureScale,
    MessageDirection,
    Modulation,
    OutputFormat,
    PulseKind,
    TransformDirection,
    Waveform
)

from .data import (
    CSV_COLUMNS,
    AppResult,
    AuxChannelModel,
    BlockFreqChannel,
    CapacitySample,
    CdfPoint,
    CdidResult,
    ChannelRealization,
    ExtrinsicMessage,
    IterationDiagnostics,
    LinkState,
    MmseWeights,
    ResultRecord,
    RxFrame,
    SoftSymbolEnsemble,
    TxFrame
)

from .equalization import block_channels, channel_row_energy, equalize_ofdm, equalize_sc, mmse_weights

from .errors import (
    ArgumentError,
    ConfigError,
    DegenerateFitError,
    DimensionError,
    EmissionError,
    McwaveError
)

from .framing import FrameGeometry, block_split, cp_add, cp_remove

from .harness import (
    RunConfig,
    aggregate_cdf,
    draw_realization,
    emit,
    frame_seed,
    load_config,
    read_records,
    run_sweep,
    simulate_frame,
    summarize
)

from .mapping import Alphabet, app_detect, hard_demap, map_bits

from .metrics import effective_throughput, fit_aux_channel, pragmatic_capacity, symbol_error_rate

from .modems import otfs_transmit, ofdm_transmit, receive_front_end, sc_transmit, transmit

from .numerics import dft, doppler_transform, idft

from .pulse import AmbiguityGrid, PulseShape, ambiguity, build_ambiguity_grid

from ._types import (
    AppResult,
    AuxChannelModel,
    CdfPoint,
    CdidResult,
    ExtrinsicMessage,
    IterationDiagnostics,
    MmseWeights,
    SoftSymbolEnsemble
)

from .frame import BlockFreqChannel, RxFrame, TxFrame

from .link import ChannelRealization, LinkState

from .record import CSV_COLUMNS, CapacitySample, ResultRecord

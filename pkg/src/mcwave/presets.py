"""Named sweep configurations for the reproduction runs."""
from .config  import Waveform
from .harness import RunConfig

from pathlib import Path
from typing  import Final

WAVEFORM_COMPARISON: Final[RunConfig] = RunConfig(
    snr_grid_db=(4.0, 8.0, 12.0),
    frames_per_point=500,
    output_path=Path('waveform_comparison.csv')
)
"""RunConfig: Mean capacity of every waveform over SNR at a blocking rate of 0.2."""

BLOCKAGE_CDF: Final[RunConfig] = RunConfig(
    q=(0.2, 0.8),
    snr_grid_db=(10.0,),
    frames_per_point=5000,
    output_path=Path('blockage_cdf.csv')
)
"""RunConfig: Capacity distributions at 10 dB for a low and a high blocking rate."""

SMOKE: Final[RunConfig] = RunConfig(
    waveforms=(Waveform.Sc, Waveform.Ofdm, Waveform.Otfs),
    m=8,
    n=4,
    l_cp=2,
    snr_grid_db=(10.0,),
    frames_per_point=4,
    cdid_iterations=4,
    pulse_truncation=4,
    timing=False,
    output_path=Path('smoke.csv')
)
"""RunConfig: A seconds-long sweep over a small grid."""

PRESETS: Final[dict[str, RunConfig]] = {
    'waveform_comparison': WAVEFORM_COMPARISON,
    'blockage_cdf':        BLOCKAGE_CDF,
    'smoke':               SMOKE
}
"""dict[str, RunConfig]: The presets selectable with ``--preset``."""

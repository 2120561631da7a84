"""
Shared fixtures and dense oracles.

The oracles evaluate the model relations literally, with explicit loops and materialized
matrices, so that the fast code paths can be checked against an independent rendition.
"""
import numpy as np
import pytest

from mcwave import (
    ChannelRealization,
    FrameGeometry,
    LinkState,
    PulseShape,
    TransformDirection,
    Waveform,
    effective_gain
)

from mcwave.framing  import cp_add_matrix, cp_remove_matrix
from mcwave.numerics import dft_matrix, doppler_matrix

@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)

@pytest.fixture(scope='session')
def short_pulse() -> PulseShape:
    return PulseShape(rolloff=0.3, truncation=4, oversampling=16)

@pytest.fixture
def two_links() -> ChannelRealization:
    return ChannelRealization((LinkState(False, 0.4, 0.3), LinkState(False, 1.7, -0.6)), 0)

def random_symbols(rng: np.random.Generator, size: int) -> np.ndarray:
    return (rng.standard_normal(size) + 1j * rng.standard_normal(size)) / np.sqrt(2.0)

def brute_force_channel(realization: ChannelRealization, length: int, pulse: PulseShape, m: int) -> np.ndarray:
    """Fills the channel matrix entry by entry from the single link coefficients."""
    g = np.zeros((length, length), dtype=np.complex128)

    for link in realization.links:
        for row in range(length):
            for col in range(length):
                g[row, col] += effective_gain(link, row, col, pulse, m)

    return g

def dense_block_channels(g: np.ndarray, geom: FrameGeometry) -> list[np.ndarray]:
    """Evaluates ``R_CP G A_CP`` with materialized matrices and cuts it into blocks."""
    effective = cp_remove_matrix(geom) @ g[:geom.tx_len, :geom.tx_len] @ cp_add_matrix(geom)

    size = geom.info_per_block

    return [
        effective[index * size:(index + 1) * size, index * size:(index + 1) * size]
        for index in range(geom.block_count)
    ]

def dense_frequency_channels(g: np.ndarray, geom: FrameGeometry) -> list[np.ndarray]:
    f = dft_matrix(geom.info_per_block)

    return [f @ block @ f.conj().T for block in dense_block_channels(g, geom)]

def dense_transmit(x: np.ndarray, geom: FrameGeometry) -> np.ndarray:
    """Builds the transmitted frame from materialized prefix and transform matrices."""
    match geom.waveform:
        case Waveform.Sc:
            modulator = np.eye(geom.info_symbols)
        case Waveform.Ofdm:
            modulator = np.kron(np.eye(geom.block_count), dft_matrix(geom.info_per_block).conj().T)
        case _:
            modulator = doppler_matrix(geom.m, geom.n, TransformDirection.Inverse)

    return cp_add_matrix(geom) @ modulator @ x

def dense_fde_sic(q: np.ndarray, h: np.ndarray, s_bar: np.ndarray, v_bar: float, n0: float) -> tuple[np.ndarray, np.ndarray]:
    """Evaluates the interference cancelling MMSE update bin by bin."""
    size = q.size

    z_bar = dft_matrix(size) @ s_bar

    z_hat = np.zeros(size, dtype=np.complex128)
    v_e   = np.zeros(size)

    for l in range(size):
        row_energy = sum(abs(h[l, j]) ** 2 for j in range(size))

        w = v_bar * np.conj(h[l, l]) / (v_bar * row_energy + n0)

        interference = sum(h[l, j] * z_bar[j] for j in range(size))

        z_hat[l] = z_bar[l] + w * (q[l] - interference)
        v_e[l]   = v_bar * np.real(1.0 - w * h[l, l])

    return z_hat, v_e

def _dense_extrinsic(posterior_means, posterior_variance, prior_means, prior_variance, floor, cap):
    v_hat = max(posterior_variance, floor)

    precision = 1.0 / v_hat - 1.0 / prior_variance

    if precision <= 0:
        return posterior_means.copy(), cap

    variance = min(max(1.0 / precision, floor), cap)

    return variance * (posterior_means / v_hat - prior_means / prior_variance), variance

def _dense_app(means: np.ndarray, variance: float, points: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    probabilities = np.zeros((means.size, points.size))

    for k in range(means.size):
        exponents = [-abs(means[k] - a) ** 2 / variance for a in points]

        weights = [np.exp(e - max(exponents)) for e in exponents]

        probabilities[k] = np.array(weights) / sum(weights)

    posterior = probabilities @ points

    variances = probabilities @ (np.abs(points) ** 2) - np.abs(posterior) ** 2

    return posterior, np.clip(variances, 0.0, None), probabilities

def dense_cdid(
    q:          np.ndarray,
    h:          np.ndarray,
    points:     np.ndarray,
    n0:         float,
    m:          int,
    n:          int,
    iterations: int,
    floor:      float = 1e-8,
    cap:        float = 1e8
) -> list[dict]:
    """
    Runs the undamped cross-domain detector with materialized DFT and ``kron(F_N, I_M)``.

    Returns one dict per iteration with the a priori state the iteration started from, the
    frequency domain update, the delay-Doppler extrinsic estimate and the APP output.
    """
    es = float(np.mean(np.abs(points) ** 2))

    f = dft_matrix(m * n)

    t = np.kron(dft_matrix(n), np.eye(m))

    s_bar = np.zeros(m * n, dtype=np.complex128)
    v_bar = es

    trace = []

    for _ in range(iterations):
        z_hat, v_e = dense_fde_sic(q, h, s_bar, v_bar, n0)

        v_e = np.clip(v_e, 0.0, v_bar)

        time_means, time_variance = _dense_extrinsic(f.conj().T @ z_hat, float(np.mean(v_e)), s_bar, v_bar, floor * es, cap * es)

        dd_estimate = t @ time_means

        posterior, variances, probabilities = _dense_app(dd_estimate, time_variance, points)

        trace.append({
            's_bar':         s_bar,
            'v_bar':         v_bar,
            'z_hat':         z_hat,
            'v_e':           v_e,
            'dd_estimate':   dd_estimate,
            'dd_variance':   time_variance,
            'x_hat':         posterior,
            'probabilities': probabilities,
            'app_variance':  float(np.mean(variances))
        })

        s_bar, v_bar = _dense_extrinsic(t.conj().T @ posterior, float(np.mean(variances)), time_means, time_variance, floor * es, cap * es)

    return trace

def gauss_hermite_qpsk_capacity(snr_db: float, nodes: int = 60) -> float:
    """Integrates the QPSK constrained capacity as two independent BPSK dimensions."""
    x, w = np.polynomial.hermite.hermgauss(nodes)

    n0 = 10 ** (-snr_db / 10)

    sigma2 = n0 / 2.0

    a = np.sqrt(0.5)

    noise = np.sqrt(2.0 * sigma2) * x

    penalty = np.sum(w * np.logaddexp(0.0, -2.0 * a * (a + noise) / sigma2)) / np.sqrt(np.pi)

    return 2.0 * (1.0 - penalty / np.log(2.0))

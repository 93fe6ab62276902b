"""Channel capacity and normalized modeling error."""

import math
from collections.abc import Sequence
from typing import Optional

import numpy as np

from src.channel.base import ChannelModel, ComplexMatrix
from src.channel.beam import beam_transform
from src.channel.generator import ChannelGenerator
from src.core.config import Scenario
from src.core.errors import DomainError
from src.core.logger import get_logger
from src.stats.base import CorrelationEstimate, CorrelationSeries, ErrorReport

logger = get_logger(__name__)

# Floor used when a -inf error is written as plot data
PLOT_FLOOR_DB = -300.0


def _check_matrix(h: ComplexMatrix) -> np.ndarray:
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2:
        raise DomainError(f"channel matrix must be 2-D, got shape {h.shape}")
    if not np.all(np.isfinite(h)):
        raise DomainError("channel matrix has non-finite entries")
    return h


def db_to_linear(snr_db: float) -> float:
    return 10 ** (snr_db / 10)


def capacity(h: ComplexMatrix, snr: float, uav_count: Optional[int] = None) -> float:
    """
    Get the MIMO capacity log2 det(I + snr/P H H^H).

    Args:
        h: Q x P channel matrix
        snr: Linear signal-to-noise ratio
        uav_count: Transmit antennas P (default: columns of h)

    Returns:
        Capacity in bits/s/Hz
    """
    h = _check_matrix(h)
    if not math.isfinite(snr) or snr < 0:
        raise DomainError(f"SNR must be a finite non-negative ratio, got {snr}")
    p = h.shape[1] if uav_count is None else uav_count

    gram = np.eye(h.shape[0]) + (snr / p) * (h @ h.conj().T)
    sign, logdet = np.linalg.slogdet(gram)
    if sign.real <= 0:
        raise DomainError("capacity determinant is not positive")
    return float(logdet / math.log(2))


def capacity_svd(h: ComplexMatrix, snr: float, uav_count: Optional[int] = None) -> float:
    """Capacity from the singular values of h."""
    h = _check_matrix(h)
    if not math.isfinite(snr) or snr < 0:
        raise DomainError(f"SNR must be a finite non-negative ratio, got {snr}")
    p = h.shape[1] if uav_count is None else uav_count
    singular = np.linalg.svd(h, compute_uv=False)
    return float(np.sum(np.log2(1 + snr * singular**2 / p)))


def capacity_curve(
    h: ComplexMatrix, snr_db: Sequence[float], uav_count: Optional[int] = None
) -> CorrelationSeries:
    """Capacity of one matrix over an SNR grid in dB."""
    values = np.array([capacity(h, db_to_linear(s), uav_count) for s in snr_db])
    axis = np.asarray(snr_db, dtype=float)
    return CorrelationSeries(axis_label="snr_db", axis=axis, values=values)


def mean_capacity_curve(
    scenario: Scenario,
    model: ChannelModel,
    t: float,
    snr_db: Sequence[float],
    draws: Optional[int] = None,
    generator: Optional[ChannelGenerator] = None,
) -> CorrelationSeries:
    """
    Average capacity of the combined channel over realizations, per SNR.

    Args:
        scenario: Scenario
        model: Model variant
        t: Motion time in seconds
        snr_db: SNR grid in dB
        draws: Monte Carlo draws (default ``simulation.draws``)
        generator: Generator to reuse cached components

    Returns:
        Series over ``snr_db`` with real values
    """
    draws = scenario.simulation.draws if draws is None else draws
    if draws < 1:
        raise DomainError(f"draws must be at least 1, got {draws}")
    generator = generator or ChannelGenerator(scenario)
    snrs = [db_to_linear(s) for s in snr_db]

    samples = np.empty((draws, len(snrs)))
    for r in range(draws):
        h = generator.realization(model, t, r).combined
        samples[r] = [capacity(h, snr, scenario.uav.antennas) for snr in snrs]

    means = np.array([math.fsum(samples[:, i]) / draws for i in range(len(snrs))])
    if draws > 1:
        errors = np.std(samples, axis=0, ddof=1) / math.sqrt(draws)
    else:
        errors = np.full(len(snrs), math.nan)
    return CorrelationSeries(
        axis_label="snr_db",
        axis=np.asarray(snr_db, dtype=float),
        values=means,
        model=model,
        draws=draws,
        standard_error=errors,
    )


def mean_capacity(
    scenario: Scenario,
    model: ChannelModel,
    t: float,
    snr_db: float,
    draws: Optional[int] = None,
    generator: Optional[ChannelGenerator] = None,
) -> CorrelationEstimate:
    """Average capacity at one SNR; the estimate's value is real."""
    series = mean_capacity_curve(scenario, model, t, [snr_db], draws, generator)
    return CorrelationEstimate(
        value=complex(series.values[0]),
        standard_error=float(series.standard_error[0]),  # type: ignore[index]
        draws=series.draws,
    )


def modeling_error(model_h: ComplexMatrix, oracle_h: ComplexMatrix) -> float:
    """
    Get 10 log10 of the summed entry-wise relative error against the oracle.

    Args:
        model_h: Matrix of the evaluated model
        oracle_h: Matrix of the spherical-wave oracle

    Returns:
        Error in dB; -inf when the matrices are equal
    """
    model_h = np.asarray(model_h)
    oracle_h = np.asarray(oracle_h)
    if model_h.shape != oracle_h.shape:
        raise DomainError(f"shape mismatch {model_h.shape} vs {oracle_h.shape}")
    reference = np.abs(oracle_h)
    if np.any(reference == 0):
        raise DomainError("oracle matrix has a zero entry")

    total = math.fsum((np.abs(model_h - oracle_h) / reference).ravel())
    if total == 0:
        return -math.inf
    return 10 * math.log10(total)


def modeling_error_report(
    scenario: Scenario,
    model: ChannelModel,
    t: float,
    generator: Optional[ChannelGenerator] = None,
) -> ErrorReport:
    """
    Compare the RIS component of a model with the spherical oracle at time t.

    Both sides are unnormalized, so every model is measured on the same
    scale. The beam model is compared with the beam-transformed oracle.

    Returns:
        Error report
    """
    generator = generator or ChannelGenerator(scenario)
    oracle = generator.raw_ris_matrix(ChannelModel.SPHERICAL, t)
    if model.in_beam_domain:
        oracle = beam_transform(oracle, generator.grid)
    candidate = generator.raw_ris_matrix(model, t)

    partition = generator.partition(model, t)
    error = modeling_error(candidate, oracle)
    logger.debug("Modeling error", model=model.value, t=t, error_db=error)
    return ErrorReport(
        error_db=error,
        model=model,
        t=t,
        elements_x=scenario.ris.elements_x,
        elements_z=scenario.ris.elements_z,
        max_side=partition.max_side,
        subarray_count=partition.subarray_count,
    )


def db_for_plot(value_db: float) -> float:
    """Clamp an error in dB for plotting data."""
    return max(value_db, PLOT_FLOOR_DB)

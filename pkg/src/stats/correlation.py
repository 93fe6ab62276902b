"""Spatial, temporal and frequency correlation statistics.

Expectations run over Monte Carlo realizations: cluster placement, ray
initial phases and, under the random phase policy, the RIS phase field.
Sums use ``math.fsum`` so results do not depend on evaluation order.
"""

import math
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from functools import partial
from typing import Optional

import numpy as np
from numpy.typing import NDArray

from src.channel.base import ChannelModel
from src.channel.generator import ChannelGenerator, rician_weights
from src.channel.legs import legs
from src.channel.nlos import cluster_delays
from src.channel.paths import PathSet
from src.core.config import Scenario
from src.core.errors import DomainError
from src.core.logger import get_logger
from src.geometry.base import Side
from src.stats.base import CorrelationEstimate, CorrelationSeries

logger = get_logger(__name__)

Pair = tuple[int, int]
# (antenna or beam pair, motion time)
Point = tuple[Pair, float]


def _draws(scenario: Scenario, draws: Optional[int]) -> int:
    draws = scenario.simulation.draws if draws is None else draws
    if draws < 1:
        raise DomainError(f"draws must be at least 1, got {draws}")
    return draws


def _map_draws(scenario: Scenario, func, draws: int) -> list:
    """Evaluate func on every realization index, results in index order."""
    threads = min(scenario.threads, draws)
    if threads <= 1:
        return [func(r) for r in range(draws)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(func, range(draws)))


def _coefficients(
    generator: ChannelGenerator, model: ChannelModel, points: Sequence[Point], realization: int
) -> list[complex]:
    """
    Rician-combined coefficients of one realization at several points.

    The RIS keeps the regulation of the first point, so a co-phased panel
    drifts out of phase over a time lag.
    """
    w_ris, w_nlos = rician_weights(generator.scenario.channel.rician_k)
    clusters = generator.clusters(realization) if w_nlos > 0 else None

    values = []
    nlos_at: dict[float, PathSet] = {}
    regulated_at = points[0][1]
    for pair, t in points:
        h = w_ris * generator.ris_entry(model, t, pair, realization, regulated_at)
        if clusters is not None:
            if t not in nlos_at:
                nlos_at[t] = generator.nlos_paths(t, realization, clusters)
            h += w_nlos * generator.entry(nlos_at[t], model, pair)
        values.append(h)
    return values


def normalized_correlation(
    first: Sequence[complex], second: Sequence[complex]
) -> CorrelationEstimate:
    """
    Estimate E[h1 h2*] / sqrt(E|h1|^2 E|h2|^2) from paired samples.

    Args:
        first: Samples of h1
        second: Samples of h2, paired with first

    Returns:
        Estimate; exactly 1 when both sample lists are identical
    """
    if len(first) != len(second) or not first:
        raise DomainError("correlation needs equally many paired samples")

    a1 = [z.real for z in first]
    b1 = [z.imag for z in first]
    a2 = [z.real for z in second]
    b2 = [z.imag for z in second]

    cross_re = math.fsum(x1 * x2 + y1 * y2 for x1, y1, x2, y2 in zip(a1, b1, a2, b2))
    cross_im = math.fsum(y1 * x2 - x1 * y2 for x1, y1, x2, y2 in zip(a1, b1, a2, b2))
    power1 = math.fsum(x * x + y * y for x, y in zip(a1, b1))
    power2 = math.fsum(x * x + y * y for x, y in zip(a2, b2))
    if power1 == 0 or power2 == 0:
        raise DomainError("correlation undefined for a zero-power coefficient")

    denominator = power1 if power1 == power2 else math.sqrt(power1 * power2)
    value = complex(cross_re / denominator, cross_im / denominator)

    n = len(first)
    if n > 1:
        products = np.asarray(first) * np.conj(np.asarray(second)) * (n / denominator)
        spread = np.sum(np.abs(products - value) ** 2)
        standard_error = float(np.sqrt(spread / (n * (n - 1))))
    else:
        standard_error = math.nan
    return CorrelationEstimate(value=value, standard_error=standard_error, draws=n)


def _correlate(
    scenario: Scenario,
    model: ChannelModel,
    reference: Point,
    targets: Sequence[Point],
    draws: Optional[int],
    generator: Optional[ChannelGenerator],
) -> list[CorrelationEstimate]:
    """Correlate a reference point with every target point."""
    draws = _draws(scenario, draws)
    generator = generator or ChannelGenerator(scenario)
    points = [reference, *targets]
    _validate_pairs(generator, points)

    samples = _map_draws(scenario, partial(_coefficients, generator, model, points), draws)
    reference_samples = [s[0] for s in samples]
    return [
        normalized_correlation(reference_samples, [s[i] for s in samples])
        for i in range(1, len(points))
    ]


def _validate_pairs(generator: ChannelGenerator, points: Sequence[Point]) -> None:
    uav, vehicle = generator.scenario.uav.antennas, generator.scenario.vehicle.antennas
    for (p, q), t in points:
        if not (1 <= p <= uav and 1 <= q <= vehicle):
            raise DomainError(f"pair ({p}, {q}) outside arrays of {uav} x {vehicle}")
        if t < 0:
            raise DomainError(f"motion time must be non-negative, got {t}")


def spatial_temporal_correlation(
    scenario: Scenario,
    model: ChannelModel,
    pair: Pair,
    other: Pair,
    t: float,
    dt: float,
    draws: Optional[int] = None,
    generator: Optional[ChannelGenerator] = None,
) -> CorrelationEstimate:
    """
    Estimate the correlation between h_pair(t) and h_other(t + dt).

    Args:
        scenario: Scenario
        model: Model variant
        pair: (p, q), 1-based
        other: (p', q'), 1-based
        t: Motion time in seconds
        dt: Time difference in seconds
        draws: Monte Carlo draws (default ``simulation.draws``)
        generator: Generator to reuse cached components

    Returns:
        Correlation estimate
    """
    (estimate,) = _correlate(scenario, model, (pair, t), [(other, t + dt)], draws, generator)
    return estimate


def temporal_acf(
    scenario: Scenario,
    model: ChannelModel,
    pair: Pair,
    t: float,
    dt_grid: Sequence[float],
    draws: Optional[int] = None,
    generator: Optional[ChannelGenerator] = None,
) -> CorrelationSeries:
    """
    Estimate the temporal autocorrelation of one pair over a time-difference grid.

    Returns:
        Series over ``dt``
    """
    estimates = _correlate(
        scenario, model, (pair, t), [(pair, t + dt) for dt in dt_grid], draws, generator
    )
    logger.info("Temporal ACF estimated", model=model.value, points=len(dt_grid))
    return CorrelationSeries.from_estimates("dt", np.asarray(dt_grid), estimates, model)


def spatial_ccf(
    scenario: Scenario,
    model: ChannelModel,
    pair: Pair,
    t: float,
    side: Side,
    indices: Sequence[int],
    draws: Optional[int] = None,
    generator: Optional[ChannelGenerator] = None,
) -> CorrelationSeries:
    """
    Estimate the spatial cross-correlation against other antennas (or beams) of one side.

    Args:
        scenario: Scenario
        model: Model variant
        pair: Reference (p, q), 1-based
        t: Motion time in seconds
        side: Array whose index is swept; the other index stays fixed
        indices: Swept 1-based indices
        draws: Monte Carlo draws
        generator: Generator to reuse cached components

    Returns:
        Series over the swept index
    """
    p, q = pair
    if side is Side.UAV:
        targets = [((index, q), t) for index in indices]
    else:
        targets = [((p, index), t) for index in indices]
    estimates = _correlate(scenario, model, (pair, t), targets, draws, generator)
    label = "p" if side is Side.UAV else "q"
    return CorrelationSeries.from_estimates(label, np.asarray(indices), estimates, model)


def _transfer_components(
    generator: ChannelGenerator, model: ChannelModel, pair: Pair, t: float, realization: int
) -> tuple[NDArray[np.complex128], NDArray[np.float64]]:
    """Rician-weighted gains and delays: one per RIS sub-array, then one per cluster."""
    w_ris, w_nlos = rician_weights(generator.scenario.channel.rician_k)
    ris = generator.ris_paths(model, t, realization)
    ris_gains = w_ris * ris.group_sums(generator.terms(ris, model, pair))

    nlos = generator.nlos_paths(t, realization)
    cluster_gains = w_nlos * nlos.group_sums(generator.terms(nlos, model, pair))
    return (
        np.concatenate([ris_gains, cluster_gains]),
        np.concatenate([ris.group_delays(), nlos.group_delays()]),
    )


def transfer_function(
    scenario: Scenario,
    model: ChannelModel,
    pair: Pair,
    t: float,
    f: float,
    realization: int = 0,
    generator: Optional[ChannelGenerator] = None,
) -> complex:
    """
    Evaluate the time-invariant transfer function at frequency f.

    Every RIS sub-array and every cluster is delayed by its own path.

    Args:
        scenario: Scenario
        model: Model variant
        pair: (p, q), 1-based
        t: Motion time in seconds
        f: Frequency in Hz
        realization: Realization index
        generator: Generator to reuse cached components

    Returns:
        Complex transfer function value
    """
    if f < 0:
        raise DomainError(f"frequency must be non-negative, got {f}")
    generator = generator or ChannelGenerator(scenario)
    _validate_pairs(generator, [(pair, t)])
    gains, delays = _transfer_components(generator, model, pair, t, realization)
    return complex(np.sum(gains * np.exp(-2j * np.pi * f * delays)))


def _delay_phasors(
    scenario: Scenario,
    generator: ChannelGenerator,
    t: float,
    df_grid: NDArray[np.float64],
    realization: int,
) -> NDArray[np.complex128]:
    """Mean cluster phasor exp(-j 2 pi df tau) of one realization at every df."""
    delays = cluster_delays(scenario, generator.clusters(realization), t)
    return np.exp(-2j * np.pi * np.outer(df_grid, delays)).mean(axis=1)


def frequency_cf_series(
    scenario: Scenario,
    pair: Pair,
    t: float,
    df_grid: Sequence[float],
    draws: Optional[int] = None,
    generator: Optional[ChannelGenerator] = None,
) -> CorrelationSeries:
    """
    Evaluate the frequency correlation over a frequency-separation grid.

    The RIS term uses the RIS-center delay; the scattered term averages the
    cluster delay phasors over clusters and over realizations.

    Returns:
        Series over ``df``
    """
    df = np.asarray(df_grid, dtype=float)
    if np.any(df < 0):
        raise DomainError("frequency separation must be non-negative")
    draws = _draws(scenario, draws)
    generator = generator or ChannelGenerator(scenario)
    _validate_pairs(generator, [(pair, t)])

    k = scenario.channel.rician_k
    ris_delay = float(legs(scenario, np.asarray(scenario.ris.center), t).delay[0])
    ris_term = np.exp(-2j * np.pi * df * ris_delay)

    phasors = np.asarray(
        _map_draws(scenario, partial(_delay_phasors, scenario, generator, t, df), draws)
    )
    scattered = np.array(
        [
            complex(math.fsum(phasors[:, i].real), math.fsum(phasors[:, i].imag)) / draws
            for i in range(len(df))
        ]
    )

    if math.isinf(k):
        values = ris_term
        errors = np.zeros(len(df))
    else:
        values = (k * ris_term + scattered) / (k + 1)
        if draws > 1:
            squares = np.sum(np.abs(phasors - scattered) ** 2, axis=0)
            spread = np.sqrt(squares / (draws * (draws - 1)))
            errors = spread / (k + 1)
        else:
            errors = np.full(len(df), math.nan)

    return CorrelationSeries(
        axis_label="df", axis=df, values=values, draws=draws, standard_error=errors
    )


def frequency_cf(
    scenario: Scenario,
    pair: Pair,
    t: float,
    df: float,
    draws: Optional[int] = None,
    generator: Optional[ChannelGenerator] = None,
) -> CorrelationEstimate:
    """Evaluate the frequency correlation at one frequency separation."""
    series = frequency_cf_series(scenario, pair, t, [df], draws, generator)
    return CorrelationEstimate(
        value=complex(series.values[0]),
        standard_error=float(series.standard_error[0]),  # type: ignore[index]
        draws=series.draws,
    )


def _transfer_correlation(
    components: Sequence[tuple[NDArray[np.complex128], NDArray[np.float64]]], f: float, df: float
) -> CorrelationEstimate:
    """Correlate transfer values at f and f + df, keeping same-group products only."""
    low = [gains * np.exp(-2j * np.pi * f * delays) for gains, delays in components]
    high = [gains * np.exp(-2j * np.pi * (f + df) * delays) for gains, delays in components]

    products = np.concatenate([np.conj(a) * b for a, b in zip(low, high)])
    power_low = math.fsum(np.concatenate([np.abs(a) ** 2 for a in low]))
    power_high = math.fsum(np.concatenate([np.abs(b) ** 2 for b in high]))
    if power_low == 0 or power_high == 0:
        raise DomainError("correlation undefined for a zero-power transfer function")

    denominator = math.sqrt(power_low * power_high)
    value = complex(math.fsum(products.real), math.fsum(products.imag)) / denominator

    draws = len(components)
    if draws > 1:
        per_draw = np.array([np.sum(np.conj(a) * b) for a, b in zip(low, high)])
        per_draw *= draws / denominator
        squares = np.sum(np.abs(per_draw - value) ** 2)
        standard_error = float(np.sqrt(squares / (draws * (draws - 1))))
    else:
        standard_error = math.nan
    return CorrelationEstimate(value=value, standard_error=standard_error, draws=draws)


def frequency_cf_from_transfer_series(
    scenario: Scenario,
    model: ChannelModel,
    pair: Pair,
    t: float,
    f: float,
    df_grid: Sequence[float],
    draws: Optional[int] = None,
    generator: Optional[ChannelGenerator] = None,
) -> CorrelationSeries:
    """
    Estimate the frequency correlation from transfer-function pairs over a grid.

    Products between different delay groups are dropped, so the estimate
    carries no dependence on f beyond rounding.

    Args:
        scenario: Scenario
        model: Model variant
        pair: (p, q), 1-based
        t: Motion time in seconds
        f: Base frequency in Hz
        df_grid: Frequency separations in Hz
        draws: Monte Carlo draws
        generator: Generator to reuse cached components

    Returns:
        Series over ``df``
    """
    if f < 0 or any(df < 0 for df in df_grid):
        raise DomainError("frequencies must be non-negative")
    draws = _draws(scenario, draws)
    generator = generator or ChannelGenerator(scenario)
    _validate_pairs(generator, [(pair, t)])

    components = _map_draws(
        scenario, partial(_transfer_components, generator, model, pair, t), draws
    )
    estimates = [_transfer_correlation(components, f, df) for df in df_grid]
    return CorrelationSeries.from_estimates("df", np.asarray(df_grid), estimates, model)


def frequency_cf_from_transfer(
    scenario: Scenario,
    model: ChannelModel,
    pair: Pair,
    t: float,
    f: float,
    df: float,
    draws: Optional[int] = None,
    generator: Optional[ChannelGenerator] = None,
) -> CorrelationEstimate:
    """Estimate the frequency correlation from transfer values at f and f + df."""
    series = frequency_cf_from_transfer_series(scenario, model, pair, t, f, [df], draws, generator)
    return CorrelationEstimate(
        value=complex(series.values[0]),
        standard_error=float(series.standard_error[0]),  # type: ignore[index]
        draws=series.draws,
    )

"""Channel realizations of every model variant."""

import math
import threading
from typing import Callable, Hashable, Optional, TypeVar

import numpy as np
from numpy.typing import NDArray

from src.channel.base import (
    ChannelModel,
    ChannelRealization,
    ClusterSet,
    ComplexMatrix,
    RisState,
)
from src.channel.beam import BeamGrid
from src.channel.nlos import generate_clusters, nlos_paths
from src.channel.paths import (
    PathSet,
    antenna_matrix,
    antenna_terms,
    beam_matrix,
    beam_terms,
)
from src.channel.ris import aligned_scale, make_ris_state, ris_paths
from src.core.config import Scenario
from src.core.logger import get_logger
from src.core.rng import Purpose, stream
from src.partition.base import SubArrayPartition
from src.partition.fraunhofer import element_partition, partition_grid, whole_panel

logger = get_logger(__name__)

T = TypeVar("T")


def rician_weights(k: float) -> tuple[float, float]:
    """Amplitude weights (RIS, NLoS) for Rician factor k."""
    if math.isinf(k):
        return 1.0, 0.0
    return math.sqrt(k / (k + 1)), math.sqrt(1 / (k + 1))


class ChannelGenerator:
    """Channel generator for one scenario and seed.

    Deterministic RIS components are cached per (model, t, regulation time);
    random draws are keyed by realization index so any evaluation order gives
    the same values. The caches are shared by worker threads behind one lock
    and never evicted, so a generator should live for one statistic or sweep
    point.
    """

    def __init__(self, scenario: Scenario, seed: Optional[int] = None):
        """
        Initialize generator.

        Args:
            scenario: Scenario
            seed: Seed overriding ``simulation.seed``
        """
        self.scenario = scenario
        self.seed = scenario.simulation.seed if seed is None else seed
        self.grid = BeamGrid(scenario.uav.antennas, scenario.vehicle.antennas)
        self._lock = threading.RLock()
        self._ris_cache: dict[tuple[ChannelModel, float, float], PathSet] = {}
        self._partitions: dict[tuple[ChannelModel, float], SubArrayPartition] = {}
        self._matrices: dict[tuple[ChannelModel, float, float], ComplexMatrix] = {}
        self._entries: dict[tuple[ChannelModel, float, float, tuple[int, int]], complex] = {}

    @property
    def random_ris(self) -> bool:
        return self.scenario.ris.phase_policy == "random"

    def _cached(self, cache: dict, key: Hashable, build: Callable[[], T]) -> T:
        with self._lock:
            if key not in cache:
                cache[key] = build()
            return cache[key]

    def partition(self, model: ChannelModel, t: float) -> SubArrayPartition:
        """Partition a model uses at time t."""

        def build() -> SubArrayPartition:
            if model is ChannelModel.SPHERICAL:
                return element_partition(self.scenario, t)
            if model is ChannelModel.PLANAR:
                return whole_panel(self.scenario, t)
            return partition_grid(self.scenario, t)

        return self._cached(self._partitions, (model, t), build)

    def ris_state(
        self,
        model: ChannelModel,
        t: float,
        realization: int = 0,
        regulated_at: Optional[float] = None,
    ) -> RisState:
        """RIS regulation of a model at time t in one realization."""
        rng = stream(self.seed, realization, Purpose.RIS_PHASES) if self.random_ris else None
        partition = self.partition(model, t)
        return make_ris_state(self.scenario, partition, t, rng, regulated_at)

    def raw_ris_paths(
        self,
        model: ChannelModel,
        t: float,
        realization: int = 0,
        ris_state: Optional[RisState] = None,
        regulated_at: Optional[float] = None,
    ) -> PathSet:
        """RIS paths before normalization."""
        if ris_state is None:
            ris_state = self.ris_state(model, t, realization, regulated_at)
        return ris_paths(self.scenario, self.partition(model, t), ris_state, t)

    def ris_paths(
        self,
        model: ChannelModel,
        t: float,
        realization: int = 0,
        ris_state: Optional[RisState] = None,
        regulated_at: Optional[float] = None,
    ) -> PathSet:
        """
        Get RIS paths scaled to unit mean entry power of the co-phased panel.

        Args:
            model: Model variant
            t: Motion time in seconds
            realization: Realization index (random phase policy only)
            ris_state: Explicit regulation instead of the configured policy
            regulated_at: Time the co-phasing regulation is held from, t if omitted

        Returns:
            Path set
        """

        def build() -> PathSet:
            paths = self.raw_ris_paths(model, t, realization, ris_state, regulated_at)
            scale = aligned_scale(self.scenario, paths)
            return paths.scaled(1 / scale) if scale > 0 else paths

        if ris_state is not None or self.random_ris:
            return build()
        key = (model, t, t if regulated_at is None else regulated_at)
        return self._cached(self._ris_cache, key, build)

    def ris_matrix(
        self,
        model: ChannelModel,
        t: float,
        realization: int = 0,
        regulated_at: Optional[float] = None,
    ) -> ComplexMatrix:
        """Normalized RIS component matrix in the model's domain."""

        def build() -> ComplexMatrix:
            return self.matrix(self.ris_paths(model, t, realization, None, regulated_at), model)

        if self.random_ris:
            return build()
        key = (model, t, t if regulated_at is None else regulated_at)
        return self._cached(self._matrices, key, build)

    def raw_ris_matrix(self, model: ChannelModel, t: float) -> ComplexMatrix:
        """Unnormalized RIS matrix of the first realization, for modeling errors."""
        return self.matrix(self.raw_ris_paths(model, t), model)

    def ris_entry(
        self,
        model: ChannelModel,
        t: float,
        pair: tuple[int, int],
        realization: int = 0,
        regulated_at: Optional[float] = None,
    ) -> complex:
        """Normalized RIS coefficient of one (p, q) pair in the model's domain."""

        def build() -> complex:
            paths = self.ris_paths(model, t, realization, None, regulated_at)
            return self.entry(paths, model, pair)

        if self.random_ris:
            return build()
        key = (model, t, t if regulated_at is None else regulated_at, pair)
        return self._cached(self._entries, key, build)

    def clusters(self, realization: int) -> ClusterSet:
        return generate_clusters(self.scenario, self.seed, realization)

    def nlos_paths(
        self, t: float, realization: int = 0, clusters: Optional[ClusterSet] = None
    ) -> PathSet:
        """NLoS paths of one realization at time t."""
        if clusters is None:
            clusters = self.clusters(realization)
        return nlos_paths(self.scenario, clusters, t)

    def matrix(self, paths: PathSet, model: ChannelModel) -> ComplexMatrix:
        """Q x P matrix of a path set in the model's domain."""
        if model.in_beam_domain:
            return beam_matrix(paths, self.grid)
        return antenna_matrix(paths, self.scenario.uav.antennas, self.scenario.vehicle.antennas)

    def terms(
        self, paths: PathSet, model: ChannelModel, pair: tuple[int, int]
    ) -> NDArray[np.complex128]:
        """Per-path contributions to the (p, q) entry in the model's domain."""
        p, q = pair
        if model.in_beam_domain:
            return beam_terms(paths, p, q, self.grid)
        uav_count, vehicle_count = self.scenario.uav.antennas, self.scenario.vehicle.antennas
        return antenna_terms(paths, p, q, uav_count, vehicle_count)

    def entry(self, paths: PathSet, model: ChannelModel, pair: tuple[int, int]) -> complex:
        """The (p, q) entry of a path set in the model's domain."""
        return complex(self.terms(paths, model, pair).sum())

    def realization(
        self,
        model: ChannelModel,
        t: float,
        realization: int = 0,
        ris_state: Optional[RisState] = None,
    ) -> ChannelRealization:
        """
        Generate a full channel realization.

        Args:
            model: Model variant
            t: Motion time in seconds
            realization: Realization index
            ris_state: Explicit RIS regulation instead of the configured policy

        Returns:
            Channel realization
        """
        ris = self.ris_paths(model, t, realization, ris_state)
        nlos = self.nlos_paths(t, realization)
        if ris_state is None:
            h_ris = self.ris_matrix(model, t, realization)
        else:
            h_ris = self.matrix(ris, model)
        h_nlos = self.matrix(nlos, model)

        k = self.scenario.channel.rician_k
        w_ris, w_nlos = rician_weights(k)
        logger.debug("Channel generated", model=model.value, t=t, realization=realization)

        return ChannelRealization(
            model=model,
            t=t,
            ris=h_ris,
            nlos=h_nlos,
            combined=w_ris * h_ris + w_nlos * h_nlos,
            ris_delays=ris.group_delays(),
            nlos_delays=nlos.group_delays(),
            rician_k=k,
        )


def combined_channel(
    scenario: Scenario, t: float, model: ChannelModel, realization: int = 0
) -> ChannelRealization:
    """Rician-weighted channel of a model at time t."""
    return ChannelGenerator(scenario).realization(model, t, realization)


def spherical_oracle(
    scenario: Scenario, ris_state: Optional[RisState], t: float, realization: int = 0
) -> ChannelRealization:
    """Channel with exact per-element distances and angles."""
    return ChannelGenerator(scenario).realization(ChannelModel.SPHERICAL, t, realization, ris_state)


def planar_baseline(
    scenario: Scenario, ris_state: Optional[RisState], t: float, realization: int = 0
) -> ChannelRealization:
    """Channel with the whole panel seen under one planar wavefront."""
    return ChannelGenerator(scenario).realization(ChannelModel.PLANAR, t, realization, ris_state)

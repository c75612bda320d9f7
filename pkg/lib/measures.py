"""
Correlation measures on boundary interval configurations

Entropies of unions compete over all non-crossing pairings of the interval
endpoints by bulk geodesics; mutual, tripartite and n-partite information
are combinations of those union entropies.
"""
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import combinations
from typing import Optional, Sequence, Union

from lib.errors import DomainError
from lib.geometry import BulkGeometry, UnitsConvention, validate_geometry
from lib.minimal_surface import (
    DEFAULT_QUADRATURE,
    QuadratureSpec,
    entropy_of_strip,
    min_distance_between_curves,
    rt_geodesic_curve,
)

logger = logging.getLogger(__name__)

# Catalan(8) = 1430 candidate pairings
MAX_UNION_INTERVALS = 8
MAX_PARTITE_REGIONS = 4

# EWCS phase decision cutoff, relative to the smallest length scale
EWCS_CUTOFF_FRACTION = 1e-3

# Entanglement wedge cross section -> negativity proxy
NEGATIVITY_PROXY_FACTOR = 1.5

Interval = tuple[float, float]


class Phase(str, Enum):
    CONNECTED = "connected"
    DISCONNECTED = "disconnected"


@dataclass(frozen=True)
class IntervalSet:
    """Sorted, strictly disjoint boundary intervals"""

    intervals: tuple[Interval, ...]

    def __post_init__(self):
        cleaned = tuple((float(a), float(b)) for a, b in self.intervals)
        object.__setattr__(self, "intervals", cleaned)
        if not cleaned:
            raise DomainError("interval set must contain at least one interval")
        for a, b in cleaned:
            if not (math.isfinite(a) and math.isfinite(b)):
                raise DomainError(f"interval endpoints must be finite, got ({a}, {b})")
            if not a < b:
                raise DomainError(f"interval must satisfy a < b, got ({a}, {b})")
        for (_, b), (a, _) in zip(cleaned, cleaned[1:]):
            if not b < a:
                raise DomainError(f"intervals must be sorted and disjoint, got b={b} >= a={a}")

    @classmethod
    def of(cls, *intervals: Interval) -> "IntervalSet":
        return cls(tuple(intervals))

    @classmethod
    def from_lengths(cls, lengths: Sequence[float], gap: float,
                     start: float = 0.0) -> "IntervalSet":
        """Consecutive intervals of the given lengths separated by a common gap"""
        intervals = []
        left = start
        for length in lengths:
            intervals.append((left, left + length))
            left += length + gap
        return cls(tuple(intervals))

    @classmethod
    def merge(cls, *regions: "IntervalSet") -> "IntervalSet":
        """Union of regions; overlapping regions raise DomainError"""
        return cls(tuple(sorted(i for r in regions for i in r.intervals)))

    def __len__(self) -> int:
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    @property
    def endpoints(self) -> tuple[float, ...]:
        return tuple(x for interval in self.intervals for x in interval)

    @property
    def lengths(self) -> tuple[float, ...]:
        return tuple(b - a for a, b in self.intervals)

    @property
    def gaps(self) -> tuple[float, ...]:
        return tuple(a - b for (_, b), (a, _) in zip(self.intervals, self.intervals[1:]))


Region = Union[IntervalSet, Interval]


def as_interval_set(region: Region) -> IntervalSet:
    if isinstance(region, IntervalSet):
        return region
    return IntervalSet.of(region)


@dataclass(frozen=True)
class MeasureResult:
    value: float
    phase: Phase
    cutoff: float
    geometry_id: str
    raw_value: Optional[float] = None


@dataclass(frozen=True)
class UnionEntropy:
    """Minimal total entropy and the endpoint pairing that achieves it"""

    entropy: float
    matching: tuple[Interval, ...] = field(default=())


def _require_geodesic_mode(geom: BulkGeometry) -> None:
    validate_geometry(geom)
    if geom.d != 2:
        raise DomainError(
            f"interval measures need d = 2 (geodesics), got d={geom.d}; "
            "use entropy_of_strip for single strips"
        )


def entanglement_entropy_interval(geom: BulkGeometry, interval: Interval, eps: float,
                                  quad: QuadratureSpec = DEFAULT_QUADRATURE,
                                  units: UnitsConvention = UnitsConvention()) -> float:
    """S of one interval: the strip entropy at width b - a"""
    _require_geodesic_mode(geom)
    (a, b), = IntervalSet.of(interval).intervals
    return entropy_of_strip(geom, b - a, eps, quad, units).entropy


def union_entropy_intervals(geom: BulkGeometry, regions: IntervalSet, eps: float,
                            quad: QuadratureSpec = DEFAULT_QUADRATURE,
                            units: UnitsConvention = UnitsConvention()) -> UnionEntropy:
    """Minimum over non-crossing endpoint pairings of the summed chord entropies"""
    _require_geodesic_mode(geom)
    if len(regions) > MAX_UNION_INTERVALS:
        raise DomainError(
            f"union of {len(regions)} intervals exceeds the enumerable {MAX_UNION_INTERVALS}"
        )
    points = regions.endpoints

    @lru_cache(maxsize=None)
    def chord(i: int, k: int) -> float:
        return entropy_of_strip(geom, points[k] - points[i], eps, quad, units).entropy

    @lru_cache(maxsize=None)
    def best(i: int, j: int) -> tuple[float, tuple[tuple[int, int], ...]]:
        # endpoints i..j inclusive; i pairs with k, inside and outside solved separately
        if i > j:
            return 0.0, ()
        best_value, best_pairs = math.inf, ()
        for k in range(i + 1, j + 1, 2):
            inner_value, inner_pairs = best(i + 1, k - 1)
            outer_value, outer_pairs = best(k + 1, j)
            value = chord(i, k) + inner_value + outer_value
            if value < best_value:
                best_value = value
                best_pairs = ((i, k),) + inner_pairs + outer_pairs
        return best_value, best_pairs

    total, pairs = best(0, len(points) - 1)
    matching = tuple(sorted((points[i], points[k]) for i, k in pairs))
    logger.debug(f"union n={len(regions)} entropy={total} matching={matching}")
    return UnionEntropy(entropy=total, matching=matching)


def _links_regions(matching: tuple[Interval, ...], first: IntervalSet) -> bool:
    """True when some chord joins an endpoint of first to one outside it"""
    own = set(first.endpoints)
    return any((left in own) != (right in own) for left, right in matching)


def mutual_information(geom: BulkGeometry, A: Region, B: Region, eps: float,
                       quad: QuadratureSpec = DEFAULT_QUADRATURE,
                       units: UnitsConvention = UnitsConvention()) -> MeasureResult:
    """I(A, B) = S_A + S_B - S_AB, zero unless the union surface connects A to B"""
    region_a, region_b = as_interval_set(A), as_interval_set(B)
    union = union_entropy_intervals(geom, IntervalSet.merge(region_a, region_b), eps, quad, units)
    s_a = union_entropy_intervals(geom, region_a, eps, quad, units).entropy
    s_b = union_entropy_intervals(geom, region_b, eps, quad, units).entropy
    raw = s_a + s_b - union.entropy

    if _links_regions(union.matching, region_a):
        phase, value = Phase.CONNECTED, max(raw, 0.0)
    else:
        phase, value = Phase.DISCONNECTED, 0.0
    return MeasureResult(value=value, phase=phase, cutoff=eps,
                         geometry_id=geom.geometry_id, raw_value=raw)


def _ordered_pair(A: Interval, B: Interval) -> tuple[Interval, Interval]:
    pair = IntervalSet.merge(IntervalSet.of(A), IntervalSet.of(B))
    return pair.intervals[0], pair.intervals[1]


def reference_cutoff(A: Interval, B: Interval) -> float:
    """Cutoff for the wedge phase decision, well below every length in the pair"""
    (a1, b1), (a2, b2) = _ordered_pair(A, B)
    return EWCS_CUTOFF_FRACTION * min(b1 - a1, b2 - a2, a2 - b1)


def entanglement_wedge_cross_section(geom: BulkGeometry, A: Interval, B: Interval,
                                     quad: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """Shortest bulk geodesic between the outer and inner RT curves of A and B"""
    _require_geodesic_mode(geom)
    (a1, b1), (a2, b2) = _ordered_pair(A, B)
    eps = reference_cutoff(A, B)
    if mutual_information(geom, (a1, b1), (a2, b2), eps, quad).phase is Phase.DISCONNECTED:
        return 0.0
    outer = rt_geodesic_curve(geom, a1, b2, eps, quad)
    inner = rt_geodesic_curve(geom, b1, a2, eps, quad)
    return min_distance_between_curves(geom, outer, inner, quad)


def negativity_proxy(geom: BulkGeometry, A: Interval, B: Interval,
                     quad: QuadratureSpec = DEFAULT_QUADRATURE,
                     units: UnitsConvention = UnitsConvention()) -> MeasureResult:
    """X = (3/2) E_W / four_G_N, a geometric stand-in for the negativity"""
    cross_section = entanglement_wedge_cross_section(geom, A, B, quad)
    phase = Phase.CONNECTED if cross_section > 0 else Phase.DISCONNECTED
    value = NEGATIVITY_PROXY_FACTOR * cross_section / units.four_G_N
    return MeasureResult(value=value, phase=phase, cutoff=reference_cutoff(A, B),
                         geometry_id=geom.geometry_id, raw_value=value)


def n_partite_information(geom: BulkGeometry, regions: IntervalSet, eps: float,
                          quad: QuadratureSpec = DEFAULT_QUADRATURE,
                          units: UnitsConvention = UnitsConvention()) -> float:
    """I_n = sum over non-empty subsets T of (-1)^(|T|+1) S_T, one interval per region"""
    n = len(regions)
    if n > MAX_PARTITE_REGIONS:
        raise DomainError(f"n-partite information supports at most {MAX_PARTITE_REGIONS} regions, got {n}")
    total = 0.0
    for size in range(1, n + 1):
        sign = 1.0 if size % 2 == 1 else -1.0
        for subset in combinations(regions.intervals, size):
            total += sign * union_entropy_intervals(geom, IntervalSet(subset), eps, quad, units).entropy
    return total


def tripartite_information(geom: BulkGeometry, A: Interval, B: Interval, C: Interval,
                           eps: float, quad: QuadratureSpec = DEFAULT_QUADRATURE,
                           units: UnitsConvention = UnitsConvention()) -> float:
    """I3 = I(A,B) + I(A,C) - I(A, B u C); cutoff independent"""
    return n_partite_information(geom, IntervalSet.of(A, B, C), eps, quad, units)


def multipartite_correlation(geom: BulkGeometry, A: Interval, B: Interval, C: Interval,
                             eps: float, quad: QuadratureSpec = DEFAULT_QUADRATURE,
                             units: UnitsConvention = UnitsConvention()) -> float:
    """M = -I3, clamped at zero against rounding (holographic I3 <= 0)"""
    return max(-tripartite_information(geom, A, B, C, eps, quad, units), 0.0)


def multipartite_phase(geom: BulkGeometry, A: Interval, B: Interval, C: Interval,
                       eps: float, quad: QuadratureSpec = DEFAULT_QUADRATURE) -> Phase:
    """Connected unless the three-interval union picks the fully disconnected pairing"""
    regions = IntervalSet.of(A, B, C)
    matching = union_entropy_intervals(geom, regions, eps, quad).matching
    if set(matching) == set(regions.intervals):
        return Phase.DISCONNECTED
    return Phase.CONNECTED

"""
RG-flow sweeps - measures along a scan coordinate, transitions, rates

The scan coordinate stands in for the RG scale: a gap, an interval length,
a horizon or wall depth, or a probe depth z* (energy scale mu = 1/z*).
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterable, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator
from scipy.optimize import bisect

from lib.errors import BracketError, DomainError, HoloscopeError, NumericsError, ScanError, SweepSpecError
from lib.geometry import BulkGeometry, GeometryKind, UnitsConvention, validate_geometry
from lib.measures import (
    IntervalSet,
    Phase,
    multipartite_correlation,
    multipartite_phase,
    mutual_information,
    negativity_proxy,
    union_entropy_intervals,
)
from lib.minimal_surface import (
    DEFAULT_QUADRATURE,
    Branch,
    QuadratureSpec,
    entropy_of_strip,
    width_of_turning_point,
)
from lib.prometheus_metrics import scan_points_total

logger = logging.getLogger(__name__)

TRANSITION_XTOL = 1e-10
SLOPE_STEP = 1e-4


class SweepParameter(str, Enum):
    GAP_SIZE = "gap"
    INTERVAL_LENGTH = "length"
    HORIZON_DEPTH = "horizon"
    WALL_DEPTH = "wall"
    PROBE_DEPTH = "probe"


class MeasureKind(str, Enum):
    ENTROPY = "entropy"
    MI = "mi"
    NEGATIVITY_PROXY = "negativity_proxy"
    MULTIPARTITE = "multipartite"


# First requested measure in this order sets the record phase
PHASE_PRIORITY = (
    MeasureKind.MI,
    MeasureKind.NEGATIVITY_PROXY,
    MeasureKind.MULTIPARTITE,
    MeasureKind.ENTROPY,
)

# Intervals each measure reads from the configuration
REQUIRED_INTERVALS = {
    MeasureKind.ENTROPY: 1,
    MeasureKind.MI: 2,
    MeasureKind.NEGATIVITY_PROXY: 2,
    MeasureKind.MULTIPARTITE: 3,
}


class SweepSpec(BaseModel):
    """One scan: a fixed configuration plus the coordinate that varies"""

    parameter: SweepParameter
    start: float
    stop: float
    steps: int
    geometry: BulkGeometry
    intervals: IntervalSet
    eps: float = 0.01
    quadrature: QuadratureSpec = DEFAULT_QUADRATURE
    units: UnitsConvention = UnitsConvention()

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @model_validator(mode="after")
    def check_grid(self) -> "SweepSpec":
        if self.steps < 2:
            raise SweepSpecError(f"sweep needs at least 2 steps, got steps={self.steps}")
        if not self.start < self.stop:
            raise SweepSpecError(f"sweep needs start < stop, got {self.start} >= {self.stop}")
        if not self.eps > 0:
            raise SweepSpecError(f"cutoff must be positive, got eps={self.eps}")
        if self.parameter is SweepParameter.HORIZON_DEPTH and self.geometry.kind is not GeometryKind.BLACK_BRANE:
            raise SweepSpecError("horizon sweeps need a black_brane geometry")
        if self.parameter is SweepParameter.WALL_DEPTH and self.geometry.kind is not GeometryKind.HARD_WALL:
            raise SweepSpecError("wall sweeps need a hard_wall geometry")
        return self

    def grid(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)


@dataclass(frozen=True)
class ScanRecord:
    parameter_value: float
    entropy: Optional[float] = None
    mi: Optional[float] = None
    negativity_proxy: Optional[float] = None
    multipartite: Optional[float] = None
    phase: Optional[Phase] = None
    rate: Optional[float] = None
    error: Optional[str] = None


def substitute(spec: SweepSpec, value: float) -> tuple[BulkGeometry, IntervalSet]:
    """Geometry and intervals at one grid point"""
    geom, intervals = spec.geometry, spec.intervals
    first = intervals.intervals[0][0]

    if spec.parameter is SweepParameter.GAP_SIZE:
        intervals = IntervalSet.from_lengths(intervals.lengths, value, start=first)
    elif spec.parameter is SweepParameter.INTERVAL_LENGTH:
        intervals = _with_lengths(intervals, value)
    elif spec.parameter is SweepParameter.HORIZON_DEPTH:
        geom = geom.model_copy(update={"z_h": value})
    elif spec.parameter is SweepParameter.WALL_DEPTH:
        geom = geom.model_copy(update={"z_w": value})
    elif spec.parameter is SweepParameter.PROBE_DEPTH:
        validate_geometry(geom)
        width = width_of_turning_point(geom, value, spec.quadrature)
        intervals = _with_lengths(intervals, width)

    validate_geometry(geom)
    return geom, intervals


def _with_lengths(intervals: IntervalSet, length: float) -> IntervalSet:
    """Every interval resized to length, gaps and the first left end kept"""
    left = intervals.intervals[0][0]
    resized = []
    for gap in intervals.gaps + (0.0,):
        resized.append((left, left + length))
        left += length + gap
    return IntervalSet(tuple(resized))


def _entropy_with_phase(spec: SweepSpec, geom: BulkGeometry,
                        intervals: IntervalSet) -> tuple[float, Phase]:
    if len(intervals) == 1:
        width = intervals.lengths[0]
        result = entropy_of_strip(geom, width, spec.eps, spec.quadrature, spec.units)
        connected = result.solution.branch is Branch.CONNECTED_U
        return result.entropy, Phase.CONNECTED if connected else Phase.DISCONNECTED
    union = union_entropy_intervals(geom, intervals, spec.eps, spec.quadrature, spec.units)
    connected = set(union.matching) != set(intervals.intervals)
    return union.entropy, Phase.CONNECTED if connected else Phase.DISCONNECTED


def evaluate_point(spec: SweepSpec, value: float, measures: frozenset[MeasureKind]) -> ScanRecord:
    """All requested measures at one parameter value; errors propagate"""
    geom, intervals = substitute(spec, value)
    for measure in measures:
        if len(intervals) < REQUIRED_INTERVALS[measure]:
            raise DomainError(
                f"{measure.value} needs {REQUIRED_INTERVALS[measure]} intervals, got {len(intervals)}"
            )

    fields: dict = {"parameter_value": float(value)}
    phases: dict[MeasureKind, Phase] = {}
    quad, units, eps = spec.quadrature, spec.units, spec.eps
    regions = intervals.intervals

    if MeasureKind.ENTROPY in measures:
        fields["entropy"], phases[MeasureKind.ENTROPY] = _entropy_with_phase(spec, geom, intervals)
    if MeasureKind.MI in measures:
        result = mutual_information(geom, regions[0], regions[1], eps, quad, units)
        fields["mi"], phases[MeasureKind.MI] = result.value, result.phase
    if MeasureKind.NEGATIVITY_PROXY in measures:
        result = negativity_proxy(geom, regions[0], regions[1], quad, units)
        fields["negativity_proxy"], phases[MeasureKind.NEGATIVITY_PROXY] = result.value, result.phase
    if MeasureKind.MULTIPARTITE in measures:
        a, b, c = regions[:3]
        fields["multipartite"] = multipartite_correlation(geom, a, b, c, eps, quad, units)
        phases[MeasureKind.MULTIPARTITE] = multipartite_phase(geom, a, b, c, eps, quad)

    fields["phase"] = next(phases[m] for m in PHASE_PRIORITY if m in phases)
    return ScanRecord(**fields)


def scan_measure(spec: SweepSpec, measures: Iterable[MeasureKind],
                 workers: int = 1) -> list[ScanRecord]:
    """Records in ascending parameter order; failed points keep an error entry"""
    wanted = frozenset(MeasureKind(m) for m in measures)
    if not wanted:
        raise SweepSpecError("no measures requested")
    for measure in wanted:
        if len(spec.intervals) < REQUIRED_INTERVALS[measure]:
            raise SweepSpecError(
                f"{measure.value} needs {REQUIRED_INTERVALS[measure]} intervals, got {len(spec.intervals)}"
            )

    def run(value: float) -> ScanRecord:
        try:
            record = evaluate_point(spec, value, wanted)
        except HoloscopeError as e:
            scan_points_total.labels(status="error").inc()
            logger.warning(f"scan point failed parameter={value} error={e}")
            return ScanRecord(parameter_value=float(value), error=str(e))
        scan_points_total.labels(status="ok").inc()
        return record

    grid = spec.grid()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(run, grid))
    else:
        records = [run(v) for v in grid]

    if all(r.error is not None for r in records):
        raise ScanError(f"all {len(records)} sweep points failed; first: {records[0].error}")
    logger.info(
        f"scan parameter={spec.parameter.value} steps={spec.steps} "
        f"measures={sorted(m.value for m in wanted)} failed={sum(r.error is not None for r in records)}"
    )
    return records


def _phase_indicator(spec: SweepSpec, measure: MeasureKind):
    measures = frozenset({measure})

    def indicator(value: float) -> float:
        phase = evaluate_point(spec, value, measures).phase
        return 1.0 if phase is Phase.CONNECTED else -1.0

    return indicator


def locate_transition(spec: SweepSpec, measure: MeasureKind,
                      bracket: tuple[float, float]) -> float:
    """Parameter value where the RT phase of measure flips, by bisection"""
    lo, hi = bracket
    if not lo < hi:
        raise BracketError(f"bracket must satisfy lo < hi, got ({lo}, {hi})")
    indicator = _phase_indicator(spec, MeasureKind(measure))
    if indicator(lo) == indicator(hi):
        raise BracketError(f"same phase at both ends of bracket ({lo}, {hi})")
    try:
        root = bisect(indicator, lo, hi, xtol=TRANSITION_XTOL, maxiter=200)
    except RuntimeError as e:
        raise NumericsError(f"transition bisection failed: {e}") from e
    logger.info(f"transition parameter={spec.parameter.value} measure={measure} at={root}")
    return float(root)


def finite_difference_rate(records: list[ScanRecord], field: str) -> list[ScanRecord]:
    """d(field)/d(parameter): central inside, second-order one-sided at the ends"""
    if len(records) < 3:
        raise DomainError(f"finite differences need at least 3 records, got {len(records)}")
    if field not in {k.value for k in MeasureKind}:
        raise DomainError(f"unknown field {field!r}")
    values = [getattr(r, field) for r in records]
    if any(v is None for v in values):
        raise DomainError(f"field {field!r} missing on some records")

    x = np.array([r.parameter_value for r in records])
    steps = np.diff(x)
    h = float(steps[0])
    if not np.allclose(steps, h, rtol=1e-9, atol=0.0):
        raise DomainError("finite differences need uniform parameter spacing")

    rates = np.gradient(np.array(values, dtype=float), h, edge_order=2)
    return [replace(r, rate=float(rate)) for r, rate in zip(records, rates)]


def _measure_value(spec: SweepSpec, value: float, measure: MeasureKind) -> float:
    record = evaluate_point(spec, value, frozenset({measure}))
    return getattr(record, measure.value)


def one_sided_slopes(spec: SweepSpec, measure: MeasureKind, at: float,
                     h: float = SLOPE_STEP) -> tuple[float, float]:
    """Left and right derivatives at a kink from three points on each side"""
    measure = MeasureKind(measure)
    centre = _measure_value(spec, at, measure)
    left = [_measure_value(spec, at - 2 * h, measure), _measure_value(spec, at - h, measure), centre]
    right = [centre, _measure_value(spec, at + h, measure), _measure_value(spec, at + 2 * h, measure)]
    left_slope = np.gradient(left, h, edge_order=2)[-1]
    right_slope = np.gradient(right, h, edge_order=2)[0]
    return float(left_slope), float(right_slope)


def critical_exponent(m_squared: float, L: float) -> float:
    """nu = 1 / sqrt(m^2 + L^-2), taken literally in units where L carries length"""
    if not L > 0:
        raise DomainError(f"AdS radius must be positive, got L={L}")
    gap = m_squared + 1.0 / L**2
    if not gap > 0:
        raise DomainError(f"m^2 + 1/L^2 must be positive, got {gap}")
    return 1.0 / math.sqrt(gap)

"""
figures - the figure-analog datasets of the default model

Each dataset is a sweep over a HardWall or BlackBrane geometry, written to
<out>/<name>.<format> and checked against the qualitative shape it must show.
The size sweeps come as families, one series per wall or horizon depth.
The command fails after writing everything if any shape check fails.
"""
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional

from cli.commands import CommandOutcome
from cli.config import RunConfig
from cli.emit import emit_series
from lib.errors import ShapeCheckError
from lib.geometry import BulkGeometry
from lib.measures import IntervalSet, Phase
from lib.rgflow import (
    MeasureKind,
    ScanRecord,
    SweepParameter,
    SweepSpec,
    finite_difference_rate,
    scan_measure,
)
from lib.settings import settings

logger = logging.getLogger(__name__)

NAME = "figures"
FIELDS = ()

TRANSITION_DEPTH = 0.5
WALL_TRIPLE = ((0.0, 0.225), (0.275, 0.5), (0.55, 0.775))
SERIES_DEPTHS = (0.2, 0.5, 0.8)


@dataclass(frozen=True)
class FigureDataset:
    name: str
    geometry: BulkGeometry
    intervals: IntervalSet
    parameter: SweepParameter
    start: float
    stop: float
    steps: int
    measures: tuple[MeasureKind, ...]
    check: Callable[[list[ScanRecord]], Optional[str]]
    rate_field: Optional[str] = None
    family: Optional[str] = None
    series: Optional[dict[str, float]] = None

    def spec(self, config: RunConfig, steps: Optional[int] = None) -> SweepSpec:
        return SweepSpec(
            parameter=self.parameter,
            start=self.start,
            stop=self.stop,
            steps=steps or self.steps,
            geometry=self.geometry,
            intervals=self.intervals,
            eps=config.cutoff,
            quadrature=config.quadrature,
            units=config.units,
        )


# ============================================================================
# Shape checks: None when the series looks right, otherwise the problem
# ============================================================================

def _values(records: list[ScanRecord], field: str) -> list[float]:
    return [getattr(r, field) for r in records]


def _phase_flips(records: list[ScanRecord]) -> int:
    phases = [r.phase for r in records]
    return sum(a is not b for a, b in zip(phases, phases[1:]))


def check_mi_vs_size(records: list[ScanRecord]) -> Optional[str]:
    mi = _values(records, "mi")
    if mi[0] != 0.0 or not mi[-1] > 0.0:
        return "mi should start at zero and end positive"
    if any(b < a - 1e-9 for a, b in zip(mi, mi[1:])):
        return "mi should not decrease with interval size"
    return None


def _check_sharp_drop(records: list[ScanRecord], connected_first: bool) -> Optional[str]:
    proxy = _values(records, "negativity_proxy")
    if _phase_flips(records) != 1:
        return "expected exactly one phase flip"
    flip = next(i for i, (a, b) in enumerate(zip(records, records[1:])) if a.phase is not b.phase)
    before, after = (proxy[flip], proxy[flip + 1]) if connected_first else (proxy[flip + 1], proxy[flip])
    if not (before > 0.0 and after == 0.0):
        return "negativity proxy should drop from a positive value straight to zero"
    return None


def check_negativity_vs_scale(records: list[ScanRecord]) -> Optional[str]:
    if records[0].phase is not Phase.CONNECTED:
        return "small gaps should be connected"
    return _check_sharp_drop(records, connected_first=True)


def check_multipartite_vs_scale(records: list[ScanRecord]) -> Optional[str]:
    m = _values(records, "multipartite")
    if abs(m[0]) > 1e-9:
        return "multipartite correlation should vanish deep in the IR"
    peak = max(range(len(m)), key=m.__getitem__)
    if abs(records[peak].parameter_value - TRANSITION_DEPTH) > 0.011:
        return f"multipartite peak at {records[peak].parameter_value}, expected {TRANSITION_DEPTH}"
    return None


def check_rate_of_change(records: list[ScanRecord]) -> Optional[str]:
    for r in records:
        if 0.3 <= r.parameter_value <= 0.45 and not r.rate < 0.0:
            return "mi should fall as the wall deepens toward the transition"
        if r.parameter_value >= 0.55 and abs(r.rate) > 1e-6:
            return "mi should be flat once the wall is past the transition"
    return None


def check_negativity_vs_size(records: list[ScanRecord]) -> Optional[str]:
    if records[0].negativity_proxy != 0.0 or records[0].mi != 0.0:
        return "small intervals should be disconnected"
    return _check_sharp_drop(records, connected_first=False)


def default_datasets() -> tuple[FigureDataset, ...]:
    wall = BulkGeometry.hard_wall(z_w=TRANSITION_DEPTH)
    brane = BulkGeometry.black_brane(z_h=1.0)
    mi_vs_size = tuple(
        FigureDataset(
            name=f"fig1_mi_vs_size_zw{z_w}",
            geometry=BulkGeometry.hard_wall(z_w=z_w),
            intervals=IntervalSet.from_lengths([0.5, 0.5], 0.1),
            parameter=SweepParameter.INTERVAL_LENGTH,
            start=0.05, stop=1.5, steps=59,
            measures=(MeasureKind.MI,),
            check=check_mi_vs_size,
            family="fig1_mi_vs_size",
            series={"z_w": z_w},
        )
        for z_w in SERIES_DEPTHS
    )
    negativity_vs_size = tuple(
        FigureDataset(
            name=f"fig5_negativity_vs_size_zh{z_h}",
            geometry=BulkGeometry.black_brane(z_h=z_h),
            intervals=IntervalSet.from_lengths([1.0, 1.0], 0.1),
            parameter=SweepParameter.INTERVAL_LENGTH,
            start=0.05, stop=2.0, steps=40,
            measures=(MeasureKind.MI, MeasureKind.NEGATIVITY_PROXY),
            check=check_negativity_vs_size,
            family="fig5_negativity_vs_size",
            series={"z_h": z_h},
        )
        for z_h in SERIES_DEPTHS
    )
    return (
        *mi_vs_size,
        FigureDataset(
            name="fig2_negativity_vs_scale",
            geometry=brane,
            intervals=IntervalSet.from_lengths([1.0, 1.0], 0.1),
            parameter=SweepParameter.GAP_SIZE,
            start=0.05, stop=1.0, steps=39,
            measures=(MeasureKind.MI, MeasureKind.NEGATIVITY_PROXY),
            check=check_negativity_vs_scale,
        ),
        FigureDataset(
            name="fig3_multipartite_vs_scale",
            geometry=wall,
            intervals=IntervalSet(WALL_TRIPLE),
            parameter=SweepParameter.WALL_DEPTH,
            start=0.1, stop=1.0, steps=91,
            measures=(MeasureKind.MULTIPARTITE,),
            check=check_multipartite_vs_scale,
        ),
        FigureDataset(
            name="fig4_rate_of_change",
            geometry=wall,
            intervals=IntervalSet(WALL_TRIPLE[:2]),
            parameter=SweepParameter.WALL_DEPTH,
            start=0.1, stop=1.0, steps=91,
            measures=(MeasureKind.MI, MeasureKind.NEGATIVITY_PROXY),
            check=check_rate_of_change,
            rate_field="mi",
        ),
        *negativity_vs_size,
    )


def build_dataset(dataset: FigureDataset, config: RunConfig,
                  steps: Optional[int] = None) -> list[ScanRecord]:
    records = scan_measure(dataset.spec(config, steps), dataset.measures, workers=settings.workers)
    if dataset.rate_field:
        records = finite_difference_rate(records, dataset.rate_field)
    return records


def add_parser(subparsers, parents) -> None:
    subparsers.add_parser(NAME, parents=parents, help="Write the figure datasets to --out DIR")


def run(config: RunConfig) -> CommandOutcome:
    out_dir = Path(config.output.path or "figures")
    fmt = config.output.format
    datasets = default_datasets()
    problems = {}
    for dataset in datasets:
        records = build_dataset(dataset, config)
        problem = dataset.check(records)
        if problem:
            logger.warning(f"figure={dataset.name} shape check failed: {problem}")
            problems[dataset.name] = problem
        metadata = {
            "config": config.echo(),
            "dataset": dataset.name,
            "family": dataset.family or dataset.name,
            "geometry": dataset.geometry.model_dump(mode="json", exclude_none=True),
            "intervals": [list(i) for i in dataset.intervals],
            "parameter": dataset.parameter.value,
            "shape_check": problem or "pass",
        }
        if dataset.series:
            metadata["series"] = dataset.series
        emit_series(records, fmt, out_dir / f"{dataset.name}.{fmt}", metadata)

    if problems:
        failed = ", ".join(f"{name} ({problem})" for name, problem in problems.items())
        raise ShapeCheckError(f"{len(problems)} of {len(datasets)} figure datasets failed shape checks: {failed}")
    return CommandOutcome(summary=f"figures written={len(datasets)} dir={out_dir} shapes_ok={len(datasets)}")

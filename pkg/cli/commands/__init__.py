"""
Subcommands - each module exposes NAME, FIELDS, add_parser() and run()
"""
from dataclasses import dataclass, field
from typing import Any, Optional

from cli.config import RunConfig, parse_floats, parse_intervals
from lib.rgflow import ScanRecord, SweepParameter, SweepSpec
from lib.measures import IntervalSet


@dataclass
class CommandOutcome:
    """One-line summary plus the series to emit when --out is given"""

    summary: str
    records: Optional[list[ScanRecord]] = None
    metadata: dict[str, Any] = field(default_factory=dict)


REGION_FIELDS = ("length", "lengths", "gap", "intervals")


def add_region_flags(parser, single: bool = False) -> None:
    if single:
        parser.add_argument("--length", type=float, help="Single interval (strip) width")
    parser.add_argument("--lengths", type=parse_floats, help="Interval lengths, e.g. 1,1")
    parser.add_argument("--gap", type=float, help="Gap between consecutive intervals")
    parser.add_argument("--intervals", type=parse_intervals, help="Explicit intervals a:b,c:d")


def sweep_spec(config: RunConfig, parameter: str, start: float, stop: float, steps: int,
               intervals: IntervalSet) -> SweepSpec:
    return SweepSpec(
        parameter=SweepParameter(parameter),
        start=start,
        stop=stop,
        steps=steps,
        geometry=config.geometry,
        intervals=intervals,
        eps=config.cutoff,
        quadrature=config.quadrature,
        units=config.units,
    )

"""
i3 - tripartite information and the multipartite correlation M = -I3
"""
from cli.commands import REGION_FIELDS, CommandOutcome, add_region_flags
from cli.config import RunConfig, regions_from
from lib.errors import ConfigError
from lib.measures import multipartite_phase, tripartite_information
from lib.rgflow import ScanRecord

NAME = "i3"
FIELDS = REGION_FIELDS


def add_parser(subparsers, parents) -> None:
    parser = subparsers.add_parser(NAME, parents=parents, help="Tripartite information I3(A, B, C)")
    add_region_flags(parser)


def run(config: RunConfig) -> CommandOutcome:
    regions = regions_from(config.command)
    if len(regions) != 3:
        raise ConfigError(f"i3 needs exactly three intervals, got {len(regions)}")
    A, B, C = regions.intervals
    geom, eps, quad = config.geometry, config.cutoff, config.quadrature

    i3 = tripartite_information(geom, A, B, C, eps, quad, config.units)
    multipartite = max(-i3, 0.0)
    record = ScanRecord(
        parameter_value=regions.gaps[0],
        multipartite=multipartite,
        phase=multipartite_phase(geom, A, B, C, eps, quad),
    )
    return CommandOutcome(
        summary=f"I3 = {i3:.6f} (M = {multipartite:.6f})",
        records=[record],
        metadata={"parameter": "gap", "i3": i3},
    )

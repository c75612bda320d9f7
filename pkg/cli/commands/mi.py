"""
mi - mutual information of two intervals
"""
from cli.commands import REGION_FIELDS, CommandOutcome, add_region_flags
from cli.config import RunConfig, regions_from
from lib.errors import ConfigError
from lib.measures import mutual_information
from lib.rgflow import ScanRecord

NAME = "mi"
FIELDS = REGION_FIELDS


def add_parser(subparsers, parents) -> None:
    parser = subparsers.add_parser(NAME, parents=parents, help="Mutual information I(A, B)")
    add_region_flags(parser)


def run(config: RunConfig) -> CommandOutcome:
    regions = regions_from(config.command)
    if len(regions) != 2:
        raise ConfigError(f"mi needs exactly two intervals, got {len(regions)}")
    A, B = regions.intervals

    result = mutual_information(config.geometry, A, B, config.cutoff, config.quadrature, config.units)
    record = ScanRecord(parameter_value=regions.gaps[0], mi=result.value, phase=result.phase)
    return CommandOutcome(
        summary=f"I = {result.value:.6f} ({result.phase.value}, raw={result.raw_value:.6f})",
        records=[record],
        metadata={"parameter": "gap"},
    )

"""
negativity - entanglement-wedge cross-section proxy for the negativity
"""
from cli.commands import REGION_FIELDS, CommandOutcome, add_region_flags
from cli.config import RunConfig, regions_from
from lib.errors import ConfigError
from lib.measures import NEGATIVITY_PROXY_FACTOR, negativity_proxy
from lib.rgflow import ScanRecord

NAME = "negativity"
FIELDS = REGION_FIELDS


def add_parser(subparsers, parents) -> None:
    parser = subparsers.add_parser(NAME, parents=parents, help="Negativity proxy X = 1.5 EWCS / 4G_N")
    add_region_flags(parser)


def run(config: RunConfig) -> CommandOutcome:
    regions = regions_from(config.command)
    if len(regions) != 2:
        raise ConfigError(f"negativity needs exactly two intervals, got {len(regions)}")
    A, B = regions.intervals

    result = negativity_proxy(config.geometry, A, B, config.quadrature, config.units)
    cross_section = result.value * config.units.four_G_N / NEGATIVITY_PROXY_FACTOR
    record = ScanRecord(parameter_value=regions.gaps[0], negativity_proxy=result.value, phase=result.phase)
    return CommandOutcome(
        summary=f"X = {result.value:.6f} ({result.phase.value}, EWCS={cross_section:.6f})",
        records=[record],
        metadata={"parameter": "gap"},
    )

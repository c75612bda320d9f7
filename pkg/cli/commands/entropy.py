"""
entropy - RT entropy of one strip or of a union of intervals
"""
from cli.commands import REGION_FIELDS, CommandOutcome, add_region_flags
from cli.config import RunConfig, regions_from
from lib.measures import Phase, union_entropy_intervals
from lib.minimal_surface import Branch, entropy_of_strip
from lib.rgflow import ScanRecord

NAME = "entropy"
FIELDS = REGION_FIELDS


def add_parser(subparsers, parents) -> None:
    parser = subparsers.add_parser(NAME, parents=parents, help="Entanglement entropy of a region")
    add_region_flags(parser, single=True)


def run(config: RunConfig) -> CommandOutcome:
    regions = regions_from(config.command)

    if len(regions) == 1:
        result = entropy_of_strip(
            config.geometry, regions.lengths[0], config.cutoff, config.quadrature, config.units
        )
        value = result.entropy
        connected = result.solution.branch is Branch.CONNECTED_U
        detail = f"branch={result.solution.branch.value} z_star={result.solution.z_star:.6f}"
    else:
        union = union_entropy_intervals(
            config.geometry, regions, config.cutoff, config.quadrature, config.units
        )
        value = union.entropy
        connected = set(union.matching) != set(regions.intervals)
        detail = f"matching={list(union.matching)}"

    record = ScanRecord(
        parameter_value=sum(regions.lengths),
        entropy=value,
        phase=Phase.CONNECTED if connected else Phase.DISCONNECTED,
    )
    return CommandOutcome(
        summary=f"S = {value:.6f} ({detail})",
        records=[record],
        metadata={"parameter": "length"},
    )

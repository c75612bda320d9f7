"""
transition - locate the RT phase flip of a measure by bisection
"""
from cli.commands import REGION_FIELDS, CommandOutcome, add_region_flags, sweep_spec
from cli.config import RunConfig, parse_floats, regions_from
from lib.errors import ConfigError
from lib.rgflow import MeasureKind, ScanRecord, SweepParameter, locate_transition

NAME = "transition"
FIELDS = REGION_FIELDS + ("bracket", "parameter", "measure")


def add_parser(subparsers, parents) -> None:
    parser = subparsers.add_parser(NAME, parents=parents, help="Locate a phase transition")
    add_region_flags(parser, single=True)
    parser.add_argument("--bracket", type=parse_floats, required=True, help="lo,hi")
    parser.add_argument("--parameter", choices=[p.value for p in SweepParameter], default="gap")
    parser.add_argument("--measure", choices=[m.value for m in MeasureKind], default="mi")


def run(config: RunConfig) -> CommandOutcome:
    command = config.command
    bracket = command["bracket"]
    if len(bracket) != 2:
        raise ConfigError(f"--bracket takes lo,hi, got {bracket}")
    lo, hi = bracket

    parameter = command.get("parameter", SweepParameter.GAP_SIZE.value)
    # the swept gap only needs a placeholder value
    regions = regions_from(command, default_gap=lo)
    spec = sweep_spec(config, parameter, lo, hi, 2, regions)

    measure = MeasureKind(command.get("measure", MeasureKind.MI.value))
    root = locate_transition(spec, measure, (lo, hi))
    return CommandOutcome(
        summary=f"transition {parameter} = {root:.6f} (measure={measure.value})",
        records=[ScanRecord(parameter_value=root)],
        metadata={"parameter": parameter, "measure": measure.value},
    )

"""
scan - measures along one sweep coordinate
"""
from cli.commands import REGION_FIELDS, CommandOutcome, add_region_flags, sweep_spec
from cli.config import RunConfig, regions_from
from lib.errors import ConfigError
from lib.rgflow import MeasureKind, SweepParameter, finite_difference_rate, scan_measure
from lib.settings import settings

NAME = "scan"
FIELDS = REGION_FIELDS + ("parameter", "start", "stop", "steps", "measures", "rate", "workers")


def _measure_list(text: str) -> list[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def add_parser(subparsers, parents) -> None:
    parser = subparsers.add_parser(NAME, parents=parents, help="Sweep measures along a parameter")
    add_region_flags(parser, single=True)
    parser.add_argument("--parameter", choices=[p.value for p in SweepParameter], default="gap")
    parser.add_argument("--start", type=float, required=True)
    parser.add_argument("--stop", type=float, required=True)
    parser.add_argument("--steps", type=int, required=True)
    parser.add_argument("--measures", type=_measure_list, default=["mi"],
                        help="Comma-separated: entropy, mi, negativity_proxy, multipartite")
    parser.add_argument("--rate", choices=[m.value for m in MeasureKind],
                        help="Fill the rate column with d(field)/d(parameter)")
    parser.add_argument("--workers", type=int, help="Parallel sweep points")


def run(config: RunConfig) -> CommandOutcome:
    command = config.command
    try:
        measures = [MeasureKind(m) for m in command.get("measures") or ["mi"]]
    except ValueError as e:
        raise ConfigError(f"unknown measure: {e}") from e

    spec = sweep_spec(
        config,
        command.get("parameter", SweepParameter.GAP_SIZE.value),
        command["start"],
        command["stop"],
        command["steps"],
        regions_from(command),
    )
    records = scan_measure(spec, measures, workers=command.get("workers") or settings.workers)
    if command.get("rate"):
        records = finite_difference_rate(records, command["rate"])

    failed = sum(r.error is not None for r in records)
    metadata = {"parameter": spec.parameter.value, "measures": [m.value for m in measures]}
    if spec.parameter is SweepParameter.PROBE_DEPTH:
        metadata["energy_scale"] = "mu = 1/z_star"
    return CommandOutcome(
        summary=f"scan parameter={spec.parameter.value} points={len(records)} failed={failed}",
        records=records,
        metadata=metadata,
    )

"""
Run configuration - one JSON document per run, overridden by flags

Precedence: defaults < config file < HOLOSCOPE_CACHE < command-line flags.
The resolved RunConfig is echoed into every output's metadata.
"""
import argparse
import json
from pathlib import Path
from typing import Any, Literal, Optional

from pydantic import BaseModel, Field, ValidationError

from lib.errors import ConfigError
from lib.geometry import BulkGeometry, GeometryKind, UnitsConvention, validate_geometry
from lib.measures import IntervalSet
from lib.minimal_surface import QuadratureSpec
from lib.settings import settings

# Kind parameters used when --geometry is given without its depth
DEFAULT_HORIZON_DEPTH = 1.0
DEFAULT_WALL_DEPTH = 0.5


class OutputConfig(BaseModel):
    path: Optional[Path] = None
    format: Literal["csv", "json"] = "csv"


class CacheConfig(BaseModel):
    enabled: bool = False
    path: Optional[Path] = None


class RunConfig(BaseModel):
    """Everything a command depends on"""

    geometry: BulkGeometry = Field(default_factory=BulkGeometry)
    units: UnitsConvention = Field(default_factory=UnitsConvention)
    cutoff: float = 0.01
    quadrature: QuadratureSpec = Field(default_factory=QuadratureSpec)
    output: OutputConfig = Field(default_factory=OutputConfig)
    cache: CacheConfig = Field(default_factory=CacheConfig)
    command: dict[str, Any] = Field(default_factory=dict)
    seed: Optional[int] = None

    model_config = {"extra": "forbid"}

    def echo(self) -> dict[str, Any]:
        """JSON-safe dump for output metadata, with the derived central charge"""
        document = self.model_dump(mode="json", exclude_none=True)
        document["central_charge"] = self.units.central_charge(L=self.geometry.L)
        return document


def load_config_file(path: Path) -> dict[str, Any]:
    """Parse a config document; the top level must be an object"""
    try:
        document = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"config {path} is not valid JSON: {e}") from e
    if not isinstance(document, dict):
        raise ConfigError(f"config {path} must be a JSON object")
    return document


def _merge(base: dict[str, Any], key: str, updates: dict[str, Any]) -> None:
    section = dict(base.get(key) or {})
    section.update({k: v for k, v in updates.items() if v is not None})
    base[key] = section


def resolve_config(args: argparse.Namespace, command_fields: tuple[str, ...] = ()) -> RunConfig:
    """Fold defaults, the config file, the environment and flags into one RunConfig"""
    document: dict[str, Any] = load_config_file(args.config) if args.config else {}

    if settings.cache is not None:
        _merge(document, "cache", {"enabled": True, "path": str(settings.cache)})

    geometry_flags = {
        "kind": args.geometry,
        "d": args.d,
        "L": args.L,
        "z_h": args.z_h,
        "z_w": args.z_w,
    }
    _merge(document, "geometry", geometry_flags)
    geometry = document["geometry"]
    if geometry.get("kind") == GeometryKind.BLACK_BRANE.value:
        geometry.setdefault("z_h", DEFAULT_HORIZON_DEPTH)
    if geometry.get("kind") == GeometryKind.HARD_WALL.value:
        geometry.setdefault("z_w", DEFAULT_WALL_DEPTH)

    _merge(document, "units", {"four_G_N": args.four_g_n})
    _merge(document, "quadrature", {"node_count": args.nodes})
    _merge(document, "output", {"path": args.out, "format": args.format})
    if args.cache is not None:
        _merge(document, "cache", {"enabled": True, "path": str(args.cache)})
    if args.no_cache:
        _merge(document, "cache", {"enabled": False})
    if args.eps is not None:
        document["cutoff"] = args.eps
    if args.seed is not None:
        document["seed"] = args.seed
    _merge(document, "command", {name: getattr(args, name, None) for name in command_fields})

    try:
        config = RunConfig.model_validate(document)
    except ValidationError as e:
        raise ConfigError(f"invalid configuration: {e.errors()[0]['loc']} {e.errors()[0]['msg']}") from e
    validate_geometry(config.geometry)
    if not config.cutoff > 0:
        raise ConfigError(f"cutoff must be positive, got {config.cutoff}")
    return config


# ============================================================================
# Flag value parsers
# ============================================================================

def parse_floats(text: str) -> list[float]:
    """'1,1.5' -> [1.0, 1.5]"""
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from e


def parse_intervals(text: str) -> list[list[float]]:
    """'0:1,1.1:2.1' -> [[0, 1], [1.1, 2.1]]"""
    intervals = []
    for part in text.split(","):
        try:
            a, b = part.split(":")
            intervals.append([float(a), float(b)])
        except ValueError as e:
            raise argparse.ArgumentTypeError(f"expected a:b pairs, got {part!r}") from e
    return intervals


def regions_from(command: dict[str, Any], default_gap: float = 0.1) -> IntervalSet:
    """Intervals from 'intervals', or from 'lengths' and 'gap', or one 'length'"""
    if command.get("intervals"):
        return IntervalSet(tuple(tuple(i) for i in command["intervals"]))
    if command.get("lengths"):
        gap = command.get("gap")
        return IntervalSet.from_lengths(command["lengths"], default_gap if gap is None else gap)
    if command.get("length") is not None:
        return IntervalSet.of((0.0, command["length"]))
    raise ConfigError("no region given: pass --intervals, --lengths or --length")

"""
holoscope - holographic entanglement measures from the command line
"""
import argparse
import sys
from pathlib import Path
from typing import Optional

from cli.commands import entropy, figures, i3, mi, negativity, scan, transition
from cli.config import RunConfig, resolve_config
from cli.emit import emit_series
from cli.middleware.logging import CommandLoggingMiddleware
from lib.errors import HoloscopeError
from lib.geometry import GeometryKind
from lib.logging import logger
from lib.result_cache import result_cache

COMMANDS = {module.NAME: module for module in (entropy, mi, negativity, i3, scan, transition, figures)}


def common_flags() -> argparse.ArgumentParser:
    """Flags every subcommand accepts; None means 'not given'"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="JSON run configuration")
    common.add_argument("--geometry", choices=[k.value for k in GeometryKind])
    common.add_argument("--d", type=int, help="Boundary spacetime dimension")
    common.add_argument("--L", type=float, help="AdS radius")
    common.add_argument("--z-h", type=float, help="Horizon depth (black_brane)")
    common.add_argument("--z-w", type=float, help="Wall depth (hard_wall)")
    common.add_argument("--four-g-n", type=float, help="4 G_N; entropy = area / four_G_N")
    common.add_argument("--eps", type=float, help="UV cutoff")
    common.add_argument("--nodes", type=int, help="Base Gauss-Legendre node count")
    common.add_argument("--out", type=Path, help="Output file (directory for figures)")
    common.add_argument("--format", choices=["csv", "json"])
    common.add_argument("--cache", type=Path, help="Result cache file")
    common.add_argument("--no-cache", action="store_true", help="Disable the result cache")
    common.add_argument("--seed", type=int, help="Seed recorded in output metadata")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="holoscope",
        description="Holographic entanglement entropy, mutual information and RG-flow sweeps",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    parents = [common_flags()]
    for module in COMMANDS.values():
        module.add_parser(subparsers, parents)
    return parser


def _open_cache(config: RunConfig) -> None:
    if config.cache.enabled:
        result_cache.open(config.cache.path)


def _execute(args: argparse.Namespace) -> int:
    module = COMMANDS[args.command]
    try:
        config = resolve_config(args, module.FIELDS)
        _open_cache(config)
        outcome = module.run(config)
        if outcome.records is not None and config.output.path is not None:
            metadata = {"config": config.echo(), "command": args.command, **outcome.metadata}
            emit_series(outcome.records, config.output.format, config.output.path, metadata)
    except HoloscopeError as e:
        logger.logger.error(f"{type(e).__name__}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    finally:
        result_cache.close()

    print(outcome.summary)
    return 0


def run_command(argv: Optional[list[str]] = None) -> int:
    """Parse argv, run one subcommand, return the process exit code"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors and 0 for --help
        return int(e.code or 0)
    return CommandLoggingMiddleware().dispatch(args.command, lambda: _execute(args))


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()

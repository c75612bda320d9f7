"""
Prometheus metrics for holoscope
Following standard naming conventions: https://prometheus.io/docs/practices/naming/
"""
from pathlib import Path

from prometheus_client import REGISTRY, Counter, Histogram, write_to_textfile

# ============================================================================
# Minimal surface engine
# ============================================================================

# Strip solves by geometry kind and winning branch
strip_solves_total = Counter(
    'holoscope_strip_solves_total',
    'Total RT strip solves',
    ['kind', 'branch']  # branch: connected_u, wall_disconnected
)

# Gauss-Legendre node doublings needed to meet rel_tol
quadrature_refinements_total = Counter(
    'holoscope_quadrature_refinements_total',
    'Total Gauss-Legendre node doublings beyond the base node count'
)

# Two-point geodesic shootings
geodesic_shootings_total = Counter(
    'holoscope_geodesic_shootings_total',
    'Total geodesic shooting solves',
    ['branch']  # branch: radial, monotone, turning
)

# ============================================================================
# Result cache
# ============================================================================

result_cache_hits_total = Counter(
    'holoscope_result_cache_hits_total',
    'Total result cache hits'
)

result_cache_misses_total = Counter(
    'holoscope_result_cache_misses_total',
    'Total result cache misses'
)

# ============================================================================
# Sweeps & commands
# ============================================================================

scan_points_total = Counter(
    'holoscope_scan_points_total',
    'Total sweep points evaluated',
    ['status']  # status: ok, error
)

command_duration_seconds = Histogram(
    'holoscope_command_duration_seconds',
    'CLI command duration in seconds',
    ['command'],
    buckets=[0.01, 0.05, 0.1, 0.25, 0.5, 1.0, 2.5, 5.0, 10.0, 30.0, 60.0, 300.0]
)


def write_metrics(path: Path) -> None:
    """Dump the default registry in the Prometheus text format"""
    path.parent.mkdir(parents=True, exist_ok=True)
    write_to_textfile(str(path), REGISTRY)

"""
Minimal surface engine - RT strips, regularized areas, bulk geodesics

Every turning-point integral is taken in theta with z = z_star * sin(theta),
which turns the 1/sqrt(z_star - z) endpoint singularity into a bounded
integrand, then Gauss-Legendre with node doubling until rel_tol is met.
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Callable, Literal, Optional

import numpy as np
from numpy.polynomial.legendre import leggauss
from pydantic import BaseModel, Field, model_validator
from scipy.optimize import brentq, minimize

from lib.errors import DomainError, NumericsError
from lib.geometry import (
    BulkGeometry,
    GeometryKind,
    UnitsConvention,
    blackening_array,
    horizon_depth,
    validate_geometry,
)
from lib.prometheus_metrics import (
    geodesic_shootings_total,
    quadrature_refinements_total,
    strip_solves_total,
)
from lib.result_cache import make_key, result_cache

logger = logging.getLogger(__name__)

HALF_PI = 0.5 * math.pi

# Upper bracket ends tried when inverting l(z_star) next to a horizon
HORIZON_OFFSETS = (1e-6, 1e-8, 1e-10, 1e-12, 1e-14)

# Curve parameters stay off the anchoring boundary points
CURVE_PARAM_MIN = 1e-6
CURVE_PARAM_MAX = 1.0 - 1e-6

# Nelder-Mead restarts per curve pair
MAX_REFINE_ROUNDS = 8

# Refined curve distances below this count as touching
INTERSECTION_DISTANCE = 1e-6

Point = tuple[float, float]


class Branch(str, Enum):
    CONNECTED_U = "connected_u"
    WALL_DISCONNECTED = "wall_disconnected"


class QuadratureSpec(BaseModel):
    """Gauss-Legendre settings shared by every integral"""

    node_count: int = Field(default=256, ge=16)
    substitution: Literal["trig_endpoint"] = "trig_endpoint"
    rel_tol: float = Field(default=1e-9, gt=0)
    max_node_count: int = Field(default=65536, ge=32)

    model_config = {"frozen": True}

    @model_validator(mode="after")
    def check_doubling_room(self) -> "QuadratureSpec":
        if self.node_count > self.max_node_count // 2:
            raise ValueError(
                f"node_count={self.node_count} leaves no room to double below max_node_count={self.max_node_count}"
            )
        return self


DEFAULT_QUADRATURE = QuadratureSpec()


@dataclass(frozen=True)
class TurningPointSolution:
    """One minimal-surface branch for a strip of given width"""

    z_star: float
    width: float
    area_reg: float
    cutoff: float
    branch: Branch


@dataclass(frozen=True)
class StripEntropy:
    solution: TurningPointSolution
    entropy: float


# ============================================================================
# Quadrature
# ============================================================================

@lru_cache(maxsize=32)
def _legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    nodes, weights = leggauss(n)
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return nodes, weights


def _gauss_legendre(func: Callable[[np.ndarray], np.ndarray], a: float, b: float,
                    n: int) -> tuple[float, float]:
    """Integral of func and of |func| on [a, b] with n nodes"""
    nodes, weights = _legendre(n)
    half = 0.5 * (b - a)
    values = func(half * nodes + 0.5 * (a + b))
    return half * float(weights @ values), half * float(weights @ np.abs(values))


def integrate(func: Callable[[np.ndarray], np.ndarray], a: float, b: float,
              quad: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """Gauss-Legendre, doubling nodes until two estimates agree to rel_tol"""
    if b == a:
        return 0.0
    n = quad.node_count
    previous, _ = _gauss_legendre(func, a, b, n)
    while 2 * n <= quad.max_node_count:
        n *= 2
        current, magnitude = _gauss_legendre(func, a, b, n)
        if not math.isfinite(current):
            raise NumericsError(f"non-finite integrand on [{a}, {b}]")
        if abs(current - previous) <= quad.rel_tol * magnitude:
            return current
        quadrature_refinements_total.inc()
        previous = current
    raise NumericsError(
        f"quadrature on [{a}, {b}] not converged at {quad.max_node_count} nodes"
    )


# ============================================================================
# Strip integrals
# ============================================================================

def _turning_point_samples(geom: BulkGeometry, z_top: float, theta: np.ndarray):
    """u = sin(theta), cos(theta), f(z_top*u) and 1 - f, cancellation-free near u = 1"""
    u = np.sin(theta)
    c = np.cos(theta)
    if geom.kind is GeometryKind.BLACK_BRANE and z_top < geom.z_h:
        d = geom.d
        log_a = math.log(z_top / geom.z_h)
        a_d = math.exp(d * log_a)
        one_minus_u = c * c / (1.0 + u)
        one_minus_ud = one_minus_u * sum(u**k for k in range(d))
        f = -math.expm1(d * log_a) + a_d * one_minus_ud
        return u, c, f, a_d * u**d
    f = blackening_array(geom, z_top * u)
    return u, c, f, 1.0 - f


def _even_power_sum(u: np.ndarray, n: int) -> np.ndarray:
    """(1 - u^(2n)) / (1 - u^2)"""
    return sum(u ** (2 * k) for k in range(n))


def _check_turning_point(geom: BulkGeometry, z_star: float) -> None:
    if not z_star > 0:
        raise DomainError(f"turning point must be positive, got z_star={z_star}")
    if geom.kind is GeometryKind.BLACK_BRANE and not z_star < geom.z_h:
        raise DomainError(f"turning point z_star={z_star} at or beyond horizon z_h={geom.z_h}")
    if geom.kind is GeometryKind.HARD_WALL and z_star > geom.z_w:
        raise DomainError(f"turning point z_star={z_star} beyond wall z_w={geom.z_w}")
    if geom.kind is GeometryKind.TABULATED:
        z_last = geom.max_depth
        if z_star > z_last or (horizon_depth(geom) is not None and z_star >= z_last):
            raise DomainError(f"turning point z_star={z_star} outside profile (z < {z_last})")


def _half_width(geom: BulkGeometry, z_star: float, theta_from: float,
                quad: QuadratureSpec) -> float:
    """x-extent of the surface between depth z_star*sin(theta_from) and the tip"""
    n = geom.d - 1

    def integrand(theta):
        u, _, f, _ = _turning_point_samples(geom, z_star, theta)
        return u**n / (np.sqrt(f) * np.sqrt(_even_power_sum(u, n)))

    return z_star * integrate(integrand, theta_from, HALF_PI, quad)


def width_of_turning_point(geom: BulkGeometry, z_star: float,
                           quad: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """l(z_star) = 2 int_0^z_star (z/z*)^(d-1) / (sqrt(f) sqrt(1 - (z/z*)^(2(d-1)))) dz"""
    _check_turning_point(geom, z_star)
    return 2.0 * _half_width(geom, z_star, 0.0, quad)


def _divergent_part(eps: float, z_star: float, n: int) -> float:
    """int_eps^z_star z^(-n) dz"""
    if n == 1:
        return math.log(z_star / eps)
    return (eps ** (1 - n) - z_star ** (1 - n)) / (n - 1)


def regularized_strip_area(geom: BulkGeometry, z_star: float, eps: float,
                           quad: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """Connected-branch area at cutoff eps, per unit transverse volume"""
    _check_turning_point(geom, z_star)
    if not 0 < eps < z_star:
        raise DomainError(f"cutoff must satisfy 0 < eps < z_star, got eps={eps}, z_star={z_star}")
    n = geom.d - 1

    # integrand minus its z^(-n) boundary divergence, split so no term cancels
    def integrand(theta):
        u, c, f, one_minus_f = _turning_point_samples(geom, z_star, theta)
        sqrt_f = np.sqrt(f)
        sqrt_p = np.sqrt(_even_power_sum(u, n))
        u_n = u**n
        return (one_minus_f / (u_n * sqrt_f * (1.0 + sqrt_f) * sqrt_p)
                + u_n / (sqrt_p * (1.0 + c * sqrt_p)))

    finite = integrate(integrand, 0.0, HALF_PI, quad)
    return 2.0 * geom.L**n * (z_star ** (1 - n) * finite + _divergent_part(eps, z_star, n))


def _wall_area(geom: BulkGeometry, eps: float) -> float:
    """Two vertical sheets from the cutoff down to the wall (f = 1 there)"""
    n = geom.d - 1
    return 2.0 * geom.L**n * _divergent_part(eps, geom.z_w, n)


def _invert_bracketed(geom: BulkGeometry, ell: float, lo: float, hi: float,
                      quad: QuadratureSpec) -> float:
    try:
        z_star, info = brentq(
            lambda z: width_of_turning_point(geom, z, quad) - ell,
            lo, hi, xtol=1e-300, maxiter=200, full_output=True,
        )
    except (RuntimeError, ValueError) as e:
        raise NumericsError(f"turning point inversion failed for width={ell}: {e}") from e
    if not info.converged:
        raise NumericsError(f"turning point inversion did not converge for width={ell}")
    return z_star


def connected_turning_points(geom: BulkGeometry, ell: float, lo: float,
                             quad: QuadratureSpec = DEFAULT_QUADRATURE) -> list[float]:
    """All z_star >= lo on the connected branch with l(z_star) = ell"""
    if width_of_turning_point(geom, lo, quad) >= ell:
        raise DomainError(f"width {ell} is too small for cutoff reach at z={lo}")

    if geom.kind is GeometryKind.HARD_WALL:
        if width_of_turning_point(geom, geom.z_w, quad) < ell:
            return []
        return [_invert_bracketed(geom, ell, lo, geom.z_w, quad)]

    if geom.kind is GeometryKind.BLACK_BRANE:
        for offset in HORIZON_OFFSETS:
            hi = geom.z_h * (1.0 - offset)
            if hi > lo and width_of_turning_point(geom, hi, quad) >= ell:
                return [_invert_bracketed(geom, ell, lo, hi, quad)]
        raise NumericsError(f"no bracket for width={ell} below the horizon z_h={geom.z_h}")

    if geom.kind is GeometryKind.TABULATED:
        return _tabulated_turning_points(geom, ell, lo, quad)

    hi = 10.0 * ell
    while width_of_turning_point(geom, hi, quad) < ell:
        hi *= 10.0
        if hi > 1e8 * ell:
            raise NumericsError(f"no bracket for width={ell}")
    return [_invert_bracketed(geom, ell, lo, hi, quad)]


def _tabulated_turning_points(geom: BulkGeometry, ell: float, lo: float,
                              quad: QuadratureSpec) -> list[float]:
    """Sign-change scan: l(z_star) need not be monotone for a tabulated f"""
    top = geom.max_depth
    if horizon_depth(geom) is not None:
        top *= 1.0 - 1e-9
    grid = np.geomspace(lo, top, 64)
    excess = np.array([width_of_turning_point(geom, z, quad) - ell for z in grid])
    roots = [
        _invert_bracketed(geom, ell, grid[i], grid[i + 1], quad)
        for i in range(len(grid) - 1)
        if excess[i] == 0 or excess[i] * excess[i + 1] < 0
    ]
    if excess[-1] == 0:
        roots.append(float(grid[-1]))
    if not roots and horizon_depth(geom) is not None:
        raise NumericsError(f"no bracket for width={ell} in tabulated geometry")
    return roots


def _solve_strip(geom: BulkGeometry, ell: float, eps: float,
                 quad: QuadratureSpec) -> TurningPointSolution:
    candidates = [
        TurningPointSolution(
            z_star=z_star,
            width=ell,
            area_reg=regularized_strip_area(geom, z_star, eps, quad),
            cutoff=eps,
            branch=Branch.CONNECTED_U,
        )
        for z_star in connected_turning_points(geom, ell, eps, quad)
    ]
    if geom.kind is GeometryKind.HARD_WALL and eps < geom.z_w:
        candidates.append(TurningPointSolution(
            z_star=geom.z_w,
            width=ell,
            area_reg=_wall_area(geom, eps),
            cutoff=eps,
            branch=Branch.WALL_DISCONNECTED,
        ))
    if not candidates:
        raise NumericsError(f"no minimal surface found for width={ell}")
    # min keeps the first of equal areas; connected candidates come first
    best = min(candidates, key=lambda s: s.area_reg)
    strip_solves_total.labels(kind=geom.kind.value, branch=best.branch.value).inc()
    logger.debug(
        f"strip width={ell} eps={eps} branch={best.branch.value} z_star={best.z_star}"
    )
    return best


def entropy_of_strip(geom: BulkGeometry, ell: float, eps: float,
                     quad: QuadratureSpec = DEFAULT_QUADRATURE,
                     units: UnitsConvention = UnitsConvention()) -> StripEntropy:
    """RT entropy of a strip of width ell: global minimum over branches"""
    validate_geometry(geom)
    if not ell > 0:
        raise DomainError(f"strip width must be positive, got {ell}")
    if not eps > 0:
        raise DomainError(f"cutoff must be positive, got {eps}")

    key = make_key(geom.geometry_id, "strip_area", {"width": ell}, eps, quad.model_dump())
    cached = result_cache.get(key)
    if cached is not None:
        solution = TurningPointSolution(
            z_star=cached["z_star"],
            width=cached["width"],
            area_reg=cached["area_reg"],
            cutoff=eps,
            branch=Branch(cached["branch"]),
        )
    else:
        solution = _solve_strip(geom, ell, eps, quad)
        result_cache.set(key, {
            "z_star": solution.z_star,
            "width": solution.width,
            "area_reg": solution.area_reg,
            "branch": solution.branch.value,
        })
    return StripEntropy(solution=solution, entropy=solution.area_reg / units.four_G_N)


# ============================================================================
# Bulk geodesics on the constant-t slice
# ============================================================================

def _is_locally_hyperbolic(geom: BulkGeometry) -> bool:
    """Slices with a closed-form distance"""
    if geom.kind in (GeometryKind.PURE_ADS, GeometryKind.HARD_WALL):
        return True
    return geom.kind is GeometryKind.BLACK_BRANE and geom.d == 2


def _closed_form_distance(geom: BulkGeometry, x1, z1, x2, z2) -> np.ndarray:
    """Vectorized geodesic length on a locally hyperbolic slice"""
    dx = np.asarray(x2, dtype=float) - np.asarray(x1, dtype=float)
    z1 = np.asarray(z1, dtype=float)
    z2 = np.asarray(z2, dtype=float)
    if geom.kind is GeometryKind.BLACK_BRANE:
        z_h = geom.z_h
        a = (z1 / z_h) ** 2
        b = (z2 / z_h) ** 2
        root = np.sqrt((1.0 - a) * (1.0 - b))
        bracket = 2.0 * np.sinh(0.5 * dx / z_h) ** 2 + (a + b - a * b) / (1.0 + root)
        cosh_d = z_h**2 / (z1 * z2) * bracket
        return geom.L * np.arccosh(np.maximum(cosh_d, 1.0))
    dz = z2 - z1
    return 2.0 * geom.L * np.arcsinh(np.sqrt(dx * dx + dz * dz) / (2.0 * np.sqrt(z1 * z2)))


def _check_point(geom: BulkGeometry, p: Point) -> None:
    x, z = p
    if not (math.isfinite(x) and z > 0):
        raise DomainError(f"point {p} is not inside the bulk")
    depth = geom.max_depth
    if horizon_depth(geom) is not None:
        if z >= depth:
            raise DomainError(f"point {p} is at or behind the horizon z_h={depth}")
    elif z > depth:
        raise DomainError(f"point {p} is outside the bulk (z <= {depth})")


def bulk_geodesic_distance(geom: BulkGeometry, p1: Point, p2: Point,
                           quad: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """Geodesic length between two bulk points on the constant-t slice"""
    validate_geometry(geom)
    _check_point(geom, p1)
    _check_point(geom, p2)
    if p1 == p2:
        return 0.0
    if _is_locally_hyperbolic(geom):
        return float(_closed_form_distance(geom, p1[0], p1[1], p2[0], p2[1]))
    return shoot_geodesic_distance(geom, p1, p2, quad)


def shoot_geodesic_distance(geom: BulkGeometry, p1: Point, p2: Point,
                            quad: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """Two-point problem solved on the first integral z'^2 = f (1/(p z)^2 - 1)

    p is the conserved momentum, 1/p the turning depth. The geodesic either
    runs monotonically in z between the points (p <= 1/z_max) or dips to 1/p.
    """
    validate_geometry(geom)
    _check_point(geom, p1)
    _check_point(geom, p2)
    if p1 == p2:
        return 0.0
    dx = abs(p2[0] - p1[0])
    z_lo, z_hi = sorted((p1[1], p2[1]))

    if dx == 0.0:
        geodesic_shootings_total.labels(branch="radial").inc()
        return _radial_length(geom, z_lo, z_hi, quad)

    def legs(z_top: float, theta_from: float, theta_to: float) -> tuple[float, float]:
        def x_integrand(theta):
            u, _, f, _ = _turning_point_samples(geom, z_top, theta)
            return u / np.sqrt(f)

        def s_integrand(theta):
            u, _, f, _ = _turning_point_samples(geom, z_top, theta)
            return 1.0 / (u * np.sqrt(f))

        return (z_top * integrate(x_integrand, theta_from, theta_to, quad),
                geom.L * integrate(s_integrand, theta_from, theta_to, quad))

    def monotone(p: float) -> tuple[float, float]:
        z_top = 1.0 / p
        return legs(z_top, math.asin(min(1.0, p * z_lo)), math.asin(min(1.0, p * z_hi)))

    def turning(p: float) -> tuple[float, float]:
        z_top = 1.0 / p
        x_lo, s_lo = legs(z_top, math.asin(min(1.0, p * z_lo)), HALF_PI)
        x_hi, s_hi = legs(z_top, math.asin(min(1.0, p * z_hi)), HALF_PI)
        return x_lo + x_hi, s_lo + s_hi

    p_star = 1.0 / z_hi
    x_star, _ = monotone(p_star)

    if dx <= x_star:
        p_min = 1e-12 * p_star
        if monotone(p_min)[0] >= dx:
            geodesic_shootings_total.labels(branch="radial").inc()
            return _radial_length(geom, z_lo, z_hi, quad)
        p = _shoot(lambda q: monotone(q)[0] - dx, p_min, p_star)
        geodesic_shootings_total.labels(branch="monotone").inc()
        return monotone(p)[1]

    p_lo = _deepest_momentum(geom, turning, dx, p_star)
    p = _shoot(lambda q: turning(q)[0] - dx, p_lo, p_star)
    geodesic_shootings_total.labels(branch="turning").inc()
    return turning(p)[1]


def _shoot(residual: Callable[[float], float], lo: float, hi: float) -> float:
    try:
        p, info = brentq(residual, lo, hi, xtol=1e-300, maxiter=200, full_output=True)
    except (RuntimeError, ValueError) as e:
        raise NumericsError(f"geodesic shooting failed: {e}") from e
    if not info.converged:
        raise NumericsError("geodesic shooting did not converge")
    return p


def _deepest_momentum(geom: BulkGeometry, turning, dx: float, p_star: float) -> float:
    """Smallest momentum whose turning geodesic spans at least dx"""
    depth = geom.max_depth
    if not math.isfinite(depth):
        p = p_star
        while turning(p)[0] < dx:
            p *= 0.1
            if p < 1e-8 * p_star:
                raise NumericsError(f"geodesic shooting cannot span dx={dx}")
        return p
    offsets = HORIZON_OFFSETS if horizon_depth(geom) is not None else (0.0,)
    for offset in offsets:
        p = 1.0 / (depth * (1.0 - offset))
        if p < p_star and turning(p)[0] >= dx:
            return p
    raise NumericsError(f"geodesic shooting cannot span dx={dx} above z={depth}")


def _radial_length(geom: BulkGeometry, z_lo: float, z_hi: float,
                   quad: QuadratureSpec) -> float:
    """L int dz / (z sqrt(f)) along x = const, integrated in log z"""
    def integrand(s):
        return 1.0 / np.sqrt(blackening_array(geom, np.exp(s)))

    return geom.L * integrate(integrand, math.log(z_lo), math.log(z_hi), quad)


# ============================================================================
# Bulk curves
# ============================================================================

@dataclass(frozen=True)
class BulkCurve:
    """Curve s -> (x, z) for s in (0, 1), sampled uniformly for coarse scans"""

    point: Callable[[float], Point]
    samples: int = 64
    label: str = ""

    def sample(self) -> np.ndarray:
        params = (np.arange(self.samples) + 0.5) / self.samples
        return np.array([self.point(float(s)) for s in params])


def semicircle_curve(center: float, radius: float, samples: int = 64) -> BulkCurve:
    """Hyperbolic geodesic anchored at center +- radius"""
    if not radius > 0:
        raise DomainError(f"radius must be positive, got {radius}")

    def point(s: float) -> Point:
        angle = math.pi * s
        return center - radius * math.cos(angle), radius * math.sin(angle)

    return BulkCurve(point=point, samples=samples, label=f"semicircle({center},{radius})")


def wall_curve(a: float, b: float, z_w: float, samples: int = 64) -> BulkCurve:
    """Wall-branch surface: down x = a to the wall, along it, back up x = b"""
    def point(s: float) -> Point:
        if s < 1.0 / 3.0:
            return a, 3.0 * s * z_w
        if s <= 2.0 / 3.0:
            return a + (b - a) * (3.0 * s - 1.0), z_w
        return b, 3.0 * (1.0 - s) * z_w

    return BulkCurve(point=point, samples=samples, label=f"wall({a},{b})")


def btz_geodesic_curve(z_h: float, a: float, b: float, samples: int = 64) -> BulkCurve:
    """Closed-form RT geodesic of the planar BTZ brane, parametrized by x

    z(x) = z_h sqrt(1 - cosh^2(y) / cosh^2(Y)), y = (x - center) / z_h and
    Y = (b - a) / (2 z_h). x runs on Chebyshev spacing, dense near the anchors.
    """
    if not b > a:
        raise DomainError(f"anchor points must satisfy a < b, got ({a}, {b})")
    center, half = 0.5 * (a + b), 0.5 * (b - a)
    big_y = half / z_h

    def point(s: float) -> Point:
        folded = min(s, 1.0 - s)
        # Y - y and Y + y without cancellation at the anchors
        below = 2.0 * big_y * math.sin(0.5 * math.pi * folded) ** 2
        above = 2.0 * big_y - below
        z = z_h * math.sqrt(math.sinh(below) * math.sinh(above)) / math.cosh(big_y)
        return center - half * math.cos(math.pi * s), z

    return BulkCurve(point=point, samples=samples, label=f"btz({a},{b})")


def rt_geodesic_curve(geom: BulkGeometry, a: float, b: float, eps: float,
                      quad: QuadratureSpec = DEFAULT_QUADRATURE,
                      samples: int = 64) -> BulkCurve:
    """Bulk curve of the RT surface anchored at (a, b) in d = 2"""
    if geom.d != 2:
        raise DomainError(f"bulk curves are geodesics; need d = 2, got d={geom.d}")
    if not b > a:
        raise DomainError(f"anchor points must satisfy a < b, got ({a}, {b})")
    if geom.kind is GeometryKind.BLACK_BRANE:
        validate_geometry(geom)
        return btz_geodesic_curve(geom.z_h, a, b, samples)
    solution = entropy_of_strip(geom, b - a, eps, quad).solution
    if solution.branch is Branch.WALL_DISCONNECTED:
        return wall_curve(a, b, geom.z_w, samples)
    if geom.kind in (GeometryKind.PURE_ADS, GeometryKind.HARD_WALL):
        return semicircle_curve(0.5 * (a + b), 0.5 * (b - a), samples)

    center = 0.5 * (a + b)
    z_star = solution.z_star

    def point(s: float) -> Point:
        theta = math.pi * s
        folded = theta if theta <= HALF_PI else math.pi - theta
        offset = _half_width(geom, z_star, folded, quad)
        x = center - offset if theta <= HALF_PI else center + offset
        return x, z_star * math.sin(folded)

    return BulkCurve(point=point, samples=samples, label=f"rt({a},{b})")


def _pairwise_distances(geom: BulkGeometry, pts1: np.ndarray, pts2: np.ndarray,
                        quad: QuadratureSpec) -> np.ndarray:
    if _is_locally_hyperbolic(geom):
        return _closed_form_distance(
            geom, pts1[:, None, 0], pts1[:, None, 1], pts2[None, :, 0], pts2[None, :, 1]
        )
    return np.array([
        [bulk_geodesic_distance(geom, tuple(p), tuple(q), quad) for q in pts2]
        for p in pts1
    ])


def min_distance_between_curves(geom: BulkGeometry, curve1: BulkCurve, curve2: BulkCurve,
                                quad: QuadratureSpec = DEFAULT_QUADRATURE,
                                step_tol: float = 1e-12) -> float:
    """Coarse grid scan, then joint Nelder-Mead refinement of (s, t) over the whole square

    The simplex restarts from its best vertex at the coarse cell size until a
    restart stops improving the distance.
    """
    validate_geometry(geom)
    if curve1.samples < 64 or curve2.samples < 64:
        raise DomainError("curves must be sampled at >= 64 points")

    grid = _pairwise_distances(geom, curve1.sample(), curve2.sample(), quad)
    i, j = np.unravel_index(int(np.argmin(grid)), grid.shape)
    coarse = float(grid[i, j])
    if coarse < 1e-12:
        raise DomainError("curves intersect")

    def distance(v: np.ndarray) -> float:
        s_, t_ = np.clip(v, CURVE_PARAM_MIN, CURVE_PARAM_MAX)
        return bulk_geodesic_distance(geom, curve1.point(float(s_)), curve2.point(float(t_)), quad)

    bounds = [(CURVE_PARAM_MIN, CURVE_PARAM_MAX)] * 2
    best_x = np.array([(i + 0.5) / curve1.samples, (j + 0.5) / curve2.samples])
    best = coarse
    cell = np.array([1.0 / curve1.samples, 1.0 / curve2.samples])
    for _ in range(MAX_REFINE_ROUNDS):
        # vertices step towards the interior so the simplex never degenerates on a bound
        h = np.where(best_x + cell <= CURVE_PARAM_MAX, cell, -cell)
        simplex = np.array([best_x, best_x + [h[0], 0.0], best_x + [0.0, h[1]]])
        result = minimize(
            distance, best_x, method="Nelder-Mead", bounds=bounds,
            options={"initial_simplex": simplex, "xatol": step_tol, "fatol": 1e-15,
                     "maxiter": 4000, "adaptive": True},
        )
        improved = best - float(result.fun)
        if float(result.fun) < best:
            best, best_x = float(result.fun), np.asarray(result.x, dtype=float)
        if improved <= 1e-11 * max(best, 1.0):
            break

    if best < INTERSECTION_DISTANCE:
        raise DomainError("curves intersect")
    return best

"""
Bulk geometry - static planar asymptotically-AdS metrics

    ds^2 = (L^2 / z^2) (-f(z) dt^2 + dx_i^2 + dz^2 / f(z))

The boundary sits at z = 0 (UV); depth z grows toward the IR.
"""
import hashlib
import math
from enum import Enum
from functools import lru_cache
from typing import Optional

import numpy as np
from pydantic import BaseModel, Field
from scipy.interpolate import PchipInterpolator

from lib.errors import DomainError, NonAsymptoticallyAdS, NonMonotoneProfile, NonPositiveParameter

# |f - 1| allowed at the shallowest tabulated sample
ASYMPTOTIC_TOLERANCE = 1e-6


class GeometryKind(str, Enum):
    PURE_ADS = "pure_ads"
    BLACK_BRANE = "black_brane"
    HARD_WALL = "hard_wall"
    TABULATED = "tabulated"


class BulkGeometry(BaseModel):
    """One member of the metric family; immutable once built"""

    kind: GeometryKind = GeometryKind.PURE_ADS
    L: float = 1.0
    d: int = 2
    z_h: Optional[float] = None
    z_w: Optional[float] = None
    profile: Optional[tuple[tuple[float, float], ...]] = None

    model_config = {"frozen": True}

    @classmethod
    def pure_ads(cls, d: int = 2, L: float = 1.0) -> "BulkGeometry":
        return cls(kind=GeometryKind.PURE_ADS, d=d, L=L)

    @classmethod
    def black_brane(cls, z_h: float, d: int = 2, L: float = 1.0) -> "BulkGeometry":
        return cls(kind=GeometryKind.BLACK_BRANE, d=d, L=L, z_h=z_h)

    @classmethod
    def hard_wall(cls, z_w: float = 0.5, d: int = 2, L: float = 1.0) -> "BulkGeometry":
        return cls(kind=GeometryKind.HARD_WALL, d=d, L=L, z_w=z_w)

    @classmethod
    def tabulated(cls, profile, d: int = 2, L: float = 1.0) -> "BulkGeometry":
        samples = tuple((float(z), float(f)) for z, f in profile)
        return cls(kind=GeometryKind.TABULATED, d=d, L=L, profile=samples)

    @property
    def geometry_id(self) -> str:
        """Stable digest used in cache keys and output metadata"""
        canonical = self.model_dump_json(exclude_none=True)
        return hashlib.sha256(canonical.encode()).hexdigest()[:16]

    @property
    def max_depth(self) -> float:
        """Deepest z the geometry is defined at"""
        if self.kind is GeometryKind.BLACK_BRANE:
            return self.z_h
        if self.kind is GeometryKind.HARD_WALL:
            return self.z_w
        if self.kind is GeometryKind.TABULATED:
            return self.profile[-1][0]
        return math.inf


class UnitsConvention(BaseModel):
    """Entropy = area / four_G_N"""

    four_G_N: float = Field(default=1.0, gt=0)

    model_config = {"frozen": True}

    def central_charge(self, L: float = 1.0) -> float:
        """Brown-Henneaux c = 3L / (2 G_N), reported read-only"""
        return central_charge(self, L)


@lru_cache(maxsize=64)
def _profile_interpolator(profile: tuple[tuple[float, float], ...]) -> PchipInterpolator:
    z, f = np.asarray(profile, dtype=float).T
    return PchipInterpolator(z, f, extrapolate=False)


def validate_geometry(geom: BulkGeometry) -> None:
    """Raise the matching GeometryError unless every invariant holds"""
    if not geom.L > 0:
        raise NonPositiveParameter(f"AdS radius must be positive, got L={geom.L}")
    if geom.d < 2:
        raise NonPositiveParameter(f"boundary dimension must be >= 2, got d={geom.d}")

    if geom.kind is GeometryKind.BLACK_BRANE:
        if geom.z_h is None or not geom.z_h > 0:
            raise NonPositiveParameter(f"horizon depth must be positive, got z_h={geom.z_h}")
    elif geom.kind is GeometryKind.HARD_WALL:
        if geom.z_w is None or not geom.z_w > 0:
            raise NonPositiveParameter(f"wall depth must be positive, got z_w={geom.z_w}")
    elif geom.kind is GeometryKind.TABULATED:
        _validate_profile(geom.profile)


def _validate_profile(profile) -> None:
    if not profile or len(profile) < 2:
        raise NonMonotoneProfile("tabulated profile needs at least two samples")
    z = np.array([p[0] for p in profile], dtype=float)
    f = np.array([p[1] for p in profile], dtype=float)
    if z[0] < 0:
        raise NonPositiveParameter(f"profile depths must be non-negative, got z={z[0]}")
    if np.any(np.diff(z) <= 0):
        raise NonMonotoneProfile("profile depths must be strictly increasing")
    if abs(f[0] - 1.0) >= ASYMPTOTIC_TOLERANCE:
        raise NonAsymptoticallyAdS(
            f"f must approach 1 at the boundary, got f({z[0]})={f[0]}"
        )
    if np.any(f[:-1] <= 0):
        raise NonPositiveParameter("f must stay positive before the last sample")
    if f[-1] < 0:
        raise NonPositiveParameter("f must not be negative at the last sample")


def blackening_array(geom: BulkGeometry, z: np.ndarray) -> np.ndarray:
    """Vectorized f(z) for depths already known to be in the domain"""
    z = np.asarray(z, dtype=float)
    if geom.kind is GeometryKind.BLACK_BRANE:
        return 1.0 - (z / geom.z_h) ** geom.d
    if geom.kind is GeometryKind.TABULATED:
        # shallower than the first sample the metric is pure AdS
        z_first = geom.profile[0][0]
        interp = _profile_interpolator(geom.profile)
        values = interp(np.clip(z, z_first, geom.profile[-1][0]))
        return np.where(z < z_first, 1.0, values)
    return np.ones_like(z)


def blackening_factor(geom: BulkGeometry, z: float) -> float:
    """f(z), refusing depths outside the geometry"""
    if not z > 0:
        raise DomainError(f"depth must be positive, got z={z}")
    if z > geom.max_depth:
        raise DomainError(f"depth z={z} beyond the {geom.kind.value} domain (z <= {geom.max_depth})")
    return float(blackening_array(geom, np.array([z]))[0])


def horizon_depth(geom: BulkGeometry) -> Optional[float]:
    """z_h when the geometry has a horizon"""
    if geom.kind is GeometryKind.BLACK_BRANE:
        return geom.z_h
    if geom.kind is GeometryKind.TABULATED and geom.profile[-1][1] <= 0:
        return geom.profile[-1][0]
    return None


def energy_scale_of_depth(z: float) -> float:
    """UV/IR map mu = 1/z"""
    if not z > 0:
        raise DomainError(f"depth must be positive, got z={z} (the boundary is the UV limit)")
    return 1.0 / z


def central_charge(units: UnitsConvention, L: float = 1.0) -> float:
    g_newton = units.four_G_N / 4.0
    return 3.0 * L / (2.0 * g_newton)


def thermal_entropy_density(geom: BulkGeometry, units: UnitsConvention = UnitsConvention()) -> float:
    """Horizon area per unit transverse volume over 4 G_N; zero without a horizon"""
    z_h = horizon_depth(geom)
    if z_h is None:
        return 0.0
    return (geom.L / z_h) ** (geom.d - 1) / units.four_G_N

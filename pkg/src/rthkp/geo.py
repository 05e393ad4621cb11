"""WGS84 geometry and geodesy primitives.

All coordinates are decimal degrees (lon east, lat north) on a spherical
earth of radius 6,371,000 m. Containment and centroid math is planar in
lon/lat, which is adequate at city scale away from the poles and the
antimeridian.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

EARTH_RADIUS_M = 6_371_000.0

# Points within this planar distance (degrees) of a ring edge count as inside.
BOUNDARY_EPSILON_DEG = 1e-12

# Shoelace areas below this magnitude are treated as degenerate rings.
DEGENERATE_AREA = 1e-18


@dataclass(frozen=True)
class GeoPoint:
    """A WGS84 position; valid when lon in [-180, 180], lat in [-90, 90]."""

    lon: float
    lat: float


@dataclass(frozen=True)
class GeoPolygon:
    """A single explicitly-closed exterior ring (first vertex == last)."""

    exterior: tuple[GeoPoint, ...]

    @classmethod
    def from_coords(cls, coords) -> "GeoPolygon":
        """Build a ring from an iterable of (lon, lat) pairs."""
        return cls(tuple(GeoPoint(float(lon), float(lat)) for lon, lat in coords))


@dataclass(frozen=True)
class BBox:
    """Axis-aligned lon/lat box; antimeridian-crossing boxes are unsupported."""

    min_lon: float
    min_lat: float
    max_lon: float
    max_lat: float

    def intersects(self, other: "BBox") -> bool:
        """Closed-interval intersection: shared edges count."""
        return (
            self.min_lon <= other.max_lon
            and other.min_lon <= self.max_lon
            and self.min_lat <= other.max_lat
            and other.min_lat <= self.max_lat
        )

    def contains_point(self, p: GeoPoint) -> bool:
        return (
            self.min_lon <= p.lon <= self.max_lon
            and self.min_lat <= p.lat <= self.max_lat
        )

    def contains_bbox(self, other: "BBox") -> bool:
        return (
            self.min_lon <= other.min_lon
            and self.min_lat <= other.min_lat
            and other.max_lon <= self.max_lon
            and other.max_lat <= self.max_lat
        )


def haversine_distance(a: GeoPoint, b: GeoPoint) -> float:
    """Great-circle distance between two points in meters."""
    phi1 = math.radians(a.lat)
    phi2 = math.radians(b.lat)
    dphi = math.radians(b.lat - a.lat)
    dlam = math.radians(b.lon - a.lon)
    h = math.sin(dphi / 2.0) ** 2 + math.cos(phi1) * math.cos(phi2) * math.sin(dlam / 2.0) ** 2
    # h can exceed 1.0 by a few ulp near antipodal points
    return 2.0 * EARTH_RADIUS_M * math.asin(min(1.0, math.sqrt(h)))


def _on_segment(p: GeoPoint, a: GeoPoint, b: GeoPoint, eps: float) -> bool:
    """Planar point-to-segment distance test in degrees."""
    ax, ay = a.lon, a.lat
    bx, by = b.lon, b.lat
    px, py = p.lon, p.lat
    dx, dy = bx - ax, by - ay
    seg2 = dx * dx + dy * dy
    if seg2 == 0.0:
        return math.hypot(px - ax, py - ay) <= eps
    t = ((px - ax) * dx + (py - ay) * dy) / seg2
    t = max(0.0, min(1.0, t))
    return math.hypot(px - (ax + t * dx), py - (ay + t * dy)) <= eps


def point_in_polygon(p: GeoPoint, poly: GeoPolygon, eps: float = BOUNDARY_EPSILON_DEG) -> bool:
    """Even-odd ray-casting containment, boundary-inclusive within eps degrees."""
    ring = poly.exterior
    for i in range(len(ring) - 1):
        if _on_segment(p, ring[i], ring[i + 1], eps):
            return True
    inside = False
    x, y = p.lon, p.lat
    for i in range(len(ring) - 1):
        x1, y1 = ring[i].lon, ring[i].lat
        x2, y2 = ring[i + 1].lon, ring[i + 1].lat
        if (y1 > y) != (y2 > y):
            x_cross = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
            if x < x_cross:
                inside = not inside
    return inside


def geometry_bbox(marker: GeoPoint, boundary: GeoPolygon | None = None) -> BBox:
    """Smallest box containing the marker and every boundary vertex."""
    lons = [marker.lon]
    lats = [marker.lat]
    if boundary is not None:
        lons.extend(v.lon for v in boundary.exterior)
        lats.extend(v.lat for v in boundary.exterior)
    return BBox(min(lons), min(lats), max(lons), max(lats))


def polygon_centroid(poly: GeoPolygon) -> GeoPoint:
    """Shoelace area centroid of the exterior ring.

    Degenerate rings (area magnitude < 1e-18) fall back to the arithmetic
    mean of the vertices excluding the closing vertex, so sloppy but
    well-formed data never errors.
    """
    ring = poly.exterior
    area2 = 0.0  # twice the signed area
    cx = 0.0
    cy = 0.0
    for i in range(len(ring) - 1):
        x1, y1 = ring[i].lon, ring[i].lat
        x2, y2 = ring[i + 1].lon, ring[i + 1].lat
        cross = x1 * y2 - x2 * y1
        area2 += cross
        cx += (x1 + x2) * cross
        cy += (y1 + y2) * cross
    if abs(area2 / 2.0) < DEGENERATE_AREA:
        open_ring = ring[:-1]
        return GeoPoint(
            sum(v.lon for v in open_ring) / len(open_ring),
            sum(v.lat for v in open_ring) / len(open_ring),
        )
    return GeoPoint(cx / (3.0 * area2), cy / (3.0 * area2))


def _point_violations(p: GeoPoint, label: str) -> list[str]:
    out = []
    if not isinstance(p.lon, (int, float)) or not math.isfinite(p.lon):
        out.append(f"{label}: lon must be a finite number")
    elif not -180.0 <= p.lon <= 180.0:
        out.append(f"{label}: lon out of range ({p.lon!r})")
    if not isinstance(p.lat, (int, float)) or not math.isfinite(p.lat):
        out.append(f"{label}: lat must be a finite number")
    elif not -90.0 <= p.lat <= 90.0:
        out.append(f"{label}: lat out of range ({p.lat!r})")
    return out


def validate_geometry(marker: GeoPoint, boundary: GeoPolygon | None = None) -> list[str]:
    """Check all geometry invariants; returns every violation, [] when valid."""
    violations = _point_violations(marker, "marker")
    if boundary is not None:
        ring = boundary.exterior
        if len(ring) < 4:
            violations.append(f"boundary: ring must have at least 4 vertices including the closing vertex (got {len(ring)})")
        if len(ring) >= 2 and ring[0] != ring[-1]:
            violations.append("boundary: ring is not closed (first vertex must equal last)")
        elif len(ring) < 2:
            violations.append("boundary: ring is not closed (first vertex must equal last)")
        for i, vertex in enumerate(ring):
            violations.extend(_point_violations(vertex, f"boundary[{i}]"))
    return violations

"""Strict GeoJSON codec for the green-space store.

The store file and list API payloads share one format: an RFC 7946-subset
FeatureCollection. Each feature's geometry is a Point (the marker) or a
GeometryCollection of [Point, Polygon] when a boundary is present.
Properties form a closed schema; unknown members are dropped on parse.

Serialization is canonical so identical record sets always produce
identical bytes: features ascend by id, object keys are emitted in a fixed
order, and coordinates are rounded to at most 9 fractional digits.
"""

from __future__ import annotations

import json
import math
from datetime import datetime

from .geo import GeoPoint, GeoPolygon, validate_geometry
from .models import (
    EPOCH,
    SLUG_RE,
    Category,
    GreenSpace,
    content_violations,
    format_timestamp,
    parse_timestamp,
)


class GeoJsonError(ValueError):
    """Structured parse/serialize failure: reason plus offending feature index."""

    def __init__(self, reason: str, feature_index: int | None = None):
        self.reason = reason
        self.feature_index = feature_index
        prefix = f"feature {feature_index}: " if feature_index is not None else ""
        super().__init__(prefix + reason)


def _coord(value) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValueError
    out = float(value)
    if not math.isfinite(out):
        raise ValueError
    return out


def _position(raw, context: str) -> GeoPoint:
    if not isinstance(raw, list) or len(raw) != 2:
        raise GeoJsonError(f"{context}: position must be a [lon, lat] pair")
    try:
        return GeoPoint(_coord(raw[0]), _coord(raw[1]))
    except ValueError:
        raise GeoJsonError(f"{context}: coordinates must be finite numbers") from None


def _parse_point(geom: dict, context: str) -> GeoPoint:
    return _position(geom.get("coordinates"), context)


def _parse_polygon(geom: dict, context: str) -> GeoPolygon:
    rings = geom.get("coordinates")
    if not isinstance(rings, list) or len(rings) != 1:
        raise GeoJsonError(f"{context}: polygon must have exactly one ring (no holes)")
    if not isinstance(rings[0], list):
        raise GeoJsonError(f"{context}: polygon ring must be a list of positions")
    return GeoPolygon(
        tuple(_position(pos, f"{context} ring[{i}]") for i, pos in enumerate(rings[0]))
    )


def _parse_geometry(raw, context: str) -> tuple[GeoPoint, GeoPolygon | None]:
    if not isinstance(raw, dict):
        raise GeoJsonError(f"{context}: geometry must be an object")
    kind = raw.get("type")
    if kind == "Point":
        return _parse_point(raw, context), None
    if kind == "GeometryCollection":
        parts = raw.get("geometries")
        if (
            not isinstance(parts, list)
            or len(parts) != 2
            or not all(isinstance(p, dict) for p in parts)
            or parts[0].get("type") != "Point"
            or parts[1].get("type") != "Polygon"
        ):
            raise GeoJsonError(
                f"{context}: GeometryCollection must be exactly [Point, Polygon]"
            )
        return _parse_point(parts[0], context), _parse_polygon(parts[1], context)
    raise GeoJsonError(
        f"{context}: geometry type must be Point or GeometryCollection (got {kind!r})"
    )


def _required_string(props: dict, key: str) -> str:
    if key not in props:
        raise GeoJsonError(f"missing required property {key!r}")
    value = props[key]
    if not isinstance(value, str):
        raise GeoJsonError(f"property {key!r} must be a string")
    return value


def _optional_timestamp(props: dict, key: str) -> datetime:
    if key not in props:
        return EPOCH
    value = props[key]
    if not isinstance(value, str):
        raise GeoJsonError(f"property {key!r} must be a string timestamp")
    try:
        return parse_timestamp(value)
    except ValueError:
        raise GeoJsonError(
            f"property {key!r} must be an ISO 8601 UTC timestamp "
            f"(YYYY-MM-DDTHH:MM:SSZ, got {value!r})"
        ) from None


def _parse_feature(raw) -> GreenSpace:
    if not isinstance(raw, dict) or raw.get("type") != "Feature":
        raise GeoJsonError("not a Feature object")
    props = raw.get("properties")
    if not isinstance(props, dict):
        raise GeoJsonError("feature properties must be an object")

    space_id = _required_string(props, "id")
    if not SLUG_RE.match(space_id):
        raise GeoJsonError(f"invalid id {space_id!r} (must be a lowercase slug)")
    name = _required_string(props, "name")
    category = _required_string(props, "category")

    description = props.get("description", "")
    facilities = props.get("facilities", [])
    photos = props.get("photos", [])
    violations = content_violations(name, category, description, facilities, photos)
    if violations:
        raise GeoJsonError("; ".join(violations))

    marker, boundary = _parse_geometry(raw.get("geometry"), "geometry")
    geometry_faults = validate_geometry(marker, boundary)
    if geometry_faults:
        raise GeoJsonError("invalid geometry: " + "; ".join(geometry_faults))

    created_at = _optional_timestamp(props, "created_at")
    updated_at = _optional_timestamp(props, "updated_at")
    if updated_at < created_at:
        raise GeoJsonError("updated_at must not precede created_at")

    return GreenSpace(
        id=space_id,
        name=name,
        category=Category(category),
        marker=marker,
        boundary=boundary,
        description=description,
        facilities=tuple(facilities),
        photos=tuple(photos),
        created_at=created_at,
        updated_at=updated_at,
    )


def parse_feature_collection(text: str | bytes) -> list[GreenSpace]:
    """Parse a FeatureCollection document into validated records.

    Raises GeoJsonError at the first offending feature; never lets raw
    decoding errors escape, whatever the input bytes.
    """
    if isinstance(text, (bytes, bytearray)):
        try:
            text = bytes(text).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise GeoJsonError(f"document is not valid UTF-8: {exc}") from None
    try:
        doc = json.loads(text)
    except RecursionError:
        raise GeoJsonError("document nesting too deep") from None
    except ValueError as exc:
        raise GeoJsonError(f"malformed JSON: {exc}") from None

    if not isinstance(doc, dict) or doc.get("type") != "FeatureCollection":
        raise GeoJsonError("document must be a FeatureCollection object")
    features = doc.get("features")
    if not isinstance(features, list):
        raise GeoJsonError("FeatureCollection must carry a 'features' list")

    spaces: list[GreenSpace] = []
    seen: set[str] = set()
    for i, raw in enumerate(features):
        try:
            space = _parse_feature(raw)
        except GeoJsonError as exc:
            raise GeoJsonError(exc.reason, feature_index=i) from None
        if space.id in seen:
            raise GeoJsonError(f"duplicate id {space.id!r}", feature_index=i)
        seen.add(space.id)
        spaces.append(space)
    return spaces


COORD_DECIMALS = 9


def round_coord(value: float) -> float:
    """Clamp a coordinate to persisted precision (<= 9 fractional digits)."""
    # float() so ints and floats serialize identically
    return round(float(value), COORD_DECIMALS)


def canonical_marker(p: GeoPoint) -> GeoPoint:
    return GeoPoint(round_coord(p.lon), round_coord(p.lat))


def canonical_boundary(poly: GeoPolygon | None) -> GeoPolygon | None:
    if poly is None:
        return None
    return GeoPolygon(tuple(canonical_marker(v) for v in poly.exterior))


def _position_obj(p: GeoPoint) -> list[float]:
    return [round_coord(p.lon), round_coord(p.lat)]


def _geometry_obj(space: GreenSpace) -> dict:
    point = {"type": "Point", "coordinates": _position_obj(space.marker)}
    if space.boundary is None:
        return point
    ring = [_position_obj(v) for v in space.boundary.exterior]
    return {
        "type": "GeometryCollection",
        "geometries": [point, {"type": "Polygon", "coordinates": [ring]}],
    }


def feature_obj(space: GreenSpace) -> dict:
    """The canonical Feature mapping for one record (fixed key order)."""
    return {
        "type": "Feature",
        "geometry": _geometry_obj(space),
        "properties": {
            "id": space.id,
            "name": space.name,
            "category": space.category.value,
            "description": space.description,
            "facilities": list(space.facilities),
            "photos": list(space.photos),
            "created_at": format_timestamp(space.created_at),
            "updated_at": format_timestamp(space.updated_at),
        },
    }


def serialize_feature(space: GreenSpace) -> str:
    """One Feature as a canonical JSON document (API single-record payload)."""
    return json.dumps(feature_obj(space), ensure_ascii=False, indent=2) + "\n"


def serialize_feature_collection(spaces) -> str:
    """Canonical FeatureCollection document; byte-stable for equal inputs."""
    ordered = sorted(spaces, key=lambda s: s.id)
    seen: set[str] = set()
    for space in ordered:
        if space.id in seen:
            raise GeoJsonError(f"duplicate id {space.id!r}")
        seen.add(space.id)
    doc = {
        "type": "FeatureCollection",
        "features": [feature_obj(space) for space in ordered],
    }
    return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"

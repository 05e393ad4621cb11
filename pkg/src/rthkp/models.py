"""Domain model for green open space records."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from datetime import datetime, timezone

from .geo import GeoPoint, GeoPolygon, validate_geometry


class Category(str, enum.Enum):
    CITY_PARK = "taman_kota"
    NATURE_TOURISM_PARK = "taman_wisata_alam"


CATEGORY_VALUES = tuple(c.value for c in Category)

SLUG_RE = re.compile(r"^[a-z0-9]+(-[a-z0-9]+)*$")

EPOCH = datetime(1970, 1, 1, tzinfo=timezone.utc)


@dataclass(frozen=True)
class GreenSpace:
    """One park record: identity, category, geometry, descriptive content."""

    id: str
    name: str
    category: Category
    marker: GeoPoint
    boundary: GeoPolygon | None
    description: str
    facilities: tuple[str, ...]
    photos: tuple[str, ...]
    created_at: datetime
    updated_at: datetime


@dataclass(frozen=True)
class SpaceDraft:
    """A record as submitted by an admin, before id and timestamps exist."""

    name: str
    category: Category | str
    marker: GeoPoint
    boundary: GeoPolygon | None = None
    description: str = ""
    facilities: tuple[str, ...] = ()
    photos: tuple[str, ...] = ()


def format_timestamp(dt: datetime) -> str:
    """ISO 8601 UTC, seconds precision, Z suffix."""
    dt = dt.astimezone(timezone.utc)
    return (
        f"{dt.year:04d}-{dt.month:02d}-{dt.day:02d}"
        f"T{dt.hour:02d}:{dt.minute:02d}:{dt.second:02d}Z"
    )


def parse_timestamp(text: str) -> datetime:
    """Strict inverse of format_timestamp; raises ValueError otherwise."""
    return datetime.strptime(text, "%Y-%m-%dT%H:%M:%SZ").replace(tzinfo=timezone.utc)


def _is_clean_relative_path(path: str) -> bool:
    if path == "" or path.startswith("/") or "\\" in path:
        return False
    return all(seg not in ("", ".", "..") for seg in path.split("/"))


def _utf8_clean(text: str) -> bool:
    # JSON escapes can smuggle lone surrogates that UTF-8 cannot encode
    try:
        text.encode("utf-8")
    except UnicodeEncodeError:
        return False
    return True


def content_violations(
    name: str,
    category,
    description: str,
    facilities,
    photos,
) -> list[str]:
    """Field-level checks shared by the parser and the registry."""
    out: list[str] = []
    if not isinstance(name, str) or not name.strip():
        out.append("name must be a non-empty string")
    elif not _utf8_clean(name):
        out.append("name must be valid UTF-8 text")
    if not isinstance(category, str) or category not in CATEGORY_VALUES:
        out.append(
            f"category must be one of {', '.join(CATEGORY_VALUES)} (got {category!r})"
        )
    if not isinstance(description, str):
        out.append("description must be a string")
    elif not _utf8_clean(description):
        out.append("description must be valid UTF-8 text")
    for label, seq in (("facilities", facilities), ("photos", photos)):
        if not isinstance(seq, (list, tuple)):
            out.append(f"{label} must be a list of strings")
            continue
        for i, item in enumerate(seq):
            if not isinstance(item, str):
                out.append(f"{label}[{i}] must be a string")
            elif not _utf8_clean(item):
                out.append(f"{label}[{i}] must be valid UTF-8 text")
            elif label == "photos" and not _is_clean_relative_path(item):
                out.append(f"photos[{i}] must be a clean relative path (got {item!r})")
    return out


def draft_violations(draft: SpaceDraft) -> list[str]:
    """All invariant violations of a draft; empty means acceptable."""
    out = content_violations(
        draft.name, draft.category, draft.description, draft.facilities, draft.photos
    )
    out.extend(validate_geometry(draft.marker, draft.boundary))
    return out

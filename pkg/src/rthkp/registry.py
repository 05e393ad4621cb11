"""Persistent store of green-space records.

The store keeps its whole state in one immutable snapshot (records map,
spatial index, revision counter). Readers grab the current snapshot and
work on it without locking; writers serialize behind a single lock and
publish a new snapshot only after the dataset file has been atomically
replaced on disk. A failed write therefore leaves both the file and the
in-memory state untouched.
"""

from __future__ import annotations

import os
import re
import tempfile
import threading
import unicodedata
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable, Iterable, Optional, Union

from .geo import BBox, GeoPoint, GeoPolygon, geometry_bbox
from .geojson import (
    canonical_boundary,
    canonical_marker,
    parse_feature_collection,
    serialize_feature_collection,
)
from .models import Category, GreenSpace, SpaceDraft, draft_violations
from .seeds import SEED_DRAFTS
from .spatial import IndexEntry, SpatialIndex, build_index


class RegistryError(Exception):
    """Base class for store failures."""


class ValidationError(RegistryError, ValueError):
    """A draft or patch broke record invariants."""

    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = list(violations)


class UnknownSpaceError(RegistryError, KeyError):
    def __init__(self, space_id: str):
        super().__init__(space_id)
        self.space_id = space_id

    def __str__(self) -> str:  # KeyError would repr() the id
        return f"no space with id {self.space_id!r}"


class SeedConflictError(RegistryError):
    """Seeding refused because the store already holds records."""


def utc_now() -> datetime:
    return datetime.now(timezone.utc).replace(microsecond=0)


def slugify(name: str) -> str:
    """Lowercase ASCII id: NFKD fold, drop non-ASCII, hyphenate runs."""
    folded = unicodedata.normalize("NFKD", name).encode("ascii", "ignore").decode("ascii")
    return re.sub(r"[^a-z0-9]+", "-", folded.lower()).strip("-")


def _atomic_write(path: Path, data: bytes) -> None:
    # Same-directory temp file so os.replace is a rename, never a copy.
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise
    try:  # make the rename itself durable
        dir_fd = os.open(path.parent, os.O_RDONLY)
        try:
            os.fsync(dir_fd)
        finally:
            os.close(dir_fd)
    except OSError:
        pass


def _index_entry(space: GreenSpace) -> IndexEntry:
    return IndexEntry(space.id, space.marker, geometry_bbox(space.marker, space.boundary))


@dataclass(frozen=True)
class _Snapshot:
    records: dict[str, GreenSpace]  # never mutated after publication
    index: SpatialIndex
    revision: int


_PATCHABLE = ("name", "category", "marker", "boundary", "description", "facilities", "photos")


class Store:
    """Green-space collection bound to one dataset file."""

    def __init__(
        self,
        path: Union[str, Path],
        records: Optional[dict[str, GreenSpace]] = None,
        clock: Callable[[], datetime] = utc_now,
    ):
        self._path = Path(path)
        self._clock = clock
        self._write_lock = threading.Lock()
        records = dict(records or {})
        self._snapshot = _Snapshot(records, build_index(map(_index_entry, records.values())), 0)

    @property
    def path(self) -> Path:
        return self._path

    @property
    def revision(self) -> int:
        return self._snapshot.revision

    def __len__(self) -> int:
        return len(self._snapshot.records)

    def __contains__(self, space_id: str) -> bool:
        return space_id in self._snapshot.records

    # -- reads ---------------------------------------------------------

    def get_space(self, space_id: str) -> GreenSpace:
        try:
            return self._snapshot.records[space_id]
        except KeyError:
            raise UnknownSpaceError(space_id) from None

    def list_spaces(
        self,
        category: Union[Category, str, None] = None,
        bbox: Optional[BBox] = None,
    ) -> list[GreenSpace]:
        """Records ascending by id; filters compose as AND."""
        snap = self._snapshot
        ids = snap.index.query_bbox(bbox) if bbox is not None else sorted(snap.records)
        spaces = [snap.records[i] for i in ids]
        if category is not None:
            spaces = [s for s in spaces if s.category == category]
        return spaces

    def nearest(self, origin: GeoPoint, k: int) -> list[tuple[GreenSpace, float]]:
        snap = self._snapshot
        return [(snap.records[i], d) for i, d in snap.index.k_nearest(origin, k)]

    # -- writes --------------------------------------------------------

    def create_space(self, draft: SpaceDraft) -> GreenSpace:
        with self._write_lock:
            violations = draft_violations(draft)
            if violations:
                raise ValidationError(violations)
            snap = self._snapshot
            space = self._materialize(draft, self._free_id(slugify(draft.name), snap.records))
            records = dict(snap.records)
            records[space.id] = space
            self._commit(records)
            return space

    def update_space(self, space_id: str, patch: dict) -> GreenSpace:
        """Apply a partial patch; `boundary: None` clears the boundary."""
        with self._write_lock:
            snap = self._snapshot
            current = snap.records.get(space_id)
            if current is None:
                raise UnknownSpaceError(space_id)
            unknown = [k for k in patch if k not in _PATCHABLE]
            if unknown:
                raise ValidationError([f"unknown field {k!r}" for k in sorted(unknown)])
            merged = SpaceDraft(
                name=patch.get("name", current.name),
                category=patch.get("category", current.category),
                marker=patch.get("marker", current.marker),
                boundary=patch.get("boundary", current.boundary),
                description=patch.get("description", current.description),
                facilities=tuple(patch.get("facilities", current.facilities)),
                photos=tuple(patch.get("photos", current.photos)),
            )
            violations = draft_violations(merged)
            if violations:
                raise ValidationError(violations)
            updated = self._materialize(merged, space_id, created_at=current.created_at)
            records = dict(snap.records)
            records[space_id] = updated
            self._commit(records)
            return updated

    def delete_space(self, space_id: str) -> None:
        with self._write_lock:
            snap = self._snapshot
            if space_id not in snap.records:
                raise UnknownSpaceError(space_id)
            records = dict(snap.records)
            del records[space_id]
            self._commit(records)

    def seed_default(self, force: bool = False) -> int:
        """Replace the dataset with the default inventory in one commit."""
        with self._write_lock:
            if self._snapshot.records and not force:
                raise SeedConflictError(
                    "store already holds records; use force to replace them"
                )
            now = self._truncate(self._clock())
            records: dict[str, GreenSpace] = {}
            for draft in SEED_DRAFTS:
                space = self._materialize(draft, slugify(draft.name), now=now)
                if space.id in records:
                    raise RegistryError(f"duplicate seed id {space.id!r}")
                records[space.id] = space
            self._commit(records)
            return len(records)

    # -- internals -----------------------------------------------------

    @staticmethod
    def _free_id(base: str, records: dict[str, GreenSpace]) -> str:
        if not base:
            raise ValidationError(["name yields an empty id"])
        # records can never hold a candidate forever: ids are finite
        space_id, n = base, 2
        while space_id in records:
            space_id = f"{base}-{n}"
            n += 1
        return space_id

    @staticmethod
    def _truncate(moment: datetime) -> datetime:
        if moment.tzinfo is None:
            moment = moment.replace(tzinfo=timezone.utc)
        return moment.astimezone(timezone.utc).replace(microsecond=0)

    def _materialize(
        self,
        draft: SpaceDraft,
        space_id: str,
        created_at: Optional[datetime] = None,
        now: Optional[datetime] = None,
    ) -> GreenSpace:
        if now is None:
            now = self._truncate(self._clock())
        created = created_at if created_at is not None else now
        return GreenSpace(
            id=space_id,
            name=draft.name.strip(),
            category=Category(draft.category),
            marker=canonical_marker(draft.marker),
            boundary=canonical_boundary(draft.boundary),
            description=draft.description,
            facilities=tuple(draft.facilities),
            photos=tuple(draft.photos),
            created_at=created,
            updated_at=max(now, created),  # clock may step backwards
        )

    def _commit(self, records: dict[str, GreenSpace]) -> None:
        # Serialize and rebuild the index before touching the file so a
        # failure at any stage leaves the published snapshot intact.
        text = serialize_feature_collection(records.values())
        index = build_index(map(_index_entry, records.values()))
        _atomic_write(self._path, text.encode("utf-8"))
        self._snapshot = _Snapshot(records, index, self._snapshot.revision + 1)

    def replace_all(self, spaces: Iterable[GreenSpace]) -> int:
        """Swap in a full record set verbatim (bulk import)."""
        with self._write_lock:
            records: dict[str, GreenSpace] = {}
            for space in spaces:
                if space.id in records:
                    raise ValidationError([f"duplicate id {space.id!r}"])
                records[space.id] = space
            self._commit(records)
            return len(records)

    def merge_all(self, spaces: Iterable[GreenSpace]) -> int:
        """Upsert records verbatim by id (bulk import)."""
        with self._write_lock:
            records = dict(self._snapshot.records)
            count = 0
            for space in spaces:
                records[space.id] = space
                count += 1
            self._commit(records)
            return count


def open_store(
    path: Union[str, Path],
    clock: Callable[[], datetime] = utc_now,
    create_parents: bool = True,
) -> Store:
    """Load the dataset file if it exists, else start empty."""
    path = Path(path)
    if create_parents:
        path.parent.mkdir(parents=True, exist_ok=True)
    if path.exists():
        spaces = parse_feature_collection(path.read_bytes())
        records = {s.id: s for s in spaces}
    else:
        records = {}
    return Store(path, records, clock=clock)

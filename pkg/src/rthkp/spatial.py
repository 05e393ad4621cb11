"""Bulk-loadable spatial index over green-space markers and bboxes.

An STR-packed R-tree (Sort-Tile-Recursive, fan-out <= 8). Index values are
immutable; mutations return a successor index built from the updated entry
set, which at registry scale (tens to low thousands of records) is cheap
and keeps query semantics trivially equal to a fresh bulk load.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

from .geo import EARTH_RADIUS_M, BBox, GeoPoint, haversine_distance

MAX_FANOUT = 8


class DuplicateEntryError(ValueError):
    pass


class MissingEntryError(KeyError):
    pass


@dataclass(frozen=True)
class IndexEntry:
    id: str
    marker: GeoPoint
    bbox: BBox


class _Node:
    __slots__ = ("bbox", "children", "entries")

    def __init__(self, bbox: BBox, children: list["_Node"] | None, entries: list[IndexEntry] | None):
        self.bbox = bbox
        self.children = children
        self.entries = entries

    @property
    def is_leaf(self) -> bool:
        return self.entries is not None


def _enclosing_bbox(boxes: list[BBox]) -> BBox:
    return BBox(
        min(b.min_lon for b in boxes),
        min(b.min_lat for b in boxes),
        max(b.max_lon for b in boxes),
        max(b.max_lat for b in boxes),
    )


def _center_lon(b: BBox) -> float:
    return (b.min_lon + b.max_lon) / 2.0


def _center_lat(b: BBox) -> float:
    return (b.min_lat + b.max_lat) / 2.0


def _str_pack(items: list, bbox_of, tiebreak) -> list[list]:
    """One STR packing pass: slice by center lon, tile by center lat."""
    n = len(items)
    group_count = math.ceil(n / MAX_FANOUT)
    slice_count = math.ceil(math.sqrt(group_count))
    per_slice = slice_count * MAX_FANOUT

    ordered = sorted(items, key=lambda it: (_center_lon(bbox_of(it)), tiebreak(it)))
    groups = []
    for s in range(0, n, per_slice):
        column = sorted(
            ordered[s : s + per_slice],
            key=lambda it: (_center_lat(bbox_of(it)), tiebreak(it)),
        )
        for g in range(0, len(column), MAX_FANOUT):
            groups.append(column[g : g + MAX_FANOUT])
    return groups


def _build_tree(entries: list[IndexEntry]) -> _Node | None:
    if not entries:
        return None
    leaves = [
        _Node(_enclosing_bbox([e.bbox for e in group]), None, group)
        for group in _str_pack(entries, lambda e: e.bbox, lambda e: e.id)
    ]
    level: list[_Node] = leaves
    seq = {id(node): i for i, node in enumerate(leaves)}
    while len(level) > 1:
        groups = _str_pack(level, lambda nd: nd.bbox, lambda nd: seq[id(nd)])
        level = [
            _Node(_enclosing_bbox([nd.bbox for nd in group]), group, None)
            for group in groups
        ]
        seq = {id(node): i for i, node in enumerate(level)}
    return level[0]


def _haversine_fraction(angle_rad: float) -> float:
    return math.sin(angle_rad / 2.0) ** 2


def _min_distance_to_bbox(origin: GeoPoint, box: BBox) -> float:
    """Lower bound (meters) on haversine distance from origin to any point in box.

    Uses hav(c) = hav(dphi) + cos(phi1) cos(phi2) hav(dlam): each term is
    bounded below by the angular gap to the box's lat/lon intervals and the
    smallest cosine over the box's latitude span.
    """
    if box.min_lat <= origin.lat <= box.max_lat:
        lat_gap = 0.0
    else:
        lat_gap = min(abs(origin.lat - box.min_lat), abs(origin.lat - box.max_lat))
    if box.min_lon <= origin.lon <= box.max_lon:
        lon_gap = 0.0
    else:
        gaps = []
        for edge in (box.min_lon, box.max_lon):
            d = abs(origin.lon - edge) % 360.0
            gaps.append(min(d, 360.0 - d))
        lon_gap = min(gaps)
    cos_min = min(math.cos(math.radians(box.min_lat)), math.cos(math.radians(box.max_lat)))
    h = _haversine_fraction(math.radians(lat_gap)) + (
        math.cos(math.radians(origin.lat)) * cos_min * _haversine_fraction(math.radians(lon_gap))
    )
    return 2.0 * EARTH_RADIUS_M * math.asin(min(1.0, math.sqrt(max(0.0, h))))


class SpatialIndex:
    """Immutable STR R-tree over IndexEntry records."""

    def __init__(self, entries: list[IndexEntry] | tuple[IndexEntry, ...] = ()):
        by_id: dict[str, IndexEntry] = {}
        for entry in entries:
            if entry.id in by_id:
                raise DuplicateEntryError(f"duplicate entry id: {entry.id!r}")
            if not entry.bbox.contains_point(entry.marker):
                raise ValueError(f"entry {entry.id!r}: bbox does not contain marker")
            by_id[entry.id] = entry
        self._by_id = by_id
        self._root = _build_tree(list(by_id.values()))

    def __len__(self) -> int:
        return len(self._by_id)

    def __contains__(self, entry_id: str) -> bool:
        return entry_id in self._by_id

    def entries(self) -> list[IndexEntry]:
        return sorted(self._by_id.values(), key=lambda e: e.id)

    def query_bbox(self, query: BBox) -> list[str]:
        """Ids of entries whose bbox intersects query, ascending by id."""
        hits: list[str] = []
        stack = [self._root] if self._root is not None else []
        while stack:
            node = stack.pop()
            if not node.bbox.intersects(query):
                continue
            if node.is_leaf:
                hits.extend(e.id for e in node.entries if e.bbox.intersects(query))
            else:
                stack.extend(node.children)
        hits.sort()
        return hits

    def k_nearest(self, origin: GeoPoint, k: int) -> list[tuple[str, float]]:
        """min(k, count) entries by ascending marker distance, ties by id.

        Best-first traversal: nodes are queued on a lower bound of their
        distance, entries on their exact distance. A node sorts before an
        entry at equal key so equal-distance candidates inside it are found
        before the entry is emitted, keeping the id tie-break global.
        """
        if k < 1:
            raise ValueError(f"k must be >= 1 (got {k})")
        if self._root is None:
            return []
        counter = 0
        heap: list[tuple[float, int, object, object]] = [
            (_min_distance_to_bbox(origin, self._root.bbox), 0, counter, self._root)
        ]
        out: list[tuple[str, float]] = []
        while heap and len(out) < k:
            key, kind, _, payload = heapq.heappop(heap)
            if kind == 1:
                out.append((payload.id, key))
                continue
            node = payload
            if node.is_leaf:
                for e in node.entries:
                    heapq.heappush(heap, (haversine_distance(origin, e.marker), 1, e.id, e))
            else:
                for child in node.children:
                    counter += 1
                    heapq.heappush(
                        heap, (_min_distance_to_bbox(origin, child.bbox), 0, counter, child)
                    )
        return out

    def insert(self, entry: IndexEntry) -> "SpatialIndex":
        if entry.id in self._by_id:
            raise DuplicateEntryError(f"cannot insert, id already present: {entry.id!r}")
        return SpatialIndex([*self._by_id.values(), entry])

    def remove(self, entry_id: str) -> "SpatialIndex":
        if entry_id not in self._by_id:
            raise MissingEntryError(f"cannot remove, unknown id: {entry_id!r}")
        return SpatialIndex([e for e in self._by_id.values() if e.id != entry_id])

    def replace(self, entry: IndexEntry) -> "SpatialIndex":
        if entry.id not in self._by_id:
            raise MissingEntryError(f"cannot replace, unknown id: {entry.id!r}")
        return SpatialIndex([e for e in self._by_id.values() if e.id != entry.id] + [entry])

    def audit(self) -> None:
        """Walk the tree and assert structural invariants; raises on violation."""
        seen: list[str] = []

        def walk(node: _Node) -> None:
            if node.is_leaf:
                assert 1 <= len(node.entries) <= MAX_FANOUT
                for e in node.entries:
                    assert node.bbox.contains_bbox(e.bbox), f"leaf bbox misses entry {e.id}"
                    assert e.bbox.contains_point(e.marker), f"entry {e.id} bbox misses marker"
                    seen.append(e.id)
            else:
                assert 1 <= len(node.children) <= MAX_FANOUT
                for child in node.children:
                    assert node.bbox.contains_bbox(child.bbox), "child bbox escapes parent"
                    walk(child)

        if self._root is not None:
            walk(self._root)
        assert sorted(seen) == sorted(self._by_id), "tree entries differ from id map"


def build_index(entries) -> SpatialIndex:
    """Bulk-load an index; rejects duplicate ids naming the offender."""
    return SpatialIndex(list(entries))

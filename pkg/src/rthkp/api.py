"""HTTP service over the store.

Public query endpoints, bearer-token admin mutations, and static serving
of the web bundle and photo files. Every non-2xx response body is one
error object: {"status", "code", "message", "details"?}.

Request bodies are decoded by hand rather than through response-model
validation so the error envelope stays uniform and the field-violation
wording matches the registry's own messages.
"""

from __future__ import annotations

import hmac
import json
import math
import re
from pathlib import Path
from typing import Optional, Union

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.responses import FileResponse, JSONResponse
from starlette.concurrency import run_in_threadpool
from starlette.exceptions import HTTPException as StarletteHTTPException

from .geo import BBox, GeoPoint, GeoPolygon
from .geojson import serialize_feature, serialize_feature_collection
from .models import CATEGORY_VALUES, SpaceDraft, draft_violations
from .registry import SeedConflictError, Store, UnknownSpaceError, ValidationError

_ERROR_CODES = {
    400: "bad_request",
    401: "unauthorized",
    404: "not_found",
    405: "method_not_allowed",
    409: "conflict",
    422: "validation",
    500: "internal",
    503: "admin_disabled",
}

_DRAFT_FIELDS = ("name", "category", "marker", "boundary", "description", "facilities", "photos")

_GEOJSON = "application/geo+json"

_INT_RE = re.compile(r"[+-]?\d+")


def _error(status: int, message: str, details: Optional[list[str]] = None) -> JSONResponse:
    body: dict = {
        "status": status,
        "code": _ERROR_CODES.get(status, "error"),
        "message": message,
    }
    if details:
        body["details"] = list(details)
    return JSONResponse(status_code=status, content=body)


def _is_number(value) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _coerce_point(value, label: str) -> tuple[Optional[GeoPoint], list[str]]:
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or not all(_is_number(c) for c in value)
    ):
        return None, [f"{label} must be a [lon, lat] pair of numbers"]
    try:
        return GeoPoint(float(value[0]), float(value[1])), []
    except OverflowError:
        return None, [f"{label} must contain finite numbers"]


def _coerce_ring(value) -> tuple[Optional[GeoPolygon], list[str]]:
    if not isinstance(value, list) or not all(
        isinstance(p, (list, tuple)) and len(p) == 2 and all(_is_number(c) for c in p)
        for p in value
    ):
        return None, ["boundary must be a list of [lon, lat] pairs"]
    try:
        return GeoPolygon.from_coords([(float(a), float(b)) for a, b in value]), []
    except OverflowError:
        return None, ["boundary must contain finite numbers"]


def _draft_from_body(body) -> tuple[Optional[SpaceDraft], list[str]]:
    if not isinstance(body, dict):
        return None, ["body must be a JSON object"]
    violations = [f"unknown field {k!r}" for k in sorted(set(body) - set(_DRAFT_FIELDS))]
    if "marker" in body:
        marker, geo_violations = _coerce_point(body["marker"], "marker")
    else:
        marker, geo_violations = None, ["marker is required"]
    violations += geo_violations
    boundary = None
    if body.get("boundary") is not None:
        boundary, ring_violations = _coerce_ring(body["boundary"])
        violations += ring_violations
    facilities = body.get("facilities", ())
    photos = body.get("photos", ())
    draft = SpaceDraft(
        name=body.get("name"),
        category=body.get("category"),
        marker=marker if marker is not None else GeoPoint(0.0, 0.0),
        boundary=boundary,
        description=body.get("description", ""),
        facilities=tuple(facilities) if isinstance(facilities, (list, tuple)) else facilities,
        photos=tuple(photos) if isinstance(photos, (list, tuple)) else photos,
    )
    violations += draft_violations(draft)
    if violations:
        return None, violations
    return draft, []


def _patch_from_body(body) -> tuple[Optional[dict], list[str]]:
    if not isinstance(body, dict):
        return None, ["body must be a JSON object"]
    violations = [f"unknown field {k!r}" for k in sorted(set(body) - set(_DRAFT_FIELDS))]
    patch: dict = {}
    for key in _DRAFT_FIELDS:
        if key not in body:
            continue
        value = body[key]
        if key == "marker":
            marker, errs = _coerce_point(value, "marker")
            violations += errs
            if not errs:
                patch["marker"] = marker
        elif key == "boundary":
            if value is None:
                patch["boundary"] = None
            else:
                ring, errs = _coerce_ring(value)
                violations += errs
                if not errs:
                    patch["boundary"] = ring
        elif key in ("facilities", "photos"):
            patch[key] = tuple(value) if isinstance(value, (list, tuple)) else value
        else:
            patch[key] = value
    if violations:
        return None, violations
    return patch, []


def _parse_bbox(text: str) -> tuple[Optional[BBox], Optional[str]]:
    parts = text.split(",")
    if len(parts) != 4:
        return None, "bbox must be four comma-separated numbers: min_lon,min_lat,max_lon,max_lat"
    try:
        values = [float(p) for p in parts]
    except ValueError:
        return None, "bbox members must be numbers"
    if not all(math.isfinite(v) for v in values):
        return None, "bbox members must be finite"
    min_lon, min_lat, max_lon, max_lat = values
    if not (-180.0 <= min_lon <= 180.0 and -180.0 <= max_lon <= 180.0):
        return None, "bbox longitudes must be within [-180, 180]"
    if not (-90.0 <= min_lat <= 90.0 and -90.0 <= max_lat <= 90.0):
        return None, "bbox latitudes must be within [-90, 90]"
    if min_lon > max_lon or min_lat > max_lat:
        return None, "bbox minimums must not exceed maximums"
    return BBox(min_lon, min_lat, max_lon, max_lat), None


def _safe_file(root: Optional[Path], rest: str) -> Optional[Path]:
    """Resolve `rest` strictly inside `root`; None for anything fishy."""
    if root is None or "\\" in rest or "\x00" in rest:
        return None
    parts = [p for p in rest.split("/") if p not in ("", ".")]
    if any(p == ".." for p in parts):
        return None
    try:
        resolved = root.joinpath(*parts).resolve(strict=True)
    except OSError:
        return None
    if resolved != root and root not in resolved.parents:
        return None  # symlink pointing outside the root
    return resolved if resolved.is_file() else None


def create_app(
    store: Store,
    admin_token: Optional[str] = None,
    static_dir: Union[str, Path, None] = None,
    photos_dir: Union[str, Path, None] = None,
    cors: bool = False,
) -> FastAPI:
    """Build the service over an opened store.

    `admin_token=None` disables mutations (503). `static_dir` serves the
    UI bundle with single-page fallback; `photos_dir` serves photo files
    under /photos/.
    """
    app = FastAPI(
        redirect_slashes=False, docs_url=None, redoc_url=None, openapi_url=None
    )
    static_root = Path(static_dir).resolve() if static_dir else None
    photo_root = Path(photos_dir).resolve() if photos_dir else None

    if cors:
        from fastapi.middleware.cors import CORSMiddleware

        app.add_middleware(
            CORSMiddleware,
            allow_origins=["*"],
            allow_methods=["*"],
            allow_headers=["*"],
        )

    @app.exception_handler(StarletteHTTPException)
    async def _http_error(request: Request, exc: StarletteHTTPException):
        message = str(exc.detail) if exc.detail else "request failed"
        return _error(exc.status_code, message)

    @app.exception_handler(RequestValidationError)
    async def _request_error(request: Request, exc: RequestValidationError):
        return _error(400, "invalid request parameters")

    @app.exception_handler(Exception)
    async def _unhandled(request: Request, exc: Exception):
        return _error(500, "internal server error")

    def _admin_gate(request: Request) -> Optional[JSONResponse]:
        if not admin_token:
            return _error(503, "admin mutations are disabled: no admin token configured")
        header = request.headers.get("authorization", "")
        candidate = header[len("Bearer ") :] if header.startswith("Bearer ") else ""
        if not hmac.compare_digest(candidate.encode(), admin_token.encode()):
            return _error(401, "missing or invalid bearer token")
        return None

    async def _json_body(request: Request):
        raw = await request.body()
        try:
            return json.loads(raw.decode("utf-8")), None
        except (UnicodeDecodeError, ValueError):
            return None, _error(400, "request body is not valid JSON")

    # -- public queries --------------------------------------------------

    @app.get("/api/health")
    def health():
        return {"status": "ok", "revision": store.revision}

    @app.get("/api/categories")
    def categories():
        return list(CATEGORY_VALUES)

    @app.get("/api/spaces")
    def list_spaces(category: Optional[str] = None, bbox: Optional[str] = None):
        if category is not None and category not in CATEGORY_VALUES:
            return _error(400, f"unknown category {category!r}")
        box = None
        if bbox is not None:
            box, problem = _parse_bbox(bbox)
            if problem:
                return _error(400, problem)
        spaces = store.list_spaces(category=category, bbox=box)
        return Response(serialize_feature_collection(spaces), media_type=_GEOJSON)

    @app.get("/api/spaces/{space_id}")
    def get_space(space_id: str):
        try:
            space = store.get_space(space_id)
        except UnknownSpaceError:
            return _error(404, f"no space with id {space_id!r}")
        return Response(serialize_feature(space), media_type=_GEOJSON)

    @app.get("/api/nearest")
    def nearest(
        lon: Optional[str] = None, lat: Optional[str] = None, k: Optional[str] = None
    ):
        if lon is None or lat is None or k is None:
            return _error(400, "lon, lat and k query parameters are required")
        try:
            lon_value, lat_value = float(lon), float(lat)
        except ValueError:
            return _error(400, "lon and lat must be numbers")
        if not (math.isfinite(lon_value) and math.isfinite(lat_value)):
            return _error(400, "lon and lat must be finite")
        if not -180.0 <= lon_value <= 180.0:
            return _error(400, "lon out of range [-180, 180]")
        if not -90.0 <= lat_value <= 90.0:
            return _error(400, "lat out of range [-90, 90]")
        if not _INT_RE.fullmatch(k):
            return _error(400, "k must be an integer")
        k_value = int(k)
        if k_value < 1:
            return _error(400, "k must be at least 1")
        hits = store.nearest(GeoPoint(lon_value, lat_value), k_value)
        return [
            {
                "id": space.id,
                "name": space.name,
                "category": space.category.value,
                "distance_m": distance,
            }
            for space, distance in hits
        ]

    # -- admin mutations -------------------------------------------------

    @app.post("/api/spaces")
    async def create_space(request: Request):
        denied = _admin_gate(request)
        if denied:
            return denied
        body, bad = await _json_body(request)
        if bad:
            return bad
        draft, violations = _draft_from_body(body)
        if violations:
            return _error(422, "draft is invalid", details=violations)
        try:
            space = await run_in_threadpool(store.create_space, draft)
        except ValidationError as exc:
            return _error(422, "draft is invalid", details=exc.violations)
        return Response(
            serialize_feature(space),
            status_code=201,
            media_type=_GEOJSON,
            headers={"Location": f"/api/spaces/{space.id}"},
        )

    @app.put("/api/spaces/{space_id}")
    async def update_space(space_id: str, request: Request):
        denied = _admin_gate(request)
        if denied:
            return denied
        body, bad = await _json_body(request)
        if bad:
            return bad
        patch, violations = _patch_from_body(body)
        if violations:
            return _error(422, "patch is invalid", details=violations)
        try:
            space = await run_in_threadpool(store.update_space, space_id, patch)
        except UnknownSpaceError:
            return _error(404, f"no space with id {space_id!r}")
        except ValidationError as exc:
            return _error(422, "patch is invalid", details=exc.violations)
        return Response(serialize_feature(space), media_type=_GEOJSON)

    @app.delete("/api/spaces/{space_id}")
    async def delete_space(space_id: str, request: Request):
        denied = _admin_gate(request)
        if denied:
            return denied
        try:
            await run_in_threadpool(store.delete_space, space_id)
        except UnknownSpaceError:
            return _error(404, f"no space with id {space_id!r}")
        return Response(status_code=204)

    @app.post("/api/admin/seed")
    async def seed(request: Request, force: str = "false"):
        denied = _admin_gate(request)
        if denied:
            return denied
        if force not in ("true", "false", "1", "0"):
            return _error(400, "force must be true or false")
        try:
            created = await run_in_threadpool(
                store.seed_default, force in ("true", "1")
            )
        except SeedConflictError as exc:
            return _error(409, str(exc))
        return {"created": created}

    # -- static files ----------------------------------------------------

    @app.get("/photos/{rest:path}")
    def photo(rest: str):
        target = _safe_file(photo_root, rest)
        if target is None:
            return _error(404, "photo not found")
        return FileResponse(target)

    @app.get("/{rest:path}")
    def static_or_index(rest: str):
        if rest == "api" or rest.startswith("api/"):
            return _error(404, "unknown API path")
        if static_root is None:
            return _error(404, "no static bundle is configured")
        target = _safe_file(static_root, rest or "index.html")
        if target is not None:
            return FileResponse(target)
        last_segment = rest.rsplit("/", 1)[-1]
        if "." in last_segment or rest.startswith("assets/"):
            return _error(404, "file not found")  # looks like a file, not a route
        index = _safe_file(static_root, "index.html")
        if index is None:
            return _error(404, "no index document")
        return FileResponse(index)

    return app

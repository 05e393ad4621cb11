"""Operator command line: serve, seed, import, export, validate, list.

Exit codes: 0 success, 1 operational failure (I/O, validation, lock),
2 usage error. Machine-readable output goes to stdout, diagnostics to
stderr. The serve and mutating subcommands hold `<data-dir>/.lock` so
two writers can never race on the dataset file.
"""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path
from typing import Optional

import click

from .api import create_app
from .geojson import GeoJsonError, feature_obj, parse_feature_collection, serialize_feature_collection
from .models import CATEGORY_VALUES
from .registry import RegistryError, SeedConflictError, Store, open_store

DATASET_NAME = "spaces.geojson"


class LockHeldError(RuntimeError):
    pass


def _pid_alive(pid: int) -> bool:
    if pid <= 0:
        return False
    try:
        os.kill(pid, 0)
    except ProcessLookupError:
        return False
    except PermissionError:
        return True
    return True


class StoreLock:
    """Exclusive pid lock file; stale locks from dead processes are reclaimed."""

    def __init__(self, data_dir: Path):
        self.path = Path(data_dir) / ".lock"

    def _holder(self) -> Optional[int]:
        try:
            return int(self.path.read_text().strip())
        except (OSError, ValueError):
            return None

    def __enter__(self) -> "StoreLock":
        self.path.parent.mkdir(parents=True, exist_ok=True)
        while True:
            try:
                fd = os.open(self.path, os.O_CREAT | os.O_EXCL | os.O_WRONLY, 0o644)
            except FileExistsError:
                holder = self._holder()
                if holder is not None and _pid_alive(holder):
                    raise LockHeldError(
                        f"data directory is locked by running process {holder} "
                        f"({self.path})"
                    )
                try:
                    self.path.unlink()
                except FileNotFoundError:
                    pass
                continue
            os.write(fd, f"{os.getpid()}\n".encode())
            os.close(fd)
            return self

    def __exit__(self, *exc) -> None:
        try:
            self.path.unlink()
        except FileNotFoundError:
            pass


def _dataset(data_dir: Path) -> Path:
    return Path(data_dir) / DATASET_NAME


def _open(data_dir: Path) -> Store:
    try:
        return open_store(_dataset(data_dir))
    except (GeoJsonError, OSError) as exc:
        raise click.ClickException(f"cannot open dataset: {exc}") from exc


data_dir_option = click.option(
    "--data-dir",
    envvar="RTHKP_DATA_DIR",
    default="./data",
    show_default=True,
    show_envvar=True,
    type=click.Path(file_okay=False, path_type=Path),
    help="Directory holding the dataset file and photos.",
)


@click.group()
@click.version_option(package_name="rthkp", prog_name="rthkp")
def main() -> None:
    """Geographic information service for urban green open spaces."""


@main.command()
@click.option(
    "--bind",
    envvar="RTHKP_BIND",
    default="127.0.0.1:8080",
    show_default=True,
    show_envvar=True,
    help="host:port to listen on.",
)
@data_dir_option
@click.option(
    "--static-dir",
    envvar="RTHKP_STATIC_DIR",
    default=None,
    show_envvar=True,
    type=click.Path(file_okay=False, path_type=Path),
    help="Web bundle to serve at /; omit for API-only.",
)
@click.option("--cors", is_flag=True, help="Allow cross-origin requests (development).")
def serve(bind: str, data_dir: Path, static_dir: Optional[Path], cors: bool) -> None:
    """Run the HTTP service until interrupted."""
    host, _, port_text = bind.rpartition(":")
    if not host or not port_text.isdigit() or not 0 < int(port_text) < 65536:
        raise click.BadParameter(f"--bind must be host:port, got {bind!r}", param_hint="--bind")
    token = os.environ.get("RTHKP_ADMIN_TOKEN") or None
    import uvicorn  # deferred: heavy import not needed by the other commands

    try:
        with StoreLock(data_dir):
            store = _open(data_dir)
            app = create_app(
                store,
                admin_token=token,
                static_dir=static_dir,
                photos_dir=Path(data_dir) / "photos",
                cors=cors,
            )
            if token is None:
                click.echo(
                    "warning: RTHKP_ADMIN_TOKEN is not set; admin endpoints return 503",
                    err=True,
                )
            click.echo(f"listening on http://{host}:{port_text}", err=True)
            uvicorn.run(app, host=host, port=int(port_text), log_level="warning")
    except LockHeldError as exc:
        raise click.ClickException(str(exc)) from exc


@main.command()
@data_dir_option
@click.option("--force", is_flag=True, help="Replace existing records.")
def seed(data_dir: Path, force: bool) -> None:
    """Load the default green-space inventory (12 records)."""
    try:
        with StoreLock(data_dir):
            store = _open(data_dir)
            created = store.seed_default(force=force)
    except (LockHeldError, SeedConflictError, RegistryError, OSError) as exc:
        raise click.ClickException(str(exc)) from exc
    click.echo(f"created {created} records in {_dataset(data_dir)}")


@main.command(name="import")
@click.argument("file")
@click.option(
    "--replace/--merge",
    "replace",
    default=False,
    help="Replace the whole dataset instead of upserting by id (default: merge).",
)
@data_dir_option
def import_(file: str, replace: bool, data_dir: Path) -> None:
    """Load records from a feature-collection FILE into the store."""
    try:
        raw = sys.stdin.buffer.read() if file == "-" else Path(file).read_bytes()
    except OSError as exc:
        raise click.ClickException(f"cannot read {file}: {exc}") from exc
    try:
        spaces = parse_feature_collection(raw)
    except GeoJsonError as exc:
        raise click.ClickException(str(exc)) from exc
    try:
        with StoreLock(data_dir):
            store = _open(data_dir)
            if replace:
                count = store.replace_all(spaces)
            else:
                count = store.merge_all(spaces)
    except (LockHeldError, RegistryError, OSError) as exc:
        raise click.ClickException(str(exc)) from exc
    click.echo(f"{'replaced with' if replace else 'merged'} {count} records")


@main.command()
@click.option(
    "-o",
    "--output",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="Write to a file instead of stdout.",
)
@data_dir_option
def export(output: Optional[Path], data_dir: Path) -> None:
    """Write the canonical serialization of the store."""
    store = _open(data_dir)
    text = serialize_feature_collection(store.list_spaces())
    if output is None:
        click.echo(text, nl=False)
    else:
        try:
            output.write_text(text, encoding="utf-8")
        except OSError as exc:
            raise click.ClickException(f"cannot write {output}: {exc}") from exc
        click.echo(f"wrote {len(store)} records to {output}", err=True)


@main.command()
@click.argument("file")
def validate(file: str) -> None:
    """Parse FILE and report violations; exit 0 only if clean."""
    try:
        raw = sys.stdin.buffer.read() if file == "-" else Path(file).read_bytes()
    except OSError as exc:
        raise click.ClickException(f"cannot read {file}: {exc}") from exc
    try:
        spaces = parse_feature_collection(raw)
    except GeoJsonError as exc:
        raise click.ClickException(str(exc)) from exc
    click.echo(f"OK: {len(spaces)} valid features")


@main.command(name="list")
@click.option("--category", type=click.Choice(CATEGORY_VALUES), default=None)
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["table", "json"]),
    default="table",
    show_default=True,
)
@data_dir_option
def list_(category: Optional[str], fmt: str, data_dir: Path) -> None:
    """Print records ascending by id."""
    store = _open(data_dir)
    spaces = store.list_spaces(category=category)
    if fmt == "json":
        payload = [feature_obj(s)["properties"] for s in spaces]
        click.echo(json.dumps(payload, indent=2, ensure_ascii=False))
        return
    if not spaces:
        click.echo("no records", err=True)
        return
    id_width = max(len(s.id) for s in spaces)
    cat_width = max(len(s.category.value) for s in spaces)
    for s in spaces:
        click.echo(
            f"{s.id:<{id_width}}  {s.category.value:<{cat_width}}  "
            f"{s.marker.lon:>12.7f} {s.marker.lat:>11.7f}  {s.name}"
        )

"""Reading and writing the tab-separated fixture files."""

from __future__ import annotations

import csv
import io
from importlib import resources
from pathlib import Path


class FixtureError(ValueError):
    """A fixture is missing, malformed, or disagrees with a computed value."""


def default_dir() -> Path:
    return Path(str(resources.files("g2micro") / "data"))


def resolve_dir(path: str | Path | None) -> Path:
    return Path(path) if path is not None else default_dir()


def read_tsv(path: str | Path) -> list[dict]:
    """Rows of a TSV file with a header line; '#' lines are comments."""
    path = Path(path)
    if not path.exists():
        raise FixtureError(f"missing fixture {path}")
    lines = [ln for ln in path.read_text().splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise FixtureError(f"empty fixture {path}")
    reader = csv.DictReader(lines, delimiter="\t")
    rows = list(reader)
    for i, row in enumerate(rows):
        if None in row or any(v is None for v in row.values()):
            raise FixtureError(f"{path.name}: ragged row {i + 2}")
    return rows


def fixture_path(name: str, directory: str | Path | None = None) -> Path:
    return resolve_dir(directory) / name


def has_fixture(name: str, directory: str | Path | None = None) -> bool:
    return fixture_path(name, directory).exists()


def to_tsv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, delimiter="\t", lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()

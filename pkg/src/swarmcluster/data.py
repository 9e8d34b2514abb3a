"""Dataset ingestion: delimited-text parsing with per-dataset column maps,
bundled benchmark files, checksummed remote fetch, and optional scaling.

The registry (``_data/registry.json``) maps dataset names to their source,
layout, and the expected instance/feature/class counts; loading fails
loudly whenever a parsed file disagrees with those counts.
"""

from __future__ import annotations

import hashlib
import json
import os
import urllib.request
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .core import DataError, Dataset

CACHE_ENV = "SWARMCLUSTER_CACHE"
DATA_ENV = "SWARMCLUSTER_DATA"


@dataclass(frozen=True)
class DatasetSpec:
    """Where a dataset lives and how to read it.

    ``drop_columns`` and ``label_column`` index the raw file columns; the
    remaining columns are the features, in file order.
    """

    name: str
    source_kind: str  # bundled | local | remote
    source_value: str
    delimiter: str | None = ","  # None splits on whitespace
    label_column: int | None = None
    header: bool = False
    expected: dict = field(default_factory=dict)
    drop_columns: tuple = ()
    missing_marker: str | None = None
    default_iterations: int = 900

    @property
    def n_classes(self) -> int:
        return int(self.expected.get("n_classes", 0))


def _registry_text() -> str:
    return resources.files("swarmcluster._data").joinpath("registry.json").read_text()


def load_registry() -> dict[str, DatasetSpec]:
    """All registered benchmark datasets, keyed by name."""
    raw = json.loads(_registry_text())
    registry = {}
    for name, entry in raw.items():
        registry[name] = DatasetSpec(
            name=name,
            source_kind=entry["source"]["kind"],
            source_value=entry["source"]["value"],
            delimiter=entry.get("delimiter", ","),
            label_column=entry.get("label_column"),
            header=entry.get("header", False),
            expected=entry.get("expected", {}),
            drop_columns=tuple(entry.get("drop_columns", ())),
            missing_marker=entry.get("missing_marker"),
            default_iterations=entry.get("default_iterations", 900),
        )
    return registry


def get_spec(name: str) -> DatasetSpec:
    registry = load_registry()
    try:
        return registry[name]
    except KeyError:
        known = ", ".join(sorted(registry))
        raise DataError(f"unknown dataset {name!r}; registered datasets: {known}") from None


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "swarmcluster"


def _sha256_file(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _cache_path(url: str, cache_dir: Path) -> Path:
    stem = hashlib.sha256(url.encode()).hexdigest()[:16]
    return Path(cache_dir) / f"{stem}_{Path(url).name}"


def fetch_remote(url: str, cache_dir=None, transport=None) -> Path:
    """Download a file into the cache, or reuse the verified cached copy.

    A ``.sha256`` file alongside the download records the content checksum;
    later calls verify it and make no network request.  ``transport`` is a
    ``url -> bytes`` callable (tests inject one; the default uses urllib).
    """
    cache_dir = Path(cache_dir) if cache_dir else default_cache_dir()
    target = _cache_path(url, cache_dir)
    checksum_file = target.with_suffix(target.suffix + ".sha256")

    if target.exists() and checksum_file.exists():
        recorded = checksum_file.read_text().strip()
        actual = _sha256_file(target)
        if actual != recorded:
            raise DataError(
                f"cached file {target} fails its checksum (recorded {recorded[:12]}, "
                f"found {actual[:12]}); delete it and re-fetch"
            )
        return target

    if transport is None:
        def transport(u):
            with urllib.request.urlopen(u, timeout=60) as resp:
                return resp.read()
    try:
        payload = transport(url)
    except Exception as exc:
        raise DataError(f"could not fetch {url}: {exc}") from exc

    cache_dir.mkdir(parents=True, exist_ok=True)
    tmp = target.with_suffix(target.suffix + ".part")
    tmp.write_bytes(payload)
    os.replace(tmp, target)
    checksum_file.write_text(hashlib.sha256(payload).hexdigest() + "\n")
    return target


def fetch_dataset(name: str, cache_dir=None, transport=None) -> Path:
    """Fetch one registered remote dataset into the cache."""
    spec = get_spec(name)
    if spec.source_kind != "remote":
        raise DataError(f"dataset {name!r} is {spec.source_kind}, nothing to fetch")
    return fetch_remote(spec.source_value, cache_dir=cache_dir, transport=transport)


def _resolve_path(spec: DatasetSpec, cache_dir=None, data_dir=None) -> Path:
    if spec.source_kind == "local":
        path = Path(spec.source_value)
        if not path.exists():
            raise DataError(f"dataset file {path} does not exist")
        return path
    # remote: look in an explicit data directory first, then the cache
    basename = Path(spec.source_value).name
    data_dir = data_dir or os.environ.get(DATA_ENV)
    if data_dir:
        candidate = Path(data_dir) / basename
        if candidate.exists():
            return candidate
    cached = _cache_path(spec.source_value, Path(cache_dir) if cache_dir else default_cache_dir())
    if cached.exists():
        return cached
    raise DataError(
        f"dataset {spec.name!r} is not available locally; fetch it first "
        f"(`swarmcluster fetch --dataset {spec.name}`) or place {basename} "
        f"in a directory named by --data-dir / ${DATA_ENV}"
    )


def parse_dataset_text(text: str, spec: DatasetSpec) -> tuple[np.ndarray, list | None]:
    """Turn delimited text into a feature matrix and optional label list."""
    lines = text.splitlines()
    if spec.header and lines:
        lines = lines[1:]
    rows, labels = [], []
    width = None
    for lineno, line in enumerate(lines, start=2 if spec.header else 1):
        line = line.strip()
        if not line:
            continue
        cells = line.split(spec.delimiter) if spec.delimiter else line.split()
        if spec.missing_marker is not None and spec.missing_marker in cells:
            continue
        if width is None:
            width = len(cells)
        elif len(cells) != width:
            raise DataError(
                f"{spec.name}: line {lineno} has {len(cells)} columns, expected {width}"
            )
        label = None
        feats = []
        for col, cell in enumerate(cells):
            if col in spec.drop_columns:
                continue
            if col == spec.label_column:
                label = cell.strip()
                continue
            try:
                feats.append(float(cell))
            except ValueError:
                raise DataError(
                    f"{spec.name}: non-numeric value {cell.strip()!r} "
                    f"at line {lineno}, column {col}"
                ) from None
        if spec.label_column is not None and label is None:
            raise DataError(f"{spec.name}: line {lineno} is missing the label column")
        rows.append(feats)
        labels.append(label)
    if not rows:
        raise DataError(f"{spec.name}: no data rows")
    points = np.array(rows, dtype=float)
    return points, (labels if spec.label_column is not None else None)


def _validate_expected(spec: DatasetSpec, dataset: Dataset) -> None:
    expected = spec.expected
    checks = [
        ("n_instances", dataset.n_points),
        ("n_features", dataset.n_features),
        ("n_classes", dataset.n_classes),
    ]
    for key, actual in checks:
        if key in expected and expected[key] != actual:
            raise DataError(
                f"{spec.name}: expected {key}={expected[key]}, parsed {actual}"
            )


def load_dataset(
    name_or_spec, cache_dir=None, data_dir=None, scale: bool = False
) -> Dataset:
    """Load a registered dataset (by name) or an explicit spec."""
    spec = name_or_spec if isinstance(name_or_spec, DatasetSpec) else get_spec(name_or_spec)
    if spec.source_kind == "bundled":
        text = resources.files("swarmcluster._data").joinpath(spec.source_value).read_text()
    else:
        path = _resolve_path(spec, cache_dir=cache_dir, data_dir=data_dir)
        try:
            text = path.read_text()
        except OSError as exc:
            raise DataError(f"{spec.name}: cannot read {path}: {exc}") from exc
    points, labels = parse_dataset_text(text, spec)
    dataset = Dataset(name=spec.name, points=points, labels=labels)
    _validate_expected(spec, dataset)
    if scale:
        dataset = min_max_scale(dataset)
    return dataset


def min_max_scale(dataset: Dataset) -> Dataset:
    """Affinely map every feature to [0, 1]; constant features go to 0."""
    pts = dataset.points
    lo = pts.min(axis=0)
    span = pts.max(axis=0) - lo
    span[span == 0.0] = 1.0
    return Dataset(
        name=dataset.name,
        points=(pts - lo) / span,
        labels=dataset.labels,
        n_classes=dataset.n_classes,
    )

"""JSON Lines curve files, synthetic datasets and atomic result output."""

from __future__ import annotations

import json
import math
import os
import tempfile
from pathlib import Path
from typing import Any, Iterable, Mapping

import numpy as np

from .predicates import Curve
from .ranges import Dataset

__all__ = [
    "DataError",
    "load_dataset",
    "parse_curves",
    "save_dataset",
    "dumps_curve",
    "dumps_record",
    "write_atomic",
    "generate_synthetic",
    "SYNTHETIC_KINDS",
]

SYNTHETIC_KINDS = ("random_walk", "perturbed_template", "circle_points")


class DataError(ValueError):
    """Malformed or inconsistent input data."""


def _reject_constant(name: str):
    raise ValueError(f"non-finite number {name} is not allowed")


def _parse_line(line: str, lineno: int) -> tuple[str, list]:
    try:
        obj = json.loads(line, parse_constant=_reject_constant)
    except ValueError as exc:
        raise DataError(f"line {lineno}: malformed JSON ({exc})") from None
    if not isinstance(obj, dict) or "id" not in obj or "points" not in obj:
        raise DataError(f"line {lineno}: expected an object with 'id' and 'points'")
    cid, pts = obj["id"], obj["points"]
    if not isinstance(cid, str):
        raise DataError(f"line {lineno}: id must be a string")
    if not isinstance(pts, list) or not pts:
        raise DataError(f"line {lineno}: curve {cid!r} needs a non-empty list of points")
    width = None
    for p in pts:
        if not isinstance(p, list) or not p or not all(
            isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x) for x in p
        ):
            raise DataError(f"line {lineno}: curve {cid!r} has a point that is not a list of finite numbers")
        if width is None:
            width = len(p)
        elif len(p) != width:
            raise DataError(f"line {lineno}: curve {cid!r} mixes point dimensions {width} and {len(p)}")
    return cid, pts


def parse_curves(lines: Iterable[str], source: str = "<input>") -> Dataset:
    curves: list[Curve] = []
    seen: dict[str, int] = {}
    dim = None
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        cid, pts = _parse_line(line, lineno)
        if cid in seen:
            raise DataError(f"{source}: line {lineno}: duplicate id {cid!r} (first on line {seen[cid]})")
        seen[cid] = lineno
        d = len(pts[0])
        if dim is None:
            dim = d
        elif d != dim:
            raise DataError(
                f"{source}: line {lineno}: curve {cid!r} has dimension {d}, expected {dim}"
            )
        curves.append(Curve(pts, cid))
    if not curves:
        raise DataError(f"{source}: no curves found")
    return Dataset(curves)


def load_dataset(path: str | os.PathLike) -> Dataset:
    """Read a JSON Lines curve file: one ``{"id": ..., "points": [[...], ...]}`` per line."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc.strerror}") from None
    return parse_curves(text.splitlines(), str(path))


def dumps_curve(curve: Curve) -> str:
    # floats go through repr, i.e. shortest round-trip form
    return json.dumps(
        {"id": curve.id, "points": curve.vertices.tolist()}, separators=(",", ":"), allow_nan=False
    )


def dumps_record(record: Mapping[str, Any]) -> str:
    return json.dumps(record, sort_keys=True, separators=(",", ":"), allow_nan=False, default=_jsonable)


def _jsonable(x):
    if isinstance(x, np.generic):
        return x.item()
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, Path):
        return str(x)
    raise TypeError(f"{type(x).__name__} is not JSON serializable")


def write_atomic(path: str | os.PathLike, lines: Iterable[str]) -> None:
    """Write lines to ``path`` through a temporary file renamed on success."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent or ".")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            for line in lines:
                fh.write(line)
                fh.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def save_dataset(ds: Dataset, path: str | os.PathLike) -> None:
    write_atomic(path, (dumps_curve(c) for c in ds.curves))


def generate_synthetic(kind: str, params: Mapping[str, Any], seed: int = 0) -> Dataset:
    """Deterministic synthetic curve sets.

    ``random_walk``
        ``n`` curves of ``m`` vertices in ``d`` dimensions; vertex ``i`` is the
        sum of ``i + 1`` steps drawn uniformly from ``[-1, 1]^d``.
    ``perturbed_template``
        ``n`` copies of ``template`` (list of points) with i.i.d. Gaussian noise
        of standard deviation ``noise`` added to every coordinate.
    ``circle_points``
        the ``k`` single-point curves of the unit-circle shattering construction.
    """
    rng = np.random.default_rng(seed)
    p = dict(params)
    if kind == "random_walk":
        n, m, d = int(p.get("n", 100)), int(p.get("m", 10)), int(p.get("d", 2))
        if n < 1 or m < 1 or d < 1:
            raise ValueError("random_walk needs n, m, d >= 1")
        steps = rng.uniform(-1.0, 1.0, size=(n, m, d))
        walks = np.cumsum(steps, axis=1)
        width = len(str(n - 1))
        return Dataset(Curve(w, f"rw{i:0{width}d}") for i, w in enumerate(walks))
    if kind == "perturbed_template":
        template = np.asarray(p.get("template", [[0.0, 0.0], [1.0, 0.0]]), dtype=float)
        n, noise = int(p.get("n", 100)), float(p.get("noise", 0.1))
        if n < 1 or noise < 0 or template.ndim != 2:
            raise ValueError("perturbed_template needs n >= 1, noise >= 0 and a 2-D template")
        width = len(str(n - 1))
        return Dataset(
            Curve(template + noise * rng.standard_normal(template.shape), f"pt{i:0{width}d}") for i in range(n)
        )
    if kind == "circle_points":
        from .vclab import circle_construction

        return Dataset(circle_construction(int(p.get("k", 6)), float(p.get("R", 10.0))).ground)
    raise ValueError(f"unknown synthetic kind {kind!r}; choose from {SYNTHETIC_KINDS}")

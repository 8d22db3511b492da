"""3D cuts of 4D clouds and plain-text point-cloud files.

A cut drops one real coordinate of each point and keeps only points where
that coordinate is within ``epsilon`` of zero.  The survivors are written as
CSV (``x,y,z,tag``), ASCII PLY with per-tag vertex colours, or XYZ triples.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .cloud import AXES, PointCloud4D, Tag

__all__ = [
    "TAG_COLORS",
    "ExportError",
    "SliceSpec",
    "Slice3D",
    "CloudStats",
    "slice3d",
    "planar_slice",
    "export_csv",
    "export_ply",
    "export_xyz",
    "export",
    "read_csv",
    "write_metadata",
    "stats",
]

TAG_COLORS = {
    "JxJ": (0, 0, 0),
    "JxK": (200, 30, 30),
    "KxJ": (30, 30, 200),
    "J": (0, 0, 0),
}


class ExportError(OSError):
    """File output failed; the message starts with the offending path."""


@dataclass(frozen=True)
class SliceSpec:
    drop_axis: str = "d"
    epsilon: float = 0.05

    def __post_init__(self):
        if self.drop_axis not in AXES:
            raise ValueError(f"drop_axis must be one of {AXES}, got {self.drop_axis!r}")
        if not self.epsilon > 0:
            raise ValueError(f"epsilon must be > 0, got {self.epsilon}")

    @property
    def kept_axes(self) -> tuple[str, str, str]:
        return tuple(a for a in AXES if a != self.drop_axis)


@dataclass
class Slice3D:
    """``xyz`` is ``(M, 3)``; ``tags`` holds one string label per row."""

    xyz: np.ndarray
    tags: np.ndarray

    def __post_init__(self):
        self.xyz = np.asarray(self.xyz, dtype=float).reshape(-1, 3)
        self.tags = np.asarray(self.tags, dtype=str).ravel()
        if self.tags.shape[0] != self.xyz.shape[0]:
            raise ValueError(f"{self.xyz.shape[0]} points but {self.tags.shape[0]} tags")

    def __len__(self):
        return self.xyz.shape[0]


def _labels(codes: np.ndarray) -> np.ndarray:
    table = np.array([t.label for t in sorted(Tag)])
    return table[codes] if codes.size else np.empty(0, dtype=str)


def slice3d(cloud: PointCloud4D, spec: SliceSpec = SliceSpec()) -> Slice3D:
    """Keep points with ``|dropped coordinate| < epsilon``, project to 3D.

    The remaining coordinates stay in ``a, b, c, d`` order.
    """
    k = AXES.index(spec.drop_axis)
    keep = np.abs(cloud.points[:, k]) < spec.epsilon
    cols = [i for i in range(4) if i != k]
    return Slice3D(cloud.points[keep][:, cols], _labels(cloud.tags[keep]))


def planar_slice(z: np.ndarray, tag: str = "J") -> Slice3D:
    """Embed complex points as ``(re, im, 0)`` rows."""
    z = np.asarray(z, dtype=complex).ravel()
    xyz = np.column_stack([z.real, z.imag, np.zeros(z.size)])
    return Slice3D(xyz, np.full(z.size, tag))


def _open(path):
    path = Path(path)
    try:
        return path.open("w", newline="\n", encoding="ascii")
    except OSError as exc:
        raise ExportError(f"{path}: {exc.strerror or exc}") from exc


def _write(path, text: str) -> Path:
    path = Path(path)
    fh = _open(path)
    try:
        with fh:
            fh.write(text)
    except OSError as exc:
        raise ExportError(f"{path}: {exc.strerror or exc}") from exc
    return path


def _rows(xyz: np.ndarray, fmt: str) -> list[str]:
    return [fmt % tuple(r) for r in xyz.tolist()]


def export_csv(points: Slice3D, path) -> Path:
    """Write ``x,y,z,tag`` with 17 significant digits (round-trips exactly)."""
    rows = _rows(points.xyz, "%.17g,%.17g,%.17g")
    body = "".join(f"{r},{t}\n" for r, t in zip(rows, points.tags.tolist()))
    return _write(path, "x,y,z,tag\n" + body)


def export_xyz(points: Slice3D, path) -> Path:
    rows = _rows(points.xyz, "%.17g %.17g %.17g")
    return _write(path, "".join(r + "\n" for r in rows))


def export_ply(points: Slice3D, path) -> Path:
    header = (
        "ply\n"
        "format ascii 1.0\n"
        "comment bicomplex Julia set cut\n"
        f"element vertex {len(points)}\n"
        "property float x\n"
        "property float y\n"
        "property float z\n"
        "property uchar red\n"
        "property uchar green\n"
        "property uchar blue\n"
        "end_header\n"
    )
    rows = _rows(points.xyz, "%.9g %.9g %.9g")
    lines = []
    for r, t in zip(rows, points.tags.tolist()):
        red, green, blue = TAG_COLORS.get(t, (128, 128, 128))
        lines.append(f"{r} {red} {green} {blue}\n")
    return _write(path, header + "".join(lines))


_EXPORTERS = {"csv": export_csv, "ply": export_ply, "xyz": export_xyz}


def export(points: Slice3D, path, fmt: str) -> Path:
    try:
        writer = _EXPORTERS[fmt]
    except KeyError:
        raise ValueError(f"unknown format {fmt!r}; expected one of {sorted(_EXPORTERS)}") from None
    return writer(points, path)


def read_csv(path) -> Slice3D:
    path = Path(path)
    try:
        lines = path.read_text(encoding="ascii").splitlines()
    except OSError as exc:
        raise ExportError(f"{path}: {exc.strerror or exc}") from exc
    if not lines or lines[0] != "x,y,z,tag":
        raise ValueError(f"{path}: missing 'x,y,z,tag' header")
    xyz, tags = [], []
    for lineno, line in enumerate(lines[1:], 2):
        parts = line.split(",")
        if len(parts) != 4:
            raise ValueError(f"{path}:{lineno}: expected 4 fields, got {len(parts)}")
        xyz.append([float(v) for v in parts[:3]])
        tags.append(parts[3])
    return Slice3D(np.array(xyz).reshape(-1, 3), np.array(tags, dtype=str))


def write_metadata(path, meta: dict) -> Path:
    return _write(path, json.dumps(meta, indent=2, sort_keys=True) + "\n")


@dataclass
class CloudStats:
    count: int
    bbox: dict = field(default_factory=dict)  # axis -> (min, max)
    mean_norm: Optional[float] = None
    max_norm: Optional[float] = None
    tag_counts: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "count": self.count,
            "bbox": {k: list(v) for k, v in self.bbox.items()},
            "mean_norm": self.mean_norm,
            "max_norm": self.max_norm,
            "tag_counts": dict(self.tag_counts),
        }


def stats(cloud: PointCloud4D) -> CloudStats:
    n = len(cloud)
    if n == 0:
        return CloudStats(0, tag_counts=cloud.tag_counts())
    lo = cloud.points.min(axis=0)
    hi = cloud.points.max(axis=0)
    norms = np.sqrt(np.sum(cloud.points**2, axis=1))
    return CloudStats(
        count=n,
        bbox={ax: (float(lo[i]), float(hi[i])) for i, ax in enumerate(AXES)},
        mean_norm=math.fsum(norms.tolist()) / n,
        max_norm=float(norms.max()),
        tag_counts=cloud.tag_counts(),
    )

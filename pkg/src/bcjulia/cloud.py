"""Tagged 4D point clouds of bicomplex numbers."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .bicomplex import Bicomplex, idempotent_arrays

__all__ = ["Tag", "PointCloud4D", "AXES"]

AXES = ("a", "b", "c", "d")


class Tag(enum.IntEnum):
    """Which cartesian piece of the Julia set a point was drawn from."""

    JXJ = 0
    JXK = 1
    KXJ = 2

    @property
    def label(self) -> str:
        return _LABELS[self]

    @classmethod
    def from_label(cls, label: str) -> Tag:
        try:
            return _BY_LABEL[label]
        except KeyError:
            raise ValueError(f"unknown tag {label!r}; expected one of {sorted(_BY_LABEL)}") from None


_LABELS = {Tag.JXJ: "JxJ", Tag.JXK: "JxK", Tag.KXJ: "KxJ"}
_BY_LABEL = {v: k for k, v in _LABELS.items()}


@dataclass
class PointCloud4D:
    """Rows of ``points`` are ``(a, b, c, d)``; ``tags`` holds :class:`Tag` codes."""

    points: np.ndarray
    tags: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float).reshape(-1, 4)
        self.tags = np.asarray(self.tags, dtype=np.uint8).ravel()
        if self.tags.shape[0] != self.points.shape[0]:
            raise ValueError(f"{self.points.shape[0]} points but {self.tags.shape[0]} tags")
        if self.tags.size and self.tags.max() > max(Tag):
            raise ValueError("tag codes outside the known tag set")

    @classmethod
    def empty(cls) -> PointCloud4D:
        return cls(np.empty((0, 4)), np.empty(0, dtype=np.uint8))

    @classmethod
    def uniform(cls, points: np.ndarray, tag: Tag, **meta) -> PointCloud4D:
        points = np.asarray(points, dtype=float).reshape(-1, 4)
        return cls(points, np.full(points.shape[0], int(tag), dtype=np.uint8), dict(meta))

    @classmethod
    def concatenate(cls, clouds, meta=None) -> PointCloud4D:
        clouds = list(clouds)
        if not clouds:
            return cls.empty()
        return cls(
            np.concatenate([c.points for c in clouds]),
            np.concatenate([c.tags for c in clouds]),
            dict(meta or {}),
        )

    def __len__(self):
        return self.points.shape[0]

    def __getitem__(self, i: int) -> tuple[Bicomplex, Tag]:
        a, b, c, d = self.points[i]
        return Bicomplex.from_parts(a, b, c, d), Tag(int(self.tags[i]))

    def projections(self) -> tuple[np.ndarray, np.ndarray]:
        return idempotent_arrays(self.points)

    def select(self, tag: Tag) -> PointCloud4D:
        keep = self.tags == int(tag)
        return PointCloud4D(self.points[keep], self.tags[keep], dict(self.meta))

    def tag_counts(self) -> dict[str, int]:
        counts = np.bincount(self.tags, minlength=len(Tag))
        return {t.label: int(counts[t]) for t in Tag}

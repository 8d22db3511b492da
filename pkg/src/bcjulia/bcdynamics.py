"""Bicomplex dynamics of ``P_c(w) = w**2 + c``.

Everything here rests on the idempotent decomposition: with
``c = c1 + c2*i2`` the map acts on ``P1(w)`` as ``z**2 + (c1 - c2*i1)`` and on
``P2(w)`` as ``z**2 + (c1 + c2*i1)``, independently.  Forward orbits, inverse
branches and fixed points are therefore products of their complex
counterparts.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .bicomplex import Bicomplex, NonFiniteError, from_idempotent, from_idempotent_arrays, to_idempotent
from .cloud import PointCloud4D, Tag
from .dynamics import (
    MAX_TREE_DEPTH,
    RNG_NAME,
    FixedPointClass,
    FixedPointInfo,
    GridSpec,
    IimConfig,
    filled_julia_mask,
    fixed_points,
    inverse_step,
    inverse_tree_levels,
    inverse_walk,
    iterate_forward,
    make_rng,
    seed_fixed_point,
)

__all__ = [
    "BRANCH_PAIRS",
    "MAX_BC_TREE_DEPTH",
    "BicomplexParam",
    "BicomplexFixedPoint",
    "DendriteVerdict",
    "DendriteReport",
    "as_param",
    "iterate_forward_bc",
    "bc_fixed_points",
    "seed_in_JxJ",
    "bc_inverse_step",
    "iim_bicomplex",
    "dendrite_heuristic",
    "component_dendrite_verdict",
]

BRANCH_PAIRS = ((0, 0), (0, 1), (1, 0), (1, 1))
# 4**12 = 2**24 nodes, the same memory guard as the complex tree
MAX_BC_TREE_DEPTH = MAX_TREE_DEPTH // 2


@dataclass(frozen=True)
class BicomplexParam:
    """Parameter ``c`` with its cached projections ``c_minus``, ``c_plus``."""

    c: Bicomplex
    c_minus: complex = field(init=False)
    c_plus: complex = field(init=False)

    def __post_init__(self):
        c = Bicomplex.coerce(self.c)
        p1, p2 = to_idempotent(c)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "c_minus", p1)
        object.__setattr__(self, "c_plus", p2)


def as_param(c) -> BicomplexParam:
    return c if isinstance(c, BicomplexParam) else BicomplexParam(c)


@dataclass(frozen=True)
class BicomplexFixedPoint:
    point: Bicomplex
    comp1: FixedPointInfo
    comp2: FixedPointInfo

    @property
    def in_JxJ(self) -> bool:
        """Both components repelling, or the parabolic point 1/2."""
        return _on_julia(self.comp1) and _on_julia(self.comp2)


def _on_julia(info: FixedPointInfo) -> bool:
    if info.kind is FixedPointClass.REPELLING:
        return True
    return info.kind is FixedPointClass.INDIFFERENT and info.point == 0.5


def iterate_forward_bc(c, w: Bicomplex, n: int, via: str = "idempotent") -> Optional[Bicomplex]:
    """``P_c^n(w)``, or ``None`` when the orbit overflows.

    ``via="direct"`` squares in the bicomplex ring; ``via="idempotent"`` runs
    the two projected complex orbits and recombines them.
    """
    if n < 0:
        raise ValueError(f"iteration count must be >= 0, got {n}")
    c = as_param(c)
    w = Bicomplex.coerce(w)
    if via not in ("direct", "idempotent"):
        raise ValueError(f"via must be 'direct' or 'idempotent', got {via!r}")
    if n == 0:
        return w
    if via == "direct":
        try:
            for _ in range(n):
                w = w * w + c.c
        except NonFiniteError:
            return None
        return w
    p1, p2 = to_idempotent(w)
    q1 = iterate_forward(c.c_minus, p1, n)
    q2 = iterate_forward(c.c_plus, p2, n)
    if q1 is None or q2 is None:
        return None
    try:
        return from_idempotent((q1, q2))
    except NonFiniteError:
        return None


def bc_fixed_points(c) -> list[BicomplexFixedPoint]:
    """All fixed points: every pairing of the two projected maps' fixed points."""
    c = as_param(c)
    return [
        BicomplexFixedPoint(from_idempotent((f1.point, f2.point)), f1, f2)
        for f1 in fixed_points(c.c_minus)
        for f2 in fixed_points(c.c_plus)
    ]


def seed_in_JxJ(c) -> BicomplexFixedPoint:
    c = as_param(c)
    f1 = seed_fixed_point(c.c_minus)
    f2 = seed_fixed_point(c.c_plus)
    return BicomplexFixedPoint(from_idempotent((f1.point, f2.point)), f1, f2)


def bc_inverse_step(c, w: Bicomplex, branch: tuple[int, int]) -> Bicomplex:
    c = as_param(c)
    s1, s2 = branch
    p1, p2 = to_idempotent(w)
    return from_idempotent((inverse_step(c.c_minus, p1, s1), inverse_step(c.c_plus, p2, s2)))


def iim_bicomplex(c, cfg: IimConfig, branches: Sequence[tuple[int, int]] = BRANCH_PAIRS) -> PointCloud4D:
    """Sample ``J(c_minus) x_e J(c_plus)`` by bicomplex inverse iteration.

    Starts from :func:`seed_in_JxJ`.  In random mode each step takes one
    ``uint8`` draw of ``Generator.integers(0, len(branches))`` and applies that branch
    pair; with the default ``branches`` the draw ``k`` means
    ``(s1, s2) = (k // 2, k % 2)``.  Passing a subset such as
    ``[(0, 0), (1, 1)]`` restricts the walk.

    In tree mode level ``k`` is the full preimage set
    ``P^{-k}(p1) x_e P^{-k}(p2)``, so ``4**k`` points; ``branches`` is ignored
    and ``cfg.depth`` may not exceed :data:`MAX_BC_TREE_DEPTH`.
    """
    c = as_param(c)
    seed = seed_in_JxJ(c)
    z1, z2 = seed.comp1.point, seed.comp2.point
    meta = {"seed_point": list(seed.point.parts), "rng": RNG_NAME, "rng_seed": cfg.seed}
    if cfg.mode == "tree":
        if cfg.depth > MAX_BC_TREE_DEPTH:
            raise ValueError(f"bicomplex tree depth must be <= {MAX_BC_TREE_DEPTH}, got {cfg.depth}")
        keep = cfg.recorded_levels()
        chunks = []
        levels = zip(inverse_tree_levels(c.c_minus, z1, cfg.depth), inverse_tree_levels(c.c_plus, z2, cfg.depth))
        for k, (l1, l2) in enumerate(levels, 1):
            if k in keep:
                chunks.append(from_idempotent_arrays(np.repeat(l1, l2.size), np.tile(l2, l1.size)))
        return PointCloud4D.uniform(np.concatenate(chunks), Tag.JXJ, **meta)

    pairs = np.asarray(branches, dtype=np.uint8).reshape(-1, 2)
    if pairs.size == 0 or pairs.max() > 1:
        raise ValueError("branch pairs must be drawn from {0, 1} x {0, 1}")
    rng = make_rng(cfg.seed)
    draws = rng.integers(0, pairs.shape[0], size=cfg.warmup + cfg.n_points, dtype=np.uint8)
    chosen = pairs[draws]
    w1 = inverse_walk(c.c_minus, z1, chosen[:, 0])[cfg.warmup:]
    w2 = inverse_walk(c.c_plus, z2, chosen[:, 1])[cfg.warmup:]
    return PointCloud4D.uniform(from_idempotent_arrays(w1, w2), Tag.JXJ, **meta)


class DendriteVerdict(str, enum.Enum):
    DENDRITE_CONSISTENT = "dendrite-consistent"
    NOT_DENDRITE = "not-dendrite"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class DendriteReport:
    verdict: DendriteVerdict
    comp1: DendriteVerdict
    comp2: DendriteVerdict
    inside_counts: tuple[int, int]


def _all_in_window(mask: np.ndarray, size: int) -> np.ndarray:
    r = size // 2
    padded = np.pad(mask, r, constant_values=False)
    win = np.lib.stride_tricks.sliding_window_view(padded, (size, size))
    return win.all(axis=(2, 3))


def component_dendrite_verdict(mask: np.ndarray) -> DendriteVerdict:
    """Grid heuristic for an empty-interior filled Julia set.

    ``mask`` marks grid nodes inside ``K_c``; nodes off the grid count as
    outside.  A node whose whole 5x5 block is inside is evidence of interior.
    If instead every inside node touches an outside node in its 3x3 block the
    sample looks like a set with empty interior.  An empty sample proves
    nothing either way.  The answer depends on the grid step and on
    ``max_iter``: points near a dendrite escape slowly and read as inside.
    """
    if not mask.any():
        return DendriteVerdict.INCONCLUSIVE
    if _all_in_window(mask, 5).any():
        return DendriteVerdict.NOT_DENDRITE
    if not _all_in_window(mask, 3).any():
        return DendriteVerdict.DENDRITE_CONSISTENT
    return DendriteVerdict.INCONCLUSIVE


def dendrite_heuristic(c, grid: GridSpec) -> DendriteReport:
    c = as_param(c)
    m1 = filled_julia_mask(c.c_minus, grid)
    m2 = m1 if c.c_plus == c.c_minus else filled_julia_mask(c.c_plus, grid)
    v1 = component_dendrite_verdict(m1)
    v2 = component_dendrite_verdict(m2)
    if v1 is DendriteVerdict.NOT_DENDRITE or v2 is DendriteVerdict.NOT_DENDRITE:
        overall = DendriteVerdict.NOT_DENDRITE
    elif v1 is v2 is DendriteVerdict.DENDRITE_CONSISTENT:
        overall = DendriteVerdict.DENDRITE_CONSISTENT
    else:
        overall = DendriteVerdict.INCONCLUSIVE
    return DendriteReport(overall, v1, v2, (int(m1.sum()), int(m2.sum())))

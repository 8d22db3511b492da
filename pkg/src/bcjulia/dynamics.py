"""One-variable dynamics of ``P_c(z) = z**2 + c``.

Forward and inverse iteration, fixed points with their classification, the
inverse iteration method (IIM) for Julia sets and an escape-time sampler for
filled-in Julia sets.
"""

from __future__ import annotations

import cmath
import enum
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from .bicomplex import csqrt

__all__ = [
    "CLASS_TOL",
    "MAX_TREE_DEPTH",
    "RNG_NAME",
    "FixedPointClass",
    "FixedPointInfo",
    "IimConfig",
    "GridSpec",
    "iterate_forward",
    "fixed_points",
    "choose_seed_point",
    "seed_fixed_point",
    "inverse_step",
    "iim",
    "inverse_walk",
    "inverse_tree_levels",
    "principal_sqrt_array",
    "make_rng",
    "default_escape_radius",
    "filled_julia_contains",
    "filled_julia_mask",
    "sample_filled_julia",
]

CLASS_TOL = 1e-12
MAX_TREE_DEPTH = 24
RNG_NAME = "numpy.random.PCG64"


class FixedPointClass(str, enum.Enum):
    ATTRACTIVE = "attractive"
    REPELLING = "repelling"
    INDIFFERENT = "indifferent"


@dataclass(frozen=True)
class FixedPointInfo:
    """A fixed point of ``P_c`` together with ``|P_c'(z0)| = |2*z0|``."""

    point: complex
    multiplier_mag: float
    kind: FixedPointClass

    @classmethod
    def classify(cls, z0: complex) -> FixedPointInfo:
        m = abs(2 * z0)
        if abs(m - 1.0) <= CLASS_TOL:
            kind = FixedPointClass.INDIFFERENT
        elif m < 1.0:
            kind = FixedPointClass.ATTRACTIVE
        else:
            kind = FixedPointClass.REPELLING
        return cls(complex(z0), m, kind)


@dataclass(frozen=True)
class IimConfig:
    """Parameters of an inverse-iteration run.

    ``mode="random"`` follows a single backward orbit, choosing the branch of
    the square root at random each step; ``warmup`` steps are dropped and the
    next ``n_points`` are kept.  ``mode="tree"`` expands every branch down to
    ``depth`` levels and keeps the levels below ``warmup``; the deepest level
    is always kept, so ``warmup >= depth`` returns leaves only.
    """

    seed: int = 0
    n_points: int = 100_000
    warmup: int = 20
    mode: str = "random"
    depth: int = 12

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.n_points < 1:
            raise ValueError(f"n_points must be >= 1, got {self.n_points}")
        if self.warmup < 0:
            raise ValueError(f"warmup must be >= 0, got {self.warmup}")
        if self.mode not in ("random", "tree"):
            raise ValueError(f"mode must be 'random' or 'tree', got {self.mode!r}")
        if self.mode == "tree" and not 1 <= self.depth <= MAX_TREE_DEPTH:
            raise ValueError(f"tree depth must be in [1, {MAX_TREE_DEPTH}], got {self.depth}")

    def recorded_levels(self) -> range:
        first = min(self.warmup, self.depth - 1) + 1
        return range(first, self.depth + 1)


@dataclass(frozen=True)
class GridSpec:
    x_min: float = -2.0
    x_max: float = 2.0
    y_min: float = -2.0
    y_max: float = 2.0
    nx: int = 401
    ny: int = 401
    max_iter: int = 200
    escape_radius: Optional[float] = None  # None: max(2, |c|) at sampling time

    def __post_init__(self):
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise ValueError("grid bounds must satisfy x_min < x_max and y_min < y_max")
        if self.nx < 2 or self.ny < 2:
            raise ValueError(f"grid needs at least 2 nodes per axis, got {self.nx}x{self.ny}")
        if self.max_iter < 0:
            raise ValueError(f"max_iter must be >= 0, got {self.max_iter}")
        if self.escape_radius is not None and not self.escape_radius >= 2:
            raise ValueError(f"escape_radius must be >= 2, got {self.escape_radius}")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / (self.nx - 1)

    @property
    def dy(self) -> float:
        return (self.y_max - self.y_min) / (self.ny - 1)

    @property
    def cell_diagonal(self) -> float:
        return float(np.hypot(self.dx, self.dy))

    def nodes(self) -> np.ndarray:
        """Grid nodes as an ``(ny, nx)`` complex array, row ``k`` at ``y_k``."""
        x = np.linspace(self.x_min, self.x_max, self.nx)
        y = np.linspace(self.y_min, self.y_max, self.ny)
        return x[np.newaxis, :] + 1j * y[:, np.newaxis]


def iterate_forward(c: complex, z: complex, n: int) -> Optional[complex]:
    """``P_c^n(z)``, or ``None`` if the orbit overflows to a non-finite value."""
    if n < 0:
        raise ValueError(f"iteration count must be >= 0, got {n}")
    c = complex(c)
    z = complex(z)
    for _ in range(n):
        z = z * z + c
        if not cmath.isfinite(z):
            return None
    return z


def fixed_points(c: complex) -> list[FixedPointInfo]:
    """Solutions of ``z**2 - z + c = 0``, classified by multiplier.

    For ``c == 1/4`` there is the single indifferent point ``1/2``; otherwise
    the two roots ``(1 - s)/2`` and ``(1 + s)/2`` with ``s`` the principal
    root of ``1 - 4c``, in that order.
    """
    c = complex(c)
    if c == 0.25:
        return [FixedPointInfo(0.5 + 0j, 1.0, FixedPointClass.INDIFFERENT)]
    s = csqrt(1 - 4 * c)
    # Re(s) >= 0, so (1 + s)/2 has no cancellation; the other root comes
    # from the product of roots being c.
    big = (1 + s) / 2
    return [FixedPointInfo.classify(c / big), FixedPointInfo.classify(big)]


def seed_fixed_point(c: complex) -> FixedPointInfo:
    """The fixed point used to start IIM; see :func:`choose_seed_point`."""
    fps = fixed_points(c)
    repelling = [f for f in fps if f.kind is FixedPointClass.REPELLING]
    if not repelling:
        # multipliers sum to 2, so this is c = 1/4 up to class_tol
        return fps[0]
    return min(repelling, key=lambda f: (-f.multiplier_mag, f.point.real, f.point.imag))


def choose_seed_point(c: complex) -> complex:
    """A point of the Julia set of ``P_c`` to start inverse iteration from.

    A repelling fixed point when one exists (the largest multiplier wins, then
    the lexicographically smallest ``(re, im)``), else the indifferent point.
    """
    return seed_fixed_point(c).point


def inverse_step(c: complex, z: complex, branch: int) -> complex:
    if branch not in (0, 1):
        raise ValueError(f"branch must be 0 or 1, got {branch}")
    r = csqrt(complex(z) - complex(c))
    return -r if branch else r


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def inverse_walk(c: complex, z0: complex, branches) -> np.ndarray:
    """Backward orbit of ``z0``; ``branches[k]`` selects the root at step ``k``.

    Returns every point visited after ``z0``.
    """
    branches = np.asarray(branches).tolist()
    out = np.empty(len(branches), dtype=complex)
    c = complex(c)
    z = complex(z0)
    sqrt = cmath.sqrt
    for k, s in enumerate(branches):
        d = z - c
        r = sqrt(complex(d.real, d.imag + 0.0))
        z = -r if s else r
        out[k] = z
    return out


def principal_sqrt_array(z: np.ndarray) -> np.ndarray:
    z = np.array(z, dtype=complex)
    z.imag += 0.0  # -0.0 -> +0.0 so the cut matches csqrt
    return np.sqrt(z)


def inverse_tree_levels(c: complex, z0: complex, depth: int) -> Iterator[np.ndarray]:
    """Yield ``P_c^{-k}(z0)`` for ``k = 1..depth`` as arrays of ``2**k`` points.

    Children of a node appear in branch order (0 then 1) next to each other.
    """
    level = np.array([complex(z0)])
    for _ in range(depth):
        r = principal_sqrt_array(level - complex(c))
        level = np.stack([r, -r], axis=1).ravel()
        yield level


def iim(c: complex, cfg: IimConfig) -> np.ndarray:
    """Sample the Julia set of ``P_c`` by inverse iteration.

    Parameters
    ----------
    c : complex
        Parameter of ``P_c``.
    cfg : IimConfig
        Seed, point budget, warm-up and mode.

    Returns
    -------
    numpy.ndarray
        Complex array of points.  In random mode its length is
        ``cfg.n_points``; in tree mode it holds every node of the recorded
        levels, level by level.

    Notes
    -----
    The walk starts from :func:`choose_seed_point`.  Random mode consumes one
    ``uint8`` draw of ``Generator.integers(0, 2)`` per step from a PCG64 generator
    seeded with ``cfg.seed``, so output is a pure function of ``(c, cfg)``.
    """
    z0 = choose_seed_point(c)
    if cfg.mode == "tree":
        keep = cfg.recorded_levels()
        levels = [lvl for k, lvl in enumerate(inverse_tree_levels(c, z0, cfg.depth), 1) if k in keep]
        return np.concatenate(levels)
    rng = make_rng(cfg.seed)
    branches = rng.integers(0, 2, size=cfg.warmup + cfg.n_points, dtype=np.uint8)
    return inverse_walk(c, z0, branches)[cfg.warmup:]


def default_escape_radius(c: complex) -> float:
    return max(2.0, abs(complex(c)))


def filled_julia_contains(c: complex, z: complex, max_iter: int = 200,
                          escape_radius: Optional[float] = None) -> bool:
    """Escape-time test for membership in the filled-in Julia set ``K_c``.

    True when ``|P_c^k(z)| <= escape_radius`` for every ``k <= max_iter``.
    """
    c = complex(c)
    bound = default_escape_radius(c)
    if escape_radius is None:
        escape_radius = bound
    elif escape_radius < bound:
        raise ValueError(f"escape_radius must be >= max(2, |c|) = {bound}, got {escape_radius}")
    z = complex(z)
    for _ in range(max_iter):
        if abs(z) > escape_radius:
            return False
        z = z * z + c
    return abs(z) <= escape_radius


def filled_julia_mask(c: complex, grid: GridSpec) -> np.ndarray:
    """Boolean ``(ny, nx)`` mask of grid nodes classified inside ``K_c``."""
    c = complex(c)
    radius = grid.escape_radius if grid.escape_radius is not None else default_escape_radius(c)
    radius = max(radius, default_escape_radius(c))
    z = grid.nodes().ravel()
    alive = np.flatnonzero(np.abs(z) <= radius)
    zs = z[alive]
    for _ in range(grid.max_iter):
        if alive.size == 0:
            break
        zs = zs * zs + c
        ok = np.abs(zs) <= radius
        alive = alive[ok]
        zs = zs[ok]
    mask = np.zeros(z.size, dtype=bool)
    mask[alive] = True
    return mask.reshape(grid.ny, grid.nx)


def sample_filled_julia(c: complex, grid: GridSpec) -> np.ndarray:
    """Grid nodes inside ``K_c``, in row-major order (``y`` outer, ``x`` inner)."""
    return grid.nodes()[filled_julia_mask(c, grid)]

"""Point samples of the boundary of bicomplex cartesian sets.

For ``X = X1 x_e X2`` the boundary is the union of ``dX1 x_e X2``,
``X1 x_e dX2`` and ``dX1 x_e dX2``.  With ``X_i = K`` (filled-in Julia set)
and ``dX_i = J`` (Julia set) this gives the bicomplex Julia set
``J(c_minus) x_e K(c_plus)  U  K(c_minus) x_e J(c_plus)``, where the
``J x_e J`` piece carries most of the visible structure.
"""

from __future__ import annotations

from dataclasses import replace

import numpy as np

from .bcdynamics import as_param
from .bicomplex import from_idempotent_arrays
from .cloud import PointCloud4D, Tag
from .dynamics import RNG_NAME, GridSpec, IimConfig, iim, make_rng, sample_filled_julia

__all__ = ["split_budget", "cartesian_combine", "build_product_boundary", "build_julia_boundary"]


def split_budget(budget: int) -> tuple[int, int, int]:
    """Shares for ``(JxJ, JxK, KxJ)``: half, then a quarter each.

    Integer rounding hands the remainder to ``KxJ``; the shares always sum to
    ``budget``.
    """
    jj = budget // 2
    jk = (budget - jj) // 2
    return jj, jk, budget - jj - jk


def _pair_indices(n_a: int, n_b: int, budget: int, rng: np.random.Generator):
    if n_a * n_b <= budget:
        ia = np.repeat(np.arange(n_a), n_b)
        ib = np.tile(np.arange(n_b), n_a)
        return ia, ib, 0
    ia = rng.integers(0, n_a, size=budget)
    ib = rng.integers(0, n_b, size=budget)
    duplicates = budget - np.unique(ia.astype(np.int64) * n_b + ib).size
    return ia, ib, int(duplicates)


def _combine(a, b, budget, rng):
    a = np.asarray(a, dtype=complex).ravel()
    b = np.asarray(b, dtype=complex).ravel()
    if a.size == 0 or b.size == 0:
        raise ValueError("cartesian_combine needs non-empty factor samples")
    if budget < 1:
        raise ValueError(f"budget must be >= 1, got {budget}")
    ia, ib, dups = _pair_indices(a.size, b.size, budget, rng)
    return from_idempotent_arrays(a[ia], b[ib]), dups


def cartesian_combine(a, b, budget: int, seed: int = 0) -> np.ndarray:
    """Points ``x*e1 + y*e2`` for ``(x, y)`` in ``a x b``.

    All pairs when ``len(a) * len(b) <= budget``; otherwise ``budget`` pairs
    drawn uniformly with replacement.  Returns an ``(N, 4)`` array.
    """
    points, _ = _combine(a, b, budget, make_rng(seed))
    return points


def build_product_boundary(x1, dx1, x2, dx2, budget: int, seed: int = 0) -> PointCloud4D:
    """Sample ``d(X1 x_e X2)`` from samples of each factor and its boundary.

    Pieces are tagged ``JXK`` for ``dX1 x_e X2``, ``KXJ`` for ``X1 x_e dX2``
    and ``JXJ`` for ``dX1 x_e dX2``, and emitted in that order.  The budget is
    split by :func:`split_budget`; a piece whose share rounds to zero is
    skipped.
    """
    for name, s in (("x1", x1), ("dx1", dx1), ("x2", x2), ("dx2", dx2)):
        if np.size(s) == 0:
            raise ValueError(f"{name} sample is empty")
    jj, jk, kj = split_budget(budget)
    ss = np.random.SeedSequence(seed)
    rngs = [np.random.Generator(np.random.PCG64(s)) for s in ss.spawn(3)]
    pieces = []
    dup_counts = {}
    for tag, (a, b), share, rng in (
        (Tag.JXK, (dx1, x2), jk, rngs[0]),
        (Tag.KXJ, (x1, dx2), kj, rngs[1]),
        (Tag.JXJ, (dx1, dx2), jj, rngs[2]),
    ):
        if share == 0:
            continue
        pts, dups = _combine(a, b, share, rng)
        pieces.append(PointCloud4D.uniform(pts, tag))
        dup_counts[tag.label] = dups
    meta = {
        "budget": budget,
        "budget_split": {"JxJ": jj, "JxK": jk, "KxJ": kj},
        "combine_seed": seed,
        "rng": RNG_NAME,
        "duplicate_pairs": dup_counts,
    }
    return PointCloud4D.concatenate(pieces, meta)


def build_julia_boundary(c, iim_cfg: IimConfig, grid: GridSpec, budget: int) -> PointCloud4D:
    """Sample the bicomplex Julia set of ``w**2 + c``.

    Julia-set factors come from :func:`~bcjulia.dynamics.iim`, filled-set
    factors from the escape-time grid.  The two IIM runs and the pair
    sampling use seeds spawned from ``iim_cfg.seed``; when both projections
    of ``c`` coincide the factor samples are computed once.
    """
    c = as_param(c)
    seed1, seed2, combine_seed = (
        int(s) for s in np.random.SeedSequence(iim_cfg.seed).generate_state(3, np.uint64)
    )
    j1 = iim(c.c_minus, replace(iim_cfg, seed=seed1))
    k1 = sample_filled_julia(c.c_minus, grid)
    if c.c_plus == c.c_minus:
        j2, k2 = j1, k1
    else:
        j2 = iim(c.c_plus, replace(iim_cfg, seed=seed2))
        k2 = sample_filled_julia(c.c_plus, grid)
    if k1.size == 0 or k2.size == 0:
        raise ValueError(
            "filled Julia set sample is empty on this grid "
            f"(|K(c_minus)|={k1.size}, |K(c_plus)|={k2.size}); refine the grid"
        )
    cloud = build_product_boundary(k1, j1, k2, j2, budget, combine_seed)
    cloud.meta.update(
        iim_seed=iim_cfg.seed,
        iim_subseeds=[seed1, seed2],
        factor_sizes={"J1": int(j1.size), "J2": int(j2.size), "K1": int(k1.size), "K2": int(k2.size)},
    )
    return cloud

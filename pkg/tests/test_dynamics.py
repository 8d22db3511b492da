import cmath

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bcjulia.bicomplex import csqrt
from bcjulia.dynamics import (
    FixedPointClass,
    GridSpec,
    IimConfig,
    choose_seed_point,
    filled_julia_contains,
    filled_julia_mask,
    fixed_points,
    iim,
    inverse_step,
    iterate_forward,
    principal_sqrt_array,
    sample_filled_julia,
)
from oracles import quadratic_roots

small = st.floats(-2, 2, allow_nan=False)
complexes = st.builds(complex, small, small)


def test_iterate_forward_examples():
    assert iterate_forward(0, 2, 3) == 256
    assert iterate_forward(1j, 0, 2) == -1 + 1j
    assert iterate_forward(0.25, 0.5, 50) == 0.5
    assert iterate_forward(1 + 1j, 0.3 - 0.2j, 0) == 0.3 - 0.2j


def test_iterate_forward_flags_overflow():
    assert iterate_forward(0, 10, 20) is None
    with pytest.raises(ValueError):
        iterate_forward(0, 1, -1)


def test_fixed_points_parabolic():
    (fp,) = fixed_points(0.25)
    assert fp.point == 0.5
    assert fp.multiplier_mag == 1.0
    assert fp.kind is FixedPointClass.INDIFFERENT


def test_fixed_points_zero():
    fps = fixed_points(0)
    assert [(f.point, f.multiplier_mag, f.kind) for f in fps] == [
        (0, 0, FixedPointClass.ATTRACTIVE),
        (1, 2, FixedPointClass.REPELLING),
    ]


def test_fixed_points_i():
    fps = fixed_points(1j)
    expected = quadratic_roots(1j)
    assert len(fps) == 2
    for f in fps:
        assert min(abs(f.point - e) for e in expected) < 1e-15
        assert abs(f.point**2 + 1j - f.point) < 1e-12
        assert f.multiplier_mag == pytest.approx(abs(2 * f.point))
    # |2z| for both roots exceeds 1: both repelling
    assert all(f.kind is FixedPointClass.REPELLING for f in fps)


@given(complexes)
def test_fixed_point_residuals_and_classes(c):
    fps = fixed_points(c)
    for f in fps:
        assert abs(f.point**2 + c - f.point) <= 1e-12 * max(1.0, abs(c))
        if f.kind is FixedPointClass.REPELLING:
            assert f.multiplier_mag > 1
        elif f.kind is FixedPointClass.ATTRACTIVE:
            assert f.multiplier_mag < 1
        else:
            assert abs(f.multiplier_mag - 1) <= 1e-12
    if c != 0.25 and all(abs(f.multiplier_mag - 1) > 1e-12 for f in fps):
        assert any(f.kind is FixedPointClass.REPELLING for f in fps)


def test_choose_seed_point():
    assert choose_seed_point(0.25) == 0.5
    assert choose_seed_point(0) == 1
    z = choose_seed_point(1j)
    assert abs(2 * z) > 1
    # the root with the larger multiplier
    assert abs(z - max(quadratic_roots(1j), key=abs)) < 1e-15


def test_seed_tie_break_prefers_smaller_real_part():
    # c = 1/4 + t^2 gives roots 1/2 +- i t, equal multipliers; pick (re, im) smallest
    c = 0.25 + 0.09
    z = choose_seed_point(c)
    assert abs(z - (0.5 - 0.3j)) < 1e-15


@pytest.mark.parametrize("c, z, branch, expected", [(0, 4, 0, 2), (0, 4, 1, -2), (0.25, 0.5, 0, 0.5)])
def test_inverse_step_examples(c, z, branch, expected):
    assert inverse_step(c, z, branch) == expected


@given(complexes, complexes, st.sampled_from([0, 1]))
def test_inverse_then_forward_is_identity(c, z, branch):
    w = inverse_step(c, z, branch)
    assert abs(iterate_forward(c, w, 1) - z) <= 1e-12 * max(1.0, abs(z))


def test_principal_sqrt_array_matches_scalar():
    rng = np.random.default_rng(3)
    z = rng.normal(size=500) + 1j * rng.normal(size=500)
    z[:5] = [-4, complex(-4, -0.0), 0, -1e-300, complex(-2, -0.0)]
    got = principal_sqrt_array(z)
    assert np.array_equal(got, np.array([csqrt(v) for v in z]))


def test_iim_unit_circle():
    pts = iim(0, IimConfig(seed=1, n_points=10_000, warmup=20))
    assert pts.size == 10_000
    assert np.max(np.abs(np.abs(pts) - 1)) < 1e-9
    bins = np.floor((np.angle(pts) + np.pi) / (2 * np.pi) * 64).astype(int) % 64
    assert np.unique(bins).size == 64


def test_iim_parabolic_points_are_bounded():
    pts = iim(0.25, IimConfig(seed=7, n_points=5000))
    assert np.all(np.abs(pts) <= 2)
    for z in pts[::10]:
        for _ in range(10):
            z = z * z + 0.25
            assert abs(z) <= 2 + 1e-6


def test_iim_dendrite_bbox():
    pts = iim(1j, IimConfig(seed=3, n_points=20_000))
    assert pts.size == 20_000
    assert np.all(np.abs(pts.real) <= 2) and np.all(np.abs(pts.imag) <= 2)


def test_iim_is_deterministic():
    cfg = IimConfig(seed=12345, n_points=3000)
    a = iim(-0.123 + 0.745j, cfg)
    b = iim(-0.123 + 0.745j, cfg)
    assert a.tobytes() == b.tobytes()
    assert iim(-0.123 + 0.745j, IimConfig(seed=12346, n_points=3000)).tobytes() != a.tobytes()


def test_iim_warmup_drops_prefix():
    full = iim(0.3j, IimConfig(seed=9, n_points=100, warmup=0))
    later = iim(0.3j, IimConfig(seed=9, n_points=80, warmup=20))
    assert np.array_equal(full[20:], later)


@pytest.mark.parametrize("c", [0, 0.25, 1j, -0.123 + 0.745j])
@pytest.mark.parametrize("depth", [1, 5, 10])
def test_tree_leaves_map_back_to_seed(c, depth):
    pts = iim(c, IimConfig(mode="tree", depth=depth, warmup=depth))
    seed = choose_seed_point(c)
    assert pts.size <= 2**depth
    for leaf in pts:
        assert abs(iterate_forward(c, leaf, depth) - seed) <= 1e-8 * max(1.0, abs(seed))


def test_tree_records_levels_past_warmup():
    pts = iim(0, IimConfig(mode="tree", depth=6, warmup=3))
    assert pts.size == 2**4 + 2**5 + 2**6


def test_config_validation():
    with pytest.raises(ValueError):
        IimConfig(n_points=0)
    with pytest.raises(ValueError):
        IimConfig(warmup=-1)
    with pytest.raises(ValueError):
        IimConfig(mode="tree", depth=25)
    with pytest.raises(ValueError):
        IimConfig(mode="bfs")
    with pytest.raises(ValueError):
        IimConfig(seed=-1)
    with pytest.raises(ValueError):
        GridSpec(x_min=1, x_max=0)
    with pytest.raises(ValueError):
        GridSpec(nx=1)
    with pytest.raises(ValueError):
        GridSpec(escape_radius=1.5)


def test_filled_julia_contains_examples():
    assert filled_julia_contains(0, 0.5, 100, 2)
    assert not filled_julia_contains(0, 1.5, 100, 2)
    assert filled_julia_contains(0.25, 0.5, 100, 2)
    with pytest.raises(ValueError):
        filled_julia_contains(3, 0, 100, 2)


def test_mask_agrees_with_scalar_test():
    grid = GridSpec(nx=41, ny=37, max_iter=60)
    c = -0.123 + 0.745j
    mask = filled_julia_mask(c, grid)
    nodes = grid.nodes()
    expected = np.vectorize(lambda z: filled_julia_contains(c, z, 60))(nodes)
    assert np.array_equal(mask, expected)


def test_sample_filled_julia_unit_disk():
    grid = GridSpec(nx=101, ny=101, max_iter=100)
    inside = set(sample_filled_julia(0, grid).tolist())
    nodes = grid.nodes().ravel()
    disk = {z for z in nodes.tolist() if abs(z) <= 1}
    mismatched = inside.symmetric_difference(disk)
    assert all(abs(abs(z) - 1) <= grid.cell_diagonal for z in mismatched)


def test_sample_filled_julia_cantor_case_is_sparse():
    grid = GridSpec(nx=101, ny=101, max_iter=100)
    assert sample_filled_julia(4, grid).size < 0.01 * 101 * 101


def test_sample_filled_julia_parabolic_contains_half():
    grid = GridSpec()
    pts = sample_filled_julia(0.25, grid)
    nodes = grid.nodes().ravel()
    nearest = nodes[np.argmin(np.abs(nodes - 0.5))]
    assert pts.size > 0
    assert nearest in pts


def test_sample_order_is_row_major():
    grid = GridSpec(nx=21, ny=21, max_iter=50)
    pts = sample_filled_julia(0, grid)
    keys = [(z.imag, z.real) for z in pts]
    assert keys == sorted(keys)
    assert cmath.isclose(pts[0], complex(0, -1), abs_tol=1e-12)

"""Complex and bicomplex Julia sets by inverse iteration."""

__version__ = "0.1.0"

from .bicomplex import (  # noqa: E402
    E1,
    E2,
    I1,
    I2,
    J,
    ONE,
    Bicomplex,
    Discus,
    IdempotentPair,
    NonFiniteError,
    ball_contains,
    discus_contains,
    from_idempotent,
    is_null_cone,
    is_null_cone_eps,
    mul,
    norm,
    power,
    sqrt_branches,
    to_idempotent,
)
from .bcdynamics import (  # noqa: E402
    BicomplexFixedPoint,
    BicomplexParam,
    DendriteVerdict,
    bc_fixed_points,
    bc_inverse_step,
    dendrite_heuristic,
    iim_bicomplex,
    iterate_forward_bc,
    seed_in_JxJ,
)
from .boundary import build_julia_boundary, build_product_boundary, cartesian_combine  # noqa: E402
from .cloud import PointCloud4D, Tag  # noqa: E402
from .dynamics import (  # noqa: E402
    FixedPointClass,
    FixedPointInfo,
    GridSpec,
    IimConfig,
    choose_seed_point,
    filled_julia_contains,
    fixed_points,
    iim,
    inverse_step,
    iterate_forward,
    sample_filled_julia,
)
from .slicing import SliceSpec, export_csv, export_ply, export_xyz, read_csv, slice3d, stats  # noqa: E402

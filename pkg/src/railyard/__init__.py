"""Random dimer coverings of rail-yard graphs with doubly free boundaries:
exact partition functions, a reflection-sweep sampler, and scaling-limit
numerics (density, frozen boundary, Laplace-transform cross-checks).
"""

__version__ = "1.0.0"

from .asymptotics import (
    AssumptionViolation,
    AsymptoticParams,
    FrozenBoundaryPoint,
    RationalFunction,
    build_rational,
    density,
    f_uvk,
    frozen_boundary,
    g_chi,
    gf_product,
    indicator,
    laplace_check,
    limit_height_profile,
    slice_critical_points,
    solve_w_plus,
)
from .graphs import (
    CoveringState,
    RailYardGraph,
    StructuralError,
    charge_of_covering,
    diagonal_count,
    height,
    laplace_height_check,
    step_relation,
    validate,
    weight,
)
from .partitions import (
    Partition,
    box_partitions,
    canon,
    conjugate,
    interlaces_h,
    interlaces_v,
    maya_decode,
    maya_positions,
    multiplicity,
)
from .render import render_svg
from .sampler import (
    ContractViolation,
    SamplerConfig,
    aa,
    ab,
    hh,
    hv,
    run_sweep,
    sample_boundary_seed,
    sample_many,
)
from .zfunction import (
    DivergenceError,
    EnumerationBound,
    brute_force_z,
    exact_distribution,
    z_free_empty,
    z_free_free,
    z_pair,
    z_pure,
)

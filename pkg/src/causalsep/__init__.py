"""Separators and covariate-adjustment sets in causal graphs."""

from ._kernels import KERNEL_BACKEND
from .adjustment import (
    dpcp,
    enumerate_adjustments,
    find_adjustment,
    pcp,
    pearl_backdoor,
    proper_backdoor_graph,
    test_adjustment,
)
from .basis import BasisClaim, basis_stats, parental_basis, sparse_basis
from .enumeration import list_min_sep, list_sep
from .experiments import (
    ExperimentConfig,
    ExperimentRow,
    mark_roles,
    random_dag,
    render_csv,
    run_experiment,
)
from .graph import (
    EDGE_KINDS,
    GraphDoc,
    MixedGraph,
    augment,
    closure,
    induced_subgraph,
    parse_graph,
    reduce_constraints,
    serialize_graph,
    transform,
    validate,
)
from .identify import (
    IdentFormula,
    classify,
    identify_effect,
    parent_adjustment,
    partition_effect,
    plain_formula_applies,
)
from .mag import (
    canonical_dag,
    dag_to_mag,
    edge_visible,
    inducing_path_exists,
    mag_adjustment,
    test_amenability,
)
from .separation import (
    ANY,
    I_MINIMAL,
    I_MINIMUM,
    STRONG_MINIMUM,
    SepQuery,
    find_min_cost_sep,
    find_min_sep,
    find_sep,
    min_vertex_cut,
    test_min_sep,
    test_sep,
)

__version__ = "0.1.0"

__all__ = [
    "EDGE_KINDS",
    "GraphDoc",
    "MixedGraph",
    "KERNEL_BACKEND",
    "augment",
    "closure",
    "induced_subgraph",
    "parse_graph",
    "reduce_constraints",
    "serialize_graph",
    "transform",
    "validate",
    "ANY",
    "I_MINIMAL",
    "I_MINIMUM",
    "STRONG_MINIMUM",
    "SepQuery",
    "find_min_cost_sep",
    "find_min_sep",
    "find_sep",
    "min_vertex_cut",
    "test_min_sep",
    "test_sep",
    "list_min_sep",
    "list_sep",
    "dpcp",
    "enumerate_adjustments",
    "find_adjustment",
    "pcp",
    "pearl_backdoor",
    "proper_backdoor_graph",
    "test_adjustment",
    "canonical_dag",
    "dag_to_mag",
    "edge_visible",
    "inducing_path_exists",
    "mag_adjustment",
    "test_amenability",
    "IdentFormula",
    "classify",
    "identify_effect",
    "parent_adjustment",
    "partition_effect",
    "plain_formula_applies",
    "BasisClaim",
    "basis_stats",
    "parental_basis",
    "sparse_basis",
    "ExperimentConfig",
    "ExperimentRow",
    "mark_roles",
    "random_dag",
    "render_csv",
    "run_experiment",
    "__version__",
]

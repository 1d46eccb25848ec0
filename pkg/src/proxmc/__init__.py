"""proxmc: exact verification toolkit for finite proximity spaces.

Decides axiom conformance, proximal continuity, homotopy, covering maps,
and homotopy lifting/extension properties by search and fixpoint
computation, and bundles worked fixtures exercising every capability.
"""

from .core import (
    AxiomReport,
    AxiomVerdict,
    CECH_LABEL,
    EF_LABEL,
    KuratowskiReport,
    NOT_PROXIMITY_LABEL,
    Space,
    check_axioms,
    closure,
    coproduct_space,
    discrete_space,
    graph_components,
    indiscrete_space,
    is_delta_neighborhood,
    kuratowski_check,
    metric_space,
    near,
    nbr_mask,
    neighborhood_lattice_check,
    product_space,
    space_from_matrix,
    space_from_pairs,
    space_from_table,
    subspace,
)

__all__ = [
    "AxiomReport",
    "AxiomVerdict",
    "CECH_LABEL",
    "EF_LABEL",
    "KuratowskiReport",
    "NOT_PROXIMITY_LABEL",
    "Space",
    "check_axioms",
    "closure",
    "coproduct_space",
    "discrete_space",
    "graph_components",
    "indiscrete_space",
    "is_delta_neighborhood",
    "kuratowski_check",
    "metric_space",
    "near",
    "nbr_mask",
    "neighborhood_lattice_check",
    "product_space",
    "space_from_matrix",
    "space_from_pairs",
    "space_from_table",
    "subspace",
]

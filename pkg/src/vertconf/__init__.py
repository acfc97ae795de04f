"""Ray-partition enumeration and exact geometry for vertical configuration spaces."""
__version__ = "0.1.0"

from .clusters import (
    Distribution,
    IrreduciblePartition,
    LabeledConfiguration,
    enumerate_distributions,
    enumerate_irreducible,
    insertion_map,
    load_labeled,
    orientation_character,
    stability_range,
    standard_group,
)
from .enumeration import (
    BettiTable,
    PoincarePolynomial,
    arnold_reference_polynomial,
    betti_table,
    closed_form_r3,
    component_tables,
    conjecture_scan,
    enumerate_ray_partitions,
)
from .errors import SizeGuard, VertconfError
from .geometry import (
    VerticalConfiguration,
    analyze,
    component_of,
    dexterity,
    greedy_ray_partition,
    load_configuration,
    stabilise_configuration,
    validate_configuration,
    witnesses,
)
from .partitions import (
    ClusterShape,
    ComponentLabel,
    RayPartition,
    TableIndex,
    WeightVector,
    ray_partition_stats,
    validate_ray_partition,
)

__all__ = [name for name in dir() if not name.startswith("_")]

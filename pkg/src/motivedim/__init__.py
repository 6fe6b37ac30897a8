"""motivedim: dimension of the motivic Galois group of a semi-elliptic
1-motive, computed from its defining lattice, points and exponents."""

__version__ = "0.1.0"

from .config import Bounds, DEFAULT_BOUNDS
from .elliptic import (Lattice, eta_map, make_lattice, quasi_periods,
                       reduce_point, serre_f, sigma, wp, zeta)
from .endo import (EndoField, KElement, compute_tor, detect_cm,
                   is_antisymmetric, k_basis_extraction, k_coefficient)
from .errors import (BudgetExceeded, ChartSingularity, DegenerateLattice,
                     InternalInconsistency, MotivedimError, ParseError,
                     PoleAtLatticePoint, PrecisionTooLow, ValidationError)
from .motive import (GPointCoords, MotiveSpec, exp_G_coords,
                     gpoint_is_torsion, is_torsion_log, mult_rank_gpoints,
                     mult_rank_units)
from .classify import PairClassification, Partition, build_partition, classify_pair
from .dimension import (DimensionReport, PeriodReport, conjecture_report,
                        dim_abelian_part, dim_motivic_galois,
                        dim_torus_quotient, dim_torus_zprime, per_pair_table)
from .oracle import MotiveOracle
from .relations import (RelationLattice, RelationQuery, bruteforce_relations,
                        find_relation, rank_modulo, relation_lattice)

__all__ = [
    "Bounds", "DEFAULT_BOUNDS", "__version__",
    "Lattice", "make_lattice", "reduce_point", "wp", "zeta", "sigma",
    "quasi_periods", "eta_map", "serre_f",
    "EndoField", "KElement", "detect_cm", "k_coefficient",
    "is_antisymmetric", "k_basis_extraction", "compute_tor",
    "MotiveSpec", "GPointCoords", "exp_G_coords", "is_torsion_log",
    "gpoint_is_torsion", "mult_rank_gpoints", "mult_rank_units",
    "PairClassification", "Partition", "classify_pair", "build_partition",
    "DimensionReport", "PeriodReport", "dim_abelian_part",
    "dim_torus_zprime", "dim_torus_quotient", "dim_motivic_galois",
    "per_pair_table", "conjecture_report",
    "MotiveOracle",
    "RelationQuery", "RelationLattice", "find_relation", "relation_lattice",
    "rank_modulo", "bruteforce_relations",
    "MotivedimError", "DegenerateLattice", "PoleAtLatticePoint",
    "ChartSingularity", "PrecisionTooLow", "BudgetExceeded",
    "InternalInconsistency", "ValidationError", "ParseError",
]

"""Discretized point-hyperplane incidence experiments.

Counting I_{C delta}(P, Pi) between separated point and hyperplane
families, regularity (dimension) diagnostics for such families, the sharp
product constructions, closed-form bound evaluators, and the thin-box
cover of a slab intersection, with a harness and CLI tying them together.
"""

from ._version import __version__
from .bounds import (BoundValue, ComparisonRange, comparison_range,
                     cs_bound_exponent, dov_bound, main_bound, thm2d_exponent)
from .constructions import (ConstructionSpec, construct_grid, construct_random,
                            construct_sharp, construct_sharp_2d, lift_to_dim)
from .cover import (Box, BoxCover, CoverageReport, slab_intersection_cover,
                    verify_cover)
from .family import Family, read_family, write_family
from .geometry import (affine_metric, code_coordinates, code_metric,
                       dual_plane, dual_point, incidence_mask,
                       incidence_predicate, phong_stein_determinant,
                       phong_stein_matrix, point_plane_distance)
from .harness import ExperimentConfig, Report, SweepResult, run_experiment, sweep
from .incidence import (AnnulusPartition, IncidenceReport, annulus_growth_check,
                        annulus_partition, count_incidences_fast,
                        count_incidences_oracle)
from .regularity import (RegularityReport, best_dimension, covering_number,
                         katz_tao_constant, min_separation, regularity_constant)

__all__ = [
    "__version__",
    "AnnulusPartition", "Box", "BoxCover", "BoundValue", "ComparisonRange",
    "ConstructionSpec", "CoverageReport", "ExperimentConfig", "Family",
    "IncidenceReport", "RegularityReport", "Report", "SweepResult",
    "affine_metric", "annulus_growth_check", "annulus_partition",
    "best_dimension", "code_coordinates", "code_metric", "comparison_range",
    "construct_grid", "construct_random", "construct_sharp",
    "construct_sharp_2d", "count_incidences_fast", "count_incidences_oracle",
    "covering_number", "cs_bound_exponent", "dov_bound", "dual_plane",
    "dual_point", "incidence_mask", "incidence_predicate", "katz_tao_constant",
    "lift_to_dim", "main_bound", "min_separation", "phong_stein_determinant",
    "phong_stein_matrix", "point_plane_distance", "read_family",
    "regularity_constant", "run_experiment", "slab_intersection_cover",
    "sweep", "thm2d_exponent", "verify_cover", "write_family",
]

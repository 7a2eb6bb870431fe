"""Vertex adjacency on the set covering polyhedron and minimally nonideal matrices.

Everything is exact: supports are frozensets of 1-based column indices and all
polyhedral arithmetic runs over ``fractions.Fraction``.
"""

from .blocker import (blocker_clutter, is_minimal_transversal, is_transversal,
                      minimal_transversals, transversals_brute_force)
from .core import (AssumptionsReport, BinaryMatrix, BinaryPoint, CircularArc, Clutter, arc,
                   arc_contains, as_point, circulant, clutterize, consecutive_ones_circulant,
                   degenerate_projective_plane, format_matrix, is_circular_support,
                   is_row_circular, parse_matrix, random_row_circular_clutter, read_matrix,
                   validate_assumptions)
from .errors import (BadIndexSet, BadParameters, CoverAdjError, DependentInequality, EmptyRow,
                     InternalInconsistency, MatrixFormatError, NotAVertex, NotRowCircular,
                     ResourceLimit, WrongRowSizes)
from .exactla import (DEFAULT_RAY_CAP, Relation, VRepresentation, double_description,
                      double_description_system, lp_feasible, rank, relation)
from .mni import (Core, MniCertificate, MniReport, certify_mni, check_mni, cn94_matrix, cn94_row,
                  cyclic_vertex_test, find_core, is_mni_by_definition, lehman_identity,
                  three_nu_family, three_nu_rows, w_and_u_vertices)
from .oracle import (AdjacencyStructure, add_inequality, build_adjacency_structure,
                     build_structure_for_system, convex_combination_certificate, hull_adjacent,
                     relaxation_adjacent)
from .satgraph import (AdjacencyVerdict, Component, ComponentKind, GraphClassification,
                       NonAdjacencyWitness, SaturationGraph, Status, adjacency_row_circular,
                       adjacency_sufficient, adjacency_two_ones, check_witness, classify,
                       contraction_minor, project_pair, saturation_graph)

__version__ = "0.1.0"

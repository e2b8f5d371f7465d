"""Exact computations with abstract GKM graphs.

Graph cohomology, face posets, ABFP-type complexes, label extensions and
face rings, over Q or Z, with plain Python integers and fractions.
"""

from .catalog import catalog, cp4_projected, cpn_torus, fig3, flag_su3
from .cohomology import (CohomologyClass, cohomology_basis, freeness_probe, hilbert_function,
                         kernel_ideal_check, module_generators, restriction_map, thom_class)
from .abfp import build_abfp, check_cochain, homology_at, sign_independence_check
from .extension import (check_extension, facet_normals, lift_to_tgraph, search_extension,
                        tgraph_from_characteristic)
from .facering import (check_facemap_iso, check_simplicial_opposite, face_ring_hilbert,
                       straighten, theorem2_quotient_check)
from .faces import Face, FacePoset, enumerate_faces, face_ideal, face_poset, solve_signs
from .graph import (GkmError, GkmGraph, TGraph, check_congruence, check_effectivity,
                    gkm_independence_level, unique_compatible_connection, validate_graph,
                    validate_tgraph)
from .poly import Polynomial, divide_by_linear

__version__ = "0.1.0"

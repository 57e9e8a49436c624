"""Poincaré series of generalized divisorial filtrations on plane curve singularities."""

__version__ = "0.1.0"

from .newton import (Facet, LatticePoint, LaurentPoly, NewtonDiagram, build_diagram,
                     check_nondegenerate, diagram_of, face_part, facet_value,
                     translated_facet_min)
from .orders import (Branch, BranchGroup, OrderValue, PowerSeries1, branch_order,
                     dehomogenize, face_divide, group_order, newton_order, puiseux_lift)
from .poincare import (FiltrationBox, JetSpace, compare, corollary_series, ijm_series,
                       jet_dim, oracle_series, theorem1_series)
from .resolution import (MultiplicityMatrix, ResolutionGraph, Vertex, chain_graph,
                         multiplicity_matrix, subdivide_fan, validate_graph)
from .series import (ProductForm, TruncatedSeries, equal_in_box, expand,
                     grid_sum_identity, multiply)

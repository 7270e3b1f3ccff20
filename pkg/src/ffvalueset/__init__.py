"""Value sets of polynomial maps over finite fields.

Exact GF(p^m) arithmetic, reduced polynomials and their degrees over
subfields, exhaustive images, and checks of the lower bound
n*h*(q-1)/deg_l on the number of values a non-surjective map misses.
"""

from .errors import FFError
from .finite_field import FieldElement, FieldSpec, make_field, parse_field
from .multipoly import NEG_INFINITY, MultiPoly, parse_poly
from .poly_map import ImageResult, PolyMap, image, parse_map
from .value_set_analysis import BoundReport, best_subfield_bound, verify_bound

__version__ = "0.1.0"

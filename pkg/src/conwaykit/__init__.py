"""Link invariants from Conway algebras, Kauffman algebras and supersignatures."""

from .poly import LaurentPoly, PolyError, make_vars, parse_poly
from .diagram import (DiagramError, LinkDiagram, braid_closure, from_pd, mirror, parse_braid, unknot,
                      unlink)
from .conway import (FiniteAlgebra, FiniteAlgebraTable, UndefinedOperationError, check_axioms, conway_poly,
                     evaluate, homfly, jones, three_var_invariant)
from .kauffman import jck, jck_tilde, kauffman_F, kauffman_L, q_polynomial
from .supersig import supersignature

__version__ = "0.1.0"

__all__ = [
    "LaurentPoly", "PolyError", "make_vars", "parse_poly",
    "DiagramError", "LinkDiagram", "braid_closure", "from_pd", "mirror", "parse_braid", "unknot", "unlink",
    "FiniteAlgebra", "FiniteAlgebraTable", "UndefinedOperationError", "check_axioms", "conway_poly",
    "evaluate", "homfly", "jones", "three_var_invariant",
    "jck", "jck_tilde", "kauffman_F", "kauffman_L", "q_polynomial",
    "supersignature",
]

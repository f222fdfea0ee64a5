"""Exact linear algebra for Rota-Baxter paired comodules and Hopf modules over Q and GF(p)."""

from .errors import (ConsistencyError, FieldMismatchError, HypothesisError, RBHopfError, SearchSpaceTooLarge,
                     ShapeError)
from .kernel import GF, QQ, Matrix, kron, parse_field, to_scalar
from .report import CheckEntry, CheckReport
from .structures import AlgebraStruct, BialgebraLike, Coalgebra, Functional
from .actions import Comodule, HopfModule, ModuleCarrier, ModuleCoalgebra
from .rotabaxter import (CONSTRUCTIONS, Construction, PairedOperator, RBCoalgebra, check_generic,
                         check_rb_coalgebra, check_rb_paired_comodule, check_rb_paired_module, construct)
from .prelie import PreLieCoalgebra, PreLieComodule, prelie_comodule_from_rb, prelie_from_rb_coalgebra
from .structure_theorem import verify_structure_theorem
from .search import SearchSpec, enumerate_rb_operators
from .zoo import load_zoo

__version__ = "0.1.0"

__all__ = [
    "AlgebraStruct", "BialgebraLike", "CONSTRUCTIONS", "CheckEntry", "CheckReport", "Coalgebra", "Comodule",
    "ConsistencyError", "Construction", "FieldMismatchError", "Functional", "GF", "HopfModule", "HypothesisError",
    "Matrix", "ModuleCarrier", "ModuleCoalgebra", "PairedOperator", "PreLieCoalgebra", "PreLieComodule", "QQ",
    "RBCoalgebra", "RBHopfError", "SearchSpaceTooLarge", "SearchSpec", "ShapeError", "check_generic",
    "check_rb_coalgebra", "check_rb_paired_comodule", "check_rb_paired_module", "construct",
    "enumerate_rb_operators", "kron", "load_zoo", "parse_field", "prelie_comodule_from_rb",
    "prelie_from_rb_coalgebra", "to_scalar", "verify_structure_theorem",
]

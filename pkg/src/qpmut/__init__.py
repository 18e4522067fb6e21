"""Quivers with potential: mutation, Jacobian algebras, representations and Coxeter word quivers.

All arithmetic is exact over the rationals.  Paths compose left to right, so
``ab`` means first ``a`` and then ``b``.
"""

from .errors import PreconditionError, QPMutError, StructuralError
from .linalg import Matrix
from .quiver import Arrow, Quiver, b_matrix, fz_mutate, quivers_isomorphic
from .paths import Substitution, TruncatedElement, cyclic_derivative, cyclic_normal_form, second_derivative
from .qp import QP, DEFAULT_TRUNCATION, mutate, premutate, split_reduce, validate_qp
from .jacobian import finiteness_certificate, rigidity_verdict, verify_presentation_complexes
from .representation import Representation, RepMorphism, mutate_rep, are_isomorphic
from .coxeter import CoxeterDatum, is_reduced_word, word_quiver, word_qp

__version__ = "0.1.0"

__all__ = [
    "Arrow", "CoxeterDatum", "DEFAULT_TRUNCATION", "Matrix", "PreconditionError", "QP", "QPMutError",
    "Quiver", "RepMorphism", "Representation", "StructuralError", "Substitution", "TruncatedElement",
    "are_isomorphic", "b_matrix", "cyclic_derivative", "cyclic_normal_form", "finiteness_certificate",
    "fz_mutate", "is_reduced_word", "mutate", "mutate_rep", "premutate", "quivers_isomorphic",
    "rigidity_verdict", "second_derivative", "split_reduce", "validate_qp", "verify_presentation_complexes",
    "word_qp", "word_quiver",
]

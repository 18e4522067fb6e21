"""Exception hierarchy.

Structural errors mean malformed input (bad endpoints, ragged matrices,
mismatched truncation).  Precondition errors mean well-formed input that an
operation refuses (a 2-cycle through the mutation vertex, a loop in a QP).
"""


class QPMutError(Exception):
    pass


class StructuralError(QPMutError, ValueError):
    pass


class PreconditionError(QPMutError, ValueError):
    pass

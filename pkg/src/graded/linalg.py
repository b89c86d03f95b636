"""Exact linear algebra on row lists, backed by sympy's DomainMatrix.

The reduced row echelon form of a matrix is unique, so every kernel, image
and preimage computed here is a deterministic function of its input.
"""
from typing import List, Optional, Sequence, Tuple
from sympy.polys.matrices import DomainMatrix
from src.graded.field import Field, FieldElement

Rows = List[List[FieldElement]]


def to_domain_matrix(rows: Sequence[Sequence[FieldElement]], ncols: int, field: Field) -> DomainMatrix:
    """Wrap a list of rows as a DomainMatrix over the field's domain."""
    return DomainMatrix([list(row) for row in rows], (len(rows), ncols), field.domain)


def rref(rows: Sequence[Sequence[FieldElement]], ncols: int, field: Field) -> Tuple[Rows, Tuple[int, ...]]:
    """Reduced row echelon form.

    Args:
        rows: Matrix rows, each of length ncols
        ncols: Number of columns
        field: Ground field

    Returns:
        Tuple of (nonzero rows of the RREF, pivot columns)
    """
    if not rows or ncols == 0:
        return [], ()
    reduced, pivots = to_domain_matrix(rows, ncols, field).rref()
    data = reduced.to_list()
    return [list(data[i]) for i in range(len(pivots))], tuple(pivots)


def rank(rows: Sequence[Sequence[FieldElement]], ncols: int, field: Field) -> int:
    return len(rref(rows, ncols, field)[1])


def matmul(left: Sequence[Sequence[FieldElement]], right: Sequence[Sequence[FieldElement]],
           inner: int, ncols: int, field: Field) -> Rows:
    """Product of an (m x inner) and an (inner x ncols) matrix."""
    if not left or ncols == 0:
        return [[field.zero] * ncols for _ in left]
    if inner == 0:
        return [[field.zero] * ncols for _ in left]
    product = to_domain_matrix(left, inner, field) * to_domain_matrix(right, ncols, field)
    return [list(row) for row in product.to_list()]


def mat_vec(rows: Sequence[Sequence[FieldElement]], vector: Sequence[FieldElement], field: Field) -> List[FieldElement]:
    """Apply a matrix to a coordinate vector."""
    column = matmul(rows, [[x] for x in vector], len(vector), 1, field)
    return [row[0] for row in column]


def transpose(rows: Sequence[Sequence[FieldElement]], ncols: int) -> Rows:
    return [[row[j] for row in rows] for j in range(ncols)]


def solve(rows: Sequence[Sequence[FieldElement]], ncols: int, rhs: Sequence[FieldElement],
          field: Field) -> Optional[List[FieldElement]]:
    """Echelon preimage of rhs: free variables are set to zero.

    Returns:
        The solution vector, or None if the system is inconsistent
    """
    if ncols == 0:
        return [] if all(field.is_zero(b) for b in rhs) else None
    if not rows:
        return [field.zero] * ncols
    augmented = [list(row) + [b] for row, b in zip(rows, rhs)]
    reduced, pivots = rref(augmented, ncols + 1, field)
    if ncols in pivots:
        return None
    solution = [field.zero] * ncols
    for i, p in enumerate(pivots):
        solution[p] = reduced[i][ncols]
    return solution


def nullspace(rows: Sequence[Sequence[FieldElement]], ncols: int, field: Field) -> Rows:
    """Standard kernel basis: one vector per free column, in column order."""
    reduced, pivots = rref(rows, ncols, field)
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        vector = [field.zero] * ncols
        vector[free] = field.one
        for i, p in enumerate(pivots):
            vector[p] = -reduced[i][free]
        basis.append(vector)
    return basis


def is_zero_vector(vector: Sequence[FieldElement], field: Field) -> bool:
    return all(field.is_zero(x) for x in vector)

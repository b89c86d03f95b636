"""Cochain complexes: cohomology bases and coboundary solving."""
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple
from src.graded.field import Field, FieldElement
from src.graded.linalg import Rows, is_zero_vector, mat_vec, nullspace, rref, solve, transpose
from src.graded.spaces import GradedMap, GradedSpace, GradedVector, apply_graded_map
from src.utils.errors import NotCoboundary, NotCocycle, ShapeError, ValidationError
from src.utils.logger import get_logger

logger = get_logger("graded.complexes")


class Complex:
    """A graded space with a degree +1 differential squaring to zero."""

    def __init__(self, space: GradedSpace, differential: GradedMap, check: bool = True):
        """Build a complex.

        Args:
            space: Underlying graded space
            differential: Map of shift +1 from space to itself
            check: Verify d o d = 0 in every degree

        Raises:
            ShapeError: If the differential has the wrong shape
            ValidationError: If d o d is nonzero in some degree
        """
        if differential.shift != 1 or differential.source != space or differential.target != space:
            raise ShapeError("differential must be a shift +1 endomorphism of the space")
        self.space = space
        self.differential = differential
        self.field = differential.field
        if check:
            bad = self.check_d_squared()
            if bad:
                raise ValidationError("d-squared", (f"degree {bad[0]}",))

    @classmethod
    def zero_differential(cls, space: GradedSpace, field: Field) -> "Complex":
        return cls(space, GradedMap(space, space, 1, {}, field), check=False)

    def d_matrix(self, degree: int) -> Rows:
        """Matrix of d from degree j to degree j + 1."""
        return self.differential.block(degree)

    def d(self, v: GradedVector) -> GradedVector:
        return apply_graded_map(self.differential, v)

    def check_d_squared(self) -> List[int]:
        """Degrees in which d o d is not the zero matrix."""
        square = self.differential.then(self.differential)
        return [j for j in self.space.degrees()
                if not all(is_zero_vector(row, self.field) for row in square.block(j))]

    def min_degree(self) -> Optional[int]:
        return self.space.min_degree()

    def is_cocycle(self, degree: int, coords: Sequence[FieldElement]) -> bool:
        if self.space.dim(degree + 1) == 0:
            return True
        return is_zero_vector(mat_vec(self.d_matrix(degree), coords, self.field), self.field)


@dataclass(frozen=True)
class CohomologyBasis:
    """Canonical basis of H^j of a complex.

    ``representatives`` are the nonzero rows of the RREF of the normal forms of
    the cocycle basis; ``class_of`` reads the normal form of a cocycle at the
    pivot columns of the representatives.
    """

    complex: Complex
    degree: int
    representatives: Tuple[Tuple[FieldElement, ...], ...]
    rep_pivots: Tuple[int, ...]
    boundary_rows: Tuple[Tuple[FieldElement, ...], ...]
    boundary_pivots: Tuple[int, ...]

    @property
    def dimension(self) -> int:
        return len(self.representatives)

    @property
    def field(self) -> Field:
        return self.complex.field

    def normal_form(self, coords: Sequence[FieldElement]) -> List[FieldElement]:
        """Reduce a vector modulo the coboundaries."""
        reduced = list(coords)
        for row, pivot in zip(self.boundary_rows, self.boundary_pivots):
            factor = reduced[pivot]
            if not self.field.is_zero(factor):
                reduced = [x - factor * r for x, r in zip(reduced, row)]
        return reduced

    def class_of(self, coords: Sequence[FieldElement]) -> List[FieldElement]:
        """Coordinates of the class of a cocycle in the representative basis.

        Raises:
            NotCocycle: If the vector is not closed
        """
        if len(coords) != self.complex.space.dim(self.degree):
            raise ShapeError(f"expected {self.complex.space.dim(self.degree)} coordinates")
        if not self.complex.is_cocycle(self.degree, coords):
            raise NotCocycle(list(coords), f"degree {self.degree}")
        reduced = self.normal_form(coords)
        return [reduced[p] for p in self.rep_pivots]

    def element_of(self, class_coords: Sequence[FieldElement]) -> List[FieldElement]:
        """The cocycle sum of c_i times representative_i."""
        if len(class_coords) != self.dimension:
            raise ShapeError(f"expected {self.dimension} class coordinates")
        out = [self.field.zero] * self.complex.space.dim(self.degree)
        for c, rep in zip(class_coords, self.representatives):
            out = [x + c * r for x, r in zip(out, rep)]
        return out

    def is_exact(self, coords: Sequence[FieldElement]) -> bool:
        return is_zero_vector(self.class_of(coords), self.field)


def cohomology_basis(c: Complex, degree: int) -> CohomologyBasis:
    """Compute a canonical basis of H^degree(c)."""
    field = c.field
    n = c.space.dim(degree)
    if n == 0:
        return CohomologyBasis(c, degree, (), (), (), ())

    if c.space.dim(degree + 1) == 0:
        cocycles = [[field.one if i == j else field.zero for i in range(n)] for j in range(n)]
    else:
        cocycles = nullspace(c.d_matrix(degree), n, field)

    previous = c.space.dim(degree - 1)
    if previous:
        image, image_pivots = rref(transpose(c.d_matrix(degree - 1), previous), n, field)
    else:
        image, image_pivots = [], ()

    partial = CohomologyBasis(c, degree, (), (), tuple(map(tuple, image)), tuple(image_pivots))
    reduced = [partial.normal_form(z) for z in cocycles]
    reps, rep_pivots = rref([r for r in reduced if not is_zero_vector(r, field)], n, field)

    logger.debug(f"H^{degree}: dim Z={len(cocycles)} dim B={len(image)} dim H={len(reps)}")
    return CohomologyBasis(c, degree, tuple(map(tuple, reps)), tuple(rep_pivots),
                           partial.boundary_rows, partial.boundary_pivots)


def solve_coboundary(c: Complex, y: GradedVector, degree: int) -> GradedVector:
    """Echelon preimage x of degree j - 1 with d(x) = y.

    Raises:
        NotCocycle: If d(y) is nonzero
        NotCoboundary: If y is not in the image of d
    """
    if y.space != c.space:
        raise ShapeError("vector does not lie in the complex")
    actual = y.degree
    if actual is not None and actual != degree:
        raise ShapeError(f"vector has degree {actual}, expected {degree}")
    coords = y.coords(degree)
    if not c.is_cocycle(degree, coords):
        raise NotCocycle(y, f"degree {degree}")
    source_dim = c.space.dim(degree - 1)
    if is_zero_vector(coords, c.field):
        return GradedVector.zero(c.space, c.field)
    solution = solve(c.d_matrix(degree - 1), source_dim, coords, c.field)
    if solution is None:
        raise NotCoboundary(y, degree)
    x = GradedVector.homogeneous(c.space, c.field, degree - 1, solution) if source_dim else \
        GradedVector.zero(c.space, c.field)
    if c.d(x) != y:
        raise NotCoboundary(y, degree)
    return x

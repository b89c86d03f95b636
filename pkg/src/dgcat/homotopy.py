"""The homotopy category H0 of a presentation and invertibility in it."""
import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple
from src.dgcat.element import Element
from src.dgcat.presentation import DgPresentation
from src.dgcat.validator import validate_dg_category
from src.graded.complexes import CohomologyBasis, cohomology_basis
from src.graded.field import FieldElement
from src.graded.linalg import is_zero_vector, solve, transpose
from src.utils.config import Config
from src.utils.errors import NotWellDefined, ShapeError
from src.utils.logger import get_logger

logger = get_logger("dgcat.homotopy")


@dataclass(frozen=True)
class H0Class:
    """A class in H0(C)(source, target), in coordinates of the canonical basis."""

    source: str
    target: str
    coords: Tuple[FieldElement, ...]

    def is_zero(self) -> bool:
        return all(not c for c in self.coords)


class H0Category:
    """Degree-0 cohomology of every hom complex, with the induced composition."""

    def __init__(self, p: DgPresentation):
        self.presentation = p
        self.field = p.field
        self.objects = p.objects
        self.bases: Dict[Tuple[str, str], CohomologyBasis] = {
            (x, y): cohomology_basis(p.hom(x, y), 0) for x in p.objects for y in p.objects}
        self.structure: Dict[Tuple[str, str, str], List[List[List[FieldElement]]]] = {}
        for x in p.objects:
            for y in p.objects:
                for z in p.objects:
                    self.structure[(x, y, z)] = self._structure_constants(x, y, z)
        self._check_well_defined()

    def dim(self, x: str, y: str) -> int:
        return self.bases[(x, y)].dimension

    def representative(self, c: H0Class) -> Element:
        """The canonical cocycle representing a class."""
        basis = self.bases[(c.source, c.target)]
        return self.presentation.from_coords(c.source, c.target, 0, basis.element_of(c.coords))

    def class_of(self, x: Element) -> H0Class:
        """Class of a degree-0 cocycle.

        Raises:
            ShapeError: If x is not of degree 0
            NotCocycle: If x is not closed
        """
        if x.degree not in (None, 0):
            raise ShapeError(f"H0 classes need degree-0 elements, got degree {x.degree}")
        basis = self.bases[(x.source, x.target)]
        coords = self.presentation.to_vector(x).coords(0)
        return H0Class(x.source, x.target, tuple(basis.class_of(coords)))

    def make_class(self, source: str, target: str, coords: Sequence) -> H0Class:
        if len(coords) != self.dim(source, target):
            raise ShapeError(f"H0({source},{target}) has dimension {self.dim(source, target)}, "
                             f"got {len(coords)} coordinates")
        return H0Class(source, target, tuple(self.field(c) for c in coords))

    def zero_class(self, source: str, target: str) -> H0Class:
        return H0Class(source, target, tuple([self.field.zero] * self.dim(source, target)))

    def identity_class(self, obj: str) -> H0Class:
        return self.class_of(self.presentation.unit(obj))

    def compose(self, g: H0Class, f: H0Class) -> H0Class:
        """[g] . [f] through the structure constants."""
        if g.source != f.target:
            raise ShapeError(f"classes ({f.source}->{f.target}) and ({g.source}->{g.target}) do not compose")
        table = self.structure[(f.source, f.target, g.target)]
        out = [self.field.zero] * self.dim(f.source, g.target)
        for i, gi in enumerate(g.coords):
            for j, fj in enumerate(f.coords):
                coeff = gi * fj
                if coeff:
                    out = [o + coeff * t for o, t in zip(out, table[i][j])]
        return H0Class(f.source, g.target, tuple(out))

    def _structure_constants(self, x: str, y: str, z: str,
                             rng: Optional[random.Random] = None) -> List[List[List[FieldElement]]]:
        p = self.presentation
        reps_yz = self._representatives(y, z, rng)
        reps_xy = self._representatives(x, y, rng)
        return [[self.class_of(p.compose(g, f)).coords for f in reps_xy] for g in reps_yz]

    def _representatives(self, x: str, y: str, rng: Optional[random.Random] = None) -> List[Element]:
        p = self.presentation
        basis = self.bases[(x, y)]
        reps = [p.from_coords(x, y, 0, list(rep)) for rep in basis.representatives]
        if rng is not None:
            reps = [rep + random_coboundary(p, x, y, rng) for rep in reps]
        return reps

    def _check_well_defined(self) -> None:
        rng = random.Random(Config.WELL_DEFINED_SEED)
        for _ in range(Config.WELL_DEFINED_TRIALS):
            for (x, y, z), table in self.structure.items():
                shifted = self._structure_constants(x, y, z, rng)
                if [[list(c) for c in row] for row in shifted] != [[list(c) for c in row] for row in table]:
                    raise NotWellDefined(f"H0 composition ({x},{y},{z}) depends on the representatives")


def random_coboundary(p: DgPresentation, x: str, y: str, rng: random.Random) -> Element:
    """d k for a random degree -1 element k of p(x, y)."""
    bound = Config.SHIFT_COEFFICIENT_BOUND
    k = p.element(x, y, {label: rng.randint(-bound, bound) for label in p.hom_space(x, y).labels(-1)})
    return p.d(k)


def homotopy_category(p: DgPresentation) -> H0Category:
    """H0 of a presentation.

    Raises:
        ValidationError: If the presentation violates an axiom
        NotWellDefined: If the induced composition depends on representatives
    """
    validate_dg_category(p).raise_first()
    h0 = H0Category(p)
    logger.debug(f"H0({p.name}) built over {len(p.objects)} objects")
    return h0


def h0_invertible(h0: H0Category, c: H0Class) -> Optional[H0Class]:
    """Two-sided inverse of c: X -> Y in H0, or None.

    Solves x . c = [1_X] and c . y = [1_Y] for x, y in H0(Y, X).
    """
    x_obj, y_obj = c.source, c.target
    n = h0.dim(y_obj, x_obj)
    basis = [h0.make_class(y_obj, x_obj, [h0.field.one if i == j else h0.field.zero for i in range(n)])
             for j in range(n)]

    left_columns = [h0.compose(b, c).coords for b in basis]
    right_columns = [h0.compose(c, b).coords for b in basis]
    left = _solve_columns(h0, left_columns, h0.identity_class(x_obj).coords, h0.dim(x_obj, x_obj), n)
    right = _solve_columns(h0, right_columns, h0.identity_class(y_obj).coords, h0.dim(y_obj, y_obj), n)
    if left is None or right is None:
        return None

    inverse = h0.make_class(y_obj, x_obj, left)
    if h0.compose(inverse, c) != h0.identity_class(x_obj) or h0.compose(c, inverse) != h0.identity_class(y_obj):
        return None
    return inverse


def _solve_columns(h0: H0Category, columns: List[Tuple], rhs: Tuple, nrows: int,
                   ncols: int) -> Optional[List[FieldElement]]:
    if ncols == 0:
        return [] if is_zero_vector(rhs, h0.field) else None
    rows = transpose(columns, nrows)
    return solve(rows, ncols, list(rhs), h0.field)

"""H0 of functors and of natural transformations."""
import random
from typing import Dict, List, Mapping, Optional, Tuple
from src.ainf.functor import AInfFunctor
from src.dgcat.homotopy import H0Category, H0Class, homotopy_category, random_coboundary
from src.graded.field import FieldElement
from src.utils.config import Config
from src.utils.errors import DgLiftError, NaturalityFails, NotWellDefined, SourceTargetMismatch
from src.utils.logger import get_logger

logger = get_logger("ainf.h0")


class H0Functor:
    """A functor between homotopy categories, stored as matrices on class bases."""

    def __init__(self, name: str, source: H0Category, target: H0Category,
                 object_map: Mapping[str, str],
                 matrices: Mapping[Tuple[str, str], List[Tuple[FieldElement, ...]]]):
        self.name = name
        self.source = source
        self.target = target
        self.object_map = dict(object_map)
        # columns: image of the j-th basis class of source(X, Y)
        self.matrices = {key: [tuple(col) for col in cols] for key, cols in matrices.items()}

    def on_object(self, obj: str) -> str:
        return self.object_map[obj]

    def on_class(self, c: H0Class) -> H0Class:
        fx, fy = self.object_map[c.source], self.object_map[c.target]
        out = [self.target.field.zero] * self.target.dim(fx, fy)
        for coeff, column in zip(c.coords, self.matrices[(c.source, c.target)]):
            if coeff:
                out = [o + coeff * v for o, v in zip(out, column)]
        return H0Class(fx, fy, tuple(out))

    def check_functoriality(self) -> List[str]:
        """Failures of F(g f) = F(g) F(f) and F(1) = 1 on basis classes."""
        problems = []
        src = self.source
        for x in src.objects:
            if self.on_class(src.identity_class(x)) != self.target.identity_class(self.object_map[x]):
                problems.append(f"identity of {x}")
            for y in src.objects:
                for z in src.objects:
                    for f in _basis_classes(src, x, y):
                        for g in _basis_classes(src, y, z):
                            lhs = self.on_class(src.compose(g, f))
                            rhs = self.target.compose(self.on_class(g), self.on_class(f))
                            if lhs != rhs:
                                problems.append(f"composition {x}->{y}->{z}")
        return problems

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, H0Functor) and other.object_map == self.object_map
                and other.matrices == self.matrices)

    __hash__ = None


def _basis_classes(h0: H0Category, x: str, y: str) -> List[H0Class]:
    n = h0.dim(x, y)
    one, zero = h0.field.one, h0.field.zero
    return [H0Class(x, y, tuple(one if i == j else zero for i in range(n))) for j in range(n)]


def h0_of_functor(F: AInfFunctor, source_h0: Optional[H0Category] = None,
                  target_h0: Optional[H0Category] = None) -> H0Functor:
    """H0(F): [f] -> [F1(f)].

    Raises:
        NotWellDefined: If [F1(f)] depends on the representative, F1 of a
            cocycle is not closed, or functoriality fails in H0
    """
    source_h0 = source_h0 or homotopy_category(F.source)
    target_h0 = target_h0 or homotopy_category(F.target)
    S = F.source
    rng = random.Random(Config.WELL_DEFINED_SEED)
    matrices: Dict[Tuple[str, str], List[Tuple[FieldElement, ...]]] = {}
    for x in S.objects:
        for y in S.objects:
            columns = []
            basis = source_h0.bases[(x, y)]
            for rep in basis.representatives:
                element = S.from_coords(x, y, 0, list(rep))
                try:
                    image = target_h0.class_of(F.evaluate([element]))
                    shifted = [target_h0.class_of(F.evaluate([element + random_coboundary(S, x, y, rng)]))
                               for _ in range(Config.WELL_DEFINED_TRIALS)]
                except DgLiftError as e:
                    raise NotWellDefined(f"{F.name}1 on a cocycle of ({x},{y}): {e}")
                if any(image != other for other in shifted):
                    raise NotWellDefined(f"[{F.name}1(f)] depends on the representative in ({x},{y})")
                columns.append(image.coords)
            matrices[(x, y)] = columns

    functor = H0Functor(f"H0({F.name})", source_h0, target_h0, F.object_map, matrices)
    problems = functor.check_functoriality()
    if problems:
        raise NotWellDefined(f"H0({F.name}) is not a functor: {'; '.join(problems)}")
    return functor


def compose_h0_functors(G0: H0Functor, F0: H0Functor) -> H0Functor:
    """G0 . F0 on objects and on class matrices."""
    if F0.target.presentation is not G0.source.presentation:
        raise SourceTargetMismatch(f"{F0.name} does not land in the source of {G0.name}")
    matrices = {}
    for (x, y), columns in F0.matrices.items():
        fx, fy = F0.object_map[x], F0.object_map[y]
        matrices[(x, y)] = [G0.on_class(H0Class(fx, fy, col)).coords for col in columns]
    object_map = {x: G0.object_map[fx] for x, fx in F0.object_map.items()}
    return H0Functor(f"{G0.name}.{F0.name}", F0.source, G0.target, object_map, matrices)


def check_naturality(family: Mapping[str, H0Class], F0: H0Functor, G0: H0Functor) -> List[str]:
    """Basis morphisms f: E0 -> E1 with [G1 f] phi_E0 != phi_E1 [F1 f]."""
    failures = []
    src = F0.source
    for x in src.objects:
        for y in src.objects:
            for index, f in enumerate(_basis_classes(src, x, y)):
                lhs = G0.target.compose(G0.on_class(f), family[x])
                rhs = G0.target.compose(family[y], F0.on_class(f))
                if lhs != rhs:
                    labels = src.presentation.hom_space(x, y).labels(0)
                    failures.append(labels[index] if src.dim(x, y) == len(labels) else f"({x},{y})#{index}")
    return failures


def require_naturality(family: Mapping[str, H0Class], F0: H0Functor, G0: H0Functor) -> None:
    """Raise NaturalityFails on the first non-natural basis morphism."""
    failures = check_naturality(family, F0, G0)
    if failures:
        logger.warning(f"naturality fails on {len(failures)} basis classes")
        raise NaturalityFails(failures[0], f"{len(failures)} failing basis classes")

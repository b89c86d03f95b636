"""Builders for test categories, functors and lifting problems.

Random categories are endomorphism dg-categories of small bounded complexes
ending in degree 0: hom complexes have elementary matrices as basis (with the
identity replacing the first diagonal entry), composition is matrix
multiplication and d(x) = delta . x - (-1)^|x| x . delta.
"""
import random
from typing import Dict, List, Optional, Sequence, Tuple
from src.ainf.functor import AInfFunctor, PreNatTrans
from src.dgcat.element import Element
from src.dgcat.homotopy import homotopy_category
from src.dgcat.presentation import DgPresentation, LinearCategoryPresentation
from src.graded.field import Field
from src.graded.linalg import nullspace, rank
from src.lift.problem import LiftProblem

Vector = Tuple[int, int]


# ---- fixed instances ----------------------------------------------------------

def arrow_category(field: Field, name: str = "E") -> LinearCategoryPresentation:
    """E0 --a--> E1."""
    homs = {("E0", "E0"): {0: ["id_E0"]}, ("E1", "E1"): {0: ["id_E1"]}, ("E0", "E1"): {0: ["a"]}}
    units = {"E0": "id_E0", "E1": "id_E1"}
    compose = DgPresentation.unit_composites(homs, units, {})
    return LinearCategoryPresentation(name, field, ["E0", "E1"], homs, {}, units, compose)


def chain_category(field: Field, name: str = "E", composite: bool = True) -> LinearCategoryPresentation:
    """P0 --a--> P1 --b--> P2 with b . a = c, or b . a = 0 and no c."""
    homs = {("P0", "P0"): {0: ["id_P0"]}, ("P1", "P1"): {0: ["id_P1"]}, ("P2", "P2"): {0: ["id_P2"]},
            ("P0", "P1"): {0: ["a"]}, ("P1", "P2"): {0: ["b"]}}
    extra = {}
    if composite:
        homs[("P0", "P2")] = {0: ["c"]}
        extra[("b", "a")] = {"c": 1}
    units = {"P0": "id_P0", "P1": "id_P1", "P2": "id_P2"}
    compose = DgPresentation.unit_composites(homs, units, extra)
    return LinearCategoryPresentation(name, field, ["P0", "P1", "P2"], homs, {}, units, compose)


def chain4_category(field: Field, name: str = "E") -> LinearCategoryPresentation:
    """P0 --a--> P1 --b--> P2 --c--> P3 with composites ba, cb and cba."""
    objects = ["P0", "P1", "P2", "P3"]
    homs = {(obj, obj): {0: [f"id_{obj}"]} for obj in objects}
    homs.update({("P0", "P1"): {0: ["a"]}, ("P1", "P2"): {0: ["b"]}, ("P2", "P3"): {0: ["c"]},
                 ("P0", "P2"): {0: ["ba"]}, ("P1", "P3"): {0: ["cb"]}, ("P0", "P3"): {0: ["cba"]}})
    units = {obj: f"id_{obj}" for obj in objects}
    extra = {("b", "a"): {"ba": 1}, ("c", "b"): {"cb": 1}, ("c", "ba"): {"cba": 1}, ("cb", "a"): {"cba": 1}}
    compose = DgPresentation.unit_composites(homs, units, extra)
    return LinearCategoryPresentation(name, field, objects, homs, {}, units, compose)


def inst1_target(field: Field, closed_t: bool = False, name: str = "B") -> DgPresentation:
    """X, Y with B(X, Y) = <s0, s1> in degree 0 and <t> in degree -1, d t = s0 - s1."""
    homs = {("X", "X"): {0: ["id_X"]}, ("Y", "Y"): {0: ["id_Y"]}, ("X", "Y"): {0: ["s0", "s1"], -1: ["t"]}}
    units = {"X": "id_X", "Y": "id_Y"}
    differential = {} if closed_t else {"t": {"s0": 1, "s1": -1}}
    compose = DgPresentation.unit_composites(homs, units, {})
    return DgPresentation(name, field, ["X", "Y"], homs, differential, units, compose)


def inst1(field: Optional[Field] = None, closed_t: bool = False, g_label: str = "s1") -> Dict[str, object]:
    """The inst1 data: E, B, F (a -> s0) and G (a -> g_label)."""
    field = field or Field("q")
    E = arrow_category(field)
    B = inst1_target(field, closed_t)
    objects = {"E0": "X", "E1": "Y"}
    F = AInfFunctor("F", E, B, objects, {("a",): B.basis("s0")})
    G = AInfFunctor("G", E, B, objects, {("a",): B.basis(g_label)})
    return {"E": E, "B": B, "F": F, "G": G}


def inst1_problem(scale_x: int = 1, scale_y: int = 1, **kwargs) -> LiftProblem:
    data = inst1(**kwargs)
    h0 = homotopy_category(data["B"])
    phi_bar = {"E0": h0.make_class("X", "X", [scale_x]), "E1": h0.make_class("Y", "Y", [scale_y])}
    return LiftProblem(data["E"], data["B"], data["F"], data["G"], phi_bar, name="inst1")


def obstructed_target(field: Field, name: str = "B") -> DgPresentation:
    """X0 --p--> X1 --r--> X2 with r . p = 0 and a closed t in degree -1 of B(X0, X2)."""
    objects = ["X0", "X1", "X2"]
    homs = {(obj, obj): {0: [f"id_{obj}"]} for obj in objects}
    homs.update({("X0", "X1"): {0: ["p"]}, ("X1", "X2"): {0: ["r"]}, ("X0", "X2"): {-1: ["t"]}})
    units = {obj: f"id_{obj}" for obj in objects}
    compose = DgPresentation.unit_composites(homs, units, {})
    return DgPresentation(name, field, objects, homs, {}, units, compose)


def obstructed_problem(field: Field, twist: int = 1, scale: int = 1) -> LiftProblem:
    """F strict, G with G2(b, a) = twist * t; phi_bar = scale * id.

    A closed lift exists iff twist * scale = 0; H^-1(X0, X2) is never zero.
    """
    E = chain_category(field, composite=False)
    B = obstructed_target(field)
    objects = {"P0": "X0", "P1": "X1", "P2": "X2"}
    strict = {("a",): B.basis("p"), ("b",): B.basis("r")}
    F = AInfFunctor("F", E, B, objects, strict)
    G = AInfFunctor("G", E, B, objects, {**strict, ("b", "a"): B.basis("t").scale(twist)})
    h0 = homotopy_category(B)
    phi_bar = {obj: h0.make_class(x, x, [scale]) for obj, x in objects.items()}
    return LiftProblem(E, B, F, G, phi_bar, name="obstructed")


# ---- matrix dg-categories -----------------------------------------------------

class MatrixCategoryBuilder:
    """Endomorphism dg-category of a family of bounded complexes ending in degree 0."""

    def __init__(self, field: Field, shapes: Dict[str, Sequence[int]], deltas: Dict[str, list]):
        """shapes[V] = (dim V^(1-L), ..., dim V^0).

        For two-term shapes deltas[V] is the matrix V^-1 -> V^0 (dim V^0 rows,
        dim V^-1 columns); longer shapes give the list of matrices V^j -> V^(j+1)
        from the lowest degree up.
        """
        self.field = field
        self.objects = list(shapes)
        offset = max((len(shape) for shape in shapes.values()), default=2) - 1
        self.vectors: Dict[str, List[Vector]] = {}
        self.deltas: Dict[str, Dict[Tuple[Vector, Vector], object]] = {}
        for obj, shape in shapes.items():
            low = 1 - len(shape)
            self.vectors[obj] = [(low + k, i) for k, n in enumerate(shape) for i in range(n)]
            matrices = [deltas[obj]] if len(shape) == 2 else list(deltas[obj])
            self.deltas[obj] = {((low + k, i), (low + k + 1, j)): field(matrix[j][i])
                                for k, matrix in enumerate(matrices)
                                for i in range(shape[k]) for j in range(shape[k + 1])
                                if not field.is_zero(field(matrix[j][i]))}
        self.labels: Dict[str, Tuple[str, str, Vector, Vector]] = {}
        self.homs: Dict[Tuple[str, str], Dict[int, List[str]]] = {}
        self.units: Dict[str, str] = {}
        for src in self.objects:
            for tgt in self.objects:
                by_degree: Dict[int, List[str]] = {}
                for v in self.vectors[src]:
                    for w in self.vectors[tgt]:
                        if src == tgt and v == w == self.vectors[src][0]:
                            label = f"id_{src}"
                            self.units[src] = label
                            by_degree.setdefault(0, []).insert(0, label)
                        else:
                            label = f"e_{src}{v[0] + offset}{v[1]}_{tgt}{w[0] + offset}{w[1]}"
                            by_degree.setdefault(w[0] - v[0], []).append(label)
                        self.labels[label] = (src, tgt, v, w)
                if by_degree:
                    self.homs[(src, tgt)] = by_degree

    def _matrix(self, label: str) -> Dict[Tuple[Vector, Vector], object]:
        src, tgt, v, w = self.labels[label]
        if label == self.units.get(src) and src == tgt:
            return {(u, u): self.field.one for u in self.vectors[src]}
        return {(v, w): self.field.one}

    def _to_labels(self, src: str, tgt: str, matrix: Dict[Tuple[Vector, Vector], object]) -> Dict[str, object]:
        out: Dict[str, object] = {}
        first = self.vectors[src][0] if src == tgt and self.vectors[src] else None
        c0 = matrix.get((first, first), self.field.zero) if first else self.field.zero
        for label, (s, t, v, w) in self.labels.items():
            if (s, t) != (src, tgt):
                continue
            if first is not None and label == self.units[src]:
                value = c0
            elif first is not None and v == w:
                value = matrix.get((v, w), self.field.zero) - c0
            else:
                value = matrix.get((v, w), self.field.zero)
            if not self.field.is_zero(value):
                out[label] = value
        return out

    @staticmethod
    def _multiply(g: Dict, f: Dict, field: Field) -> Dict:
        out: Dict = {}
        for (u, v), fv in f.items():
            for (v2, w), gv in g.items():
                if v == v2:
                    out[(u, w)] = out.get((u, w), field.zero) + gv * fv
        return out

    def build(self, name: str = "B") -> DgPresentation:
        field = self.field
        compose = {}
        for f, (fs, ft, _, _) in self.labels.items():
            for g, (gs, gt, _, _) in self.labels.items():
                if gs != ft:
                    continue
                value = self._to_labels(fs, gt, self._multiply(self._matrix(g), self._matrix(f), field))
                if value:
                    compose[(g, f)] = value
        differential = {}
        for label, (src, tgt, v, w) in self.labels.items():
            x = self._matrix(label)
            sign = field.sign(w[0] - v[0])
            left = self._multiply(self.deltas[tgt], x, field)
            right = self._multiply(x, self.deltas[src], field)
            for key, value in right.items():
                left[key] = left.get(key, field.zero) - sign * value
            value = self._to_labels(src, tgt, left)
            if value:
                differential[label] = value
        return DgPresentation(name, field, self.objects, self.homs, differential, self.units, compose)


def random_injective(rng: random.Random, field: Field, rows: int, cols: int) -> List[List[int]]:
    """A random rows x cols matrix of rank cols (cols <= rows)."""
    p = field.characteristic or 5
    while True:
        matrix = [[rng.randrange(p) for _ in range(cols)] for _ in range(rows)]
        if rank([[field(x) for x in row] for row in matrix], cols, field) == cols:
            return matrix


def random_nonzero_column(rng: random.Random, field: Field, size: int) -> List[int]:
    p = field.characteristic or 5
    while True:
        column = [rng.randrange(p) for _ in range(size)]
        if any(not field.is_zero(field(x)) for x in column):
            return column


def random_three_term(rng: random.Random, field: Field, shape: Tuple[int, int, int]) -> List[List[List[int]]]:
    """Differentials of k -> V^-1 -> V^0, exact below degree 0.

    dim V^-1 is 1 or 2, and dim V^0 > 0 when dim V^-1 = 2.
    """
    _, b, c = shape
    c0 = random_nonzero_column(rng, field, b)
    lower = [[x] for x in c0]
    if b == 2 and c:
        normal = [c0[1], -c0[0]]
        r = random_nonzero_column(rng, field, c)
        upper = [[r[j] * normal[i] for i in range(b)] for j in range(c)]
    else:
        upper = [[0] * b for _ in range(c)]
    return [lower, upper]


def random_matrix_category(rng: random.Random, field: Field, n_objects: int = 2,
                           shapes: Sequence[Tuple[int, ...]] = ((0, 1), (1, 1), (1, 2), (0, 2)),
                           injective: bool = True, name: str = "B") -> DgPresentation:
    """Random matrix dg-category; with ``injective`` every negative cohomology vanishes.

    Three-term shapes (1, b, c) are always exact below degree 0.
    """
    chosen = {f"V{i}": tuple(rng.choice(list(shapes))) for i in range(n_objects)}
    deltas = {}
    for obj, shape in chosen.items():
        if len(shape) == 3:
            deltas[obj] = random_three_term(rng, field, shape)
            continue
        a, b = shape
        if injective:
            deltas[obj] = random_injective(rng, field, b, a)
        else:
            p = field.characteristic or 5
            deltas[obj] = [[rng.randrange(p) for _ in range(a)] for _ in range(b)]
    return MatrixCategoryBuilder(field, chosen, deltas).build(name)


# ---- random elements ----------------------------------------------------------

def random_scalar(rng: random.Random, field: Field):
    return field(rng.randrange(field.characteristic or 7) - (0 if field.characteristic else 3))


def random_element(rng: random.Random, p: DgPresentation, src: str, tgt: str, degree: int) -> Element:
    labels = p.hom_space(src, tgt).labels(degree)
    return p.element(src, tgt, {label: random_scalar(rng, p.field) for label in labels})


def random_cocycle(rng: random.Random, p: DgPresentation, src: str, tgt: str, degree: int) -> Element:
    """Random combination of a cocycle basis of p(src, tgt)^degree."""
    c = p.hom(src, tgt)
    basis = nullspace(c.d_matrix(degree), c.space.dim(degree), p.field)
    coords = [p.field.zero] * c.space.dim(degree)
    for vector in basis:
        scalar = random_scalar(rng, p.field)
        coords = [x + scalar * y for x, y in zip(coords, vector)]
    return p.from_coords(src, tgt, degree, coords)


def strict_chain_functor(rng: random.Random, E: DgPresentation, B: DgPresentation, name: str = "F") -> AInfFunctor:
    """Strict functor from the chain category: random closed a, b and c = b . a."""
    objects = {"P0": "V0", "P1": "V1", "P2": "V2"}
    fa = random_cocycle(rng, B, "V0", "V1", 0)
    fb = random_cocycle(rng, B, "V1", "V2", 0)
    return AInfFunctor(name, E, B, objects, {("a",): fa, ("b",): fb, ("c",): B.compose(fb, fa)})


def random_pre_transformation(rng: random.Random, F: AInfFunctor, G: AInfFunctor, degree: int,
                              max_length: int = 1) -> PreNatTrans:
    """Random h0 and random components on non-identity tuples up to max_length."""
    from src.ainf.tuples import all_tuples, endpoints
    E, B = F.source, F.target
    h0 = {obj: random_element(rng, B, F.on_object(obj), G.on_object(obj), degree) for obj in E.objects}
    components = {}
    for fs in all_tuples(E, max_length):
        x0, xd = endpoints(E, fs)
        components[fs] = random_element(rng, B, F.on_object(x0), G.on_object(xd), degree - len(fs))
    return PreNatTrans(F, G, degree, h0, components)


def random_arrow_problem(rng: random.Random, field: Field,
                         shapes: Sequence[Tuple[int, ...]] = ((0, 1), (1, 1), (1, 2), (0, 2))) -> LiftProblem:
    """E0 --a--> E1 into a random matrix category; G(a) is homotopic to F(a), phi_bar = lambda * id."""
    E = arrow_category(field)
    B = random_matrix_category(rng, field, n_objects=2, shapes=shapes)
    objects = {"E0": "V0", "E1": "V1"}
    fa = random_cocycle(rng, B, "V0", "V1", 0)
    ga = fa + B.d(random_element(rng, B, "V0", "V1", -1))
    F = AInfFunctor("F", E, B, objects, {("a",): fa})
    G = AInfFunctor("G", E, B, objects, {("a",): ga})
    h0 = homotopy_category(B)
    scalar = random_scalar(rng, field)
    phi_bar = {obj: h0.make_class(target, target, [c * scalar for c in h0.identity_class(target).coords])
               for obj, target in objects.items()}
    return LiftProblem(E, B, F, G, phi_bar, name="random")


def random_chain_problem(rng: random.Random, field: Field) -> LiftProblem:
    """Chain category into a random matrix category with F = G strict; phi_bar = lambda * id."""
    E = chain_category(field)
    B = random_matrix_category(rng, field, n_objects=3, shapes=((0, 1), (1, 1), (1, 2)))
    F = strict_chain_functor(rng, E, B, "F")
    G = AInfFunctor("G", E, B, F.object_map, F.components)
    h0 = homotopy_category(B)
    scalar = random_scalar(rng, field)
    phi_bar = {obj: h0.make_class(target, target, [c * scalar for c in h0.identity_class(target).coords])
               for obj, target in F.object_map.items()}
    return LiftProblem(E, B, F, G, phi_bar, name="random-chain")


def chain4_functor(name: str, E: DgPresentation, B: DgPresentation, target: str,
                   fa: Element, fb: Element, fc: Element) -> AInfFunctor:
    """Strict functor from chain4_category sending every object to target."""
    fba = B.compose(fb, fa)
    components = {("a",): fa, ("b",): fb, ("c",): fc, ("ba",): fba,
                  ("cb",): B.compose(fc, fb), ("cba",): B.compose(fc, fba)}
    return AInfFunctor(name, E, B, {obj: target for obj in E.objects}, components)


def random_deep_chain_problem(rng: random.Random, field: Field) -> LiftProblem:
    """chain4 into End of k -> k^2 -> k^2; G differs from F by coboundaries, phi_bar = lambda * id.

    B(V0, V0) reaches degree -2, so the lift runs to d_max = 3.
    """
    E = chain4_category(field)
    B = MatrixCategoryBuilder(field, {"V0": (1, 2, 2)}, {"V0": random_three_term(rng, field, (1, 2, 2))}).build()
    generators = [random_cocycle(rng, B, "V0", "V0", 0) for _ in range(3)]
    shifted = [g + B.d(random_element(rng, B, "V0", "V0", -1)) for g in generators]
    F = chain4_functor("F", E, B, "V0", *generators)
    G = chain4_functor("G", E, B, "V0", *shifted)
    h0 = homotopy_category(B)
    scalar = field(rng.randrange(1, field.characteristic or 7))
    phi_bar = {obj: h0.make_class("V0", "V0", [c * scalar for c in h0.identity_class("V0").coords])
               for obj in E.objects}
    return LiftProblem(E, B, F, G, phi_bar, name="deep-chain")

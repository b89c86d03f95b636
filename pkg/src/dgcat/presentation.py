"""Finite dg-category presentations: bases, differentials, structure constants."""
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple
from src.dgcat.element import Element
from src.graded.complexes import Complex
from src.graded.field import Field, FieldElement
from src.graded.spaces import GradedMap, GradedSpace, GradedVector
from src.utils.errors import NotComposable, NotLinearCategory, ShapeError
from src.utils.logger import get_logger

logger = get_logger("dgcat.presentation")

HomKey = Tuple[str, str]
LinearCombination = Mapping[str, Any]


class DgPresentation:
    """A finite dg-category given by bases, differentials and composition constants.

    Basis labels are unique across the whole category.  Structure constants are
    sparse: a missing ``(g, f)`` entry is the zero composite and a missing
    differential entry is a closed basis element.
    """

    def __init__(self, name: str, field: Field, objects: Sequence[str],
                 homs: Mapping[HomKey, Mapping[int, Sequence[str]]],
                 differential: Mapping[str, LinearCombination],
                 units: Mapping[str, str],
                 compose: Mapping[Tuple[str, str], LinearCombination]):
        """Build and structurally check a presentation.

        Axioms (d-squared, Leibniz, associativity, units) are not checked here;
        see ``validate_dg_category``.

        Raises:
            ShapeError: On unknown objects or labels, duplicate labels, or
                entries landing in the wrong hom space
        """
        self.name = name
        self.field = field
        self.objects: Tuple[str, ...] = tuple(objects)
        if len(set(self.objects)) != len(self.objects):
            raise ShapeError(f"{name}: duplicate object in {self.objects}")

        self._hom_of: Dict[str, HomKey] = {}
        self._degree_of: Dict[str, int] = {}
        self._spaces: Dict[HomKey, GradedSpace] = {}
        for (src, tgt), by_degree in homs.items():
            for obj in (src, tgt):
                if obj not in self.objects:
                    raise ShapeError(f"{name}: unknown object '{obj}'")
            for degree, labels in by_degree.items():
                for label in labels:
                    if label in self._hom_of:
                        raise ShapeError(f"{name}: basis label '{label}' declared twice")
                    self._hom_of[label] = (src, tgt)
                    self._degree_of[label] = int(degree)
            self._spaces[(src, tgt)] = GradedSpace(by_degree)

        self._rank = {label: i for i, label in enumerate(self._ordered_labels())}

        self.units: Dict[str, str] = {}
        for obj in self.objects:
            label = units.get(obj)
            if label is None:
                raise ShapeError(f"{name}: object '{obj}' has no unit")
            if self._hom_of.get(label) != (obj, obj) or self._degree_of[label] != 0:
                raise ShapeError(f"{name}: unit '{label}' is not a degree-0 basis element of End({obj})")
            self.units[obj] = label
        self._unit_labels = set(self.units.values())

        self._differential: Dict[str, Dict[str, FieldElement]] = {}
        for label, combination in differential.items():
            self._require_label(label)
            value = self._combination(combination, self._hom_of[label], f"d {label}")
            if value:
                self._differential[label] = value

        self._compose: Dict[Tuple[str, str], Dict[str, FieldElement]] = {}
        for (g, f), combination in compose.items():
            self._require_label(g)
            self._require_label(f)
            if self._hom_of[g][0] != self._hom_of[f][1]:
                raise NotComposable(g, f, f"{name}: structure constant for a non-composable pair")
            value = self._combination(combination, (self._hom_of[f][0], self._hom_of[g][1]), f"{g} . {f}")
            if value:
                self._compose[(g, f)] = value

        self._complexes: Dict[HomKey, Complex] = {}
        for src in self.objects:
            for tgt in self.objects:
                self._complexes[(src, tgt)] = self._build_complex(src, tgt)

    # ---- construction helpers -------------------------------------------------

    def _require_label(self, label: str) -> None:
        if label not in self._hom_of:
            raise ShapeError(f"{self.name}: unknown basis label '{label}'")

    def _combination(self, combination: LinearCombination, hom: HomKey, where: str) -> Dict[str, FieldElement]:
        out: Dict[str, FieldElement] = {}
        for label, value in combination.items():
            self._require_label(label)
            if self._hom_of[label] != hom:
                raise ShapeError(f"{self.name}: {where} contains '{label}' outside {hom}")
            scalar = self.field(value)
            if not self.field.is_zero(scalar):
                out[label] = scalar
        return out

    def _ordered_labels(self) -> List[str]:
        index = {obj: i for i, obj in enumerate(self.objects)}
        ordered = []
        for (src, tgt) in sorted(self._spaces, key=lambda key: (index[key[0]], index[key[1]])):
            space = self._spaces[(src, tgt)]
            for degree in space.degrees():
                ordered.extend(space.labels(degree))
        return ordered

    def _build_complex(self, src: str, tgt: str) -> Complex:
        space = self.hom_space(src, tgt)
        blocks = {}
        for degree in space.degrees():
            if space.dim(degree + 1) == 0:
                continue
            rows = [[self.field.zero] * space.dim(degree) for _ in range(space.dim(degree + 1))]
            nonzero = False
            for col, label in enumerate(space.labels(degree)):
                for image, value in self._differential.get(label, {}).items():
                    if self._degree_of[image] == degree + 1:
                        rows[space.position(degree + 1, image)][col] = value
                        nonzero = True
            if nonzero:
                blocks[degree] = rows
        return Complex(space, GradedMap(space, space, 1, blocks, self.field), check=False)

    @staticmethod
    def unit_composites(homs: Mapping[HomKey, Mapping[int, Sequence[str]]], units: Mapping[str, str],
                        compose: Mapping[Tuple[str, str], LinearCombination]) -> Dict[Tuple[str, str], LinearCombination]:
        """Structure constants completed with 1 . f = f and f . 1 = f."""
        completed = dict(compose)
        for (src, tgt), by_degree in homs.items():
            for labels in by_degree.values():
                for label in labels:
                    if tgt in units:
                        completed.setdefault((units[tgt], label), {label: 1})
                    if src in units:
                        completed.setdefault((label, units[src]), {label: 1})
        return completed

    def copy_with(self, name: Optional[str] = None, **changes: Any) -> "DgPresentation":
        """A new presentation with some of the raw data replaced."""
        data = self.raw_data()
        data.update(changes)
        return DgPresentation(name or self.name, self.field, **data)

    def raw_data(self) -> Dict[str, Any]:
        homs: Dict[HomKey, Dict[int, Tuple[str, ...]]] = {}
        for key, space in self._spaces.items():
            homs[key] = {degree: space.labels(degree) for degree in space.degrees()}
        return {
            "objects": self.objects,
            "homs": homs,
            "differential": {k: dict(v) for k, v in self._differential.items()},
            "units": dict(self.units),
            "compose": {k: dict(v) for k, v in self._compose.items()},
        }

    # ---- lookup ---------------------------------------------------------------

    def hom_of(self, label: str) -> HomKey:
        self._require_label(label)
        return self._hom_of[label]

    def degree_of(self, label: str) -> int:
        self._require_label(label)
        return self._degree_of[label]

    def has_label(self, label: str) -> bool:
        return label in self._hom_of

    def label_rank(self, label: str) -> int:
        return self._rank[label]

    def labels(self, src: Optional[str] = None, tgt: Optional[str] = None) -> List[str]:
        """Basis labels in canonical order, optionally restricted to one hom."""
        return [label for label in sorted(self._rank, key=self._rank.get)
                if (src is None or self._hom_of[label][0] == src)
                and (tgt is None or self._hom_of[label][1] == tgt)]

    def is_unit(self, label: str) -> bool:
        return label in self._unit_labels

    def hom_space(self, src: str, tgt: str) -> GradedSpace:
        return self._spaces.get((src, tgt), GradedSpace.empty())

    def hom(self, src: str, tgt: str) -> Complex:
        """The hom complex C(src, tgt)."""
        if (src, tgt) not in self._complexes:
            raise ShapeError(f"{self.name}: unknown objects ({src}, {tgt})")
        return self._complexes[(src, tgt)]

    def hom_dim(self, src: str, tgt: str, degree: int) -> int:
        return self.hom_space(src, tgt).dim(degree)

    def min_degree(self) -> Optional[int]:
        degrees = [d for d in self._degree_of.values()]
        return min(degrees) if degrees else None

    def total_dim(self) -> int:
        return len(self._hom_of)

    def differential_of(self, label: str) -> Dict[str, FieldElement]:
        return dict(self._differential.get(label, {}))

    def composite_of(self, g: str, f: str) -> Dict[str, FieldElement]:
        return dict(self._compose.get((g, f), {}))

    # ---- elements -------------------------------------------------------------

    def element(self, src: str, tgt: str, coeffs: Optional[LinearCombination] = None) -> Element:
        return Element(self, src, tgt, coeffs)

    def basis(self, label: str) -> Element:
        src, tgt = self.hom_of(label)
        return Element(self, src, tgt, {label: self.field.one})

    def zero(self, src: str, tgt: str, degree: Optional[int] = None) -> Element:
        return Element(self, src, tgt)

    def unit(self, obj: str) -> Element:
        return self.basis(self.units[obj])

    def degree(self, x: Element) -> Optional[int]:
        return x.degree

    def check_object(self, obj: Any) -> List[str]:
        return [] if obj in self.objects else [f"'{obj}' is not an object of {self.name}"]

    def d(self, x: Element) -> Element:
        """The differential, extended linearly."""
        out: Dict[str, FieldElement] = {}
        for label, c in x.coeffs.items():
            for image, value in self._differential.get(label, {}).items():
                out[image] = out.get(image, self.field.zero) + c * value
        return Element(self, x.source, x.target, out)

    def compose(self, g: Element, f: Element) -> Element:
        """The composite g . f, extended bilinearly.

        Raises:
            NotComposable: If g does not start where f ends
        """
        if g.source != f.target:
            raise NotComposable(repr(g), repr(f))
        out: Dict[str, FieldElement] = {}
        for gl, gc in g.coeffs.items():
            for fl, fc in f.coeffs.items():
                for label, value in self._compose.get((gl, fl), {}).items():
                    out[label] = out.get(label, self.field.zero) + gc * fc * value
        return Element(self, f.source, g.target, out)

    def mu1(self, f: Element) -> Element:
        """A-infinity differential (-1)^|f| d f."""
        degree = f.degree
        if degree is None:
            return f
        return self.d(f).scale(self.field.sign(degree))

    def mu2(self, g: Element, f: Element) -> Element:
        """A-infinity product (-1)^|f| g . f."""
        product = self.compose(g, f)
        degree = f.degree
        if degree is None:
            return product
        return product.scale(self.field.sign(degree))

    def to_vector(self, x: Element) -> GradedVector:
        space = self.hom_space(x.source, x.target)
        parts: Dict[int, List[FieldElement]] = {}
        for label, value in x.coeffs.items():
            degree = self._degree_of[label]
            coords = parts.setdefault(degree, [self.field.zero] * space.dim(degree))
            coords[space.position(degree, label)] = value
        return GradedVector(space, self.field, parts)

    def from_coords(self, src: str, tgt: str, degree: int, coords: Sequence[FieldElement]) -> Element:
        labels = self.hom_space(src, tgt).labels(degree)
        if len(coords) != len(labels):
            raise ShapeError(f"expected {len(labels)} coordinates in degree {degree}")
        return Element(self, src, tgt, dict(zip(labels, coords)))

    def from_vector(self, src: str, tgt: str, v: GradedVector) -> Element:
        out = self.zero(src, tgt)
        for degree in v.space.degrees():
            out = out + self.from_coords(src, tgt, degree, v.coords(degree))
        return out

    def __repr__(self) -> str:
        return f"DgPresentation({self.name!r}, objects={list(self.objects)}, field={self.field.tag})"


class LinearCategoryPresentation(DgPresentation):
    """A presentation concentrated in degree 0 with zero differential."""

    @classmethod
    def from_presentation(cls, p: DgPresentation) -> "LinearCategoryPresentation":
        """Checked view of a dg presentation as a linear category.

        Raises:
            NotLinearCategory: If some basis element has nonzero degree or
                nonzero differential
        """
        if isinstance(p, LinearCategoryPresentation):
            return p
        for label in p.labels():
            if p.degree_of(label) != 0:
                raise NotLinearCategory(f"{p.name}: '{label}' has degree {p.degree_of(label)}")
            if p.differential_of(label):
                raise NotLinearCategory(f"{p.name}: '{label}' has a nonzero differential")
        return cls(p.name, p.field, **p.raw_data())


def is_linear(p: DgPresentation) -> bool:
    return isinstance(p, LinearCategoryPresentation) or all(
        p.degree_of(label) == 0 and not p.differential_of(label) for label in p.labels())


"""Sparse elements of hom complexes.

An element is a linear combination of basis labels of one hom space
``C(source, target)``; zero coefficients are never stored.
"""
from typing import Any, Dict, Iterator, Mapping, Optional, Tuple
from src.graded.field import FieldElement
from src.utils.errors import ShapeError


class Element:
    """Linear combination of basis morphisms in a single hom complex."""

    __slots__ = ("category", "source", "target", "coeffs")

    def __init__(self, category: Any, source: str, target: str,
                 coeffs: Optional[Mapping[str, FieldElement]] = None):
        self.category = category
        self.source = source
        self.target = target
        field = category.field
        self.coeffs: Dict[str, FieldElement] = {}
        for label, value in (coeffs or {}).items():
            if category.hom_of(label) != (source, target):
                raise ShapeError(f"'{label}' is not a basis element of {category.name}({source},{target})")
            value = field(value)
            if not field.is_zero(value):
                self.coeffs[label] = value

    @property
    def field(self):
        return self.category.field

    @property
    def degree(self) -> Optional[int]:
        """Degree of a homogeneous element, None for zero.

        Raises:
            ShapeError: If the element mixes degrees
        """
        degrees = {self.category.degree_of(label) for label in self.coeffs}
        if not degrees:
            return None
        if len(degrees) > 1:
            raise ShapeError(f"element {self} is not homogeneous: degrees {sorted(degrees)}")
        return degrees.pop()

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, label: str) -> FieldElement:
        return self.coeffs.get(label, self.field.zero)

    def items(self) -> Iterator[Tuple[str, FieldElement]]:
        """Terms in basis order."""
        order = self.category.label_rank
        for label in sorted(self.coeffs, key=order):
            yield label, self.coeffs[label]

    def _check_parallel(self, other: "Element") -> None:
        if other.category is not self.category or (other.source, other.target) != (self.source, self.target):
            raise ShapeError(f"cannot combine elements of ({self.source},{self.target}) "
                             f"and ({other.source},{other.target})")

    def __add__(self, other: "Element") -> "Element":
        self._check_parallel(other)
        coeffs = dict(self.coeffs)
        for label, value in other.coeffs.items():
            coeffs[label] = coeffs.get(label, self.field.zero) + value
        return Element(self.category, self.source, self.target, coeffs)

    def __neg__(self) -> "Element":
        return Element(self.category, self.source, self.target, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def scale(self, scalar: Any) -> "Element":
        c = self.field(scalar)
        return Element(self.category, self.source, self.target, {k: c * v for k, v in self.coeffs.items()})

    def __rmul__(self, scalar: Any) -> "Element":
        return self.scale(scalar)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Element) and other.category is self.category
                and (other.source, other.target) == (self.source, self.target)
                and other.coeffs == self.coeffs)

    __hash__ = None

    def format(self) -> str:
        """Text form such as ``s0 - 2*s1``; ``0`` for zero."""
        if not self.coeffs:
            return "0"
        field = self.field
        parts = []
        for label, value in self.items():
            text = field.format(value)
            negative = text.startswith("-")
            magnitude = text[1:] if negative else text
            term = label if magnitude == "1" else f"{magnitude}*{label}"
            if not parts:
                parts.append(f"-{term}" if negative else term)
            else:
                parts.append(f"- {term}" if negative else f"+ {term}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"<{self.format()} in {self.category.name}({self.source},{self.target})>"

"""Graded vector spaces, graded vectors and graded maps.

A graded vector is stored sparsely as ``degree -> coordinate list``; an
absent degree means zero there.  A graded map holds one matrix block per
source degree; an absent block is the zero map.
"""
from typing import Dict, List, Mapping, Optional, Sequence, Tuple
from src.graded.field import Field, FieldElement
from src.graded.linalg import Rows, is_zero_vector, mat_vec, matmul
from src.utils.errors import ShapeError


class GradedSpace:
    """Finite-dimensional graded space with labelled bases per degree."""

    def __init__(self, labels: Mapping[int, Sequence[str]]):
        self._labels: Dict[int, Tuple[str, ...]] = {}
        self._index: Dict[Tuple[int, str], int] = {}
        for degree in sorted(labels):
            names = tuple(labels[degree])
            if not names:
                continue
            if len(set(names)) != len(names):
                raise ShapeError(f"duplicate basis label in degree {degree}: {names}")
            self._labels[int(degree)] = names
            for i, name in enumerate(names):
                self._index[(int(degree), name)] = i

    @classmethod
    def empty(cls) -> "GradedSpace":
        return cls({})

    def degrees(self) -> List[int]:
        """Degrees with nonzero dimension, ascending."""
        return sorted(self._labels)

    def dim(self, degree: int) -> int:
        return len(self._labels.get(degree, ()))

    @property
    def dims(self) -> Dict[int, int]:
        return {j: len(names) for j, names in self._labels.items()}

    def labels(self, degree: int) -> Tuple[str, ...]:
        return self._labels.get(degree, ())

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def min_degree(self) -> Optional[int]:
        return min(self._labels) if self._labels else None

    def max_degree(self) -> Optional[int]:
        return max(self._labels) if self._labels else None

    def position(self, degree: int, label: str) -> int:
        """Index of a label inside its degree.

        Raises:
            ShapeError: If the label is not a basis element of that degree
        """
        try:
            return self._index[(degree, label)]
        except KeyError:
            raise ShapeError(f"'{label}' is not a basis label in degree {degree}")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GradedSpace) and other._labels == self._labels

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._labels.items())))

    def __repr__(self) -> str:
        return f"GradedSpace({self.dims})"


class GradedVector:
    """Element of a graded space, stored per degree."""

    def __init__(self, space: GradedSpace, field: Field,
                 parts: Optional[Mapping[int, Sequence[FieldElement]]] = None):
        self.space = space
        self.field = field
        self._parts: Dict[int, List[FieldElement]] = {}
        for degree, coords in (parts or {}).items():
            coords = list(coords)
            if len(coords) != space.dim(degree):
                raise ShapeError(
                    f"degree {degree} expects {space.dim(degree)} coordinates, got {len(coords)}")
            if not is_zero_vector(coords, field):
                self._parts[degree] = coords

    @classmethod
    def zero(cls, space: GradedSpace, field: Field) -> "GradedVector":
        return cls(space, field)

    @classmethod
    def homogeneous(cls, space: GradedSpace, field: Field, degree: int,
                    coords: Sequence[FieldElement]) -> "GradedVector":
        return cls(space, field, {degree: coords})

    @property
    def degree(self) -> Optional[int]:
        """The single degree carrying nonzero coordinates, None for zero.

        Raises:
            ShapeError: If the vector is not homogeneous
        """
        if not self._parts:
            return None
        if len(self._parts) > 1:
            raise ShapeError(f"vector is not homogeneous: degrees {sorted(self._parts)}")
        return next(iter(self._parts))

    def coords(self, degree: int) -> List[FieldElement]:
        return list(self._parts.get(degree, [self.field.zero] * self.space.dim(degree)))

    def is_zero(self) -> bool:
        return not self._parts

    def __add__(self, other: "GradedVector") -> "GradedVector":
        if other.space != self.space:
            raise ShapeError("cannot add vectors of different spaces")
        parts = {}
        for degree in set(self._parts) | set(other._parts):
            parts[degree] = [a + b for a, b in zip(self.coords(degree), other.coords(degree))]
        return GradedVector(self.space, self.field, parts)

    def __neg__(self) -> "GradedVector":
        return GradedVector(self.space, self.field,
                            {j: [-x for x in c] for j, c in self._parts.items()})

    def __sub__(self, other: "GradedVector") -> "GradedVector":
        return self + (-other)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, GradedVector) and other.space == self.space
                and other._parts == self._parts)

    def __repr__(self) -> str:
        body = {j: [self.field.format(x) for x in c] for j, c in sorted(self._parts.items())}
        return f"GradedVector({body})"


class GradedMap:
    """Linear map of a fixed degree shift between graded spaces."""

    def __init__(self, source: GradedSpace, target: GradedSpace, shift: int,
                 blocks: Mapping[int, Sequence[Sequence[FieldElement]]], field: Field):
        self.source = source
        self.target = target
        self.shift = shift
        self.field = field
        self._blocks: Dict[int, Rows] = {}
        for degree, block in blocks.items():
            rows = [list(row) for row in block]
            n, m = source.dim(degree), target.dim(degree + shift)
            if n == 0:
                raise ShapeError(f"block at degree {degree} outside the source support")
            if len(rows) != m or any(len(row) != n for row in rows):
                raise ShapeError(f"block at degree {degree} must have shape {m}x{n}")
            self._blocks[degree] = rows

    def block(self, degree: int) -> Rows:
        """The matrix in a degree, zero-filled when absent."""
        if degree in self._blocks:
            return [list(row) for row in self._blocks[degree]]
        n, m = self.source.dim(degree), self.target.dim(degree + self.shift)
        return [[self.field.zero] * n for _ in range(m)]

    def has_block(self, degree: int) -> bool:
        return degree in self._blocks

    def then(self, other: "GradedMap") -> "GradedMap":
        """The composite ``other o self``."""
        if other.source != self.target:
            raise ShapeError("graded maps are not composable")
        blocks = {}
        for degree in self.source.degrees():
            mid = degree + self.shift
            out = mid + other.shift
            if other.target.dim(out) == 0:
                continue
            blocks[degree] = matmul(other.block(mid), self.block(degree),
                                    self.target.dim(mid), self.source.dim(degree), self.field)
        return GradedMap(self.source, other.target, self.shift + other.shift, blocks, self.field)

    def is_zero(self) -> bool:
        return all(is_zero_vector(row, self.field) for rows in self._blocks.values() for row in rows)


def apply_graded_map(m: GradedMap, v: GradedVector) -> GradedVector:
    """Apply a graded map to a homogeneous vector.

    Raises:
        ShapeError: If v is inhomogeneous or lives in another space
    """
    if v.space != m.source:
        raise ShapeError("vector does not lie in the source of the map")
    degree = v.degree
    if degree is None or not m.has_block(degree):
        return GradedVector.zero(m.target, m.field)
    image = mat_vec(m.block(degree), v.coords(degree), m.field)
    return GradedVector.homogeneous(m.target, m.field, degree + m.shift, image)

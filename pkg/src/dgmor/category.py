"""dgMor(B): closed degree-0 morphisms of B and homotopy-commuting squares.

An arrow (u, v, h): (A, B, f) -> (A', B', f') of degree n has u in B(A, A')^n,
v in B(B, B')^n and h in B(A, B')^{n-1}.  Hom complexes are built on demand
and never cached.
"""
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple
from src.dgcat.element import Element
from src.dgcat.presentation import DgPresentation
from src.graded.complexes import Complex
from src.graded.field import FieldElement
from src.graded.spaces import GradedMap, GradedSpace, GradedVector
from src.utils.errors import DegreeMismatch, NotComposable, ShapeError
from src.utils.logger import get_logger

logger = get_logger("dgmor.category")


@dataclass(frozen=True)
class MorObject:
    """A morphism f: A -> B of the base category, as an object of dgMor."""

    A: str
    B: str
    f: Element

    def __str__(self) -> str:
        return f"({self.A}, {self.B}, {self.f.format()})"


class MorArrow:
    """An arrow (u, v, h) of dgMor with an explicit degree."""

    __slots__ = ("source", "target", "u", "v", "h", "_degree")

    def __init__(self, source: MorObject, target: MorObject, u: Element, v: Element, h: Element,
                 degree: Optional[int] = None):
        """Build an arrow.

        Raises:
            ShapeError: If a component lies in the wrong hom
            DegreeMismatch: If a component disagrees with the declared degree
        """
        if (u.source, u.target) != (source.A, target.A):
            raise ShapeError(f"u must lie in ({source.A}, {target.A})")
        if (v.source, v.target) != (source.B, target.B):
            raise ShapeError(f"v must lie in ({source.B}, {target.B})")
        if (h.source, h.target) != (source.A, target.B):
            raise ShapeError(f"h must lie in ({source.A}, {target.B})")
        self.source, self.target = source, target
        self.u, self.v, self.h = u, v, h

        inferred = [x for x in (u.degree, v.degree, None if h.degree is None else h.degree + 1) if x is not None]
        if len(set(inferred)) > 1:
            raise DegreeMismatch("dgMor arrow components", inferred[0], inferred[1])
        if degree is not None and inferred and inferred[0] != degree:
            raise DegreeMismatch("dgMor arrow", degree, inferred[0])
        self._degree = degree if degree is not None else (inferred[0] if inferred else None)

    @property
    def degree(self) -> Optional[int]:
        return self._degree

    @property
    def field(self):
        return self.u.field

    def is_zero(self) -> bool:
        return self.u.is_zero() and self.v.is_zero() and self.h.is_zero()

    def _combine_degree(self, other: "MorArrow") -> Optional[int]:
        if self._degree is None:
            return other._degree
        if other._degree is None or other._degree == self._degree:
            return self._degree
        if self.is_zero():
            return other._degree
        if other.is_zero():
            return self._degree
        raise DegreeMismatch("sum of dgMor arrows", self._degree, other._degree)

    def __add__(self, other: "MorArrow") -> "MorArrow":
        if other.source != self.source or other.target != self.target:
            raise ShapeError("cannot add dgMor arrows between different objects")
        return MorArrow(self.source, self.target, self.u + other.u, self.v + other.v, self.h + other.h,
                        self._combine_degree(other))

    def __neg__(self) -> "MorArrow":
        return MorArrow(self.source, self.target, -self.u, -self.v, -self.h, self._degree)

    def __sub__(self, other: "MorArrow") -> "MorArrow":
        return self + (-other)

    def scale(self, scalar: Any) -> "MorArrow":
        return MorArrow(self.source, self.target, self.u.scale(scalar), self.v.scale(scalar),
                        self.h.scale(scalar), self._degree)

    def __rmul__(self, scalar: Any) -> "MorArrow":
        return self.scale(scalar)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, MorArrow) and other.source == self.source and other.target == self.target
                and (other.u, other.v, other.h) == (self.u, self.v, self.h))

    __hash__ = None

    def format(self) -> str:
        return f"({self.u.format()}, {self.v.format()}, {self.h.format()})"

    def __repr__(self) -> str:
        return f"<MorArrow {self.format()} : {self.source} -> {self.target}>"


class DgMorCategory:
    """The dg-category dgMor(B) realised on demand over a base presentation."""

    def __init__(self, base: DgPresentation):
        self.base = base
        self.field = base.field
        self.name = f"dgMor({base.name})"

    # ---- objects and arrows ---------------------------------------------------

    def make_object(self, A: str, B: str, f: Optional[Element] = None) -> MorObject:
        f = f if f is not None else self.base.zero(A, B)
        if (f.source, f.target) != (A, B):
            raise ShapeError(f"object morphism must lie in ({A}, {B})")
        return MorObject(A, B, f)

    def check_object(self, obj: Any) -> List[str]:
        """Problems with an object: f must be a closed degree-0 morphism."""
        if not isinstance(obj, MorObject):
            return [f"{obj!r} is not an object of {self.name}"]
        problems = []
        if obj.f.degree not in (None, 0):
            problems.append(f"{obj}: f has degree {obj.f.degree}")
        if not self.base.d(obj.f).is_zero():
            problems.append(f"{obj}: f is not closed")
        return problems

    def arrow(self, source: MorObject, target: MorObject, u: Optional[Element] = None,
              v: Optional[Element] = None, h: Optional[Element] = None,
              degree: Optional[int] = None) -> MorArrow:
        B = self.base
        return MorArrow(source, target,
                        u if u is not None else B.zero(source.A, target.A),
                        v if v is not None else B.zero(source.B, target.B),
                        h if h is not None else B.zero(source.A, target.B), degree)

    def zero(self, source: MorObject, target: MorObject, degree: Optional[int] = None) -> MorArrow:
        return self.arrow(source, target, degree=degree)

    def unit(self, obj: MorObject) -> MorArrow:
        return self.arrow(obj, obj, self.base.unit(obj.A), self.base.unit(obj.B), degree=0)

    def degree(self, x: MorArrow) -> Optional[int]:
        return x.degree

    @staticmethod
    def _n(x: MorArrow) -> int:
        return x.degree if x.degree is not None else 0

    def _next_degree(self, x: MorArrow, step: int) -> Optional[int]:
        return None if x.degree is None else x.degree + step

    @staticmethod
    def _check_composable(x2: MorArrow, x1: MorArrow) -> None:
        if x1.target != x2.source:
            raise NotComposable(repr(x2), repr(x1))

    # ---- plain dg structure ---------------------------------------------------

    def differential(self, x: MorArrow) -> MorArrow:
        """d(u, v, h) = (du, dv, dh + (-1)^n (f'u - vf))."""
        B = self.base
        f, f2 = x.source.f, x.target.f
        h = B.d(x.h) + (B.compose(f2, x.u) - B.compose(x.v, f)).scale(self.field.sign(self._n(x)))
        return MorArrow(x.source, x.target, B.d(x.u), B.d(x.v), h, self._next_degree(x, 1))

    def compose(self, x2: MorArrow, x1: MorArrow) -> MorArrow:
        """(u', v', h') . (u, v, h) = (u'u, v'v, (-1)^n h'u + v'h), n = deg (u, v, h).

        Raises:
            NotComposable: If x1 does not end where x2 starts
        """
        self._check_composable(x2, x1)
        B = self.base
        h = B.compose(x2.h, x1.u).scale(self.field.sign(self._n(x1))) + B.compose(x2.v, x1.h)
        degree = None if x1.degree is None or x2.degree is None else x1.degree + x2.degree
        return MorArrow(x1.source, x2.target, B.compose(x2.u, x1.u), B.compose(x2.v, x1.v), h, degree)

    # ---- A-infinity structure -------------------------------------------------

    def mu1(self, x: MorArrow) -> MorArrow:
        """(mu1 u, mu1 v, -mu1 h + (-1)^|u| mu2(f', u) - mu2(v, f))."""
        B = self.base
        f, f2 = x.source.f, x.target.f
        h = -B.mu1(x.h) + B.mu2(f2, x.u).scale(self.field.sign(self._n(x))) - B.mu2(x.v, f)
        return MorArrow(x.source, x.target, B.mu1(x.u), B.mu1(x.v), h, self._next_degree(x, 1))

    def mu2(self, x2: MorArrow, x1: MorArrow) -> MorArrow:
        """(mu2(u', u), mu2(v', v), (-1)^|u| mu2(h', u) - mu2(v', h)).

        Raises:
            NotComposable: If x1 does not end where x2 starts
        """
        self._check_composable(x2, x1)
        B = self.base
        h = B.mu2(x2.h, x1.u).scale(self.field.sign(self._n(x1))) - B.mu2(x2.v, x1.h)
        degree = None if x1.degree is None or x2.degree is None else x1.degree + x2.degree
        return MorArrow(x1.source, x2.target, B.mu2(x2.u, x1.u), B.mu2(x2.v, x1.v), h, degree)

    def mu1_via_twist(self, x: MorArrow) -> MorArrow:
        """(-1)^|x| d x."""
        return self.differential(x).scale(self.field.sign(self._n(x)))

    def mu2_via_twist(self, x2: MorArrow, x1: MorArrow) -> MorArrow:
        """(-1)^|x1| x2 . x1."""
        return self.compose(x2, x1).scale(self.field.sign(self._n(x1)))

    # ---- hom complexes --------------------------------------------------------

    def _slots(self, source: MorObject, target: MorObject) -> Dict[str, Tuple[str, str]]:
        return {"u": (source.A, target.A), "v": (source.B, target.B), "h": (source.A, target.B)}

    def hom_space(self, source: MorObject, target: MorObject) -> GradedSpace:
        """Degree n part: B(A,A')^n + B(B,B')^n + B(A,B')^{n-1}, labelled slot:label."""
        B = self.base
        slots = self._slots(source, target)
        labels: Dict[int, List[str]] = {}
        for slot, (x, y) in slots.items():
            space = B.hom_space(x, y)
            for j in space.degrees():
                n = j + 1 if slot == "h" else j
                labels.setdefault(n, []).extend(f"{slot}:{label}" for label in space.labels(j))
        ordered = {n: sorted(names, key=lambda s: ("uvh".index(s[0]),)) for n, names in labels.items()}
        return GradedSpace(ordered)

    def basis_arrow(self, source: MorObject, target: MorObject, name: str) -> MorArrow:
        slot, label = name.split(":", 1)
        element = self.base.basis(label)
        n = element.degree + 1 if slot == "h" else element.degree
        return self.arrow(source, target, degree=n, **{slot: element})

    def to_vector(self, x: MorArrow, space: Optional[GradedSpace] = None) -> GradedVector:
        space = space or self.hom_space(x.source, x.target)
        parts: Dict[int, List[FieldElement]] = {}
        for slot, element in (("u", x.u), ("v", x.v), ("h", x.h)):
            for label, value in element.coeffs.items():
                degree = self.base.degree_of(label) + (1 if slot == "h" else 0)
                coords = parts.setdefault(degree, [self.field.zero] * space.dim(degree))
                coords[space.position(degree, f"{slot}:{label}")] = value
        return GradedVector(space, self.field, parts)

    def from_vector(self, source: MorObject, target: MorObject, vector: GradedVector) -> MorArrow:
        out = self.zero(source, target, vector.degree)
        for degree in vector.space.degrees():
            for name, value in zip(vector.space.labels(degree), vector.coords(degree)):
                if value:
                    out = out + self.basis_arrow(source, target, name).scale(value)
        return out

    def hom(self, source: MorObject, target: MorObject) -> Complex:
        """The hom complex dgMor((A,B,f), (A',B',f')) with the plain differential."""
        space = self.hom_space(source, target)
        blocks = {}
        for n in space.degrees():
            if space.dim(n + 1) == 0:
                continue
            columns = [self.to_vector(self.differential(self.basis_arrow(source, target, name)), space).coords(n + 1)
                       for name in space.labels(n)]
            blocks[n] = [[col[i] for col in columns] for i in range(space.dim(n + 1))]
        return Complex(space, GradedMap(space, space, 1, blocks, self.field))


def dgmor_hom(Q: DgMorCategory, src: MorObject, tgt: MorObject) -> Complex:
    """The dgMor hom complex; d o d = 0 is verified on construction."""
    return Q.hom(src, tgt)


def dgmor_compose(Q: DgMorCategory, x2: MorArrow, x1: MorArrow) -> MorArrow:
    return Q.compose(x2, x1)


def dgmor_mu1(Q: DgMorCategory, x: MorArrow) -> MorArrow:
    return Q.mu1(x)


def dgmor_mu2(Q: DgMorCategory, x2: MorArrow, x1: MorArrow) -> MorArrow:
    return Q.mu2(x2, x1)

"""Strictly unital A-infinity functors and pre-natural transformations.

Components are sparse over composable basis tuples ``(f_d, ..., f_1)`` of the
source and extended multilinearly.  The target is any category exposing
``zero``, ``unit``, ``mu1``, ``mu2``, ``degree`` and ``check_object``: a
``DgPresentation`` or the dgMor category of one.
"""
from itertools import product
from typing import Any, Dict, Mapping, Optional, Sequence, Tuple
from src.ainf.tuples import BasisTuple, endpoints, has_identity, is_composable
from src.dgcat.presentation import DgPresentation
from src.utils.errors import NotComposable, ShapeError, SourceTargetMismatch


def _check_tuple(source: DgPresentation, fs: BasisTuple) -> None:
    if not fs:
        raise ShapeError("component tuples are nonempty")
    for label in fs:
        if not source.has_label(label):
            raise ShapeError(f"'{label}' is not a basis label of {source.name}")
    if not is_composable(source, fs):
        raise NotComposable(fs[0], fs[-1], f"tuple ({', '.join(fs)}) is not composable")


def _expand(args: Sequence[Any]):
    """Yield (coefficient, label tuple) over the basis expansion of the arguments."""
    expansions = [list(x.coeffs.items()) for x in args]
    for combo in product(*expansions):
        coefficient = None
        for _, c in combo:
            coefficient = c if coefficient is None else coefficient * c
        yield coefficient, tuple(label for label, _ in combo)


class AInfFunctor:
    """An A-infinity functor F: source -> target with finitely many components."""

    def __init__(self, name: str, source: DgPresentation, target: Any,
                 object_map: Mapping[str, Any],
                 components: Optional[Mapping[BasisTuple, Any]] = None,
                 max_degree: Optional[int] = None):
        """Build a functor.

        Args:
            name: Display name
            source: Source presentation
            target: Target category
            object_map: F0 on every source object
            components: Values F^d(f_d, ..., f_1); missing tuples are zero,
                except F1(1_X), which defaults to 1_F(X)
            max_degree: Declared bound on nonzero components

        Raises:
            ShapeError: On unmapped objects or malformed tuples
            SourceTargetMismatch: If a value lies in the wrong hom
        """
        self.name = name
        self.source = source
        self.target = target
        self.object_map: Dict[str, Any] = {}
        for obj in source.objects:
            if obj not in object_map:
                raise ShapeError(f"{name}: object '{obj}' is not mapped")
            self.object_map[obj] = object_map[obj]

        self.components: Dict[BasisTuple, Any] = {}
        for fs, value in (components or {}).items():
            fs = tuple(fs)
            _check_tuple(source, fs)
            x0, xd = endpoints(source, fs)
            if (value.source, value.target) != (self.object_map[x0], self.object_map[xd]):
                raise SourceTargetMismatch(
                    f"{name}^{len(fs)}({', '.join(fs)}) must lie in ({self.object_map[x0]}, {self.object_map[xd]})")
            if not value.is_zero() or (len(fs) == 1 and source.is_unit(fs[0])):
                self.components[fs] = value

        stored = max((len(fs) for fs in self.components), default=1)
        self.max_degree = max(stored, max_degree or 1)

    @classmethod
    def identity(cls, p: DgPresentation) -> "AInfFunctor":
        """The strict identity functor of a presentation."""
        return cls(f"id_{p.name}", p, p, {obj: obj for obj in p.objects},
                   {(label,): p.basis(label) for label in p.labels()})

    def on_object(self, obj: str) -> Any:
        return self.object_map[obj]

    def component(self, fs: BasisTuple) -> Any:
        """F^d on a basis tuple."""
        fs = tuple(fs)
        if fs in self.components:
            return self.components[fs]
        x0, xd = endpoints(self.source, fs)
        if len(fs) == 1 and self.source.is_unit(fs[0]):
            return self.target.unit(self.object_map[x0])
        return self.target.zero(self.object_map[x0], self.object_map[xd])

    def evaluate(self, args: Sequence[Any]) -> Any:
        """F^d on arbitrary source elements (f_d, ..., f_1), multilinearly."""
        args = tuple(args)
        for i in range(len(args) - 1):
            if args[i].source != args[i + 1].target:
                raise NotComposable(repr(args[i]), repr(args[i + 1]))
        out = self.target.zero(self.object_map[args[-1].source], self.object_map[args[0].target])
        for coefficient, fs in _expand(args):
            out = out + self.component(fs).scale(coefficient)
        return out

    def stored_tuples(self) -> Tuple[BasisTuple, ...]:
        return tuple(self.components)

    def __repr__(self) -> str:
        return f"AInfFunctor({self.name!r}: {self.source.name} -> {getattr(self.target, 'name', self.target)})"


class PreNatTrans:
    """A degree-g pre-natural transformation h: F -> G."""

    def __init__(self, F: AInfFunctor, G: AInfFunctor, degree: int,
                 h0: Optional[Mapping[str, Any]] = None,
                 components: Optional[Mapping[BasisTuple, Any]] = None,
                 max_degree: Optional[int] = None):
        """Build a pre-natural transformation.

        Raises:
            SourceTargetMismatch: If F and G are not parallel or a value lies
                in the wrong hom
        """
        if F.source is not G.source or F.target is not G.target:
            raise SourceTargetMismatch(f"{F.name} and {G.name} are not parallel")
        self.F = F
        self.G = G
        self.degree = degree
        self.source = F.source
        self.target = F.target

        self.h0: Dict[str, Any] = {}
        for obj, value in (h0 or {}).items():
            if obj not in self.source.objects:
                raise ShapeError(f"'{obj}' is not an object of {self.source.name}")
            if (value.source, value.target) != (F.on_object(obj), G.on_object(obj)):
                raise SourceTargetMismatch(f"h0 at {obj} must lie in ({F.on_object(obj)}, {G.on_object(obj)})")
            if not value.is_zero():
                self.h0[obj] = value

        self.components: Dict[BasisTuple, Any] = {}
        for fs, value in (components or {}).items():
            fs = tuple(fs)
            _check_tuple(self.source, fs)
            x0, xd = endpoints(self.source, fs)
            if (value.source, value.target) != (F.on_object(x0), G.on_object(xd)):
                raise SourceTargetMismatch(
                    f"h^{len(fs)}({', '.join(fs)}) must lie in ({F.on_object(x0)}, {G.on_object(xd)})")
            if not value.is_zero():
                self.components[fs] = value

        stored = max((len(fs) for fs in self.components), default=0)
        self.max_degree = max(stored, max_degree or 0)

    @classmethod
    def zero(cls, F: AInfFunctor, G: AInfFunctor, degree: int = 0) -> "PreNatTrans":
        return cls(F, G, degree)

    def at(self, obj: str) -> Any:
        """h0 at an object."""
        if obj in self.h0:
            return self.h0[obj]
        return self.target.zero(self.F.on_object(obj), self.G.on_object(obj))

    def component(self, fs: BasisTuple) -> Any:
        fs = tuple(fs)
        if fs in self.components:
            return self.components[fs]
        x0, xd = endpoints(self.source, fs)
        return self.target.zero(self.F.on_object(x0), self.G.on_object(xd))

    def evaluate(self, args: Sequence[Any]) -> Any:
        """h^d on arbitrary source elements (f_d, ..., f_1), multilinearly."""
        args = tuple(args)
        out = self.target.zero(self.F.on_object(args[-1].source), self.G.on_object(args[0].target))
        for coefficient, fs in _expand(args):
            out = out + self.component(fs).scale(coefficient)
        return out

    def identity_tuples_vanish(self) -> bool:
        """True when no stored component has an identity argument."""
        return not any(has_identity(self.source, fs) for fs in self.components)

    def __repr__(self) -> str:
        return f"PreNatTrans({self.F.name} -> {self.G.name}, degree {self.degree})"

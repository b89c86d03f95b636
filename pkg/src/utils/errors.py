"""Exception hierarchy shared by every layer of the engine.

Each exception carries the structured data the caller needs to build a
report, and an ``exit_code`` used by the command-line interface.
"""
from typing import Any, Dict, List, Optional, Sequence, Tuple


class DgLiftError(Exception):
    """Base class for all engine errors."""

    exit_code: int = 1


class ShapeError(DgLiftError, ValueError):
    """Malformed input: wrong block shape, inhomogeneous element, unknown label."""


class FieldError(DgLiftError, ValueError):
    """Invalid field declaration or scalar."""


class NotComposable(DgLiftError):
    """Two morphisms do not share the middle object."""

    def __init__(self, left: str, right: str, detail: str = ""):
        self.left = left
        self.right = right
        super().__init__(f"{left} and {right} are not composable{': ' + detail if detail else ''}")


class NotCocycle(DgLiftError):
    """An element expected to be closed has a nonzero differential."""

    def __init__(self, element: Any, detail: str = ""):
        self.element = element
        super().__init__(f"not a cocycle: {element}{' (' + detail + ')' if detail else ''}")


class NotCoboundary(DgLiftError):
    """The linear system d(x) = y is inconsistent."""

    def __init__(self, element: Any, degree: int):
        self.element = element
        self.degree = degree
        super().__init__(f"not a coboundary in degree {degree}: {element}")


class DegreeViolation(DgLiftError):
    """A stored component does not have the degree its type mandates."""

    def __init__(self, where: str, expected: int, actual: Optional[int]):
        self.where = where
        self.expected = expected
        self.actual = actual
        super().__init__(f"{where}: expected degree {expected}, got {actual}")


class DegreeMismatch(DegreeViolation):
    """Inputs of an operation disagree on degrees."""


class SourceTargetMismatch(DgLiftError):
    """Functors or transformations are not composable / not parallel."""


class NotWellDefined(DgLiftError):
    """A construction on cohomology classes depends on the representative."""


class NotClosed(DgLiftError):
    """A transformation expected to be closed is not."""


class NotLinearCategory(DgLiftError):
    """A presentation expected to be concentrated in degree 0 is not."""


class InvalidPrimitive(DgLiftError):
    """A supplied primitive does not satisfy mu1(primitive) = component."""


class PartialDataInvalid(DgLiftError):
    """A partial functor sequence fails its equations below the current degree."""


class VanishingHypothesisFails(DgLiftError):
    """Some negative cohomology of B(F(E), G(E')) is nonzero."""

    def __init__(self, failures: Sequence[Dict[str, Any]]):
        self.failures = list(failures)
        parts = [f"H^{f['degree']}({f['source']},{f['target']}) has dimension {f['dimension']}"
                 for f in self.failures]
        super().__init__("negative vanishing fails: " + "; ".join(parts))


class NaturalityFails(DgLiftError):
    """The given H0 family is not a natural transformation H0(F) -> H0(G)."""

    def __init__(self, morphism: str, detail: str = ""):
        self.morphism = morphism
        super().__init__(f"naturality fails at {morphism}{': ' + detail if detail else ''}")


class ValidationError(DgLiftError):
    """A presentation violates a dg-category axiom."""

    def __init__(self, axiom: str, basis_tuple: Tuple[str, ...], detail: str = ""):
        self.axiom = axiom
        self.basis_tuple = tuple(basis_tuple)
        super().__init__(f"{axiom} violated at ({', '.join(self.basis_tuple)})"
                         f"{': ' + detail if detail else ''}")


class ParseError(DgLiftError):
    """Located syntax or reference error in an input file."""

    exit_code = 2

    def __init__(self, line: int, column: int, message: str):
        self.line = line
        self.column = column
        self.message = message
        super().__init__(f"line {line}, column {column}: {message}")


class CertificateError(DgLiftError):
    """A certificate file is malformed or its digest does not match."""

    def __init__(self, message: str, problems: Optional[List[str]] = None):
        self.problems = list(problems or [])
        super().__init__(message)


class InternalInvariantError(DgLiftError):
    """An invariant that the mathematics guarantees did not hold."""

    exit_code = 3


class InternalObstructionNonzero(InternalInvariantError):
    """An obstruction failed to be a cocycle, or a residual equation failed."""

    def __init__(self, stage: int, basis_tuple: Tuple[str, ...], detail: str = ""):
        self.stage = stage
        self.basis_tuple = tuple(basis_tuple)
        super().__init__(f"stage {stage}, tuple ({', '.join(self.basis_tuple)}): {detail}")

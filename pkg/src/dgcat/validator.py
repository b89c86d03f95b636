"""Axiom checks for dg-category presentations."""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple
from src.dgcat.presentation import DgPresentation
from src.utils.errors import ShapeError, ValidationError
from src.utils.logger import get_logger

logger = get_logger("dgcat.validator")


def _has_degree(x, expected: int) -> bool:
    """True for zero or for an element homogeneous of the expected degree."""
    try:
        return x.degree in (None, expected)
    except ShapeError:
        return False


@dataclass(frozen=True)
class Violation:
    """One failed axiom instance."""

    axiom: str
    basis_tuple: Tuple[str, ...]
    detail: str = ""

    def to_record(self) -> Dict[str, Any]:
        return {"axiom": self.axiom, "tuple": ", ".join(self.basis_tuple), "detail": self.detail}


@dataclass
class ValidationReport:
    """Every violated axiom of a presentation; empty means valid."""

    category: str
    violations: List[Violation] = field(default_factory=list)

    @property
    def is_valid(self) -> bool:
        return not self.violations

    def axioms(self) -> List[str]:
        """Violated axiom names, in first-seen order."""
        seen: List[str] = []
        for v in self.violations:
            if v.axiom not in seen:
                seen.append(v.axiom)
        return seen

    def raise_first(self) -> None:
        """Raise the first violation as a ValidationError."""
        if self.violations:
            first = self.violations[0]
            raise ValidationError(first.axiom, first.basis_tuple, first.detail)

    def to_records(self) -> List[Dict[str, Any]]:
        return [v.to_record() for v in self.violations]


class DgCategoryValidator:
    """Checks the dg-category axioms on all basis tuples of a presentation."""

    AXIOMS = ["differential-degree", "d-squared", "composition-degree",
              "leibniz", "associativity", "unit", "unit-closed"]

    @classmethod
    def check_differential(cls, p: DgPresentation) -> List[Violation]:
        """d raises degree by one and squares to zero."""
        violations = []
        for label in p.labels():
            x = p.basis(label)
            dx = p.d(x)
            if not _has_degree(dx, p.degree_of(label) + 1):
                violations.append(Violation("differential-degree", (label,),
                                            f"d {label} = {dx.format()}"))
            ddx = p.d(dx)
            if not ddx.is_zero():
                violations.append(Violation("d-squared", (label,), f"d d {label} = {ddx.format()}"))
        return violations

    @classmethod
    def check_composition(cls, p: DgPresentation) -> List[Violation]:
        """Degrees of composites and the Leibniz rule on every composable pair."""
        violations = []
        for f in p.labels():
            for g in p.labels(src=p.hom_of(f)[1]):
                gf = p.compose(p.basis(g), p.basis(f))
                if not _has_degree(gf, p.degree_of(g) + p.degree_of(f)):
                    violations.append(Violation("composition-degree", (g, f), f"{g} . {f} = {gf.format()}"))
                lhs = p.d(gf)
                rhs = p.compose(p.d(p.basis(g)), p.basis(f)) + \
                    p.compose(p.basis(g), p.d(p.basis(f))).scale(p.field.sign(p.degree_of(g)))
                if lhs != rhs:
                    violations.append(Violation("leibniz", (g, f),
                                                f"d({g} . {f}) = {lhs.format()} but expected {rhs.format()}"))
        return violations

    @classmethod
    def check_associativity(cls, p: DgPresentation) -> List[Violation]:
        violations = []
        for f in p.labels():
            for g in p.labels(src=p.hom_of(f)[1]):
                gf = p.compose(p.basis(g), p.basis(f))
                for h in p.labels(src=p.hom_of(g)[1]):
                    left = p.compose(p.compose(p.basis(h), p.basis(g)), p.basis(f))
                    right = p.compose(p.basis(h), gf)
                    if left != right:
                        violations.append(Violation("associativity", (h, g, f),
                                                    f"({h} . {g}) . {f} = {left.format()}, "
                                                    f"{h} . ({g} . {f}) = {right.format()}"))
        return violations

    @classmethod
    def check_units(cls, p: DgPresentation) -> List[Violation]:
        violations = []
        for obj in p.objects:
            unit = p.unit(obj)
            if not p.d(unit).is_zero():
                violations.append(Violation("unit-closed", (p.units[obj],), f"d = {p.d(unit).format()}"))
            for f in p.labels(tgt=obj):
                x = p.basis(f)
                if p.compose(unit, x) != x:
                    violations.append(Violation("unit", (p.units[obj], f), "left unit law fails"))
            for f in p.labels(src=obj):
                x = p.basis(f)
                if p.compose(x, unit) != x:
                    violations.append(Violation("unit", (f, p.units[obj]), "right unit law fails"))
        return violations

    @classmethod
    def validate(cls, p: DgPresentation) -> ValidationReport:
        """Run every axiom check.

        Args:
            p: Structurally well-formed presentation

        Returns:
            ValidationReport listing every violation
        """
        report = ValidationReport(p.name)
        report.violations.extend(cls.check_differential(p))
        report.violations.extend(cls.check_units(p))
        report.violations.extend(cls.check_composition(p))
        report.violations.extend(cls.check_associativity(p))

        if report.is_valid:
            logger.debug(f"{p.name}: all {len(cls.AXIOMS)} axiom families hold")
        else:
            logger.warning(f"{p.name}: {len(report.violations)} axiom violations ({', '.join(report.axioms())})")
        return report


def validate_dg_category(p: DgPresentation) -> ValidationReport:
    """Report every violated dg-category axiom of p."""
    return DgCategoryValidator.validate(p)

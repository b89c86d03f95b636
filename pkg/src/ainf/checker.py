"""Checks of the A-infinity functor equations with dg source and target."""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence
from src.ainf.functor import AInfFunctor
from src.ainf.tuples import BasisTuple, all_tuples, basis_elements
from src.dgcat.ainf_view import tuple_maltese
from src.utils.errors import DegreeViolation
from src.utils.logger import get_logger

logger = get_logger("ainf.checker")


@dataclass
class FunctorReport:
    """Nonzero residuals of the functor equations and unitality failures."""

    functor: str
    d_max: int
    residuals: List[Dict[str, Any]] = field(default_factory=list)
    unitality: List[str] = field(default_factory=list)
    objects: List[str] = field(default_factory=list)

    @property
    def is_valid(self) -> bool:
        return not (self.residuals or self.unitality or self.objects)

    def to_records(self) -> List[Dict[str, Any]]:
        records = [{"kind": "object", "tuple": "", "detail": p} for p in self.objects]
        records += [{"kind": "unitality", "tuple": "", "detail": p} for p in self.unitality]
        records += [{"kind": "equation", "tuple": ", ".join(r["tuple"]), "detail": r["residual"]}
                    for r in self.residuals]
        return records


def expected_degree(source, fs: BasisTuple, shift: int) -> int:
    """|f_1| + ... + |f_d| + shift - d."""
    return sum(source.degree_of(label) for label in fs) + shift - len(fs)


def check_component_degrees(F: AInfFunctor) -> None:
    """Every stored F^d value has degree |f_1| + ... + |f_d| + 1 - d.

    Raises:
        DegreeViolation: On the first offending component
    """
    for fs, value in F.components.items():
        expected = expected_degree(F.source, fs, 1)
        actual = F.target.degree(value)
        if actual is not None and actual != expected:
            raise DegreeViolation(f"{F.name}^{len(fs)}({', '.join(fs)})", expected, actual)


def functor_equation_residual(F: AInfFunctor, args: Sequence[Any]) -> Any:
    """LHS - RHS of the functor equation on (f_d, ..., f_1).

    LHS = mu1(F^d(f)) + sum_j mu2(F^j(left j args), F^{d-j}(rest));
    RHS = sum_n (-1)^maltese_n F^d(.., mu1(f_{n+1}), ..)
        + sum_n (-1)^maltese_n F^{d-1}(.., mu2(f_{n+2}, f_{n+1}), ..).
    """
    S, T = F.source, F.target
    args = tuple(args)
    d = len(args)
    lhs = T.mu1(F.evaluate(args))
    for j in range(1, d):
        lhs = lhs + T.mu2(F.evaluate(args[:j]), F.evaluate(args[j:]))

    rhs = T.zero(lhs.source, lhs.target)
    for n in range(d):
        sign = T.field.sign(tuple_maltese(args, n))
        inner = S.mu1(args[d - n - 1])
        rhs = rhs + F.evaluate(args[:d - n - 1] + (inner,) + args[d - n:]).scale(sign)
    for n in range(d - 1):
        sign = T.field.sign(tuple_maltese(args, n))
        inner = S.mu2(args[d - n - 2], args[d - n - 1])
        rhs = rhs + F.evaluate(args[:d - n - 2] + (inner,) + args[d - n:]).scale(sign)
    return lhs - rhs


def check_strict_unitality(F: AInfFunctor) -> List[str]:
    """F1(1_X) = 1_F(X) and F^d(.., 1, ..) = 0 for d >= 2."""
    problems = []
    for obj in F.source.objects:
        unit = F.source.units[obj]
        if F.component((unit,)) != F.target.unit(F.on_object(obj)):
            problems.append(f"{F.name}1({unit}) is not the unit of {F.on_object(obj)}")
    for fs, value in F.components.items():
        if len(fs) >= 2 and any(F.source.is_unit(label) for label in fs) and not value.is_zero():
            problems.append(f"{F.name}^{len(fs)}({', '.join(fs)}) is nonzero on an identity")
    return problems


def check_ainf_functor(F: AInfFunctor, d_max: int) -> FunctorReport:
    """Evaluate the functor equations on all non-identity tuples up to d_max.

    Raises:
        DegreeViolation: If a stored component has the wrong degree
    """
    check_component_degrees(F)
    report = FunctorReport(F.name, d_max)
    for obj in F.source.objects:
        report.objects.extend(F.target.check_object(F.on_object(obj)))
    report.unitality.extend(check_strict_unitality(F))

    for fs in all_tuples(F.source, d_max):
        residual = functor_equation_residual(F, basis_elements(F.source, fs))
        if not residual.is_zero():
            logger.debug(f"{F.name}: residual on ({', '.join(fs)}) = {residual.format()}")
            report.residuals.append({"tuple": fs, "residual": residual.format()})

    if report.is_valid:
        logger.debug(f"{F.name}: functor equations hold up to degree {d_max}")
    else:
        logger.warning(f"{F.name}: {len(report.residuals)} residuals, "
                       f"{len(report.unitality) + len(report.objects)} other problems")
    return report

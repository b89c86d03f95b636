"""The negative vanishing hypothesis and the truncation bound."""
from dataclasses import dataclass, field
from typing import Any, Dict, List
from src.ainf.functor import AInfFunctor
from src.graded.complexes import cohomology_basis
from src.utils.errors import VanishingHypothesisFails
from src.utils.logger import EngineLogger, get_logger

logger = get_logger("lift.vanishing")


@dataclass
class VanishingReport:
    """Negative cohomology dimensions of B(F(E), G(E')) and the derived bound."""

    entries: List[Dict[str, Any]] = field(default_factory=list)
    min_degree: int = 0
    d_max: int = 2

    @property
    def failures(self) -> List[Dict[str, Any]]:
        return [e for e in self.entries if e["dimension"] > 0]

    @property
    def holds(self) -> bool:
        return not self.failures

    def raise_if_fails(self) -> None:
        if self.failures:
            raise VanishingHypothesisFails(self.failures)

    def to_records(self) -> List[Dict[str, Any]]:
        return list(self.entries)


def truncation_failures(F: AInfFunctor, G: AInfFunctor, d: int) -> List[str]:
    """Nonzero hom spaces that could carry F^d, G^d or h^d.

    These are B(F E, G E')^{-d}, B(F E, F E')^{1-d} and B(G E, G E')^{1-d}.
    """
    B = F.target
    failures = []
    for e0 in F.source.objects:
        for e1 in F.source.objects:
            for x, y, degree in ((F.on_object(e0), G.on_object(e1), -d),
                                 (F.on_object(e0), F.on_object(e1), 1 - d),
                                 (G.on_object(e0), G.on_object(e1), 1 - d)):
                if B.hom_dim(x, y, degree):
                    failures.append(f"B({x},{y})^{degree} has dimension {B.hom_dim(x, y, degree)}")
    return failures


def check_negative_vanishing(F: AInfFunctor, G: AInfFunctor) -> VanishingReport:
    """H^j(B(F(E), G(E'))) for every pair of objects and every j < 0.

    m is the minimal degree over B(F E, G E'), B(F E, F E') and B(G E, G E')
    (0 if all are empty), and d_max = max(2, 1 - m).
    """
    B = F.target
    report = VanishingReport()
    degrees = []
    for e0 in F.source.objects:
        for e1 in F.source.objects:
            src, tgt = F.on_object(e0), G.on_object(e1)
            hom = B.hom(src, tgt)
            for x, y in ((src, tgt), (src, F.on_object(e1)), (G.on_object(e0), tgt)):
                low = B.hom_space(x, y).min_degree()
                if low is not None:
                    degrees.append(low)
            for j in hom.space.degrees():
                if j >= 0:
                    continue
                dimension = cohomology_basis(hom, j).dimension
                report.entries.append({"degree": j, "source": src, "target": tgt, "dimension": dimension})

    report.min_degree = min(degrees) if degrees else 0
    report.d_max = max(2, 1 - report.min_degree)

    if report.holds:
        EngineLogger.log_stage("VANISHING", "negative vanishing holds", m=report.min_degree, d_max=report.d_max)
    else:
        for failure in report.failures:
            logger.warning(f"H^{failure['degree']}({failure['source']},{failure['target']}) "
                           f"has dimension {failure['dimension']}")
    return report

"""Lifting problems: two functors out of a linear category and an H0 transformation."""
from typing import Dict, Mapping
from src.ainf.checker import check_ainf_functor
from src.ainf.functor import AInfFunctor
from src.ainf.h0 import H0Functor, h0_of_functor, require_naturality
from src.dgcat.homotopy import H0Category, H0Class, homotopy_category
from src.dgcat.presentation import DgPresentation, is_linear
from src.dgcat.validator import validate_dg_category
from src.utils.errors import NotLinearCategory, ShapeError, SourceTargetMismatch, ValidationError
from src.utils.logger import get_logger

logger = get_logger("lift.problem")


def functor_check_depth(F: AInfFunctor) -> int:
    """Depth to which input functors are checked: covers every degree that can carry data."""
    m = F.target.min_degree()
    return max(2, 1 - (m if m is not None and m < 0 else 0), F.max_degree)


class LiftProblem:
    """Validated input of the lifting algorithm.

    Construction validates E and B, checks that E is linear, that F and G are
    A-infinity functors, and that phi_bar is natural from H0(F) to H0(G).
    """

    def __init__(self, E: DgPresentation, B: DgPresentation, F: AInfFunctor, G: AInfFunctor,
                 phi_bar: Mapping[str, H0Class], name: str = "problem"):
        """Build a lifting problem.

        Raises:
            ValidationError: If a presentation or a functor fails its axioms
            NotLinearCategory: If E is not concentrated in degree 0
            SourceTargetMismatch: If F or G does not run from E to B
            NaturalityFails: If phi_bar is not natural
        """
        self.name = name
        self.E, self.B, self.F, self.G = E, B, F, G
        for p in (E, B):
            validate_dg_category(p).raise_first()
        if not is_linear(E):
            raise NotLinearCategory(f"{E.name} must be concentrated in degree 0 with zero differential")
        for functor in (F, G):
            if functor.source is not E or functor.target is not B:
                raise SourceTargetMismatch(f"{functor.name} must run from {E.name} to {B.name}")
            depth = functor_check_depth(functor)
            report = check_ainf_functor(functor, depth)
            if not report.is_valid:
                first = (report.residuals[0]["tuple"] if report.residuals else ())
                raise ValidationError(f"functor {functor.name}", first,
                                      "; ".join(r["detail"] for r in report.to_records()[:3]))

        self.h0_E: H0Category = homotopy_category(E)
        self.h0_B: H0Category = homotopy_category(B)
        self.F0: H0Functor = h0_of_functor(F, self.h0_E, self.h0_B)
        self.G0: H0Functor = h0_of_functor(G, self.h0_E, self.h0_B)

        self.phi_bar: Dict[str, H0Class] = {}
        for obj in E.objects:
            if obj not in phi_bar:
                raise ShapeError(f"no H0 class given at {obj}")
            c = phi_bar[obj]
            expected = (F.on_object(obj), G.on_object(obj))
            if (c.source, c.target) != expected:
                raise ShapeError(f"class at {obj} must lie in H0{expected}")
            self.phi_bar[obj] = self.h0_B.make_class(c.source, c.target, c.coords)
        require_naturality(self.phi_bar, self.F0, self.G0)
        logger.info(f"{name}: lifting problem over {len(E.objects)} objects validated")

    @property
    def field(self):
        return self.B.field

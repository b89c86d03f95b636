"""Lift certificates: the lifted transformation, its transcript and the iso flag."""
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Optional
from src.ainf.functor import PreNatTrans
from src.ainf.nattrans import (check_transformation_degrees, check_transformation_unitality,
                               nattrans_coboundary)
from src.ainf.tuples import all_tuples
from src.dgcat.homotopy import H0Class, h0_invertible
from src.lift.problem import LiftProblem
from src.lift.vanishing import truncation_failures
from src.utils.errors import DegreeViolation, NotCocycle
from src.utils.logger import EngineLogger, get_logger

logger = get_logger("lift.certificate")


@dataclass
class LiftCertificate:
    """A closed degree-0 transformation F -> G lifting phi_bar, with its derivation."""

    problem: LiftProblem
    transformation: PreNatTrans
    d_max: int
    min_degree: int
    transcript: List[Dict[str, Any]] = field(default_factory=list)
    vanishing: List[Dict[str, Any]] = field(default_factory=list)
    iso_flag: Optional[bool] = None
    inverses: Dict[str, H0Class] = field(default_factory=dict)

    @property
    def field(self):
        return self.problem.field

    def component_records(self) -> List[Dict[str, Any]]:
        """One row per object and per stored component, for display."""
        h = self.transformation
        rows = [{"degree": 0, "input": obj, "value": h.at(obj).format()} for obj in h.source.objects]
        rows += [{"degree": len(fs), "input": ", ".join(fs), "value": value.format()}
                 for fs, value in sorted(h.components.items(), key=lambda kv: (len(kv[0]), kv[0]))]
        return rows


@dataclass
class CertificateCheck:
    """Problems found while re-verifying a certificate."""

    problems: List[str] = field(default_factory=list)

    @property
    def is_valid(self) -> bool:
        return not self.problems


def certify_isomorphism(certificate: LiftCertificate) -> LiftCertificate:
    """Set the iso flag: phi_bar_E is invertible in H0(B) for every object E."""
    problem = certificate.problem
    inverses = {}
    for obj in problem.E.objects:
        inverse = h0_invertible(problem.h0_B, problem.phi_bar[obj])
        if inverse is not None:
            inverses[obj] = inverse
        else:
            logger.info(f"{problem.name}: class at {obj} is not invertible in H0")
    iso = len(inverses) == len(problem.E.objects)
    EngineLogger.log_stage("CERTIFY", "isomorphism check done", iso=iso, invertible=len(inverses))
    return replace(certificate, iso_flag=iso, inverses=inverses)


def verify_certificate(certificate: LiftCertificate) -> CertificateCheck:
    """Re-check every claim of a certificate against its problem.

    Checks degrees, unitality, closedness on every tuple up to d_max, the
    vanishing of the spaces beyond d_max, agreement of H0 with phi_bar and
    the iso flag.
    """
    problem = certificate.problem
    h = certificate.transformation
    check = CertificateCheck()

    try:
        check_transformation_degrees(h)
    except DegreeViolation as exc:
        check.problems.append(str(exc))
    check.problems.extend(check_transformation_unitality(h))
    if h.degree != 0:
        check.problems.append(f"transformation has degree {h.degree}")

    for obj in problem.E.objects:
        if not nattrans_coboundary(h, obj).is_zero():
            check.problems.append(f"h0 at {obj} is not closed")
            continue
        try:
            c = problem.h0_B.class_of(h.at(obj))
        except NotCocycle as exc:
            check.problems.append(str(exc))
            continue
        if c != problem.phi_bar[obj]:
            check.problems.append(f"[h0 at {obj}] differs from the given class")

    for fs in all_tuples(problem.E, certificate.d_max):
        value = nattrans_coboundary(h, fs)
        if not value.is_zero():
            check.problems.append(f"mu1(h) on ({', '.join(fs)}) = {value.format()}")
    beyond = [fs for fs in h.components if len(fs) > certificate.d_max]
    check.problems.extend(f"component on ({', '.join(fs)}) lies beyond d_max" for fs in beyond)
    check.problems.extend(truncation_failures(problem.F, problem.G, certificate.d_max + 1))

    if certificate.iso_flag is not None:
        recomputed = all(h0_invertible(problem.h0_B, problem.phi_bar[obj]) is not None
                         for obj in problem.E.objects)
        if recomputed != certificate.iso_flag:
            check.problems.append(f"iso flag {certificate.iso_flag} does not match H0")
        for obj, inverse in certificate.inverses.items():
            c = problem.phi_bar[obj]
            if (problem.h0_B.compose(inverse, c) != problem.h0_B.identity_class(c.source)
                    or problem.h0_B.compose(c, inverse) != problem.h0_B.identity_class(c.target)):
                check.problems.append(f"recorded inverse at {obj} is not an inverse")

    if check.is_valid:
        logger.info(f"{problem.name}: certificate verified")
    else:
        logger.warning(f"{problem.name}: certificate has {len(check.problems)} problems")
    return check

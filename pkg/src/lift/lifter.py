"""Degree-by-degree lifting of an H0 transformation to a closed A-infinity one.

Stages:
    VANISHING  negative cohomology of B(F E, G E') vanishes; fixes d_max
    DEGREE-0   h0_E is the canonical representative of phi_bar_E
    DEGREE-1   h1(f) solves d h1 = G1(f) h0 - h0 F1(f), consistent by naturality
    DEGREE-d   h^d is a directed homotopy for the obstruction of the packed functor
    VERIFY     closedness, H0 and unitality re-checked from scratch
    CERTIFY    invertibility of every phi_bar_E in H0(B)
"""
from typing import Dict
from src.ainf.functor import PreNatTrans
from src.ainf.nattrans import check_transformation_unitality, family_equal, h0_of_nattrans, is_closed
from src.ainf.tuples import BasisTuple, basis_elements, composable_tuples, endpoints
from src.dgcat.element import Element
from src.dgmor.category import DgMorCategory
from src.dgmor.homotopy import solve_directed_homotopy
from src.dgmor.packing import pack_transformation
from src.lift.certificate import LiftCertificate, certify_isomorphism
from src.lift.obstruction import obstruction_cocycle, verify_partial_functor
from src.lift.problem import LiftProblem
from src.lift.vanishing import check_negative_vanishing, truncation_failures
from src.utils.errors import (InternalInvariantError, InternalObstructionNonzero, InvalidPrimitive,
                              NotClosed, NotCoboundary, NotCocycle, PartialDataInvalid,
                              VanishingHypothesisFails)
from src.utils.logger import EngineLogger, get_logger

logger = get_logger("lift.lifter")

_SOLVER_ERRORS = (NotCocycle, NotCoboundary, InvalidPrimitive, VanishingHypothesisFails)


def lift_natural_transformation(problem: LiftProblem, certify: bool = True) -> LiftCertificate:
    """Lift phi_bar to a closed degree-0 pre-natural transformation h: F -> G.

    Args:
        problem: Validated lifting problem
        certify: Also decide whether the lift is an isomorphism in H0

    Returns:
        LiftCertificate holding h, the transcript and (optionally) the iso flag

    Raises:
        VanishingHypothesisFails: If some negative cohomology of B(F E, G E') is nonzero
        InternalObstructionNonzero: If an obstruction or residual fails to vanish
        InternalInvariantError: If the final verification fails
    """
    E, B, F, G = problem.E, problem.B, problem.F, problem.G
    report = check_negative_vanishing(F, G)
    report.raise_if_fails()
    d_max = report.d_max
    Q = DgMorCategory(B)
    transcript = []

    h0: Dict[str, Element] = {}
    for obj in E.objects:
        c = problem.phi_bar[obj]
        h0[obj] = problem.h0_B.representative(c)
        transcript.append({"stage": 0, "object": obj,
                           "class": [problem.field.format(x) for x in c.coords],
                           "representative": h0[obj].format()})
    EngineLogger.log_stage("DEGREE-0", "representatives chosen", objects=len(h0))

    components: Dict[BasisTuple, Element] = {}
    phi = pack_transformation(F, G, PreNatTrans(F, G, 0, h0), Q)
    for fs in composable_tuples(E, 1):
        (f,) = basis_elements(E, fs)
        x0, x1 = endpoints(E, fs)
        Ff, Gf = F.component(fs), G.component(fs)
        rhs = B.mu2(Gf, h0[x0]) - B.mu2(h0[x1], Ff)
        closed = Q.zero(phi.on_object(x0), phi.on_object(x1), 1)
        try:
            value = solve_directed_homotopy(Q, phi.on_object(x0), phi.on_object(x1), closed, Ff, Gf,
                                            check_vanishing=False)
        except _SOLVER_ERRORS as exc:
            raise InternalObstructionNonzero(1, fs, f"degree-1 equation has no solution: {exc}") from exc
        components[fs] = value
        transcript.append({"stage": 1, "tuple": list(fs), "rhs": rhs.format(), "solution": value.format()})
    EngineLogger.log_stage("DEGREE-1", "first components solved", tuples=len(composable_tuples(E, 1)))

    for d in range(2, d_max + 1):
        phi = pack_transformation(F, G, PreNatTrans(F, G, 0, h0, components), Q)
        try:
            verify_partial_functor(phi, d)
        except PartialDataInvalid as exc:
            raise InternalObstructionNonzero(d, (), str(exc)) from exc

        solved = {}
        tuples = composable_tuples(E, d)
        for fs in tuples:
            x0, xd = endpoints(E, fs)
            try:
                obstruction = obstruction_cocycle(phi, fs, validate_partial=False)
            except NotCocycle as exc:
                raise InternalObstructionNonzero(d, fs, str(exc)) from exc
            Ff, Gf = F.component(fs), G.component(fs)
            if obstruction.u != B.mu1(Ff) or obstruction.v != B.mu1(Gf):
                raise InternalObstructionNonzero(d, fs, "obstruction does not project to mu1(F^d), mu1(G^d)")
            try:
                value = solve_directed_homotopy(Q, phi.on_object(x0), phi.on_object(xd), obstruction, Ff, Gf)
            except _SOLVER_ERRORS as exc:
                raise InternalObstructionNonzero(d, fs, str(exc)) from exc
            solved[fs] = value
            transcript.append({"stage": d, "tuple": list(fs), "obstruction": obstruction.format(),
                               "cocycle": True, "solution": value.format()})
        components.update(solved)
        EngineLogger.log_stage(f"DEGREE-{d}", "obstructions killed", tuples=len(tuples),
                               nonzero=sum(1 for v in solved.values() if not v.is_zero()))

    beyond = truncation_failures(F, G, d_max + 1)
    if beyond:
        raise InternalInvariantError(f"spaces beyond d_max = {d_max} are nonzero: {'; '.join(beyond)}")

    h = PreNatTrans(F, G, 0, h0, components, max_degree=d_max)
    _verify_lift(problem, h, d_max)
    EngineLogger.log_stage("VERIFY", "lift verified", d_max=d_max, components=len(h.components))

    certificate = LiftCertificate(problem, h, d_max, report.min_degree, transcript, report.to_records())
    return certify_isomorphism(certificate) if certify else certificate


def _verify_lift(problem: LiftProblem, h: PreNatTrans, d_max: int) -> None:
    if not is_closed(h, d_max):
        raise InternalInvariantError(f"lifted transformation is not closed up to degree {d_max}")
    unitality = check_transformation_unitality(h)
    if unitality:
        raise InternalInvariantError("; ".join(unitality))
    try:
        family = h0_of_nattrans(h, d_max, problem.h0_B, problem.F0, problem.G0)
    except NotClosed as exc:
        raise InternalInvariantError(str(exc)) from exc
    if not family_equal(family, problem.phi_bar):
        raise InternalInvariantError("H0 of the lift differs from the given transformation")

"""Independent oracle: solve for a closed lift as one linear system.

Unknowns are a degree -1 correction k_E at every object (h0_E = rep_E + d k_E)
and every coordinate of h^d on every non-identity tuple up to d_max.  mu1 on
pre-natural transformations is linear in h, so each unknown contributes the
coboundary of its unit transformation as a column; the right-hand side is
minus the coboundary of the transformation built from the representatives.
"""
from typing import Dict, List, Optional, Tuple
from src.ainf.functor import PreNatTrans
from src.ainf.nattrans import nattrans_coboundary
from src.ainf.tuples import BasisTuple, all_tuples, endpoints
from src.graded.linalg import solve, transpose
from src.lift.problem import LiftProblem
from src.lift.vanishing import check_negative_vanishing
from src.utils.logger import get_logger

logger = get_logger("lift.oracle")

Unknown = Tuple[str, object, str]


def _slots(problem: LiftProblem, d_max: int) -> List[Tuple[object, str]]:
    """Coordinates of mu1(h): every label of B(F E, G E) and of B(F E0, G Ed) per tuple."""
    B, F, G = problem.B, problem.F, problem.G
    slots = [(obj, label) for obj in problem.E.objects
             for label in B.labels(F.on_object(obj), G.on_object(obj))]
    for fs in all_tuples(problem.E, d_max):
        x0, xd = endpoints(problem.E, fs)
        slots += [(fs, label) for label in B.labels(F.on_object(x0), G.on_object(xd))]
    return slots


def _unknowns(problem: LiftProblem, d_max: int) -> List[Unknown]:
    B, F, G = problem.B, problem.F, problem.G
    unknowns: List[Unknown] = []
    for obj in problem.E.objects:
        space = B.hom_space(F.on_object(obj), G.on_object(obj))
        unknowns += [("k", obj, label) for label in space.labels(-1)]
    for fs in all_tuples(problem.E, d_max):
        x0, xd = endpoints(problem.E, fs)
        space = B.hom_space(F.on_object(x0), G.on_object(xd))
        unknowns += [("h", fs, label) for label in space.labels(-len(fs))]
    return unknowns


def _coboundary_coords(h: PreNatTrans, slots: List[Tuple[object, str]]) -> List:
    values: Dict[object, object] = {}
    out = []
    for key, label in slots:
        if key not in values:
            values[key] = nattrans_coboundary(h, key)
        out.append(values[key].coefficient(label))
    return out


def _unit_transformation(problem: LiftProblem, unknown: Unknown) -> PreNatTrans:
    kind, key, label = unknown
    B = problem.B
    if kind == "k":
        return PreNatTrans(problem.F, problem.G, 0, {key: B.d(B.basis(label))})
    return PreNatTrans(problem.F, problem.G, 0, components={key: B.basis(label)})


def monolithic_lift(problem: LiftProblem, d_max: Optional[int] = None) -> Optional[PreNatTrans]:
    """A closed lift of phi_bar found by a single linear solve, or None.

    Args:
        problem: Validated lifting problem
        d_max: Truncation bound; defaults to the one from the vanishing check
    """
    field = problem.field
    if d_max is None:
        d_max = check_negative_vanishing(problem.F, problem.G).d_max
    reps = {obj: problem.h0_B.representative(problem.phi_bar[obj]) for obj in problem.E.objects}
    base = PreNatTrans(problem.F, problem.G, 0, reps)

    slots = _slots(problem, d_max)
    unknowns = _unknowns(problem, d_max)
    rhs = [-x for x in _coboundary_coords(base, slots)]
    columns = [_coboundary_coords(_unit_transformation(problem, u), slots) for u in unknowns]
    logger.debug(f"oracle system: {len(slots)} equations, {len(unknowns)} unknowns")

    if not unknowns:
        return base if all(field.is_zero(x) for x in rhs) else None
    solution = solve(transpose(columns, len(slots)), len(unknowns), rhs, field)
    if solution is None:
        logger.info(f"{problem.name}: oracle system is inconsistent")
        return None

    h0 = dict(reps)
    components: Dict[BasisTuple, object] = {}
    for (kind, key, label), x in zip(unknowns, solution):
        if field.is_zero(x):
            continue
        if kind == "k":
            h0[key] = h0[key] + problem.B.d(problem.B.basis(label)).scale(x)
        else:
            term = problem.B.basis(label).scale(x)
            components[key] = components[key] + term if key in components else term
    return PreNatTrans(problem.F, problem.G, 0, h0, components, max_degree=d_max)

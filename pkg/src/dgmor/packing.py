"""Packing (F, G, h) into one A-infinity functor into dgMor(B), and back.

phi0(X) = (F(X), G(X), h0_X) and phi^d = (F^d, G^d, h^d).  The packed functor
satisfies the functor equations exactly when h is closed.
"""
from typing import Any, List, Optional, Sequence, Tuple
from src.ainf.checker import expected_degree
from src.ainf.functor import AInfFunctor, PreNatTrans
from src.ainf.tuples import endpoints
from src.dgmor.category import DgMorCategory, MorArrow, MorObject
from src.utils.errors import DegreeMismatch, SourceTargetMismatch
from src.utils.logger import get_logger

logger = get_logger("dgmor.packing")


def pack_transformation(F: AInfFunctor, G: AInfFunctor, h: PreNatTrans,
                        Q: Optional[DgMorCategory] = None) -> AInfFunctor:
    """The functor phi: E -> dgMor(B) encoding (F, G, h).

    Packing is defined for any degree-0 h; a non-closed h yields a functor
    that fails ``check_ainf_functor``.

    Raises:
        SourceTargetMismatch: If h does not connect F to G
        DegreeMismatch: If h does not have degree 0
    """
    if h.F is not F or h.G is not G:
        raise SourceTargetMismatch(f"{h} does not connect {F.name} to {G.name}")
    if h.degree != 0:
        raise DegreeMismatch("packed transformation", 0, h.degree)
    Q = Q or DgMorCategory(F.target)
    E = F.source
    objects = {x: Q.make_object(F.on_object(x), G.on_object(x), h.at(x)) for x in E.objects}

    tuples = list(F.components) + [fs for fs in G.components if fs not in F.components]
    tuples += [fs for fs in h.components if fs not in F.components and fs not in G.components]
    components = {}
    for fs in tuples:
        x0, xd = endpoints(E, fs)
        components[fs] = MorArrow(objects[x0], objects[xd], F.component(fs), G.component(fs), h.component(fs),
                                  expected_degree(E, fs, 1))
    return AInfFunctor(f"<{F.name},{G.name}>", E, Q, objects, components)


def unpack_transformation(phi: AInfFunctor) -> Tuple[AInfFunctor, AInfFunctor, PreNatTrans]:
    """Recover (F, G, h) from a functor into dgMor(B)."""
    E = phi.source
    F = project_functor(phi, "source")
    G = project_functor(phi, "target")
    h0 = {x: phi.on_object(x).f for x in E.objects}
    components = {fs: arrow.h for fs, arrow in phi.components.items()}
    return F, G, PreNatTrans(F, G, 0, h0, components)


def project_functor(phi: AInfFunctor, side: str) -> AInfFunctor:
    """S . phi (side ``source``) or T . phi (side ``target``) as a functor into B."""
    Q: DgMorCategory = phi.target
    if side not in ("source", "target"):
        raise ValueError(f"side must be 'source' or 'target', got {side!r}")
    pick_object = (lambda o: o.A) if side == "source" else (lambda o: o.B)
    pick_arrow = (lambda a: a.u) if side == "source" else (lambda a: a.v)
    objects = {x: pick_object(phi.on_object(x)) for x in phi.source.objects}
    components = {fs: pick_arrow(arrow) for fs, arrow in phi.components.items()}
    return AInfFunctor(f"{'S' if side == 'source' else 'T'}.{phi.name}", phi.source, Q.base, objects, components,
                       max_degree=phi.max_degree)


def project_source(x: Any) -> Any:
    """S(A, B, f) = A and S(u, v, h) = u."""
    return x.A if isinstance(x, MorObject) else x.u


def project_target(x: Any) -> Any:
    """T(A, B, f) = B and T(u, v, h) = v."""
    return x.B if isinstance(x, MorObject) else x.v


def source_target_functors(x: Any) -> Tuple[Any, Any]:
    """(S(x), T(x)) for a dgMor object or arrow."""
    return project_source(x), project_target(x)


def check_projection_functors(Q: DgMorCategory, arrows: Sequence[MorArrow]) -> List[str]:
    """S and T preserve units, differentials, mu1 and composition on the given arrows."""
    B = Q.base
    problems: List[str] = []
    for project, name in ((project_source, "S"), (project_target, "T")):
        for x in arrows:
            obj = x.source
            if project(Q.unit(obj)) != B.unit(project(obj)):
                problems.append(f"{name} does not preserve the unit of {obj}")
            if project(Q.differential(x)) != B.d(project(x)):
                problems.append(f"{name} does not commute with d on {x.format()}")
            if project(Q.mu1(x)) != B.mu1(project(x)):
                problems.append(f"{name} does not commute with mu1 on {x.format()}")
            for y in arrows:
                if y.source == x.target:
                    if project(Q.compose(y, x)) != B.compose(project(y), project(x)):
                        problems.append(f"{name} does not preserve the composite {y.format()} . {x.format()}")
    return problems

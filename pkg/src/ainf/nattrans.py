"""The differential mu1 on pre-natural transformations, closedness and H0.

For h: F -> G of degree g, mu1(h)^d(f_d, ..., f_1) = A^d - B^d with

    A^d = mu1(h^d(f)) + mu2(G^d(f), h0_X0) + (-1)^{m_d (g-1)} mu2(h0_Xd, F^d(f))
        + sum_j mu2(G^j(f_d..), h^{d-j}(..f_1))
        + sum_j (-1)^{m_{d-j} (g-1)} mu2(h^j(f_d..), F^{d-j}(..f_1))
    B^d = sum_n (-1)^{m_n + g - 1} h^d(.., mu1(f_{n+1}), ..)
        + sum_n (-1)^{m_n + g - 1} h^{d-1}(.., mu2(f_{n+2}, f_{n+1}), ..)

where m_n is the maltese sum of the first n arguments, and mu1(h)^0_X = mu1(h0_X).
"""
from typing import Any, Dict, Mapping, Optional, Sequence, Union
from src.ainf.functor import PreNatTrans
from src.ainf.h0 import H0Functor, h0_of_functor, require_naturality
from src.ainf.checker import expected_degree
from src.ainf.tuples import BasisTuple, all_tuples, basis_elements, has_identity, is_composable
from src.dgcat.ainf_view import tuple_maltese
from src.dgcat.homotopy import H0Category, H0Class, homotopy_category
from src.utils.errors import DegreeViolation, NotClosed, NotComposable
from src.utils.logger import get_logger

logger = get_logger("ainf.nattrans")


def coboundary_on(h: PreNatTrans, args: Sequence[Any]) -> Any:
    """mu1(h)^d on arbitrary source elements (f_d, ..., f_1), d >= 1."""
    S, T, F, G = h.source, h.target, h.F, h.G
    field = T.field
    args = tuple(args)
    d = len(args)
    g = h.degree
    x0, xd = args[-1].source, args[0].target

    a = T.mu1(h.evaluate(args))
    a = a + T.mu2(G.evaluate(args), h.at(x0))
    a = a + T.mu2(h.at(xd), F.evaluate(args)).scale(field.sign(tuple_maltese(args, d) * (g - 1)))
    for j in range(1, d):
        a = a + T.mu2(G.evaluate(args[:j]), h.evaluate(args[j:]))
        sign = field.sign(tuple_maltese(args, d - j) * (g - 1))
        a = a + T.mu2(h.evaluate(args[:j]), F.evaluate(args[j:])).scale(sign)

    b = T.zero(a.source, a.target)
    for n in range(d):
        sign = field.sign(tuple_maltese(args, n) + g - 1)
        inner = S.mu1(args[d - n - 1])
        b = b + h.evaluate(args[:d - n - 1] + (inner,) + args[d - n:]).scale(sign)
    for n in range(d - 1):
        sign = field.sign(tuple_maltese(args, n) + g - 1)
        inner = S.mu2(args[d - n - 2], args[d - n - 1])
        b = b + h.evaluate(args[:d - n - 2] + (inner,) + args[d - n:]).scale(sign)
    return a - b


def nattrans_coboundary(h: PreNatTrans, fs: Union[BasisTuple, str]) -> Any:
    """mu1(h) on a composable basis tuple, or mu1(h0_X) when given an object.

    Raises:
        NotComposable: If the tuple is not composable
    """
    if isinstance(fs, str):
        return h.target.mu1(h.at(fs))
    fs = tuple(fs)
    if not is_composable(h.source, fs):
        raise NotComposable(fs[0], fs[-1], f"tuple ({', '.join(fs)}) is not composable")
    return coboundary_on(h, basis_elements(h.source, fs))


def check_transformation_degrees(h: PreNatTrans) -> None:
    """h0 has degree g and h^d has degree |f_1| + ... + |f_d| + g - d.

    Raises:
        DegreeViolation: On the first offending component
    """
    T = h.target
    for obj, value in h.h0.items():
        actual = T.degree(value)
        if actual is not None and actual != h.degree:
            raise DegreeViolation(f"h0 at {obj}", h.degree, actual)
    for fs, value in h.components.items():
        expected = expected_degree(h.source, fs, h.degree)
        actual = T.degree(value)
        if actual is not None and actual != expected:
            raise DegreeViolation(f"h^{len(fs)}({', '.join(fs)})", expected, actual)


def check_transformation_unitality(h: PreNatTrans) -> list:
    """Stored components that are nonzero on an identity argument."""
    return [f"h^{len(fs)}({', '.join(fs)}) is nonzero on an identity"
            for fs, value in h.components.items()
            if has_identity(h.source, fs) and not value.is_zero()]


def coboundary_transformation(h: PreNatTrans, d_max: int) -> PreNatTrans:
    """mu1(h) as a degree g + 1 pre-natural transformation on tuples up to d_max."""
    h0 = {obj: nattrans_coboundary(h, obj) for obj in h.source.objects}
    components = {fs: nattrans_coboundary(h, fs) for fs in all_tuples(h.source, d_max)}
    return PreNatTrans(h.F, h.G, h.degree + 1, h0, components, max_degree=d_max)


def is_closed(h: PreNatTrans, d_max: int) -> bool:
    """mu1(h) vanishes on every object and every non-identity tuple up to d_max.

    Raises:
        DegreeViolation: If a stored component has the wrong degree
    """
    check_transformation_degrees(h)
    for obj in h.source.objects:
        if not nattrans_coboundary(h, obj).is_zero():
            logger.debug(f"mu1(h)0 at {obj} is nonzero")
            return False
    for fs in all_tuples(h.source, d_max):
        value = nattrans_coboundary(h, fs)
        if not value.is_zero():
            logger.debug(f"mu1(h) on ({', '.join(fs)}) = {value.format()}")
            return False
    return True


def h0_of_nattrans(h: PreNatTrans, d_max: Optional[int] = None,
                   target_h0: Optional[H0Category] = None,
                   F0: Optional[H0Functor] = None, G0: Optional[H0Functor] = None) -> Dict[str, H0Class]:
    """X -> [h0_X], verified natural from H0(F) to H0(G).

    Raises:
        NotClosed: If h has nonzero degree or is not closed up to d_max
        NaturalityFails: If the family is not natural
    """
    if h.degree != 0:
        raise NotClosed(f"H0 needs a degree-0 transformation, got degree {h.degree}")
    depth = d_max if d_max is not None else max(2, h.max_degree)
    if not is_closed(h, depth):
        raise NotClosed(f"{h} is not closed up to degree {depth}")
    target_h0 = target_h0 or homotopy_category(h.target)
    family = {obj: target_h0.class_of(h.at(obj)) for obj in h.source.objects}
    F0 = F0 or h0_of_functor(h.F, target_h0=target_h0)
    G0 = G0 or h0_of_functor(h.G, source_h0=F0.source, target_h0=target_h0)
    require_naturality(family, F0, G0)
    return family


def family_equal(left: Mapping[str, H0Class], right: Mapping[str, H0Class]) -> bool:
    return set(left) == set(right) and all(left[k] == right[k] for k in left)

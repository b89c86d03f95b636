"""A dg-category viewed as an A-infinity category.

mu1(f) = (-1)^|f| df, mu2(g, f) = (-1)^|f| g.f, and mu^d = 0 for d > 2.
The helpers here take any category exposing ``mu1`` and ``mu2`` on its
morphisms, so the same equations apply to presentations and to dgMor.
"""
from typing import Any, Dict, List, Sequence
from src.ainf.tuples import all_tuples, basis_elements
from src.dgcat.presentation import DgPresentation
from src.dgcat.element import Element
from src.utils.logger import get_logger

logger = get_logger("dgcat.ainf_view")


def ainf_mu1(p: DgPresentation, f: Element) -> Element:
    """(-1)^|f| d f.

    Raises:
        ShapeError: If f is not homogeneous
    """
    return p.mu1(f)


def ainf_mu2(p: DgPresentation, g: Element, f: Element) -> Element:
    """(-1)^|f| g . f.

    Raises:
        NotComposable: If g does not start where f ends
    """
    return p.mu2(g, f)


def arg_degree(x: Any) -> int:
    """Degree of a homogeneous argument; zero counts as degree 0."""
    degree = x.degree
    return 0 if degree is None else degree


def maltese(degrees: Sequence[int], n: int) -> int:
    """|f_1| + ... + |f_n| - n, with degrees listed from f_1 on.

    Raises:
        IndexError: If n is negative or exceeds the number of degrees
    """
    if n < 0 or n > len(degrees):
        raise IndexError(f"maltese index {n} out of range for {len(degrees)} arguments")
    return sum(degrees[:n]) - n


def tuple_maltese(args: Sequence[Any], n: int) -> int:
    """Maltese sum for arguments stored as (f_d, ..., f_1)."""
    return maltese([arg_degree(x) for x in reversed(args)], n)


def apply_mu(category: Any, args: Sequence[Any]) -> Any:
    """mu^k on k arguments stored as (f_k, ..., f_1); only k = 1, 2 occur."""
    if len(args) == 1:
        return category.mu1(args[0])
    if len(args) == 2:
        return category.mu2(args[0], args[1])
    raise ValueError(f"a dg-category has no mu^{len(args)}")


def ainf_equation_residual(category: Any, args: Sequence[Any]) -> Any:
    """Left side of the A-infinity relation on (f_d, ..., f_1).

    Sum over m in (1, 2) and n of (-1)^maltese_n
    mu^{d-m+1}(f_d, ..., mu^m(f_{n+m}, ..., f_{n+1}), f_n, ..., f_1).
    """
    args = tuple(args)
    d = len(args)
    field = category.field
    total = None
    for m in (1, 2):
        for n in range(0, d - m + 1):
            outer_arity = d - m + 1
            if outer_arity not in (1, 2):
                continue
            inner = apply_mu(category, args[d - n - m:d - n])
            outer = apply_mu(category, args[:d - n - m] + (inner,) + args[d - n:])
            term = outer.scale(field.sign(tuple_maltese(args, n)))
            total = term if total is None else total + term
    return total


def check_ainf_category_equations(p: DgPresentation, d_max: int = 3) -> List[Dict[str, Any]]:
    """Evaluate the A-infinity relations of the mu1/mu2 view on all basis tuples.

    Returns:
        One record per tuple with a nonzero residual
    """
    residuals = []
    for fs in all_tuples(p, d_max, include_identities=True):
        value = ainf_equation_residual(p, basis_elements(p, fs))
        if value is not None and not value.is_zero():
            residuals.append({"tuple": fs, "residual": value.format()})
    if residuals:
        logger.warning(f"{p.name}: A-infinity relations fail on {len(residuals)} tuples")
    return residuals

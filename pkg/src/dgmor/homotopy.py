"""Directed homotopies: completing (u~, v~) to a primitive of a closed dgMor arrow.

Given a mu1-closed arrow x = (u, v, h) of degree n and primitives u~, v~
with mu1(u~) = u and mu1(v~) = v, the element

    y = (-1)^{n-1} h + (-1)^n (f' u~ - v~ f)

is a cocycle of B(A, B') in degree n - 1.  When H^{n-1}(B(A, B')) = 0 it is
a coboundary, and its echelon preimage h~ gives mu1(u~, v~, h~) = x.
"""
from src.dgmor.category import DgMorCategory, MorArrow, MorObject
from src.dgcat.element import Element
from src.graded.complexes import cohomology_basis, solve_coboundary
from src.utils.errors import (InternalInvariantError, InvalidPrimitive, NotCocycle,
                              ShapeError, VanishingHypothesisFails)
from src.utils.logger import get_logger

logger = get_logger("dgmor.homotopy")


def solve_directed_homotopy(Q: DgMorCategory, src: MorObject, tgt: MorObject, x: MorArrow,
                            u_tilde: Element, v_tilde: Element, check_vanishing: bool = True) -> Element:
    """Find h~ with mu1_Q(u~, v~, h~) = x.

    Args:
        Q: dgMor of the base presentation
        src: Source object (A, B, f)
        tgt: Target object (A', B', f')
        x: Closed arrow of degree n
        u_tilde: Primitive of x.u of degree n - 1
        v_tilde: Primitive of x.v of degree n - 1
        check_vanishing: Require H^{n-1}(B(A, B')) = 0

    Returns:
        h~ in B(A, B') of degree n - 2

    Raises:
        NotCocycle: If x is not closed, or the corrected h is not a cocycle
        InvalidPrimitive: If mu1(u~) != u or mu1(v~) != v
        VanishingHypothesisFails: If H^{n-1}(B(A, B')) is nonzero
    """
    B = Q.base
    if x.source != src or x.target != tgt:
        raise ShapeError("arrow does not run between the given objects")
    if x.degree is None:
        raise ShapeError("the arrow needs an explicit degree")
    n = x.degree

    if not Q.mu1(x).is_zero():
        raise NotCocycle(x, "mu1_Q(x) is nonzero")
    if B.mu1(u_tilde) != x.u:
        raise InvalidPrimitive(f"mu1(u~) = {B.mu1(u_tilde).format()} but u = {x.u.format()}")
    if B.mu1(v_tilde) != x.v:
        raise InvalidPrimitive(f"mu1(v~) = {B.mu1(v_tilde).format()} but v = {x.v.format()}")

    hom = B.hom(src.A, tgt.B)
    if check_vanishing:
        dimension = cohomology_basis(hom, n - 1).dimension
        if dimension:
            logger.warning(f"H^{n - 1}({src.A},{tgt.B}) has dimension {dimension}")
            raise VanishingHypothesisFails([{"degree": n - 1, "source": src.A, "target": tgt.B,
                                             "dimension": dimension}])

    f, f2 = src.f, tgt.f
    y = x.h.scale(Q.field.sign(n - 1)) + \
        (B.compose(f2, u_tilde) - B.compose(v_tilde, f)).scale(Q.field.sign(n))
    if not B.d(y).is_zero():
        raise NotCocycle(y, f"corrected homotopy in degree {n - 1}")

    solution = solve_coboundary(hom, B.to_vector(y), n - 1)
    h_tilde = B.from_vector(src.A, tgt.B, solution)

    candidate = MorArrow(src, tgt, u_tilde, v_tilde, h_tilde, n - 1)
    if Q.mu1(candidate) != x:
        raise InternalInvariantError(f"directed homotopy does not reproduce {x.format()}")
    logger.debug(f"directed homotopy in degree {n - 1}: h~ = {h_tilde.format()}")
    return h_tilde

"""Obstruction cocycles of partial A-infinity functors into dgMor(B).

For a partial functor phi with components up to d - 1 out of a linear
category, the defect of the degree-d functor equation on (f_d, ..., f_1) is

    O = sum_n (-1)^{maltese_n} phi^{d-1}(.., mu2(f_{n+2}, f_{n+1}), ..)
        - sum_j mu2(phi^j(f_d..), phi^{d-j}(..f_1)),

a mu1-closed arrow of degree |f_1| + ... + |f_d| + 2 - d.  A component phi^d
solves the equation exactly when mu1(phi^d) = O.
"""
from typing import Any, Sequence
from src.ainf.checker import functor_equation_residual
from src.ainf.functor import AInfFunctor
from src.ainf.tuples import BasisTuple, all_tuples, basis_elements
from src.dgcat.ainf_view import tuple_maltese
from src.dgmor.category import MorArrow
from src.utils.errors import NotCocycle, PartialDataInvalid
from src.utils.logger import get_logger

logger = get_logger("lift.obstruction")


def verify_partial_functor(phi: AInfFunctor, d: int) -> None:
    """phi satisfies the functor equations on every non-identity tuple of length < d.

    Raises:
        PartialDataInvalid: On the first failing tuple
    """
    for fs in all_tuples(phi.source, d - 1):
        residual = functor_equation_residual(phi, basis_elements(phi.source, fs))
        if not residual.is_zero():
            raise PartialDataInvalid(f"{phi.name}: equation fails on ({', '.join(fs)}): {residual.format()}")


def obstruction_on(phi: AInfFunctor, args: Sequence[Any]) -> MorArrow:
    """The obstruction on arbitrary source elements (f_d, ..., f_1), d >= 2."""
    E, Q = phi.source, phi.target
    args = tuple(args)
    d = len(args)
    src = phi.on_object(args[-1].source)
    tgt = phi.on_object(args[0].target)
    degree = sum(E.degree(x) or 0 for x in args) + 2 - d

    out = Q.zero(src, tgt, degree)
    for n in range(d - 1):
        sign = Q.field.sign(tuple_maltese(args, n))
        inner = E.mu2(args[d - n - 2], args[d - n - 1])
        out = out + phi.evaluate(args[:d - n - 2] + (inner,) + args[d - n:]).scale(sign)
    for j in range(1, d):
        out = out - Q.mu2(phi.evaluate(args[:j]), phi.evaluate(args[j:]))
    return out


def obstruction_cocycle(phi: AInfFunctor, fs: BasisTuple, validate_partial: bool = True) -> MorArrow:
    """The obstruction O on a basis tuple, checked to be mu1-closed.

    Args:
        phi: Functor into dgMor(B) whose components up to len(fs) - 1 are final
        fs: Non-identity composable basis tuple of length d >= 2
        validate_partial: Re-check the equations below degree d first

    Raises:
        PartialDataInvalid: If phi fails an equation below degree d
        NotCocycle: If mu1_Q(O) is nonzero
    """
    fs = tuple(fs)
    d = len(fs)
    if validate_partial:
        verify_partial_functor(phi, d)
    obstruction = obstruction_on(phi, basis_elements(phi.source, fs))
    if not phi.target.mu1(obstruction).is_zero():
        raise NotCocycle(obstruction.format(), f"obstruction on ({', '.join(fs)})")
    logger.debug(f"obstruction on ({', '.join(fs)}) = {obstruction.format()}")
    return obstruction

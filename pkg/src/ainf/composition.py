"""Composition of A-infinity functors."""
from typing import Dict, Iterator, Tuple
from src.ainf.functor import AInfFunctor
from src.ainf.tuples import all_tuples, basis_elements
from src.utils.errors import SourceTargetMismatch
from src.utils.logger import get_logger

logger = get_logger("ainf.composition")


def ordered_partitions(d: int) -> Iterator[Tuple[int, ...]]:
    """Compositions (s_r, ..., s_1) of d into positive parts, left to right."""
    if d == 0:
        yield ()
        return
    for first in range(1, d + 1):
        for rest in ordered_partitions(d - first):
            yield (first,) + rest


def compose_ainf_functors(G: AInfFunctor, F: AInfFunctor) -> AInfFunctor:
    """G . F with (G.F)^d = sum over r and s_1 + ... + s_r = d of
    G^r(F^{s_r}(...), ..., F^{s_1}(...)).

    Raises:
        SourceTargetMismatch: If F does not land in the source of G
    """
    if F.target is not G.source:
        raise SourceTargetMismatch(f"{F.name} does not land in the source of {G.name}")
    bound = F.max_degree * G.max_degree
    components: Dict[Tuple[str, ...], object] = {}
    for fs in all_tuples(F.source, bound):
        args = basis_elements(F.source, fs)
        value = None
        for parts in ordered_partitions(len(fs)):
            if len(parts) > G.max_degree or max(parts) > F.max_degree:
                continue
            chunks, start = [], 0
            for size in parts:
                chunks.append(F.evaluate(args[start:start + size]))
                start += size
            term = G.evaluate(chunks)
            value = term if value is None else value + term
        if value is not None and not value.is_zero():
            components[fs] = value

    object_map = {x: G.on_object(F.on_object(x)) for x in F.source.objects}
    composite = AInfFunctor(f"{G.name}.{F.name}", F.source, G.target, object_map, components, max_degree=bound)
    logger.debug(f"{composite.name}: {len(components)} nonzero components up to degree {bound}")
    return composite

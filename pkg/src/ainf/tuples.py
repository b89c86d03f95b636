"""Composable tuples of basis morphisms.

Tuples are written ``(f_d, ..., f_1)`` with f_1 applied first.  Enumeration
order: by length, then with f_1 most significant, each argument running
over the basis in canonical order (source object, target object, degree,
declaration order).
"""
from typing import List, Sequence, Tuple
from src.dgcat.element import Element

BasisTuple = Tuple[str, ...]


def composable_tuples(p, length: int, include_identities: bool = False) -> List[BasisTuple]:
    """All composable basis tuples of one length."""
    if length <= 0:
        return []
    candidates = [label for label in p.labels() if include_identities or not p.is_unit(label)]
    chains = [[label] for label in candidates]
    for _ in range(length - 1):
        chains = [chain + [g] for chain in chains for g in candidates
                  if p.hom_of(g)[0] == p.hom_of(chain[-1])[1]]
    return [tuple(reversed(chain)) for chain in chains]


def all_tuples(p, d_max: int, include_identities: bool = False) -> List[BasisTuple]:
    """Composable tuples of every length 1..d_max, in enumeration order."""
    out: List[BasisTuple] = []
    for length in range(1, d_max + 1):
        out.extend(composable_tuples(p, length, include_identities))
    return out


def is_composable(p, fs: Sequence[str]) -> bool:
    return all(p.hom_of(fs[i])[0] == p.hom_of(fs[i + 1])[1] for i in range(len(fs) - 1))


def endpoints(p, fs: Sequence[str]) -> Tuple[str, str]:
    """(X_0, X_d): source of f_1 and target of f_d."""
    return p.hom_of(fs[-1])[0], p.hom_of(fs[0])[1]


def has_identity(p, fs: Sequence[str]) -> bool:
    return any(p.is_unit(label) for label in fs)


def basis_elements(p, fs: Sequence[str]) -> List[Element]:
    return [p.basis(label) for label in fs]


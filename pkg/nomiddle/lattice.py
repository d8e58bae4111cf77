"""Additive subgroup closure and submodule lattice enumeration.

Carriers are integers ``0..n-1`` with an addition table; subgroups are frozensets.
"""

from typing import Iterable, List, Sequence, Set, Tuple

import structlog

from .config import MAX_SUBMODULES
from .errors import BoundExceeded

log = structlog.get_logger()

Table = Sequence[Sequence[int]]


def canonical_key(members: frozenset) -> Tuple[int, Tuple[int, ...]]:
    return len(members), tuple(sorted(members))


def join_element(add: Table, group: frozenset, x: int) -> frozenset:
    """The subgroup group + <x>."""
    if x in group:
        return group
    result = set(group)
    layer = group
    while True:
        layer = frozenset(add[g][x] for g in layer)
        if layer <= result:
            return frozenset(result)
        result |= layer


def join(add: Table, a: frozenset, b: frozenset) -> frozenset:
    """Sum of two subgroups."""
    if len(a) < len(b):
        a, b = b, a
    if b <= a:
        return a
    result = a
    for x in sorted(b):
        if x not in result:
            result = join_element(add, result, x)
    return result


def closed_span(add: Table, zero: int, gens: Iterable[int], maps: Sequence[Sequence[int]] = ()) -> frozenset:
    """Smallest subgroup containing ``gens`` and stable under the additive ``maps``."""
    span = frozenset({zero})
    pending = list(gens)
    while pending:
        x = pending.pop()
        if x in span:
            continue
        span = join_element(add, span, x)
        pending.extend(m[x] for m in maps)
    return span


def maximal_members(sets: Sequence[frozenset], top: frozenset) -> List[frozenset]:
    """Members properly inside ``top`` that are contained in no other such member."""
    proper = [s for s in sets if s != top]
    return [s for s in proper if not any(s < t for t in proper)]


def enumerate_lattice(add: Table, atoms: Iterable[frozenset], zero: int, bound: int = MAX_SUBMODULES) -> List[frozenset]:
    """Close a family of subgroups under pairwise sums.

    Every member of the result is a sum of atoms; the zero subgroup is always
    included. Sorted by size, then by sorted members.
    """
    atoms = sorted(set(atoms), key=canonical_key)
    found: Set[frozenset] = {frozenset({zero}), *atoms}
    frontier = list(atoms)
    while frontier:
        fresh: List[frozenset] = []
        for member in frontier:
            for atom in atoms:
                if atom <= member:
                    continue
                s = join(add, member, atom)
                if s not in found:
                    found.add(s)
                    fresh.append(s)
                    if len(found) > bound:
                        raise BoundExceeded("submodule lattice", bound, len(found))
        frontier = fresh
    log.debug("Lattice closed", size=len(found), atoms=len(atoms))
    return sorted(found, key=canonical_key)

"""Extension semantics built on defeats through support chains.

A candidate set defeats an element either directly (it contains an
attacker together with the attack itself) or indirectly (it contains an
attack on the head of an acyclic chain of supports, all inside the set,
leading to the element).  Defence, conflict-freeness and the usual
complete / grounded / preferred / stable families are derived from
those two notions.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Literal

from .errors import PreconditionError, SizeBoundError, ValidationError
from .framework import HAFS, ElementId
from .labellings import HALF, ONE, ZERO, Labelling3
from .limits import DEFAULT_EXTENSION_BOUND, universe_bound

ElementSet = frozenset[ElementId]

ExtensionSemantics = Literal["complete", "grounded", "preferred", "stable"]


def _check_members(h: HAFS, B: Iterable[ElementId]) -> ElementSet:
    members = frozenset(B)
    for x in members:
        if x not in h:
            raise ValidationError(f"{x.qualified} is not in the universe")
    return members


def directly_defeats(h: HAFS, b: ElementId, a: ElementId, B: Iterable[ElementId]) -> bool:
    """True iff ``b`` and an attack from ``b`` to ``a`` are both in ``B``."""
    members = _check_members(h, B)
    _check_members(h, (a, b))
    if b not in members:
        return False
    return any(src == b and rel in members for src, rel in h.attackers_of(a))


def indirectly_defeats(h: HAFS, b: ElementId, a: ElementId, B: Iterable[ElementId]) -> bool:
    """True iff some acyclic support chain inside ``B`` leads from an
    element attacked by ``b`` (attack also in ``B``) down to ``a``.

    Searches backwards from ``a`` over supports whose relation object is
    in ``B``, keeping the current path free of repeats so every witness
    is an acyclic chain.
    """
    members = _check_members(h, B)
    _check_members(h, (a, b))
    if b not in members:
        return False

    def search(current: ElementId, path: frozenset[ElementId]) -> bool:
        for c, t in h.supporters_of(current):
            if t not in members or c in path:
                continue
            # c heads an acyclic chain c -> ... -> a inside B
            if any(src == b and rel in members for src, rel in h.attackers_of(c)):
                return True
            if search(c, path | {c}):
                return True
        return False

    return search(a, frozenset((a,)))


def defeats(h: HAFS, b: ElementId, a: ElementId, B: Iterable[ElementId]) -> bool:
    return directly_defeats(h, b, a, B) or indirectly_defeats(h, b, a, B)


def dft(h: HAFS, B: Iterable[ElementId]) -> ElementSet:
    """Everything defeated by ``B``: direct victims, then propagation of
    a defeated supporter through each in-set support to its target."""
    members = _check_members(h, B)
    defeated: set[ElementId] = set()
    queue: list[ElementId] = []
    for rel in h.attacks:
        if rel.id in members and rel.source in members and rel.target not in defeated:
            defeated.add(rel.target)
            queue.append(rel.target)
    forward: dict[ElementId, list[tuple[ElementId, ElementId]]] = {}
    for rel in h.supports:
        forward.setdefault(rel.source, []).append((rel.target, rel.id))
    while queue:
        x = queue.pop()
        for target, tid in forward.get(x, ()):
            if tid in members and target not in defeated:
                defeated.add(target)
                queue.append(target)
    return frozenset(defeated)


def dfd(h: HAFS, B: Iterable[ElementId]) -> ElementSet:
    """Everything defended by ``B``: every incoming attack is countered
    (attacker or attack defeated) and every incoming support is honoured
    (supporter in ``B`` or the support defeated)."""
    members = _check_members(h, B)
    defeated = dft(h, members)
    defended = set()
    for a in h.universe:
        if all(b in defeated or r in defeated for b, r in h.attackers_of(a)) and \
           all(c in members or t in defeated for c, t in h.supporters_of(a)):
            defended.add(a)
    return frozenset(defended)


class SetFlags:
    """Classification of a candidate set."""

    __slots__ = ("conflict_free", "admissible", "complete", "stable_eligible")

    def __init__(self, conflict_free: bool, admissible: bool,
                 complete: bool, stable_eligible: bool):
        self.conflict_free = conflict_free
        self.admissible = admissible
        self.complete = complete
        self.stable_eligible = stable_eligible

    def __repr__(self) -> str:
        return (f"SetFlags(conflict_free={self.conflict_free}, "
                f"admissible={self.admissible}, complete={self.complete}, "
                f"stable_eligible={self.stable_eligible})")


def classify_set(h: HAFS, E: Iterable[ElementId]) -> SetFlags:
    members = _check_members(h, E)
    defeated = dft(h, members)
    defended = dfd(h, members)
    conflict_free = members.isdisjoint(defeated)
    return SetFlags(
        conflict_free=conflict_free,
        admissible=conflict_free and members <= defended,
        complete=conflict_free and members == defended,
        stable_eligible=(members | defeated) == set(h.universe),
    )


def enumerate_extensions(h: HAFS, semantics: ExtensionSemantics,
                         bound: int | None = None) -> tuple[ElementSet, ...]:
    """Exhaustive subset scan, ordered by size then lexicographically.

    grounded returns the unique smallest complete extension when one
    exists and nothing otherwise (least elements are not guaranteed once
    supports may form cycles).
    """
    limit = bound if bound is not None else universe_bound(DEFAULT_EXTENSION_BOUND)
    n = len(h.universe)
    if n > limit:
        raise SizeBoundError(f"universe has {n} elements, bound is {limit}")

    complete: list[ElementSet] = []
    for size in range(n + 1):
        for combo in combinations(h.universe, size):
            members = frozenset(combo)
            defeated = dft(h, members)
            if not members.isdisjoint(defeated):
                continue
            if members == dfd(h, members):
                complete.append(members)

    if semantics == "complete":
        return tuple(complete)
    if semantics == "grounded":
        for candidate in complete:
            if all(candidate <= other for other in complete):
                return (candidate,)
        return ()
    preferred = tuple(
        E for E in complete if not any(E < other for other in complete)
    )
    if semantics == "preferred":
        return preferred
    if semantics == "stable":
        full = set(h.universe)
        return tuple(E for E in preferred if (E | dft(h, E)) == full)
    raise ValueError(f"unknown semantics {semantics!r}")


def extension_derived_labelling(h: HAFS, E: Iterable[ElementId]) -> Labelling3:
    """Labelling read off a complete extension: members 1, defeated 0,
    everything else 1/2."""
    members = _check_members(h, E)
    if not classify_set(h, members).complete:
        raise PreconditionError("the given set is not a complete extension")
    defeated = dft(h, members)
    return Labelling3({
        x: ONE if x in members else ZERO if x in defeated else HALF
        for x in h.universe
    })


def extensions_to_json_obj(extensions: Iterable[ElementSet]) -> dict:
    return {"extensions": [sorted(x.qualified for x in E) for E in extensions]}

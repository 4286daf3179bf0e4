"""Three-valued labelling semantics driven by direct neighbours.

An element is labelled 1 exactly when every incoming attack is disarmed
(attacker or attack valued 0) and every incoming support is satisfied
(supporter valued 1 or support valued 0); it is labelled 0 exactly when
some attack fires (attacker and attack both 1) or some support fails
(supporter 0 with the support itself 1); it is 1/2 otherwise.  Elements
without incoming edges are therefore 1 in every such labelling.
"""

from __future__ import annotations

from collections.abc import Mapping
from fractions import Fraction
from typing import Iterable, Iterator, Literal

import numpy as np

from .errors import SizeBoundError, ValidationError
from .framework import HAFS, ElementId
from .limits import DEFAULT_LABELLING_BOUND, universe_bound

ZERO = Fraction(0)
HALF = Fraction(1, 2)
ONE = Fraction(1)

THREE_VALUES = (ZERO, HALF, ONE)

Semantics = Literal["grounded", "preferred", "stable"]

# rows of the enumeration grid use this integer coding
_CODE_TO_VALUE = {0: ZERO, 1: HALF, 2: ONE}


class Labelling3(Mapping):
    """Immutable total map from elements to {0, 1/2, 1}."""

    __slots__ = ("_values", "_hash")

    def __init__(self, values: Mapping[ElementId, object] | Iterable[tuple[ElementId, object]]):
        items = values.items() if isinstance(values, Mapping) else values
        store: dict[ElementId, Fraction] = {}
        for key, raw in items:
            value = Fraction(raw)
            if value not in THREE_VALUES:
                raise ValidationError(f"value {raw!r} for {key} is not one of 0, 1/2, 1")
            store[key] = value
        self._values = dict(sorted(store.items()))
        self._hash = hash(tuple(self._values.items()))

    def __getitem__(self, key: ElementId) -> Fraction:
        return self._values[key]

    def __iter__(self) -> Iterator[ElementId]:
        return iter(self._values)

    def __len__(self) -> int:
        return len(self._values)

    def __eq__(self, other) -> bool:
        if isinstance(other, Labelling3):
            return self._values == other._values
        if isinstance(other, Mapping):
            return dict(self._values) == dict(other)
        return NotImplemented

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        inner = ", ".join(f"{k.qualified}: {v}" for k, v in self._values.items())
        return f"Labelling3({{{inner}}})"

    @property
    def core(self) -> frozenset[ElementId]:
        """Elements labelled 1."""
        return frozenset(k for k, v in self._values.items() if v == ONE)

    def to_json_obj(self) -> dict[str, str]:
        return {k.qualified: str(v) for k, v in self._values.items()}


def core(labelling: Labelling3) -> frozenset[ElementId]:
    return labelling.core


def _require_total(h: HAFS, labelling: Mapping[ElementId, Fraction]):
    missing = [x for x in h.universe if x not in labelling]
    if missing:
        raise ValidationError(f"labelling is not total: missing {missing[0].qualified}")
    extra = [x for x in labelling if x not in h]
    if extra:
        raise ValidationError(f"labelling assigns {extra[0].qualified} outside the universe")


def is_adjacent_complete(h: HAFS, labelling: Labelling3) -> bool:
    """Check one labelling against the per-element conditions, literally."""
    _require_total(h, labelling)
    for a in h.universe:
        attackers = h.attackers_of(a)
        supporters = h.supporters_of(a)
        must_be_one = (
            all(labelling[b] == ZERO or labelling[r] == ZERO for b, r in attackers)
            and all(labelling[c] == ONE or labelling[t] == ZERO for c, t in supporters)
        )
        must_be_zero = (
            any(labelling[b] == ONE and labelling[r] == ONE for b, r in attackers)
            or any(labelling[c] == ZERO and labelling[t] == ONE for c, t in supporters)
        )
        value = labelling[a]
        if must_be_one:
            if value != ONE:
                return False
        elif must_be_zero:
            if value != ZERO:
                return False
        elif value != HALF:
            return False
    return True


_CHUNK_ROWS = 3 ** 12


def enumerate_adjacent_complete(h: HAFS, bound: int | None = None) -> tuple[Labelling3, ...]:
    """All labellings satisfying the per-element conditions.

    Exhaustive search over the 3^|U| grid with one sound pruning step:
    elements without incoming edges are pre-forced to 1.  Output order is
    lexicographic over elements sorted by id with value order 0 < 1/2 < 1.
    """
    limit = bound if bound is not None else universe_bound(DEFAULT_LABELLING_BOUND)
    n = len(h.universe)
    if n > limit:
        raise SizeBoundError(f"universe has {n} elements, bound is {limit}")

    order = h.universe
    index = {e: i for i, e in enumerate(order)}
    # only elements with incoming edges vary; the rest must be 1
    free = [i for i, e in enumerate(order)
            if h.attackers_of(e) or h.supporters_of(e)]

    # per-element condition inputs as column indices
    checks = []
    for i in free:
        e = order[i]
        att = [(index[b], index[r]) for b, r in h.attackers_of(e)]
        supp = [(index[c], index[t]) for c, t in h.supporters_of(e)]
        checks.append((i, att, supp))

    k = len(free)
    weights = [3 ** (k - 1 - j) for j in range(k)]
    total = 3 ** k
    found: list[Labelling3] = []
    for start in range(0, total, _CHUNK_ROWS):
        stop = min(start + _CHUNK_ROWS, total)
        rows = np.arange(start, stop, dtype=np.int64)
        grid = np.full((stop - start, n), 2, dtype=np.int8)
        for j, i in enumerate(free):
            grid[:, i] = (rows // weights[j]) % 3

        valid = np.ones(stop - start, dtype=bool)
        for ia, att, supp in checks:
            cond_one = np.ones(stop - start, dtype=bool)
            cond_zero = np.zeros(stop - start, dtype=bool)
            for ib, ir in att:
                cond_one &= (grid[:, ib] == 0) | (grid[:, ir] == 0)
                cond_zero |= (grid[:, ib] == 2) & (grid[:, ir] == 2)
            for ic, it in supp:
                cond_one &= (grid[:, ic] == 2) | (grid[:, it] == 0)
                cond_zero |= (grid[:, ic] == 0) & (grid[:, it] == 2)
            col = grid[:, ia]
            valid &= np.where(cond_one, col == 2, np.where(cond_zero, col == 0, col == 1))
            if not valid.any():
                break

        for row in grid[valid]:
            found.append(Labelling3(
                {e: _CODE_TO_VALUE[int(row[i])] for i, e in enumerate(order)}
            ))
    return tuple(found)


def select_labellings(h: HAFS, labellings: Iterable[Labelling3],
                      semantics: Semantics) -> tuple[Labelling3, ...]:
    """Refine the full family of labellings by core comparison.

    grounded: labellings whose core is contained in every other core
    (empty when no such least core exists); preferred: core is maximal;
    stable: preferred with every non-core element labelled 0.
    """
    pool = tuple(labellings)
    cores = [lab.core for lab in pool]
    if semantics == "grounded":
        for least in cores:
            if all(least <= c for c in cores):
                return tuple(lab for lab, c in zip(pool, cores) if c == least)
        return ()
    if semantics in ("preferred", "stable"):
        chosen = tuple(
            lab for lab, c in zip(pool, cores)
            if not any(c < other for other in cores)
        )
        if semantics == "preferred":
            return chosen
        return tuple(
            lab for lab in chosen
            if all(lab[x] == ZERO for x in h.universe if x not in lab.core)
        )
    raise ValueError(f"unknown semantics {semantics!r}")


def labellings_to_json_obj(labellings: Iterable[Labelling3]) -> dict:
    return {"labellings": [lab.to_json_obj() for lab in labellings]}

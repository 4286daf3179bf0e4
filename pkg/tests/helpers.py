"""Shared corpus builders and independent oracles for the test suite.

The oracles deliberately avoid the production code paths they check:
labelling enumeration is re-done by unpruned filtering, defeat pairs by a
least-fixpoint recursion, equation right-hand sides by the closed forms,
and support acyclicity by Kahn's algorithm.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from hafs import (HAFS, InfeasibleParametersError, Labelling3, generate_random,
                  is_adjacent_complete)
from hafs.labellings import THREE_VALUES


def corpus(count: int, max_u: int = 8, max_args: int = 4,
           seed_base: int = 0) -> list[tuple[HAFS, bool]]:
    """Deterministic list of (framework, built-support-acyclic) pairs.

    Every other framework is generated with the acyclic-supports switch,
    sizes and higher-order density vary with the seed, and infeasible
    parameter draws are skipped deterministically.
    """
    out: list[tuple[HAFS, bool]] = []
    seed = seed_base
    while len(out) < count:
        rng = random.Random(seed * 9176 + 11)
        acyclic = len(out) % 2 == 0
        nargs = rng.randint(1, max_args)
        remaining = max_u - nargs
        natts = rng.randint(0, min(3, remaining))
        nsupps = rng.randint(0, min(3, max(0, remaining - natts)))
        hop = rng.choice([0.0, 0.3, 0.6])
        try:
            h = generate_random(nargs, natts, nsupps, seed=seed,
                                support_acyclic=acyclic, higher_order_prob=hop)
            out.append((h, acyclic))
        except InfeasibleParametersError:
            pass
        seed += 1
    return out


def brute_force_labellings(h: HAFS) -> set[Labelling3]:
    """Unpruned 3^|U| filter through the single-labelling check."""
    found = set()
    for combo in itertools.product(THREE_VALUES, repeat=len(h.universe)):
        candidate = Labelling3(dict(zip(h.universe, combo)))
        if is_adjacent_complete(h, candidate):
            found.add(candidate)
    return found


def lfp_defeat_pairs(h: HAFS, B: frozenset) -> set[tuple]:
    """(defeater, victim) pairs via the recursive characterisation:
    seed with in-set attacks, then close under "defeats the supporter of
    an in-set support"."""
    pairs = {
        (rel.source, rel.target)
        for rel in h.attacks
        if rel.id in B and rel.source in B
    }
    changed = True
    while changed:
        changed = False
        for rel in h.supports:
            if rel.id not in B:
                continue
            for b, victim in list(pairs):
                if victim == rel.source and (b, rel.target) not in pairs:
                    pairs.add((b, rel.target))
                    changed = True
    return pairs


def godel_rhs(h: HAFS, element, values) -> object:
    """Closed form: min over max(1-attacker, 1-attack) and max(supporter,
    1-support); empty overall min is 1."""
    parts = [max(1 - values[b], 1 - values[r]) for b, r in h.attackers_of(element)]
    parts += [max(values[c], 1 - values[t]) for c, t in h.supporters_of(element)]
    return min(parts) if parts else Fraction(1)


def product_rhs(h: HAFS, element, values) -> object:
    """Closed form: product of (1 - b*r) and (1 - t + c*t)."""
    acc = Fraction(1)
    for b, r in h.attackers_of(element):
        acc = acc * (1 - values[b] * values[r])
    for c, t in h.supporters_of(element):
        acc = acc * (1 - values[t] + values[c] * values[t])
    return acc


def kahn_is_acyclic(nodes, edges) -> bool:
    """Topological-sort acyclicity oracle over (source, target) pairs."""
    indeg = {x: 0 for x in nodes}
    out = {x: [] for x in nodes}
    for src, tgt in edges:
        out[src].append(tgt)
        indeg[tgt] += 1
    queue = [x for x in nodes if indeg[x] == 0]
    seen = 0
    while queue:
        node = queue.pop()
        seen += 1
        for nxt in out[node]:
            indeg[nxt] -= 1
            if indeg[nxt] == 0:
                queue.append(nxt)
    return seen == len(list(nodes))


def all_subsets(universe):
    for size in range(len(universe) + 1):
        for combo in itertools.combinations(universe, size):
            yield frozenset(combo)

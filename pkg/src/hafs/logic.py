"""Propositional formulas, logic systems and the normal encoding.

A framework is translated into one big conjunction: for every element a
biconditional ties its variable to the conjunction of the negated
incoming attack products and the negated inverted-support products.  The
same formula is then read under different logics: the three-valued
system uses min/max/1-x with the standard three-valued implication
table, the fuzzy systems interpret conjunction by a t-norm and
implication by its residuum.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator

from .errors import EvaluationError, ValidationError
from .framework import HAFS, ElementId

# -- formulas ---------------------------------------------------------------


class Formula:
    """Base class for AST nodes; instances are immutable and hashable."""

    __slots__ = ()


@dataclass(frozen=True)
class Var(Formula):
    element: ElementId


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bottom(Formula):
    pass


@dataclass(frozen=True)
class Not(Formula):
    child: Formula


@dataclass(frozen=True)
class And(Formula):
    children: tuple[Formula, ...]


@dataclass(frozen=True)
class Or(Formula):
    children: tuple[Formula, ...]


@dataclass(frozen=True)
class Implies(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True)
class Iff(Formula):
    lhs: Formula
    rhs: Formula


TOP = Top()
BOTTOM = Bottom()


def conjunction(children: Iterable[Formula]) -> Formula:
    """n-ary conjunction collapsing the empty and singleton cases."""
    items = tuple(children)
    if not items:
        return TOP
    if len(items) == 1:
        return items[0]
    return And(items)


def variables(f: Formula) -> frozenset[ElementId]:
    if isinstance(f, Var):
        return frozenset((f.element,))
    if isinstance(f, (Top, Bottom)):
        return frozenset()
    if isinstance(f, Not):
        return variables(f.child)
    if isinstance(f, (And, Or)):
        out: frozenset[ElementId] = frozenset()
        for c in f.children:
            out |= variables(c)
        return out
    return variables(f.lhs) | variables(f.rhs)


# -- logic systems ----------------------------------------------------------


def _standard_negation(x):
    return 1 - x


def _tnorm_min(x, y):
    return x if x <= y else y


def _tnorm_product(x, y):
    return x * y


def _tnorm_lukasiewicz(x, y):
    z = x + y - 1
    return z if z > 0 else 0


def _impl_godel(m, n):
    return 1 if m <= n else n


def _impl_product(m, n):
    return 1 if m <= n else n / m


def _impl_lukasiewicz(m, n):
    z = 1 - m + n
    return z if z < 1 else 1


@dataclass(frozen=True)
class LogicSystem:
    """Truth-functional interpretation of the connectives.

    ``implication`` satisfies I(m, n) = 1 iff m <= n for every built-in,
    which makes the biconditional detect exact value equality.  The flags
    record algebraic facts the t-norm is known to satisfy; the theorem
    harness consults them instead of re-deriving.
    """

    name: str
    value_domain: str  # "three_valued" | "unit_interval"
    negation: Callable = field(compare=False)
    tnorm: Callable = field(compare=False)
    implication: Callable = field(compare=False)
    continuous: bool = True
    zero_divisor_free: bool = True
    half_idempotent: bool = True


L3 = LogicSystem(
    name="l3", value_domain="three_valued",
    negation=_standard_negation, tnorm=_tnorm_min, implication=_impl_lukasiewicz,
    continuous=True, zero_divisor_free=True, half_idempotent=True,
)

GODEL = LogicSystem(
    name="godel", value_domain="unit_interval",
    negation=_standard_negation, tnorm=_tnorm_min, implication=_impl_godel,
    continuous=True, zero_divisor_free=True, half_idempotent=True,
)

PRODUCT = LogicSystem(
    name="product", value_domain="unit_interval",
    negation=_standard_negation, tnorm=_tnorm_product, implication=_impl_product,
    continuous=True, zero_divisor_free=True, half_idempotent=False,
)

LUKASIEWICZ = LogicSystem(
    name="lukasiewicz", value_domain="unit_interval",
    negation=_standard_negation, tnorm=_tnorm_lukasiewicz, implication=_impl_lukasiewicz,
    continuous=True, zero_divisor_free=False, half_idempotent=False,
)

BUILTIN_LOGICS = {logic.name: logic for logic in (L3, GODEL, PRODUCT, LUKASIEWICZ)}


def get_logic(name: str) -> LogicSystem:
    try:
        return BUILTIN_LOGICS[name]
    except KeyError:
        known = ", ".join(sorted(BUILTIN_LOGICS))
        raise ValidationError(f"unknown logic {name!r} (known: {known})") from None


# -- assignments ------------------------------------------------------------


class Assignment(Mapping):
    """Immutable map from elements to values in [0, 1].

    Values given as int/str/Fraction are stored exactly as fractions;
    floats are kept as floats.  ``exact`` tells the two modes apart.
    """

    __slots__ = ("_values", "_exact", "_hash")

    def __init__(self, values: Mapping[ElementId, object] | Iterable[tuple[ElementId, object]]):
        items = values.items() if isinstance(values, Mapping) else values
        store: dict[ElementId, object] = {}
        exact = True
        for key, raw in items:
            if isinstance(raw, float):
                value: object = raw
                exact = False
            else:
                value = Fraction(raw)
            if not 0 <= value <= 1:
                raise ValidationError(f"value {raw!r} for {key} is outside [0, 1]")
            store[key] = value
        self._values = dict(sorted(store.items()))
        self._exact = exact
        self._hash = hash(tuple(self._values.items()))

    @property
    def exact(self) -> bool:
        return self._exact

    def __getitem__(self, key: ElementId):
        return self._values[key]

    def __iter__(self) -> Iterator[ElementId]:
        return iter(self._values)

    def __len__(self) -> int:
        return len(self._values)

    def __eq__(self, other) -> bool:
        if isinstance(other, Mapping):
            return dict(self._values) == dict(other)
        return NotImplemented

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        inner = ", ".join(f"{k.qualified}: {v}" for k, v in self._values.items())
        return f"Assignment({{{inner}}})"

    def to_json_obj(self) -> dict[str, object]:
        out: dict[str, object] = {}
        for k, v in self._values.items():
            out[k.qualified] = float(f"{v:.12g}") if isinstance(v, float) else str(v)
        return out


# -- evaluation --------------------------------------------------------------

_THREE = (Fraction(0), Fraction(1, 2), Fraction(1))


def _lookup(assignment: Mapping, element: ElementId, logic: LogicSystem):
    try:
        value = assignment[element]
    except KeyError:
        raise EvaluationError(f"variable {element.qualified} is unassigned") from None
    if logic.value_domain == "three_valued":
        if not any(value == t for t in _THREE):
            raise EvaluationError(
                f"value {value!r} of {element.qualified} is not three-valued"
            )
    elif not 0 <= value <= 1:
        raise EvaluationError(f"value {value!r} of {element.qualified} is outside [0, 1]")
    return value


def evaluate(f: Formula, assignment: Mapping, logic: LogicSystem):
    """Truth value of ``f`` under ``assignment`` in ``logic``.

    Conjunction folds the t-norm (the empty conjunction is 1), negation
    and implication apply the logic's operators, and the biconditional is
    the conjunction of the two implications.  Disjunction exists only in
    the three-valued system, where it is max.
    """
    if isinstance(f, Var):
        return _lookup(assignment, f.element, logic)
    if isinstance(f, Top):
        return 1
    if isinstance(f, Bottom):
        return 0
    if isinstance(f, Not):
        return logic.negation(evaluate(f.child, assignment, logic))
    if isinstance(f, And):
        acc = 1
        for child in f.children:
            # any t-norm sends 0 with anything to 0
            if acc == 0:
                return acc
            acc = logic.tnorm(acc, evaluate(child, assignment, logic))
        return acc
    if isinstance(f, Or):
        if logic.value_domain != "three_valued":
            raise EvaluationError(
                f"disjunction is not interpreted in the {logic.name} logic"
            )
        acc = 0
        for child in f.children:
            value = evaluate(child, assignment, logic)
            acc = value if value > acc else acc
        return acc
    if isinstance(f, Implies):
        return logic.implication(
            evaluate(f.lhs, assignment, logic), evaluate(f.rhs, assignment, logic)
        )
    if isinstance(f, Iff):
        m = evaluate(f.lhs, assignment, logic)
        n = evaluate(f.rhs, assignment, logic)
        return logic.tnorm(logic.implication(m, n), logic.implication(n, m))
    raise EvaluationError(f"unknown formula node {type(f).__name__}")


def compile_evaluator(f: Formula, logic: LogicSystem) -> Callable[[Mapping], object]:
    """Compile ``f`` into a closure tree for repeated evaluation.

    Skips per-lookup domain checks, so callers must feed in-domain
    values; agreement with :func:`evaluate` is covered by tests.
    """
    neg, tnorm, impl = logic.negation, logic.tnorm, logic.implication

    def build(node: Formula) -> Callable[[Mapping], object]:
        if isinstance(node, Var):
            key = node.element
            return lambda env: env[key]
        if isinstance(node, Top):
            return lambda env: 1
        if isinstance(node, Bottom):
            return lambda env: 0
        if isinstance(node, Not):
            inner = build(node.child)
            return lambda env: neg(inner(env))
        if isinstance(node, And):
            parts = tuple(build(c) for c in node.children)

            def run_and(env, parts=parts):
                acc = 1
                for p in parts:
                    if acc == 0:
                        return acc
                    acc = tnorm(acc, p(env))
                return acc

            return run_and
        if isinstance(node, Or):
            if logic.value_domain != "three_valued":
                raise EvaluationError(
                    f"disjunction is not interpreted in the {logic.name} logic"
                )
            parts = tuple(build(c) for c in node.children)

            def run_or(env, parts=parts):
                acc = 0
                for p in parts:
                    value = p(env)
                    acc = value if value > acc else acc
                return acc

            return run_or
        if isinstance(node, Implies):
            left, right = build(node.lhs), build(node.rhs)
            return lambda env: impl(left(env), right(env))
        if isinstance(node, Iff):
            left, right = build(node.lhs), build(node.rhs)

            def run_iff(env):
                m = left(env)
                n = right(env)
                return tnorm(impl(m, n), impl(n, m))

            return run_iff
        raise EvaluationError(f"unknown formula node {type(node).__name__}")

    return build(f)


# -- encoding ----------------------------------------------------------------


def encode_normal(h: HAFS) -> Formula:
    """Conjunction over the universe of per-element biconditionals.

    Each element is tied to the conjunction of ``~(attack & attacker)``
    over its incoming attacks and ``~(support & ~supporter)`` over its
    incoming supports; with no incoming edges the right side is Top.
    Conjunct order follows element order, inner order follows relation
    ids, so the output is reproducible.
    """
    conjuncts = []
    for a in h.universe:
        parts: list[Formula] = [
            Not(And((Var(rel), Var(b)))) for b, rel in h.attackers_of(a)
        ]
        parts += [
            Not(And((Var(rel), Not(Var(c))))) for c, rel in h.supporters_of(a)
        ]
        conjuncts.append(Iff(Var(a), conjunction(parts)))
    return conjunction(conjuncts)


def is_model(h: HAFS, assignment: Mapping, logic: LogicSystem) -> bool:
    """True iff the encoded formula evaluates to exactly 1."""
    missing = [x for x in h.universe if x not in assignment]
    if missing:
        raise EvaluationError(f"assignment is not total: missing {missing[0].qualified}")
    return evaluate(encode_normal(h), assignment, logic) == 1


# -- rendering ---------------------------------------------------------------


def formula_to_text(f: Formula) -> str:
    """Canonical fully parenthesised form; Top/Bottom print as T/F."""
    if isinstance(f, Var):
        return f.element.name
    if isinstance(f, Top):
        return "T"
    if isinstance(f, Bottom):
        return "F"
    if isinstance(f, Not):
        # composite children parenthesise themselves
        return "~" + formula_to_text(f.child)
    if isinstance(f, And):
        if not f.children:
            return "T"
        return "(" + " & ".join(formula_to_text(c) for c in f.children) + ")"
    if isinstance(f, Or):
        if not f.children:
            return "F"
        return "(" + " | ".join(formula_to_text(c) for c in f.children) + ")"
    if isinstance(f, Implies):
        return f"({formula_to_text(f.lhs)} -> {formula_to_text(f.rhs)})"
    if isinstance(f, Iff):
        return f"({formula_to_text(f.lhs)} <-> {formula_to_text(f.rhs)})"
    raise ValueError(f"unknown formula node {type(f).__name__}")


def formula_to_json_obj(f: Formula) -> dict:
    if isinstance(f, Var):
        return {"op": "var", "id": f.element.qualified}
    if isinstance(f, Top):
        return {"op": "top"}
    if isinstance(f, Bottom):
        return {"op": "bottom"}
    if isinstance(f, Not):
        return {"op": "not", "child": formula_to_json_obj(f.child)}
    if isinstance(f, And):
        return {"op": "and", "children": [formula_to_json_obj(c) for c in f.children]}
    if isinstance(f, Or):
        return {"op": "or", "children": [formula_to_json_obj(c) for c in f.children]}
    if isinstance(f, Implies):
        return {"op": "implies", "lhs": formula_to_json_obj(f.lhs),
                "rhs": formula_to_json_obj(f.rhs)}
    if isinstance(f, Iff):
        return {"op": "iff", "lhs": formula_to_json_obj(f.lhs),
                "rhs": formula_to_json_obj(f.rhs)}
    raise ValueError(f"unknown formula node {type(f).__name__}")

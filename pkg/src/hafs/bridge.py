"""Ternarization and empirical checks of the semantic correspondences.

Each checker exercises one claimed relationship between the semantics on
small instances: labelling families against extension families, the
three-valued model set of the encoded formula, model/solution
equivalence of the equation systems, and the transfer results between
fuzzy solutions and three-valued labellings.  Failures always carry a
replayable counterexample.
"""

from __future__ import annotations

import hashlib
import random
from collections.abc import Mapping
from fractions import Fraction
import numpy as np

from .equations import build_equations, enumerate_ternary_solutions, solve_fixed_point
from .errors import PreconditionError, SizeBoundError, ValidationError
from .extensions import enumerate_extensions, extension_derived_labelling
from .framework import HAFS, is_support_acyclic, serialize
from .labellings import HALF, ONE, ZERO, Labelling3, enumerate_adjacent_complete, \
    is_adjacent_complete
from .limits import DEFAULT_LABELLING_BOUND, universe_bound
from .logic import And, Assignment, Bottom, Formula, GODEL, Iff, Implies, LogicSystem, \
    LUKASIEWICZ, Not, Or, PRODUCT, Top, Var, compile_evaluator, encode_normal, get_logic

try:  # exact arithmetic accelerator; plain fractions behave identically
    from gmpy2 import mpq as _exact
except ImportError:  # pragma: no cover
    _exact = Fraction

FLOAT_TERNARIZE_TOL = 1e-6
FLOAT_RESIDUAL_TOL = 1e-12

THEOREM_IDS = ("T1", "T2", "T_PL3", "EQ_G", "EQ_P", "EQ_L", "T16", "IDEM", "CORR_G")


# -- ternarization -----------------------------------------------------------


def ternarize(values: Mapping, tolerance: float = FLOAT_TERNARIZE_TOL) -> Labelling3:
    """Collapse a [0,1] assignment to {0, 1/2, 1}.

    Exact values map by equality; floats within ``tolerance`` of an
    endpoint snap to it, everything else becomes 1/2.
    """
    out = {}
    for key, value in values.items():
        if isinstance(value, float):
            if not 0.0 <= value <= 1.0:
                raise ValidationError(f"value {value!r} for {key} is outside [0, 1]")
            if abs(value - 1.0) <= tolerance:
                out[key] = ONE
            elif abs(value) <= tolerance:
                out[key] = ZERO
            else:
                out[key] = HALF
        else:
            exact = Fraction(value)
            if not 0 <= exact <= 1:
                raise ValidationError(f"value {value!r} for {key} is outside [0, 1]")
            out[key] = ONE if exact == 1 else ZERO if exact == 0 else HALF
    return Labelling3(out)


def embed(labelling: Labelling3) -> Assignment:
    """Read a three-valued labelling as an exact [0,1] assignment."""
    return Assignment(dict(labelling))


# -- three-valued model enumeration ------------------------------------------

_IMP3 = np.array([[2, 2, 2], [1, 2, 2], [0, 1, 2]], dtype=np.int8)
_IFF3 = np.array([[2, 1, 0], [1, 2, 1], [0, 1, 2]], dtype=np.int8)

_CHUNK_ROWS = 3 ** 12
_CODE_TO_VALUE = {0: ZERO, 1: HALF, 2: ONE}


def _eval_grid3(f: Formula, columns, rows: int) -> np.ndarray:
    if isinstance(f, Var):
        return columns[f.element]
    if isinstance(f, Top):
        return np.full(rows, 2, dtype=np.int8)
    if isinstance(f, Bottom):
        return np.zeros(rows, dtype=np.int8)
    if isinstance(f, Not):
        return (2 - _eval_grid3(f.child, columns, rows)).astype(np.int8)
    if isinstance(f, And):
        acc = np.full(rows, 2, dtype=np.int8)
        for child in f.children:
            acc = np.minimum(acc, _eval_grid3(child, columns, rows))
        return acc
    if isinstance(f, Or):
        acc = np.zeros(rows, dtype=np.int8)
        for child in f.children:
            acc = np.maximum(acc, _eval_grid3(child, columns, rows))
        return acc
    if isinstance(f, Implies):
        return _IMP3[_eval_grid3(f.lhs, columns, rows), _eval_grid3(f.rhs, columns, rows)]
    if isinstance(f, Iff):
        return _IFF3[_eval_grid3(f.lhs, columns, rows), _eval_grid3(f.rhs, columns, rows)]
    raise ValidationError(f"unknown formula node {type(f).__name__}")


def enumerate_pl3_models(h: HAFS, bound: int | None = None) -> tuple[Labelling3, ...]:
    """All three-valued assignments satisfying the encoded formula.

    Unpruned sweep over the full 3^|U| grid, evaluating the formula with
    the three-valued connective tables; the labelling enumeration never
    sees the formula, so set comparisons between the two are a real
    cross-check.
    """
    limit = bound if bound is not None else universe_bound(DEFAULT_LABELLING_BOUND)
    order = h.universe
    n = len(order)
    if n > limit:
        raise SizeBoundError(f"universe has {n} elements, bound is {limit}")

    formula = encode_normal(h)
    weights = [3 ** (n - 1 - j) for j in range(n)]
    total = 3 ** n
    models: list[Labelling3] = []
    for start in range(0, total, _CHUNK_ROWS):
        stop = min(start + _CHUNK_ROWS, total)
        rows = np.arange(start, stop, dtype=np.int64)
        columns = {
            e: ((rows // weights[j]) % 3).astype(np.int8) for j, e in enumerate(order)
        }
        value = _eval_grid3(formula, columns, stop - start)
        for row in np.nonzero(value == 2)[0]:
            models.append(Labelling3(
                {e: _CODE_TO_VALUE[int(columns[e][row])] for e in order}
            ))
    return tuple(models)


# -- verification reports ------------------------------------------------------


class VerificationReport:
    """Outcome of one theorem check on one framework."""

    __slots__ = ("theorem_id", "framework_digest", "passed", "counterexample", "notes")

    def __init__(self, theorem_id: str, framework_digest: str, passed: bool,
                 counterexample: dict | None = None, notes: dict | None = None):
        if not passed and counterexample is None:
            raise ValueError("failed reports must carry a counterexample")
        self.theorem_id = theorem_id
        self.framework_digest = framework_digest
        self.passed = passed
        self.counterexample = counterexample
        self.notes = notes or {}

    def to_json_obj(self) -> dict:
        return {
            "theorem": self.theorem_id,
            "framework_digest": self.framework_digest,
            "passed": self.passed,
            "counterexample": self.counterexample,
            "notes": self.notes,
        }

    def __repr__(self) -> str:
        status = "passed" if self.passed else "FAILED"
        return f"VerificationReport({self.theorem_id}, {status})"


def framework_digest(h: HAFS) -> str:
    return hashlib.sha256(serialize(h).encode()).hexdigest()[:16]


def _counterexample(h: HAFS, explanation: str, **payload) -> dict:
    out = {"framework": serialize(h), "explanation": explanation}
    out.update(payload)
    return out


# -- individual checkers -------------------------------------------------------


def _check_derived_is_adjacent(h: HAFS, bound: int) -> VerificationReport:
    digest = framework_digest(h)
    for extension in enumerate_extensions(h, "complete", bound=bound):
        labelling = extension_derived_labelling(h, extension)
        if not is_adjacent_complete(h, labelling):
            return VerificationReport("T1", digest, False, _counterexample(
                h, "labelling derived from a complete extension fails the "
                   "per-element conditions",
                extension=sorted(x.qualified for x in extension),
                labelling=labelling.to_json_obj(),
            ))
    return VerificationReport("T1", digest, True)


def _check_families_coincide(h: HAFS, bound: int) -> VerificationReport:
    digest = framework_digest(h)
    if not is_support_acyclic(h):
        raise PreconditionError("the support graph has a cycle; this check "
                                "applies to support-acyclic frameworks only")
    derived = {
        extension_derived_labelling(h, E)
        for E in enumerate_extensions(h, "complete", bound=bound)
    }
    adjacent = set(enumerate_adjacent_complete(h, bound=bound))
    if derived != adjacent:
        sample = next(iter(derived.symmetric_difference(adjacent)))
        side = "extension-derived only" if sample in derived else "adjacent only"
        return VerificationReport("T2", digest, False, _counterexample(
            h, f"labelling found on one side only ({side})",
            labelling=sample.to_json_obj(),
        ))
    return VerificationReport("T2", digest, True,
                              notes={"labellings": len(adjacent)})


def _check_pl3_models(h: HAFS, bound: int) -> VerificationReport:
    digest = framework_digest(h)
    adjacent = set(enumerate_adjacent_complete(h, bound=bound))
    models = set(enumerate_pl3_models(h, bound=bound))
    if adjacent != models:
        sample = next(iter(adjacent.symmetric_difference(models)))
        side = "labelling only" if sample in adjacent else "model only"
        return VerificationReport("T_PL3", digest, False, _counterexample(
            h, f"three-valued assignment found on one side only ({side})",
            assignment=sample.to_json_obj(),
        ))
    return VerificationReport("T_PL3", digest, True, notes={"models": len(models)})


_QUARTERS = (0, 1, 2, 3, 4)


def _check_equation_equivalence(theorem_id: str, h: HAFS, logic: LogicSystem,
                                grid_cap: int, float_samples: int,
                                seed: int) -> VerificationReport:
    digest = framework_digest(h)
    system = build_equations(h, logic)
    evaluator = compile_evaluator(encode_normal(h), logic)
    order = h.universe
    n = len(order)

    quarter = [_exact(k, 4) for k in _QUARTERS]
    total = 5 ** n
    rng = random.Random(seed)
    notes = {"grid": "exhaustive" if total <= grid_cap else f"sampled({grid_cap})",
             "float_samples": float_samples}

    def grid_points():
        if total <= grid_cap:
            weights = [5 ** (n - 1 - j) for j in range(n)]
            for row in range(total):
                yield {e: quarter[(row // weights[j]) % 5] for j, e in enumerate(order)}
        else:
            for _ in range(grid_cap):
                yield {e: quarter[rng.randrange(5)] for e in order}

    for point in grid_points():
        model = evaluator(point) == 1
        solution = system.is_exact_solution(point)
        if model != solution:
            return VerificationReport(theorem_id, digest, False, _counterexample(
                h, f"exact grid point is {'a model' if model else 'not a model'} "
                   f"but {'a solution' if solution else 'not a solution'}",
                assignment={e.qualified: str(Fraction(v)) for e, v in point.items()},
            ))

    for _ in range(float_samples):
        point = {e: rng.random() for e in order}
        model = evaluator(point) == 1.0
        near_solution = system.residual(point) <= FLOAT_RESIDUAL_TOL
        if model != near_solution:
            return VerificationReport(theorem_id, digest, False, _counterexample(
                h, "float assignment verdicts disagree between the encoded "
                   "formula and the equation residual",
                assignment={e.qualified: float(f"{v:.12g}") for e, v in point.items()},
            ))
    return VerificationReport(theorem_id, digest, True, notes=notes)


def _check_ternarized_solutions(h: HAFS, logic: LogicSystem, seed: int,
                                bound: int) -> VerificationReport:
    digest = framework_digest(h)
    if not logic.zero_divisor_free:
        raise PreconditionError(
            f"logic {logic.name} has zero divisors; solution ternarization "
            "is only guaranteed without them"
        )
    system = build_equations(h, logic)
    candidates: list[tuple[str, Assignment]] = []
    for report in solve_fixed_point(system, seed=seed):
        if report.converged:
            candidates.append(("fixed-point", report.solution))
    for solution in enumerate_ternary_solutions(system, bound=bound):
        candidates.append(("ternary-grid", solution))
    for origin, solution in candidates:
        labelling = ternarize(solution)
        if not is_adjacent_complete(h, labelling):
            return VerificationReport("T16", digest, False, _counterexample(
                h, f"{origin} solution ternarizes to a non-complete labelling "
                   f"under {logic.name}",
                assignment=solution.to_json_obj(),
                labelling=labelling.to_json_obj(),
            ))
    return VerificationReport("T16", digest, True,
                              notes={"logic": logic.name,
                                     "solutions_checked": len(candidates)})


def _check_labellings_solve(h: HAFS, logic: LogicSystem, bound: int) -> VerificationReport:
    digest = framework_digest(h)
    if not logic.half_idempotent:
        raise PreconditionError(
            f"the {logic.name} t-norm does not fix 1/2; labellings need not "
            "solve its equations"
        )
    system = build_equations(h, logic)
    for labelling in enumerate_adjacent_complete(h, bound=bound):
        if not system.is_exact_solution(embed(labelling)):
            return VerificationReport("IDEM", digest, False, _counterexample(
                h, f"labelling is not an exact solution under {logic.name}",
                labelling=labelling.to_json_obj(),
                residual=str(Fraction(system.residual(embed(labelling)))),
            ))
    return VerificationReport("IDEM", digest, True, notes={"logic": logic.name})


def _check_godel_correspondence(h: HAFS, seed: int, bound: int) -> VerificationReport:
    digest = framework_digest(h)
    system = build_equations(h, GODEL)
    adjacent = set(enumerate_adjacent_complete(h, bound=bound))
    ternary = {ternarize(v) for v in enumerate_ternary_solutions(system, bound=bound)}
    notes = {
        "backward": "exhaustive over the {0,1/2,1} grid",
        "forward": "sampled from fixed-point runs",
    }
    if adjacent != ternary:
        sample = next(iter(adjacent.symmetric_difference(ternary)))
        side = "labelling only" if sample in adjacent else "ternary solution only"
        return VerificationReport("CORR_G", digest, False, _counterexample(
            h, f"three-valued map found on one side only ({side})",
            labelling=sample.to_json_obj(),
        ), notes=notes)
    for report in solve_fixed_point(system, seed=seed):
        if not report.converged:
            continue
        labelling = ternarize(report.solution)
        if labelling not in adjacent:
            return VerificationReport("CORR_G", digest, False, _counterexample(
                h, "fixed-point solution ternarizes outside the labelling family",
                assignment=report.solution.to_json_obj(),
                labelling=labelling.to_json_obj(),
            ), notes=notes)
    return VerificationReport("CORR_G", digest, True, notes=notes)


# -- dispatch -------------------------------------------------------------------


def verify(h: HAFS, theorem_id: str, logic: LogicSystem | str | None = None,
           seed: int = 0, bound: int = 8, grid_cap: int = 100_000,
           float_samples: int = 200) -> VerificationReport:
    """Run one theorem check; see THEOREM_IDS for the available ids.

    ``bound`` caps the universe size for the exhaustive enumerations.
    ``logic`` selects the fuzzy system for T16/IDEM (default Gödel); the
    EQ_G/EQ_P/EQ_L and CORR_G ids fix their own logic.
    """
    if isinstance(logic, str):
        logic = get_logic(logic)
    if theorem_id == "T1":
        return _check_derived_is_adjacent(h, bound)
    if theorem_id == "T2":
        return _check_families_coincide(h, bound)
    if theorem_id == "T_PL3":
        return _check_pl3_models(h, bound)
    if theorem_id == "EQ_G":
        return _check_equation_equivalence("EQ_G", h, GODEL, grid_cap, float_samples, seed)
    if theorem_id == "EQ_P":
        return _check_equation_equivalence("EQ_P", h, PRODUCT, grid_cap, float_samples, seed)
    if theorem_id == "EQ_L":
        return _check_equation_equivalence("EQ_L", h, LUKASIEWICZ, grid_cap,
                                           float_samples, seed)
    if theorem_id == "T16":
        return _check_ternarized_solutions(h, logic or GODEL, seed, bound)
    if theorem_id == "IDEM":
        return _check_labellings_solve(h, logic or GODEL, bound)
    if theorem_id == "CORR_G":
        return _check_godel_correspondence(h, seed, bound)
    known = ", ".join(THEOREM_IDS)
    raise ValidationError(f"unknown theorem id {theorem_id!r} (known: {known})")

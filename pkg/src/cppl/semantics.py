"""Pair-valued semantics, the model relation, and the enumeration oracle.

A formula's value under an interpretation is a pair of integers whose first
component counts satisfied weight; a sentence holds when that component
compares against the bound as its constraint type demands.  The oracle
decides satisfiability and entailment by checking every interpretation over
the occurring variables — deliberately naive, so it can serve as ground
truth for everything else.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Sequence

from .core import (
    Add,
    CpplError,
    Formula,
    Interpretation,
    LinearForm,
    MeaningPair,
    Not,
    Prime,
    Scale,
    Sentence,
    StandardSentence,
    Variable,
    formula_variables,
)

#: Refuse to enumerate more than 2**ORACLE_VARIABLE_CAP interpretations.
ORACLE_VARIABLE_CAP = 24


class OracleCapError(CpplError):
    """Too many variables for exhaustive enumeration."""


def evaluate(interp: Interpretation, formula: Formula) -> MeaningPair:
    """Value of the formula: (1,0)/(0,1) at variables, then scale/swap/add up."""
    if isinstance(formula, Prime):
        return MeaningPair(1, 0) if formula.var in interp else MeaningPair(0, 1)
    if isinstance(formula, Scale):
        inner = evaluate(interp, formula.body)
        return MeaningPair(formula.factor * inner.first, formula.factor * inner.second)
    if isinstance(formula, Not):
        inner = evaluate(interp, formula.body)
        return MeaningPair(inner.second, inner.first)
    if isinstance(formula, Add):
        left = evaluate(interp, formula.left)
        right = evaluate(interp, formula.right)
        return MeaningPair(left.first + right.first, left.second + right.second)
    raise TypeError(f"not a formula: {formula!r}")


def evaluate_linear(interp: Interpretation, form: LinearForm) -> MeaningPair:
    """Meaning pair of a normal form: (satisfied weight, remaining weight)."""
    weight = form.satisfied_weight(interp.true_vars)
    return MeaningPair(weight, form.coefficient_sum() - weight)


def satisfies(interp: Interpretation, sentence: Sentence | StandardSentence) -> bool:
    """Model relation; each leading ~ on a sentence flips the outcome."""
    if isinstance(sentence, StandardSentence):
        return sentence.form.satisfied_weight(interp.true_vars) >= sentence.bound
    value = evaluate(interp, sentence.body)
    holds = sentence.ctype.compare(value.first, sentence.bound)
    if sentence.negations % 2 == 1:
        holds = not holds
    return holds


class VerdictKind(Enum):
    SAT = "SAT"
    UNSAT = "UNSAT"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a satisfiability decision; SAT from the oracle has a witness."""

    kind: VerdictKind
    witness: Interpretation | None = None
    reason: str = ""

    @classmethod
    def sat(cls, witness: Interpretation | None = None, reason: str = "") -> "Verdict":
        return cls(VerdictKind.SAT, witness, reason)

    @classmethod
    def unsat(cls) -> "Verdict":
        return cls(VerdictKind.UNSAT)

    @classmethod
    def unknown(cls, reason: str) -> "Verdict":
        return cls(VerdictKind.UNKNOWN, None, reason)

    @property
    def is_sat(self) -> bool:
        return self.kind is VerdictKind.SAT

    @property
    def is_unsat(self) -> bool:
        return self.kind is VerdictKind.UNSAT


def sentence_variables(sentence: Sentence | StandardSentence) -> tuple[Variable, ...]:
    if isinstance(sentence, StandardSentence):
        return sentence.form.variables()
    return formula_variables(sentence.body)


def instance_variables(
    sentences: Iterable[Sentence | StandardSentence],
) -> tuple[Variable, ...]:
    """Union of occurring variables, canonically ordered."""
    seen: set[Variable] = set()
    for sentence in sentences:
        seen.update(sentence_variables(sentence))
    return tuple(sorted(seen, key=lambda v: (v.ordinal, v.name)))


def interpretations_over(variables: Sequence[Variable]) -> Iterator[Interpretation]:
    """All interpretations as a binary counter; bit j of the counter is variable j.

    The counter starts at zero (the empty interpretation), so the first
    satisfying interpretation found this way is the numerically smallest.
    """
    for mask in range(1 << len(variables)):
        yield Interpretation(
            frozenset(v for j, v in enumerate(variables) if mask >> j & 1)
        )


def _check_cap(variables: Sequence[Variable], cap: int) -> None:
    if len(variables) > cap:
        raise OracleCapError(
            f"{len(variables)} variables exceed the enumeration cap of {cap}"
        )


def oracle_sat(
    sentences: Sequence[Sentence | StandardSentence], cap: int = ORACLE_VARIABLE_CAP
) -> Verdict:
    """Brute-force satisfiability: first (smallest) model or UNSAT.

    Returns UNKNOWN instead of enumerating past the variable cap.
    """
    variables = instance_variables(sentences)
    if len(variables) > cap:
        return Verdict.unknown(
            f"{len(variables)} variables exceed the enumeration cap of {cap}"
        )
    for interp in interpretations_over(variables):
        if all(satisfies(interp, s) for s in sentences):
            return Verdict.sat(interp)
    return Verdict.unsat()


def oracle_entails(
    premises: Sequence[Sentence | StandardSentence],
    goal: Sentence | StandardSentence,
    cap: int = ORACLE_VARIABLE_CAP,
) -> bool:
    """True when every model of the premises also models the goal."""
    variables = instance_variables(list(premises) + [goal])
    _check_cap(variables, cap)
    for interp in interpretations_over(variables):
        if all(satisfies(interp, s) for s in premises) and not satisfies(interp, goal):
            return False
    return True


def equivalent(a: Formula, b: Formula, cap: int = ORACLE_VARIABLE_CAP) -> bool:
    """True when both formulas take the same value under every interpretation."""
    variables = tuple(
        sorted(
            set(formula_variables(a)) | set(formula_variables(b)),
            key=lambda v: (v.ordinal, v.name),
        )
    )
    _check_cap(variables, cap)
    return all(
        evaluate(interp, a) == evaluate(interp, b)
        for interp in interpretations_over(variables)
    )

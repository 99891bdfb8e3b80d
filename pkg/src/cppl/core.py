"""Core value types for constrained pseudo-propositional logic (CPPL).

Formulas are built from propositional variables by natural-number scaling,
negation, and addition.  A sentence compares the value a formula takes under
an interpretation against a natural bound; a standard sentence fixes the
comparison to ``>=`` over a normal-form body and is what the resolution
engine works on.

Everything here is an immutable value; the only stateful object is the
variable table, which interns names and fixes the canonical variable order.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, NamedTuple


class CpplError(Exception):
    """Base class for errors raised by this package."""


@dataclass(frozen=True)
class Variable:
    """Propositional variable with the ordinal its table assigned it."""

    name: str
    ordinal: int

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("variable name must be nonempty")

    def __repr__(self) -> str:
        return f"Variable({self.name!r}, {self.ordinal})"


class VariableTable:
    """Interns variable names, assigning ordinals in first-appearance order.

    Safe to share between threads; typically one table per parsed instance.
    """

    def __init__(self) -> None:
        self._by_name: dict[str, Variable] = {}
        self._lock = threading.Lock()

    def variable(self, name: str) -> Variable:
        with self._lock:
            var = self._by_name.get(name)
            if var is None:
                var = Variable(name, len(self._by_name))
                self._by_name[name] = var
            return var

    def __len__(self) -> int:
        return len(self._by_name)

    def __contains__(self, name: str) -> bool:
        return name in self._by_name


@dataclass(frozen=True)
class Literal:
    """A variable or its negation."""

    var: Variable
    positive: bool = True

    def negated(self) -> "Literal":
        return Literal(self.var, not self.positive)

    def holds_in(self, true_vars: frozenset[Variable]) -> bool:
        return (self.var in true_vars) == self.positive

    def __str__(self) -> str:
        return self.var.name if self.positive else "!" + self.var.name


def canonical_key(lit: Literal) -> tuple[int, str, int]:
    """Sort key for the canonical literal order: variable first, then polarity."""
    return (lit.var.ordinal, lit.var.name, 0 if lit.positive else 1)


def canonical_compare(a: Literal, b: Literal) -> int:
    """Total order on literals: -1, 0, or 1 as a sorts before, equal to, after b."""
    ka, kb = canonical_key(a), canonical_key(b)
    if ka < kb:
        return -1
    return 0 if ka == kb else 1


class ConstraintType(Enum):
    """The five comparison symbols a sentence may use."""

    GREATER = ">"
    AT_LEAST = ">="
    EQUAL = "="
    LESS = "<"
    AT_MOST = "<="

    @property
    def symbol(self) -> str:
        return self.value

    def compare(self, left: int, right: int) -> bool:
        if self is ConstraintType.GREATER:
            return left > right
        if self is ConstraintType.AT_LEAST:
            return left >= right
        if self is ConstraintType.EQUAL:
            return left == right
        if self is ConstraintType.LESS:
            return left < right
        return left <= right

    @classmethod
    def from_symbol(cls, text: str) -> "ConstraintType":
        for member in cls:
            if member.value == text:
                return member
        raise ValueError(f"unknown constraint type {text!r}")


class Formula:
    """Base of the formula AST; instances are Prime, Scale, Not, or Add."""

    __slots__ = ()


@dataclass(frozen=True)
class Prime(Formula):
    var: Variable


@dataclass(frozen=True)
class Scale(Formula):
    factor: int
    body: Formula

    def __post_init__(self) -> None:
        if self.factor < 0:
            raise ValueError("scaling factor must be a natural number")


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class Add(Formula):
    left: Formula
    right: Formula


def formula_variables(formula: Formula) -> tuple[Variable, ...]:
    """All variables occurring in the formula, in canonical order."""
    seen: set[Variable] = set()
    stack = [formula]
    while stack:
        node = stack.pop()
        if isinstance(node, Prime):
            seen.add(node.var)
        elif isinstance(node, (Scale, Not)):
            stack.append(node.body)
        elif isinstance(node, Add):
            stack.append(node.left)
            stack.append(node.right)
    return tuple(sorted(seen, key=lambda v: (v.ordinal, v.name)))


class MeaningPair(NamedTuple):
    """Value of a formula under an interpretation; (1,0) is true, (0,1) false."""

    first: int
    second: int


class LinearForm:
    """Normal-form formula: a canonical map from literals to positive coefficients.

    Duplicate literals are merged and zero coefficients dropped on
    construction.  A literal and its negation may both be present.
    """

    __slots__ = ("_coeffs", "_items", "_hash")

    def __init__(self, coeffs: dict[Literal, int], _items: tuple | None = None):
        self._coeffs = coeffs
        if _items is None:
            _items = tuple(sorted(coeffs.items(), key=lambda kv: canonical_key(kv[0])))
        self._items = _items
        self._hash = hash(self._items)

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[Literal, int]]) -> "LinearForm":
        coeffs: dict[Literal, int] = {}
        for lit, coeff in terms:
            if coeff < 0:
                raise ValueError("coefficients must be natural numbers")
            if coeff == 0:
                continue
            coeffs[lit] = coeffs.get(lit, 0) + coeff
        return cls(coeffs)

    def items(self) -> tuple[tuple[Literal, int], ...]:
        """Term list in canonical order (variable ordinal, positive first)."""
        return self._items

    def coefficient(self, lit: Literal) -> int:
        return self._coeffs.get(lit, 0)

    def coefficient_sum(self) -> int:
        return sum(self._coeffs.values())

    def literals(self) -> tuple[Literal, ...]:
        return tuple(lit for lit, _ in self._items)

    def variables(self) -> tuple[Variable, ...]:
        seen = {lit.var for lit in self._coeffs}
        return tuple(sorted(seen, key=lambda v: (v.ordinal, v.name)))

    @property
    def is_empty(self) -> bool:
        return not self._coeffs

    def satisfied_weight(self, true_vars: frozenset[Variable]) -> int:
        """First meaning-pair component: total coefficient of literals that hold."""
        return sum(c for lit, c in self._items if lit.holds_in(true_vars))

    def negated(self) -> "LinearForm":
        return LinearForm({lit.negated(): c for lit, c in self._coeffs.items()})

    def scaled(self, factor: int) -> "LinearForm":
        if factor < 0:
            raise ValueError("scaling factor must be a natural number")
        if factor == 0:
            return LinearForm({})
        return LinearForm({lit: c * factor for lit, c in self._coeffs.items()})

    def added(self, other: "LinearForm") -> "LinearForm":
        coeffs = dict(self._coeffs)
        for lit, c in other._coeffs.items():
            coeffs[lit] = coeffs.get(lit, 0) + c
        return LinearForm(coeffs)

    def without(self, lit: Literal, amount: int) -> "LinearForm":
        """Remove `amount` from the coefficient of `lit` (which must be present)."""
        have = self._coeffs.get(lit, 0)
        if amount < 0 or amount > have:
            raise ValueError(f"cannot remove {amount} of {lit} (coefficient {have})")
        coeffs = dict(self._coeffs)
        if have == amount:
            del coeffs[lit]
        else:
            coeffs[lit] = have - amount
        return LinearForm(coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearForm):
            return NotImplemented
        return self._items == other._items

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        inner = " + ".join(f"{c} {lit}" for lit, c in self._items)
        return f"LinearForm({inner})"


@dataclass(frozen=True)
class StandardSentence:
    """Normal-form body with an implicit >= comparison against `bound`.

    The bound is signed: intermediate arithmetic may push it below zero,
    which classification reads as a tautology.
    """

    form: LinearForm
    bound: int


@dataclass(frozen=True)
class Sentence:
    """A formula compared against a natural bound, under `negations` leading ~."""

    body: Formula
    ctype: ConstraintType
    bound: int
    negations: int = 0

    def __post_init__(self) -> None:
        if self.bound < 0:
            raise ValueError("sentence bound must be a natural number")
        if self.negations < 0:
            raise ValueError("negation count must be a natural number")

    def negated(self) -> "Sentence":
        return Sentence(self.body, self.ctype, self.bound, self.negations + 1)


@dataclass(frozen=True)
class Interpretation:
    """Finite set of variables taken to be true; everything else is false."""

    true_vars: frozenset[Variable] = frozenset()

    @classmethod
    def of(cls, *variables: Variable) -> "Interpretation":
        return cls(frozenset(variables))

    def __contains__(self, var: Variable) -> bool:
        return var in self.true_vars

    def __iter__(self) -> Iterator[Variable]:
        return iter(sorted(self.true_vars, key=lambda v: (v.ordinal, v.name)))

    def __str__(self) -> str:
        return "{" + ", ".join(v.name for v in self) + "}"


#: The canonical unsatisfiable standard sentence: an empty sum bound below 1.
CANONICAL_BOTTOM = StandardSentence(LinearForm.from_terms([]), 1)

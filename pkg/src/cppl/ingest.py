"""Instance ingestion: DIMACS CNF, cardinality constraints, native files.

A CNF clause holds exactly when at least one of its literals is true, i.e.
when the literal sum is at least 1, so every DIMACS instance maps directly
to sentences.  Cardinality constraints are native here: at-least/at-most/
exactly-k are single sentences rather than clause encodings.
"""

from __future__ import annotations

from typing import Sequence

from .core import (
    Add,
    ConstraintType,
    CpplError,
    Formula,
    Literal,
    Not,
    Prime,
    Scale,
    Sentence,
    VariableTable,
    canonical_key,
)
from .parser import parse_instance, print_sentence


class DimacsError(CpplError):
    """Malformed DIMACS CNF input."""


def read_dimacs(text: str, table: VariableTable | None = None) -> list[Sentence]:
    """Translate DIMACS CNF into one at-least-1 sentence per clause.

    Variable i is named ``p<i>``; duplicate literals within a clause merge
    into a coefficient.  Tautological clauses are kept as parsed — dropping
    them is the engine's job, not the reader's.
    """
    table = table or VariableTable()
    var_count: int | None = None
    clause_tokens: list[int] = []
    sentences: list[Sentence] = []

    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if var_count is not None:
                raise DimacsError(f"line {lineno}: duplicate header")
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"line {lineno}: malformed header {line!r}")
            try:
                var_count = int(parts[2])
                int(parts[3])
            except ValueError:
                raise DimacsError(f"line {lineno}: malformed header {line!r}")
            if var_count < 0:
                raise DimacsError(f"line {lineno}: negative variable count")
            # intern p1..pn up front so ordinals follow the index order
            for i in range(1, var_count + 1):
                table.variable(f"p{i}")
            continue
        if var_count is None:
            raise DimacsError(f"line {lineno}: clause before 'p cnf' header")
        for token in line.split():
            try:
                value = int(token)
            except ValueError:
                raise DimacsError(f"line {lineno}: bad literal {token!r}")
            if value == 0:
                sentences.append(_clause_sentence(clause_tokens, table, lineno))
                clause_tokens = []
            else:
                if abs(value) > var_count:
                    raise DimacsError(
                        f"line {lineno}: literal {value} exceeds variable count "
                        f"{var_count}"
                    )
                clause_tokens.append(value)

    if var_count is None:
        raise DimacsError("missing 'p cnf' header")
    if clause_tokens:
        raise DimacsError("last clause is not terminated by 0")
    return sentences


def _clause_sentence(tokens: list[int], table: VariableTable, lineno: int) -> Sentence:
    if not tokens:
        raise DimacsError(f"line {lineno}: zero-length clause")
    counts: dict[Literal, int] = {}
    for value in tokens:
        lit = Literal(table.variable(f"p{abs(value)}"), value > 0)
        counts[lit] = counts.get(lit, 0) + 1
    ordered = sorted(counts.items(), key=lambda kv: canonical_key(kv[0]))
    return Sentence(_sum_body(ordered), ConstraintType.AT_LEAST, 1)


def _literal_formula(lit: Literal) -> Formula:
    prime = Prime(lit.var)
    return prime if lit.positive else Not(prime)


def _sum_body(terms: Sequence[tuple[Literal, int]]) -> Formula:
    addends: list[Formula] = []
    for lit, coeff in terms:
        body = _literal_formula(lit)
        addends.append(body if coeff == 1 else Scale(coeff, body))
    node = addends[0]
    for addend in addends[1:]:
        node = Add(node, addend)
    return node


def _literal_sum(literals: Sequence[Literal]) -> Formula:
    if not literals:
        raise ValueError("literal list must be non-empty")
    return _sum_body([(lit, 1) for lit in literals])


def at_least_k(literals: Sequence[Literal], k: int) -> Sentence:
    """At least k of the literals hold: their sum is >= k."""
    if k < 0:
        raise ValueError("k must be a natural number")
    return Sentence(_literal_sum(literals), ConstraintType.AT_LEAST, k)


def at_most_k(literals: Sequence[Literal], k: int) -> Sentence:
    """At most k of the literals hold; standardization flips it to >= form."""
    if k < 0:
        raise ValueError("k must be a natural number")
    return Sentence(_literal_sum(literals), ConstraintType.AT_MOST, k)


def exactly_k(literals: Sequence[Literal], k: int) -> Sentence:
    """Exactly k of the literals hold; standardizes to an at-least/at-most pair."""
    if not 0 <= k <= len(literals):
        raise ValueError(f"k={k} out of range for {len(literals)} literals")
    return Sentence(_literal_sum(literals), ConstraintType.EQUAL, k)


def read_instance(text: str, table: VariableTable | None = None) -> list[Sentence]:
    """Native instance format: the line-oriented sentence syntax."""
    return parse_instance(text, table)


def write_instance(sentences: Sequence[Sentence]) -> str:
    """One sentence per line; reading the output back gives equal sentences."""
    if not sentences:
        return ""
    return "\n".join(print_sentence(s) for s in sentences) + "\n"


def pigeonhole(pigeons: int, holes: int, table: VariableTable | None = None) -> list[Sentence]:
    """The pigeonhole instance: every pigeon placed, no hole holds two.

    Variable ``p<i><j>`` says pigeon i sits in hole j.  Unsatisfiable
    whenever pigeons > holes.
    """
    if pigeons < 1 or holes < 1:
        raise ValueError("pigeonhole needs at least one pigeon and one hole")
    table = table or VariableTable()
    slot = {
        (i, j): Literal(table.variable(f"p{i}{j}"))
        for i in range(1, pigeons + 1)
        for j in range(1, holes + 1)
    }
    sentences = [
        at_least_k([slot[i, j] for j in range(1, holes + 1)], 1)
        for i in range(1, pigeons + 1)
    ]
    sentences.extend(
        at_most_k([slot[i, j] for i in range(1, pigeons + 1)], 1)
        for j in range(1, holes + 1)
    )
    return sentences

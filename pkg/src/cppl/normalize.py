"""Rewriting formulas to normal form and sentences to standard form.

Every formula is semantically a sum of pseudo-literals; `normalize_formula`
computes that sum.  `standardize` turns any sentence into an equivalent set
of >= sentences, eliminating the other comparators and leading ~ wrappers.
The set is a conjunction, which is why negating an `=` sentence (whose
negation is a disjunction) is rejected.
"""

from __future__ import annotations

from enum import Enum

from .core import (
    Add,
    ConstraintType,
    CpplError,
    Formula,
    LinearForm,
    Literal,
    Not,
    Prime,
    Scale,
    Sentence,
    StandardSentence,
)


class StandardizationError(CpplError):
    """A sentence has no equivalent conjunctive set of standard sentences."""


class Classification(Enum):
    TAUTOLOGY = "tautology"
    BOTTOM = "bottom"
    CONTINGENT = "contingent"


def normalize_formula(formula: Formula) -> LinearForm:
    """Rewrite to a sum of pseudo-literals with the same meaning everywhere.

    Scaling distributes over addition and composes multiplicatively; negation
    distributes over addition, commutes with scaling, and flips literals.
    Zero scalings drop out entirely.
    """
    if isinstance(formula, Prime):
        return LinearForm.from_terms([(Literal(formula.var), 1)])
    if isinstance(formula, Scale):
        return normalize_formula(formula.body).scaled(formula.factor)
    if isinstance(formula, Not):
        return normalize_formula(formula.body).negated()
    if isinstance(formula, Add):
        return normalize_formula(formula.left).added(normalize_formula(formula.right))
    raise TypeError(f"not a formula: {formula!r}")


def coefficient_sum(form: LinearForm) -> int:
    return form.coefficient_sum()


def standardize(sentence: Sentence) -> list[StandardSentence]:
    """Equivalent list of standard sentences (their conjunction, model-for-model).

    With N the coefficient sum of the normalized body: >= keeps its bound,
    > n becomes >= n+1, <= n flips literals to >= N-n, < n to >= N-n+1, and
    = n becomes the pair {>= n, flipped >= N-n}.  Leading ~ pairs cancel;
    one surviving ~ is pushed through with `negate_standard`, except on `=`
    where the negation is a disjunction and is rejected.
    """
    form = normalize_formula(sentence.body)
    total = form.coefficient_sum()
    flipped = sentence.negations % 2 == 1
    ctype, bound = sentence.ctype, sentence.bound

    if ctype is ConstraintType.EQUAL:
        if flipped:
            raise StandardizationError(
                "cannot standardize ~ applied to an '=' sentence: its negation "
                "is a disjunction of two >= sentences, not a conjunctive set"
            )
        return [
            StandardSentence(form, bound),
            StandardSentence(form.negated(), total - bound),
        ]

    if ctype is ConstraintType.AT_LEAST:
        result = StandardSentence(form, bound)
    elif ctype is ConstraintType.GREATER:
        result = StandardSentence(form, bound + 1)
    elif ctype is ConstraintType.AT_MOST:
        result = StandardSentence(form.negated(), total - bound)
    else:  # LESS
        result = StandardSentence(form.negated(), total - bound + 1)

    return [negate_standard(result)] if flipped else [result]


def negate_standard(sentence: StandardSentence) -> StandardSentence:
    """The negation of (form >= n): flip every literal, new bound N - n + 1.

    Exactly one of a standard sentence and its negation holds under any
    interpretation; the operation is an involution.
    """
    total = sentence.form.coefficient_sum()
    return StandardSentence(sentence.form.negated(), total - sentence.bound + 1)


def merge_duplicates(sentence: StandardSentence) -> StandardSentence:
    """Recombine equal literals and drop zero coefficients.

    LinearForm already merges on construction, so this is an idempotent
    recanonicalization point for forms built from raw term lists.
    """
    return StandardSentence(LinearForm.from_terms(sentence.form.items()), sentence.bound)


def cancel_complementary(sentence: StandardSentence) -> StandardSentence:
    """Cancel every variable occurring with both polarities.

    A pair m'·p + m·!p always contributes at least min(m', m) to the
    satisfied weight, so removing the smaller side, shrinking the larger to
    the difference, and lowering the bound by the overlap preserves the
    model set exactly.
    """
    coeffs = {lit: c for lit, c in sentence.form.items()}
    bound = sentence.bound
    for lit, coeff in sentence.form.items():
        if not lit.positive:
            continue
        opposite = lit.negated()
        other = coeffs.get(opposite, 0)
        if coeff == 0 or other == 0:
            continue
        overlap = min(coeff, other)
        coeffs[lit] = coeff - overlap
        coeffs[opposite] = other - overlap
        bound -= overlap
    return StandardSentence(
        LinearForm.from_terms((lit, c) for lit, c in coeffs.items() if c > 0), bound
    )


def classify(sentence: StandardSentence) -> Classification:
    """Tautology when the bound is non-positive, bottom when unreachable.

    The satisfied weight lies between 0 and the coefficient sum, so a bound
    above the sum can never be met and a bound at or below zero always is.
    """
    if sentence.bound <= 0:
        return Classification.TAUTOLOGY
    if sentence.form.coefficient_sum() < sentence.bound:
        return Classification.BOTTOM
    return Classification.CONTINGENT

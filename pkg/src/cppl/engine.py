"""Two-rule resolution: resolvent construction, saturation, and proof traces.

The calculus works on standard sentences.  Premise intake admits any
standardized input sentence; the resolution rule combines two sentences that
clash on a pivot literal, cancelling `cancel` occurrences from each side and
adding the bounds minus the cancellation::

    (form1 with pivot)   >= n1
    (form2 with !pivot)  >= n2
    ----------------------------------------------
    (form1 - c*pivot) + (form2 - c*!pivot) >= n1 + n2 - c

Refutation saturates level by level, keeping every resolvent that is neither
a tautology nor subsumed, and stops as soon as any kept sentence's bound
exceeds its coefficient sum (an unsatisfiable sentence).  Each refutation
emits a trace — the ancestor chain of that final sentence — which the proof
checker can re-derive independently.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import (
    CpplError,
    Literal,
    Sentence,
    StandardSentence,
    VariableTable,
    canonical_key,
)
from .normalize import (
    Classification,
    StandardizationError,
    cancel_complementary,
    classify,
    standardize,
)
from .parser import parse_literal, parse_standard_sentence, print_standard_sentence
from .semantics import Verdict


class ResolutionError(CpplError):
    """Invalid application of the resolution rule."""


class TraceError(CpplError):
    """Malformed proof-trace text."""


@dataclass(frozen=True)
class Premise:
    """Step justification: intake of input sentence number `index` (0-based)."""

    index: int


@dataclass(frozen=True)
class Resolve:
    """Step justification: resolution of two earlier steps on a pivot literal.

    The pivot occurs as written in the left step's sentence and negated in
    the right step's; `cancel` copies of each are removed.
    """

    left_id: int
    right_id: int
    pivot: Literal
    cancel: int


@dataclass(frozen=True)
class ResolveStep:
    id: int
    kind: Premise | Resolve
    result: StandardSentence


@dataclass(frozen=True)
class ProofTrace:
    """Derivation with dense ids 0..k, ending in the unsatisfiable step `conclusion`."""

    steps: tuple[ResolveStep, ...]
    conclusion: int


@dataclass(frozen=True)
class EngineConfig:
    max_steps: int = 100_000
    max_bound: int = 10**9
    enable_subsumption: bool = True
    deterministic_seed: int = 0  # reserved for randomized search strategies

    def __post_init__(self) -> None:
        if self.max_steps < 1:
            raise ValueError("max_steps must be at least 1")


@dataclass(frozen=True)
class RefutationResult:
    verdict: Verdict
    trace: ProofTrace | None
    steps_used: int
    kept: int


def resolve(
    left: StandardSentence, right: StandardSentence, pivot: Literal, cancel: int
) -> StandardSentence:
    """One resolution step; result is merged but not complementary-cancelled.

    Requires 1 <= cancel <= coefficient of the pivot in `left` and of its
    negation in `right`.
    """
    if cancel < 1:
        raise ResolutionError("cancellation amount must be at least 1")
    have_left = left.form.coefficient(pivot)
    have_right = right.form.coefficient(pivot.negated())
    if have_left < cancel:
        raise ResolutionError(
            f"pivot {pivot} has coefficient {have_left} in the left sentence; "
            f"cannot cancel {cancel}"
        )
    if have_right < cancel:
        raise ResolutionError(
            f"pivot {pivot.negated()} has coefficient {have_right} in the right "
            f"sentence; cannot cancel {cancel}"
        )
    form = left.form.without(pivot, cancel).added(
        right.form.without(pivot.negated(), cancel)
    )
    return StandardSentence(form, left.bound + right.bound - cancel)


def all_resolvents(
    left: StandardSentence, right: StandardSentence
) -> list[tuple[Literal, int, StandardSentence]]:
    """Every maximal-cancellation resolvent of the pair, in canonical pivot order.

    One entry per literal of `left` whose negation occurs in `right`; the
    cancellation amount is the smaller of the two coefficients.
    """
    entries = []
    for pivot, coeff in left.form.items():
        other = right.form.coefficient(pivot.negated())
        if other == 0:
            continue
        cancel = min(coeff, other)
        entries.append((pivot, cancel, resolve(left, right, pivot, cancel)))
    entries.sort(key=lambda entry: canonical_key(entry[0]))
    return entries


def subsumes(strong: StandardSentence, weak: StandardSentence) -> bool:
    """True when every model of `strong` must model `weak`.

    Coefficient-wise the strong form fits under the weak one, so the weak
    sentence's satisfied weight is at least the strong one's, which already
    reaches the (no larger) weak bound.
    """
    if strong.bound < weak.bound:
        return False
    for lit, coeff in strong.form.items():
        if coeff > weak.form.coefficient(lit):
            return False
    return True


def refute(
    sentences: Sequence[Sentence], config: EngineConfig | None = None
) -> RefutationResult:
    """Saturate the standardized input; UNSAT with a trace, SAT, or UNKNOWN.

    Inputs are standardized, complementary-cancelled, and tautologies
    dropped.  The worklist runs level by level (premises are level zero),
    processing each level in canonical-print order, so identical inputs and
    configuration always give the identical trace.  SAT is reported by
    saturation and carries no witness; exact duplicates are always dropped,
    the subsumption switch only controls proper coefficient-wise subsumption.
    """
    cfg = config or EngineConfig()
    steps: list[ResolveStep] = []
    recorded: set[StandardSentence] = set()
    pending: list[ResolveStep] = []

    for index, sentence in enumerate(sentences):
        for standard in standardize(sentence):
            prepared = cancel_complementary(standard)
            kind = classify(prepared)
            if kind is Classification.TAUTOLOGY:
                continue
            step = ResolveStep(len(steps), Premise(index), prepared)
            steps.append(step)
            if kind is Classification.BOTTOM:
                return RefutationResult(
                    Verdict.unsat(), _pruned_trace(steps, step.id), 0, 0
                )
            recorded.add(prepared)
            pending.append(step)

    kept: list[ResolveStep] = []
    steps_used = 0
    while pending:
        level = sorted(
            pending, key=lambda st: (print_standard_sentence(st.result), st.id)
        )
        pending = []
        for active in level:
            for other in kept:
                for pivot, cancel, merged in all_resolvents(active.result, other.result):
                    steps_used += 1
                    if steps_used > cfg.max_steps:
                        return RefutationResult(
                            Verdict.unknown(f"step budget of {cfg.max_steps} exhausted"),
                            None,
                            steps_used,
                            len(kept),
                        )
                    resolvent = cancel_complementary(merged)
                    if resolvent.bound > cfg.max_bound:
                        return RefutationResult(
                            Verdict.unknown(
                                f"resolvent bound exceeds cap of {cfg.max_bound}"
                            ),
                            None,
                            steps_used,
                            len(kept),
                        )
                    kind = classify(resolvent)
                    if kind is Classification.TAUTOLOGY:
                        continue
                    if kind is Classification.BOTTOM:
                        step = ResolveStep(
                            len(steps),
                            Resolve(active.id, other.id, pivot, cancel),
                            resolvent,
                        )
                        steps.append(step)
                        return RefutationResult(
                            Verdict.unsat(),
                            _pruned_trace(steps, step.id),
                            steps_used,
                            len(kept),
                        )
                    if resolvent in recorded:
                        continue
                    if cfg.enable_subsumption and any(
                        subsumes(st.result, resolvent) for st in steps
                    ):
                        continue
                    step = ResolveStep(
                        len(steps), Resolve(active.id, other.id, pivot, cancel), resolvent
                    )
                    steps.append(step)
                    recorded.add(resolvent)
                    pending.append(step)
            kept.append(active)

    return RefutationResult(Verdict.sat(None, "saturated"), None, steps_used, len(kept))


def entails(
    premises: Sequence[Sentence], goal: Sentence, config: EngineConfig | None = None
) -> RefutationResult:
    """Decide entailment by refuting the premises plus the negated goal.

    UNSAT means the goal is entailed; SAT by saturation means it is not.
    The goal must standardize to a single standard sentence, so `=` goals
    are rejected.  In the emitted trace the negated goal is premise number
    len(premises).
    """
    forms = standardize(goal)  # raises for ~ applied to '='
    if len(forms) != 1:
        raise StandardizationError(
            "entailment goals must standardize to a single standard sentence; "
            "'=' goals are not supported"
        )
    return refute(list(premises) + [goal.negated()], config)


def _pruned_trace(steps: Sequence[ResolveStep], conclusion_id: int) -> ProofTrace:
    """Restrict to the conclusion's ancestors and renumber densely."""
    needed: set[int] = set()
    frontier = [conclusion_id]
    while frontier:
        step_id = frontier.pop()
        if step_id in needed:
            continue
        needed.add(step_id)
        kind = steps[step_id].kind
        if isinstance(kind, Resolve):
            frontier.append(kind.left_id)
            frontier.append(kind.right_id)
    remap = {old: new for new, old in enumerate(sorted(needed))}
    rebuilt = []
    for old in sorted(needed):
        step = steps[old]
        kind = step.kind
        if isinstance(kind, Resolve):
            kind = Resolve(
                remap[kind.left_id], remap[kind.right_id], kind.pivot, kind.cancel
            )
        rebuilt.append(ResolveStep(remap[old], kind, step.result))
    return ProofTrace(tuple(rebuilt), remap[conclusion_id])


def format_trace(trace: ProofTrace) -> str:
    """Line-oriented text: premise and resolve steps, then the conclusion id."""
    lines = []
    for step in trace.steps:
        sentence = print_standard_sentence(step.result)
        if isinstance(step.kind, Premise):
            lines.append(f"{step.id} P {step.kind.index} {sentence}")
        else:
            kind = step.kind
            lines.append(
                f"{step.id} R {kind.left_id} {kind.right_id} {kind.pivot} "
                f"{kind.cancel} {sentence}"
            )
    lines.append(f"CONCLUSION {trace.conclusion}")
    return "\n".join(lines) + "\n"


def parse_trace(text: str, table: VariableTable | None = None) -> ProofTrace:
    """Inverse of `format_trace`; sentences parse in canonical syntax."""
    table = table or VariableTable()
    steps: list[ResolveStep] = []
    conclusion: int | None = None
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if conclusion is not None:
            raise TraceError(f"trace line {lineno}: content after CONCLUSION")
        fields = line.split(maxsplit=1)
        if fields[0] == "CONCLUSION":
            conclusion = _trace_int(fields[1] if len(fields) > 1 else "", lineno)
            continue
        try:
            steps.append(_parse_step(line, table))
        except (CpplError, ValueError, IndexError) as exc:
            raise TraceError(f"trace line {lineno}: {exc}") from exc
    if conclusion is None:
        raise TraceError("trace has no CONCLUSION line")
    return ProofTrace(tuple(steps), conclusion)


def _trace_int(text: str, lineno: int) -> int:
    try:
        return int(text)
    except ValueError:
        raise TraceError(f"trace line {lineno}: expected an integer, found {text!r}")


def _parse_step(line: str, table: VariableTable) -> ResolveStep:
    head = line.split(maxsplit=2)
    step_id = int(head[0])
    if head[1] == "P":
        index_text, sentence_text = head[2].split(maxsplit=1)
        return ResolveStep(
            step_id,
            Premise(int(index_text)),
            parse_standard_sentence(sentence_text, table),
        )
    if head[1] == "R":
        left, right, pivot_text, cancel, sentence_text = head[2].split(maxsplit=4)
        kind = Resolve(
            int(left), int(right), parse_literal(pivot_text, table), int(cancel)
        )
        return ResolveStep(step_id, kind, parse_standard_sentence(sentence_text, table))
    raise ValueError(f"unknown step kind {head[1]!r}")

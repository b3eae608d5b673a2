"""Two-sided congruence enumeration for finitely presented monoids.

The engine fills the right-action table of classes under letters,
applying every defining relation at every class.  A right congruence
that contains (w u, w v) for every word w and defining pair (u, v) is
closed under multiplication on both sides, so this computes the full
two-sided congruence and the class count is the size of the presented
monoid when enumeration completes.

Runs are deterministic: classes are processed in creation order,
relations in list order tracing left to right, remaining edges filled
in letter order, and coincidences handled first-in first-out with the
smaller class id surviving.  Capped runs are reported as such, never
as a wrong answer; a completed run can overcount nothing and
undercount nothing.

The kernel is the compiled extension dimon._tc_core when available,
with dimon._tc_py as the pure-Python fallback; both implement the
identical procedure.  The environment variable DIMON_MAX_CLASSES
overrides the default class cap.
"""

from __future__ import annotations

import dataclasses
import enum
import functools
import os

from .monoids import FiniteMonoid, verify_generates
from .presentations import (
    Assignment,
    FormsSet,
    Presentation,
    Relation,
    check_relations_hold,
    evaluate,
)

try:
    from . import _tc_core as _kernel

    BACKEND = "compiled"
except ImportError:
    from . import _tc_py as _kernel

    BACKEND = "pure"


class IndeterminateError(RuntimeError):
    """A capped enumeration left the question undecided."""


class Status(enum.Enum):
    COMPLETE = "complete"
    CAPPED = "capped"


class Verdict(enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    INDETERMINATE = "INDETERMINATE"


@dataclasses.dataclass(frozen=True)
class EnumerationCaps:
    """Budgets for one enumeration run."""

    max_classes: int = 10**6
    max_steps: int = 10**8

    def __post_init__(self):
        if self.max_classes <= 0 or self.max_steps <= 0:
            raise ValueError("caps must be positive")

    @classmethod
    def default(cls) -> "EnumerationCaps":
        env = os.environ.get("DIMON_MAX_CLASSES")
        return cls(max_classes=int(env)) if env else cls()


@dataclasses.dataclass(frozen=True)
class EnumerationResult:
    """Outcome of one enumeration.

    When complete, table[c][k] is the class of (word of class c)
    followed by letter k, and class 0 is the class of the empty word.
    """

    status: Status
    letters: "tuple[str, ...]"
    class_count: "int | None"
    table: "tuple[tuple[int, ...], ...] | None"
    caps: EnumerationCaps

    @property
    def is_complete(self) -> bool:
        return self.status is Status.COMPLETE

    @functools.cached_property
    def _letter_ids(self) -> "dict[str, int]":
        # builtin enumerate is shadowed by the module-level alias below
        return dict(zip(self.letters, range(len(self.letters))))

    def word_class(self, w: "tuple[str, ...]") -> int:
        """Class of a word, by replaying letter actions from class 0."""
        if not self.is_complete:
            raise IndeterminateError("enumeration was capped")
        c = 0
        for name in w:
            c = self.table[c][self._letter_ids[name]]
        return c

    def to_json_dict(self) -> dict:
        if self.is_complete:
            return {"status": "complete", "classes": self.class_count}
        return {
            "status": "capped",
            "max_classes": self.caps.max_classes,
            "max_steps": self.caps.max_steps,
        }


def _compiled_relations(p: Presentation):
    return [(p.word_ids(r.lhs), p.word_ids(r.rhs)) for r in p.relations]


def enumerate_congruence(
    p: Presentation, caps: "EnumerationCaps | None" = None
) -> EnumerationResult:
    """Classes of the smallest congruence containing p's relations.

    >>> from .presentations import Presentation, Relation, _alphabet
    >>> p = Presentation("t", _alphabet(["a"]), (Relation(("a", "a"), ("a",), ""),))
    >>> enumerate_congruence(p).class_count
    2
    """
    caps = caps or EnumerationCaps.default()
    status, table, _ = _kernel.run(
        len(p.letters),
        _compiled_relations(p),
        caps.max_classes,
        caps.max_steps,
        None,
    )
    if status == _kernel.STATUS_CAPPED:
        return EnumerationResult(Status.CAPPED, p.letter_names, None, None, caps)
    return EnumerationResult(
        Status.COMPLETE,
        p.letter_names,
        len(table),
        tuple(tuple(row) for row in table),
        caps,
    )


def word_class(r: EnumerationResult, w: "tuple[str, ...]") -> int:
    return r.word_class(w)


def is_consequence(
    p: Presentation, rel: Relation, caps: "EnumerationCaps | None" = None
) -> bool:
    """Whether rel holds in every monoid satisfying p's relations.

    The run exits early once the two sides provably coincide, so true
    consequences are confirmed even when the presented monoid is
    infinite.  A capped run without a merge raises IndeterminateError.
    """
    caps = caps or EnumerationCaps.default()
    watch = (p.word_ids(rel.lhs), p.word_ids(rel.rhs))
    status, _, watch_equal = _kernel.run(
        len(p.letters),
        _compiled_relations(p),
        caps.max_classes,
        caps.max_steps,
        watch,
    )
    if status == _kernel.STATUS_WATCH_MERGED:
        return True
    if status == _kernel.STATUS_CAPPED:
        raise IndeterminateError(
            f"capped at {caps.max_classes} classes before deciding "
            f"{rel.lhs} = {rel.rhs}"
        )
    return watch_equal


@dataclasses.dataclass(frozen=True)
class PresentationVerdict:
    verdict: Verdict
    class_count: "int | None"
    monoid_size: int
    failing_tags: "tuple[str, ...]"


def verify_presentation(
    p: Presentation,
    a: Assignment,
    m: FiniteMonoid,
    caps: "EnumerationCaps | None" = None,
) -> PresentationVerdict:
    """Decide whether p presents m via the assignment a.

    The assignment images must generate m (checked, error otherwise).
    Relations holding gives a surjection from the presented monoid
    onto m, so the class count is always at least m.size; equality
    pins the isomorphism.
    """
    images = [a.image(name) for name in p.letter_names]
    if not verify_generates(m, images):
        raise ValueError("assignment images do not generate the monoid")
    report = check_relations_hold(p, a)
    if not report.all_hold:
        return PresentationVerdict(
            Verdict.FAIL, None, m.size, tuple(r.tag for r in report.failing)
        )
    result = enumerate_congruence(p, caps)
    if not result.is_complete:
        return PresentationVerdict(Verdict.INDETERMINATE, None, m.size, ())
    if result.class_count < m.size:
        raise RuntimeError(
            f"class count {result.class_count} below monoid size {m.size}: "
            "enumeration soundness violated"
        )
    verdict = Verdict.PASS if result.class_count == m.size else Verdict.FAIL
    return PresentationVerdict(verdict, result.class_count, m.size, ())


@dataclasses.dataclass(frozen=True)
class FormsVerdict:
    verdict: Verdict
    forms_count: int
    class_count: "int | None"
    monoid_size: int
    problems: "tuple[str, ...]"


def verify_forms_set(
    p: Presentation,
    forms: FormsSet,
    a: Assignment,
    m: FiniteMonoid,
    caps: "EnumerationCaps | None" = None,
) -> FormsVerdict:
    """Check that forms is a transversal of p's classes matching m.

    PASS means: the forms fall in pairwise distinct classes, cover
    every class, number exactly m.size, and evaluate bijectively onto
    m's elements.
    """
    result = enumerate_congruence(p, caps)
    if not result.is_complete:
        return FormsVerdict(
            Verdict.INDETERMINATE, len(forms.words), None, m.size, ()
        )
    problems = []
    classes = [result.word_class(w) for w in forms.words]
    if len(set(classes)) != len(classes):
        problems.append("two forms share a class")
    if set(classes) != set(range(result.class_count)):
        problems.append("forms do not cover every class")
    if len(forms.words) != m.size:
        problems.append(
            f"{len(forms.words)} forms against monoid size {m.size}"
        )
    images = [evaluate(w, a) for w in forms.words]
    if len(set(images)) != len(images):
        problems.append("two forms evaluate to one element")
    if set(images) != set(m.elements):
        problems.append("form images are not the monoid's elements")
    verdict = Verdict.PASS if not problems else Verdict.FAIL
    return FormsVerdict(
        verdict, len(forms.words), result.class_count, m.size, tuple(problems)
    )


def normal_forms(r: EnumerationResult, alphabet) -> FormsSet:
    """Shortlex-least representative of every class, indexed by class.

    Breadth-first over the completed table: the first word reaching a
    class, generating letters in alphabet order, is its shortlex-least
    representative (least representatives are prefix-closed).
    """
    if not r.is_complete:
        raise IndeterminateError("enumeration was capped")
    names = tuple(
        letter.name if hasattr(letter, "name") else letter for letter in alphabet
    )
    if names != r.letters:
        raise ValueError(f"alphabet {names} does not match enumeration letters")
    reps: "list[tuple[str, ...] | None]" = [None] * r.class_count
    reps[0] = ()
    queue = [0]
    head = 0
    while head < len(queue):
        c = queue[head]
        head += 1
        for k in range(len(names)):
            t = r.table[c][k]
            name = names[k]
            if reps[t] is None:
                reps[t] = reps[c] + (name,)
                queue.append(t)
    return FormsSet(label="shortlex", letters=names, words=tuple(reps))


# the operation is called enumerate; the module-internal name avoids
# shadowing the builtin
enumerate_classes = enumerate_congruence
enumerate = enumerate_congruence

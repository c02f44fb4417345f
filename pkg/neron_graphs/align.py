"""
Alignment and strict alignment of labelled graphs.

A graph is aligned when, on every cycle, all labels are positive powers of
one element; strictly aligned when that element can be taken prime. The
Néron model of the Jacobian of a nodal curve is separated exactly when the
curve is strictly aligned at every point, so :func:`neron_separated_verdict`
is the strict check phrased as a verdict.

Two elements are powers of a common element iff their primitive roots
agree, which turns the existential search over candidate bases into one
root comparison per label.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import islice
from typing import List, Optional, Tuple

from .events import event_bus
from .graph import DEFAULT_CYCLE_CAP, Cycle, LabelledGraph, cycles, iter_cycles
from .monoid import MonoidElement, is_prime, primitive_root


@dataclass(frozen=True)
class CycleWitness:
    """
    Certificate for a single cycle.

    :param cycle: The inspected cycle.
    :type cycle: :class:`~neron_graphs.graph.Cycle`
    :param root: Common primitive root of the labels, ``None`` if they have none.
    :type root: :class:`~neron_graphs.monoid.MonoidElement` or ``None``
    :param prime: The common prime when the root is prime.
    :type prime: :class:`str` or ``None``
    :param counterexample: Labels refuting alignment (two labels with
        different roots) or strictness (a label whose root is not prime).
    :type counterexample: :class:`tuple` of :class:`~neron_graphs.monoid.MonoidElement`
    """

    cycle: Cycle
    root: Optional[MonoidElement]
    prime: Optional[str] = None
    counterexample: Tuple[MonoidElement, ...] = ()

    @property
    def aligned(self) -> bool:
        return self.root is not None

    @property
    def strict(self) -> bool:
        return self.prime is not None


@dataclass(frozen=True)
class AlignmentReport:
    """
    Alignment verdicts of a graph with per-cycle certificates.

    :ivar aligned: Every inspected cycle is aligned.
    :ivar strictly_aligned: Every inspected cycle is strictly aligned.
    :ivar witnesses: One :class:`CycleWitness` per inspected cycle, in
        canonical cycle order.
    :ivar cycles_inspected: Number of cycles inspected.
    :ivar capped: Inspection stopped at the cycle budget, the verdicts
        only cover the inspected cycles.
    """

    aligned: bool
    strictly_aligned: bool
    witnesses: Tuple[CycleWitness, ...]
    cycles_inspected: int
    capped: bool = False

    @property
    def separated(self) -> bool:
        return self.strictly_aligned

    @property
    def counterexample(self) -> Optional[CycleWitness]:
        """First cycle refuting alignment, else first refuting strictness."""
        failing = [w for w in self.witnesses if not w.aligned]
        failing = failing or [w for w in self.witnesses if not w.strict]
        return failing[0] if failing else None

    @property
    def summary(self) -> str:
        answer = "yes" if self.separated else "no"
        return f"Néron model of the Jacobian separated: {answer} at this point"


def inspect_cycle(g: LabelledGraph, cycle: Cycle) -> CycleWitness:
    """Compare the primitive roots of the labels along ``cycle``."""
    labels = [g.edge(i).label for i in cycle.edges]
    roots = [primitive_root(label)[0] for label in labels]
    base = roots[0]

    for label, root in zip(labels, roots):
        if root != base:
            return CycleWitness(cycle, None, counterexample=(labels[0], label))

    if is_prime(base):
        return CycleWitness(cycle, base, prime=base.support()[0])

    return CycleWitness(cycle, base, counterexample=(labels[0],))


def alignment_report(
    g: LabelledGraph,
    cap: int = DEFAULT_CYCLE_CAP,
    allow_partial: bool = False,
) -> AlignmentReport:
    """
    Inspect every cycle of ``g`` and report both alignment verdicts.

    :param g: A valid graph.
    :param cap: Cycle budget.
    :param allow_partial: When the budget is exceeded, report on the first
        ``cap`` cycles with ``capped=True`` instead of raising.
    :raises CycleBudgetExceeded: If ``g`` has more than ``cap`` cycles and
        ``allow_partial`` is false.

    .. note::
       Emits ``"align.counterexample"`` for every failing cycle.
    """
    capped = False

    if allow_partial:
        found: List[Cycle] = list(islice(iter_cycles(g), cap + 1))
        capped = len(found) > cap
        found = sorted(found[:cap], key=lambda c: c.edges)
    else:
        found = cycles(g, cap)

    witnesses = tuple(inspect_cycle(g, c) for c in found)

    for w in witnesses:
        if not w.strict:
            event_bus.emit("align.counterexample", w)

    return AlignmentReport(
        aligned=all(w.aligned for w in witnesses),
        strictly_aligned=all(w.strict for w in witnesses),
        witnesses=witnesses,
        cycles_inspected=len(witnesses),
        capped=capped,
    )


def is_aligned(g: LabelledGraph, cap: int = DEFAULT_CYCLE_CAP) -> AlignmentReport:
    """
    Alignment check; read the verdict from ``report.aligned``.

    :raises CycleBudgetExceeded: If ``g`` has more than ``cap`` cycles.
    """
    return alignment_report(g, cap)


def is_strictly_aligned(g: LabelledGraph, cap: int = DEFAULT_CYCLE_CAP) -> AlignmentReport:
    """
    Strict alignment check; read the verdict from ``report.strictly_aligned``.

    A loop is a cycle of length one, so its label must be a prime power.

    :raises CycleBudgetExceeded: If ``g`` has more than ``cap`` cycles.
    """
    return alignment_report(g, cap)


def neron_separated_verdict(
    g: LabelledGraph, cap: int = DEFAULT_CYCLE_CAP
) -> Tuple[bool, AlignmentReport]:
    """
    Decide whether the Néron model of the Jacobian is separated at the
    point whose dual graph is ``g``.

    :returns: The verdict and the report backing it; ``report.summary``
        phrases the outcome.
    :raises CycleBudgetExceeded: If ``g`` has more than ``cap`` cycles.
    """
    report = is_strictly_aligned(g, cap)
    return report.separated, report

"""
Labelled dual graphs of nodal curves.

Refinement, alignment and the separatedness criterion for Néron models of
Jacobians, on the combinatorial side: graphs whose edges carry elements of
a free commutative monoid.
"""

from .align import (
    AlignmentReport,
    CycleWitness,
    alignment_report,
    is_aligned,
    is_strictly_aligned,
    neron_separated_verdict,
)
from .family import (
    Correspondence,
    Cover,
    GraphFamily,
    family_verdict,
    specialize,
    transport_basic_refinement,
    validate_family,
)
from .graph import (
    DEFAULT_CYCLE_CAP,
    Cycle,
    Edge,
    LabelledGraph,
    ValidationReport,
    classify_edges,
    contract,
    cycles,
    total_complexity,
    validate,
)
from .monoid import MonoidElement, MonoidHom, PrimeAlphabet, parse
from .refine import (
    BasicRefinementSpec,
    RefinementWitness,
    basic_refinement,
    resolve,
    verify_refinement,
)

__version__ = "0.1.0-alpha"

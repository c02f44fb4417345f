"""
Encoding of package values into the JSON interchange format.

The encoders return plain ``dict``/``list`` structures shaped like the
TypedDicts in :mod:`neron_graphs.dtypes`; :func:`dumps` renders them in the
one normal form (two-space indent, keys in contract order, maps sorted by
id, trailing newline) so that decoding and re-encoding is byte-identical.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from ..align import AlignmentReport
from ..dtypes import (
    CorrespondenceDict,
    CoverDict,
    CounterexampleDict,
    EdgeDict,
    ExponentDict,
    FamilyDict,
    GraphDict,
    HomDict,
    ReportDict,
    SpecDict,
    WitnessDict,
)
from ..family import Correspondence, GraphFamily
from ..graph import LabelledGraph
from ..monoid import MonoidElement, MonoidHom
from ..refine import BasicRefinementSpec, RefinementWitness


def element_to_dict(m: MonoidElement) -> ExponentDict:
    return m.exponents


def graph_to_dict(g: LabelledGraph) -> GraphDict:
    return GraphDict(
        alphabet=list(g.alphabet),
        vertices=list(g.vertices),
        edges=[
            EdgeDict(id=e.id, ends=list(e.ends), label=element_to_dict(e.label))
            for e in g.edges
        ],
    )


def witness_to_dict(w: RefinementWitness) -> WitnessDict:
    return WitnessDict(
        edgeMap={k: w.edge_map[k] for k in sorted(w.edge_map)},
        vertexMap={k: {w.vertex_map[k][0]: w.vertex_map[k][1]} for k in sorted(w.vertex_map)},
    )


def spec_to_dict(spec: BasicRefinementSpec) -> SpecDict:
    return {"edge": spec.edge, "from": spec.oriented_from, "type": element_to_dict(spec.type)}


def specs_to_list(specs: List[BasicRefinementSpec]) -> List[SpecDict]:
    return [spec_to_dict(s) for s in specs]


def images_to_dict(h: MonoidHom) -> Dict[str, ExponentDict]:
    return {sym: element_to_dict(img) for sym, img in zip(h.source, h.images)}


def hom_to_dict(h: MonoidHom) -> HomDict:
    return HomDict(source=list(h.source), target=list(h.target), image=images_to_dict(h))


def correspondence_to_dict(c: Correspondence) -> CorrespondenceDict:
    return CorrespondenceDict(
        vertices={k: c.vertices[k] for k in sorted(c.vertices)},
        edges={k: c.edges[k] for k in sorted(c.edges)},
    )


def family_to_dict(F: GraphFamily) -> FamilyDict:
    """
    Encode a family; correspondences are written inline on their cover.
    """
    covers: List[CoverDict] = []

    for c in F.covers:
        entry: CoverDict = {"from": c.source, "to": c.target, "hom": images_to_dict(c.hom)}

        if c.correspondence is not None:
            entry["correspondence"] = correspondence_to_dict(c.correspondence)

        covers.append(entry)

    doc = FamilyDict(
        points=list(F.points),
        covers=covers,
        graphs={p: graph_to_dict(F.graphs[p]) for p in sorted(F.graphs)},
    )

    if F.commuting:
        doc["commuting"] = [[list(left), list(right)] for left, right in F.commuting]

    return doc


def report_to_dict(report: AlignmentReport) -> ReportDict:
    """
    Encode a report; the counterexample is the first cycle refuting
    alignment, else the first refuting strict alignment.
    """
    w = report.counterexample
    counterexample: Optional[CounterexampleDict] = None

    if w is not None:
        counterexample = CounterexampleDict(
            cycle=list(w.cycle.edges),
            labels=[element_to_dict(m) for m in w.counterexample],
        )

    return ReportDict(
        aligned=report.aligned,
        strictly_aligned=report.strictly_aligned,
        separated=report.separated,
        counterexample=counterexample,
        cycles_inspected=report.cycles_inspected,
        capped=report.capped,
    )


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


class JSONStorage:
    """
    Collect command output and write it out at the end.

    :param file: Output path; ``None`` writes to standard output. Parent
        folders are created as needed.
    :type file: :class:`pathlib.Path` | :class:`str` | None
    """

    def __init__(self, file: Optional[Path | str] = None) -> None:
        if isinstance(file, str):
            file = Path(file)

        self.file = file.expanduser().resolve() if file else None
        self.data: List[str] = []

    def on_result(self, payload: Any) -> None:
        """Queue a JSON document, or raw text such as DOT, for output."""
        self.data.append(payload if isinstance(payload, str) else dumps(payload))

    def save(self) -> None:
        if not self.data:
            return

        text = "".join(self.data)

        if self.file is None:
            sys.stdout.write(text)
            return

        if not self.file.parent.exists():
            self.file.parent.mkdir(parents=True)

        self.file.write_text(text, encoding="utf-8")

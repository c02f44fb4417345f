from typing import Dict, List, Literal, Optional, TypedDict

ExponentDict = Dict[str, int]
"""JSON form of a monoid element: symbol to positive exponent.

The identity element is the empty object ``{}``.
"""

VertexTag = Literal["vertex", "edge"]
"""Tag of a refinement vertex image.

- ``"vertex"`` — the fine vertex is the unique preimage of a coarse vertex
- ``"edge"`` — the fine vertex is an intermediate vertex of a coarse edge chain
"""

EdgeKind = Literal["disconnecting", "non-disconnecting"]
"""Classification of an edge (a node of the fibre).

- ``"disconnecting"`` — removing the edge disconnects the graph
- ``"non-disconnecting"`` — the edge lies on a cycle (loops included)
"""

OutputFormat = Literal["json", "dot"]
"""Output formats of the command line."""


class EdgeDict(TypedDict):
    """
    A single edge of a labelled graph.

    :key id: (str) Edge identifier, unique within the graph.
    :key ends: (List[str]) The two endpoints; a loop repeats its vertex.
    :key label: (ExponentDict) Non-identity monoid element.
    """

    id: str
    ends: List[str]
    label: ExponentDict


class GraphDict(TypedDict):
    """
    JSON form of a :class:`~neron_graphs.graph.LabelledGraph`.

    :key alphabet: (List[str]) Prime symbols in canonical order.
    :key vertices: (List[str]) Vertex identifiers.
    :key edges: (List[EdgeDict]) Edges with endpoints and labels.
    """

    alphabet: List[str]
    vertices: List[str]
    edges: List[EdgeDict]


class VertexImageDict(TypedDict, total=False):
    """
    Image of a fine vertex; exactly one of the keys is present.

    :key vertex: (str) Coarse vertex id.
    :key edge: (str) Coarse edge id.
    """

    vertex: str
    edge: str


class WitnessDict(TypedDict):
    """
    JSON form of a :class:`~neron_graphs.refine.RefinementWitness`.

    :key edgeMap: (Dict[str, str]) Fine edge id to coarse edge id.
    :key vertexMap: (Dict[str, VertexImageDict]) Fine vertex id to its image.
    """

    edgeMap: Dict[str, str]
    vertexMap: Dict[str, VertexImageDict]


SpecDict = TypedDict("SpecDict", {"edge": str, "from": str, "type": ExponentDict})
SpecDict.__doc__ = """
JSON form of a :class:`~neron_graphs.refine.BasicRefinementSpec`.

:key edge: (str) Edge to split.
:key from: (str) Endpoint fixing the orientation.
:key type: (ExponentDict) The type, a proper divisor of the edge label.
"""


class HomDict(TypedDict):
    """
    JSON form of a standalone :class:`~neron_graphs.monoid.MonoidHom`.

    :key source: (List[str]) Source alphabet.
    :key target: (List[str]) Target alphabet.
    :key image: (Dict[str, ExponentDict]) Image of every source prime.
    """

    source: List[str]
    target: List[str]
    image: Dict[str, ExponentDict]


class CorrespondenceDict(TypedDict):
    """
    Identification of a derived specialization with a stored graph.

    :key vertices: (Dict[str, str]) Derived vertex id to stored vertex id.
    :key edges: (Dict[str, str]) Derived edge id to stored edge id.
    """

    vertices: Dict[str, str]
    edges: Dict[str, str]


CoverDict = TypedDict(
    "CoverDict",
    {
        "from": str,
        "to": str,
        "hom": Dict[str, ExponentDict],
        "correspondence": CorrespondenceDict,
    },
    total=False,
)
CoverDict.__doc__ = """
A covering relation ``from ⤳ to`` of a graph family.

:key from: (str) The special point.
:key to: (str) Its generization.
:key hom: (Dict[str, ExponentDict]) Image of each prime of ``from``.
:key correspondence: (CorrespondenceDict) Optional inline correspondence.
"""


class FamilyDict(TypedDict, total=False):
    """
    JSON form of a :class:`~neron_graphs.family.GraphFamily`.

    :key points: (List[str]) Point identifiers.
    :key covers: (List[CoverDict]) Covering relations.
    :key graphs: (Dict[str, GraphDict]) Dual graph at every point.
    :key correspondences: (Dict[str, Dict[str, CorrespondenceDict]])
        Correspondences keyed by source point, then target point.
    :key commuting: (List[List[List[str]]]) Pairs of point chains declared
        to commute.
    """

    points: List[str]
    covers: List[CoverDict]
    graphs: Dict[str, GraphDict]
    correspondences: Dict[str, Dict[str, CorrespondenceDict]]
    commuting: List[List[List[str]]]


class CounterexampleDict(TypedDict):
    """
    A cycle violating (strict) alignment.

    :key cycle: (List[str]) Edge ids of the cycle in canonical order.
    :key labels: (List[ExponentDict]) The offending labels.
    """

    cycle: List[str]
    labels: List[ExponentDict]


class ReportDict(TypedDict):
    """
    JSON form of an :class:`~neron_graphs.align.AlignmentReport`.

    :key aligned: (bool) Every cycle's labels are powers of one element.
    :key strictly_aligned: (bool) That element can be chosen prime.
    :key separated: (bool) Verdict on the Néron model of the Jacobian.
    :key counterexample: (CounterexampleDict or None) First failing cycle.
    :key cycles_inspected: (int) Number of cycles examined.
    :key capped: (bool) Inspection stopped at the cycle budget.
    """

    aligned: bool
    strictly_aligned: bool
    separated: bool
    counterexample: Optional[CounterexampleDict]
    cycles_inspected: int
    capped: bool

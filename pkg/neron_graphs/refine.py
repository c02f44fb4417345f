"""
Refinements of labelled graphs.

Blowing a nodal curve up in a section through a node of thickness ``T*T'``
replaces the corresponding edge by a chain of two edges labelled ``T'`` and
``T``, where ``T`` is the type of the section relative to an orientation of
the node. Iterating such basic refinements brings every label down to a
prime; a :class:`RefinementWitness` records how the fine graph maps onto the
coarse one and :func:`verify_refinement` checks it independently.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import reduce
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from .dtypes import VertexTag
from .errors import (
    CompositionError,
    InvalidOrientationError,
    InvalidTypeError,
)
from .events import event_bus
from .graph import (
    Edge,
    LabelledGraph,
    ValidationReport,
    classify_edges,
)
from .monoid import MonoidElement, divides, is_prime, mul

VertexImage = Tuple[VertexTag, str]


@dataclass(frozen=True)
class BasicRefinementSpec:
    """
    Where and how to split a single edge.

    :param edge: Id of the edge to split.
    :type edge: :class:`str`
    :param oriented_from: Endpoint ``C`` of the orientation ``(C, D)``.
        For a loop it is the unique endpoint.
    :type oriented_from: :class:`str`
    :param type: The type ``T``, a proper divisor of the edge label.
    :type type: :class:`~neron_graphs.monoid.MonoidElement`
    """

    edge: str
    oriented_from: str
    type: MonoidElement


@dataclass(frozen=True)
class RefinementWitness:
    """
    The maps ``E' -> E`` and ``V' -> E ⊔ V`` certifying a refinement.

    :param edge_map: Fine edge id to coarse edge id.
    :type edge_map: :class:`dict`
    :param vertex_map: Fine vertex id to ``("vertex", id)`` or ``("edge", id)``.
    :type vertex_map: :class:`dict`
    """

    edge_map: Mapping[str, str]
    vertex_map: Mapping[str, VertexImage]


@dataclass(frozen=True)
class RefinementReport(ValidationReport):
    """
    Outcome of :func:`verify_refinement`.

    :ivar strict: ``E' -> E`` is not bijective.
    :ivar subdivided: Coarse edges whose chain has two or more edges.
    :ivar only_disconnecting: Every subdivided edge is disconnecting, i.e.
        the refinement is an isomorphism above every non-disconnecting node.
    """

    strict: bool = False
    subdivided: Tuple[str, ...] = ()
    only_disconnecting: bool = True


def identity_witness(g: LabelledGraph) -> RefinementWitness:
    """The witness of the trivial refinement ``g ⪯ g``."""
    return RefinementWitness(
        edge_map={e.id: e.id for e in g.edges},
        vertex_map={v: ("vertex", v) for v in g.vertices},
    )


def split_ids(g: LabelledGraph, edge_id: str) -> Tuple[str, str, str]:
    """
    Fresh ``(vertex, near edge, far edge)`` ids a split of ``edge_id`` uses.

    ``k`` is the least counter whose three ids are all unused in ``g``.
    """
    vertices = set(g.vertices)
    k = 1

    while True:
        mid, near, far = f"{edge_id}.x{k}", f"{edge_id}.{2 * k - 1}", f"{edge_id}.{2 * k}"

        if mid not in vertices and not g.has_edge(near) and not g.has_edge(far):
            return mid, near, far
        k += 1


def basic_refinement(
    g: LabelledGraph, spec: BasicRefinementSpec
) -> Tuple[LabelledGraph, RefinementWitness]:
    """
    Split one edge along a type.

    The edge ``e`` with label ``T*T'`` and orientation ``(C, D)``,
    ``C = spec.oriented_from``, becomes the chain ``C —T'— E —T— D`` through
    a fresh vertex ``E``. A loop at ``L`` becomes the 2-cycle
    ``L —T'— E —T— L``. New ids are ``<e>.x<k>`` for the vertex and
    ``<e>.<2k-1>`` (next to ``C``), ``<e>.<2k>`` (next to ``D``) for the
    edges.

    :param g: The coarse graph.
    :type g: :class:`~neron_graphs.graph.LabelledGraph`
    :param spec: Edge, orientation and type.
    :type spec: :class:`BasicRefinementSpec`
    :returns: The refined graph and its witness over ``g``.
    :raises MissingEdgeError: If the edge is not in ``g``.
    :raises InvalidOrientationError: If ``oriented_from`` is not an endpoint.
    :raises InvalidTypeError: If the type is not a proper divisor of the label.

    .. note::
       Emits ``"refine.basic"`` with ``(spec, refined graph)``.
    """
    e = g.edge(spec.edge)

    if spec.oriented_from not in e.ends:
        raise InvalidOrientationError(
            f"{spec.oriented_from!r} is not an endpoint of edge {e.id!r}"
        )

    complement = divides(spec.type, e.label)

    if complement is None or complement.is_identity or spec.type.is_identity:
        raise InvalidTypeError(
            f"{spec.type} is not a type of edge {e.id!r} labelled {e.label}"
        )

    c = spec.oriented_from
    d = e.other_end(c)
    mid, near, far = split_ids(g, e.id)

    edges = [f for f in g.edges if f.id != e.id]
    edges.append(Edge(near, (c, mid), complement))
    edges.append(Edge(far, (mid, d), spec.type))

    fine = LabelledGraph(g.alphabet, g.vertices + (mid,), tuple(edges))

    edge_map = {f.id: f.id for f in g.edges if f.id != e.id}
    edge_map[near] = edge_map[far] = e.id

    vertex_map: Dict[str, VertexImage] = {v: ("vertex", v) for v in g.vertices}
    vertex_map[mid] = ("edge", e.id)

    event_bus.emit("refine.basic", spec, fine)

    return fine, RefinementWitness(edge_map, vertex_map)


def _walk_chain(
    edges: Sequence[Edge], inner: Set[str], src: str, dst: str
) -> Optional[List[Edge]]:
    """Order ``edges`` into a chain from ``src`` to ``dst`` through ``inner``."""
    if not edges:
        return None

    allowed = inner | {src, dst}

    if any(v not in allowed for e in edges for v in e.ends):
        return None

    remaining = {e.id: e for e in edges}
    chain: List[Edge] = []
    seen: Set[str] = set()
    current = src

    while remaining:
        step = [e for e in remaining.values() if current in e.ends]

        if not step or (current in inner and len(step) != 1):
            return None

        e = min(step, key=lambda f: f.id)
        del remaining[e.id]
        chain.append(e)
        current = e.other_end(current)

        if current in inner:
            if current in seen:
                return None
            seen.add(current)
        elif remaining:
            return None

    if current != dst or seen != inner:
        return None

    return chain


def verify_refinement(
    coarse: LabelledGraph, fine: LabelledGraph, w: RefinementWitness
) -> RefinementReport:
    """
    Check that ``w`` exhibits ``fine`` as a refinement of ``coarse``.

    1. Every coarse vertex has a unique preimage.
    2. The preimage of every coarse edge is a chain between the preimages of
       its endpoints, its intermediate vertices being exactly the fine
       vertices mapped to that edge.
    3. The labels along each chain multiply to the coarse label.

    :returns: A report; ``issues`` is empty iff ``fine ⪯ coarse`` via ``w``.
    :rtype: :class:`RefinementReport`
    """
    issues: List[str] = []

    if coarse.alphabet != fine.alphabet:
        issues.append("graphs are labelled over different alphabets")

    fine_edges = set(fine.edge_ids)
    fine_vertices = set(fine.vertices)
    coarse_vertices = set(coarse.vertices)

    for e in fine.edges:
        if e.id not in w.edge_map:
            issues.append(f"fine edge {e.id} has no image")
        elif not coarse.has_edge(w.edge_map[e.id]):
            issues.append(f"fine edge {e.id} maps to unknown edge {w.edge_map[e.id]}")

    for f in w.edge_map:
        if f not in fine_edges:
            issues.append(f"edge map mentions unknown fine edge {f}")

    preimages: Dict[str, List[str]] = defaultdict(list)
    fiber_vertices: Dict[str, Set[str]] = defaultdict(set)

    for v in fine.vertices:
        if v not in w.vertex_map:
            issues.append(f"fine vertex {v} has no image")
            continue

        tag, target = w.vertex_map[v]

        if tag == "vertex" and target in coarse_vertices:
            preimages[target].append(v)
        elif tag == "edge" and coarse.has_edge(target):
            fiber_vertices[target].add(v)
        else:
            issues.append(f"fine vertex {v} maps to unknown {tag} {target}")

    for v in w.vertex_map:
        if v not in fine_vertices:
            issues.append(f"vertex map mentions unknown fine vertex {v}")

    for v in coarse.vertices:
        if len(preimages[v]) != 1:
            issues.append(f"vertex {v} has {len(preimages[v])} preimages")

    for ce in coarse.edges:
        for v in ce.ends:
            if v not in coarse_vertices:
                issues.append(f"coarse edge {ce.id}: unknown endpoint {v!r}")

    if issues:
        return RefinementReport(tuple(issues))

    fibers: Dict[str, List[Edge]] = defaultdict(list)

    for e in fine.edges:
        fibers[w.edge_map[e.id]].append(e)

    subdivided: List[str] = []

    for ce in coarse.edges:
        src, dst = preimages[ce.ends[0]][0], preimages[ce.ends[1]][0]
        chain = _walk_chain(fibers[ce.id], fiber_vertices[ce.id], src, dst)

        if chain is None:
            issues.append(f"edge {ce.id}: preimage is not a chain from {src} to {dst}")
            continue

        if len(chain) > 1:
            subdivided.append(ce.id)

        if reduce(mul, (e.label for e in chain)) != ce.label:
            issues.append(f"edge {ce.id}: label product mismatch")

    kinds = classify_edges(coarse)

    return RefinementReport(
        issues=tuple(issues),
        strict=len(fine.edges) != len(coarse.edges),
        subdivided=tuple(subdivided),
        only_disconnecting=all(kinds[e] == "disconnecting" for e in subdivided),
    )


def compose_witnesses(
    outer: RefinementWitness, inner: RefinementWitness
) -> RefinementWitness:
    """
    Compose ``inner`` (``g'' ⪯ g'``) with ``outer`` (``g' ⪯ g``).

    A fine vertex sent to an intermediate edge follows the edge map of
    ``outer``; one sent to an intermediate vertex follows its vertex map.

    :raises CompositionError: If the intermediate graphs do not match.
    """
    edge_targets = set(inner.edge_map.values())
    vertex_targets = {t for tag, t in inner.vertex_map.values() if tag == "vertex"}

    if edge_targets != set(outer.edge_map):
        raise CompositionError("inner edge images do not match the outer edge map")

    if not vertex_targets <= set(outer.vertex_map):
        raise CompositionError("inner vertex images do not match the outer vertex map")

    edge_map = {f: outer.edge_map[m] for f, m in inner.edge_map.items()}
    vertex_map: Dict[str, VertexImage] = {}

    for v, (tag, target) in inner.vertex_map.items():
        if tag == "edge":
            if target not in outer.edge_map:
                raise CompositionError(f"vertex {v} maps to unknown intermediate edge {target}")
            vertex_map[v] = ("edge", outer.edge_map[target])
        else:
            vertex_map[v] = outer.vertex_map[target]

    return RefinementWitness(edge_map, vertex_map)


def replay(
    g: LabelledGraph, specs: Iterable[BasicRefinementSpec]
) -> Tuple[LabelledGraph, RefinementWitness]:
    """Apply basic refinements in order, composing their witnesses."""
    witness = identity_witness(g)

    for spec in specs:
        g, step = basic_refinement(g, spec)
        witness = compose_witnesses(witness, step)

    return g, witness


def resolve(
    g: LabelledGraph,
) -> Tuple[LabelledGraph, RefinementWitness, List[BasicRefinementSpec]]:
    """
    Refine ``g`` until every label is prime.

    Strategy: take the non-prime edge with the least id, split off its
    alphabet-least prime factor as the type, oriented from the least
    endpoint. Each step lowers the arithmetic complexity by one, so there
    are exactly ``total_complexity(g)`` steps.

    :returns: The resolved graph, its witness over ``g`` and the steps.

    .. note::
       Emits ``"refine.resolved"`` with ``(resolved graph, step count)``.
    """
    specs: List[BasicRefinementSpec] = []
    witness = identity_witness(g)

    while True:
        target = next((e for e in g.edges if not is_prime(e.label)), None)

        if target is None:
            break

        prime = MonoidElement.prime(g.alphabet, target.label.support()[0])
        spec = BasicRefinementSpec(target.id, min(target.ends), prime)

        g, step = basic_refinement(g, spec)
        witness = compose_witnesses(witness, step)
        specs.append(spec)

    event_bus.emit("refine.resolved", g, len(specs))

    return g, witness, specs


def same_refinement(
    g: LabelledGraph, a: BasicRefinementSpec, b: BasicRefinementSpec
) -> bool:
    """
    Whether two specs split the same edge the same way.

    ``(e, C, T)`` and ``(e, D, T')`` with ``T*T' = label(e)`` describe the
    same chain read from opposite ends. Both orientations of a loop
    coincide, so ``(e, L, T)`` and ``(e, L, T')`` agree too.

    :raises MissingEdgeError: If ``a.edge`` is not in ``g``.
    """
    if a.edge != b.edge:
        return False

    e = g.edge(a.edge)

    if a.type == b.type and (a.oriented_from == b.oriented_from or e.is_loop):
        return True

    if a.oriented_from != b.oriented_from or e.is_loop:
        return mul(a.type, b.type) == e.label

    return False

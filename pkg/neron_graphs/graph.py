"""
Connected labelled multigraphs: the dual graphs of nodal curves.

A vertex stands for an irreducible component of a fibre and an edge for a
node, labelled by its thickness. Parallel edges and loops are ordinary and
edges are told apart by explicit ids, never by their endpoints.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Tuple

import networkx as nx
from networkx.utils import UnionFind

from .dtypes import EdgeKind
from .errors import CycleBudgetExceeded, MissingEdgeError
from .monoid import MonoidElement, PrimeAlphabet, complexity, is_prime

DEFAULT_CYCLE_CAP = 1_000_000


@dataclass(frozen=True)
class Edge:
    """
    An edge of a :class:`LabelledGraph`.

    The endpoints form an unordered pair and are stored sorted, so two edges
    with the same id, endpoints and label compare equal whatever order the
    endpoints were given in.

    :param id: Edge identifier.
    :type id: :class:`str`
    :param ends: Endpoints; equal for a loop.
    :type ends: :class:`tuple` of :class:`str`
    :param label: Thickness of the node.
    :type label: :class:`~neron_graphs.monoid.MonoidElement`
    """

    id: str
    ends: Tuple[str, str]
    label: MonoidElement

    def __post_init__(self) -> None:
        object.__setattr__(self, "ends", tuple(sorted(self.ends)))

    @property
    def is_loop(self) -> bool:
        return self.ends[0] == self.ends[1]

    def other_end(self, vertex: str) -> str:
        a, b = self.ends
        return b if vertex == a else a


@dataclass(frozen=True)
class LabelledGraph:
    """
    A finite multigraph with loops whose edges carry monoid labels.

    Construction does not check the invariants (connectedness, non-unit
    labels, known endpoints); call :func:`validate` for a full report.
    Vertices are kept sorted and edges sorted by id, so equality is
    structural.

    :param alphabet: Prime alphabet of the labels.
    :type alphabet: :class:`~neron_graphs.monoid.PrimeAlphabet`
    :param vertices: Vertex ids.
    :type vertices: :class:`tuple` of :class:`str`
    :param edges: The edges.
    :type edges: :class:`tuple` of :class:`Edge`
    """

    alphabet: PrimeAlphabet
    vertices: Tuple[str, ...]
    edges: Tuple[Edge, ...] = field(default=())

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices)))
        object.__setattr__(self, "edges", tuple(sorted(self.edges, key=lambda e: e.id)))

    @cached_property
    def _edge_index(self) -> Dict[str, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def _incidence(self) -> Dict[str, List[Edge]]:
        incidence: Dict[str, List[Edge]] = defaultdict(list)

        for e in self.edges:
            incidence[e.ends[0]].append(e)

            if not e.is_loop:
                incidence[e.ends[1]].append(e)

        return incidence

    @property
    def edge_ids(self) -> Tuple[str, ...]:
        return tuple(e.id for e in self.edges)

    def has_edge(self, edge_id: str) -> bool:
        return edge_id in self._edge_index

    def edge(self, edge_id: str) -> Edge:
        """
        Look up an edge by id.

        :raises MissingEdgeError: If no such edge exists.
        """
        try:
            return self._edge_index[edge_id]
        except KeyError:
            raise MissingEdgeError(f"no edge {edge_id!r} in graph") from None

    def incident(self, vertex: str) -> List[Edge]:
        """Edges touching ``vertex``, loops listed once, in id order."""
        return self._incidence.get(vertex, [])

    def to_networkx(self, loops: bool = True) -> nx.MultiGraph:
        """
        The underlying :class:`networkx.MultiGraph`, edge keys are edge ids.

        :param loops: Include loop edges.
        """
        H = nx.MultiGraph()
        H.add_nodes_from(self.vertices)

        for e in self.edges:
            if loops or not e.is_loop:
                H.add_edge(*e.ends, key=e.id, label=e.label)

        return H


@dataclass(frozen=True)
class ValidationReport:
    """
    Outcome of a validation: an empty ``issues`` tuple means valid.

    :param issues: Human-readable descriptions of every violation.
    :type issues: :class:`tuple` of :class:`str`
    """

    issues: Tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.issues

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class Cycle:
    """
    A simple cycle, in canonical form.

    ``vertices[i]`` and ``vertices[i + 1]`` are the ends of ``edges[i]``;
    ``vertices[0] == vertices[-1]``. A loop is the cycle of length one.
    """

    edges: Tuple[str, ...]
    vertices: Tuple[str, ...]

    def __len__(self) -> int:
        return len(self.edges)


def validate(g: LabelledGraph) -> ValidationReport:
    """
    Check every invariant of a dual graph.

    :param g: The graph to check.
    :type g: :class:`LabelledGraph`
    :returns: All violations; empty when ``g`` is well formed.
    :rtype: :class:`ValidationReport`
    """
    issues: List[str] = []

    if not g.vertices:
        issues.append("graph has no vertices")

    for kind, ids in (("vertex", g.vertices), ("edge", [e.id for e in g.edges])):
        seen = set()

        for i in ids:
            if not isinstance(i, str) or not i:
                issues.append(f"{kind} id {i!r} is not a non-empty string")
            elif i in seen:
                issues.append(f"duplicate {kind} id {i!r}")
            seen.add(i)

    vertex_set = set(g.vertices)

    for e in g.edges:
        for v in e.ends:
            if v not in vertex_set:
                issues.append(f"edge {e.id}: unknown endpoint {v!r}")

        if e.label.alphabet != g.alphabet:
            issues.append(f"edge {e.id}: label over a different alphabet")
        elif e.label.is_identity:
            issues.append(f"edge {e.id}: label is a unit")

    if g.vertices and all(v in vertex_set for e in g.edges for v in e.ends):
        components = nx.number_connected_components(g.to_networkx())

        if components > 1:
            issues.append(f"disconnected: {components} components")

    return ValidationReport(tuple(issues))


def _canonical(edges: List[str], vertices: List[str]) -> Cycle:
    # edges[0] is the least id; keep the direction whose second edge is smaller
    if len(edges) > 2 and edges[-1] < edges[1]:
        edges = [edges[0]] + edges[:0:-1]
        vertices = [vertices[1], vertices[0]] + vertices[-2:1:-1] + [vertices[1]]

    return Cycle(tuple(edges), tuple(vertices))


def iter_cycles(g: LabelledGraph) -> Iterator[Cycle]:
    """
    Lazily enumerate every simple cycle of ``g`` once, in canonical form.

    Backtracking: for each edge ``f`` in id order, search the paths that
    close ``f`` into a cycle using only edges with larger ids, so each
    cycle is found from its least edge exactly once. Exponential in the
    worst case; callers bound the work with a cap.

    The search keeps one ``incident`` iterator per path vertex on an
    explicit stack, so path length is not limited by the recursion limit.
    """
    for first in g.edges:
        if first.is_loop:
            v = first.ends[0]
            yield Cycle((first.id,), (v, v))
            continue

        start, second = first.ends
        path_edges = [first.id]
        path_vertices = [start, second]
        visited = {start, second}
        stack: List[Iterator[Edge]] = [iter(g.incident(second))]

        while stack:
            e = next(stack[-1], None)

            if e is None:
                stack.pop()

                # the frame of ``second`` owns no path edge of its own
                if stack:
                    visited.discard(path_vertices.pop())
                    path_edges.pop()
                continue

            if e.is_loop or e.id <= first.id:
                continue

            w = e.other_end(path_vertices[-1])

            if w == start:
                yield _canonical(path_edges + [e.id], path_vertices + [start])
            elif w not in visited:
                visited.add(w)
                path_edges.append(e.id)
                path_vertices.append(w)
                stack.append(iter(g.incident(w)))


def cycles(g: LabelledGraph, cap: int = DEFAULT_CYCLE_CAP) -> List[Cycle]:
    """
    All simple cycles of ``g`` up to rotation and reversal.

    Each cycle is reported once, rotated to start at its least edge id and
    oriented so that the edge-id sequence is lexicographically least.
    The list is sorted by edge-id sequence.

    :param g: A valid graph.
    :param cap: Maximum number of cycles to enumerate.
    :raises CycleBudgetExceeded: If ``g`` has more than ``cap`` cycles.
    """
    found: List[Cycle] = []

    for c in iter_cycles(g):
        if len(found) >= cap:
            raise CycleBudgetExceeded(cap)
        found.append(c)

    found.sort(key=lambda c: c.edges)
    return found


def classify_edges(g: LabelledGraph) -> Dict[str, EdgeKind]:
    """
    Label every edge disconnecting (a bridge) or non-disconnecting.

    Loops and edges with a parallel twin are never bridges.
    """
    simple = nx.Graph()
    simple.add_nodes_from(g.vertices)
    multiplicity: Dict[frozenset, int] = defaultdict(int)

    for e in g.edges:
        if not e.is_loop:
            simple.add_edge(*e.ends)
            multiplicity[frozenset(e.ends)] += 1

    bridges = {frozenset(pair) for pair in nx.bridges(simple)}

    return {
        e.id: (
            "disconnecting"
            if not e.is_loop
            and frozenset(e.ends) in bridges
            and multiplicity[frozenset(e.ends)] == 1
            else "non-disconnecting"
        )
        for e in g.edges
    }


def total_complexity(g: LabelledGraph) -> int:
    """Sum of the arithmetic complexities of the edge labels."""
    return sum(complexity(e.label) for e in g.edges)


def betti_number(g: LabelledGraph) -> int:
    """First Betti number ``|E| - |V| + 1`` of a connected graph."""
    return len(g.edges) - len(g.vertices) + 1


def is_resolved(g: LabelledGraph) -> bool:
    """True when every label is prime (arithmetic complexity zero)."""
    return all(is_prime(e.label) for e in g.edges)


def contract(
    g: LabelledGraph, to_contract: Iterable[str]
) -> Tuple[LabelledGraph, Dict[str, str]]:
    """
    Contract a set of edges.

    The endpoints of each contracted edge are identified; a contracted loop
    just disappears. Each class of identified vertices is named after its
    lexicographically least member. Surviving edges keep their ids and
    labels.

    :param g: The graph.
    :param to_contract: Ids of the edges to contract.
    :returns: The contracted graph and the merge map (old vertex id to new).
    :raises MissingEdgeError: If an id is not an edge of ``g``.
    """
    removed = {g.edge(i).id for i in to_contract}

    classes = UnionFind(g.vertices)

    for i in removed:
        classes.union(*g.edge(i).ends)

    members: Dict[str, List[str]] = defaultdict(list)

    for v in g.vertices:
        members[classes[v]].append(v)

    merge = {v: min(members[classes[v]]) for v in g.vertices}

    edges = tuple(
        Edge(e.id, (merge[e.ends[0]], merge[e.ends[1]]), e.label)
        for e in g.edges
        if e.id not in removed
    )

    return LabelledGraph(g.alphabet, tuple(set(merge.values())), edges), merge

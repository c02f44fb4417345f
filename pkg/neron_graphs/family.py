"""
Families of dual graphs over a finite poset of points.

Moving from a point ``s`` to a generization ``ξ`` pushes every label
through the induced map of monoids of principal ideals and contracts the
edges whose label becomes a unit. A :class:`GraphFamily` stores the graph at
every point together with these maps, and checks that they fit.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field, replace
from typing import Dict, List, Mapping, Optional, Set, Tuple

import networkx as nx

from .align import AlignmentReport, neron_separated_verdict
from .errors import AlphabetError, FamilyError, TransportDirectionError
from .events import event_bus
from .graph import (
    DEFAULT_CYCLE_CAP,
    Edge,
    LabelledGraph,
    ValidationReport,
    contract,
    validate,
)
from .monoid import MonoidHom, apply_hom, compose
from .refine import BasicRefinementSpec, basic_refinement, same_refinement, split_ids


@dataclass(frozen=True)
class ContractionRecord:
    """
    What a specialization contracted.

    :param contracted: Ids of the contracted edges, sorted.
    :param merge: Old vertex id to new vertex id.
    """

    contracted: Tuple[str, ...]
    merge: Mapping[str, str]


@dataclass(frozen=True)
class Correspondence:
    """
    Identification of a derived specialization with the stored graph.

    :param vertices: Derived vertex id to stored vertex id.
    :param edges: Derived edge id to stored edge id.
    """

    vertices: Mapping[str, str]
    edges: Mapping[str, str]

    @classmethod
    def identity(cls, g: LabelledGraph) -> Correspondence:
        return cls({v: v for v in g.vertices}, {e.id: e.id for e in g.edges})


@dataclass(frozen=True)
class Cover:
    """
    A covering relation ``source ⤳ target``: ``target`` is a generization.

    :param source: The special point.
    :param target: The generization.
    :param hom: Map from the alphabet at ``source`` to the one at ``target``.
    :param correspondence: ``None`` means identity on ids.
    """

    source: str
    target: str
    hom: MonoidHom
    correspondence: Optional[Correspondence] = None


@dataclass(frozen=True)
class GraphFamily:
    """
    Dual graphs at finitely many points linked by specialization maps.

    :param points: Point ids.
    :param covers: Covering relations of the generization order.
    :param graphs: Graph at every point.
    :param commuting: Pairs of point chains with equal endpoints whose
        composed homomorphisms are declared equal.
    """

    points: Tuple[str, ...]
    covers: Tuple[Cover, ...]
    graphs: Mapping[str, LabelledGraph]
    commuting: Tuple[Tuple[Tuple[str, ...], Tuple[str, ...]], ...] = field(default=())

    def cover(self, source: str, target: str) -> Cover:
        for c in self.covers:
            if c.source == source and c.target == target:
                return c

        raise FamilyError(f"no covering relation {source} ⤳ {target}")

    def covers_from(self, point: str) -> List[Cover]:
        return [c for c in self.covers if c.source == point]

    def covers_into(self, point: str) -> List[Cover]:
        return [c for c in self.covers if c.target == point]

    def order(self) -> nx.DiGraph:
        """The covering relations as a :class:`networkx.DiGraph`."""
        D = nx.DiGraph()
        D.add_nodes_from(self.points)
        D.add_edges_from((c.source, c.target) for c in self.covers)
        return D


def specialize(
    g: LabelledGraph, h: MonoidHom
) -> Tuple[LabelledGraph, ContractionRecord]:
    """
    The dual graph at a generization.

    Labels are pushed through ``h``; edges whose image is the identity are
    contracted, the others keep their ids.

    :raises AlphabetError: If ``g`` is not labelled over ``h.source``.
    """
    if g.alphabet != h.source:
        raise AlphabetError(
            f"graph alphabet {list(g.alphabet)} is not the source {list(h.source)}"
        )

    pushed = tuple(Edge(e.id, e.ends, apply_hom(h, e.label)) for e in g.edges)
    killed = sorted(e.id for e in pushed if e.label.is_identity)

    contracted, merge = contract(LabelledGraph(h.target, g.vertices, pushed), killed)

    return contracted, ContractionRecord(tuple(killed), merge)


def correspondence(F: GraphFamily, c: Cover) -> Correspondence:
    """The stored correspondence of ``c``, identity on ids when absent."""
    if c.correspondence is not None:
        return c.correspondence

    derived, _ = specialize(F.graphs[c.source], c.hom)
    return Correspondence.identity(derived)


def _mismatch(derived: LabelledGraph, stored: LabelledGraph, corr: Correspondence) -> Optional[str]:
    if set(corr.vertices) != set(derived.vertices):
        return "vertex correspondence does not cover the derived vertices"

    if sorted(corr.vertices.values()) != list(stored.vertices):
        return "vertex correspondence is not onto the stored vertices"

    if set(corr.edges) != set(derived.edge_ids):
        return "edge correspondence does not cover the derived edges"

    if sorted(corr.edges.values()) != sorted(stored.edge_ids):
        return "edge correspondence is not onto the stored edges"

    for d in derived.edges:
        s = stored.edge(corr.edges[d.id])

        if tuple(sorted(corr.vertices[v] for v in d.ends)) != s.ends:
            return f"edge {d.id} has endpoints {list(d.ends)} but {s.id} has {list(s.ends)}"

        if d.label != s.label:
            return f"edge {d.id} specializes to {d.label} but {s.id} is labelled {s.label}"

    return None


def _composite(F: GraphFamily, chain: Tuple[str, ...]) -> MonoidHom:
    h = MonoidHom.identity(F.graphs[chain[0]].alphabet)

    for a, b in zip(chain, chain[1:]):
        h = compose(F.cover(a, b).hom, h)

    return h


def validate_family(F: GraphFamily) -> ValidationReport:
    """
    Check a family for consistency.

    - every point has a valid graph and every cover joins known points;
    - the covering relations generate an acyclic order;
    - the graph stored at each generization is the specialization of the
      graph at the special point, through the stored correspondence;
    - every declared commuting pair of chains composes to equal maps.

    :returns: All violations; empty when the family is consistent.
    :rtype: :class:`~neron_graphs.graph.ValidationReport`
    """
    issues: List[str] = []
    points = set(F.points)

    if len(points) != len(F.points):
        issues.append("duplicate point ids")

    broken: Set[str] = set()

    for p in F.points:
        if p not in F.graphs:
            issues.append(f"point {p}: no graph")
        else:
            found = validate(F.graphs[p]).issues
            issues.extend(f"point {p}: {issue}" for issue in found)

            if found:
                broken.add(p)

    for p in F.graphs:
        if p not in points:
            issues.append(f"graph given for unknown point {p}")

    usable: List[Cover] = []

    for c in F.covers:
        if c.source not in F.graphs or c.target not in F.graphs:
            issues.append(f"cover ({c.source},{c.target}) joins unknown points")
        elif c.source == c.target:
            issues.append(f"cover ({c.source},{c.target}) is a self-loop")
        elif c.source in broken or c.target in broken:
            # already reported per point; specialize needs valid graphs
            continue
        elif c.hom.source != F.graphs[c.source].alphabet:
            issues.append(f"cover ({c.source},{c.target}): hom source is not the alphabet at {c.source}")
        elif c.hom.target != F.graphs[c.target].alphabet:
            issues.append(f"cover ({c.source},{c.target}): hom target is not the alphabet at {c.target}")
        else:
            usable.append(c)

    if not nx.is_directed_acyclic_graph(F.order()):
        issues.append("covering relations contain a cycle")

    for c in usable:
        derived, _ = specialize(F.graphs[c.source], c.hom)
        problem = _mismatch(derived, F.graphs[c.target], correspondence(F, c))

        if problem:
            issues.append(f"specialization mismatch at ({c.source},{c.target}): {problem}")

    for left, right in F.commuting:
        if left[0] != right[0] or left[-1] != right[-1]:
            issues.append(f"commuting chains {list(left)} and {list(right)} have different endpoints")
            continue

        try:
            a, b = _composite(F, left), _composite(F, right)
        except FamilyError as e:
            issues.append(f"commuting chains {list(left)} and {list(right)}: {e}")
            continue

        for sym in a.source:
            if a.image(sym) != b.image(sym):
                issues.append(
                    f"commuting chains {list(left)} and {list(right)} disagree on {sym}: "
                    f"{a.image(sym)} vs {b.image(sym)}"
                )

    return ValidationReport(tuple(issues))


def reachable(F: GraphFamily, point: str) -> Set[str]:
    """Generizations of ``point`` reachable through covering relations."""
    return nx.descendants(F.order(), point)


def _push(F: GraphFamily, c: Cover, spec: Optional[BasicRefinementSpec]) -> Optional[BasicRefinementSpec]:
    """The refinement ``spec`` at ``c.source`` induces at ``c.target``, if any."""
    if spec is None:
        return None

    g = F.graphs[c.source]
    label = apply_hom(c.hom, g.edge(spec.edge).label)
    t = apply_hom(c.hom, spec.type)

    # contracted edge, or the section meets a smooth point
    if label.is_identity or t.is_identity or t == label:
        return None

    _, record = specialize(g, c.hom)
    corr = correspondence(F, c)

    return BasicRefinementSpec(
        corr.edges[spec.edge], corr.vertices[record.merge[spec.oriented_from]], t
    )


def _plan(F: GraphFamily, point: str, spec: BasicRefinementSpec) -> Dict[str, Optional[BasicRefinementSpec]]:
    for c in F.covers_into(point):
        if spec.edge in correspondence(F, c).edges.values():
            raise TransportDirectionError(
                f"edge {spec.edge} at {point} comes from {c.source}; refine there instead"
            )

    order = F.order()
    later = nx.descendants(order, point)
    plan: Dict[str, Optional[BasicRefinementSpec]] = {point: spec}

    for q in nx.topological_sort(order.subgraph(later | {point})):
        if q == point:
            continue

        pushed = [(c, _push(F, c, plan[c.source])) for c in F.covers_into(q) if c.source in plan]
        first = pushed[0][1]

        for c, other in pushed[1:]:
            agree = (first is None and other is None) or (
                first is not None
                and other is not None
                and same_refinement(F.graphs[q], first, other)
            )

            if not agree:
                raise FamilyError(f"refinement reaches {q} inconsistently through {c.source}")

        if first is not None:
            outside = [c.source for c in F.covers_into(q) if c.source not in plan]

            if outside:
                raise TransportDirectionError(
                    f"refinement reaches {q} but not its specializations {outside}"
                )

        plan[q] = first

    return plan


def transport_basic_refinement(
    F: GraphFamily, point: str, spec: BasicRefinementSpec
) -> GraphFamily:
    """
    Apply a basic refinement at ``point`` and carry it to every generization.

    At a generization ``ξ`` let ``m`` be the image of the edge label and
    ``T`` the image of the type. If ``m`` is the identity the edge was
    contracted; if ``T`` is ``1`` or ``m`` the section passes through a
    smooth point. In both cases the graph at ``ξ`` is unchanged. Otherwise
    the basic ``T``-refinement of the corresponding edge is applied there.
    Correspondences are rebuilt for every cover leaving a refined point.

    :returns: A new family; ``F`` is untouched.
    :raises FamilyError: If ``point`` has no graph.
    :raises MissingEdgeError: If the edge is not at ``point``.
    :raises InvalidTypeError: If the type is not a type of the edge.
    :raises TransportDirectionError: If the edge comes from a
        specialization of ``point``.

    .. note::
       Emits ``"family.transport"`` with ``(point id, spec or None)`` for
       ``point`` and each generization reached.
    """
    if point not in F.graphs:
        raise FamilyError(f"no graph at point {point!r}")

    graphs = dict(F.graphs)
    ids: Dict[str, Tuple[str, str, str]] = {point: split_ids(F.graphs[point], spec.edge)}
    graphs[point], _ = basic_refinement(F.graphs[point], spec)

    plan = _plan(F, point, spec)

    for q, sp in plan.items():
        if sp is not None and q != point:
            ids[q] = split_ids(F.graphs[q], sp.edge)
            graphs[q], _ = basic_refinement(F.graphs[q], sp)

        event_bus.emit("family.transport", q, sp)

    covers = [
        _recorrespond(F, graphs, plan, ids, c) if plan.get(c.source) is not None else c
        for c in F.covers
    ]

    return replace(F, covers=tuple(covers), graphs=graphs)


def _recorrespond(
    F: GraphFamily,
    graphs: Mapping[str, LabelledGraph],
    plan: Mapping[str, Optional[BasicRefinementSpec]],
    ids: Mapping[str, Tuple[str, str, str]],
    c: Cover,
) -> Cover:
    old = correspondence(F, c)
    _, old_record = specialize(F.graphs[c.source], c.hom)
    derived, record = specialize(graphs[c.source], c.hom)

    spec = plan[c.source]
    mid, near, far = ids[c.source]
    target_spec = plan.get(c.target)

    edges: Dict[str, str] = {}

    for d in derived.edge_ids:
        if d in old.edges:
            edges[d] = old.edges[d]
        elif target_spec is None:
            # the other half of the split was contracted
            edges[d] = old.edges[spec.edge]
        else:
            _, t_near, t_far = ids[c.target]

            if _push(F, c, spec) == target_spec:
                edges.update({near: t_near, far: t_far})
            else:
                edges.update({near: t_far, far: t_near})

    members: Dict[str, List[str]] = defaultdict(list)

    for v, new in record.merge.items():
        members[new].append(v)

    vertices: Dict[str, str] = {}

    for new, group in members.items():
        if group == [mid]:
            vertices[new] = ids[c.target][0]
        else:
            v = next(v for v in group if v != mid)
            vertices[new] = old.vertices[old_record.merge[v]]

    return replace(c, correspondence=Correspondence(vertices, edges))


@dataclass(frozen=True)
class FamilyVerdict:
    """
    Per-point alignment reports and the global separatedness verdict.

    :ivar reports: Report at every point.
    :ivar separated: Strict alignment holds at every point.
    """

    reports: Mapping[str, AlignmentReport]
    separated: bool


def family_verdict(F: GraphFamily, cap: int = DEFAULT_CYCLE_CAP) -> FamilyVerdict:
    """
    Run the alignment checks at every point.

    The Néron model is separated when the curve is strictly aligned at
    every point of the family.

    :raises CycleBudgetExceeded: If a graph has more than ``cap`` cycles.
    """
    reports = {p: neron_separated_verdict(F.graphs[p], cap)[1] for p in F.points}

    return FamilyVerdict(reports, all(r.separated for r in reports.values()))

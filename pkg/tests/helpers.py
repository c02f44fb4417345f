import context
import random
from itertools import combinations_with_replacement, product
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple
import networkx as nx
from networkx.utils import UnionFind
from neron_graphs.family import Cover, GraphFamily, specialize
from neron_graphs.generators import RandomSpec, gen_random
from neron_graphs.graph import Edge, LabelledGraph
from neron_graphs.monoid import (
    MonoidElement,
    MonoidHom,
    PrimeAlphabet,
    enumerate_types,
    is_prime,
    parse,
)
from neron_graphs.refine import BasicRefinementSpec

UV = PrimeAlphabet(("u", "v"))


class FakeBus:
    """
    Mock class to imitate event_bus

    Used to capture the event name and payload of every `emit` call.
    """

    def __init__(self):
        self.calls = []

    def emit(self, event: str, *args):
        self.calls.append((event, args))

    def events(self) -> List[str]:
        return [event for event, _ in self.calls]


def el(text: str, alphabet: PrimeAlphabet = UV) -> MonoidElement:
    """Helper function to parse a label such as ``u^2*v``"""
    return parse(alphabet, text)


def graph(
    edges: Sequence[Tuple[str, str, str, str]],
    vertices: Optional[Sequence[str]] = None,
    alphabet: PrimeAlphabet = UV,
) -> LabelledGraph:
    """
    Helper function to build a graph from ``(id, end, end, label)`` rows.

    Vertices default to the endpoints of the edges.
    """
    if vertices is None:
        vertices = sorted({v for _, a, b, _ in edges for v in (a, b)})

    return LabelledGraph(
        alphabet,
        tuple(vertices),
        tuple(Edge(i, (a, b), parse(alphabet, label)) for i, a, b, label in edges),
    )


def first_example() -> LabelledGraph:
    """Two parallel edges labelled u*v^2 and u^2*v^2: not aligned"""
    return graph([("e1", "A", "B", "u*v^2"), ("e2", "A", "B", "u^2*v^2")])


def second_example() -> LabelledGraph:
    """A single loop labelled u*v: aligned but not strictly"""
    return graph([("e1", "C", "C", "u*v")])


def third_example() -> LabelledGraph:
    """Parallel edges u^2 and u^3 plus a loop v^3: strictly aligned"""
    return graph(
        [("e1", "A", "B", "u^2"), ("e2", "A", "B", "u^3"), ("e3", "A", "A", "v^3")]
    )


def ring(labels: Sequence[MonoidElement]) -> LabelledGraph:
    """A single cycle through ``len(labels)`` vertices; one label is a loop"""
    n = len(labels)
    vertices = [f"r{i}" for i in range(n)]

    edges = tuple(
        Edge(f"c{i}", (vertices[i], vertices[(i + 1) % n]), label)
        for i, label in enumerate(labels)
    )
    return LabelledGraph(labels[0].alphabet, tuple(vertices), edges)


def irred_family() -> GraphFamily:
    """
    A loop labelled Delta at the closed point whose thickness splits into
    two primes q1*q2 at the generization.
    """
    closed = PrimeAlphabet(("Delta",))
    generic = PrimeAlphabet(("q1", "q2"))

    return GraphFamily(
        points=("s", "xi"),
        covers=(
            Cover("s", "xi", MonoidHom.of(closed, generic, {"Delta": {"q1": 1, "q2": 1}})),
        ),
        graphs={
            "s": graph([("e", "C", "C", "Delta")], alphabet=closed),
            "xi": graph([("e", "C", "C", "q1*q2")], alphabet=generic),
        },
    )


def two_point_family(g: LabelledGraph, h: MonoidHom) -> GraphFamily:
    """``g`` at ``s`` and its specialization through ``h`` at ``xi``"""
    return GraphFamily(
        points=("s", "xi"),
        covers=(Cover("s", "xi", h),),
        graphs={"s": g, "xi": specialize(g, h)[0]},
    )


def random_graph(seed: int, max_edges: int = 8, max_alphabet: int = 4) -> LabelledGraph:
    """A small random graph whose shape is also drawn from ``seed``"""
    rng = random.Random(seed)
    vertices = rng.randint(1, 5)
    alphabet_size = rng.randint(1, max_alphabet)

    return gen_random(
        RandomSpec(
            seed=seed,
            vertex_count=vertices,
            edge_count=rng.randint(vertices - 1, max(vertices - 1, max_edges)),
            alphabet_size=alphabet_size,
            max_exponent=3,
            max_support=rng.randint(1, alphabet_size),
        )
    )


def random_spec(g: LabelledGraph, rng: random.Random) -> Optional[BasicRefinementSpec]:
    """A valid basic refinement of a random non-prime edge, if there is one"""
    candidates = [e for e in g.edges if not is_prime(e.label)]

    if not candidates:
        return None

    e = rng.choice(candidates)
    return spec_for(e, rng)


def spec_for(e: Edge, rng: random.Random) -> BasicRefinementSpec:
    """A random orientation and type for the non-prime edge ``e``"""
    return BasicRefinementSpec(e.id, rng.choice(e.ends), rng.choice(enumerate_types(e.label)))


def random_hom(source: PrimeAlphabet, rng: random.Random) -> MonoidHom:
    """Images drawn over a fresh alphabet; some primes become units"""
    target = PrimeAlphabet(tuple(f"q{i}" for i in range(rng.randint(1, 3))))
    image = {}

    for sym in source:
        image[sym] = {
            q: rng.randint(1, 2) for q in target if rng.random() < 0.4
        }

    return MonoidHom.of(source, target, image)


def brute_cycles(g: LabelledGraph) -> Set[FrozenSet[str]]:
    """
    Edge sets of all simple cycles, by testing every subset of edges.

    A subset is a cycle when it is connected and every vertex it touches
    has degree two, a loop counting twice.
    """
    found = set()

    for mask in range(1, 2 ** len(g.edges)):
        chosen = [e for i, e in enumerate(g.edges) if mask >> i & 1]
        degree = {}
        classes = UnionFind()

        for e in chosen:
            a, b = e.ends
            degree[a] = degree.get(a, 0) + 1
            degree[b] = degree.get(b, 0) + 1
            classes.union(a, b)

        if all(d == 2 for d in degree.values()) and len({classes[v] for v in degree}) == 1:
            found.add(frozenset(e.id for e in chosen))

    return found


def brute_aligned(labels: Sequence[MonoidElement]) -> bool:
    """Search every divisor l of the first label for ``labels ⊆ {l^k, k >= 1}``"""
    first = labels[0].vector

    for candidate in product(*(range(x + 1) for x in first)):
        if not any(candidate):
            continue

        def is_power(vector) -> bool:
            ks = {x // c for x, c in zip(vector, candidate) if c}
            return (
                len(ks) == 1
                and min(ks) >= 1
                and all(x == min(ks) * c for x, c in zip(vector, candidate))
            )

        if all(is_power(m.vector) for m in labels):
            return True

    return False


def brute_strictly_aligned(labels: Sequence[MonoidElement]) -> bool:
    """Some single prime p has every label a power of p"""
    supports = {m.support() for m in labels}
    return len(supports) == 1 and len(next(iter(supports))) == 1


def label_multisets(size: int, alphabet: PrimeAlphabet = UV, max_exponent: int = 3) -> Iterator[Tuple[MonoidElement, ...]]:
    """Every multiset of ``size`` non-unit labels with bounded exponents"""
    labels = [
        MonoidElement(alphabet, v)
        for v in product(range(max_exponent + 1), repeat=len(alphabet))
        if any(v)
    ]
    return combinations_with_replacement(labels, size)


def _as_multigraph(edges: Sequence[Tuple[int, int]], n: int) -> nx.MultiGraph:
    H = nx.MultiGraph()
    H.add_nodes_from(range(n))
    H.add_edges_from(edges)
    return H


def multigraph_shapes(max_edges: int) -> List[Tuple[Tuple[int, int], ...]]:
    """
    Every connected multigraph with loops and at most ``max_edges`` edges,
    one per isomorphism class, as ``(a, b)`` pairs over ``0..n-1``.

    Grown one edge at a time from a single vertex. A new edge is a loop or
    joins two vertices, at most one of them new.
    """
    level: List[Tuple[Tuple[Tuple[int, int], ...], int]] = [((), 1)]
    shapes = [()]

    for _ in range(max_edges):
        grown: Dict[tuple, List[Tuple[Tuple[Tuple[int, int], ...], int, nx.MultiGraph]]] = {}

        for edges, n in level:
            options = [(a, b) for a in range(n) for b in range(a, n)] + [(a, n) for a in range(n)]

            for pair in options:
                candidate = tuple(sorted(edges + (pair,)))
                size = max(n, pair[1] + 1)
                H = _as_multigraph(candidate, size)
                key = (size, tuple(sorted(d for _, d in H.degree())), nx.number_of_selfloops(H))
                bucket = grown.setdefault(key, [])

                if not any(nx.is_isomorphic(H, other) for _, _, other in bucket):
                    bucket.append((candidate, size, H))

        level = [(edges, n) for bucket in grown.values() for edges, n, _ in bucket]
        shapes.extend(edges for edges, _ in level)

    return shapes

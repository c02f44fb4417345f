"""
Seeded random dual graphs for tests, fuzzing and benchmark corpora.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import List

from .errors import SpecError
from .graph import Edge, LabelledGraph
from .monoid import MonoidElement, PrimeAlphabet


@dataclass(frozen=True)
class RandomSpec:
    """
    Shape of a random graph.

    :param seed: Seed of the generator; equal specs give equal graphs.
    :type seed: :class:`int`
    :param vertex_count: Number of vertices, at least 1.
    :type vertex_count: :class:`int`
    :param edge_count: Number of edges, at least ``vertex_count - 1``.
    :type edge_count: :class:`int`
    :param alphabet_size: Number of prime symbols.
    :type alphabet_size: :class:`int`
    :param max_exponent: Largest exponent in a label.
    :type max_exponent: :class:`int`
    :param max_support: Largest number of distinct primes in a label, at
        most ``alphabet_size``.
    :type max_support: :class:`int`
    """

    seed: int
    vertex_count: int
    edge_count: int
    alphabet_size: int = 2
    max_exponent: int = 3
    max_support: int = 2

    def check(self) -> None:
        """
        :raises SpecError: If no connected graph fits the spec.
        """
        for name in ("vertex_count", "alphabet_size", "max_exponent", "max_support"):
            if getattr(self, name) < 1:
                raise SpecError(f"{name} must be positive, got {getattr(self, name)}")

        if self.edge_count < self.vertex_count - 1:
            raise SpecError(
                f"{self.edge_count} edges cannot connect {self.vertex_count} vertices"
            )

        if self.max_support > self.alphabet_size:
            raise SpecError(
                f"max_support {self.max_support} exceeds alphabet size {self.alphabet_size}"
            )


def _ids(prefix: str, n: int) -> List[str]:
    width = len(str(max(n - 1, 0)))
    return [f"{prefix}{i:0{width}d}" for i in range(n)]


def _label(rng: random.Random, alphabet: PrimeAlphabet, spec: RandomSpec) -> MonoidElement:
    k = rng.randint(1, spec.max_support)
    symbols = rng.sample(alphabet.symbols, k)

    return MonoidElement.of(
        alphabet, {sym: rng.randint(1, spec.max_exponent) for sym in symbols}
    )


def gen_random(spec: RandomSpec) -> LabelledGraph:
    """
    Draw a connected labelled multigraph.

    A random spanning tree is built first by attaching every new vertex to
    an earlier one; the remaining edges join uniformly drawn endpoints, so
    loops and parallel edges occur. Vertex, edge and prime ids are
    ``v<i>``, ``e<i>`` and ``p<i>``, zero padded.

    :raises SpecError: If the spec is impossible.
    """
    spec.check()

    rng = random.Random(spec.seed)
    alphabet = PrimeAlphabet(tuple(_ids("p", spec.alphabet_size)))
    vertices = _ids("v", spec.vertex_count)
    edge_ids = _ids("e", spec.edge_count)

    ends = [(vertices[i], vertices[rng.randrange(i)]) for i in range(1, spec.vertex_count)]

    while len(ends) < spec.edge_count:
        ends.append((rng.choice(vertices), rng.choice(vertices)))

    edges = tuple(
        Edge(edge_id, pair, _label(rng, alphabet, spec))
        for edge_id, pair in zip(edge_ids, ends)
    )

    return LabelledGraph(alphabet, tuple(vertices), edges)

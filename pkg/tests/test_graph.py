import context
import helpers
import random
import unittest
from hypothesis import given, settings, strategies as st
from neron_graphs.errors import CycleBudgetExceeded, MissingEdgeError
from neron_graphs.graph import (
    Edge,
    LabelledGraph,
    betti_number,
    classify_edges,
    contract,
    cycles,
    is_resolved,
    total_complexity,
    validate,
)
from neron_graphs.monoid import MonoidElement


class TestLabelledGraph(unittest.TestCase):
    def test_equality_ignores_input_order(self):
        a = helpers.graph([("e1", "A", "B", "u"), ("e2", "B", "C", "v")])
        b = helpers.graph([("e2", "C", "B", "v"), ("e1", "B", "A", "u")], vertices=["C", "B", "A"])

        self.assertEqual(a, b)

    def test_edge_lookup(self):
        g = helpers.first_example()

        self.assertEqual(g.edge("e2").label, helpers.el("u^2*v^2"))

        with self.assertRaises(MissingEdgeError):
            g.edge("nope")

        with self.assertRaises(KeyError):
            g.edge("nope")

    def test_incident_lists_loops_once(self):
        g = helpers.third_example()
        self.assertEqual([e.id for e in g.incident("A")], ["e1", "e2", "e3"])
        self.assertEqual([e.id for e in g.incident("B")], ["e1", "e2"])

    def test_to_networkx_keys_edges_by_id(self):
        H = helpers.third_example().to_networkx()

        self.assertEqual(H.number_of_edges(), 3)
        self.assertTrue(H.has_edge("A", "A", key="e3"))


class TestValidate(unittest.TestCase):
    def test_worked_examples_are_valid(self):
        for g in (helpers.first_example(), helpers.second_example(), helpers.third_example()):
            self.assertTrue(validate(g).ok)

    def test_single_vertex_without_edges_is_valid(self):
        self.assertTrue(validate(LabelledGraph(helpers.UV, ("A",))))

    def test_empty_graph(self):
        self.assertIn("graph has no vertices", validate(LabelledGraph(helpers.UV, ())).issues)

    def test_disconnected(self):
        g = helpers.graph([("e1", "A", "B", "u")], vertices=["A", "B", "C"])
        self.assertEqual(validate(g).issues, ("disconnected: 2 components",))

    def test_unknown_endpoint(self):
        g = helpers.graph([("e1", "A", "Z", "u")], vertices=["A"])
        self.assertEqual(validate(g).issues, ("edge e1: unknown endpoint 'Z'",))

    def test_unit_label(self):
        g = LabelledGraph(
            helpers.UV, ("A",), (Edge("e1", ("A", "A"), MonoidElement.identity(helpers.UV)),)
        )
        self.assertEqual(validate(g).issues, ("edge e1: label is a unit",))

    def test_duplicate_edge_ids(self):
        g = helpers.graph([("e1", "A", "B", "u"), ("e1", "A", "B", "v")])
        self.assertIn("duplicate edge id 'e1'", validate(g).issues)


class TestCycles(unittest.TestCase):
    def test_third_example(self):
        found = cycles(helpers.third_example())

        self.assertEqual([c.edges for c in found], [("e1", "e2"), ("e3",)])
        self.assertEqual(found[0].vertices, ("A", "B", "A"))
        self.assertEqual(found[1].vertices, ("A", "A"))

    def test_tree_has_no_cycles(self):
        g = helpers.graph([("e1", "A", "B", "u"), ("e2", "B", "C", "v")])
        self.assertEqual(cycles(g), [])

    def test_triangle_with_chord(self):
        g = helpers.graph(
            [
                ("a", "A", "B", "u"),
                ("b", "B", "C", "u"),
                ("c", "C", "A", "u"),
                ("d", "A", "B", "v"),
            ]
        )
        found = [c.edges for c in cycles(g)]

        self.assertEqual(found, [("a", "b", "c"), ("a", "d"), ("b", "c", "d")])

    def test_canonical_direction(self):
        g = helpers.graph(
            [("a", "A", "B", "u"), ("c", "B", "C", "u"), ("b", "C", "A", "u")]
        )
        (cycle,) = cycles(g)

        self.assertEqual(cycle.edges, ("a", "b", "c"))
        self.assertEqual(cycle.vertices, ("B", "A", "C", "B"))

    def test_cap(self):
        g = helpers.graph([("e1", "A", "B", "u"), ("e2", "A", "B", "u"), ("e3", "A", "B", "u")])

        self.assertEqual(len(cycles(g, cap=3)), 3)

        with self.assertRaises(CycleBudgetExceeded) as ctx:
            cycles(g, cap=2)

        self.assertEqual(ctx.exception.cap, 2)

    def test_long_ring(self):
        g = helpers.ring([helpers.el("u")] * 2000)
        (cycle,) = cycles(g)

        self.assertEqual(len(cycle.edges), 2000)
        self.assertEqual(set(cycle.edges), set(g.edge_ids))
        self.assertEqual(cycle.edges[0], "c0")
        self.assertEqual(cycle.vertices[0], cycle.vertices[-1])

    @settings(max_examples=200, deadline=None)
    @given(st.integers(0, 10_000))
    def test_cycles_match_subset_search(self, seed):
        g = helpers.random_graph(seed)
        found = cycles(g)

        self.assertEqual({frozenset(c.edges) for c in found}, helpers.brute_cycles(g))
        self.assertEqual(len(found), len({frozenset(c.edges) for c in found}))

        for c in found:
            self.assertEqual(c.edges[0], min(c.edges))
            self.assertEqual(c.vertices[0], c.vertices[-1])

            for i, edge_id in enumerate(c.edges):
                self.assertEqual(
                    g.edge(edge_id).ends, tuple(sorted(c.vertices[i : i + 2]))
                )


class TestClassify(unittest.TestCase):
    def test_tree_edges_disconnect(self):
        g = helpers.graph([("e1", "A", "B", "u"), ("e2", "B", "C", "v")])
        self.assertEqual(set(classify_edges(g).values()), {"disconnecting"})

    def test_parallel_edges_and_loops_do_not_disconnect(self):
        kinds = classify_edges(helpers.third_example())
        self.assertEqual(set(kinds.values()), {"non-disconnecting"})

    def test_bridge_between_cycles(self):
        g = helpers.graph(
            [
                ("a", "A", "A", "u"),
                ("b", "A", "B", "v"),
                ("c", "B", "C", "u"),
                ("d", "B", "C", "u"),
            ]
        )
        self.assertEqual(
            classify_edges(g),
            {
                "a": "non-disconnecting",
                "b": "disconnecting",
                "c": "non-disconnecting",
                "d": "non-disconnecting",
            },
        )

    @settings(max_examples=200, deadline=None)
    @given(st.integers(0, 10_000))
    def test_agrees_with_cycle_membership(self, seed):
        g = helpers.random_graph(seed, max_edges=6)
        on_cycle = {i for c in cycles(g) for i in c.edges}

        for edge_id, kind in classify_edges(g).items():
            self.assertEqual(kind == "non-disconnecting", edge_id in on_cycle, edge_id)


class TestInvariants(unittest.TestCase):
    def test_total_complexity(self):
        self.assertEqual(total_complexity(helpers.first_example()), 5)
        self.assertEqual(total_complexity(helpers.third_example()), 5)

    def test_betti_number(self):
        self.assertEqual(betti_number(helpers.third_example()), 2)
        self.assertEqual(betti_number(LabelledGraph(helpers.UV, ("A",))), 0)

    def test_is_resolved(self):
        self.assertFalse(is_resolved(helpers.first_example()))
        self.assertTrue(is_resolved(helpers.graph([("e1", "A", "B", "u"), ("e2", "A", "B", "v")])))


class TestContract(unittest.TestCase):
    def test_merged_class_takes_least_name(self):
        g = helpers.graph(
            [("e1", "B", "C", "u"), ("e2", "C", "D", "v"), ("e3", "A", "D", "u")]
        )
        contracted, merge = contract(g, ["e1", "e2"])

        self.assertEqual(contracted.vertices, ("A", "B"))
        self.assertEqual(merge, {"A": "A", "B": "B", "C": "B", "D": "B"})
        self.assertEqual(contracted.edges, (Edge("e3", ("A", "B"), helpers.el("u")),))

    def test_parallel_edge_becomes_loop(self):
        contracted, _ = contract(helpers.first_example(), ["e1"])

        self.assertEqual(contracted.vertices, ("A",))
        self.assertTrue(contracted.edge("e2").is_loop)

    def test_contracted_loop_disappears(self):
        contracted, merge = contract(helpers.second_example(), ["e1"])

        self.assertEqual(contracted, LabelledGraph(helpers.UV, ("C",)))
        self.assertEqual(merge, {"C": "C"})

    def test_unknown_edge(self):
        with self.assertRaises(MissingEdgeError):
            contract(helpers.first_example(), ["e9"])

    def test_betti_number_drops_only_for_loops(self):
        rng = random.Random(9)

        for seed in range(300):
            g = helpers.random_graph(seed)

            if not g.edges:
                continue

            e = rng.choice(g.edges)
            contracted, _ = contract(g, [e.id])

            self.assertEqual(
                betti_number(contracted), betti_number(g) - (1 if e.is_loop else 0), seed
            )

    @settings(max_examples=200, deadline=None)
    @given(st.integers(0, 10_000), st.randoms(use_true_random=False))
    def test_contracting_in_two_steps(self, seed, rng):
        g = helpers.random_graph(seed)
        ids = list(g.edge_ids)
        rng.shuffle(ids)

        cut = rng.randint(0, len(ids))
        first, second = ids[:cut], ids[cut:]
        second = rng.sample(second, rng.randint(0, len(second)))

        step, inner = contract(g, first)
        twice, outer = contract(step, second)
        once, merge = contract(g, first + second)

        self.assertEqual(twice, once)
        self.assertEqual({v: outer[inner[v]] for v in g.vertices}, merge)


if __name__ == "__main__":
    unittest.main()

import context
import helpers
import io
import json
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path
from neron_graphs.base.command import BaseCommand, Registry
from neron_graphs.cli import main
from neron_graphs.family import Cover, GraphFamily
from neron_graphs.monoid import MonoidHom, PrimeAlphabet
from neron_graphs.readers.json import JSONReader
from neron_graphs.refine import BasicRefinementSpec, resolve
from neron_graphs.storage.dot import to_dot
from neron_graphs.storage.json import (
    dumps,
    family_to_dict,
    graph_to_dict,
    hom_to_dict,
    spec_to_dict,
)


class CLITestCase(unittest.TestCase):
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = Path(self._tmp.name)

    def tearDown(self):
        self._tmp.cleanup()

    def write(self, name: str, doc) -> str:
        path = self.tmp / name
        path.write_text(doc if isinstance(doc, str) else dumps(doc), encoding="utf-8")
        return str(path)

    def run_cli(self, *argv: str):
        out, err = io.StringIO(), io.StringIO()

        with redirect_stdout(out), redirect_stderr(err):
            code = main(list(argv))

        return code, out.getvalue()


class TestVerdicts(CLITestCase):
    def test_third_example_is_separated(self):
        path = self.write("third.json", graph_to_dict(helpers.third_example()))
        code, out = self.run_cli("verdict", path)

        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out), {"separated": True})

    def test_second_example_is_not(self):
        path = self.write("second.json", graph_to_dict(helpers.second_example()))
        code, out = self.run_cli("verdict", path)

        self.assertEqual(code, 1)
        self.assertEqual(json.loads(out), {"separated": False})

    def test_check_align_strict_flag(self):
        path = self.write("second.json", graph_to_dict(helpers.second_example()))

        code, out = self.run_cli("check-align", path)
        self.assertEqual(code, 0)
        self.assertTrue(json.loads(out)["aligned"])

        code, out = self.run_cli("check-align", "--strict", path)
        self.assertEqual(code, 1)
        self.assertEqual(json.loads(out)["counterexample"], {"cycle": ["e1"], "labels": [{"u": 1, "v": 1}]})

    def test_family_verdict(self):
        path = self.write("family.json", family_to_dict(helpers.irred_family()))
        code, out = self.run_cli("family-verdict", path)

        self.assertEqual(code, 1)
        doc = json.loads(out)
        self.assertFalse(doc["separated"])
        self.assertEqual(sorted(doc["points"]), ["s", "xi"])

    def test_family_validate(self):
        path = self.write("family.json", family_to_dict(helpers.irred_family()))
        code, out = self.run_cli("family-validate", path)

        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out), {"valid": True, "issues": []})

    def test_family_validate_reports_broken_graph(self):
        h = MonoidHom.identity(helpers.UV)
        bad = helpers.graph([("e", "A", "Z", "u")], vertices=["A"])
        F = GraphFamily(("s", "xi"), (Cover("s", "xi", h),), {"s": helpers.third_example(), "xi": bad})

        code, out = self.run_cli("family-validate", self.write("family.json", family_to_dict(F)))

        self.assertEqual(code, 1)
        self.assertEqual(
            json.loads(out), {"valid": False, "issues": ["point xi: edge e: unknown endpoint 'Z'"]}
        )


class TestCommands(CLITestCase):
    def test_complexity(self):
        path = self.write("first.json", graph_to_dict(helpers.first_example()))
        code, out = self.run_cli("complexity", path)

        self.assertEqual((code, json.loads(out)), (0, {"total_complexity": 5}))

    def test_resolve(self):
        path = self.write("first.json", graph_to_dict(helpers.first_example()))
        code, out = self.run_cli("resolve", path)

        doc = json.loads(out)
        self.assertEqual(code, 0)
        self.assertEqual(len(doc["steps"]), 5)
        self.assertTrue(all(sum(e["label"].values()) == 1 for e in doc["graph"]["edges"]))

    def test_refine_then_verify(self):
        g = helpers.first_example()
        coarse = self.write("coarse.json", graph_to_dict(g))
        specs = self.write(
            "specs.json", [spec_to_dict(BasicRefinementSpec("e1", "A", helpers.el("u")))]
        )

        code, out = self.run_cli("refine", coarse, "--specs", specs)
        self.assertEqual(code, 0)

        doc = json.loads(out)
        fine = self.write("fine.json", doc["graph"])
        witness = self.write("witness.json", doc["witness"])

        code, out = self.run_cli("verify-refinement", coarse, "--fine", fine, "--witness", witness)
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)["subdivided"], ["e1"])

    def test_specialize(self):
        target = PrimeAlphabet(("u",))
        hom = self.write(
            "hom.json", hom_to_dict(MonoidHom.of(helpers.UV, target, {"u": {"u": 1}, "v": {}}))
        )
        path = self.write(
            "g.json",
            graph_to_dict(helpers.graph([("e1", "A", "B", "v"), ("e2", "A", "B", "u*v")])),
        )

        code, out = self.run_cli("specialize", path, "--hom", hom)
        doc = json.loads(out)

        self.assertEqual(code, 0)
        self.assertEqual(doc["contracted"], ["e1"])
        self.assertEqual(doc["graph"]["edges"], [{"id": "e2", "ends": ["A", "A"], "label": {"u": 1}}])

    def test_family_transport(self):
        kill_v = MonoidHom.of(helpers.UV, PrimeAlphabet(("u",)), {"u": {"u": 1}, "v": {}})
        F = helpers.two_point_family(helpers.graph([("e", "A", "B", "u*v")]), kill_v)
        family = self.write("family.json", family_to_dict(F))
        spec = self.write("spec.json", {"edge": "e", "from": "A", "type": {"u": 1}})

        code, out = self.run_cli("family-transport", family, "--point", "s", "--spec", spec)
        doc = json.loads(out)

        self.assertEqual(code, 0)
        self.assertEqual([e["id"] for e in doc["graphs"]["s"]["edges"]], ["e.1", "e.2"])
        self.assertEqual(doc["graphs"]["xi"], graph_to_dict(F.graphs["xi"]))

    def test_family_transport_rejects_prime_edge(self):
        family = self.write("family.json", family_to_dict(helpers.irred_family()))
        spec = self.write("spec.json", {"edge": "e", "from": "C", "type": {"Delta": 1}})

        code, out = self.run_cli("family-transport", family, "--point", "s", "--spec", spec)

        self.assertEqual((code, out), (2, ""))

    def test_types(self):
        path = self.write("g.json", graph_to_dict(helpers.graph([("e", "A", "B", "u^2*v")])))
        code, out = self.run_cli("types", path, "--edge", "e")

        self.assertEqual(
            json.loads(out)["types"], [{"v": 1}, {"u": 1}, {"u": 1, "v": 1}, {"u": 2}]
        )

    def test_cycles_and_classify(self):
        path = self.write("third.json", graph_to_dict(helpers.third_example()))

        code, out = self.run_cli("cycles", path)
        self.assertEqual(json.loads(out)["count"], 2)

        code, out = self.run_cli("classify", path)
        self.assertEqual(set(json.loads(out).values()), {"non-disconnecting"})

    def test_gen_random_single_vertex(self):
        code, out = self.run_cli("gen-random", "--seed", "7", "--vertices", "1", "--edges", "0")

        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out), {"alphabet": ["p0", "p1"], "vertices": ["v0"], "edges": []})

    def test_gen_random_is_reproducible(self):
        args = ("gen-random", "--seed", "3", "--vertices", "4", "--edges", "7")
        self.assertEqual(self.run_cli(*args), self.run_cli(*args))

    def test_gen_random_impossible(self):
        code, out = self.run_cli("gen-random", "--vertices", "5", "--edges", "2")
        self.assertEqual((code, out), (2, ""))


class TestExitCodes(CLITestCase):
    def test_malformed_json(self):
        path = self.write("bad.json", '{"alphabet": [')
        self.assertEqual(self.run_cli("verdict", path), (2, ""))

    def test_invalid_graph(self):
        doc = graph_to_dict(helpers.graph([("e1", "A", "B", "u")], vertices=["A", "B", "C"]))
        path = self.write("disconnected.json", doc)

        self.assertEqual(self.run_cli("verdict", path)[0], 2)

        code, out = self.run_cli("validate", path)
        self.assertEqual(code, 1)
        self.assertEqual(json.loads(out), {"valid": False, "issues": ["disconnected: 2 components"]})

    def test_cycle_budget(self):
        path = self.write("third.json", graph_to_dict(helpers.third_example()))

        self.assertEqual(self.run_cli("cycles", "--cap", "1", path), (3, ""))

    def test_several_inputs_need_each(self):
        path = self.write("third.json", graph_to_dict(helpers.third_example()))

        with self.assertRaises(SystemExit) as ctx:
            self.run_cli("verdict", path, path)

        self.assertEqual(ctx.exception.code, 2)


class TestBatch(CLITestCase):
    def test_each_reports_worst_code(self):
        third = self.write("third.json", graph_to_dict(helpers.third_example()))
        second = self.write("second.json", graph_to_dict(helpers.second_example()))
        bad = self.write("bad.json", "[]")

        code, out = self.run_cli("verdict", "--each", "--jobs", "2", third, second, bad)
        entries = json.loads(out)

        self.assertEqual(code, 2)
        self.assertEqual([e["input"] for e in entries], [third, second, bad])
        self.assertEqual([e["exit_code"] for e in entries], [0, 1, 2])
        self.assertEqual(entries[0]["result"], {"separated": True})
        self.assertIn("expected an object", entries[2]["error"])


class TestOutput(CLITestCase):
    def test_export_dot(self):
        path = self.write("first.json", graph_to_dict(helpers.first_example()))
        code, out = self.run_cli("export-dot", path)

        self.assertEqual(code, 0)
        self.assertEqual(out, to_dot(helpers.first_example()))

    def test_dot_format(self):
        path = self.write("first.json", graph_to_dict(helpers.first_example()))
        code, out = self.run_cli("resolve", "--format", "dot", path)

        self.assertEqual(code, 0)
        self.assertTrue(out.startswith('graph "G" {\n'))
        self.assertEqual(out.count(" -- "), 7)

    def test_dot_needs_a_graph(self):
        path = self.write("third.json", graph_to_dict(helpers.third_example()))
        self.assertEqual(self.run_cli("verdict", "--format", "dot", path), (2, ""))

    def test_out_file(self):
        g = helpers.third_example()
        path = self.write("third.json", graph_to_dict(g))
        target = self.tmp / "results" / "copy.json"

        code, out = self.run_cli("resolve", path, "--out", str(target))

        self.assertEqual((code, out), (0, ""))
        written = json.loads(target.read_text("utf-8"))["graph"]
        self.assertEqual(JSONReader(text=json.dumps(written)).graph(), resolve(g)[0])


class TestRegistry(unittest.TestCase):
    def test_commands_are_registered_by_name(self):
        commands = Registry.all()

        self.assertIn("verdict", commands)
        self.assertIs(Registry.get("verdict"), commands["verdict"])

    def test_command_without_name(self):
        with self.assertRaisesRegex(ValueError, "needs a non-empty `name`"):

            class Nameless(BaseCommand):
                def run(self, args, path):
                    pass

    def test_taken_name(self):
        before = Registry.all()

        with self.assertRaisesRegex(ValueError, "command name 'verdict' used by both"):

            class Again(BaseCommand):
                name = "verdict"

                def run(self, args, path):
                    pass

        self.assertEqual(Registry.all(), before)


if __name__ == "__main__":
    unittest.main()

"""
Command line front end.

Every subcommand reads JSON documents, calls one library operation and
prints JSON (or DOT). Exit codes:

- ``0`` success, or a positive verdict
- ``1`` negative verdict: not aligned, invalid, not separated
- ``2`` input error
- ``3`` cycle budget exceeded

With ``--each`` a subcommand runs on every input independently; results
are printed as one JSON array in input order and the worst exit code wins.
"""

from __future__ import annotations

import argparse
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

from .align import alignment_report, neron_separated_verdict
from .base.command import (
    BUDGET_EXCEEDED,
    INPUT_ERROR,
    NEGATIVE,
    OK,
    BaseCommand,
    Outcome,
    Registry,
)
from .errors import CycleBudgetExceeded, InputError, NeronGraphsError
from .events import event_bus
from .family import GraphFamily, family_verdict, specialize, transport_basic_refinement, validate_family
from .generators import RandomSpec, gen_random
from .graph import (
    DEFAULT_CYCLE_CAP,
    LabelledGraph,
    classify_edges,
    cycles,
    total_complexity,
    validate,
)
from .monoid import enumerate_types
from .readers.json import JSONReader
from .refine import replay, resolve, verify_refinement
from .storage.dot import to_dot
from .storage.json import (
    JSONStorage,
    element_to_dict,
    family_to_dict,
    graph_to_dict,
    report_to_dict,
    spec_to_dict,
    specs_to_list,
    witness_to_dict,
)

logger = logging.getLogger(__name__)


def load_graph(path: str) -> LabelledGraph:
    """
    Read a graph and insist that it is valid.

    :raises InputError: On malformed JSON or a graph failing validation.
    """
    reader = JSONReader(path)
    g = reader.graph()
    report = validate(g)

    if not report.ok:
        raise reader.error("invalid graph: " + "; ".join(report.issues))

    return g


def load_family(path: str) -> GraphFamily:
    reader = JSONReader(path)
    F = reader.family()
    report = validate_family(F)

    if not report.ok:
        raise reader.error("invalid family: " + "; ".join(report.issues))

    return F


def _verdict(ok: bool) -> int:
    return OK if ok else NEGATIVE


class ValidateCommand(BaseCommand):
    name = "validate"
    help = "check the invariants of a graph"

    def run(self, args, path):
        report = validate(JSONReader(path).graph())
        return Outcome({"valid": report.ok, "issues": list(report.issues)}, _verdict(report.ok))


class ComplexityCommand(BaseCommand):
    name = "complexity"
    help = "total arithmetic complexity of a graph"

    def run(self, args, path):
        return Outcome({"total_complexity": total_complexity(load_graph(path))})


class ResolveCommand(BaseCommand):
    name = "resolve"
    help = "refine a graph until every label is prime"

    def run(self, args, path):
        fine, witness, steps = resolve(load_graph(path))

        payload = {
            "graph": graph_to_dict(fine),
            "witness": witness_to_dict(witness),
            "steps": specs_to_list(steps),
        }
        return Outcome(payload, graph=fine)


class RefineCommand(BaseCommand):
    name = "refine"
    help = "apply a list of basic refinements"

    def add_arguments(self, parser):
        parser.add_argument("--specs", required=True, metavar="FILE", help="JSON list of basic refinement specs")

    def run(self, args, path):
        g = load_graph(path)
        fine, witness = replay(g, JSONReader(args.specs).specs(g.alphabet))

        return Outcome({"graph": graph_to_dict(fine), "witness": witness_to_dict(witness)}, graph=fine)


class CheckAlignCommand(BaseCommand):
    name = "check-align"
    help = "alignment report of a graph"

    def add_arguments(self, parser):
        parser.add_argument(
            "--strict",
            action="store_true",
            help="exit code follows strict alignment instead of alignment",
        )
        parser.add_argument(
            "--allow-partial",
            action="store_true",
            help="report on the first --cap cycles instead of failing",
        )

    def run(self, args, path):
        report = alignment_report(load_graph(path), args.cap, args.allow_partial)
        flag = report.strictly_aligned if args.strict else report.aligned

        return Outcome(report_to_dict(report), _verdict(flag))


class VerdictCommand(BaseCommand):
    name = "verdict"
    help = "is the Néron model of the Jacobian separated at this point"

    def run(self, args, path):
        separated, report = neron_separated_verdict(load_graph(path), args.cap)
        logger.info("%s: %s", path, report.summary)

        return Outcome({"separated": separated}, _verdict(separated))


class SpecializeCommand(BaseCommand):
    name = "specialize"
    help = "dual graph at a generization"

    def add_arguments(self, parser):
        parser.add_argument("--hom", required=True, metavar="FILE", help="JSON homomorphism of alphabets")

    def run(self, args, path):
        g, record = specialize(load_graph(path), JSONReader(args.hom).hom())

        payload = {
            "graph": graph_to_dict(g),
            "contracted": list(record.contracted),
            "merge": {v: record.merge[v] for v in sorted(record.merge)},
        }
        return Outcome(payload, graph=g)


class FamilyValidateCommand(BaseCommand):
    name = "family-validate"
    help = "check the consistency of a graph family"

    def run(self, args, path):
        report = validate_family(JSONReader(path).family())
        return Outcome({"valid": report.ok, "issues": list(report.issues)}, _verdict(report.ok))


class FamilyVerdictCommand(BaseCommand):
    name = "family-verdict"
    help = "alignment at every point of a family and the global verdict"

    def run(self, args, path):
        verdict = family_verdict(load_family(path), args.cap)

        payload = {
            "separated": verdict.separated,
            "points": {p: report_to_dict(r) for p, r in verdict.reports.items()},
        }
        return Outcome(payload, _verdict(verdict.separated))


class FamilyTransportCommand(BaseCommand):
    name = "family-transport"
    help = "apply a basic refinement at a point and carry it to its generizations"

    def add_arguments(self, parser):
        parser.add_argument("--point", required=True, help="point to refine at")
        parser.add_argument("--spec", required=True, metavar="FILE", help="JSON basic refinement spec")

    def run(self, args, path):
        F = load_family(path)

        if args.point not in F.graphs:
            raise InputError(f"no point {args.point!r} in family", path)

        reader = JSONReader(args.spec)
        spec = reader.spec(F.graphs[args.point].alphabet, reader.load())
        return Outcome(family_to_dict(transport_basic_refinement(F, args.point, spec)))


class VerifyRefinementCommand(BaseCommand):
    name = "verify-refinement"
    help = "check a refinement witness between two graphs"

    def add_arguments(self, parser):
        parser.add_argument("--fine", required=True, metavar="FILE", help="JSON fine graph")
        parser.add_argument("--witness", required=True, metavar="FILE", help="JSON refinement witness")

    def run(self, args, path):
        report = verify_refinement(
            load_graph(path), load_graph(args.fine), JSONReader(args.witness).witness()
        )

        payload = {
            "valid": report.ok,
            "issues": list(report.issues),
            "strict": report.strict,
            "subdivided": list(report.subdivided),
            "only_disconnecting": report.only_disconnecting,
        }
        return Outcome(payload, _verdict(report.ok))


class GenRandomCommand(BaseCommand):
    name = "gen-random"
    help = "draw a seeded random graph"
    takes_input = False

    def add_arguments(self, parser):
        parser.add_argument("--seed", type=int, default=0, help="generator seed (default: 0)")
        parser.add_argument("--vertices", type=int, default=4, help="vertex count (default: 4)")
        parser.add_argument("--edges", type=int, default=6, help="edge count (default: 6)")
        parser.add_argument("--alphabet-size", type=int, default=2, help="number of primes (default: 2)")
        parser.add_argument("--max-exponent", type=int, default=3, help="largest exponent (default: 3)")
        parser.add_argument("--max-support", type=int, default=2, help="most primes in a label (default: 2)")

    def run(self, args, path):
        g = gen_random(
            RandomSpec(
                seed=args.seed,
                vertex_count=args.vertices,
                edge_count=args.edges,
                alphabet_size=args.alphabet_size,
                max_exponent=args.max_exponent,
                max_support=args.max_support,
            )
        )
        return Outcome(graph_to_dict(g), graph=g)


class ExportDotCommand(BaseCommand):
    name = "export-dot"
    help = "render a graph as Graphviz DOT"

    def run(self, args, path):
        g = load_graph(path)
        return Outcome(to_dot(g), graph=g)


class CyclesCommand(BaseCommand):
    name = "cycles"
    help = "list the simple cycles of a graph in canonical form"

    def run(self, args, path):
        found = cycles(load_graph(path), args.cap)

        payload = {
            "count": len(found),
            "cycles": [{"edges": list(c.edges), "vertices": list(c.vertices)} for c in found],
        }
        return Outcome(payload)


class ClassifyCommand(BaseCommand):
    name = "classify"
    help = "disconnecting and non-disconnecting edges"

    def run(self, args, path):
        return Outcome(classify_edges(load_graph(path)))


class TypesCommand(BaseCommand):
    name = "types"
    help = "possible basic refinement types of an edge"

    def add_arguments(self, parser):
        parser.add_argument("--edge", required=True, help="edge id")

    def run(self, args, path):
        label = load_graph(path).edge(args.edge).label

        payload = {
            "edge": args.edge,
            "label": element_to_dict(label),
            "types": [element_to_dict(t) for t in enumerate_types(label)],
        }
        return Outcome(payload)


def positive_int(text: str) -> int:
    value = int(text)

    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")

    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="neron-graphs",
        description="Labelled dual graphs of nodal curves: refinement, alignment "
        "and separatedness of Néron models of Jacobians.",
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="log library events (-v info, -vv debug)",
    )

    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument(
        "--cap",
        type=positive_int,
        default=DEFAULT_CYCLE_CAP,
        help=f"cycle budget (default: {DEFAULT_CYCLE_CAP})",
    )
    shared.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")
    shared.add_argument(
        "--format",
        choices=("json", "dot"),
        default="json",
        help="output format; dot renders the resulting graph",
    )

    batch = argparse.ArgumentParser(add_help=False)
    batch.add_argument("inputs", nargs="*", metavar="FILE", help="input document, - for stdin")
    batch.add_argument("--each", action="store_true", help="run on every FILE independently")
    batch.add_argument(
        "--jobs",
        type=positive_int,
        default=1,
        help="process --each inputs on N threads (default: 1)",
    )

    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    for name, cls in Registry.all().items():
        parents = [shared, batch] if cls.takes_input else [shared]
        p = sub.add_parser(name, parents=parents, help=cls.help, description=cls.help)
        cls().add_arguments(p)

    return parser


@contextmanager
def bus_logging(verbosity: int) -> Iterator[None]:
    """Log library events for the duration of the block."""
    if not verbosity:
        yield
        return

    def on_basic(spec, fine):
        logger.debug("split %s from %s with type %s", spec.edge, spec.oriented_from, spec.type)

    def on_resolved(g, steps):
        logger.info("resolved in %d steps, %d edges", steps, len(g.edges))

    def on_counterexample(w):
        kind = "alignment" if not w.aligned else "strict alignment"
        logger.info("cycle %s refutes %s", list(w.cycle.edges), kind)

    def on_transport(point, spec):
        logger.info("transport at %s: %s", point, "identity" if spec is None else spec_to_dict(spec))

    listeners = {
        "refine.basic": on_basic,
        "refine.resolved": on_resolved,
        "align.counterexample": on_counterexample,
        "family.transport": on_transport,
    }

    for event, fn in listeners.items():
        event_bus.add_listener(event, fn)

    try:
        yield
    finally:
        for event, fn in listeners.items():
            event_bus.remove_listener(event, fn)


def execute(command: BaseCommand, args: argparse.Namespace, path: Optional[str]) -> Tuple[int, Any]:
    """
    Run ``command`` on one input.

    :returns: The exit code and the rendered output, or the error message
        when the code is ``2`` or ``3``.
    """
    try:
        outcome = command.run(args, path)
    except CycleBudgetExceeded as e:
        return BUDGET_EXCEEDED, str(e)
    except NeronGraphsError as e:
        return INPUT_ERROR, str(e)

    if args.format == "dot" and not isinstance(outcome.payload, str):
        if outcome.graph is None:
            return INPUT_ERROR, f"{command.name} has no graph to render as DOT"

        return outcome.code, to_dot(outcome.graph)

    return outcome.code, outcome.payload


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        format="%(name)s: %(levelname)s: %(message)s",
        level=(logging.WARNING, logging.INFO, logging.DEBUG)[min(args.verbose, 2)],
    )

    command = Registry.get(args.command)()
    storage = JSONStorage(args.out)

    if not command.takes_input:
        paths: List[Optional[str]] = [None]
    else:
        paths = list(args.inputs) or ["-"]

        if len(paths) > 1 and not args.each:
            parser.error("several inputs need --each")

    with bus_logging(args.verbose):
        if command.takes_input and args.each:
            with ThreadPoolExecutor(max_workers=args.jobs) as pool:
                results = list(pool.map(lambda p: execute(command, args, p), paths))
        else:
            results = [execute(command, args, paths[0])]

    for path, (code, output) in zip(paths, results):
        if code in (INPUT_ERROR, BUDGET_EXCEEDED):
            logger.error("%s", output)

    if command.takes_input and args.each:
        entries: List[Dict[str, Any]] = []

        for path, (code, output) in zip(paths, results):
            key = "error" if code in (INPUT_ERROR, BUDGET_EXCEEDED) else "result"
            entries.append({"input": path, "exit_code": code, key: output})

        storage.on_result(entries)
    else:
        code, output = results[0]

        if code not in (INPUT_ERROR, BUDGET_EXCEEDED):
            storage.on_result(output)

    try:
        storage.save()
    except OSError as e:
        logger.error("cannot write output: %s", e)
        return INPUT_ERROR

    return max(code for code, _ in results)


if __name__ == "__main__":
    sys.exit(main())

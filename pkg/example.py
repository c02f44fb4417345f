from pathlib import Path
from neron_graphs.align import CycleWitness, neron_separated_verdict
from neron_graphs.dtypes import GraphDict
from neron_graphs.events import event_bus
from neron_graphs.generators import RandomSpec, gen_random
from neron_graphs.graph import LabelledGraph
from neron_graphs.readers.json import JSONReader
from neron_graphs.refine import BasicRefinementSpec, resolve
from neron_graphs.storage.json import JSONStorage, dumps, graph_to_dict, report_to_dict


def on_counterexample(witness: CycleWitness):
    """
    Handler that prints failing cycles to screen.

    In actual use, this could collect the cycles for a report
    """
    print("Cycle:", list(witness.cycle.edges), [str(m) for m in witness.counterexample])


def on_basic(spec: BasicRefinementSpec, fine: LabelledGraph):
    print(f"Split {spec.edge} from {spec.oriented_from}, type {spec.type}")


DIR = Path(__file__).parent

# two components joined by two nodes of thickness u^2 and u^3,
# the first carrying a self-node of thickness v^3
doc = GraphDict(
    alphabet=["u", "v"],
    vertices=["A", "B"],
    edges=[
        {"id": "e1", "ends": ["A", "B"], "label": {"u": 2}},
        {"id": "e2", "ends": ["A", "B"], "label": {"u": 3}},
        {"id": "e3", "ends": ["A", "A"], "label": {"v": 3}},
    ],
)

reader = JSONReader(text=dumps(doc))

# specify file path to store the results
storage = JSONStorage(file=DIR / "results" / "example.json")

# Attach event handlers
event_bus.add_listener("align.counterexample", on_counterexample)
event_bus.add_listener("refine.basic", on_basic)

results = []
graphs = [reader.graph(), gen_random(RandomSpec(seed=7, vertex_count=3, edge_count=5))]

for g in graphs:
    separated, report = neron_separated_verdict(g)
    print(report.summary)

    fine, _, steps = resolve(g)
    print(f"Resolved in {len(steps)} steps")

    results.append(
        {
            "graph": graph_to_dict(g),
            "report": report_to_dict(report),
            "resolved": graph_to_dict(fine),
        }
    )

storage.on_result(results)
storage.save()

"""
Decoding of the JSON documents the package exchanges.

Every failure is an :class:`~neron_graphs.errors.InputError` naming the
document and a location: ``line:column`` for syntax errors, a JSON path such
as ``$.edges[2].label`` for shape errors.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple

from ..dtypes import ReportDict
from ..errors import InputError, NeronGraphsError
from ..family import Correspondence, Cover, GraphFamily
from ..graph import Edge, LabelledGraph
from ..monoid import MonoidElement, MonoidHom, PrimeAlphabet
from ..refine import BasicRefinementSpec, RefinementWitness, VertexImage

_MISSING = object()


class JSONReader:
    """
    Read one JSON document and decode it into package values.

    :param file: Path of the document; ``"-"`` reads standard input.
        Leave ``None`` and pass ``text`` to decode a string.
    :type file: :class:`pathlib.Path` | :class:`str` | None
    :param text: The document itself, when there is no file.
    :type text: :class:`str` | None

    **Example**

    .. code-block:: python

        reader = JSONReader("~/graphs/banana.json")
        g = reader.graph()
        specs = JSONReader("steps.json").specs(g.alphabet)

    The document is read once, on first use, and cached.
    """

    def __init__(
        self,
        file: Optional[Path | str] = None,
        text: Optional[str] = None,
    ) -> None:
        if file is None and text is None:
            raise ValueError("JSONReader needs a file or a text")

        if isinstance(file, str) and file != "-":
            file = Path(file)

        if isinstance(file, Path):
            file = file.expanduser()

        self.file = file
        self.text = text
        self.source = "<stdin>" if file == "-" else str(file) if file else "<string>"
        self._doc: Any = _MISSING

    def error(self, message: str, at: Optional[str] = None) -> InputError:
        return InputError(message, self.source, at)

    def load(self) -> Any:
        """
        The raw decoded document.

        :raises InputError: If the file cannot be read or is not JSON.
        """
        if self._doc is not _MISSING:
            return self._doc

        text = self.text

        if text is None:
            try:
                text = sys.stdin.read() if self.file == "-" else self.file.read_text("utf-8")
            except (OSError, UnicodeDecodeError) as e:
                raise self.error(f"cannot read: {e}") from None

        try:
            self._doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise self.error(e.msg, f"{e.lineno}:{e.colno}") from None

        return self._doc

    # shape helpers

    def _object(self, doc: Any, at: str, required: Tuple[str, ...] = ()) -> Dict[str, Any]:
        if not isinstance(doc, dict):
            raise self.error("expected an object", at)

        for key in required:
            if key not in doc:
                raise self.error(f"missing key {key!r}", at)

        return doc

    def _list(self, doc: Any, at: str) -> List[Any]:
        if not isinstance(doc, list):
            raise self.error("expected an array", at)
        return doc

    def _str(self, doc: Any, at: str) -> str:
        if not isinstance(doc, str) or not doc:
            raise self.error("expected a non-empty string", at)
        return doc

    def _str_list(self, doc: Any, at: str) -> List[str]:
        return [self._str(x, f"{at}[{i}]") for i, x in enumerate(self._list(doc, at))]

    def _bool(self, doc: Any, at: str) -> bool:
        if not isinstance(doc, bool):
            raise self.error("expected a boolean", at)
        return doc

    # package values

    def alphabet(self, doc: Any, at: str = "$") -> PrimeAlphabet:
        try:
            return PrimeAlphabet(tuple(self._str_list(doc, at)))
        except NeronGraphsError as e:
            raise self.error(str(e), at) from None

    def element(self, alphabet: PrimeAlphabet, doc: Any, at: str = "$") -> MonoidElement:
        """
        A monoid element in JSON form; ``{}`` is the identity.

        :raises InputError: On unknown symbols or exponents that are not
            positive integers.
        """
        self._object(doc, at)

        for sym, exp in doc.items():
            if sym not in alphabet:
                raise self.error(f"unknown prime {sym!r}", at)

            if type(exp) is not int or exp < 1:
                raise self.error(f"exponent must be a positive integer, got {exp!r}", f"{at}.{sym}")

        return MonoidElement.of(alphabet, doc)

    def graph(self, doc: Any = _MISSING, at: str = "$") -> LabelledGraph:
        """
        Decode a graph document.

        Only the shape is checked here. Duplicate ids, unit labels and
        connectivity are reported by :func:`~neron_graphs.graph.validate`.
        """
        doc = self.load() if doc is _MISSING else doc
        self._object(doc, at, ("alphabet", "vertices", "edges"))

        alphabet = self.alphabet(doc["alphabet"], f"{at}.alphabet")
        vertices = self._str_list(doc["vertices"], f"{at}.vertices")
        edges = []

        for i, e in enumerate(self._list(doc["edges"], f"{at}.edges")):
            where = f"{at}.edges[{i}]"
            self._object(e, where, ("id", "ends", "label"))

            ends = self._str_list(e["ends"], f"{where}.ends")

            if len(ends) != 2:
                raise self.error("an edge has exactly two ends", f"{where}.ends")

            edges.append(
                Edge(
                    self._str(e["id"], f"{where}.id"),
                    (ends[0], ends[1]),
                    self.element(alphabet, e["label"], f"{where}.label"),
                )
            )

        return LabelledGraph(alphabet, tuple(vertices), tuple(edges))

    def witness(self, doc: Any = _MISSING, at: str = "$") -> RefinementWitness:
        doc = self.load() if doc is _MISSING else doc
        self._object(doc, at, ("edgeMap", "vertexMap"))

        edge_map = self._object(doc["edgeMap"], f"{at}.edgeMap")

        for fine, coarse in edge_map.items():
            self._str(coarse, f"{at}.edgeMap.{fine}")

        vertex_map: Dict[str, VertexImage] = {}

        for fine, image in self._object(doc["vertexMap"], f"{at}.vertexMap").items():
            where = f"{at}.vertexMap.{fine}"
            self._object(image, where)

            if len(image) != 1 or next(iter(image)) not in ("vertex", "edge"):
                raise self.error('expected {"vertex": id} or {"edge": id}', where)

            tag, target = next(iter(image.items()))
            vertex_map[fine] = (tag, self._str(target, f"{where}.{tag}"))

        return RefinementWitness(dict(edge_map), vertex_map)

    def spec(self, alphabet: PrimeAlphabet, doc: Any, at: str = "$") -> BasicRefinementSpec:
        self._object(doc, at, ("edge", "from", "type"))

        return BasicRefinementSpec(
            self._str(doc["edge"], f"{at}.edge"),
            self._str(doc["from"], f"{at}.from"),
            self.element(alphabet, doc["type"], f"{at}.type"),
        )

    def specs(self, alphabet: PrimeAlphabet, doc: Any = _MISSING, at: str = "$") -> List[BasicRefinementSpec]:
        """A list of basic refinement specs, types read over ``alphabet``."""
        doc = self.load() if doc is _MISSING else doc

        return [
            self.spec(alphabet, s, f"{at}[{i}]")
            for i, s in enumerate(self._list(doc, at))
        ]

    def _images(
        self,
        source: PrimeAlphabet,
        target: PrimeAlphabet,
        doc: Any,
        at: str,
    ) -> MonoidHom:
        images = self._object(doc, at)

        for sym in source:
            if sym not in images:
                raise self.error(f"no image for prime {sym!r}", at)

        for sym in images:
            if sym not in source:
                raise self.error(f"image given for unknown prime {sym!r}", at)

        return MonoidHom(
            source,
            target,
            tuple(self.element(target, images[s], f"{at}.{s}") for s in source),
        )

    def hom(self, doc: Any = _MISSING, at: str = "$") -> MonoidHom:
        """A standalone homomorphism with explicit source and target alphabets."""
        doc = self.load() if doc is _MISSING else doc
        self._object(doc, at, ("source", "target", "image"))

        return self._images(
            self.alphabet(doc["source"], f"{at}.source"),
            self.alphabet(doc["target"], f"{at}.target"),
            doc["image"],
            f"{at}.image",
        )

    def correspondence(self, doc: Any, at: str) -> Correspondence:
        self._object(doc, at, ("vertices", "edges"))

        maps = []

        for key in ("vertices", "edges"):
            m = self._object(doc[key], f"{at}.{key}")

            for k, v in m.items():
                self._str(v, f"{at}.{key}.{k}")

            maps.append(dict(m))

        return Correspondence(*maps)

    def family(self, doc: Any = _MISSING, at: str = "$") -> GraphFamily:
        """
        Decode a family document.

        A cover's correspondence comes from its ``"correspondence"`` key or
        from ``"correspondences"[from][to]``; without either it is the
        identity on ids.
        """
        doc = self.load() if doc is _MISSING else doc
        self._object(doc, at, ("points", "covers", "graphs"))

        points = self._str_list(doc["points"], f"{at}.points")

        graphs = {
            p: self.graph(g, f"{at}.graphs.{p}")
            for p, g in self._object(doc["graphs"], f"{at}.graphs").items()
        }

        table: Mapping[str, Any] = self._object(doc.get("correspondences", {}), f"{at}.correspondences")
        covers = []

        for i, c in enumerate(self._list(doc["covers"], f"{at}.covers")):
            where = f"{at}.covers[{i}]"
            self._object(c, where, ("from", "to", "hom"))

            source = self._str(c["from"], f"{where}.from")
            target = self._str(c["to"], f"{where}.to")

            for key, p in (("from", source), ("to", target)):
                if p not in graphs:
                    raise self.error(f"no graph for point {p!r}", f"{where}.{key}")

            hom = self._images(graphs[source].alphabet, graphs[target].alphabet, c["hom"], f"{where}.hom")

            corr = None

            if "correspondence" in c:
                corr = self.correspondence(c["correspondence"], f"{where}.correspondence")
            elif target in table.get(source, {}):
                corr = self.correspondence(
                    table[source][target], f"{at}.correspondences.{source}.{target}"
                )

            covers.append(Cover(source, target, hom, corr))

        commuting = []

        for i, pair in enumerate(self._list(doc.get("commuting", []), f"{at}.commuting")):
            where = f"{at}.commuting[{i}]"
            chains = self._list(pair, where)

            if len(chains) != 2:
                raise self.error("expected a pair of chains", where)

            left, right = (self._str_list(ch, f"{where}[{j}]") for j, ch in enumerate(chains))

            if not left or not right:
                raise self.error("a chain names at least one point", where)

            commuting.append((tuple(left), tuple(right)))

        return GraphFamily(tuple(points), tuple(covers), graphs, tuple(commuting))

    def report(self, doc: Any = _MISSING, at: str = "$") -> ReportDict:
        """Check the shape of an alignment report and return it normalized."""
        doc = self.load() if doc is _MISSING else doc
        self._object(
            doc,
            at,
            ("aligned", "strictly_aligned", "separated", "counterexample", "cycles_inspected", "capped"),
        )

        counterexample = doc["counterexample"]

        if counterexample is not None:
            where = f"{at}.counterexample"
            self._object(counterexample, where, ("cycle", "labels"))

            labels = self._list(counterexample["labels"], f"{where}.labels")

            for j, label in enumerate(labels):
                self._object(label, f"{where}.labels[{j}]")

            counterexample = {
                "cycle": self._str_list(counterexample["cycle"], f"{where}.cycle"),
                "labels": [dict(label) for label in labels],
            }

        count = doc["cycles_inspected"]

        if type(count) is not int or count < 0:
            raise self.error("expected a non-negative integer", f"{at}.cycles_inspected")

        return ReportDict(
            aligned=self._bool(doc["aligned"], f"{at}.aligned"),
            strictly_aligned=self._bool(doc["strictly_aligned"], f"{at}.strictly_aligned"),
            separated=self._bool(doc["separated"], f"{at}.separated"),
            counterexample=counterexample,
            cycles_inspected=count,
            capped=self._bool(doc["capped"], f"{at}.capped"),
        )

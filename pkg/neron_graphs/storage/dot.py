"""
Graphviz DOT export, output only.
"""

from __future__ import annotations

import json

from ..graph import LabelledGraph


def _quote(s: str) -> str:
    # DOT quoted strings escape like JSON for the characters ids may contain
    return json.dumps(s, ensure_ascii=False)


def to_dot(g: LabelledGraph, name: str = "G") -> str:
    """
    Render ``g`` as an undirected DOT graph.

    Every edge carries its id and its label in text form; a loop becomes a
    self-edge ``"A" -- "A"``.

    .. code-block:: text

        graph "G" {
          "A";
          "B";
          "A" -- "B" [id="e1", label="u*v^2"];
        }
    """
    lines = [f"graph {_quote(name)} {{"]
    lines.extend(f"  {_quote(v)};" for v in g.vertices)

    for e in g.edges:
        a, b = e.ends
        lines.append(
            f"  {_quote(a)} -- {_quote(b)} [id={_quote(e.id)}, label={_quote(str(e.label))}];"
        )

    lines.append("}")
    return "\n".join(lines) + "\n"

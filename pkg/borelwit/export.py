import json
import logging
import typing as t

import graphviz

from borelwit.families import LevelGraph

logger = logging.getLogger(__name__)


def level_graph_dot(graph: LevelGraph) -> str:
    """DOT source: one node per binary word, undirected edges, sorted."""
    dot = graphviz.Graph(name=f"g0_level_{graph.n}")
    for vertex in graph.vertices():
        # the empty word needs a printable name
        dot.node(vertex or "e", label=vertex)
    for a, b in graph.edges:
        dot.edge(a or "e", b or "e")
    return dot.source


def dumps(document: t.Any) -> str:
    return json.dumps(document, sort_keys=True)


def level_graph_json(graph: LevelGraph) -> str:
    return dumps(graph.to_json())

"""
DOT emission with graphviz: face lattices, page charts and the suite graph.
DOT output is presentation only and never enters artifact digests.
"""

from pathlib import Path
from typing import Any, Optional

import graphviz

from .logger import LoggerFactory

logger = LoggerFactory.get_logger("dot_visualizer")


def face_lattice_dot(lattice: Any) -> str:
    """Hasse diagram of a permutahedron face lattice, one rank per dimension"""
    dot = graphviz.Digraph(name=f"P{lattice.n}", graph_attr={"rankdir": "BT"},
                           node_attr={"shape": "box", "fontsize": "10"})
    for dim in sorted(lattice.faces):
        with dot.subgraph(name=f"rank_{dim}", graph_attr={"rank": "same"}) as rank:
            for face in lattice.faces[dim]:
                rank.node(face.name(), label=f"{face.name()}\\n(dim {dim})")
    for lower, upper in lattice.covers:
        dot.edge(lower, upper)
    return dot.source


def page_chart_dot(page: Any, title: Optional[str] = None) -> str:
    """Nodes at (n, p) with their dimension, edges for nonzero differentials"""
    dot = graphviz.Digraph(name=title or f"E{page.r}", engine="neato",
                           node_attr={"shape": "circle", "fontsize": "10"})
    support = page.support()
    for n, p in support:
        dot.node(f"{n}_{p}", label=str(page.dim((n, p))), pos=f"{n},{p}!", xlabel=f"({n},{p})")
    for key in support:
        target = page.target(key)
        if page.rank_out(key) and page.dim(target):
            dot.edge(f"{key[0]}_{key[1]}", f"{target[0]}_{target[1]}", label=f"rk {page.rank_out(key)}")
    return dot.source


def suite_graph_dot(compiled_graph: Any) -> str:
    """The compiled langgraph runner as DOT"""
    drawable = compiled_graph.get_graph()
    dot = graphviz.Digraph(name="suite_runner", graph_attr={"rankdir": "LR"}, node_attr={"shape": "box"})
    for node_id in drawable.nodes:
        dot.node(node_id)
    for edge in drawable.edges:
        dot.edge(edge.source, edge.target, style="dashed" if edge.conditional else "solid")
    return dot.source


def save_dot(source: str, path: Path) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(source, encoding="utf-8")
        logger.info(f"DOT written: {path}")
    except Exception as e:
        logger.error(f"Error writing DOT file {path}: {str(e)}")
        raise
    return path

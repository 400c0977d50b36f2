"""DOT text for AR components, one edge line per irreducible map."""
import os
import sys

import networkx as nx

current_dir = os.path.dirname(os.path.abspath(__file__))
parent_dir = os.path.dirname(current_dir)
sys.path.insert(0, parent_dir)


def _node_id(key):
    return "n_" + "_".join(str(x) for x in key)


def emit_dot(graph: nx.DiGraph) -> str:
    name = f"{graph.graph.get('quiver', 'Q')}_{graph.graph.get('side', 'P')}"
    out = [f'digraph "{name}" {{', "  rankdir=LR;"]
    for key in sorted(graph.nodes):
        data = graph.nodes[key]
        node = data.get("node")
        label = node.label() if node is not None else str(key)
        dim = ",".join(str(x) for x in data.get("dim", ()))
        out.append(f'  {_node_id(key)} [label="{label}\\n({dim})"];')
    for u, v in sorted(graph.edges):
        for _ in range(graph.edges[u, v].get("multiplicity", 1)):
            out.append(f"  {_node_id(u)} -> {_node_id(v)};")
    out.append("}")
    return "\n".join(out) + "\n"

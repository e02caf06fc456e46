"""
Edge-list and DOT formats

Edge list:

    bcg <n> <m>
    <n characters over {s,l}>
    u v [*]          m lines, 0-based; '*' marks a strong edge
    v <index> <label>   optional, one per labeled vertex

Blank lines and lines starting with '#' are ignored after the color line.
"""

import logging
import os
from typing import Iterable, List, Optional, Tuple

from .errors import InputError
from .graph import SHORT, BichromaticGraph, Color, ContractedGraph, build_graph

logger = logging.getLogger(__name__)

EDGELIST = 'edgelist'
DOT = 'dot'
FORMATS = (EDGELIST, DOT)

Edge = Tuple[int, int]


def _split(graph):
    if isinstance(graph, ContractedGraph):
        return graph.graph, set(graph.strong_edges())
    return graph, set()


def format_edgelist(graph, strong_edges: Iterable[Edge] = ()) -> str:
    """Serialize a BichromaticGraph (or a ContractedGraph, whose strong edges
    are marked) in the edge-list format"""
    G, strong = _split(graph)
    strong |= {(min(u, v), max(u, v)) for u, v in strong_edges}
    lines = [f"bcg {G.n} {G.edge_count()}", G.color_string()]
    for u, v in G.edges():
        lines.append(f"{u} {v} *" if (u, v) in strong else f"{u} {v}")
    if G.labels is not None:
        lines += [f"v {i} {label}" for i, label in enumerate(G.labels)]
    return '\n'.join(lines) + '\n'


def parse_edgelist(text: str, source: str = '<string>') -> Tuple[BichromaticGraph, List[Edge]]:
    """Parse the edge-list format; returns the graph and its strong edges"""
    raw = text.splitlines()
    numbered = [(i + 1, line.strip()) for i, line in enumerate(raw)]
    content = [(i, line) for i, line in numbered if line and not line.startswith('#')]
    if not content:
        raise InputError(f"{source}: empty edge list")
    lineno, header = content[0]
    parts = header.split()
    if len(parts) != 3 or parts[0] != 'bcg':
        raise InputError(f"{source}:{lineno}: expected 'bcg <n> <m>', got {header!r}")
    try:
        n, m = int(parts[1]), int(parts[2])
    except ValueError:
        raise InputError(f"{source}:{lineno}: vertex and edge counts must be integers")
    rest = content[1:]
    if n > 0:
        if not rest:
            raise InputError(f"{source}: missing color line")
        lineno, color_line = rest[0]
        rest = rest[1:]
        if len(color_line) != n or set(color_line) - {'s', 'l'}:
            raise InputError(f"{source}:{lineno}: color line must be {n} characters over {{s,l}}")
        colors = [Color(c) for c in color_line]
    else:
        colors = []

    edges, strong = [], []
    labels: List[Optional[str]] = [None] * n
    for lineno, line in rest:
        fields = line.split(None, 2)
        if fields[0] == 'v':
            if len(fields) != 3:
                raise InputError(f"{source}:{lineno}: expected 'v <index> <label>'")
            try:
                index = int(fields[1])
            except ValueError:
                raise InputError(f"{source}:{lineno}: bad vertex index {fields[1]!r}")
            if not 0 <= index < n:
                raise InputError(f"{source}:{lineno}: vertex {index} out of range")
            labels[index] = fields[2]
            continue
        fields = line.split()
        if len(fields) not in (2, 3) or (len(fields) == 3 and fields[2] != '*'):
            raise InputError(f"{source}:{lineno}: expected 'u v' or 'u v *', got {line!r}")
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise InputError(f"{source}:{lineno}: endpoints must be integers")
        edges.append((u, v))
        if len(fields) == 3:
            strong.append((min(u, v), max(u, v)))
    if len(edges) != m:
        raise InputError(f"{source}: header announces {m} edges, found {len(edges)}")

    if all(label is None for label in labels):
        final_labels = None
    else:
        final_labels = [label if label is not None else str(i) for i, label in enumerate(labels)]
    name = os.path.basename(source) if source != '<string>' else None
    G = build_graph(n, colors, edges, labels=final_labels, name=name)
    return G, strong


def format_dot(graph, strong_edges: Iterable[Edge] = ()) -> str:
    """DOT export: short vertices are circles, long vertices boxes, strong
    edges bold"""
    G, strong = _split(graph)
    strong |= {(min(u, v), max(u, v)) for u, v in strong_edges}
    name = (G.name or 'G').replace('"', "'")
    lines = [f'graph "{name}" {{', '  node [fontsize=10];']
    for v in range(G.n):
        shape = 'circle' if G.colors[v] is SHORT else 'box'
        label = G.label(v).replace('"', "'")
        lines.append(f'  {v} [label="{label}", shape={shape}];')
    for u, v in G.edges():
        style = ' [style=bold]' if (u, v) in strong else ''
        lines.append(f'  {u} -- {v}{style};')
    lines.append('}')
    return '\n'.join(lines) + '\n'


def format_graph(graph, fmt: str = EDGELIST) -> str:
    if fmt == EDGELIST:
        return format_edgelist(graph)
    if fmt == DOT:
        return format_dot(graph)
    raise InputError(f"Unknown output format {fmt!r}; choose from {', '.join(FORMATS)}")


def read_graph(path: str) -> Tuple[BichromaticGraph, List[Edge]]:
    try:
        with open(path, 'r') as f:
            text = f.read()
    except OSError as e:
        raise InputError(f"Cannot read graph file {path}: {e}")
    G, strong = parse_edgelist(text, source=path)
    logger.debug(f"Read {G!r} from {path}")
    return G, strong


def write_graph(path: str, graph, fmt: str = EDGELIST):
    text = format_graph(graph, fmt)
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, 'w') as f:
        f.write(text)
    logger.info(f"Wrote {fmt} to {path}")

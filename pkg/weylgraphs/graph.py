"""
Bichromatic graphs and the structural operations on them

A BichromaticGraph is a finite simple undirected graph whose vertices are
colored short or long. Adjacency is stored as one integer bitset per vertex;
graphs are immutable once built, and every operation here returns a new graph.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .errors import InputError, UnsupportedInputError

logger = logging.getLogger(__name__)


class Color(Enum):
    SHORT = 's'
    LONG = 'l'

    @classmethod
    def parse(cls, value) -> "Color":
        if isinstance(value, Color):
            return value
        text = str(value).strip().lower()
        if text in ('s', 'short'):
            return cls.SHORT
        if text in ('l', 'long'):
            return cls.LONG
        raise InputError(f"Unknown vertex color: {value!r}")

    def swapped(self) -> "Color":
        return Color.LONG if self is Color.SHORT else Color.SHORT


SHORT = Color.SHORT
LONG = Color.LONG

DISJOINT_UNION = 'disjoint_union'
JOIN = 'join'
CARTESIAN_PRODUCT = 'cartesian_product'

ALL = 'all'
SHORT_ONLY = 'short_only'
LONG_ONLY = 'long_only'


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of `mask` in ascending order"""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


@dataclass(frozen=True)
class VertexSet:
    """Sorted, duplicate-free vertex indices of some host graph"""

    members: Tuple[int, ...]

    @classmethod
    def of(cls, vertices: Iterable[int]) -> "VertexSet":
        return cls(tuple(sorted(set(vertices))))

    @classmethod
    def from_mask(cls, mask: int) -> "VertexSet":
        return cls(tuple(iter_bits(mask)))

    @property
    def mask(self) -> int:
        return mask_of(self.members)

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, v):
        return v in self.members

    def __getitem__(self, i):
        return self.members[i]


class BichromaticGraph:
    """Immutable simple graph with a short/long color on every vertex.

    Equality compares colors and adjacency only; labels, names and the
    origin map are provenance.
    """

    __slots__ = ('colors', 'adj', 'labels', 'name', 'origin')

    def __init__(self, colors: Sequence[Color], adj: Sequence[int],
                 labels: Optional[Sequence[str]] = None, name: Optional[str] = None,
                 origin: Optional[Sequence[int]] = None):
        self.colors = tuple(colors)
        self.adj = tuple(adj)
        self.labels = tuple(labels) if labels is not None else None
        self.name = name
        self.origin = tuple(origin) if origin is not None else None

    @property
    def n(self) -> int:
        return len(self.colors)

    def __len__(self):
        return len(self.colors)

    def __eq__(self, other):
        if not isinstance(other, BichromaticGraph):
            return NotImplemented
        return self.colors == other.colors and self.adj == other.adj

    def __hash__(self):
        return hash((self.colors, self.adj))

    def __repr__(self):
        name = f" {self.name}" if self.name else ""
        return (f"<BichromaticGraph{name} n={self.n} m={self.edge_count()} "
                f"short={self.count(SHORT)} long={self.count(LONG)}>")

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    def vertices(self) -> range:
        return range(self.n)

    def color(self, v: int) -> Color:
        return self.colors[v]

    def label(self, v: int) -> str:
        if self.labels is not None:
            return self.labels[v]
        return str(v)

    def color_mask(self, color: Color) -> int:
        return mask_of(v for v, c in enumerate(self.colors) if c is color)

    def count(self, color: Color) -> int:
        return sum(1 for c in self.colors if c is color)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> List[int]:
        return list(iter_bits(self.adj[v]))

    def is_adjacent(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> Iterator[Tuple[int, int]]:
        for u in range(self.n):
            for v in iter_bits(self.adj[u] >> (u + 1)):
                yield u, u + 1 + v

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def color_string(self) -> str:
        return ''.join(c.value for c in self.colors)

    def with_name(self, name: str) -> "BichromaticGraph":
        return BichromaticGraph(self.colors, self.adj, self.labels, name, self.origin)


def _resolve_colors(n: int, colors) -> List[Color]:
    if colors is None:
        return [LONG] * n
    if isinstance(colors, Color):
        return [colors] * n
    if isinstance(colors, str):
        if colors.lower() in ('short', 'long') or (len(colors) == 1 and n != 1):
            return [Color.parse(colors)] * n
        colors = list(colors)
    resolved = [Color.parse(c) for c in colors]
    if len(resolved) != n:
        raise InputError(f"Expected {n} colors, got {len(resolved)}")
    return resolved


def build_graph(n: int, colors=None, edges: Iterable[Tuple[int, int]] = (),
                labels: Optional[Sequence[str]] = None,
                name: Optional[str] = None) -> BichromaticGraph:
    """Build a bichromatic graph from a vertex count, colors and an edge list.

    `colors` is a sequence of Color / 's' / 'l' values, a single color for
    all vertices, or None for the all-long (monochromatic) case. Duplicate
    edges collapse; loops and out-of-range endpoints raise InputError.
    """
    if n < 0:
        raise InputError(f"Vertex count must be non-negative, got {n}")
    resolved = _resolve_colors(n, colors)
    adj = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(f"Edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise InputError(f"Loop edge at vertex {u}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    if labels is not None:
        labels = [str(x) for x in labels]
        if len(labels) != n:
            raise InputError(f"Expected {n} labels, got {len(labels)}")
        if len(set(labels)) != n:
            raise InputError("Vertex labels must be unique")
    return BichromaticGraph(resolved, adj, labels, name)


def complete(n: int, color: Color = LONG) -> BichromaticGraph:
    full = (1 << n) - 1
    return BichromaticGraph([color] * n, [full ^ (1 << v) for v in range(n)],
                            name=f"K{n}")


def empty(n: int, color: Color = LONG) -> BichromaticGraph:
    return BichromaticGraph([color] * n, [0] * n, name=f"co-K{n}")


def cycle(n: int, color: Color = LONG) -> BichromaticGraph:
    if n < 3:
        raise InputError(f"A cycle needs at least 3 vertices, got {n}")
    return build_graph(n, color, [(i, (i + 1) % n) for i in range(n)], name=f"C{n}")


def path(n: int, color: Color = LONG) -> BichromaticGraph:
    if n < 1:
        raise InputError(f"A path needs at least 1 vertex, got {n}")
    return build_graph(n, color, [(i, i + 1) for i in range(n - 1)], name=f"P{n}")


def _check_vertex(G: BichromaticGraph, v: int):
    if not 0 <= v < G.n:
        raise InputError(f"Vertex {v} is not in a graph on {G.n} vertices")


def induced_subgraph(G: BichromaticGraph, vertices: Iterable[int]) -> BichromaticGraph:
    """Induced subgraph on `vertices`, with `origin` mapping back into G"""
    members = sorted(set(vertices))
    for v in members:
        _check_vertex(G, v)
    index = {v: i for i, v in enumerate(members)}
    keep = mask_of(members)
    adj = []
    for v in members:
        row = 0
        for u in iter_bits(G.adj[v] & keep):
            row |= 1 << index[u]
        adj.append(row)
    labels = [G.labels[v] for v in members] if G.labels is not None else None
    return BichromaticGraph([G.colors[v] for v in members], adj, labels, origin=members)


def local_graph(G: BichromaticGraph, v: int) -> BichromaticGraph:
    """The induced subgraph on the neighbors of v"""
    _check_vertex(G, v)
    return induced_subgraph(G, iter_bits(G.adj[v]))


def common_neighbors(G: BichromaticGraph, S: Iterable[int]) -> VertexSet:
    """Vertices adjacent to every member of S"""
    members = list(S)
    if not members:
        raise InputError("common_neighbors needs a nonempty vertex set")
    common = G.all_mask
    for v in members:
        _check_vertex(G, v)
        common &= G.adj[v]
    return VertexSet.from_mask(common)


def combine(G: BichromaticGraph, H: BichromaticGraph, mode: str) -> BichromaticGraph:
    """Disjoint union, join or cartesian product of two graphs.

    Vertex order is G's block then H's block; product vertices (g, h) are
    ordered lexicographically and take the color of g.
    """
    nG, nH = G.n, H.n
    if mode in (DISJOINT_UNION, JOIN):
        allG, allH = G.all_mask, H.all_mask << nG
        extra_g = allH if mode == JOIN else 0
        extra_h = allG if mode == JOIN else 0
        adj = [row | extra_g for row in G.adj] + [(row << nG) | extra_h for row in H.adj]
        labels = None
        if G.labels is not None and H.labels is not None:
            labels = [f"0:{x}" for x in G.labels] + [f"1:{x}" for x in H.labels]
        sep = ' + ' if mode == JOIN else ' | '
        return BichromaticGraph(G.colors + H.colors, adj, labels,
                                name=f"({G.name}{sep}{H.name})")
    if mode == CARTESIAN_PRODUCT:
        colors, adj, labels = [], [], []
        for g in range(nG):
            for h in range(nH):
                row = 0
                for h2 in iter_bits(H.adj[h]):
                    row |= 1 << (g * nH + h2)
                for g2 in iter_bits(G.adj[g]):
                    row |= 1 << (g2 * nH + h)
                adj.append(row)
                colors.append(G.colors[g])
                labels.append(f"({G.label(g)},{H.label(h)})")
        return BichromaticGraph(colors, adj, labels, name=f"({G.name} x {H.name})")
    raise InputError(f"Unknown combine mode: {mode!r}")


def double(G: BichromaticGraph) -> BichromaticGraph:
    """The composition graph G[K2]: every vertex becomes an adjacent pair"""
    adj = []
    colors = []
    for v in range(G.n):
        base = 0
        for u in iter_bits(G.adj[v]):
            base |= 0b11 << (2 * u)
        adj.append(base | 1 << (2 * v + 1))
        adj.append(base | 1 << (2 * v))
        colors += [G.colors[v]] * 2
    labels = None
    if G.labels is not None:
        labels = [f"{x}{tag}" for x in G.labels for tag in ("'", "''")]
    return BichromaticGraph(colors, adj, labels, name=f"{G.name}[K2]")


def reduced_graph(G: BichromaticGraph) -> Tuple[BichromaticGraph, Tuple[int, ...]]:
    """Quotient by the equal-closed-neighborhood relation.

    Returns the reduced graph and the class index of every vertex. Classes
    are numbered by their smallest vertex.
    """
    class_of: Dict[int, int] = {}
    class_map = []
    reps = []
    for v in range(G.n):
        closed = G.adj[v] | 1 << v
        if closed not in class_of:
            class_of[closed] = len(reps)
            reps.append(v)
        cls = class_of[closed]
        if G.colors[reps[cls]] is not G.colors[v]:
            raise UnsupportedInputError(
                f"Vertices {reps[cls]} and {v} share a closed neighborhood but differ in color")
        class_map.append(cls)
    adj = []
    for r in reps:
        row = 0
        for j, r2 in enumerate(reps):
            if G.adj[r] >> r2 & 1:
                row |= 1 << j
        adj.append(row)
    labels = [G.labels[r] for r in reps] if G.labels is not None else None
    reduced = BichromaticGraph([G.colors[r] for r in reps], adj, labels,
                               name=f"{G.name}*", origin=reps)
    return reduced, tuple(class_map)


def complement(G: BichromaticGraph) -> BichromaticGraph:
    full = G.all_mask
    adj = [full & ~row & ~(1 << v) for v, row in enumerate(G.adj)]
    return BichromaticGraph(G.colors, adj, G.labels, name=f"co-{G.name}")


def swap_colors(G: BichromaticGraph) -> BichromaticGraph:
    """Exchange the roles of short and long vertices"""
    return BichromaticGraph([c.swapped() for c in G.colors], G.adj, G.labels,
                            name=f"swap({G.name})")


def monochromatic(G: BichromaticGraph, color: Color = LONG) -> BichromaticGraph:
    """G with every vertex treated as `color`"""
    return BichromaticGraph([color] * G.n, G.adj, G.labels, name=G.name)


def relabel(G: BichromaticGraph, perm: Sequence[int]) -> BichromaticGraph:
    """Move vertex v to position perm[v]"""
    n = G.n
    if sorted(perm) != list(range(n)):
        raise InputError("relabel needs a permutation of the vertex set")
    colors = [None] * n
    adj = [0] * n
    labels = [None] * n if G.labels is not None else None
    for v in range(n):
        row = 0
        for u in iter_bits(G.adj[v]):
            row |= 1 << perm[u]
        adj[perm[v]] = row
        colors[perm[v]] = G.colors[v]
        if labels is not None:
            labels[perm[v]] = G.labels[v]
    return BichromaticGraph(colors, adj, labels, name=G.name)


def _restrict_mask(G: BichromaticGraph, restrict: str) -> int:
    if restrict == ALL:
        return G.all_mask
    if restrict == SHORT_ONLY:
        return G.color_mask(SHORT)
    if restrict == LONG_ONLY:
        return G.color_mask(LONG)
    raise InputError(f"Unknown component restriction: {restrict!r}")


def _component_masks(G: BichromaticGraph, allowed: int) -> List[int]:
    found = []
    remaining = allowed
    while remaining:
        start = remaining & -remaining
        comp = frontier = start
        while frontier:
            grown = 0
            for v in iter_bits(frontier):
                grown |= G.adj[v]
            frontier = grown & allowed & ~comp
            comp |= frontier
        found.append(comp)
        remaining &= ~comp
    return found


def components(G: BichromaticGraph, restrict: str = ALL) -> List[VertexSet]:
    """Connected components of G, or of its short or long induced subgraph"""
    return [VertexSet.from_mask(m) for m in _component_masks(G, _restrict_mask(G, restrict))]


def is_connected(G: BichromaticGraph) -> bool:
    return len(_component_masks(G, G.all_mask)) <= 1


@dataclass(frozen=True)
class DistanceProfile:
    """All-pairs BFS distances; unreachable pairs and the diameter of a
    disconnected graph are math.inf"""

    distances: Tuple[Tuple[float, ...], ...]
    diameter: float
    connected: bool

    def pairs_at(self, d: int) -> Iterator[Tuple[int, int]]:
        for u, row in enumerate(self.distances):
            for v in range(u + 1, len(row)):
                if row[v] == d:
                    yield u, v


def bfs_layers(G: BichromaticGraph, source: int) -> List[int]:
    """Masks of the vertices at distance 0, 1, 2, ... from source"""
    layers = [1 << source]
    reached = 1 << source
    frontier = reached
    while frontier:
        grown = 0
        for v in iter_bits(frontier):
            grown |= G.adj[v]
        frontier = grown & ~reached
        if frontier:
            layers.append(frontier)
            reached |= frontier
    return layers


def distance_profile(G: BichromaticGraph) -> DistanceProfile:
    rows = []
    diameter = 0
    for s in range(G.n):
        row = [math.inf] * G.n
        for d, layer in enumerate(bfs_layers(G, s)):
            for v in iter_bits(layer):
                row[v] = d
        diameter = max(diameter, max(row))
        rows.append(tuple(row))
    return DistanceProfile(tuple(rows), diameter, diameter != math.inf)


def two_coloring(G: BichromaticGraph) -> Optional[List[int]]:
    """Side 0/1 for every vertex, the smallest vertex of each component on
    side 0; None when G is not bipartite"""
    side = [-1] * G.n
    for comp in _component_masks(G, G.all_mask):
        start = (comp & -comp).bit_length() - 1
        side[start] = 0
        queue = [start]
        for v in queue:
            for u in iter_bits(G.adj[v]):
                if side[u] < 0:
                    side[u] = 1 - side[v]
                    queue.append(u)
                elif side[u] == side[v]:
                    return None
    return side


def is_bipartite(G: BichromaticGraph) -> bool:
    return two_coloring(G) is not None


def to_networkx(G: BichromaticGraph):
    import networkx as nx

    graph = nx.Graph(name=G.name or '')
    for v in range(G.n):
        graph.add_node(v, color=G.colors[v].value, label=G.label(v))
    graph.add_edges_from(G.edges())
    return graph


# ---------------------------------------------------------------------------
# Clique partitions and contractions


@dataclass(frozen=True)
class CliquePartition:
    """A partition of the host's vertices into monochromatic cliques"""

    host: BichromaticGraph
    blocks: Tuple[VertexSet, ...]
    block_colors: Tuple[Color, ...] = field(default=())

    @classmethod
    def from_blocks(cls, host: BichromaticGraph, blocks: Iterable[Iterable[int]]) -> "CliquePartition":
        vsets = tuple(VertexSet.of(b) for b in blocks)
        for i, block in enumerate(vsets):
            cls._check_range(host, i, block)
        colors = tuple(host.colors[b[0]] if len(b) else LONG for b in vsets)
        partition = cls(host, vsets, colors)
        partition.validate()
        return partition

    @staticmethod
    def _check_range(host: BichromaticGraph, i: int, block: VertexSet):
        for v in block:
            if not 0 <= v < host.n:
                raise InputError(f"Block {i} contains vertex {v} outside the host")

    @classmethod
    def singletons(cls, host: BichromaticGraph) -> "CliquePartition":
        return cls.from_blocks(host, ([v] for v in range(host.n)))

    def validate(self):
        seen = 0
        for i, block in enumerate(self.blocks):
            if not len(block):
                raise InputError(f"Block {i} is empty")
            self._check_range(self.host, i, block)
            bmask = block.mask
            if bmask & seen:
                raise InputError(f"Block {i} overlaps an earlier block")
            seen |= bmask
            color = self.host.colors[block[0]]
            for v in block:
                if self.host.colors[v] is not color:
                    raise InputError(f"Block {i} is not monochromatic")
                if (self.host.adj[v] | 1 << v) & bmask != bmask:
                    raise InputError(f"Block {i} does not induce a clique")
        if seen != self.host.all_mask:
            raise InputError("Blocks do not cover the host's vertex set")

    def block_index(self) -> List[int]:
        index = [0] * self.host.n
        for i, block in enumerate(self.blocks):
            for v in block:
                index[v] = i
        return index

    def __len__(self):
        return len(self.blocks)


class ContractedGraph:
    """Block graph with ordinary (multiplicity 1) and strong (multiplicity 2)
    edges.

    `graph` has one vertex per block, colored like the block. `blocks` is
    None when the block graph was given directly rather than produced by
    `contract`.
    """

    def __init__(self, graph: BichromaticGraph, multiplicity: Dict[Tuple[int, int], int],
                 blocks: Optional[Tuple[VertexSet, ...]] = None):
        self.graph = graph
        self.multiplicity = dict(multiplicity)
        self.blocks = blocks

    @classmethod
    def from_graph(cls, graph: BichromaticGraph,
                   strong_edges: Iterable[Tuple[int, int]] = ()) -> "ContractedGraph":
        multiplicity = {(u, v): 1 for u, v in graph.edges()}
        for u, v in strong_edges:
            key = (min(u, v), max(u, v))
            if key not in multiplicity:
                raise InputError(f"Strong edge {key} is not an edge of the block graph")
            multiplicity[key] = 2
        return cls(graph, multiplicity)

    def __len__(self):
        return self.graph.n

    def __eq__(self, other):
        if not isinstance(other, ContractedGraph):
            return NotImplemented
        return self.graph == other.graph and self.multiplicity == other.multiplicity

    def __repr__(self):
        return (f"<ContractedGraph blocks={self.graph.n} edges={len(self.multiplicity)} "
                f"strong={len(self.strong_edges())}>")

    def edge_multiplicity(self, a: int, b: int) -> int:
        return self.multiplicity.get((min(a, b), max(a, b)), 0)

    def is_strong(self, a: int, b: int) -> bool:
        return self.edge_multiplicity(a, b) == 2

    def strong_edges(self) -> List[Tuple[int, int]]:
        return sorted(k for k, m in self.multiplicity.items() if m == 2)

    def bivalency(self, a: int) -> int:
        return sum(self.edge_multiplicity(a, b) for b in self.graph.neighbors(a))

    def bivalencies(self) -> List[int]:
        return [self.bivalency(a) for a in range(self.graph.n)]


def contract(G: BichromaticGraph, partition: CliquePartition) -> ContractedGraph:
    """Contract the blocks of `partition`.

    Blocks X, Y are joined when some cross edge exists; the edge is strong
    when every vertex of X has a neighbor in Y and vice versa. A strong edge
    needs both blocks to have at least two vertices: between singletons the
    condition is plain adjacency, so the contraction by singletons is G.
    """
    if partition.host is not G and partition.host != G:
        raise InputError("The partition belongs to a different host graph")
    partition.validate()
    blocks = partition.blocks
    index = partition.block_index()
    masks = [b.mask for b in blocks]
    multiplicity = {}
    for a, X in enumerate(blocks):
        reach = 0
        for x in X:
            reach |= G.adj[x]
        touched = {index[v] for v in iter_bits(reach & ~masks[a])}
        for b in touched:
            if b < a:
                continue
            Y = blocks[b]
            strong = (len(X) >= 2 and len(Y) >= 2
                      and all(G.adj[x] & masks[b] for x in X)
                      and all(G.adj[y] & masks[a] for y in Y))
            multiplicity[(a, b)] = 2 if strong else 1
    adj = [0] * len(blocks)
    for a, b in multiplicity:
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    quotient = BichromaticGraph(partition.block_colors, adj,
                                name=f"{G.name}/Pi")
    logger.debug(f"Contracted {G.n} vertices into {len(blocks)} blocks "
                 f"({sum(1 for m in multiplicity.values() if m == 2)} strong edges)")
    return ContractedGraph(quotient, multiplicity, blocks)

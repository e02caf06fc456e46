"""
Local recognition toolkit

Local profiles and locally-like predicates, cotriangularity, and the
structure theory of graphs locally like W(F4): 4-clique partitions, their
contractions, mu-parameters, tight connectivity, the twist, the
constructions from bipartite block graphs of bivalency 6 and (2, 6), and
the classifier for candidates of the W(F4) dichotomy.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Tuple, Union

from . import config, metrics
from .errors import InputError, StructureError
from .graph import (LONG, LONG_ONLY, SHORT, SHORT_ONLY, BichromaticGraph, CliquePartition,
                    Color, ContractedGraph, VertexSet, components, contract,
                    distance_profile, is_connected, iter_bits, local_graph,
                    reduced_graph, swap_colors, two_coloring)
from .iso import Certificate, canonical_form
from .roots import root_system, weyl_graph

logger = logging.getLogger(__name__)

SUBSETS = tuple(frozenset(s) for s in combinations((1, 2, 3, 4), 2))
FULL = frozenset((1, 2, 3, 4))

WF4 = 'WF4'
TWISTED_WF4 = 'twisted_WF4'
OTHER = 'other'


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a predicate; `witness` falsifies it when it fails"""

    passed: bool
    witness: Any = None
    detail: str = ''

    def __bool__(self):
        return self.passed


def _map_vertices(func, vertices):
    vertices = list(vertices)
    workers = int(config.get('workers') or 1)
    if workers > 1 and len(vertices) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(func, vertices))
    return [func(v) for v in vertices]


def local_certificates(G: BichromaticGraph) -> List[Certificate]:
    return _map_vertices(lambda v: canonical_form(local_graph(G, v)), range(G.n))


# ---------------------------------------------------------------------------
# Local structure


@dataclass(frozen=True)
class LocalProfile:
    homogeneous: bool
    short_local: Optional[Certificate]
    long_local: Optional[Certificate]
    witness: Optional[Tuple[int, int]] = None


def local_profile(G: BichromaticGraph) -> LocalProfile:
    """Per-color local-graph certificates, or the first pair of same-colored
    vertices (in vertex order) whose local graphs differ"""
    certs = local_certificates(G)
    reference = {}
    witness = None
    for v in range(G.n):
        color = G.colors[v]
        if color not in reference:
            reference[color] = v
        elif witness is None and certs[v] != certs[reference[color]]:
            witness = (reference[color], v)
    short = certs[reference[SHORT]] if SHORT in reference else None
    long_ = certs[reference[LONG]] if LONG in reference else None
    metrics.record_check('local_profile', witness is None)
    return LocalProfile(witness is None, short, long_, witness)


def _as_certificate(value) -> Optional[Certificate]:
    if value is None or isinstance(value, Certificate):
        return value
    return canonical_form(value)


def is_locally_like(G: BichromaticGraph, delta_short, delta_long) -> CheckResult:
    """Every short local graph of G is isomorphic to delta_short and every
    long one to delta_long. The references are graphs, certificates, or
    None for a color that must not occur."""
    targets = {SHORT: _as_certificate(delta_short), LONG: _as_certificate(delta_long)}
    certs = local_certificates(G)
    for v in range(G.n):
        want = targets[G.colors[v]]
        if want is None or certs[v] != want:
            metrics.record_check('locally_like', False)
            return CheckResult(False, v, f"local graph at {G.label(v)} differs")
    metrics.record_check('locally_like', True)
    return CheckResult(True)


@lru_cache(maxsize=None)
def reference_locals(type_label: str, rank: int) -> Tuple[Optional[BichromaticGraph],
                                                          Optional[BichromaticGraph]]:
    """(short local graph, long local graph) of a Weyl graph"""
    W = weyl_graph(root_system(type_label, rank))
    out = []
    for color in (SHORT, LONG):
        v = next((u for u in range(W.n) if W.colors[u] is color), None)
        out.append(local_graph(W, v) if v is not None else None)
    return tuple(out)


def is_locally_like_f4(G: BichromaticGraph) -> CheckResult:
    return is_locally_like(G, *reference_locals('F', 4))


def is_locally_like_b4(G: BichromaticGraph) -> CheckResult:
    return is_locally_like(G, *reference_locals('B', 4))


# ---------------------------------------------------------------------------
# Cotriangular graphs


def is_cotriangular(G: BichromaticGraph) -> CheckResult:
    """Every non-adjacent pair x, y lies in a 3-coclique {x, y, z} such that
    every other vertex is adjacent to all or exactly one of x, y, z"""
    full = G.all_mask
    adj = G.adj
    for x in range(G.n):
        for y in iter_bits(full & ~adj[x] & ~((1 << (x + 1)) - 1)):
            a, b = adj[x], adj[y]
            found = False
            for z in iter_bits(full & ~a & ~b & ~(1 << x) & ~(1 << y)):
                c = adj[z]
                none = ~(a | b | c)
                two = (a & b & ~c) | (a & c & ~b) | (b & c & ~a)
                bad = (none | two) & full & ~(1 << x | 1 << y | 1 << z)
                if not bad:
                    found = True
                    break
            if not found:
                metrics.record_check('cotriangular', False)
                return CheckResult(False, (x, y), "pair lies in no cotriangle")
    metrics.record_check('cotriangular', True)
    return CheckResult(True)


def is_completely_reduced(G: BichromaticGraph) -> bool:
    """Reduced and not the join of two nonempty graphs"""
    if G.n == 0:
        return False
    reduced, _ = reduced_graph(G)
    if reduced.n != G.n:
        return False
    full = G.all_mask
    complement_adj = [full & ~row & ~(1 << v) for v, row in enumerate(G.adj)]
    co = BichromaticGraph(G.colors, complement_adj)
    return is_connected(co)


# ---------------------------------------------------------------------------
# 4-clique structure


def clique_partition(G: BichromaticGraph, k: int = 4) -> CliquePartition:
    """The monochromatic components of G, each required to be a k-clique"""
    blocks = []
    for restrict in (SHORT_ONLY, LONG_ONLY):
        for comp in components(G, restrict):
            mask = comp.mask
            if len(comp) != k or any((G.adj[v] | 1 << v) & mask != mask for v in comp):
                raise StructureError(
                    f"Monochromatic component {list(comp)} is not a {k}-clique", witness=comp)
            blocks.append(comp)
    blocks.sort(key=lambda b: b[0])
    return CliquePartition.from_blocks(G, blocks)


def block_contraction(G: BichromaticGraph, k: int = 4) -> ContractedGraph:
    return contract(G, clique_partition(G, k))


@dataclass
class CliqueAnalysis:
    """Long neighbors of a short 4-clique x_1..x_4 named y_{i,j}"""

    clique: Tuple[int, ...]
    names: Dict[Tuple[int, int], int]
    long_neighbors: VertexSet
    violations: List[str] = field(default_factory=list)


def long_neighbor_count(G: BichromaticGraph, clique: Iterable[int]) -> int:
    """Long vertices adjacent to at least one member of `clique`"""
    reach = 0
    for x in clique:
        reach |= G.adj[x]
    return (reach & G.color_mask(LONG)).bit_count()


def f4_clique_analysis(G: BichromaticGraph, clique: Iterable[int],
                       swap: bool = False) -> CliqueAnalysis:
    """Name the long neighbors of a short 4-clique and check how they relate.

    For each pair i < j the two long common neighbors of x_i, x_j are
    y_{i,j} (lower vertex index) and y_{j,i}; `swap` reverses that choice.
    """
    xs = tuple(sorted(clique))
    if len(xs) != 4:
        raise InputError(f"Expected a 4-clique, got {len(xs)} vertices")
    long_mask = G.color_mask(LONG)
    short_mask = G.color_mask(SHORT)
    violations = []
    names = {}
    for i, j in combinations(range(4), 2):
        common = G.adj[xs[i]] & G.adj[xs[j]]
        longs = list(iter_bits(common & long_mask))
        shorts = list(iter_bits(common & short_mask))
        pair = f"x_{i + 1},x_{j + 1}"
        if len(longs) != 2:
            violations.append(f"{{{pair}}} has {len(longs)} long common neighbors, expected 2")
            continue
        u, v = longs
        if not G.is_adjacent(u, v):
            violations.append(f"the long common neighbors of {{{pair}}} are not adjacent")
        if len(shorts) != 2 or not G.is_adjacent(*shorts):
            violations.append(f"the short common neighbors of {{{pair}}} are not a K2")
        elif any(G.is_adjacent(s, t) for s in shorts for t in longs):
            violations.append(f"the common neighborhood of {{{pair}}} is not K2s + K2l")
        if swap:
            u, v = v, u
        names[(i + 1, j + 1)] = u
        names[(j + 1, i + 1)] = v
    for i, j, k in combinations(range(4), 3):
        if G.adj[xs[i]] & G.adj[xs[j]] & G.adj[xs[k]] & long_mask:
            violations.append(f"x_{i + 1},x_{j + 1},x_{k + 1} have a common long neighbor")
    reach = 0
    for x in xs:
        reach |= G.adj[x]
    long_neighbors = VertexSet.from_mask(reach & long_mask)
    if len(long_neighbors) != 12:
        violations.append(f"{len(long_neighbors)} long vertices at distance 1, expected 12")
    if set(names.values()) != set(long_neighbors):
        violations.append("the long neighbors are not exactly the y_{i,j}")
    for (i, j), (k, l) in combinations(names, 2):
        if not G.is_adjacent(names[(i, j)], names[(k, l)]):
            continue
        if {k, l} != {i, j} and {k, l} & {i, j}:
            violations.append(f"y_{{{i},{j}}} ~ y_{{{k},{l}}} with one shared index")
    return CliqueAnalysis(xs, names, long_neighbors, violations)


def f4_invariant_violations(G: BichromaticGraph) -> List[str]:
    """Counting and clique invariants every graph locally like W(F4) satisfies"""
    violations = []
    short, long_ = G.count(SHORT), G.count(LONG)
    if short != long_:
        violations.append(f"{short} short vs {long_} long vertices")
    if G.n % 8:
        violations.append(f"{G.n} vertices, not divisible by 8")
    if G.n < 24:
        violations.append(f"{G.n} vertices, fewer than 24")
    partition = clique_partition(G, 4)
    swapped = swap_colors(G)
    for block, color in zip(partition.blocks, partition.block_colors):
        host = G if color is SHORT else swapped
        analysis = f4_clique_analysis(host, block)
        violations += [f"{color.name.lower()} clique {list(block)}: {v}"
                       for v in analysis.violations]
    return violations


def alternating_long_count(n: int) -> int:
    """sum_{k=1}^{n-2} (-1)^(k-1) C(n,k)(n-k)(n-k-1): inclusion-exclusion count
    of the long vertices adjacent to a short n-clique of W(B_n)"""
    return sum((-1) ** (k - 1) * comb(n, k) * (n - k) * (n - k - 1) for k in range(1, n - 1))


# ---------------------------------------------------------------------------
# mu-parameters and tightness


@dataclass
class MuReport:
    """Common-neighborhood sizes of the distance-2 pairs"""

    same_type: Dict[Tuple[int, int], int] = field(default_factory=dict)
    mixed: Dict[Tuple[int, int], Tuple[int, int]] = field(default_factory=dict)

    @staticmethod
    def _range(values):
        values = list(values)
        return (min(values), max(values)) if values else None

    @property
    def mu_range(self):
        return self._range(self.same_type.values())

    @property
    def mu_short_range(self):
        return self._range(s for s, _ in self.mixed.values())

    @property
    def mu_long_range(self):
        return self._range(l for _, l in self.mixed.values())

    @property
    def mixed_sum_range(self):
        return self._range(s + l for s, l in self.mixed.values())


def mu_report(G: BichromaticGraph) -> MuReport:
    """mu for same-type distance-2 pairs, (mu_s, mu_l) for mixed ones.

    Same-type pairs must have mu pairwise non-adjacent common neighbors of
    the other color; mixed pairs a common neighborhood that is a perfect
    matching of monochromatic edges.
    """
    check = is_locally_like_f4(G)
    if not check:
        raise StructureError("mu_report needs a graph locally like W(F4)", witness=check.witness)
    report = MuReport()
    for u in range(G.n):
        for v in iter_bits(G.all_mask & ~G.adj[u] & ~((1 << (u + 1)) - 1)):
            common = G.adj[u] & G.adj[v]
            if not common:
                continue
            members = list(iter_bits(common))
            if G.colors[u] is G.colors[v]:
                other = G.color_mask(G.colors[u].swapped())
                mu = len(members)
                if common & ~other or any(G.adj[w] & common for w in members) or not 1 <= mu <= 3:
                    raise StructureError(
                        f"Common neighborhood of {G.label(u)}, {G.label(v)} is not "
                        f"mu pairwise non-adjacent vertices of the other color", witness=(u, v))
                report.same_type[(u, v)] = mu
                continue
            counts = {SHORT: 0, LONG: 0}
            for w in members:
                partner = G.adj[w] & common
                if partner.bit_count() != 1:
                    raise StructureError(
                        f"Common neighborhood of {G.label(u)}, {G.label(v)} is not a matching",
                        witness=(u, v))
                p = partner.bit_length() - 1
                if G.colors[p] is not G.colors[w]:
                    raise StructureError(
                        f"Common neighborhood of {G.label(u)}, {G.label(v)} has a mixed edge",
                        witness=(u, v))
                counts[G.colors[w]] += 1
            mu_s, mu_l = counts[SHORT] // 2, counts[LONG] // 2
            if not 1 <= mu_s + mu_l <= 2:
                raise StructureError(f"mu_s + mu_l = {mu_s + mu_l} for {G.label(u)}, {G.label(v)}",
                                     witness=(u, v))
            report.mixed[(u, v)] = (mu_s, mu_l)
    return report


def is_tightly_connected(G: BichromaticGraph) -> bool:
    """Every long vertex has a neighbor in every short component and vice versa"""
    short_comps = [c.mask for c in components(G, SHORT_ONLY)]
    long_comps = [c.mask for c in components(G, LONG_ONLY)]
    for v in range(G.n):
        targets = short_comps if G.colors[v] is LONG else long_comps
        if any(not G.adj[v] & comp for comp in targets):
            metrics.record_check('tightly_connected', False)
            return False
    metrics.record_check('tightly_connected', True)
    return True


# ---------------------------------------------------------------------------
# Twisting


def _block_index(partition: CliquePartition, block) -> int:
    if isinstance(block, int):
        if not 0 <= block < len(partition):
            raise InputError(f"No block {block}; the partition has {len(partition)}")
        return block
    members = VertexSet.of(block)
    for i, b in enumerate(partition.blocks):
        if b == members:
            return i
    raise InputError(f"{list(members)} is not a block of the 4-clique partition")


def twist(G: BichromaticGraph, X=None, Y=None) -> BichromaticGraph:
    """Swap the pairing between two strongly connected 4-cliques.

    X and Y are block indices of clique_partition(G, 4) or vertex sets; by
    default the first strong edge of the contraction is used. When
    x_1,x_2 ~ y_1,y_2 and x_3,x_4 ~ y_3,y_4 the result has
    x_1,x_2 ~ y_3,y_4 and x_3,x_4 ~ y_1,y_2 instead.
    """
    partition = clique_partition(G, 4)
    contracted = contract(G, partition)
    if X is None and Y is None:
        strong = contracted.strong_edges()
        if not strong:
            raise StructureError("The 4-clique contraction has no strong edge", witness=G.name)
        a, b = strong[0]
    elif X is None or Y is None:
        raise InputError("twist needs both blocks or neither")
    else:
        a, b = _block_index(partition, X), _block_index(partition, Y)
    if not contracted.is_strong(a, b):
        raise StructureError(f"Blocks {a} and {b} are not strongly connected", witness=(a, b))
    bx, by = partition.blocks[a], partition.blocks[b]
    if G.colors[bx[0]] is G.colors[by[0]]:
        raise StructureError(f"Blocks {a} and {b} have the same color", witness=(a, b))
    my = by.mask
    patterns = {}
    for x in bx:
        patterns.setdefault(G.adj[x] & my, []).append(x)
    pair_masks = list(patterns)
    if (len(pair_masks) != 2 or any(m.bit_count() != 2 or len(patterns[m]) != 2 for m in pair_masks)
            or pair_masks[0] & pair_masks[1]):
        raise StructureError(f"Blocks {a} and {b} do not show the two-pair pattern", witness=(a, b))
    p, q = pair_masks
    adj = list(G.adj)
    swap_to = {p: q, q: p}
    for x in bx:
        old = adj[x] & my
        adj[x] = (adj[x] & ~my) | swap_to[old]
    mx = bx.mask
    for y in by:
        row = 0
        for x in bx:
            if adj[x] >> y & 1:
                row |= 1 << x
        adj[y] = (adj[y] & ~mx) | row
    logger.debug(f"Twisted {G.name} at blocks {a} and {b}")
    return BichromaticGraph(G.colors, adj, G.labels, name=f"twist({G.name})")


def all_twists(G: BichromaticGraph) -> List[BichromaticGraph]:
    """One twisted copy per strongly connected block pair"""
    contracted = block_contraction(G)
    return [twist(G, a, b) for a, b in contracted.strong_edges()]


# ---------------------------------------------------------------------------
# Constructions from block graphs


@dataclass
class EdgeLabeling:
    """a(x, y): a 2-subset of {1,2,3,4} for every directed edge of a block graph"""

    labels: Dict[Tuple[int, int], FrozenSet[int]] = field(default_factory=dict)

    def __getitem__(self, edge):
        return self.labels[edge]

    def __setitem__(self, edge, value):
        self.labels[edge] = frozenset(value)

    def __len__(self):
        return len(self.labels)

    def validate(self, blocks: ContractedGraph):
        graph = blocks.graph
        for x in range(graph.n):
            seen = {}
            for y in graph.neighbors(x):
                if (x, y) not in self.labels:
                    raise InputError(f"No label for the edge ({x}, {y})")
                label = self.labels[(x, y)]
                if label not in SUBSETS:
                    raise InputError(f"a({x},{y}) = {sorted(label)} is not a 2-subset of 1..4")
                if label in seen:
                    raise InputError(f"a({x},{y}) = a({x},{seen[label]}) is not injective at {x}")
                seen[label] = y
            for y in graph.neighbors(x):
                if blocks.is_strong(x, y):
                    complement = FULL - self.labels[(x, y)]
                    if complement in seen:
                        raise InputError(f"a({x},{y}) is strong but its complement "
                                         f"a({x},{seen[complement]}) is attained at {x}")


def canonical_labeling(blocks: ContractedGraph) -> EdgeLabeling:
    """Strong neighbors take {1,2}, {1,3}, {1,4} in ascending order; the other
    neighbors take the remaining subsets in lexicographic order, skipping the
    complements of the strong labels"""
    labeling = EdgeLabeling()
    graph = blocks.graph
    for x in range(graph.n):
        neighbors = graph.neighbors(x)
        strong = [y for y in neighbors if blocks.is_strong(x, y)]
        ordinary = [y for y in neighbors if not blocks.is_strong(x, y)]
        if len(strong) > 3:
            raise InputError(f"Block {x} has {len(strong)} strong neighbors, at most 3 allowed")
        used = set()
        for y, label in zip(strong, SUBSETS[:3]):
            labeling[(x, y)] = label
            used |= {label, FULL - label}
        free = [s for s in SUBSETS if s not in used]
        if len(ordinary) > len(free):
            raise InputError(f"Block {x} has too many neighbors to label")
        for y, label in zip(ordinary, free):
            labeling[(x, y)] = label
    return labeling


def _b4_labeling(blocks: ContractedGraph, wide: List[bool]) -> EdgeLabeling:
    """F4 rule on the bivalency-6 side; on the bivalency-2 side a single strong
    neighbor gets {1,2} and two ordinary neighbors get {1,2} and {3,4}"""
    labeling = canonical_labeling(blocks)
    graph = blocks.graph
    for x in range(graph.n):
        if wide[x]:
            continue
        neighbors = graph.neighbors(x)
        for y, label in zip(neighbors, (SUBSETS[0], SUBSETS[5])):
            labeling[(x, y)] = label
    return labeling


def read_labeling(G: BichromaticGraph, partition: Optional[CliquePartition] = None) -> EdgeLabeling:
    """The labeling under which the block construction reproduces G, with
    block members numbered 1..4 in ascending vertex order"""
    partition = partition or clique_partition(G, 4)
    contracted = contract(G, partition)
    labeling = EdgeLabeling()
    blocks = partition.blocks
    for (a, b), multiplicity in sorted(contracted.multiplicity.items()):
        X, Y = blocks[a], blocks[b]
        nbrs = [G.adj[x] & Y.mask for x in X]
        if multiplicity == 2:
            first = nbrs[0]
            A = {i + 1 for i in range(4) if nbrs[i] == first}
            B = {j + 1 for j, y in enumerate(Y) if first >> y & 1}
        else:
            A = {i + 1 for i in range(4) if nbrs[i]}
            B = {j + 1 for j, y in enumerate(Y) if G.adj[y] & X.mask}
        if len(A) != 2 or len(B) != 2:
            raise StructureError(f"Blocks {a} and {b} are not joined by a 2-by-2 pattern",
                                 witness=(a, b))
        labeling[(a, b)] = A
        labeling[(b, a)] = B
    return labeling


def _block_colors(blocks: ContractedGraph) -> List[Color]:
    graph = blocks.graph
    if all(graph.colors[u] is not graph.colors[v] for u, v in graph.edges()):
        return list(graph.colors)
    sides = two_coloring(graph)
    if sides is None:
        raise InputError("The block graph is not bipartite")
    return [SHORT if s == 0 else LONG for s in sides]


def _check_block_graph(blocks: ContractedGraph):
    graph = blocks.graph
    if graph.n == 0 or not is_connected(graph):
        raise InputError("The block graph must be nonempty and connected")
    if two_coloring(graph) is None:
        raise InputError("The block graph is not bipartite")


def _expand(blocks: ContractedGraph, colors: List[Color], labeling: EdgeLabeling,
            name: str) -> BichromaticGraph:
    graph = blocks.graph
    n = 4 * graph.n
    adj = [0] * n
    for a in range(graph.n):
        for i in range(4):
            adj[4 * a + i] |= (0b1111 << (4 * a)) & ~(1 << (4 * a + i))
    for a, b in graph.edges():
        A, B = labeling[(a, b)], labeling[(b, a)]
        strong = blocks.is_strong(a, b)
        for i in range(1, 5):
            for j in range(1, 5):
                if (i in A and j in B) or (strong and i not in A and j not in B):
                    u, v = 4 * a + i - 1, 4 * b + j - 1
                    adj[u] |= 1 << v
                    adj[v] |= 1 << u
    vertex_colors = [colors[a] for a in range(graph.n) for _ in range(4)]
    labels = [f"{graph.label(a)}.{i}" for a in range(graph.n) for i in range(1, 5)]
    return BichromaticGraph(vertex_colors, adj, labels, name=name)


def _verify_round_trip(gamma: BichromaticGraph, blocks: ContractedGraph):
    again = block_contraction(gamma)
    if again.multiplicity != blocks.multiplicity:
        raise StructureError("The 4-clique contraction of the construction differs from "
                             "the block graph", witness=gamma.name)


def _as_blocks(value: Union[BichromaticGraph, ContractedGraph]) -> ContractedGraph:
    if isinstance(value, ContractedGraph):
        return value
    return ContractedGraph.from_graph(value)


def build_locally_f4(blocks, labeling: Optional[EdgeLabeling] = None) -> BichromaticGraph:
    """A graph locally like W(F4) whose 4-clique contraction is `blocks`.

    `blocks` is a connected bipartite ContractedGraph (or plain graph, no
    strong edges) with every bivalency equal to 6. Block a becomes the clique
    on vertices 4a..4a+3; x_i ~ y_j iff (i, j) lies in a(x,y) x a(y,x), or
    the edge is strong and (i, j) lies in the product of the complements.
    """
    blocks = _as_blocks(blocks)
    _check_block_graph(blocks)
    for a, value in enumerate(blocks.bivalencies()):
        if value != 6:
            raise InputError(f"Block {blocks.graph.label(a)} has bivalency {value}, expected 6")
    labeling = labeling if labeling is not None else canonical_labeling(blocks)
    labeling.validate(blocks)
    gamma = _expand(blocks, _block_colors(blocks), labeling,
                    name=f"f4build({blocks.graph.name})")
    check = is_locally_like_f4(gamma)
    if not check:
        raise StructureError(f"Construction is not locally like W(F4) at vertex {check.witness}",
                             witness=check.witness)
    _verify_round_trip(gamma, blocks)
    metrics.graphs_built_total.labels(constructor='f4build').inc()
    logger.info(f"Built {gamma.n}-vertex graph locally like W(F4) over {blocks.graph.n} blocks")
    return gamma


def build_locally_b4(blocks, labeling: Optional[EdgeLabeling] = None) -> BichromaticGraph:
    """A graph locally like W(B4) whose 4-clique contraction is `blocks`, a
    connected bipartite block graph of bivalency (2, 6); the bivalency-6 side
    becomes short"""
    blocks = _as_blocks(blocks)
    _check_block_graph(blocks)
    graph = blocks.graph
    sides = two_coloring(graph)
    values = blocks.bivalencies()
    side_values = [{values[a] for a in range(graph.n) if sides[a] == s} for s in (0, 1)]
    if sorted(map(tuple, side_values)) == [(2,), (6,)]:
        wide_side = 0 if side_values[0] == {6} else 1
    else:
        raise InputError(f"Bivalencies per side are {side_values}, expected (2, 6)")
    wide = [sides[a] == wide_side for a in range(graph.n)]
    colors = [SHORT if w else LONG for w in wide]
    labeling = labeling if labeling is not None else _b4_labeling(blocks, wide)
    labeling.validate(blocks)
    gamma = _expand(blocks, colors, labeling, name=f"b4build({graph.name})")
    check = is_locally_like_b4(gamma)
    if not check:
        raise StructureError(f"Construction is not locally like W(B4) at vertex {check.witness}",
                             witness=check.witness)
    _verify_round_trip(gamma, blocks)
    metrics.graphs_built_total.labels(constructor='b4build').inc()
    logger.info(f"Built {gamma.n}-vertex graph locally like W(B4) over {graph.n} blocks")
    return gamma


# ---------------------------------------------------------------------------
# Classification


@lru_cache(maxsize=None)
def wf4() -> BichromaticGraph:
    return weyl_graph(root_system('F', 4))


@lru_cache(maxsize=None)
def wf4_twisted() -> BichromaticGraph:
    return twist(wf4())


@dataclass
class F4Classification:
    verdict: str
    vertex_count: int
    short_count: int
    long_count: int
    divisible_by_8: bool
    diameter: float
    tightly_connected: bool
    mu: MuReport
    contraction_locally_k3bar: bool
    hypotheses: Dict[str, bool] = field(default_factory=dict)

    def as_dict(self):
        mu_range = self.mu.mu_range
        return {
            'verdict': self.verdict,
            'vertex_count': self.vertex_count,
            'short_count': self.short_count,
            'long_count': self.long_count,
            'divisible_by_8': self.divisible_by_8,
            'diameter': self.diameter,
            'tightly_connected': self.tightly_connected,
            'mu_min': mu_range[0] if mu_range else None,
            'mu_max': mu_range[1] if mu_range else None,
            'mu_short_range': self.mu.mu_short_range,
            'mu_long_range': self.mu.mu_long_range,
            'contraction_locally_k3bar': self.contraction_locally_k3bar,
            **{f"hypothesis.{k}": v for k, v in self.hypotheses.items()},
        }


def _contraction_locally_k3bar(G: BichromaticGraph) -> bool:
    """Each block of the contraction is strongly joined to exactly three
    blocks and to nothing else"""
    contracted = block_contraction(G)
    graph = contracted.graph
    for a in range(graph.n):
        neighbors = graph.neighbors(a)
        if len(neighbors) != 3 or not all(contracted.is_strong(a, b) for b in neighbors):
            return False
        # the neighbors must be pairwise non-adjacent
        if any(graph.adj[b] & graph.adj[a] for b in neighbors):
            return False
    return True


def classify_f4_candidate(G: BichromaticGraph) -> F4Classification:
    """Evaluate every hypothesis of the W(F4) dichotomy on a connected graph
    locally like W(F4) and decide between W(F4), its twisted copy and other"""
    if not is_connected(G):
        comps = components(G)
        raise StructureError("Candidate is not connected", witness=comps[1] if len(comps) > 1 else None)
    check = is_locally_like_f4(G)
    if not check:
        raise StructureError(f"Candidate is not locally like W(F4) at vertex {check.witness}",
                             witness=check.witness)
    profile = distance_profile(G)
    mu = mu_report(G)
    tight = is_tightly_connected(G)
    mu_range = mu.mu_range
    hypotheses = {
        'order_24': G.n == 24,
        'tightly_connected': tight,
        'diameter_2': profile.diameter == 2,
        'mu_3': mu_range == (3, 3),
    }
    verdict = OTHER
    if G.n == 24:
        certificate = canonical_form(G)
        if certificate == canonical_form(wf4()):
            verdict = WF4
        elif certificate == canonical_form(wf4_twisted()):
            verdict = TWISTED_WF4
    if hypotheses['mu_3'] and verdict == OTHER:
        logger.critical(f"{G.name}: mu = 3 everywhere but the graph is neither W(F4) "
                        f"nor its twisted copy")
    result = F4Classification(
        verdict=verdict,
        vertex_count=G.n,
        short_count=G.count(SHORT),
        long_count=G.count(LONG),
        divisible_by_8=G.n % 8 == 0,
        diameter=profile.diameter,
        tightly_connected=tight,
        mu=mu,
        contraction_locally_k3bar=_contraction_locally_k3bar(G),
        hypotheses=hypotheses,
    )
    metrics.record_check('classify_f4', verdict != OTHER)
    logger.info(f"Classified {G.name} ({G.n} vertices) as {verdict}")
    return result

"""
Canonical labeling, isomorphism testing and automorphism groups

The search is individualization-refinement: an equitable partition is
refined from the vertex colors and degrees, then the first smallest
non-singleton cell is split vertex by vertex. Leaves (discrete partitions)
are compared by the refinement trace followed by the relabeled adjacency
rows; the largest leaf is canonical. Equal leaves give automorphisms, which
prune the rest of the tree by orbits and by backjumping.
"""

import logging
import time
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from . import config, metrics
from .errors import ResourceError, WeylGraphError
from .graph import SHORT, BichromaticGraph, VertexSet, iter_bits, mask_of
from .permgroup import cycle_notation, group_order, orbit_finder, orbit_partition

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Certificate:
    """Canonical encoding of a bichromatic graph.

    `encoding` is the color string of the canonically ordered vertices
    followed by the canonically relabeled adjacency rows; `order[p]` is the
    vertex placed at canonical position p. Certificates compare by
    encoding only.
    """

    encoding: bytes
    order: Tuple[int, ...]

    def hex(self) -> str:
        return self.encoding.hex()

    def __eq__(self, other):
        if not isinstance(other, Certificate):
            return NotImplemented
        return self.encoding == other.encoding

    def __hash__(self):
        return hash(self.encoding)

    def __repr__(self):
        digest = self.hex()
        return f"<Certificate n={len(self.order)} {digest[:16]}{'...' if len(digest) > 16 else ''}>"


@dataclass(frozen=True)
class AutSummary:
    order: int
    orbits: Tuple[VertexSet, ...]
    generators: Tuple[Tuple[int, ...], ...]

    def orbit_sizes(self) -> List[int]:
        return [len(o) for o in self.orbits]

    def generator_cycles(self) -> List[str]:
        return [cycle_notation(g) for g in self.generators]


@dataclass
class _Leaf:
    prefix: Tuple[int, ...]
    traces: tuple
    key: tuple
    order: Tuple[int, ...]


def _common_prefix(a, b) -> int:
    k = 0
    for x, y in zip(a, b):
        if x != y:
            break
        k += 1
    return k


def is_isomorphism(G: BichromaticGraph, H: BichromaticGraph, mapping: Sequence[int]) -> bool:
    """Check edge by edge that `mapping` (G vertex -> H vertex) is an
    isomorphism respecting colors"""
    n = G.n
    if H.n != n or len(mapping) != n or sorted(mapping) != list(range(n)):
        return False
    for v in range(n):
        if G.colors[v] is not H.colors[mapping[v]]:
            return False
        row = 0
        for u in iter_bits(G.adj[v]):
            row |= 1 << mapping[u]
        if row != H.adj[mapping[v]]:
            return False
    return True


def is_automorphism(G: BichromaticGraph, perm: Sequence[int]) -> bool:
    return is_isomorphism(G, G, perm)


class _CanonicalSearch:
    def __init__(self, G: BichromaticGraph):
        self.G = G
        self.n = G.n
        self.adj = G.adj
        self.generators: List[Tuple[int, ...]] = []
        self.first: Optional[_Leaf] = None
        self.best: Optional[_Leaf] = None
        self.first_targets: List[List[int]] = []
        self.nodes = 0
        self.leaves = 0

    def run(self):
        cells, trace = self._initial_partition()
        self._search(cells, (), (trace,))
        return self

    def _initial_partition(self):
        groups = {}
        for v in range(self.n):
            key = (0 if self.G.colors[v] is SHORT else 1, self.adj[v].bit_count())
            groups.setdefault(key, []).append(v)
        keys = sorted(groups)
        cells = [groups[k] for k in keys]
        cells, trace = self._refine(cells, deque(mask_of(c) for c in cells))
        return cells, (tuple((k, len(groups[k])) for k in keys), trace, len(cells))

    def _refine(self, cells, queue):
        """Split cells by neighbor counts into queued splitters until the
        partition is equitable. Sub-cells are ordered by ascending count."""
        adj = self.adj
        n = self.n
        trace = []
        while queue and len(cells) < n:
            splitter = queue.popleft()
            i = 0
            while i < len(cells):
                cell = cells[i]
                if len(cell) == 1:
                    i += 1
                    continue
                counts = [(adj[v] & splitter).bit_count() for v in cell]
                low = min(counts)
                if low == max(counts):
                    i += 1
                    continue
                groups = {}
                for v, c in zip(cell, counts):
                    groups.setdefault(c, []).append(v)
                keys = sorted(groups)
                parts = [groups[k] for k in keys]
                cells[i:i + 1] = parts
                trace.append((i, tuple((k, len(groups[k])) for k in keys)))
                for part in parts:
                    queue.append(mask_of(part))
                i += len(parts)
        return cells, tuple(trace)

    @staticmethod
    def _target_cell(cells) -> Optional[int]:
        target = None
        for i, cell in enumerate(cells):
            if len(cell) > 1 and (target is None or len(cell) < len(cells[target])):
                target = i
        return target

    def _stabilizer_orbits(self, prefix):
        fixing = [g for g in self.generators if all(g[x] == x for x in prefix)]
        if not fixing:
            return None
        return orbit_finder(self.n, fixing)

    def _promising(self, traces) -> bool:
        k = len(traces)
        if traces == self.first.traces[:k]:
            return True
        return traces >= self.best.traces[:k]

    def _search(self, cells, prefix, traces):
        """Explore the subtree below a node. Returns the depth of an
        ancestor to resume at, or None to continue normally."""
        self.nodes += 1
        ti = self._target_cell(cells)
        if ti is None:
            return self._leaf(cells, prefix, traces)
        depth = len(prefix)
        if self.first is None:
            self.first_targets.append(sorted(cells[ti]))

        tried = []
        orbits = None
        known = 0
        for v in sorted(cells[ti]):
            if tried and self.generators:
                if known != len(self.generators):
                    orbits = self._stabilizer_orbits(prefix)
                    known = len(self.generators)
                if orbits is not None and any(orbits.find(v) == orbits.find(t) for t in tried):
                    continue
            tried.append(v)
            child = cells[:ti] + [[v], [u for u in cells[ti] if u != v]] + cells[ti + 1:]
            child, trace = self._refine(child, deque([1 << v]))
            child_traces = traces + ((ti, trace, len(child)),)
            if self.first is not None and not self._promising(child_traces):
                continue
            resume = self._search(child, prefix + (v,), child_traces)
            if resume is not None and resume < depth:
                return resume
        return None

    def _relabeled_rows(self, order):
        position = [0] * self.n
        for p, v in enumerate(order):
            position[v] = p
        rows = []
        for v in order:
            row = 0
            for u in iter_bits(self.adj[v]):
                row |= 1 << position[u]
            rows.append(row)
        return tuple(rows)

    def _leaf(self, cells, prefix, traces):
        self.leaves += 1
        order = tuple(cell[0] for cell in cells)
        key = (traces, self._relabeled_rows(order))
        if self.first is None:
            self.first = self.best = _Leaf(prefix, traces, key, order)
            return None
        if key == self.first.key:
            self._record_automorphism(self.first.order, order)
            return _common_prefix(prefix, self.first.prefix)
        if key == self.best.key:
            self._record_automorphism(self.best.order, order)
            return _common_prefix(prefix, self.best.prefix)
        if key > self.best.key:
            self.best = _Leaf(prefix, traces, key, order)
        return None

    def _record_automorphism(self, reference, order):
        gamma = [0] * self.n
        for ref, cur in zip(reference, order):
            gamma[ref] = cur
        gamma = tuple(gamma)
        if not is_automorphism(self.G, gamma):
            logger.error(f"Discarding a non-automorphism found by the search on {self.G!r}")
            return
        self.generators.append(gamma)

    def certificate(self) -> Certificate:
        order = self.best.order
        colors = ''.join(self.G.colors[v].value for v in order).encode('ascii')
        width = (self.n + 7) // 8
        rows = b''.join(row.to_bytes(width, 'big') for row in self.best.key[1])
        return Certificate(colors + b'|' + rows, order)

    def search_order(self) -> int:
        """Product of the orbit lengths along the first path"""
        total = 1
        path = self.first.prefix
        for k, v in enumerate(path):
            orbits = self._stabilizer_orbits(path[:k])
            if orbits is None:
                continue
            root = orbits.find(v)
            total *= sum(1 for u in self.first_targets[k] if orbits.find(u) == root)
        return total


def _check_cap(G: BichromaticGraph, key: str, what: str):
    cap = config.get(key)
    if G.n > cap:
        raise ResourceError(f"{what} is capped at {cap} vertices, got {G.n}")


@lru_cache(maxsize=4096)
def _searched(G: BichromaticGraph) -> _CanonicalSearch:
    started = time.perf_counter()
    search = _CanonicalSearch(G).run()
    elapsed = time.perf_counter() - started
    metrics.canonical_form_seconds.observe(elapsed)
    metrics.search_nodes_total.inc(search.nodes)
    metrics.search_leaves_total.inc(search.leaves)
    metrics.automorphisms_found_total.inc(len(search.generators))
    if G.n >= 64:
        logger.debug(f"Canonical search on {G.n} vertices: {search.nodes} nodes, "
                     f"{search.leaves} leaves, {len(search.generators)} generators, "
                     f"{elapsed:.2f}s")
    return search


def canonical_form(G: BichromaticGraph) -> Certificate:
    """Certificate of G, invariant under relabeling and deterministic"""
    _check_cap(G, 'canonical_max_vertices', "canonical_form")
    return _searched(G).certificate()


def _cheap_invariant(G: BichromaticGraph):
    return sorted((c.value, row.bit_count()) for c, row in zip(G.colors, G.adj))


def are_isomorphic(G: BichromaticGraph, H: BichromaticGraph) -> Optional[Tuple[int, ...]]:
    """A color-preserving isomorphism G -> H as a tuple (mapping[v] is the
    image of v), or None"""
    _check_cap(G, 'canonical_max_vertices', "are_isomorphic")
    _check_cap(H, 'canonical_max_vertices', "are_isomorphic")
    if G.n != H.n or _cheap_invariant(G) != _cheap_invariant(H):
        return None
    cg, ch = canonical_form(G), canonical_form(H)
    if cg != ch:
        return None
    mapping = [0] * G.n
    for vg, vh in zip(cg.order, ch.order):
        mapping[vg] = vh
    mapping = tuple(mapping)
    if not is_isomorphism(G, H, mapping):
        logger.error("Equal certificates produced a map that is not an isomorphism")
        return None
    return mapping


def automorphism_group(G: BichromaticGraph) -> AutSummary:
    """Order, orbits and generators of the color-preserving automorphism group"""
    _check_cap(G, 'automorphism_max_vertices', "automorphism_group")
    search = _searched(G)
    generators = tuple(search.generators)
    order = group_order(G.n, generators)
    expected = search.search_order()
    if G.n and order != expected:
        logger.error(f"Stabilizer chain order {order} disagrees with the search's "
                     f"orbit product {expected}")
        raise WeylGraphError(f"automorphism group order of {G!r} is inconsistent: "
                             f"{order} from the generators, {expected} from the search")
    orbits = tuple(VertexSet(tuple(o)) for o in orbit_partition(G.n, generators))
    return AutSummary(order, orbits, generators)

"""
Crystallographic root systems and their Weyl graphs

Roots are integer vectors. F4 and the E-series are scaled by 2 so their
half-integer coordinates stay integral; orthogonality and length classes
are unaffected by the scaling.
"""

import logging
import math
import random
import re
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import metrics
from .errors import InputError, ResourceError
from .graph import LONG, SHORT, BichromaticGraph, Color, mask_of, swap_colors

logger = logging.getLogger(__name__)

Root = Tuple[int, ...]

MINIMUM_RANK = {'A': 1, 'B': 2, 'C': 2, 'D': 4}
EXCEPTIONAL_RANKS = {'E': (6, 7, 8), 'F': (4,), 'G': (2,)}

E7_NORMAL = (1, 1, 1, 1, 1, 1, 1, 1)
E6_NORMAL = (1, 1, 0, 0, 0, 0, 0, 0)


def check_type(type_label: str, rank: int):
    type_label = str(type_label).upper()
    if type_label in MINIMUM_RANK:
        if rank < MINIMUM_RANK[type_label]:
            raise InputError(f"{type_label}_n needs n >= {MINIMUM_RANK[type_label]}, "
                             f"got {type_label}{rank}")
    elif type_label in EXCEPTIONAL_RANKS:
        if rank not in EXCEPTIONAL_RANKS[type_label]:
            raise InputError(f"There is no root system of type {type_label}{rank}")
    else:
        raise InputError(f"Unknown root system type {type_label!r}")
    return type_label


def parse_type(text: str) -> Tuple[str, int]:
    """'F4' -> ('F', 4), validated"""
    match = re.fullmatch(r'\s*([A-Za-z])_?(\d+)\s*', text)
    if not match:
        raise InputError(f"Cannot read a root system type from {text!r}")
    label, rank = match.group(1).upper(), int(match.group(2))
    return check_type(label, rank), rank


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def is_positive(root: Sequence[int]) -> bool:
    """Lexicographic positivity: the first nonzero coordinate is positive"""
    for x in root:
        if x:
            return x > 0
    return False


def _unit(dim: int, i: int, scale: int = 1) -> List[int]:
    v = [0] * dim
    v[i] = scale
    return v


def _pm_pairs(dim: int, scale: int = 1) -> List[Root]:
    roots = []
    for i, j in combinations(range(dim), 2):
        for si, sj in product((1, -1), repeat=2):
            v = [0] * dim
            v[i], v[j] = si * scale, sj * scale
            roots.append(tuple(v))
    return roots


def _pm_units(dim: int, scale: int = 1) -> List[Root]:
    return [tuple(_unit(dim, i, s * scale)) for i in range(dim) for s in (1, -1)]


def _e8_roots() -> List[Root]:
    roots = _pm_pairs(8, 2)
    for signs in product((1, -1), repeat=8):
        if signs.count(-1) % 2 == 0:
            roots.append(signs)
    return roots


@dataclass(frozen=True)
class RootSystem:
    type_label: str
    rank: int
    ambient_dim: int
    roots: Tuple[Root, ...]
    length_class: Dict[Root, Color] = field(compare=False, hash=False)
    subsystem: Optional[str] = None

    @property
    def name(self) -> str:
        return f"{self.type_label}{self.rank}"

    def __len__(self):
        return len(self.roots)

    def squared_lengths(self) -> List[int]:
        return sorted({dot(r, r) for r in self.roots})

    def count(self, color: Color) -> int:
        return sum(1 for c in self.length_class.values() if c is color)


@dataclass(frozen=True)
class Reflection:
    root: Root
    color: Color


def _classify_lengths(roots: Sequence[Root]) -> Dict[Root, Color]:
    lengths = sorted({dot(r, r) for r in roots})
    if len(lengths) > 2:
        raise InputError(f"A root system has at most two root lengths, found {lengths}")
    short = lengths[0] if len(lengths) == 2 else None
    return {r: SHORT if dot(r, r) == short else LONG for r in roots}


def root_system(type_label: str, rank: int) -> RootSystem:
    """The root system of the given type in standard (scaled) coordinates"""
    type_label = check_type(type_label, rank)
    n = rank
    subsystem = None
    if type_label == 'A':
        dim = n + 1
        roots = [tuple(a - b for a, b in zip(_unit(dim, i), _unit(dim, j)))
                 for i in range(dim) for j in range(dim) if i != j]
    elif type_label == 'B':
        dim = n
        roots = _pm_units(dim) + _pm_pairs(dim)
    elif type_label == 'C':
        dim = n
        roots = _pm_units(dim, 2) + _pm_pairs(dim)
    elif type_label == 'D':
        dim = n
        roots = _pm_pairs(dim)
    elif type_label == 'G':
        dim = 3
        roots = []
        for i, j in combinations(range(3), 2):
            v = [0] * 3
            v[i], v[j] = 1, -1
            roots += [tuple(v), tuple(-x for x in v)]
        for i in range(3):
            v = [-1] * 3
            v[i] = 2
            roots += [tuple(v), tuple(-x for x in v)]
    elif type_label == 'F':
        dim = 4
        roots = _pm_units(4, 2) + list(product((1, -1), repeat=4)) + _pm_pairs(4, 2)
    else:
        dim = 8
        roots = _e8_roots()
        if n <= 7:
            roots = [r for r in roots if dot(r, E7_NORMAL) == 0]
            subsystem = f"E8 roots orthogonal to {E7_NORMAL}"
        if n == 6:
            roots = [r for r in roots if dot(r, E6_NORMAL) == 0]
            subsystem = f"E8 roots orthogonal to {E7_NORMAL} and {E6_NORMAL}"
    roots = sorted(set(roots), reverse=True)
    system = RootSystem(type_label, n, dim, tuple(roots), _classify_lengths(roots), subsystem)
    logger.debug(f"Root system {system.name}: {len(roots)} roots in dimension {dim}")
    return system


def is_crystallographic(system: RootSystem) -> bool:
    """2(a.b)/(b.b) is an integer for all roots a, b"""
    R = np.array(system.roots, dtype=np.int64)
    gram = R @ R.T
    norms = np.diag(gram)
    return bool(np.all((2 * gram) % norms[np.newaxis, :] == 0))


def is_closed_under_negation(system: RootSystem) -> bool:
    present = set(system.roots)
    return all(tuple(-x for x in r) in present for r in system.roots)


def reflections(system: RootSystem) -> List[Reflection]:
    return [Reflection(r, system.length_class[r]) for r in system.roots if is_positive(r)]


def weyl_graph(system: RootSystem) -> BichromaticGraph:
    """Commuting graph of the reflections: s_a ~ s_b iff a.b = 0"""
    refl = reflections(system)
    R = np.array([r.root for r in refl], dtype=np.int64).reshape(len(refl), system.ambient_dim)
    gram = R @ R.T
    adj = [mask_of(j for j in np.flatnonzero(gram[i] == 0).tolist() if j != i)
           for i in range(len(refl))]
    labels = ['(' + ','.join(map(str, r.root)) + ')' for r in refl]
    name = f"W({system.name})"
    if system.subsystem:
        name += f" [{system.subsystem}]"
    metrics.graphs_built_total.labels(constructor='weyl').inc()
    logger.debug(f"Built {name} on {len(refl)} vertices")
    return BichromaticGraph([r.color for r in refl], adj, labels, name=name)


def _model_vertices(type_label: str, n: int):
    if type_label == 'A':
        return [(i, j) for i in range(1, n + 2) for j in range(i + 1, n + 2)]
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    if type_label == 'D':
        pairs = [(i, j) for i, j in pairs if i != j]
    return pairs


def combinatorial_weyl(type_label: str, n: int) -> BichromaticGraph:
    """The index-pair model y_{i,j} of W(A_n), W(B_n), W(C_n) or W(D_n).

    A: pairs i < j <= n+1, adjacent iff disjoint. B: all pairs 1 <= i, j <= n
    with y_{i,i} short, y_{i,j} ~ y_{k,l} iff {i,j} and {k,l} are disjoint or
    (k,l) = (j,i). C swaps the colors of B; D drops the diagonal of B.
    """
    type_label = check_type(type_label, n)
    if type_label not in MINIMUM_RANK:
        raise InputError(f"No combinatorial model for type {type_label}")
    vertices = _model_vertices(type_label, n)
    adj = []
    for (i, j) in vertices:
        row = 0
        for b, (k, l) in enumerate(vertices):
            if (i, j) == (k, l):
                continue
            if not {i, j} & {k, l} or (type_label != 'A' and (k, l) == (j, i)):
                row |= 1 << b
        adj.append(row)
    colors = [SHORT if type_label in ('B', 'C') and i == j else LONG for i, j in vertices]
    labels = [f"y_{{{i},{j}}}" for i, j in vertices]
    graph = BichromaticGraph(colors, adj, labels, name=f"model:{type_label}{n}")
    if type_label == 'C':
        graph = swap_colors(graph).with_name(f"model:C{n}")
    metrics.graphs_built_total.labels(constructor='model').inc()
    return graph


# ---------------------------------------------------------------------------
# Reflection matrices


def matrix_scale(system: RootSystem) -> int:
    """Smallest d making d * s_a an integer matrix for every root a"""
    scale = 1
    for r in system.roots:
        norm = dot(r, r)
        entries = math.gcd(*[x * y for x in r for y in r if x * y])
        scale = math.lcm(scale, norm // math.gcd(norm, 2 * entries))
    return scale


def reflection_matrix(root: Sequence[int], scale: int = 1) -> np.ndarray:
    """scale * s_a as an integer matrix, s_a(v) = v - 2 (a.v)/(a.a) a"""
    a = np.array(root, dtype=np.int64)
    norm = int(a @ a)
    outer = 2 * scale * np.outer(a, a)
    if np.any(outer % norm):
        raise InputError(f"scale {scale} does not clear the denominators of s_{tuple(root)}")
    return scale * np.eye(len(a), dtype=np.int64) - outer // norm


def weyl_group_order(system: RootSystem, limit: int = 100000) -> int:
    """Order of the group generated by the reflection matrices, by closure"""
    scale = matrix_scale(system)
    gens = [reflection_matrix(r.root, scale) for r in reflections(system)]
    identity = scale * np.eye(system.ambient_dim, dtype=np.int64)
    seen = {identity.tobytes()}
    frontier = [identity]
    while frontier:
        grown = []
        for M in frontier:
            for S in gens:
                P = (M @ S) // scale
                key = P.tobytes()
                if key not in seen:
                    seen.add(key)
                    grown.append(P)
                    if len(seen) > limit:
                        raise ResourceError(f"W({system.name}) has more than {limit} elements")
        frontier = grown
    return len(seen)


def commutation_agrees(system: RootSystem, pairs: Optional[Sequence[Tuple[int, int]]] = None,
                       sample: Optional[int] = None, seed: int = 0) -> bool:
    """Check that two distinct reflections commute as matrices exactly when
    their roots are orthogonal.

    Checks `pairs` (reflection indices) when given, else `sample` random
    pairs, else every pair.
    """
    refl = reflections(system)
    scale = matrix_scale(system)
    mats = [reflection_matrix(r.root, scale) for r in refl]
    if pairs is None:
        every = list(combinations(range(len(refl)), 2))
        pairs = random.Random(seed).sample(every, sample) if sample else every
    agrees = True
    for i, j in pairs:
        commute = np.array_equal(mats[i] @ mats[j], mats[j] @ mats[i])
        orthogonal = dot(refl[i].root, refl[j].root) == 0
        if commute != orthogonal:
            logger.warning(f"{system.name}: reflections {refl[i].root} and {refl[j].root} "
                           f"commute={commute} but orthogonal={orthogonal}")
            agrees = False
    return agrees


def reflection_conjugation_action(system: RootSystem) -> List[Tuple[int, ...]]:
    """For each reflection s_a, the permutation s_b -> s_a s_b s_a = s_{s_a(b)}
    of the reflections, indexed like weyl_graph's vertices"""
    refl = reflections(system)
    index = {r.root: i for i, r in enumerate(refl)}
    actions = []
    for a in refl:
        norm = dot(a.root, a.root)
        perm = []
        for b in refl:
            c = 2 * dot(a.root, b.root) // norm
            image = tuple(y - c * x for x, y in zip(a.root, b.root))
            if not is_positive(image):
                image = tuple(-x for x in image)
            perm.append(index[image])
        actions.append(tuple(perm))
    return actions

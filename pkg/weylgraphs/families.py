"""
Kneser graphs and the symplectic / quadric graphs over GF(2)

Vectors of F_2^{2n} are ints; coordinate x_{2i-1} is bit 2(i-1) and x_{2i}
is bit 2(i-1)+1, so the hyperbolic pairs of the symplectic form sit in
adjacent bits.
"""

import logging
from dataclasses import dataclass
from itertools import combinations

from . import config, metrics
from .errors import InputError, ResourceError
from .graph import LONG, BichromaticGraph, mask_of

logger = logging.getLogger(__name__)

PLUS = '+'
MINUS = '-'


def kneser(n: int, k: int) -> BichromaticGraph:
    """K(n, k): k-subsets of {1..n} in lexicographic order, adjacent iff disjoint"""
    if k < 1:
        raise InputError(f"Kneser subset size must be at least 1, got {k}")
    if k > n:
        raise InputError(f"Kneser graph K({n},{k}) needs k <= n")
    subsets = list(combinations(range(1, n + 1), k))
    masks = [mask_of(s) for s in subsets]
    adj = []
    for i, a in enumerate(masks):
        adj.append(mask_of(j for j, b in enumerate(masks) if not a & b))
    labels = ['{' + ','.join(map(str, s)) + '}' for s in subsets]
    metrics.graphs_built_total.labels(constructor='kneser').inc()
    logger.debug(f"Built K({n},{k}) on {len(subsets)} vertices")
    return BichromaticGraph([LONG] * len(subsets), adj, labels, name=f"K({n},{k})")


def _pair_mask(n: int) -> int:
    """Bits x_1, x_3, x_5, ... of F_2^{2n}"""
    return int('01' * n, 2) if n else 0


@dataclass(frozen=True)
class F2Vector:
    """A vector of F_2^{2n}"""

    bits: int
    n: int

    def __post_init__(self):
        if not 0 <= self.bits < 1 << (2 * self.n):
            raise InputError(f"{self.bits} is not a vector of F_2^{2 * self.n}")

    def coordinates(self):
        return [self.bits >> i & 1 for i in range(2 * self.n)]

    def __str__(self):
        return ''.join(map(str, self.coordinates()))

    def __add__(self, other: "F2Vector") -> "F2Vector":
        return F2Vector(self.bits ^ other.bits, self.n)


def _swap_pairs(x: int, n: int) -> int:
    low = _pair_mask(n)
    return ((x & low) << 1) | ((x >> 1) & low)


def symplectic_form(x: int, y: int, n: int) -> int:
    """B(x, y) = sum_i x_{2i-1} y_{2i} + x_{2i} y_{2i-1} mod 2"""
    return (x & _swap_pairs(y, n)).bit_count() & 1


def quadratic_form(x: int, n: int, sign: str = PLUS) -> int:
    """Q+(x) = sum_i x_{2i-1} x_{2i}; Q- adds x_{2n-1} + x_{2n}, which makes
    the last hyperbolic pair anisotropic. Both polarize to B."""
    value = (x & (x >> 1) & _pair_mask(n)).bit_count() & 1
    if _parse_sign(sign) == MINUS:
        value ^= (x >> (2 * n - 2) & 1) ^ (x >> (2 * n - 1) & 1)
    return value


def _parse_sign(sign) -> str:
    if sign in (PLUS, 1, '+1', 'plus'):
        return PLUS
    if sign in (MINUS, -1, '-1', 'minus'):
        return MINUS
    raise InputError(f"Quadric sign must be + or -, got {sign!r}")


def _check_dimension(n: int):
    if n < 1:
        raise InputError(f"Half-dimension must be at least 1, got {n}")
    cap = config.get('symplectic_max_half_dimension')
    if n > cap:
        raise ResourceError(f"Half-dimension {n} exceeds the cap of {cap} "
                            f"({(1 << (2 * n)) - 1} vertices)")


def _perp_graph(vectors, n: int, name: str) -> BichromaticGraph:
    adj = []
    for i, x in enumerate(vectors):
        row = 0
        for j, y in enumerate(vectors):
            if i != j and not symplectic_form(x, y, n):
                row |= 1 << j
        adj.append(row)
    labels = [str(F2Vector(x, n)) for x in vectors]
    return BichromaticGraph([LONG] * len(vectors), adj, labels, name=name)


def symplectic_graph(n: int) -> BichromaticGraph:
    """Sp_2n(2): nonzero vectors of F_2^{2n} in ascending integer order,
    x ~ y iff B(x, y) = 0 and x != y"""
    _check_dimension(n)
    graph = _perp_graph(range(1, 1 << (2 * n)), n, f"Sp{2 * n}(2)")
    metrics.graphs_built_total.labels(constructor='sp').inc()
    logger.debug(f"Built {graph.name} on {graph.n} vertices")
    return graph


def nonsingular_vectors(n: int, sign: str = PLUS):
    return [x for x in range(1, 1 << (2 * n)) if quadratic_form(x, n, sign)]


def quadric_graph(n: int, sign: str = PLUS) -> BichromaticGraph:
    """N^sign_2n(2): the induced subgraph of Sp_2n(2) on the vectors that are
    non-singular under Q^sign"""
    if n < 2:
        raise InputError(f"Quadric graphs need half-dimension at least 2, got {n}")
    _check_dimension(n)
    sign = _parse_sign(sign)
    graph = _perp_graph(nonsingular_vectors(n, sign), n, f"N{sign}{2 * n}(2)")
    metrics.graphs_built_total.labels(constructor='quadric').inc()
    logger.debug(f"Built {graph.name} on {graph.n} vertices")
    return graph

"""
Small permutation-group helpers: orbits, a deterministic Schreier-Sims
order computation, and cycle notation.

Permutations are tuples p with p[x] the image of x; (p * q)[x] = p[q[x]],
so q acts first.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

Perm = Tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(n))


def is_identity(p: Sequence[int]) -> bool:
    return all(x == i for i, x in enumerate(p))


def compose(p: Sequence[int], q: Sequence[int]) -> Perm:
    return tuple(p[x] for x in q)


def inverse(p: Sequence[int]) -> Perm:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def cycle_notation(p: Sequence[int]) -> str:
    seen = set()
    out = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cycle = [i]
        seen.add(i)
        j = p[i]
        while j != i:
            seen.add(j)
            cycle.append(j)
            j = p[j]
        out.append('(' + ' '.join(map(str, cycle)) + ')')
    return ''.join(out) if out else '()'


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb


def orbit_finder(n: int, generators: Sequence[Sequence[int]]) -> _UnionFind:
    uf = _UnionFind(n)
    for g in generators:
        for x in range(n):
            uf.union(x, g[x])
    return uf


def orbit_partition(n: int, generators: Sequence[Sequence[int]]) -> List[List[int]]:
    """Orbits of the generated group, each sorted, ordered by smallest point"""
    uf = orbit_finder(n, generators)
    orbits: Dict[int, List[int]] = {}
    for x in range(n):
        orbits.setdefault(uf.find(x), []).append(x)
    return sorted(orbits.values(), key=lambda o: o[0])


def first_moved(p: Sequence[int]) -> int:
    return next(x for x, y in enumerate(p) if x != y)


class _Level:
    __slots__ = ('base', 'gens', 'transversal', 'inverses', 'done')

    def __init__(self, base: int, n: int):
        self.base = base
        # strong generators fixing the base points of every earlier level
        self.gens: List[Perm] = []
        # point -> element mapping the base point to it, and its inverse
        self.transversal: Dict[int, Perm] = {base: identity(n)}
        self.inverses: Dict[int, Perm] = {base: identity(n)}
        # (orbit point, generator index) pairs whose Schreier generator was sifted
        self.done = set()

    def close(self):
        frontier = list(self.transversal)
        while frontier:
            new = []
            for x in frontier:
                ux = self.transversal[x]
                for s in self.gens:
                    y = s[x]
                    if y not in self.transversal:
                        uy = compose(s, ux)
                        self.transversal[y] = uy
                        self.inverses[y] = inverse(uy)
                        new.append(y)
            frontier = new


class StabilizerChain:
    """Deterministic Schreier-Sims.

    Level i holds the strong generators fixing the first i base points and the
    orbit of base point i under them. A Schreier generator of level i is sifted
    from level i + 1; a non-trivial residue that drops out at level j becomes a
    strong generator of levels i + 1..j, and testing resumes at level j. Each
    (point, generator) pair is sifted once: transversal entries are never
    replaced, so a pair that sifted to the identity keeps doing so.
    """

    def __init__(self, n: int, generators: Sequence[Sequence[int]] = ()):
        self.n = n
        self.levels: List[_Level] = []
        for g in generators:
            g = tuple(g)
            if not is_identity(g):
                self._add_strong(0, g)
        self._complete()

    def _add_strong(self, i: int, g: Perm):
        """Add g, which fixes the base points of levels < i, to levels i.. up
        to the first one whose base point it moves (a new level if none)."""
        while True:
            if i == len(self.levels):
                self.levels.append(_Level(first_moved(g), self.n))
            level = self.levels[i]
            level.gens.append(g)
            level.close()
            if g[level.base] != level.base:
                return
            i += 1

    def strip(self, g: Perm, i: int = 0) -> Tuple[Perm, int]:
        """Sift g through levels i..; the residue and the level it stopped at"""
        while i < len(self.levels):
            level = self.levels[i]
            u_inv = level.inverses.get(g[level.base])
            if u_inv is None:
                return g, i
            g = compose(u_inv, g)
            i += 1
        return g, i

    def contains(self, g: Sequence[int]) -> bool:
        residue, _ = self.strip(tuple(g))
        return is_identity(residue)

    def _test_level(self, i: int) -> Optional[int]:
        level = self.levels[i]
        for x in list(level.transversal):
            ux = level.transversal[x]
            for k, s in enumerate(level.gens):
                if (x, k) in level.done:
                    continue
                level.done.add((x, k))
                h = compose(level.inverses[s[x]], compose(s, ux))
                residue, j = self.strip(h, i + 1)
                if not is_identity(residue):
                    self._add_strong(i + 1, residue)
                    return j
        return None

    def _complete(self):
        i = len(self.levels) - 1
        while i >= 0:
            j = self._test_level(i)
            i = i - 1 if j is None else j

    def order(self) -> int:
        total = 1
        for level in self.levels:
            total *= len(level.transversal)
        return total

    def base(self) -> List[int]:
        return [level.base for level in self.levels]


def group_order(n: int, generators: Sequence[Sequence[int]]) -> int:
    return StabilizerChain(n, generators).order()

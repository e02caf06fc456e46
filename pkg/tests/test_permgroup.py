import pytest
from hypothesis import given, settings, strategies as st

from weylgraphs.permgroup import (StabilizerChain, compose, cycle_notation, group_order,
                                  identity, inverse, is_identity, orbit_partition)


def cycle_perm(n, *cycles):
    p = list(range(n))
    for c in cycles:
        for a, b in zip(c, c[1:] + c[:1]):
            p[a] = b
    return tuple(p)


class TestPermutations:
    def test_compose_acts_right_first(self):
        p = cycle_perm(3, [0, 1])
        q = cycle_perm(3, [1, 2])
        # q sends 1 -> 2, then p fixes 2
        assert compose(p, q)[1] == 2
        assert compose(p, q)[0] == 1

    def test_inverse(self):
        p = cycle_perm(5, [0, 3, 1], [2, 4])
        assert is_identity(compose(p, inverse(p)))
        assert is_identity(compose(inverse(p), p))

    def test_cycle_notation(self):
        assert cycle_notation(cycle_perm(5, [0, 3, 1], [2, 4])) == '(0 3 1)(2 4)'
        assert cycle_notation(identity(4)) == '()'


class TestOrbits:
    def test_partition(self):
        gens = [cycle_perm(6, [0, 1]), cycle_perm(6, [1, 2]), cycle_perm(6, [4, 5])]
        assert orbit_partition(6, gens) == [[0, 1, 2], [3], [4, 5]]

    def test_trivial_group(self):
        assert orbit_partition(3, []) == [[0], [1], [2]]


class TestGroupOrder:
    @pytest.mark.parametrize('n', range(2, 10))
    def test_symmetric_group(self, n):
        gens = [cycle_perm(n, [0, 1]), cycle_perm(n, list(range(n)))]
        order = 1
        for k in range(2, n + 1):
            order *= k
        assert group_order(n, gens) == order

    def test_cyclic_group(self):
        assert group_order(7, [cycle_perm(7, list(range(7)))]) == 7

    def test_dihedral_group(self):
        n = 6
        rotation = cycle_perm(n, list(range(n)))
        reflection = tuple((-i) % n for i in range(n))
        assert group_order(n, [rotation, reflection]) == 2 * n

    def test_alternating_group(self):
        gens = [cycle_perm(5, [0, 1, 2]), cycle_perm(5, [0, 1, 2, 3, 4])]
        assert group_order(5, gens) == 60

    def test_empty_generator_list(self):
        assert group_order(4, []) == 1

    def test_base_points_are_moved(self):
        chain = StabilizerChain(4, [cycle_perm(4, [2, 3])])
        assert chain.base() == [2]

    @settings(max_examples=30, deadline=None)
    @given(st.lists(st.permutations(list(range(5))), min_size=1, max_size=3))
    def test_order_matches_closure(self, gens):
        gens = [tuple(g) for g in gens]
        group = {identity(5)}
        frontier = list(group)
        while frontier:
            new = []
            for g in frontier:
                for s in gens:
                    h = compose(s, g)
                    if h not in group:
                        group.add(h)
                        new.append(h)
            frontier = new
        assert group_order(5, gens) == len(group)

    def test_generator_fixing_first_base_point(self):
        # the second generator fixes 0, so it belongs below level 0 as well
        gens = [cycle_perm(8, [0, 1]), cycle_perm(8, [1, 2, 3, 4, 5, 6, 7])]
        assert group_order(8, gens) == 40320

    def test_wreath_product(self):
        # S2 wr S3 on six points
        gens = [cycle_perm(6, [0, 1]), cycle_perm(6, [0, 2, 4], [1, 3, 5]),
                cycle_perm(6, [0, 2], [1, 3])]
        assert group_order(6, gens) == 48

    def test_membership(self):
        chain = StabilizerChain(5, [cycle_perm(5, [0, 1, 2]), cycle_perm(5, [0, 1, 2, 3, 4])])
        assert chain.contains(cycle_perm(5, [0, 1], [2, 3]))
        assert not chain.contains(cycle_perm(5, [0, 1]))

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.permutations(list(range(7))), min_size=2, max_size=4))
    def test_order_matches_closure_on_seven_points(self, gens):
        gens = [tuple(g) for g in gens]
        group = {identity(7)}
        frontier = list(group)
        while frontier:
            new = []
            for g in frontier:
                for s in gens:
                    h = compose(s, g)
                    if h not in group:
                        group.add(h)
                        new.append(h)
            frontier = new
        assert group_order(7, gens) == len(group)

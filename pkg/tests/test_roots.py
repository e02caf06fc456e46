import numpy as np
import pytest

from weylgraphs.errors import InputError, ResourceError
from weylgraphs.families import kneser
from weylgraphs.graph import LONG, SHORT, components, double, monochromatic, swap_colors
from weylgraphs.iso import are_isomorphic, is_automorphism
from weylgraphs.permgroup import group_order
from weylgraphs.recognition import local_profile
from weylgraphs.roots import (combinatorial_weyl, commutation_agrees, dot,
                              is_closed_under_negation, is_crystallographic, matrix_scale,
                              parse_type, reflection_conjugation_action, reflection_matrix,
                              reflections, root_system, weyl_graph, weyl_group_order)

ROOT_CENSUS = ([('A', n, n * (n + 1)) for n in range(1, 8)]
               + [(t, n, 2 * n * n) for t in 'BC' for n in range(2, 7)]
               + [('D', n, 2 * n * (n - 1)) for n in range(4, 8)]
               + [('E', 6, 72), ('E', 7, 126), ('E', 8, 240), ('F', 4, 48), ('G', 2, 12)])

LEGAL = [(t, n) for t, n, _ in ROOT_CENSUS]


class TestRootSystems:
    @pytest.mark.parametrize('label,rank,count', ROOT_CENSUS)
    def test_census(self, label, rank, count):
        system = root_system(label, rank)
        assert len(system) == count
        assert len(reflections(system)) == count // 2
        assert is_closed_under_negation(system)
        assert is_crystallographic(system)
        assert len(system.squared_lengths()) == (2 if label in 'BCFG' else 1)

    def test_f4(self):
        system = root_system('F', 4)
        assert (system.count(SHORT), system.count(LONG)) == (24, 24)

    def test_a1(self):
        system = root_system('A', 1)
        assert len(system) == 2
        assert system.count(LONG) == 2

    def test_g2(self):
        system = root_system('G', 2)
        assert (system.count(SHORT), system.count(LONG)) == (6, 6)

    @pytest.mark.parametrize('label,rank', [('D', 3), ('E', 9), ('F', 5), ('B', 1), ('H', 3), ('A', 0)])
    def test_illegal_types(self, label, rank):
        with pytest.raises(InputError):
            root_system(label, rank)

    def test_parse_type(self):
        assert parse_type('F4') == ('F', 4)
        assert parse_type('b_5') == ('B', 5)
        with pytest.raises(InputError):
            parse_type('D3')
        with pytest.raises(InputError):
            parse_type('E')

    def test_e_subsystems_recorded(self):
        assert root_system('E', 7).subsystem
        assert 'E8 roots orthogonal' in weyl_graph(root_system('E', 6)).name


class TestWeylGraphs:
    def test_wf4(self, weyl):
        W = weyl('F', 4)
        assert (W.n, W.count(SHORT), W.count(LONG)) == (24, 12, 12)
        assert W.name == 'W(F4)'

    def test_wg2_is_three_mixed_edges(self, weyl):
        W = weyl('G', 2)
        assert W.edge_count() == 3
        assert all(W.colors[u] is not W.colors[v] for u, v in W.edges())
        assert len(components(W)) == 3

    def test_labels_are_root_coordinates(self, weyl):
        W = weyl('B', 2)
        assert '(1,0)' in W.labels

    @pytest.mark.parametrize('label,rank', LEGAL)
    def test_locally_homogeneous(self, weyl, label, rank):
        if label == 'E' and rank == 8:
            pytest.skip('covered by the slow suite')
        assert local_profile(weyl(label, rank)).homogeneous

    @pytest.mark.parametrize('n', range(2, 7))
    def test_b_and_c_differ_by_color_swap(self, weyl, n):
        assert are_isomorphic(swap_colors(weyl('B', n)), weyl('C', n)) is not None
        assert are_isomorphic(monochromatic(weyl('B', n)), monochromatic(weyl('C', n))) is not None


class TestCombinatorialModels:
    @pytest.mark.parametrize('label,rank', [(t, n) for t, low in (('A', 1), ('B', 2), ('C', 2), ('D', 4))
                                            for n in range(low, 7)])
    def test_matches_weyl_graph(self, weyl, label, rank):
        model = combinatorial_weyl(label, rank)
        assert model.n == weyl(label, rank).n
        assert are_isomorphic(model, weyl(label, rank)) is not None

    @pytest.mark.parametrize('n', range(2, 8))
    def test_a_is_kneser(self, n):
        assert are_isomorphic(combinatorial_weyl('A', n), kneser(n + 1, 2)) is not None

    @pytest.mark.parametrize('n', range(4, 7))
    def test_d_is_doubled_kneser(self, n):
        assert are_isomorphic(combinatorial_weyl('D', n), double(kneser(n, 2))) is not None

    @pytest.mark.parametrize('n', range(2, 6))
    def test_c_is_swapped_b(self, n):
        assert combinatorial_weyl('C', n) == swap_colors(combinatorial_weyl('B', n))

    def test_c_colors(self):
        assert combinatorial_weyl('B', 3).color_string() == 'slllsllls'
        assert combinatorial_weyl('C', 3).color_string() == 'lssslsssl'

    def test_labels(self):
        assert combinatorial_weyl('B', 3).labels[0] == 'y_{1,1}'

    def test_no_model_for_exceptional_types(self):
        with pytest.raises(InputError):
            combinatorial_weyl('F', 4)


class TestReflectionMatrices:
    @pytest.mark.parametrize('label,rank,scale', [('A', 3, 1), ('B', 3, 1), ('F', 4, 2),
                                                  ('E', 8, 4), ('G', 2, 3)])
    def test_matrix_scale(self, label, rank, scale):
        assert matrix_scale(root_system(label, rank)) == scale

    def test_reflection_is_an_involution(self):
        system = root_system('F', 4)
        scale = matrix_scale(system)
        for r in reflections(system):
            M = reflection_matrix(r.root, scale)
            assert np.array_equal(M @ M, scale * scale * np.eye(4, dtype=np.int64))
            assert np.array_equal(M @ np.array(r.root), -scale * np.array(r.root))

    def test_scale_too_small(self):
        with pytest.raises(InputError):
            reflection_matrix((1, 1, 1, 1), 1)

    @pytest.mark.parametrize('label,rank,order', [('A', 3, 24), ('B', 3, 48), ('G', 2, 12),
                                                  ('F', 4, 1152), ('D', 4, 192)])
    def test_group_order(self, label, rank, order):
        assert weyl_group_order(root_system(label, rank)) == order

    def test_group_order_limit(self):
        with pytest.raises(ResourceError):
            weyl_group_order(root_system('F', 4), limit=100)

    @pytest.mark.parametrize('label,rank', [('A', 1), ('A', 2), ('A', 3), ('A', 4), ('B', 2), ('B', 3),
                                            ('B', 4), ('C', 2), ('C', 3), ('C', 4), ('D', 4),
                                            ('F', 4), ('G', 2)])
    def test_commutation_exhaustive(self, label, rank):
        assert commutation_agrees(root_system(label, rank))

    @pytest.mark.parametrize('rank', [6, 7, 8])
    def test_commutation_sampled(self, rank):
        assert commutation_agrees(root_system('E', rank), sample=200, seed=1)

    def test_conjugation_action(self, wf4_graph):
        system = root_system('F', 4)
        actions = reflection_conjugation_action(system)
        assert len(actions) == 24
        assert all(is_automorphism(wf4_graph, p) for p in actions)
        assert group_order(24, actions) == 576

    def test_dot(self):
        assert dot((1, 2, 3), (3, 0, -1)) == 0

import math
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from weylgraphs.errors import InputError, UnsupportedInputError
from weylgraphs.families import kneser
from weylgraphs.graph import (ALL, CARTESIAN_PRODUCT, DISJOINT_UNION, JOIN, LONG, LONG_ONLY,
                              SHORT, SHORT_ONLY, CliquePartition, Color, ContractedGraph,
                              VertexSet, build_graph, combine, common_neighbors, complement,
                              complete, components, contract, cycle, distance_profile,
                              double, empty, induced_subgraph, is_bipartite, is_connected,
                              local_graph, path, reduced_graph, relabel, swap_colors,
                              to_networkx, two_coloring)
from weylgraphs.iso import are_isomorphic
from weylgraphs.recognition import alternating_long_count, long_neighbor_count

PAIRS6 = list(combinations(range(6), 2))


def graph_from_bits(bits, colors=None):
    edges = [pair for i, pair in enumerate(PAIRS6) if bits >> i & 1]
    return build_graph(6, colors, edges)


random_graphs = st.builds(graph_from_bits, st.integers(0, 2 ** 15 - 1))
random_colored_graphs = st.builds(graph_from_bits, st.integers(0, 2 ** 15 - 1),
                                  st.lists(st.sampled_from('sl'), min_size=6, max_size=6))


def short_vertices(G):
    return [v for v in range(G.n) if G.colors[v] is SHORT]


class TestBuildGraph:
    def test_mixed_edge(self):
        G = build_graph(2, [SHORT, LONG], [(0, 1)])
        assert G.colors == (SHORT, LONG)
        assert G.edge_count() == 1
        assert G.color_string() == 'sl'

    def test_no_edges_is_three_isolated_vertices(self):
        G = build_graph(3)
        assert G.edge_count() == 0
        assert G == empty(3)

    def test_all_pairs_is_k4(self):
        assert build_graph(4, None, combinations(range(4), 2)) == complete(4)

    def test_duplicate_edges_collapse(self):
        G = build_graph(3, 'l', [(0, 1), (1, 0), (0, 1)])
        assert G.edge_count() == 1

    @pytest.mark.parametrize('edges', [[(0, 0)], [(0, 3)], [(-1, 1)]])
    def test_bad_edges(self, edges):
        with pytest.raises(InputError):
            build_graph(3, None, edges)

    def test_color_string_input(self):
        assert build_graph(3, 'sls').colors == (SHORT, LONG, SHORT)

    def test_wrong_color_count(self):
        with pytest.raises(InputError):
            build_graph(3, [SHORT, LONG])

    def test_duplicate_labels_rejected(self):
        with pytest.raises(InputError):
            build_graph(2, None, [], labels=['a', 'a'])

    def test_color_parse(self):
        assert Color.parse('short') is SHORT
        assert Color.parse('l') is LONG
        assert SHORT.swapped() is LONG


class TestLocalGraphs:
    def test_kneser_local_graph(self):
        assert are_isomorphic(local_graph(kneser(7, 2), 0), kneser(5, 2)) is not None

    def test_wf4_short_local_graph_is_wb3(self, weyl):
        W = weyl('F', 4)
        v = short_vertices(W)[0]
        assert are_isomorphic(local_graph(W, v), weyl('B', 3)) is not None

    def test_local_graph_of_isolated_vertex(self):
        assert local_graph(empty(3), 1).n == 0

    def test_origin_maps_back(self, weyl):
        W = weyl('F', 4)
        local = local_graph(W, 5)
        assert list(local.origin) == W.neighbors(5)
        assert all(local.colors[i] is W.colors[v] for i, v in enumerate(local.origin))

    def test_vertex_out_of_range(self):
        with pytest.raises(InputError):
            local_graph(complete(3), 3)

    @settings(max_examples=50, deadline=None)
    @given(random_colored_graphs)
    def test_local_graph_census(self, G):
        for v in range(G.n):
            local = local_graph(G, v)
            assert local.n == G.degree(v)
            assert local.count(SHORT) == sum(1 for u in G.neighbors(v) if G.colors[u] is SHORT)


class TestCommonNeighbors:
    def test_adjacent_short_pair_in_wf4(self, weyl):
        W = weyl('F', 4)
        x = short_vertices(W)[0]
        y = next(u for u in W.neighbors(x) if W.colors[u] is SHORT)
        common = common_neighbors(W, [x, y])
        assert sum(1 for v in common if W.colors[v] is LONG) == 2

    def test_short_triangle_in_wf4_has_no_long_neighbor(self, weyl):
        W = weyl('F', 4)
        clique = components(W, SHORT_ONLY)[0]
        common = common_neighbors(W, clique[:3])
        assert all(W.colors[v] is SHORT for v in common)

    def test_k4(self):
        assert common_neighbors(complete(4), [0, 1]) == VertexSet((2, 3))

    def test_empty_set_rejected(self):
        with pytest.raises(InputError):
            common_neighbors(complete(4), [])

    @settings(max_examples=50, deadline=None)
    @given(random_graphs)
    def test_single_vertex_and_monotonicity(self, G):
        for x in range(G.n):
            assert list(common_neighbors(G, [x])) == G.neighbors(x)
        assert set(common_neighbors(G, [0, 1, 2])) <= set(common_neighbors(G, [0, 1]))


class TestCombine:
    def test_torus_product(self, torus_blocks):
        G = torus_blocks
        assert G.n == 64
        assert is_connected(G)
        assert is_bipartite(G)
        assert all(G.degree(v) == 6 for v in range(G.n))
        assert all(local_graph(G, v).edge_count() == 0 for v in range(G.n))

    def test_union_of_points(self):
        assert combine(complete(1), complete(1), DISJOINT_UNION) == empty(2)

    def test_join_of_cocliques(self):
        G = combine(empty(3), empty(3), JOIN)
        assert G.edge_count() == 9
        assert is_bipartite(G)

    def test_product_takes_first_factor_color(self):
        G = combine(complete(2, SHORT), complete(2, LONG), CARTESIAN_PRODUCT)
        assert G.colors == (SHORT,) * 4

    def test_unknown_mode(self):
        with pytest.raises(InputError):
            combine(complete(1), complete(1), 'tensor')

    @settings(max_examples=25, deadline=None)
    @given(random_graphs, random_graphs)
    def test_commutative_up_to_isomorphism(self, G, H):
        for mode in (DISJOINT_UNION, JOIN, CARTESIAN_PRODUCT):
            assert are_isomorphic(combine(G, H, mode), combine(H, G, mode)) is not None


class TestDoubleAndReduce:
    def test_double_k42_is_wd4(self, weyl):
        D = double(kneser(4, 2))
        assert D.n == 12
        assert are_isomorphic(D, weyl('D', 4)) is not None

    def test_double_point(self):
        assert double(complete(1)) == complete(2)

    @pytest.mark.parametrize('n', range(4, 8))
    def test_double_kneser_size(self, n):
        assert double(kneser(n, 2)).n == n * (n - 1)

    def test_reduce_doubled_petersen(self):
        reduced, class_map = reduced_graph(double(kneser(5, 2)))
        assert are_isomorphic(reduced, kneser(5, 2)) is not None
        assert class_map[:4] == (0, 0, 1, 1)

    def test_kneser_is_reduced(self):
        K = kneser(7, 2)
        assert reduced_graph(K)[0] == K

    def test_mixed_class_rejected(self):
        with pytest.raises(UnsupportedInputError):
            reduced_graph(build_graph(2, 'sl', [(0, 1)]))

    @settings(max_examples=50, deadline=None)
    @given(random_graphs)
    def test_double_counts_and_reduction(self, G):
        D = double(G)
        assert D.n == 2 * G.n
        assert D.edge_count() == G.n + 4 * G.edge_count()
        once = reduced_graph(G)[0]
        assert reduced_graph(once)[0] == once
        assert are_isomorphic(reduced_graph(D)[0], once) is not None


class TestComponentsAndDistances:
    def test_wb5_short_component_is_5_clique(self, weyl):
        W = weyl('B', 5)
        comps = components(W, SHORT_ONLY)
        assert [len(c) for c in comps] == [5]
        assert induced_subgraph(W, comps[0]) == complete(5, SHORT)

    def test_wf4_short_components(self, weyl):
        comps = components(weyl('F', 4), SHORT_ONLY)
        assert sorted(len(c) for c in comps) == [4, 4, 4]

    def test_coclique_components(self):
        assert components(empty(3), ALL) == [VertexSet((0,)), VertexSet((1,)), VertexSet((2,))]

    def test_long_only(self, weyl):
        assert sorted(len(c) for c in components(weyl('F', 4), LONG_ONLY)) == [4, 4, 4]

    def test_wf4_diameter(self, weyl):
        profile = distance_profile(weyl('F', 4))
        assert profile.diameter == 2
        assert profile.connected

    def test_complete_diameter(self):
        assert distance_profile(complete(5)).diameter == 1

    def test_wg2_is_three_mixed_edges(self, weyl):
        W = weyl('G', 2)
        comps = components(W)
        assert len(comps) == 3
        assert all(len({W.colors[v] for v in c}) == 2 for c in comps)
        profile = distance_profile(W)
        assert profile.diameter == math.inf
        assert not profile.connected

    def test_pairs_at(self):
        assert list(distance_profile(path(3)).pairs_at(2)) == [(0, 2)]

    def test_two_coloring(self):
        assert two_coloring(cycle(4)) == [0, 1, 0, 1]
        assert two_coloring(cycle(5)) is None


class TestContraction:
    def partition(self, W):
        return CliquePartition.from_blocks(W, components(W, SHORT_ONLY) + components(W, LONG_ONLY))

    def test_wf4(self, weyl):
        W = weyl('F', 4)
        C = contract(W, self.partition(W))
        assert len(C) == 6
        assert is_bipartite(C.graph)
        assert C.bivalencies() == [6] * 6

    def test_wb4_is_strong_star(self, weyl):
        W = weyl('B', 4)
        C = contract(W, self.partition(W))
        assert len(C) == 4
        assert sorted(C.bivalencies()) == [2, 2, 2, 6]
        assert len(C.strong_edges()) == 3
        centre = C.bivalencies().index(6)
        assert all(centre in edge for edge in C.strong_edges())

    def test_singletons_give_back_the_graph(self):
        G = cycle(5)
        C = contract(G, CliquePartition.singletons(G))
        assert C.graph == G
        assert C.strong_edges() == []

    def test_invalid_partition(self):
        G = path(3)
        with pytest.raises(InputError):
            CliquePartition.from_blocks(G, [[0, 2], [1]])
        with pytest.raises(InputError):
            CliquePartition.from_blocks(G, [[0, 1]])

    @pytest.mark.parametrize('blocks', [[[0, 1, 2, 3], [9]], [[-1, 0, 1, 2, 3]], [[0, 1, 2, 3, 4]]])
    def test_vertex_outside_host(self, blocks):
        with pytest.raises(InputError, match="outside the host"):
            CliquePartition.from_blocks(complete(4), blocks)

    def test_validate_checks_range(self):
        blocks = (VertexSet.of([0, 1]), VertexSet.of([5]))
        partition = CliquePartition(complete(2), blocks, (LONG, LONG))
        with pytest.raises(InputError, match="outside the host"):
            partition.validate()

    def test_partition_of_other_graph(self):
        partition = CliquePartition.singletons(path(3))
        with pytest.raises(InputError):
            contract(cycle(3), partition)

    def test_from_graph_rejects_non_edge(self):
        with pytest.raises(InputError):
            ContractedGraph.from_graph(path(3), [(0, 2)])

    @settings(max_examples=50, deadline=None)
    @given(random_graphs)
    def test_bivalency_bounded_by_leaving_edges(self, G):
        C = contract(G, CliquePartition.singletons(G))
        for a in range(len(C)):
            assert C.bivalency(a) == G.degree(a)


class TestTransforms:
    def test_complement(self):
        assert complement(complete(4)) == empty(4)
        assert complement(complement(cycle(5))) == cycle(5)

    def test_swap_colors(self):
        assert swap_colors(build_graph(2, 'sl')).colors == (LONG, SHORT)

    def test_relabel_is_isomorphic(self, weyl):
        W = weyl('B', 3)
        perm = list(reversed(range(W.n)))
        shuffled = relabel(W, perm)
        assert are_isomorphic(W, shuffled) is not None

    def test_relabel_needs_permutation(self):
        with pytest.raises(InputError):
            relabel(path(3), [0, 0, 1])

    def test_to_networkx(self, weyl):
        W = weyl('F', 4)
        nxg = to_networkx(W)
        assert nxg.number_of_nodes() == 24
        assert nxg.number_of_edges() == W.edge_count()
        assert nxg.nodes[0]['color'] in ('s', 'l')


class TestBnCounting:
    @pytest.mark.parametrize('n', range(4, 10))
    def test_alternating_sum(self, n):
        assert alternating_long_count(n) == n * (n - 1)

    @pytest.mark.parametrize('n', range(5, 9))
    def test_long_neighbors_of_short_clique(self, weyl, n):
        W = weyl('B', n)
        clique = components(W, SHORT_ONLY)[0]
        assert long_neighbor_count(W, clique) == n * (n - 1)

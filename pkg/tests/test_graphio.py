import pytest

from weylgraphs.errors import InputError
from weylgraphs.families import kneser
from weylgraphs.graph import LONG, SHORT, ContractedGraph, build_graph, complete, empty
from weylgraphs.graphio import (DOT, EDGELIST, format_dot, format_edgelist, format_graph,
                                parse_edgelist, read_graph, write_graph)
from weylgraphs.recognition import block_contraction

SMALL = """\
bcg 3 2
sll
0 1 *
1 2
"""


class TestEdgeList:
    def test_parse_small(self):
        G, strong = parse_edgelist(SMALL)
        assert G.colors == (SHORT, LONG, LONG)
        assert sorted(G.edges()) == [(0, 1), (1, 2)]
        assert strong == [(0, 1)]
        assert G.labels is None

    def test_format_small(self):
        G = build_graph(3, 'sll', [(0, 1), (1, 2)])
        assert format_edgelist(G, [(1, 0)]) == SMALL

    def test_weyl_graph_survives(self, wf4_graph):
        G, strong = parse_edgelist(format_edgelist(wf4_graph))
        assert G == wf4_graph
        assert G.labels == wf4_graph.labels
        assert strong == []

    def test_contraction_keeps_strong_edges(self, wf4_graph):
        contracted = block_contraction(wf4_graph)
        G, strong = parse_edgelist(format_edgelist(contracted))
        assert ContractedGraph.from_graph(G, strong).multiplicity == contracted.multiplicity

    def test_comments_and_blank_lines(self):
        text = "# Petersen-free\nbcg 2 1\n\nll\n# the only edge\n0 1\n"
        G, _ = parse_edgelist(text)
        assert G == complete(2)

    def test_labels(self):
        G, _ = parse_edgelist("bcg 2 0\nls\nv 1 beta\n")
        assert G.label(1) == 'beta'
        assert G.label(0) == '0'

    def test_empty_graph(self):
        G, _ = parse_edgelist("bcg 0 0\n")
        assert G.n == 0

    @pytest.mark.parametrize('text, lineno', [
        ("bcg 2\nll\n", 1),
        ("bcg x 1\nll\n", 1),
        ("bcg 2 0\nlsl\n", 2),
        ("bcg 2 0\nlq\n", 2),
        ("bcg 2 1\nll\n0 1 +\n", 3),
        ("bcg 2 1\nll\n0 one\n", 3),
        ("bcg 2 0\nll\nv 5 far\n", 3),
        ("bcg 2 0\nll\nv 0\n", 3),
    ])
    def test_errors_carry_line_numbers(self, text, lineno):
        with pytest.raises(InputError, match=f"g.bcg:{lineno}:"):
            parse_edgelist(text, source='g.bcg')

    def test_edge_count_mismatch(self):
        with pytest.raises(InputError, match="announces 2 edges"):
            parse_edgelist("bcg 3 2\nlll\n0 1\n")

    def test_missing_color_line(self):
        with pytest.raises(InputError):
            parse_edgelist("bcg 3 0\n")

    def test_nothing(self):
        with pytest.raises(InputError):
            parse_edgelist("# only a comment\n")

    def test_loop(self):
        with pytest.raises(InputError):
            parse_edgelist("bcg 2 1\nll\n1 1\n")


class TestDot:
    def test_shapes_and_bold(self):
        G = build_graph(2, 'sl', [(0, 1)], name='pair')
        text = format_dot(G, [(0, 1)])
        assert text.startswith('graph "pair" {')
        assert '0 [label="0", shape=circle];' in text
        assert '1 [label="1", shape=box];' in text
        assert '0 -- 1 [style=bold];' in text

    def test_ordinary_edges(self):
        text = format_dot(kneser(5, 2))
        assert text.count(' -- ') == 15
        assert 'bold' not in text

    def test_strong_edges_from_contraction(self, wf4_graph):
        assert format_dot(block_contraction(wf4_graph)).count('style=bold') == 9


class TestFiles:
    def test_write_and_read(self, tmp_path, wf4_graph):
        path = tmp_path / 'graphs' / 'wf4.bcg'
        write_graph(str(path), wf4_graph)
        G, strong = read_graph(str(path))
        assert G == wf4_graph
        assert G.name == 'wf4.bcg'
        assert strong == []

    def test_write_dot(self, tmp_path):
        path = tmp_path / 'e.dot'
        write_graph(str(path), empty(3), DOT)
        assert path.read_text().startswith('graph ')

    def test_missing_file(self, tmp_path):
        with pytest.raises(InputError, match="Cannot read"):
            read_graph(str(tmp_path / 'absent.bcg'))

    def test_unknown_format(self):
        with pytest.raises(InputError):
            format_graph(empty(1), 'graphml')

    def test_format_graph_default(self):
        assert format_graph(empty(1)) == format_graph(empty(1), EDGELIST) == "bcg 1 0\nl\n"

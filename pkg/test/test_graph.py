# (c) 2024 Multiram Project
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
#
# This file is part of Multiram
#

import itertools

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multiram.exceptions import GraphException, Graph6FormatError, VertexSetError
from multiram.graph import (BitGraph, SmallGraph, canonical_form, clique_number,
                            complete, connected_components, cycle,
                            disjoint_union, empty, find_clique,
                            find_independent_set, gnp, independence_number,
                            induced_subgraph, is_connected, is_isomorphic,
                            iter_cliques, load_host, make_graph,
                            maximal_independent_sets, parse_graph, petersen,
                            read_edge_list_lines, read_graph6_lines, star,
                            write_graph6_lines)
from multiram.utils import mask_of, members, popcount


def _brute_independence(graph):
    best = 0
    for size in range(graph.order + 1):
        for subset in itertools.combinations(range(graph.order), size):
            if graph.is_independent(mask_of(subset)):
                best = size
                break
    return best


class TestBitGraph(object):

    def test_from_edges(self):
        g = BitGraph.from_edges(4, [(0, 1), (1, 2)])
        assert isinstance(g, SmallGraph)
        assert g.order == 4
        assert g.has_edge(1, 0)
        assert not g.has_edge(0, 2)
        assert list(g.edges()) == [(0, 1), (1, 2)]
        assert g.degrees() == [1, 2, 1, 0]
        assert g.has_isolated_vertex()

    def test_invalid_edges(self):
        with pytest.raises(GraphException):
            BitGraph.from_edges(3, [(0, 0)])
        with pytest.raises(GraphException):
            BitGraph.from_edges(3, [(0, 3)])

    def test_asymmetric_rows(self):
        with pytest.raises(GraphException):
            BitGraph(2, [0b10, 0])

    def test_small_graph_limit(self):
        with pytest.raises(GraphException):
            SmallGraph(65, [0] * 65)
        big = make_graph(65, [0] * 65)
        assert not isinstance(big, SmallGraph)
        assert big.order == 65

    def test_degrees(self):
        g = star(4)
        assert g.min_degree() == 1
        assert g.max_degree() == 4
        assert g.non_degree(1) == 3
        assert g.edge_count() == 4
        assert empty(0).min_degree() == 0

    def test_complement(self, c5):
        assert is_isomorphic(c5.complement(), c5)
        assert complete(4).complement() == empty(4)

    def test_relabel(self, c5):
        relabelled = c5.relabel([2, 0, 4, 1, 3])
        assert relabelled.edge_count() == 5
        assert is_isomorphic(relabelled, c5)

    def test_graph6_against_networkx(self):
        for name, nx_graph in (('petersen', nx.petersen_graph()),
                               ('path', nx.path_graph(7)),
                               ('empty', nx.empty_graph(3))):
            data = nx.to_graph6_bytes(nx_graph, header=False).strip()
            g = BitGraph.from_graph6(data)
            assert g.order == nx_graph.number_of_nodes(), name
            assert g.edge_count() == nx_graph.number_of_edges(), name
            assert g.to_graph6().encode('ascii') == data, name

    def test_graph6_header(self, k3):
        assert BitGraph.from_graph6('>>graph6<<' + k3.to_graph6()) == k3

    def test_graph6_errors(self):
        with pytest.raises(Graph6FormatError):
            BitGraph.from_graph6('')
        with pytest.raises(Graph6FormatError):
            BitGraph.from_graph6('\x01\x02')


class TestSearch(object):

    def test_clique_and_independence(self):
        g = petersen()
        assert clique_number(g) == 2
        assert independence_number(g) == 4
        assert independence_number(cycle(6)) == 3
        assert clique_number(empty(0)) == 0

    def test_find_clique_lowest(self):
        g = disjoint_union(complete(3), complete(3))
        assert members(find_clique(g, 3)) == [0, 1, 2]
        assert members(find_clique(g, 3, forbidden=1)) == [3, 4, 5]
        assert find_clique(g, 4) is None
        assert find_clique(g, 0) == 0

    def test_iter_cliques(self):
        g = complete(4)
        found = [members(c) for c in iter_cliques(g, 3)]
        assert found == [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]
        assert list(iter_cliques(g, 2, within=0b11)) == [0b11]

    def test_find_independent_set(self, c5):
        assert c5.is_independent(find_independent_set(c5, 2))
        assert find_independent_set(c5, 3) is None

    def test_maximal_independent_sets_c6(self, c6):
        found = [members(s) for s in maximal_independent_sets(c6)]
        assert found == [[0, 2, 4], [0, 3], [1, 3, 5], [1, 4], [2, 5]]

    def test_connected_components(self):
        g = disjoint_union(complete(2), empty(1), cycle(3))
        assert [members(c) for c in connected_components(g)] == [[0, 1], [2], [3, 4, 5]]
        assert not is_connected(g)
        assert is_connected(empty(0))
        assert is_connected(cycle(4))

    def test_induced_subgraph(self, c6):
        sub = induced_subgraph(c6, mask_of([0, 1, 2, 4]))
        assert sub.order == 4
        assert list(sub.edges()) == [(0, 1), (1, 2)]
        with pytest.raises(VertexSetError):
            induced_subgraph(c6, 1 << 6)

    def test_gnp_seeded(self):
        assert gnp(12, 0.5, 7) == gnp(12, 0.5, 7)
        assert gnp(6, 1, 0) == complete(6)
        assert gnp(6, 0, 0) == empty(6)
        with pytest.raises(ValueError):
            gnp(5, 1.5, 0)

    @settings(max_examples=40, deadline=None)
    @given(seed=st.integers(0, 10 ** 6), order=st.integers(1, 8))
    def test_independence_against_brute_force(self, seed, order):
        g = gnp(order, 0.5, seed)
        assert independence_number(g) == _brute_independence(g)
        nx_graph = g.to_networkx()
        nx_clique = max(len(c) for c in nx.find_cliques(nx_graph))
        assert clique_number(g) == nx_clique


class TestCanonical(object):

    @settings(max_examples=40, deadline=None)
    @given(seed=st.integers(0, 10 ** 6), order=st.integers(1, 9),
           shuffle=st.randoms(use_true_random=False))
    def test_canonical_form_is_invariant(self, seed, order, shuffle):
        g = gnp(order, 0.4, seed)
        permutation = list(range(order))
        shuffle.shuffle(permutation)
        h = g.relabel(permutation)
        assert canonical_form(g) == canonical_form(h)
        assert is_isomorphic(g, h)

    @settings(max_examples=40, deadline=None)
    @given(first=st.integers(0, 10 ** 6), second=st.integers(0, 10 ** 6),
           order=st.integers(1, 7))
    def test_isomorphism_against_networkx(self, first, second, order):
        g, h = gnp(order, 0.5, first), gnp(order, 0.5, second)
        assert is_isomorphic(g, h) == nx.is_isomorphic(g.to_networkx(),
                                                         h.to_networkx())

    def test_non_isomorphic(self, c6):
        assert not is_isomorphic(c6, disjoint_union(complete(3), complete(3)))
        assert not is_isomorphic(c6, cycle(5))


class TestFiles(object):

    def test_graph6_lines(self, k3, c5):
        text = write_graph6_lines([k3, c5])
        assert read_graph6_lines(text.splitlines()) == [k3, c5]
        with pytest.raises(Graph6FormatError):
            read_graph6_lines(['\x01'])

    def test_parse_graph(self, tmpdir, c5):
        graph_file = tmpdir.join('c5.g6')
        graph_file.write(c5.to_graph6() + '\n')
        assert parse_graph(str(graph_file)) == c5
        assert parse_graph(c5.to_graph6()) == c5
        graph_file.write(c5.to_graph6() + '\n' + c5.to_graph6() + '\n')
        with pytest.raises(Graph6FormatError):
            parse_graph(str(graph_file))

    def test_edge_list(self):
        g = read_edge_list_lines(['# a path', 'N 4', '0 1', '', '1 2'])
        assert g.order == 4
        assert list(g.edges()) == [(0, 1), (1, 2)]
        with pytest.raises(GraphException):
            read_edge_list_lines(['0 1'])
        with pytest.raises(GraphException):
            read_edge_list_lines(['N 2', '0 x'])

    def test_load_host(self, tmpdir, c5):
        edge_file = tmpdir.join('host.txt')
        edge_file.write('N 5\n' + ''.join('%d %d\n' % e for e in c5.edges()))
        assert load_host(str(edge_file)) == c5
        g6_file = tmpdir.join('host.g6')
        g6_file.write(c5.to_graph6() + '\n')
        assert load_host(str(g6_file)) == c5
        assert load_host(c5.to_graph6()) == c5
        assert popcount(load_host(c5.to_graph6()).full_mask) == 5

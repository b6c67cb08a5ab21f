# (c) 2024 Multiram Project
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
#
# This file is part of Multiram
#
"""
Labelled undirected graphs stored as per-vertex adjacency bitsets.

Vertex sets are plain Python integers used as bitsets: bit ``v`` is set when
vertex ``v`` belongs to the set. Graphs are immutable values.
"""

import logging
import os

import networkx as nx
import numpy

from multiram.exceptions import (GraphException, Graph6FormatError,
                                 VertexSetError)
from multiram.utils import (bool_rows_to_masks, iter_bits, lowest_vertex,
                            make_rng, mask_of, members, popcount)

_logger = logging.getLogger(__name__)

#: Largest order stored as a SmallGraph
MAX_SMALL_ORDER = 64

GRAPH6_HEADER = b'>>graph6<<'


class BitGraph(object):
    """
    An undirected simple graph on vertices ``0..order-1``.

    ``rows[v]`` is the bitset of the neighbours of ``v``.
    """

    __slots__ = ('order', 'rows', '_canonical')

    def __init__(self, order, rows, validate=True):
        """
        :param int order: number of vertices
        :param rows: iterable of adjacency bitsets, one per vertex
        :param bool validate: check symmetry, irreflexivity and range
        """
        rows = tuple(int(r) for r in rows)
        if order < 0:
            raise GraphException("negative order %d" % order)
        if len(rows) != order:
            raise GraphException("expected %d adjacency rows, got %d" %
                                 (order, len(rows)))
        if validate:
            full = (1 << order) - 1
            for v, row in enumerate(rows):
                if row & ~full:
                    raise GraphException(
                        "row %d has neighbours outside 0..%d" % (v, order - 1))
                if row >> v & 1:
                    raise GraphException("self-loop at vertex %d" % v)
                for u in iter_bits(row):
                    if not rows[u] >> v & 1:
                        raise GraphException(
                            "adjacency is not symmetric on edge %d-%d" % (v, u))
        self.order = order
        self.rows = rows
        self._canonical = None

    # Constructors

    @classmethod
    def from_edges(cls, order, edges):
        """
        Build a graph from an edge list

        :param int order: number of vertices
        :param edges: iterable of (u, v) pairs
        """
        rows = [0] * order
        for u, v in edges:
            if u == v:
                raise GraphException("self-loop at vertex %d" % u)
            if not (0 <= u < order and 0 <= v < order):
                raise GraphException("edge %d-%d outside 0..%d" %
                                     (u, v, order - 1))
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return make_graph(order, rows)

    @classmethod
    def from_networkx(cls, nx_graph):
        """
        Build a graph from a networkx graph, numbering vertices in the
        sorted order of its nodes
        """
        nodes = sorted(nx_graph.nodes())
        index = dict((node, i) for i, node in enumerate(nodes))
        return cls.from_edges(len(nodes), ((index[u], index[v])
                                           for u, v in nx_graph.edges()
                                           if u != v))

    @classmethod
    def from_graph6(cls, data):
        """
        Decode a graph6 string (with or without the ``>>graph6<<`` header)

        :param str|bytes data: the graph6 encoding
        :raises Graph6FormatError: on malformed input
        """
        if isinstance(data, str):
            try:
                data = data.encode('ascii')
            except UnicodeEncodeError:
                raise Graph6FormatError("graph6 data must be ASCII")
        data = data.strip()
        if data.startswith(GRAPH6_HEADER):
            data = data[len(GRAPH6_HEADER):]
        if not data:
            raise Graph6FormatError("empty graph6 string")
        try:
            nx_graph = nx.from_graph6_bytes(data)
        except (ValueError, TypeError, IndexError, nx.NetworkXError) as e:
            raise Graph6FormatError("invalid graph6 string %r: %s" %
                                    (data.decode('ascii', 'replace'), e))
        return cls.from_networkx(nx_graph)

    # Queries

    @property
    def full_mask(self):
        """The vertex set of the whole graph"""
        return (1 << self.order) - 1

    def neighbours(self, v):
        """Neighbourhood bitset of ``v``"""
        return self.rows[v]

    def degree(self, v):
        return popcount(self.rows[v])

    def non_degree(self, v):
        """Number of vertices other than ``v`` not adjacent to ``v``"""
        return self.order - 1 - popcount(self.rows[v])

    def degrees(self):
        return [popcount(row) for row in self.rows]

    def min_degree(self):
        """Minimum degree, 0 for the graph without vertices"""
        if not self.order:
            return 0
        return min(self.degrees())

    def max_degree(self):
        if not self.order:
            return 0
        return max(self.degrees())

    def has_edge(self, u, v):
        return bool(self.rows[u] >> v & 1)

    def edges(self):
        """Yield every edge once as (u, v) with u < v"""
        for u, row in enumerate(self.rows):
            for v in iter_bits(row >> (u + 1)):
                yield u, u + 1 + v

    def edge_count(self):
        return sum(self.degrees()) // 2

    def is_clique(self, vertex_set):
        """True if ``vertex_set`` spans a complete subgraph"""
        for v in iter_bits(vertex_set):
            if self.rows[v] & vertex_set != vertex_set ^ (1 << v):
                return False
        return True

    def is_independent(self, vertex_set):
        """True if no edge lies inside ``vertex_set``"""
        for v in iter_bits(vertex_set):
            if self.rows[v] & vertex_set:
                return False
        return True

    def has_isolated_vertex(self):
        return any(not row for row in self.rows)

    # Derived graphs

    def complement(self):
        full = self.full_mask
        return make_graph(self.order,
                          (row ^ full ^ (1 << v) for v, row in enumerate(self.rows)),
                          validate=False)

    def induced_subgraph(self, vertex_set):
        return induced_subgraph(self, vertex_set)

    def relabel(self, permutation):
        """
        Return the graph whose vertex ``i`` is vertex ``permutation[i]`` of
        this graph
        """
        position = [0] * self.order
        for i, v in enumerate(permutation):
            position[v] = i
        rows = []
        for v in permutation:
            row = 0
            for u in iter_bits(self.rows[v]):
                row |= 1 << position[u]
            rows.append(row)
        return make_graph(self.order, rows, validate=False)

    # Conversions

    def to_networkx(self):
        nx_graph = nx.Graph()
        nx_graph.add_nodes_from(range(self.order))
        nx_graph.add_edges_from(self.edges())
        return nx_graph

    def to_graph6(self):
        """
        Encode the graph in graph6, without header and trailing newline

        :rtype: str
        """
        data = nx.to_graph6_bytes(self.to_networkx(), header=False)
        return data.strip().decode('ascii')

    def to_json(self):
        return self.to_graph6()

    def __eq__(self, other):
        if not isinstance(other, BitGraph):
            return NotImplemented
        return self.order == other.order and self.rows == other.rows

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.order, self.rows))

    def __repr__(self):
        return "%s(order=%d, edges=%d)" % (self.__class__.__name__,
                                           self.order, self.edge_count())


class SmallGraph(BitGraph):
    """
    A graph on at most 64 vertices, so each adjacency row fits a machine
    word. Patterns and small colour-class views use this class.
    """

    __slots__ = ()

    def __init__(self, order, rows, validate=True):
        if order > MAX_SMALL_ORDER:
            raise GraphException("SmallGraph holds at most %d vertices, got %d"
                                 % (MAX_SMALL_ORDER, order))
        super(SmallGraph, self).__init__(order, rows, validate)


def make_graph(order, rows, validate=True):
    """
    Build a SmallGraph when the order allows it, a BitGraph otherwise
    """
    if order <= MAX_SMALL_ORDER:
        return SmallGraph(order, rows, validate)
    return BitGraph(order, rows, validate)


def complete(n):
    full = (1 << n) - 1
    return make_graph(n, (full ^ (1 << v) for v in range(n)), validate=False)


def empty(n):
    return make_graph(n, [0] * n, validate=False)


def cycle(n):
    if n < 3:
        raise GraphException("a cycle needs at least 3 vertices")
    return BitGraph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def path(n):
    return BitGraph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def star(leaves):
    """The star with centre 0 and ``leaves`` leaves"""
    return BitGraph.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return BitGraph.from_edges(10, outer + inner + spokes)


def disjoint_union(*graphs):
    """The disjoint union, vertices of each graph shifted after the previous"""
    rows = []
    offset = 0
    for graph in graphs:
        rows.extend(row << offset for row in graph.rows)
        offset += graph.order
    return make_graph(offset, rows, validate=False)


def complement(graph):
    return graph.complement()


def gnp(n, p, seed):
    """
    Seeded Erdos-Renyi random graph G(n, p)

    :param int n: number of vertices
    :param float p: edge probability
    :param int seed: random seed
    """
    if not 0 <= p <= 1:
        raise ValueError("edge probability %r outside [0, 1]" % p)
    rng = make_rng(seed)
    upper = numpy.triu(rng.random((n, n)) < p, 1)
    return make_graph(n, bool_rows_to_masks(upper | upper.T), validate=False)


def induced_subgraph(graph, vertex_set):
    """
    The subgraph induced by ``vertex_set``, relabelled 0..|S|-1 in ascending
    order of the original vertices

    :raises VertexSetError: if the set is not inside the vertex range
    """
    if vertex_set < 0 or vertex_set & ~graph.full_mask:
        raise VertexSetError("vertex set %s is not inside 0..%d" %
                             (members(vertex_set & ~graph.full_mask) if vertex_set >= 0
                              else vertex_set, graph.order - 1))
    vertices = members(vertex_set)
    index = dict((v, i) for i, v in enumerate(vertices))
    rows = []
    for v in vertices:
        row = 0
        for u in iter_bits(graph.rows[v] & vertex_set):
            row |= 1 << index[u]
        rows.append(row)
    return make_graph(len(vertices), rows, validate=False)


def clique_in_rows(rows, candidates, k):
    """Lowest-lexicographic k-clique inside ``candidates`` or None"""
    if k == 0:
        return 0
    while candidates:
        if popcount(candidates) < k:
            return None
        v = lowest_vertex(candidates)
        bit = 1 << v
        candidates ^= bit
        if k == 1:
            return bit
        rest = clique_in_rows(rows, candidates & rows[v], k - 1)
        if rest is not None:
            return rest | bit
    return None


def find_clique(graph, k, forbidden=0, within=None):
    """
    Return the lowest-lexicographic k-clique avoiding ``forbidden``, or None

    :param BitGraph graph: the host graph
    :param int k: clique size
    :param int forbidden: vertices that cannot be used
    :param int within: restrict the search to this vertex set
    """
    if k < 0:
        raise ValueError("clique size must be non negative")
    candidates = graph.full_mask if within is None else within & graph.full_mask
    return clique_in_rows(graph.rows, candidates & ~forbidden, k)


def iter_cliques(graph, k, within=None, forbidden=0):
    """
    Yield every k-clique avoiding ``forbidden`` in lexicographic order

    :param int within: restrict the search to this vertex set
    """
    candidates = graph.full_mask if within is None else within & graph.full_mask
    return _iter_cliques(graph.rows, candidates & ~forbidden, k)


def _iter_cliques(rows, candidates, k):
    if k == 0:
        yield 0
        return
    while candidates and popcount(candidates) >= k:
        low = candidates & -candidates
        candidates ^= low
        v = low.bit_length() - 1
        for rest in _iter_cliques(rows, candidates & rows[v], k - 1):
            yield rest | low


def find_independent_set(graph, k, forbidden=0, within=None):
    """Lowest-lexicographic independent k-set, or None"""
    return find_clique(graph.complement(), k, forbidden, within)


def clique_number(graph):
    """Size of a maximum clique, by branch and bound"""
    rows = graph.rows
    best = [0]

    def expand(size, candidates):
        if size > best[0]:
            best[0] = size
        while candidates:
            if size + popcount(candidates) <= best[0]:
                return
            v = lowest_vertex(candidates)
            candidates ^= 1 << v
            expand(size + 1, candidates & rows[v])

    expand(0, graph.full_mask)
    return best[0]


def independence_number(graph):
    """
    The independence number: the largest size of a set of pairwise
    non-adjacent vertices
    """
    return clique_number(graph.complement())


def _bron_kerbosch(rows, clique, candidates, excluded, found):
    if not candidates and not excluded:
        found.append(clique)
        return
    pivot = max(iter_bits(candidates | excluded),
                key=lambda u: popcount(candidates & rows[u]))
    for v in iter_bits(candidates & ~rows[pivot]):
        bit = 1 << v
        _bron_kerbosch(rows, clique | bit, candidates & rows[v],
                       excluded & rows[v], found)
        candidates &= ~bit
        excluded |= bit


def maximal_cliques(graph):
    """Every inclusion-maximal clique, sorted by member lists"""
    found = []
    _bron_kerbosch(graph.rows, 0, graph.full_mask, 0, found)
    return sorted(found, key=members)


def maximal_independent_sets(graph):
    """
    Every inclusion-maximal independent set exactly once, sorted by the
    ascending list of their members
    """
    return maximal_cliques(graph.complement())


def connected_components(graph):
    """
    Partition of the vertices into connected components, ordered by their
    lowest vertex
    """
    rows = graph.rows
    remaining = graph.full_mask
    components = []
    while remaining:
        component = frontier = remaining & -remaining
        while frontier:
            reached = 0
            for u in iter_bits(frontier):
                reached |= rows[u]
            frontier = reached & ~component
            component |= frontier
        components.append(component)
        remaining &= ~component
    return components


def is_connected(graph):
    """True for connected graphs; the graph without vertices counts as connected"""
    return len(connected_components(graph)) <= 1


def _refine(rows, cells):
    """
    Refine an ordered partition until it is equitable.

    Every cell is split by the number of neighbours its vertices have in
    each cell of the current partition; the pieces keep the order of the
    sorted signatures, so the result does not depend on the labelling.
    """
    while True:
        masks = [mask_of(cell) for cell in cells]
        refined = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                refined.append(cell)
                continue
            signature = dict((v, tuple(popcount(rows[v] & m) for m in masks))
                             for v in cell)
            groups = sorted(set(signature.values()))
            if len(groups) == 1:
                refined.append(cell)
                continue
            changed = True
            for group in groups:
                refined.append([v for v in cell if signature[v] == group])
        cells = refined
        if not changed:
            return cells


def _relabelled_rows(rows, labelling):
    position = [0] * len(labelling)
    for i, v in enumerate(labelling):
        position[v] = i
    relabelled = []
    for v in labelling:
        row = 0
        for u in iter_bits(rows[v]):
            row |= 1 << position[u]
        relabelled.append(row)
    return tuple(relabelled)


def canonical_labelling(graph):
    """
    Return a vertex ordering such that isomorphic graphs relabelled by their
    canonical orderings become identical.

    Equitable refinement followed by individualisation of the vertices of
    the first non-singleton cell, keeping the labelling whose relabelled
    adjacency rows are largest. Twin vertices in the target cell are
    exchangeable by an automorphism, so only one of them is tried.
    """
    rows = graph.rows
    best = [None, None]

    def search(cells):
        cells = _refine(rows, cells)
        target = next((i for i, cell in enumerate(cells) if len(cell) > 1), None)
        if target is None:
            labelling = [cell[0] for cell in cells]
            key = _relabelled_rows(rows, labelling)
            if best[0] is None or key > best[0]:
                best[0], best[1] = key, labelling
            return
        cell = cells[target]
        tried = []
        for v in cell:
            if any(rows[v] & ~(1 << u) == rows[u] & ~(1 << v) for u in tried):
                continue
            tried.append(v)
            rest = [u for u in cell if u != v]
            search(cells[:target] + [[v], rest] + cells[target + 1:])

    if graph.order:
        search([list(range(graph.order))])
        return best[1]
    return []


def canonical_graph(graph):
    """The canonical relabelling of ``graph``"""
    return graph.relabel(canonical_labelling(graph))


def canonical_form(graph):
    """
    Canonical byte string: equal for two graphs exactly when they are
    isomorphic. It is the graph6 encoding of the canonical relabelling.

    :rtype: bytes
    """
    if graph._canonical is None:
        graph._canonical = canonical_graph(graph).to_graph6().encode('ascii')
    return graph._canonical


def is_isomorphic(first, second):
    """True iff an edge-preserving bijection exists"""
    if first.order != second.order:
        return False
    if sorted(first.degrees()) != sorted(second.degrees()):
        return False
    return canonical_form(first) == canonical_form(second)


def parse_graph(value):
    """
    Read a graph given either as a graph6 string or as the path of a file
    holding one graph6 line

    :raises Graph6FormatError: if the value cannot be decoded
    """
    if os.path.isfile(value):
        graphs = read_graph6_file(value)
        if len(graphs) != 1:
            raise Graph6FormatError("expected one graph in '%s', found %d" %
                                    (value, len(graphs)))
        return graphs[0]
    return BitGraph.from_graph6(value)


def read_graph6_lines(lines):
    """Decode every non blank line as a graph6 string"""
    graphs = []
    for number, line in enumerate(lines, 1):
        line = line.strip()
        if not line:
            continue
        try:
            graphs.append(BitGraph.from_graph6(line))
        except Graph6FormatError as e:
            raise Graph6FormatError("line %d: %s" % (number, e))
    return graphs


def read_graph6_file(file_name):
    with open(file_name, 'r') as graph_file:
        return read_graph6_lines(graph_file)


def write_graph6_lines(graphs):
    """Encode graphs one per line"""
    return ''.join(graph.to_graph6() + '\n' for graph in graphs)


def read_edge_list_lines(lines):
    """
    Decode an edge list: a header line ``N <order>`` followed by one
    ``<u> <v>`` line per edge. Blank lines and lines starting with ``#``
    are skipped.
    """
    order = None
    edges = []
    for number, line in enumerate(lines, 1):
        tokens = line.split()
        if not tokens or tokens[0].startswith('#'):
            continue
        try:
            if order is None:
                if len(tokens) != 2 or tokens[0] != 'N':
                    raise GraphException("expected 'N <order>'")
                order = int(tokens[1])
            elif len(tokens) != 2:
                raise GraphException("expected '<u> <v>'")
            else:
                edges.append((int(tokens[0]), int(tokens[1])))
        except ValueError:
            raise GraphException("line %d: invalid integer in %r" % (number, line.strip()))
        except GraphException as e:
            raise GraphException("line %d: %s" % (number, e))
    if order is None:
        raise GraphException("edge list without an 'N <order>' header")
    return BitGraph.from_edges(order, edges)


def load_host(value):
    """
    Read a host graph given as a graph6 string, a graph6 file or an edge
    list file
    """
    if os.path.isfile(value):
        with open(value, 'r') as host_file:
            lines = host_file.readlines()
        first = next((line for line in lines if line.strip()), '')
        if first.split()[:1] == ['N'] or first.startswith('#'):
            return read_edge_list_lines(lines)
        graphs = read_graph6_lines(lines)
        if len(graphs) != 1:
            raise Graph6FormatError("expected one graph in '%s', found %d" %
                                    (value, len(graphs)))
        return graphs[0]
    return BitGraph.from_graph6(value)

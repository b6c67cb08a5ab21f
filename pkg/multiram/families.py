# (c) 2024 Multiram Project
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
#
# This file is part of Multiram
#
"""
Derived graph families.

Every family keeps one representative per isomorphism class, stored with
its canonical labelling and sorted by (order, canonical form).
"""

import logging

from multiram.graph import (canonical_form, canonical_graph,
                            connected_components, independence_number,
                            induced_subgraph, maximal_independent_sets)
from multiram.utils import popcount

_logger = logging.getLogger(__name__)

#: Family kinds accepted by :func:`family_by_kind`
FAMILY_KINDS = ('d', 'd-prime', 'd-c', 'd-c-prime', 'components')


class GraphFamily(object):
    """
    An isomorphism-deduplicated set of graphs
    """

    def __init__(self, graphs=()):
        index = {}
        for graph in graphs:
            key = canonical_form(graph)
            if key not in index:
                index[key] = canonical_graph(graph)
        self._members = tuple(index[key] for key in
                              sorted(index, key=lambda k: (index[k].order, k)))
        self._keys = frozenset(index)

    @property
    def members(self):
        return self._members

    def __iter__(self):
        return iter(self._members)

    def __len__(self):
        return len(self._members)

    def __contains__(self, graph):
        return canonical_form(graph) in self._keys

    def __eq__(self, other):
        if not isinstance(other, GraphFamily):
            return NotImplemented
        return self._keys == other._keys

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash(self._keys)

    def __repr__(self):
        return "GraphFamily(%s)" % ', '.join(self.to_json())

    def issubset(self, other):
        return self._keys <= other._keys

    def min_order(self):
        """Order of the smallest member, None for the empty family"""
        if not self._members:
            return None
        return self._members[0].order

    def has_empty_member(self):
        """True when the graph without vertices is a member"""
        return self.min_order() == 0

    def to_json(self):
        return [graph.to_graph6() for graph in self._members]


def _remainders(graph, independent_sets):
    full = graph.full_mask
    for independent in independent_sets:
        yield induced_subgraph(graph, full & ~independent)


def _components(graph):
    """
    Connected components of a graph as induced subgraphs. The graph without
    vertices contributes itself.
    """
    if not graph.order:
        return [graph]
    return [induced_subgraph(graph, component)
            for component in connected_components(graph)]


def d_family(graph):
    """
    Graphs obtained by removing a maximal independent set

    :param multiram.graph.BitGraph graph: a graph with at least one vertex
    :rtype: GraphFamily
    """
    family = GraphFamily(_remainders(graph, maximal_independent_sets(graph)))
    _logger.debug("d-family of %s has %d members", graph.to_graph6(), len(family))
    return family


def d_prime_family(graph):
    """
    Graphs obtained by removing a maximum independent set
    """
    alpha = independence_number(graph)
    maximum = [s for s in maximal_independent_sets(graph) if popcount(s) == alpha]
    return GraphFamily(_remainders(graph, maximum))


def components_family(graph):
    """
    The connected components of ``graph``, up to isomorphism
    """
    return GraphFamily(_components(graph))


def _family_components(family):
    graphs = []
    for member in family:
        graphs.extend(_components(member))
    return GraphFamily(graphs)


def d_c_family(graph):
    """
    Connected components of the members of :func:`d_family`
    """
    return _family_components(d_family(graph))


def d_c_prime_family(graph):
    """
    Connected components of the members of :func:`d_prime_family`
    """
    return _family_components(d_prime_family(graph))


_FAMILY_BUILDERS = {
    'd': d_family,
    'd-prime': d_prime_family,
    'd-c': d_c_family,
    'd-c-prime': d_c_prime_family,
    'components': components_family,
}


def family_by_kind(graph, kind):
    """
    Compute a family by its symbolic name (one in FAMILY_KINDS)
    """
    try:
        builder = _FAMILY_BUILDERS[kind]
    except KeyError:
        raise ValueError("unknown family kind '%s' (use one of: %s)" %
                         (kind, ', '.join(FAMILY_KINDS)))
    return builder(graph)

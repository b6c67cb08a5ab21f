# (c) 2024 Multiram Project
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
#
# This file is part of Multiram
#
"""
Red/blue colourings of the edges of a complete graph and their file formats.

Only the red adjacency is stored; blue is its complement inside the
complete graph. A swap flag exchanges the two colours without copying.

Text format::

    N <order>
    r <u> <v>      (one line per red edge, 0 <= u < v < order)

JSON format::

    {"n": <order>, "red": [[u, v], ...]}
"""

import collections
import json
import logging
import re

import numpy

from multiram.exceptions import ColouringFormatError, VertexSetError
from multiram.graph import make_graph
from multiram.utils import (bool_rows_to_masks, dump_json, iter_bits,
                            make_rng, mask_of, members, popcount)

_logger = logging.getLogger(__name__)

RED = 'red'
BLUE = 'blue'
COLOURS = (RED, BLUE)

#: Largest supported number of vertices
MAX_ORDER = 4096

_TOKEN_RE = re.compile(r'\S+')


def other_colour(colour):
    """The colour that is not ``colour``"""
    return BLUE if parse_colour(colour) == RED else RED


def parse_colour(value):
    """
    Normalise a colour name

    :raises ValueError: for anything but red or blue
    """
    colour = str(value).strip().lower()
    if colour not in COLOURS:
        raise ValueError("invalid colour '%s' (use 'red' or 'blue')" % value)
    return colour


class TwoColouring(object):
    """
    A 2-colouring of the edges of the complete graph on ``order`` vertices
    """

    __slots__ = ('order', '_rows', '_swapped', '_views')

    def __init__(self, order, red_rows, swapped=False, validate=True):
        """
        :param int order: number of vertices, 0..4096
        :param red_rows: adjacency bitsets of the stored colour class
        :param bool swapped: when True the stored class is blue
        :param bool validate: check the stored class is a simple graph
        """
        if not 0 <= order <= MAX_ORDER:
            raise ValueError("colouring order %d outside 0..%d" % (order, MAX_ORDER))
        graph = make_graph(order, red_rows, validate=validate)
        self.order = order
        self._rows = graph.rows
        self._swapped = bool(swapped)
        self._views = {}

    @property
    def full_mask(self):
        return (1 << self.order) - 1

    def rows(self, colour):
        """Adjacency bitsets of the given colour class"""
        colour = parse_colour(colour)
        if (colour == RED) != self._swapped:
            return self._rows
        return self.colour_class(colour).rows

    def colour_class(self, colour):
        """
        The graph formed by the edges of one colour. It is a SmallGraph up
        to 64 vertices and a BitGraph above.
        """
        colour = parse_colour(colour)
        if colour not in self._views:
            if (colour == RED) != self._swapped:
                view = make_graph(self.order, self._rows, validate=False)
            else:
                full = self.full_mask
                view = make_graph(self.order,
                                  (row ^ full ^ (1 << v)
                                   for v, row in enumerate(self._rows)),
                                  validate=False)
            self._views[colour] = view
        return self._views[colour]

    def colour(self, u, v):
        """Colour of the edge uv"""
        if u == v:
            raise VertexSetError("no edge joins vertex %d to itself" % u)
        if not (0 <= u < self.order and 0 <= v < self.order):
            raise VertexSetError("edge %d-%d outside 0..%d" % (u, v, self.order - 1))
        stored = bool(self._rows[u] >> v & 1)
        return RED if stored != self._swapped else BLUE

    def swapped(self):
        """The same colouring with red and blue exchanged"""
        return TwoColouring(self.order, self._rows, not self._swapped,
                            validate=False)

    def restrict(self, vertex_set):
        """
        The colouring induced on ``vertex_set``, relabelled in ascending
        order of the original vertices
        """
        view = self.colour_class(RED).induced_subgraph(vertex_set)
        return TwoColouring(view.order, view.rows, validate=False)

    def red_edges(self):
        """Yield red edges as (u, v) with u < v"""
        return self.colour_class(RED).edges()

    def red_edge_count(self):
        return self.colour_class(RED).edge_count()

    def is_mono_set(self, vertex_set, colour):
        """True when every edge inside ``vertex_set`` has ``colour``"""
        return self.colour_class(colour).is_clique(vertex_set)

    def to_text(self):
        lines = ['N %d' % self.order]
        lines.extend('r %d %d' % edge for edge in self.red_edges())
        return '\n'.join(lines) + '\n'

    def to_json(self):
        return {'n': self.order, 'red': [list(edge) for edge in self.red_edges()]}

    def __eq__(self, other):
        if not isinstance(other, TwoColouring):
            return NotImplemented
        return (self.order == other.order and
                self.rows(RED) == other.rows(RED))

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.order, self.rows(RED)))

    def __repr__(self):
        return "TwoColouring(order=%d, red_edges=%d)" % (self.order,
                                                          self.red_edge_count())


def from_red_graph(graph):
    """The colouring whose red class is ``graph``"""
    return TwoColouring(graph.order, graph.rows, validate=False)


def from_red_edges(order, edges):
    """The colouring of K_order whose red edges are ``edges``"""
    rows = [0] * order
    for u, v in edges:
        if u == v or not (0 <= u < order and 0 <= v < order):
            raise VertexSetError("invalid red edge %d-%d for order %d" % (u, v, order))
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return TwoColouring(order, rows, validate=False)


def monochromatic(order, colour):
    """Every edge of K_order in ``colour``"""
    colour = parse_colour(colour)
    return TwoColouring(order, [0] * order, swapped=(colour == RED),
                        validate=False)


def random_colouring(order, seed, p=0.5):
    """
    Seeded random colouring, each edge red independently with probability p
    """
    rng = make_rng(seed)
    upper = numpy.triu(rng.random((order, order)) < p, 1)
    return TwoColouring(order, bool_rows_to_masks(upper | upper.T),
                        validate=False)


def pentagon():
    """The colouring of K_5 whose red and blue classes are both 5-cycles"""
    return from_red_edges(5, [(i, (i + 1) % 5) for i in range(5)])


def _token_column(line, index):
    for i, match in enumerate(_TOKEN_RE.finditer(line)):
        if i == index:
            return match.start() + 1
    return len(line) + 1


def _parse_int(token, line_number, line, index, what):
    try:
        return int(token)
    except ValueError:
        raise ColouringFormatError("%s '%s' is not an integer" % (what, token),
                                   line_number, _token_column(line, index))


def _read_text(text):
    order = None
    rows = None
    seen = set()
    for line_number, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith('#'):
            continue
        tokens = stripped.split()
        if order is None:
            if len(tokens) != 2 or tokens[0] != 'N':
                raise ColouringFormatError("malformed header, expected 'N <order>'",
                                           line_number, 1)
            order = _parse_int(tokens[1], line_number, line, 1, 'order')
            if not 0 <= order <= MAX_ORDER:
                raise ColouringFormatError("order %d outside 0..%d" % (order, MAX_ORDER),
                                           line_number, _token_column(line, 1))
            rows = [0] * order
            continue
        if len(tokens) != 3 or tokens[0] != 'r':
            raise ColouringFormatError("malformed edge line, expected 'r <u> <v>'",
                                       line_number, 1)
        u = _parse_int(tokens[1], line_number, line, 1, 'endpoint')
        v = _parse_int(tokens[2], line_number, line, 2, 'endpoint')
        if u == v:
            raise ColouringFormatError("self-loop at vertex %d" % u,
                                       line_number, _token_column(line, 2))
        for index, endpoint in ((1, u), (2, v)):
            if not 0 <= endpoint < order:
                raise ColouringFormatError("endpoint %d outside 0..%d" % (endpoint, order - 1),
                                           line_number, _token_column(line, index))
        if u > v:
            raise ColouringFormatError("endpoints must satisfy u < v",
                                       line_number, _token_column(line, 1))
        if (u, v) in seen:
            raise ColouringFormatError("duplicate edge %d-%d" % (u, v),
                                       line_number, 1)
        seen.add((u, v))
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    if order is None:
        raise ColouringFormatError("missing header 'N <order>'", 1, 1)
    return TwoColouring(order, rows, validate=False)


def _read_json(text):
    try:
        data = json.loads(text)
    except ValueError as e:
        raise ColouringFormatError("invalid JSON: %s" % e,
                                   getattr(e, 'lineno', None), getattr(e, 'colno', None))
    if not isinstance(data, dict) or 'n' not in data:
        raise ColouringFormatError("JSON colouring needs an object with key 'n'")
    order = data['n']
    if not isinstance(order, int) or isinstance(order, bool) or not 0 <= order <= MAX_ORDER:
        raise ColouringFormatError("order %r outside 0..%d" % (order, MAX_ORDER))
    rows = [0] * order
    seen = set()
    for position, edge in enumerate(data.get('red', [])):
        if (not isinstance(edge, (list, tuple)) or len(edge) != 2 or
                not all(isinstance(x, int) and not isinstance(x, bool) for x in edge)):
            raise ColouringFormatError("red edge #%d is not a pair of integers" % position)
        u, v = sorted(edge)
        if u == v:
            raise ColouringFormatError("red edge #%d is a self-loop at vertex %d" % (position, u))
        if u < 0 or v >= order:
            raise ColouringFormatError("red edge #%d (%d-%d) outside 0..%d" %
                                       (position, u, v, order - 1))
        if (u, v) in seen:
            raise ColouringFormatError("red edge #%d duplicates %d-%d" % (position, u, v))
        seen.add((u, v))
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return TwoColouring(order, rows, validate=False)


def read_colouring(data):
    """
    Decode a colouring from its text or JSON form; the format is detected
    from the first non blank character

    :param bytes|str data: the serialised colouring
    :raises ColouringFormatError: on malformed input, with its position
    """
    if isinstance(data, bytes):
        try:
            data = data.decode('utf-8')
        except UnicodeDecodeError:
            raise ColouringFormatError("colouring data is not valid UTF-8")
    if data.lstrip().startswith('{'):
        return _read_json(data)
    return _read_text(data)


def write_colouring(colouring, fmt='text'):
    """
    Encode a colouring

    :param TwoColouring colouring: the colouring
    :param str fmt: 'text' or 'json'
    :rtype: bytes
    """
    if fmt == 'text':
        return colouring.to_text().encode('utf-8')
    if fmt == 'json':
        return (dump_json(colouring.to_json()) + '\n').encode('utf-8')
    raise ValueError("unknown colouring format '%s'" % fmt)


def load_colouring(file_name):
    with open(file_name, 'rb') as colouring_file:
        return read_colouring(colouring_file.read())


def dump_colouring(colouring, file_name, fmt='text'):
    with open(file_name, 'wb') as colouring_file:
        colouring_file.write(write_colouring(colouring, fmt))


class PartitionSpec(object):
    """
    Named, disjoint vertex blocks covering 0..order-1, in insertion order
    """

    def __init__(self, order, blocks):
        """
        :param int order: number of vertices to cover
        :param blocks: iterable of (name, vertex set) pairs or a mapping
        :raises VertexSetError: if blocks overlap or do not cover the range
        """
        if hasattr(blocks, 'items'):
            blocks = blocks.items()
        self.order = order
        self.blocks = collections.OrderedDict()
        covered = 0
        for name, block in blocks:
            if name in self.blocks:
                raise VertexSetError("block '%s' given twice" % name)
            if block & covered:
                raise VertexSetError("block '%s' overlaps a previous block on %s" %
                                     (name, members(block & covered)))
            covered |= block
            self.blocks[name] = block
        full = (1 << order) - 1
        if covered != full:
            raise VertexSetError("blocks do not cover 0..%d: missing %s, extra %s" %
                                 (order - 1, members(full & ~covered),
                                  members(covered & ~full)))

    def __getitem__(self, name):
        return self.blocks[name]

    def get(self, name, default=0):
        return self.blocks.get(name, default)

    def names(self):
        return list(self.blocks)

    def size(self, name):
        return popcount(self.blocks.get(name, 0))

    def __eq__(self, other):
        if not isinstance(other, PartitionSpec):
            return NotImplemented
        return self.order == other.order and self.blocks == other.blocks

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __repr__(self):
        return "PartitionSpec(%s)" % ', '.join(
            '%s=%d' % (name, popcount(block)) for name, block in self.blocks.items())

    def to_json(self):
        return collections.OrderedDict((name, members(block))
                                       for name, block in self.blocks.items())

    @classmethod
    def from_json(cls, data, order=None):
        """
        Decode a partition from its JSON mapping of names to vertex lists

        :param dict data: name -> list of vertices
        :param int order: expected order; inferred from the blocks when None
        """
        if isinstance(data, (str, bytes)):
            data = json.loads(data)
        if not isinstance(data, dict):
            raise VertexSetError("a partition is an object of named vertex lists, "
                                 "not %s" % type(data).__name__)
        blocks = [(name, mask_of(vertices)) for name, vertices in data.items()]
        if order is None:
            order = sum(len(vertices) for vertices in data.values())
        return cls(order, blocks)


def block_layout(sizes):
    """
    Consecutive vertex blocks of the given sizes

    :param sizes: iterable of (name, size) pairs
    :rtype: PartitionSpec
    """
    blocks = []
    start = 0
    for name, size in sizes:
        if size < 0:
            raise ValueError("block '%s' has negative size %d" % (name, size))
        blocks.append((name, ((1 << size) - 1) << start))
        start += size
    return PartitionSpec(start, blocks)


def colouring_from_blocks(partition, inside, between):
    """
    Build a colouring that is constant inside each block and between each
    pair of blocks

    :param PartitionSpec partition: the blocks
    :param dict inside: block name -> colour of its internal edges
    :param dict between: (name, name) -> colour of the edges across; the
        pair may be given in either order
    :rtype: TwoColouring
    """
    rows = [0] * partition.order
    names = partition.names()
    for name in names:
        if parse_colour(inside.get(name, BLUE)) == RED:
            block = partition[name]
            for v in iter_bits(block):
                rows[v] |= block ^ (1 << v)
    for i, first in enumerate(names):
        for second in names[i + 1:]:
            colour = between.get((first, second), between.get((second, first), BLUE))
            if parse_colour(colour) != RED:
                continue
            a, b = partition[first], partition[second]
            for v in iter_bits(a):
                rows[v] |= b
            for v in iter_bits(b):
                rows[v] |= a
    return TwoColouring(partition.order, rows, validate=False)


def embed_colouring(host_rows, colouring, block):
    """
    Copy the red edges of ``colouring`` onto the vertices of ``block`` (in
    ascending order) inside the mutable row list ``host_rows``
    """
    vertices = members(block)
    if len(vertices) != colouring.order:
        raise VertexSetError("block holds %d vertices, colouring has %d" %
                             (len(vertices), colouring.order))
    for u, v in colouring.red_edges():
        host_rows[vertices[u]] |= 1 << vertices[v]
        host_rows[vertices[v]] |= 1 << vertices[u]

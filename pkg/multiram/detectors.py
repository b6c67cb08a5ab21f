# (c) 2024 Multiram Project
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
#
# This file is part of Multiram
#
"""
Exact searches for monochromatic objects inside a 2-colouring: copies of a
pattern, vertex-disjoint packings, family copies, ties and joins, together
with the verifiers of the certificates they return.

Every finder is deterministic. Callers may pass a ``forbidden`` vertex set
that no returned object may touch.
"""

import logging

from multiram.colouring import BLUE, RED, parse_colour
from multiram.exceptions import PreconditionError, ProcedureError
from multiram.graph import (BitGraph, find_clique, independence_number,
                            iter_cliques)
from multiram.utils import iter_bits, lowest_vertex, mask_of, members, popcount

_logger = logging.getLogger(__name__)


class Embedding(object):
    """
    A copy of ``pattern`` in one colour: pattern vertex ``i`` is mapped to
    host vertex ``vertices[i]``
    """

    def __init__(self, pattern, vertices, colour):
        self.pattern = pattern
        self.vertices = tuple(vertices)
        self.colour = parse_colour(colour)

    @property
    def vertex_set(self):
        return mask_of(self.vertices)

    def __eq__(self, other):
        if not isinstance(other, Embedding):
            return NotImplemented
        return (self.pattern == other.pattern and
                self.vertices == other.vertices and
                self.colour == other.colour)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __repr__(self):
        return "Embedding(%s, %s, %s)" % (self.pattern.to_graph6(),
                                          list(self.vertices), self.colour)

    def to_json(self):
        return {
            'colour': self.colour,
            'pattern': self.pattern.to_graph6(),
            'vertices': list(self.vertices),
        }

    @classmethod
    def from_json(cls, data):
        return cls(BitGraph.from_graph6(data['pattern']), data['vertices'],
                   data['colour'])


class Packing(object):
    """
    Pairwise vertex-disjoint copies, all of the same colour
    """

    def __init__(self, copies, colour):
        self.copies = list(copies)
        self.colour = parse_colour(colour)

    @property
    def vertex_set(self):
        mask = 0
        for copy in self.copies:
            mask |= copy.vertex_set
        return mask

    def __len__(self):
        return len(self.copies)

    def __repr__(self):
        return "Packing(%s, %s)" % ([list(c.vertices) for c in self.copies],
                                    self.colour)

    def to_json(self):
        return {
            'colour': self.colour,
            'copies': [{'pattern': c.pattern.to_graph6(),
                        'vertices': list(c.vertices)} for c in self.copies],
        }

    @classmethod
    def from_json(cls, data):
        colour = data['colour']
        return cls([Embedding(BitGraph.from_graph6(c['pattern']), c['vertices'], colour)
                    for c in data['copies']], colour)


class Tie(object):
    """
    A set of 2|H| - alpha(H) vertices holding a red and a blue copy of H
    """

    def __init__(self, pattern, vertex_set, red, blue):
        self.pattern = pattern
        self.vertex_set = vertex_set
        self.red = red
        self.blue = blue

    def copy_of(self, colour):
        """The embedding of the given colour"""
        return self.red if parse_colour(colour) == RED else self.blue

    def __repr__(self):
        return "Tie(%s, red=%s, blue=%s)" % (members(self.vertex_set),
                                             list(self.red.vertices),
                                             list(self.blue.vertices))

    def to_json(self):
        return {
            'blue': list(self.blue.vertices),
            'pattern': self.pattern.to_graph6(),
            'red': list(self.red.vertices),
            'vertices': members(self.vertex_set),
        }

    @classmethod
    def from_json(cls, data):
        pattern = BitGraph.from_graph6(data['pattern'])
        return cls(pattern, mask_of(data['vertices']),
                   Embedding(pattern, data['red'], RED),
                   Embedding(pattern, data['blue'], BLUE))


class Join(object):
    """
    A red clique ``r_part`` and a blue clique ``b_part`` with every edge
    between them of ``colour``
    """

    def __init__(self, r_part, b_part, colour):
        self.r_part = r_part
        self.b_part = b_part
        self.colour = parse_colour(colour)

    def __repr__(self):
        return "Join(R=%s, B=%s, %s)" % (members(self.r_part),
                                         members(self.b_part), self.colour)

    def to_json(self):
        return {
            'B': members(self.b_part),
            'R': members(self.r_part),
            'colour': self.colour,
        }

    @classmethod
    def from_json(cls, data):
        return cls(mask_of(data['R']), mask_of(data['B']), data['colour'])


def _ensure(valid, certificate):
    if not valid:
        raise ProcedureError('verify', "produced an invalid certificate %r" % certificate)


def _plan(pattern):
    """
    Mapping order of the pattern vertices (ascending), each with its
    degree and the earlier pattern vertices it is adjacent to
    """
    plan = []
    placed = 0
    for p in range(pattern.order):
        plan.append((p, members(pattern.rows[p] & placed), pattern.degree(p)))
        placed |= 1 << p
    return plan


def _iter_embeddings(rows, plan, available, outside=0, budget=None):
    """
    Yield every embedding (as a tuple indexed by pattern vertex) of the
    planned pattern inside ``available``, in lexicographic order of the
    plan. When ``budget`` is given at most that many host vertices may fall
    in ``outside``.
    """
    k = len(plan)
    mapping = [0] * k

    def extend(depth, used, spent):
        if depth == k:
            yield tuple(mapping)
            return
        p, back, degree = plan[depth]
        candidates = available & ~used
        for q in back:
            candidates &= rows[mapping[q]]
        while candidates:
            low = candidates & -candidates
            candidates ^= low
            h = low.bit_length() - 1
            if degree and popcount(rows[h] & available) < degree:
                continue
            cost = spent + 1 if low & outside else spent
            if budget is not None and cost > budget:
                continue
            mapping[p] = h
            for found in extend(depth + 1, used | low, cost):
                yield found

    return extend(0, 0, 0)


def _first_embedding(rows, plan, available, outside=0, budget=None):
    for found in _iter_embeddings(rows, plan, available, outside, budget):
        return found
    return None


def _usable(c, forbidden):
    return c.full_mask & ~forbidden


def find_mono_copy(c, pattern, colour, forbidden=0):
    """
    Lexicographically least monochromatic copy of ``pattern``

    :param multiram.colouring.TwoColouring c: the colouring
    :param multiram.graph.BitGraph pattern: the pattern H
    :param str colour: red or blue
    :param int forbidden: vertices the copy may not use
    :rtype: Embedding|None
    """
    colour = parse_colour(colour)
    available = _usable(c, forbidden)
    if pattern.order > popcount(available):
        return None
    found = _first_embedding(c.rows(colour), _plan(pattern), available)
    if found is None:
        return None
    return Embedding(pattern, found, colour)


def find_family_copy(c, family, colour, forbidden=0):
    """
    A copy of the first member of ``family`` (in family order) that appears
    in ``colour``; the member without vertices is found vacuously
    """
    for member in family:
        embedding = find_mono_copy(c, member, colour, forbidden)
        if embedding is not None:
            return embedding
    return None


def _twin_classes(rows, available):
    """
    Partition ``available`` into classes of twins of the graph induced on
    it: true twins share the closed neighbourhood, false twins the open one.
    Any permutation inside a class is an automorphism.
    """
    closed = {}
    for v in iter_bits(available):
        key = (rows[v] & available) | (1 << v)
        closed[key] = closed.get(key, 0) | (1 << v)
    classes = []
    opened = {}
    for group in closed.values():
        if popcount(group) > 1:
            classes.append(group)
            continue
        v = lowest_vertex(group)
        key = rows[v] & available
        opened[key] = opened.get(key, 0) | group
    classes.extend(opened.values())
    classes.sort(key=lambda mask: mask & -mask)
    return classes


def _lowest_bits(mask, count):
    chosen = 0
    while count:
        low = mask & -mask
        chosen |= low
        mask ^= low
        count -= 1
    return chosen


class _PackingSearch(object):
    """
    Exact branch and bound for ``copies`` disjoint copies of any pattern
    """

    def __init__(self, rows, patterns, available):
        self.rows = rows
        self.patterns = [(p, _plan(p)) for p in patterns]
        self.orders = sorted(set(p.order for p in patterns))
        self.min_order = self.orders[0]
        self.min_degree = min(p.min_degree() for p in patterns)
        self.classes = _twin_classes(rows, available)
        self.failed = set()
        self.copy_cache = {}
        self.nodes = 0

    def _key(self, available, copies):
        return (copies,) + tuple(popcount(available & cls) for cls in self.classes)

    def _peel(self, available):
        """Drop vertices whose degree is too small for any copy"""
        if not self.min_degree:
            return available
        rows = self.rows
        changed = True
        while changed and available:
            changed = False
            for v in iter_bits(available):
                if popcount(rows[v] & available) < self.min_degree:
                    available &= ~(1 << v)
                    changed = True
        return available

    def copy_on(self, vertex_set):
        """Embedding of some pattern spanning exactly ``vertex_set``"""
        if vertex_set not in self.copy_cache:
            found = None
            size = popcount(vertex_set)
            for pattern, plan in self.patterns:
                if pattern.order != size:
                    continue
                mapping = _first_embedding(self.rows, plan, vertex_set)
                if mapping is not None:
                    found = (pattern, mapping)
                    break
            self.copy_cache[vertex_set] = found
        return self.copy_cache[vertex_set]

    def _candidate_sets(self, available, through):
        """
        Vertex sets containing ``through`` that may carry a copy, one per
        orbit of the twin-class permutations
        """
        parts = [cls & available for cls in self.classes if cls & available]
        # the class holding the required vertex goes first
        parts.sort(key=lambda part: (not part >> through & 1, part & -part))
        head = parts[0]
        parts[0] = head & ~(1 << through)
        capacity = [0] * (len(parts) + 1)
        for i in range(len(parts) - 1, -1, -1):
            capacity[i] = capacity[i + 1] + popcount(parts[i])

        def choose(index, remaining, chosen):
            if not remaining:
                yield chosen
                return
            if index == len(parts) or capacity[index] < remaining:
                return
            top = min(remaining, popcount(parts[index]))
            for take in range(top, -1, -1):
                for found in choose(index + 1, remaining - take,
                                    chosen | _lowest_bits(parts[index], take)):
                    yield found

        for size in self.orders:
            if size == 0:
                continue
            for vertex_set in choose(0, size - 1, 1 << through):
                yield vertex_set

    def _copies_through(self, available, copies, v):
        for vertex_set in self._candidate_sets(available, v):
            found = self.copy_on(vertex_set)
            if found is None:
                continue
            rest = self.branch(available & ~vertex_set, copies - 1)
            if rest is not None:
                return [found] + rest
        return None

    def branch(self, available, copies, through=None):
        """
        Find ``copies`` disjoint copies inside ``available``. The lowest
        vertex is either covered by a copy or dropped; drops are iterated
        so the recursion depth stays bounded by ``copies``.
        """
        if copies == 0:
            return []
        if through is not None:
            self.nodes += 1
            return self._copies_through(available, copies, through)
        visited = []
        while True:
            self.nodes += 1
            available = self._peel(available)
            if popcount(available) < copies * self.min_order:
                break
            key = self._key(available, copies)
            if key in self.failed:
                break
            visited.append(key)
            v = lowest_vertex(available)
            found = self._copies_through(available, copies, v)
            if found is not None:
                return found
            available &= ~(1 << v)
        self.failed.update(visited)
        return None

    def greedy(self, available, copies):
        """Lowest-first greedy packing, returned only when it is complete"""
        found = []
        for _ in range(copies):
            best = None
            for pattern, plan in self.patterns:
                mapping = _first_embedding(self.rows, plan, available)
                if mapping is not None:
                    best = (pattern, mapping)
                    break
            if best is None:
                return None
            found.append(best)
            available &= ~mask_of(best[1])
        return found


def _pack(c, patterns, colour, copies, forbidden=0, through=None):
    colour = parse_colour(colour)
    if copies < 0:
        raise ValueError("number of copies must be non negative")
    if copies == 0:
        return Packing([], colour)
    patterns = list(patterns)
    for pattern in patterns:
        if pattern.order == 0:
            return Packing([Embedding(pattern, (), colour)] * copies, colour)
    available = _usable(c, forbidden)
    patterns = [p for p in patterns if p.order <= popcount(available)]
    if not patterns:
        return None
    if through is not None and not available >> through & 1:
        return None
    search = _PackingSearch(c.rows(colour), patterns, available)
    if through is None:
        found = search.greedy(available, copies)
        if found is None:
            found = search.branch(available, copies)
    else:
        found = search.branch(available, copies, through)
    _logger.debug("packing search for %d copies in %s: %d nodes, %s",
                  copies, colour, search.nodes,
                  'found' if found is not None else 'absent')
    if found is None:
        return None
    packing = Packing([Embedding(p, mapping, colour) for p, mapping in found],
                      colour)
    _ensure(verify_packing(c, packing, copies), packing)
    return packing


def find_disjoint_copies(c, pattern, colour, n, forbidden=0, through=None):
    """
    Exact search for ``n`` vertex-disjoint monochromatic copies of
    ``pattern``

    :param int through: when given, only packings using this vertex are
        searched
    :rtype: Packing|None
    """
    return _pack(c, [pattern], colour, n, forbidden, through)


def find_disjoint_family_copies(c, family, colour, n, forbidden=0, through=None):
    """
    Exact search for ``n`` vertex-disjoint monochromatic copies, each of
    some member of ``family``
    """
    return _pack(c, list(family), colour, n, forbidden, through)


def _tie_size(pattern):
    return 2 * pattern.order - independence_number(pattern)


def find_h_tie(c, pattern, forbidden=0, must_touch=0):
    """
    Search a set of 2|H| - alpha(H) vertices holding both a red and a blue
    copy of H. Red copies are enumerated first; for each, a blue copy
    using at most |H| - alpha(H) further vertices is searched, and the union
    is padded with the lowest free vertices.

    :param int must_touch: when non zero, only sets meeting it are accepted
    :rtype: Tie|None
    """
    size = _tie_size(pattern)
    available = _usable(c, forbidden)
    if size > popcount(available):
        return None
    budget = size - pattern.order
    plan = _plan(pattern)
    red_rows, blue_rows = c.rows(RED), c.rows(BLUE)
    seen = set()
    for red in _iter_embeddings(red_rows, plan, available):
        red_set = mask_of(red)
        if red_set in seen:
            continue
        seen.add(red_set)
        for blue in _iter_embeddings(blue_rows, plan, available,
                                     outside=~red_set, budget=budget):
            union = red_set | mask_of(blue)
            vertex_set = _pad(union, available, size, must_touch)
            if vertex_set is None:
                continue
            tie = Tie(pattern, vertex_set, Embedding(pattern, red, RED),
                      Embedding(pattern, blue, BLUE))
            _ensure(verify_tie(c, tie), tie)
            return tie
    return None


def _pad(union, available, size, must_touch):
    missing = size - popcount(union)
    free = available & ~union
    vertex_set = union
    if must_touch and not union & must_touch:
        touch = free & must_touch
        if not missing or not touch:
            return None
        low = touch & -touch
        vertex_set |= low
        free ^= low
        missing -= 1
    if popcount(free) < missing:
        return None
    return vertex_set | _lowest_bits(free, missing)


def find_join(c, r_cand, b_cand, k, l):
    """
    A (k, l)-join: a red k-clique inside ``r_cand`` and a blue l-clique
    inside ``b_cand`` with every edge between them of one colour. Red
    joins are preferred for a given red clique.

    :rtype: Join|None
    """
    if r_cand & b_cand:
        raise PreconditionError("candidate sets overlap on %s" % members(r_cand & b_cand))
    red_rows, blue_rows = c.rows(RED), c.rows(BLUE)
    blue_graph = c.colour_class(BLUE)
    for r_part in iter_cliques(c.colour_class(RED), k, within=r_cand):
        for colour, rows in ((RED, red_rows), (BLUE, blue_rows)):
            common = b_cand
            for v in iter_bits(r_part):
                common &= rows[v]
            b_part = find_clique(blue_graph, l, within=common)
            if b_part is not None:
                join = Join(r_part, b_part, colour)
                _ensure(verify_join(c, join), join)
                return join
    return None


def verify_embedding(c, embedding):
    """True iff the embedding is injective, in range and monochromatic"""
    pattern = embedding.pattern
    vertices = embedding.vertices
    if len(vertices) != pattern.order or len(set(vertices)) != len(vertices):
        return False
    if any(not 0 <= v < c.order for v in vertices):
        return False
    rows = c.rows(embedding.colour)
    for u, v in pattern.edges():
        if not rows[vertices[u]] >> vertices[v] & 1:
            return False
    return True


def verify_packing(c, packing, n=None):
    """
    True iff every copy is a valid embedding of the packing colour, the
    copies are pairwise disjoint and, when ``n`` is given, there are n
    """
    if n is not None and len(packing.copies) != n:
        return False
    used = 0
    for copy in packing.copies:
        if copy.colour != packing.colour or not verify_embedding(c, copy):
            return False
        if used & copy.vertex_set:
            return False
        used |= copy.vertex_set
    return True


def verify_tie(c, tie):
    """
    True iff the set has exactly 2|H| - alpha(H) vertices and holds the red
    and the blue copy of H
    """
    if tie.vertex_set < 0 or tie.vertex_set & ~c.full_mask:
        return False
    if popcount(tie.vertex_set) != _tie_size(tie.pattern):
        return False
    for embedding, colour in ((tie.red, RED), (tie.blue, BLUE)):
        if embedding.colour != colour or embedding.pattern != tie.pattern:
            return False
        if not verify_embedding(c, embedding):
            return False
        if embedding.vertex_set & ~tie.vertex_set:
            return False
    return True


def verify_join(c, join, k=None, l=None):
    """
    True iff R spans only red edges, B only blue edges, they are disjoint
    and every R-B edge has the join colour
    """
    full = c.full_mask
    if join.r_part & ~full or join.b_part & ~full or join.r_part & join.b_part:
        return False
    if k is not None and popcount(join.r_part) != k:
        return False
    if l is not None and popcount(join.b_part) != l:
        return False
    if not c.is_mono_set(join.r_part, RED) or not c.is_mono_set(join.b_part, BLUE):
        return False
    rows = c.rows(join.colour)
    for v in iter_bits(join.r_part):
        if rows[v] & join.b_part != join.b_part:
            return False
    return True


def extend_packing_with_tie(c, tie, packing, colour):
    """
    Extend a packing disjoint from a tie with the tie's copy of the packing
    colour

    :raises PreconditionError: if the packing is invalid, of another colour
        or meets the tie
    """
    colour = parse_colour(colour)
    if packing.colour != colour or not verify_packing(c, packing):
        raise PreconditionError("the packing is not a valid %s packing" % colour,
                                witness=packing)
    if not verify_tie(c, tie):
        raise PreconditionError("the tie does not verify", witness=tie)
    if packing.vertex_set & tie.vertex_set:
        raise PreconditionError("the packing meets the tie on %s" %
                                members(packing.vertex_set & tie.vertex_set),
                                witness=packing)
    extended = Packing(packing.copies + [tie.copy_of(colour)], colour)
    if not verify_packing(c, extended, len(packing.copies) + 1):
        raise PreconditionError("the extended packing does not verify",
                                witness=extended)
    return extended

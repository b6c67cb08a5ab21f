# (c) 2024 Multiram Project
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
#
# This file is part of Multiram
#
"""
Explicit extremal colourings.

Every builder returns a :class:`ConstructionReport`: the colouring, the
named blocks it was assembled from and the monochromatic objects it claims
to avoid. The claims are checked by the exact detectors, so a report is a
lower bound certificate once :meth:`ConstructionReport.verify` passes.
"""

import logging

from multiram import solver
from multiram.colouring import (BLUE, RED, TwoColouring, block_layout,
                                colouring_from_blocks, embed_colouring,
                                monochromatic, parse_colour)
from multiram.detectors import (find_disjoint_family_copies, find_family_copy,
                                find_h_tie)
from multiram.exceptions import InvalidColouringError, PreconditionError
from multiram.families import (GraphFamily, components_family, d_c_family,
                               d_family)
from multiram.graph import independence_number, is_connected
from multiram.utils import iter_bits

_logger = logging.getLogger(__name__)


class Claim(object):
    """
    The assertion that ``colour`` holds no ``copies`` vertex-disjoint
    copies of members of ``family``
    """

    def __init__(self, family, copies, colour):
        if not isinstance(family, GraphFamily):
            family = GraphFamily([family])
        self.family = family
        self.copies = copies
        self.colour = parse_colour(colour)

    def find_violation(self, c):
        """The packing refuting the claim, or None"""
        return find_disjoint_family_copies(c, self.family, self.colour,
                                           self.copies)

    def __repr__(self):
        return "Claim(%dx%s, %s)" % (self.copies, self.family.to_json(),
                                     self.colour)

    def to_json(self):
        return {
            'colour': self.colour,
            'copies': self.copies,
            'family': self.family.to_json(),
        }


class ConstructionReport(object):
    """
    A colouring, the partition it was built on and its claimed absences
    """

    def __init__(self, colouring, partition, claims=()):
        if partition.order != colouring.order:
            raise PreconditionError("partition covers %d vertices, colouring has %d" %
                                    (partition.order, colouring.order))
        self.colouring = colouring
        self.partition = partition
        self.claims = list(claims)

    def check(self):
        """
        Run the detectors against every claim

        :return: list of (claim, violating packing) pairs, empty when all
            claims hold
        """
        violations = []
        for claim in self.claims:
            packing = claim.find_violation(self.colouring)
            if packing is not None:
                _logger.info("construction violates %r: %r", claim, packing)
                violations.append((claim, packing))
        return violations

    def verify(self):
        return not self.check()

    def to_json(self):
        return {
            'claims': [claim.to_json() for claim in self.claims],
            'colouring': self.colouring.to_json(),
            'partition': self.partition.to_json(),
        }


def _isolated_vertex(graph):
    for v in range(graph.order):
        if not graph.rows[v]:
            return v
    return None


def _require_copies(n):
    if n < 1:
        raise ValueError("the number of copies must be at least 1")


def _require_no_isolated(graph, name='H'):
    if graph.order == 0:
        raise PreconditionError("%s has no vertices" % name)
    isolated = _isolated_vertex(graph)
    if isolated is not None:
        raise PreconditionError("%s has an isolated vertex %d" % (name, isolated),
                                witness=isolated)


def _validate_e_colouring(e_col, avoid_red, avoid_blue):
    """
    Reject an E-colouring holding a red member of ``avoid_red`` or a blue
    member of ``avoid_blue``. A colouring without vertices is always legal.
    """
    if e_col.order == 0:
        return
    for family, colour in ((avoid_red, RED), (avoid_blue, BLUE)):
        embedding = find_family_copy(e_col, family, colour)
        if embedding is not None:
            raise InvalidColouringError(
                "the E-colouring holds a %s copy of %s" %
                (colour, embedding.pattern.to_graph6()), witness=embedding)


def _assemble(partition, inside, between, embedded=()):
    base = colouring_from_blocks(partition, inside, between)
    rows = list(base.rows(RED))
    for name, colouring in embedded:
        embed_colouring(rows, colouring, partition[name])
    return TwoColouring(partition.order, rows, validate=False)


def bes_lower(H, n):
    """
    The two-block colouring showing r(nH) > (2|H| - alpha(H))n - 2: a red
    clique R on (|H| - alpha)n - 1 vertices, a blue clique B on |H|n - 1
    vertices and red edges across

    :param multiram.graph.SmallGraph H: a graph without isolated vertices
    :param int n: number of copies, at least 1
    :rtype: ConstructionReport
    """
    _require_copies(n)
    _require_no_isolated(H)
    k = H.order
    alpha = independence_number(H)
    partition = block_layout([('R', (k - alpha) * n - 1), ('B', k * n - 1)])
    colouring = _assemble(partition, {'R': RED, 'B': BLUE}, {('R', 'B'): RED})
    _logger.debug("bes_lower: |R|=%d |B|=%d", partition.size('R'), partition.size('B'))
    family = GraphFamily([H])
    return ConstructionReport(colouring, partition,
                              [Claim(family, n, RED), Claim(family, n, BLUE)])


def _asym_layout(G, H, n, e_col):
    partition = block_layout([('A', n * H.order - 1), ('C', e_col.order)])
    colouring = _assemble(partition, {'A': BLUE}, {('A', 'C'): RED},
                          [('C', e_col)])
    return ConstructionReport(colouring, partition,
                              [Claim(G, 1, RED), Claim(H, n, BLUE)])


def asym_lower(G, H, n, e_col):
    """
    Colouring avoiding a red G and a blue nH for connected H: a blue block
    A on n|H| - 1 vertices joined in red to a block C coloured by
    ``e_col``, which must avoid red members of D(G) and a blue H

    :raises PreconditionError: if H is disconnected
    :raises InvalidColouringError: if ``e_col`` holds a forbidden object
    """
    _require_copies(n)
    if not is_connected(H):
        raise PreconditionError("H is disconnected; use asym_lower_components")
    _validate_e_colouring(e_col, d_family(G), GraphFamily([H]))
    return _asym_layout(G, H, n, e_col)


def asym_lower_components(G, H, n, e_col):
    """
    :func:`asym_lower` for any H: ``e_col`` must avoid red members of D(G)
    and blue components of H
    """
    _require_copies(n)
    if H.order == 0:
        raise PreconditionError("H has no vertices")
    _validate_e_colouring(e_col, d_family(G), components_family(H))
    return _asym_layout(G, H, n, e_col)


def asym_lower_auto(G, H, n, cap=None):
    """
    :func:`asym_lower` (or its disconnected variant) with an extremal
    E-colouring computed by the solver
    """
    if is_connected(H):
        e_col = solver.extremal_e_colouring(d_family(G), GraphFamily([H]), cap=cap)
        return asym_lower(G, H, n, e_col)
    e_col = solver.extremal_e_colouring(d_family(G), components_family(H), cap=cap)
    return asym_lower_components(G, H, n, e_col)


def critical_template(r_size, b_size, join_colour=RED, e_col=None,
                      e_to_r=BLUE, e_to_b=RED):
    """
    The three-block colouring: R red inside, B blue inside, R-B edges in
    ``join_colour``, E coloured by ``e_col`` and joined to R and B in
    ``e_to_r`` and ``e_to_b``. Blocks of size 0 are allowed.

    :rtype: ConstructionReport
    """
    if r_size < 0 or b_size < 0:
        raise ValueError("block sizes must be non negative")
    if e_col is None:
        e_col = monochromatic(0, RED)
    partition = block_layout([('R', r_size), ('B', b_size), ('E', e_col.order)])
    colouring = _assemble(
        partition, {'R': RED, 'B': BLUE},
        {('R', 'B'): join_colour, ('E', 'R'): e_to_r, ('E', 'B'): e_to_b},
        [('E', e_col)])
    return ConstructionReport(colouring, partition)


def estimate_lower(H, n, e_col):
    """
    Colouring without a monochromatic nH on (2|H| - alpha)n + |E| - 2
    vertices, where ``e_col`` avoids red members of D_c(H) and blue members
    of D(H)

    :param multiram.graph.SmallGraph H: connected, without isolated vertices
    :rtype: ConstructionReport
    """
    _require_copies(n)
    _require_no_isolated(H)
    if not is_connected(H):
        raise PreconditionError("H is disconnected")
    _validate_e_colouring(e_col, d_c_family(H), d_family(H))
    k = H.order
    alpha = independence_number(H)
    report = critical_template((k - alpha) * n - 1, k * n - 1, RED, e_col)
    family = GraphFamily([H])
    report.claims = [Claim(family, n, RED), Claim(family, n, BLUE)]
    return report


def estimate_lower_auto(H, n, cap=None):
    """
    :func:`estimate_lower` with an extremal E-colouring from the solver
    """
    e_col = solver.extremal_e_colouring(d_c_family(H), d_family(H), cap=cap)
    return estimate_lower(H, n, e_col)


def _first_pair(c, first, second, wanted):
    """First pair (u, v), u in first, v in second, whose colour is not wanted"""
    other = c.rows(BLUE if parse_colour(wanted) == RED else RED)
    for u in iter_bits(first):
        hit = other[u] & second & ~(1 << u)
        if hit:
            return (u, (hit & -hit).bit_length() - 1)
    return None


def check_critical_structure(c, p, H):
    """
    Check the three structural properties of a critical colouring:

    1. R is red inside and B is blue inside
    2. R-B edges share one colour, E-R edges are blue, E-B edges are red
    3. no H-tie contains a vertex of E

    :param multiram.colouring.TwoColouring c: the colouring
    :param multiram.colouring.PartitionSpec p: blocks named R, B and E
    :return: (ok, violations) with violations a list of
        (property, witness edge or Tie)
    """
    r_part, b_part, e_part = p.get('R'), p.get('B'), p.get('E')
    violations = []
    for block, colour in ((r_part, RED), (b_part, BLUE)):
        edge = _first_pair(c, block, block, colour)
        if edge is not None:
            violations.append((1, edge))
    if r_part and b_part:
        u = (r_part & -r_part).bit_length() - 1
        v = (b_part & -b_part).bit_length() - 1
        edge = _first_pair(c, r_part, b_part, c.colour(u, v))
        if edge is not None:
            violations.append((2, edge))
    for block, colour in ((r_part, BLUE), (b_part, RED)):
        edge = _first_pair(c, e_part, block, colour)
        if edge is not None:
            violations.append((2, edge))
    if e_part:
        tie = find_h_tie(c, H, must_touch=e_part)
        if tie is not None:
            violations.append((3, tie))
    _logger.debug("critical structure check: %d violations", len(violations))
    return not violations, violations

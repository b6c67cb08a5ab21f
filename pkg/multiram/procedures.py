# (c) 2024 Multiram Project
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
#
# This file is part of Multiram
#
"""
Constructive procedures on host graphs: dense subgraph extraction, robust
subsets, the resilient bipartite gadget, local absorbers, absorption
tiling with cliques, and the star argument that finds a (k, k)-join.

Randomized operations take a ``seed`` (an integer or a numpy Generator) and
are deterministic functions of their inputs and that seed. Every returned
certificate has been verified; failures raise
:class:`multiram.exceptions.ProcedureError` naming the failing step.
"""

import itertools
import logging
import math
from fractions import Fraction

import networkx as nx
from joblib import Parallel, delayed

from multiram.colouring import BLUE, RED
from multiram.detectors import Join, verify_join
from multiram.exceptions import (PreconditionError, ProcedureError,
                                 RetryCapExceeded)
from multiram.graph import (clique_in_rows, complete, find_clique,
                            make_graph)
from multiram.utils import iter_bits, make_rng, mask_of, members, popcount

_logger = logging.getLogger(__name__)

#: Degree bound every accepted gadget satisfies
MAX_GADGET_DEGREE = 40

#: Clique Ramsey numbers r(K_k) known exactly, used to bound the remainder
#: of a maximal clique packing in a host with no independent k-set
CLIQUE_RAMSEY = {1: 1, 2: 2, 3: 6, 4: 18}


def clique_ramsey_bound(k):
    """r(K_k) when known, 4^k otherwise"""
    return CLIQUE_RAMSEY.get(k, 4 ** k)


#: Subsets handed to one matching worker
_BATCH_SIZE = 64


def _lowest_bits(mask, count):
    chosen = 0
    for v in iter_bits(mask):
        if not count:
            break
        chosen |= 1 << v
        count -= 1
    return chosen


class TilingCertificate(object):
    """
    Vertex-disjoint k-cliques covering ``ground`` except ``leftover``

    ``ground`` is None when the certificate covers the whole host.
    """

    def __init__(self, k, tiles, leftover=0, ground=None):
        self.k = k
        self.tiles = list(tiles)
        self.leftover = leftover
        self.ground = ground

    @property
    def pattern(self):
        return complete(self.k)

    @property
    def covered(self):
        covered = 0
        for tile in self.tiles:
            covered |= tile
        return covered

    def __len__(self):
        return len(self.tiles)

    def __repr__(self):
        return "TilingCertificate(K_%d, tiles=%d, leftover=%d)" % (
            self.k, len(self.tiles), popcount(self.leftover))

    def to_json(self):
        return {
            'leftover': members(self.leftover),
            'pattern': 'K_%d' % self.k,
            'tiles': [members(tile) for tile in self.tiles],
        }

    @classmethod
    def from_json(cls, data, ground=None):
        pattern = str(data['pattern'])
        if not pattern.startswith('K_') or not pattern[2:].isdigit():
            raise ValueError("unsupported tiling pattern '%s'" % pattern)
        return cls(int(pattern[2:]),
                   [mask_of(tile) for tile in data['tiles']],
                   mask_of(data.get('leftover', [])), ground)


def verify_tiling(G, cert):
    """
    True iff the tiles are disjoint k-cliques of ``G``, the leftover has
    fewer than k vertices and tiles plus leftover cover the ground set
    """
    k = cert.k
    ground = G.full_mask if cert.ground is None else cert.ground
    if ground & ~G.full_mask or k < 1:
        return False
    used = 0
    for tile in cert.tiles:
        if popcount(tile) != k or tile & used or tile & ~ground:
            return False
        if not G.is_clique(tile):
            return False
        used |= tile
    if cert.leftover & used or cert.leftover & ~ground:
        return False
    if popcount(cert.leftover) >= k:
        return False
    return used | cert.leftover == ground


def _ensure_tiling(G, cert, step):
    if not verify_tiling(G, cert):
        raise ProcedureError(step, "the tiling does not verify",
                             snapshot=cert.to_json())
    return cert


# Dense subgraphs and robust subsets

def extract_dense_subgraph(G, k, d, check_size=True):
    """
    Find a vertex set S with |S| >= |G| / d^(k-1) on which every vertex has
    degree at least (1 - 1/d)|S|, in a graph without an independent k-set.

    While some vertex has too many non-neighbours in the current set (the
    most such, lowest index first) it is selected and only its
    non-neighbours are kept. Selected vertices are pairwise non-adjacent,
    so k - 1 selections plus a surviving vertex form an independent k-set.

    :param int k: at least 2
    :param int d: at least 2
    :param bool check_size: enforce |G| >= 3 d^(k-1)
    :rtype: int
    :raises PreconditionError: with the independent set found, or when the
        graph is too small
    """
    if k < 2 or d < 2:
        raise ValueError("k and d must be at least 2")
    n = G.order
    if check_size and n < 3 * d ** (k - 1):
        raise PreconditionError("the graph has %d vertices, at least %d needed" %
                                (n, 3 * d ** (k - 1)))
    rows = G.rows
    current = G.full_mask
    selected = 0
    while True:
        size = popcount(current)
        best, best_non_degree = None, -1
        for v in iter_bits(current):
            non_degree = size - 1 - popcount(rows[v] & current)
            if non_degree > best_non_degree:
                best, best_non_degree = v, non_degree
        if best is None or d * (best_non_degree + 1) <= size:
            break
        selected |= 1 << best
        current &= ~rows[best] & ~(1 << best)
        _logger.debug("dense extraction selected %d, %d vertices remain",
                      best, popcount(current))
        if popcount(selected) == k - 1:
            if current:
                witness = selected | (current & -current)
                raise PreconditionError("independent set of size %d found: %s" %
                                        (k, members(witness)), witness=witness)
            break
    size = popcount(current)
    if size * d ** (k - 1) < n:
        raise ProcedureError('extract', "only %d vertices survive" % size,
                             snapshot={'survivors': members(current)})
    for v in iter_bits(current):
        if d * popcount(rows[v] & current) < (d - 1) * size:
            raise ProcedureError('extract', "vertex %d has low degree" % v,
                                 snapshot={'survivors': members(current)})
    return current


def robust_condition(n, min_degree, m, d):
    """
    The sufficient condition m * n < r^floor((r - 1) d) with
    r = (m / n) / (d / min_degree), together with d >= m / 2 and r >= 1
    """
    if d <= 0 or n <= 0 or 2 * d < m:
        return False
    r = Fraction(m * min_degree, n * d)
    if r < 1:
        return False
    return m * n < r ** math.floor((r - 1) * d)


def robust_subset(G, m, d, seed, retry_cap=1000, check_condition=False,
                  outside_only=False):
    """
    Sample m-subsets uniformly until every vertex has more than d
    neighbours inside the sample.

    :param d: floored on entry
    :param bool check_condition: refuse instances outside
        :func:`robust_condition`
    :param bool outside_only: only vertices outside the sample are checked
    :rtype: int
    :raises RetryCapExceeded: naming the vertex with the fewest neighbours
        in its best sample
    """
    d = int(math.floor(d))
    n = G.order
    if not 0 <= m <= n:
        raise PreconditionError("cannot choose %d vertices out of %d" % (m, n))
    if check_condition and not robust_condition(n, G.min_degree(), m, d):
        raise PreconditionError("the sampling condition fails for m=%d, d=%d" % (m, d))
    rng = make_rng(seed)
    rows = G.rows
    best = [-1] * n
    for attempt in range(1, retry_cap + 1):
        sample = mask_of(int(v) for v in rng.choice(n, size=m, replace=False))
        ok = True
        for v in range(n):
            if outside_only and sample >> v & 1:
                continue
            count = popcount(rows[v] & sample)
            if count > best[v]:
                best[v] = count
            if count <= d:
                ok = False
        if ok:
            _logger.debug("robust subset accepted after %d samples", attempt)
            return sample
    checked = [v for v in range(n) if best[v] >= 0] or list(range(n))
    worst = min(checked, key=lambda v: (best[v], v))
    raise RetryCapExceeded('robust-subset',
                           "no %d-subset found after %d samples; vertex %d has "
                           "at most %d neighbours in any sample" %
                           (m, retry_cap, worst, best[worst]),
                           stats={'attempts': retry_cap, 'worst_vertex': worst,
                                  'worst_count': best[worst]})


# Resilient bipartite gadget

class ResilientGadget(object):
    """
    Bipartite graph between a left side X + Y (X duplicates Y) and a right
    side Z = Z1 + Z2 (Z2 duplicates the first k vertices of Z1).

    Left vertex i < 2k is X_i, left vertex 2k + i is Y_i; right vertex
    j < 2k is in Z1, the others in Z2. ``adjacency[a]`` is the bitset of
    right neighbours of left vertex a.
    """

    def __init__(self, k, adjacency):
        self.k = k
        self.adjacency = tuple(adjacency)
        if len(self.adjacency) != 4 * k:
            raise ValueError("a gadget for k=%d has %d left vertices" % (k, 4 * k))

    @property
    def x_vertices(self):
        return list(range(2 * self.k))

    @property
    def y_vertices(self):
        return list(range(2 * self.k, 4 * self.k))

    @property
    def right_order(self):
        return 3 * self.k

    def right_degrees(self):
        degrees = [0] * self.right_order
        for row in self.adjacency:
            for b in iter_bits(row):
                degrees[b] += 1
        return degrees

    def max_degree(self):
        left = [popcount(row) for row in self.adjacency]
        return max(left + self.right_degrees() + [0])

    def edges(self):
        """Yield (left, right) pairs in order"""
        for a, row in enumerate(self.adjacency):
            for b in iter_bits(row):
                yield a, b

    def perfect_matching(self, left):
        """
        A matching of ``left`` onto Z as a dict, or None when none covers
        all of Z
        """
        return _perfect_matching(self.adjacency, self.right_order, left)

    def to_json(self):
        return {
            'k': self.k,
            'left': [members(row) for row in self.adjacency],
        }


def _perfect_matching(adjacency, right_order, left):
    if len(left) != right_order:
        return None
    graph = nx.Graph()
    top = [('l', a) for a in left]
    graph.add_nodes_from(top)
    graph.add_nodes_from(('r', b) for b in range(right_order))
    graph.add_edges_from((('l', a), ('r', b))
                         for a in left for b in iter_bits(adjacency[a]))
    matching = nx.bipartite.hopcroft_karp_matching(graph, top_nodes=top)
    if len(matching) != 2 * right_order:
        return None
    return {a: matching[('l', a)][1] for a in left}


def _first_failure(adjacency, k, batch):
    y_side = list(range(2 * k, 4 * k))
    for subset in batch:
        if _perfect_matching(adjacency, 3 * k, list(subset) + y_side) is None:
            return subset
    return None


class ResilienceReport(object):
    """
    Outcome of a resilience check; true when no subset failed
    """

    def __init__(self, ok, mode, checked, total, witness=None):
        self.ok = ok
        self.mode = mode
        self.checked = checked
        self.total = total
        self.witness = witness

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return "ResilienceReport(ok=%s, mode=%s, checked=%d/%d)" % (
            self.ok, self.mode, self.checked, self.total)

    def to_json(self):
        witness = self.witness
        if isinstance(witness, tuple):
            witness = list(witness)
        return {
            'checked': self.checked,
            'mode': self.mode,
            'ok': self.ok,
            'total': self.total,
            'witness': witness,
        }


def verify_resilience(g, k=None, cap=1000, seed=0, threads=1):
    """
    Check that every k-subset X' of X leaves a perfect matching between
    X' + Y and Z. All C(2k, k) subsets are tried when there are at most
    ``cap`` of them; otherwise ``cap`` uniformly drawn subsets are tried
    and the report is marked "sampled".

    :rtype: ResilienceReport
    """
    k = g.k if k is None else k
    total = math.comb(2 * k, k)
    degrees = g.right_degrees()
    for b, degree in enumerate(degrees):
        if not degree:
            return ResilienceReport(False, 'hall', 0, total, {'isolated': b})
    if total <= cap:
        mode = 'exhaustive'
        subsets = list(itertools.combinations(range(2 * k), k))
    else:
        mode = 'sampled'
        rng = make_rng(seed)
        subsets = [tuple(sorted(int(v) for v in rng.choice(2 * k, size=k, replace=False)))
                   for _ in range(cap)]
    batches = [subsets[i:i + _BATCH_SIZE] for i in range(0, len(subsets), _BATCH_SIZE)]
    results = Parallel(n_jobs=threads)(
        delayed(_first_failure)(g.adjacency, k, batch) for batch in batches)
    for failure in results:
        if failure is not None:
            return ResilienceReport(False, mode, len(subsets), total, failure)
    return ResilienceReport(True, mode, len(subsets), total)


def resilient_bipartite(k, seed, matchings=20, retry_cap=10000,
                        resilience_cap=1000, threads=1):
    """
    Build a gadget from ``matchings`` random perfect matchings between Y
    and Z1, copy Y to X and the first k vertices of Z1 to Z2, and keep it
    once the degree bound and the resilience check both pass.

    :raises RetryCapExceeded: with counts of each kind of failure
    """
    if k < 1:
        raise ValueError("the gadget needs k >= 1")
    rng = make_rng(seed)
    side = 2 * k
    low = (1 << k) - 1
    stats = {'attempts': 0, 'degree_failures': 0, 'resilience_failures': 0}
    for attempt in range(1, retry_cap + 1):
        stats['attempts'] = attempt
        y_rows = [0] * side
        for _ in range(matchings):
            for i, j in enumerate(rng.permutation(side)):
                y_rows[i] |= 1 << int(j)
        y_rows = [row | (row & low) << side for row in y_rows]
        gadget = ResilientGadget(k, y_rows + y_rows)
        if gadget.max_degree() > MAX_GADGET_DEGREE:
            stats['degree_failures'] += 1
            continue
        report = verify_resilience(gadget, k, resilience_cap, rng, threads)
        if not report:
            stats['resilience_failures'] += 1
            continue
        _logger.debug("gadget for k=%d accepted after %d attempts (%s)",
                      k, attempt, report.mode)
        return gadget
    raise RetryCapExceeded('resilient-gadget',
                           "no resilient gadget for k=%d in %d attempts" %
                           (k, retry_cap), stats=stats)


# Local absorbers

class LocalAbsorber(object):
    """
    A set L_S of k^2 vertices such that both L_S and S + L_S have perfect
    clique tilings: K_S = {w_1..w_k} is a clique and C_i is a (k-1)-clique
    joined to both s_i and w_i
    """

    def __init__(self, s_vertices, w_vertices, cliques, alone, with_s):
        self.s_vertices = s_vertices
        self.w_vertices = w_vertices
        self.cliques = cliques
        self.alone = alone
        self.with_s = with_s

    @property
    def vertex_set(self):
        return self.alone.ground

    def to_json(self):
        return {
            'C': [members(c) for c in self.cliques],
            'S': list(self.s_vertices),
            'W': list(self.w_vertices),
        }


def local_absorber(G, S, F=0):
    """
    Build a local absorber for the k-set ``S`` avoiding ``F``

    :rtype: LocalAbsorber
    :raises ProcedureError: naming K_S or the clique C_i that could not be
        found
    """
    k = popcount(S)
    if k < 1:
        raise PreconditionError("the absorbed set is empty")
    rows = G.rows
    s_vertices = members(S)
    used = F | S
    k_s = find_clique(G, k, forbidden=used)
    if k_s is None:
        raise ProcedureError('local-absorber', "no free %d-clique for K_S" % k,
                             snapshot={'S': s_vertices})
    used |= k_s
    w_vertices = members(k_s)
    cliques = []
    for i, (s, w) in enumerate(zip(s_vertices, w_vertices)):
        clique = find_clique(G, k - 1, forbidden=used, within=rows[s] & rows[w])
        if clique is None:
            raise ProcedureError('local-absorber',
                                 "no free %d-clique joined to %d and %d (C_%d)" %
                                 (k - 1, s, w, i + 1),
                                 snapshot={'S': s_vertices, 'W': w_vertices})
        cliques.append(clique)
        used |= clique
    absorber_set = k_s
    for clique in cliques:
        absorber_set |= clique
    alone = TilingCertificate(
        k, [(1 << w) | c for w, c in zip(w_vertices, cliques)], 0, absorber_set)
    with_s = TilingCertificate(
        k, [k_s] + [(1 << s) | c for s, c in zip(s_vertices, cliques)], 0,
        absorber_set | S)
    _ensure_tiling(G, alone, 'local-absorber')
    _ensure_tiling(G, with_s, 'local-absorber')
    return LocalAbsorber(s_vertices, w_vertices, cliques, alone, with_s)


# Absorption tiling

class TilingParams(object):
    """
    Constants of the absorption tiling

    ``ell`` sizes the absorber: X and Y get 2 ell vertices each and the
    gadget 3 ell blocks. Up to ``ell // (k - 1)`` remainder vertices can be
    absorbed. 0 means no absorber, only for hosts too small to hold one.
    ``matchings`` is the number of random matchings in the gadget.
    """

    FIELDS = ('ell', 'matchings', 'robust_retry_cap', 'gadget_retry_cap',
              'resilience_cap', 'x_degree_ratio', 'min_degree_ratio', 'threads')

    def __init__(self, ell, matchings=2, robust_retry_cap=1000,
                 gadget_retry_cap=10000, resilience_cap=1000,
                 x_degree_ratio=Fraction(3, 4), min_degree_ratio=Fraction(7, 8),
                 threads=1):
        if ell < 0:
            raise ValueError("ell must be non negative")
        self.ell = ell
        self.matchings = matchings
        self.robust_retry_cap = robust_retry_cap
        self.gadget_retry_cap = gadget_retry_cap
        self.resilience_cap = resilience_cap
        self.x_degree_ratio = Fraction(x_degree_ratio)
        self.min_degree_ratio = Fraction(min_degree_ratio)
        self.threads = threads

    @staticmethod
    def absorber_bound(ell, k, matchings):
        """
        Most vertices the absorber takes: X, Y, the Z blocks and k^2 per
        gadget edge, of which there are at most 6 matchings ell
        """
        return 4 * ell + 3 * ell * (k - 1) + 6 * matchings * ell * k * k

    @staticmethod
    def capacity(ell, k):
        """Largest remainder an absorber of size ``ell`` takes"""
        return ell // (k - 1) if k > 1 else 0

    @classmethod
    def scaled(cls, n, k, matchings=2, remainder=None, **kwargs):
        """
        Desk-scale constants.

        With ``remainder`` unset, ell is the least positive value whose
        capacity covers the remainder forced by divisibility: the absorber
        takes ell vertices modulo k, so n - ell modulo k vertices are left
        by a perfect packing of the rest. ell drops to 0 when even that
        absorber is expected to exceed the host.

        :param remainder: number of remainder vertices to provision for,
            or 'worst' for r(K_k) - 1, the most a maximal packing leaves in
            a host without an independent k-set
        """
        if k < 2:
            return cls(0, matchings, **kwargs)
        if remainder is not None:
            if remainder == 'worst':
                remainder = clique_ramsey_bound(k) - 1
            return cls(max(1, remainder * (k - 1)), matchings, **kwargs)
        ell = 1
        while (n - ell) % k > cls.capacity(ell, k):
            ell += 1
        if cls.absorber_bound(ell, k, matchings) > n:
            ell = 0
        return cls(ell, matchings, **kwargs)

    @classmethod
    def literal(cls, n, k, ell_divisor=256, **kwargs):
        """Literal constants: ell = floor(n / (256 k^2)) and 20 matchings"""
        kwargs.setdefault('matchings', 20)
        return cls(n // (ell_divisor * k * k), **kwargs)

    @classmethod
    def from_config(cls, tiling, n, k, literal=False, threads=1):
        """
        Build parameters from a :class:`multiram.config.TilingConfig`
        """
        kwargs = {
            'gadget_retry_cap': tiling.gadget_retry_cap,
            'min_degree_ratio': tiling.min_degree_ratio,
            'resilience_cap': tiling.resilience_cap,
            'robust_retry_cap': tiling.robust_retry_cap,
            'threads': threads,
            'x_degree_ratio': tiling.x_degree_ratio,
        }
        if literal:
            return cls.literal(n, k, tiling.ell_divisor, matchings=tiling.matchings,
                               **kwargs)
        return cls.scaled(n, k, tiling.matchings, tiling.remainder, **kwargs)

    def updated(self, data):
        """
        A copy with the fields in ``data`` replaced

        :raises ValueError: on unknown fields
        """
        unknown = set(data) - set(self.FIELDS)
        if unknown:
            raise ValueError("unknown tiling parameters: %s" % ', '.join(sorted(unknown)))
        values = self.to_json()
        values.update(data)
        return TilingParams(**values)

    def to_json(self):
        return dict((field, getattr(self, field)) for field in self.FIELDS)


class Absorber(object):
    """
    The absorbing structure: X (2 ell vertices, each outside vertex well
    joined to it), Y (2 ell vertices), 3 ell blocks of k - 1 vertices, a
    gadget on X + Y against the blocks and a local absorber per gadget edge
    """

    def __init__(self, k, ell, x_vertices, y_vertices, z_blocks, gadget, locals_):
        self.k = k
        self.ell = ell
        self.x_vertices = x_vertices
        self.y_vertices = y_vertices
        self.z_blocks = z_blocks
        self.gadget = gadget
        self.locals = locals_

    @property
    def vertex_set(self):
        vertex_set = mask_of(self.x_vertices) | mask_of(self.y_vertices)
        for block in self.z_blocks:
            vertex_set |= block
        for local in self.locals.values():
            vertex_set |= local.vertex_set
        return vertex_set

    def absorb(self, G, remainder):
        """
        Tile the absorber together with ``remainder``

        :return: (tiles, leftover) with fewer than k leftover vertices
        """
        k, ell, rows = self.k, self.ell, G.rows
        if popcount(remainder) * (k - 1) > ell:
            raise ProcedureError('absorb-remainder',
                                 "%d remainder vertices need more than %d X vertices" %
                                 (popcount(remainder), ell),
                                 snapshot={'remainder': members(remainder)})
        x_free = mask_of(self.x_vertices)
        tiles = []
        for v in iter_bits(remainder):
            clique = find_clique(G, k - 1, within=rows[v] & x_free)
            if clique is None:
                raise ProcedureError('absorb-remainder',
                                     "no %d-clique in X joined to %d" % (k - 1, v),
                                     snapshot={'remainder': members(remainder),
                                               'x_free': members(x_free)})
            tiles.append(clique | 1 << v)
            x_free &= ~clique
        while popcount(x_free) > ell + k - 1:
            clique = find_clique(G, k, within=x_free)
            if clique is None:
                raise ProcedureError('trim-x', "no %d-clique left in X" % k,
                                     snapshot={'x_free': members(x_free)})
            tiles.append(clique)
            x_free &= ~clique
        leftover = _lowest_bits(x_free, popcount(x_free) - ell)
        x_prime = x_free & ~leftover
        index = dict((v, i) for i, v in enumerate(self.x_vertices))
        left = [index[v] for v in iter_bits(x_prime)] + self.gadget.y_vertices
        matching = self.gadget.perfect_matching(left)
        if matching is None:
            raise ProcedureError('match', "no perfect matching of X' + Y onto Z",
                                 snapshot={'x_prime': members(x_prime)})
        for (a, b), local in sorted(self.locals.items()):
            if matching.get(a) == b:
                tiles.extend(local.with_s.tiles)
            else:
                tiles.extend(local.alone.tiles)
        return tiles, leftover


def _build_absorber(G, k, params, rng):
    ell = params.ell
    full = G.full_mask
    d = math.ceil(params.x_degree_ratio * 2 * ell) - 1
    x_set = robust_subset(G, 2 * ell, d, rng, params.robust_retry_cap,
                          outside_only=True)
    rest = full & ~x_set
    needed = 2 * ell + 3 * ell * (k - 1)
    if popcount(rest) < needed:
        raise ProcedureError('absorber', "not enough vertices for Y and Z",
                             snapshot={'needed': needed, 'free': popcount(rest)})
    y_set = _lowest_bits(rest, 2 * ell)
    z_vertices = members(_lowest_bits(rest & ~y_set, 3 * ell * (k - 1)))
    z_blocks = [mask_of(z_vertices[i:i + k - 1])
                for i in range(0, len(z_vertices), k - 1)]
    gadget = resilient_bipartite(ell, rng, params.matchings, params.gadget_retry_cap,
                                 params.resilience_cap, params.threads)
    x_vertices, y_vertices = members(x_set), members(y_set)
    left = x_vertices + y_vertices
    used = x_set | y_set | mask_of(z_vertices)
    locals_ = {}
    for a, b in gadget.edges():
        local = local_absorber(G, 1 << left[a] | z_blocks[b], used)
        used |= local.vertex_set
        locals_[(a, b)] = local
    absorber = Absorber(k, ell, x_vertices, y_vertices, z_blocks, gadget, locals_)
    _logger.debug("absorber built: ell=%d, %d local absorbers, %d vertices",
                  ell, len(locals_), popcount(used))
    return absorber


def _maximal_packing(G, k, available):
    tiles = []
    while True:
        clique = find_clique(G, k, within=available)
        if clique is None:
            return tiles, available
        tiles.append(clique)
        available &= ~clique


def _check_host(G, k, params):
    n = G.order
    if n and G.min_degree() < params.min_degree_ratio * n:
        degrees = G.degrees()
        v = degrees.index(min(degrees))
        raise PreconditionError("vertex %d has degree %d, below %s of %d" %
                                (v, degrees[v], params.min_degree_ratio, n), witness=v)
    independent = find_clique(G.complement(), k)
    if independent is not None:
        raise PreconditionError("independent set of size %d found: %s" %
                                (k, members(independent)), witness=independent)


def absorption_tiling(G, k, params=None, seed=0):
    """
    Tile a dense host without an independent k-set with k-cliques,
    covering all but fewer than k vertices.

    An absorber A is set aside first, then a maximal clique packing is
    taken outside A and the vertices it misses are swallowed by A. With
    ``params.ell`` 0 the packing alone has to leave fewer than k vertices.

    :param TilingParams params: defaults to :meth:`TilingParams.scaled`
    :rtype: TilingCertificate
    :raises ProcedureError: naming the step that failed; the absorber is
        never skipped once ell is positive
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    n = G.order
    if k == 1:
        return _ensure_tiling(G, TilingCertificate(1, [1 << v for v in range(n)]),
                              'verify')
    if params is None:
        params = TilingParams.scaled(n, k)
    _check_host(G, k, params)
    rng = make_rng(seed)
    absorber = None
    if params.ell:
        absorber = _build_absorber(G, k, params, rng)
    else:
        _logger.info("no absorber on %d vertices, tiling by maximal packing", n)
    reserved = absorber.vertex_set if absorber else 0
    tiles, remainder = _maximal_packing(G, k, G.full_mask & ~reserved)
    _logger.debug("maximal packing outside the absorber: %d tiles, %d left",
                  len(tiles), popcount(remainder))
    if absorber is None:
        if popcount(remainder) >= k:
            raise ProcedureError('pack', "%d vertices left without an absorber" %
                                 popcount(remainder),
                                 snapshot={'remainder': members(remainder),
                                           'tiles': len(tiles)})
        leftover = remainder
    else:
        absorbed, leftover = absorber.absorb(G, remainder)
        tiles.extend(absorbed)
    cert = _ensure_tiling(G, TilingCertificate(k, tiles, leftover), 'verify')
    _logger.info("tiled %d vertices with %d copies of K_%d, %d left over",
                 n, len(tiles), k, popcount(leftover))
    return cert


def sample_dense_host(n, k, seed, max_co_degree=None):
    """
    Seeded host on n vertices without an independent k-set: the complement
    is grown as a random K_k-free graph with maximum degree
    ``max_co_degree`` (default n // 8 - 1, giving minimum degree at least
    7n/8)
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    if max_co_degree is None:
        max_co_degree = max(0, n // 8 - 1)
    rng = make_rng(seed)
    co_rows = [0] * n
    co_degrees = [0] * n
    if k > 2 and max_co_degree and n > 1:
        attempts = 2 * n * max_co_degree
        for u, v in rng.integers(0, n, size=(attempts, 2)):
            u, v = int(u), int(v)
            if u == v or co_rows[u] >> v & 1:
                continue
            if co_degrees[u] >= max_co_degree or co_degrees[v] >= max_co_degree:
                continue
            if clique_in_rows(co_rows, co_rows[u] & co_rows[v], k - 2) is not None:
                continue
            co_rows[u] |= 1 << v
            co_rows[v] |= 1 << u
            co_degrees[u] += 1
            co_degrees[v] += 1
    full = (1 << n) - 1
    return make_graph(n, [full ^ row ^ (1 << v) for v, row in enumerate(co_rows)],
                      validate=False)


# Joins from stars

def star_join(c, r_cand, b_cand, k):
    """
    Find a (k, k)-join: a blue 4k-clique B' inside ``b_cand``, the
    majority colour between ``r_cand`` and B', the k-subset of B' joined
    in that colour to the most vertices of ``r_cand``, and a red k-clique
    among those vertices.

    :rtype: multiram.detectors.Join
    :raises ProcedureError: naming the step that failed
    """
    if r_cand & b_cand:
        raise PreconditionError("candidate sets overlap on %s" % members(r_cand & b_cand))
    if k < 1:
        raise ValueError("k must be at least 1")
    r_cand &= c.full_mask
    b_cand &= c.full_mask
    blue = find_clique(c.colour_class(BLUE), 4 * k, within=b_cand)
    if blue is None:
        raise ProcedureError('blue-clique', "no blue %d-clique in B" % (4 * k),
                             snapshot={'B': members(b_cand)})
    red_rows = c.rows(RED)
    red_cross = sum(popcount(red_rows[v] & blue) for v in iter_bits(r_cand))
    colour = RED if 2 * red_cross >= popcount(r_cand) * 4 * k else BLUE
    rows = c.rows(colour)
    best_leaves, best_centres = None, 0
    for leaves in itertools.combinations(members(blue), k):
        leaf_set = mask_of(leaves)
        centres = 0
        for v in iter_bits(r_cand):
            if rows[v] & leaf_set == leaf_set:
                centres |= 1 << v
        if best_leaves is None or popcount(centres) > popcount(best_centres):
            best_leaves, best_centres = leaf_set, centres
    _logger.debug("star count: %d %s centres on %s", popcount(best_centres),
                  colour, members(best_leaves))
    red = find_clique(c.colour_class(RED), k, within=best_centres)
    if red is None:
        raise ProcedureError('red-clique',
                             "no red %d-clique among the %d star centres" %
                             (k, popcount(best_centres)),
                             snapshot={'centres': members(best_centres),
                                       'colour': colour,
                                       'leaves': members(best_leaves)})
    join = Join(red, best_leaves, colour)
    if not verify_join(c, join, k, k):
        raise ProcedureError('verify', "the join does not verify",
                             snapshot=join.to_json())
    return join

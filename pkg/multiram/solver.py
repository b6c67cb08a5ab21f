# (c) 2024 Multiram Project
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
#
# This file is part of Multiram
#
"""
Exact arrowing decisions and Ramsey numbers at desk scale.

The engine grows, one vertex at a time, every colouring that contains
neither target, keeping one representative per isomorphism class (and per
colour swap when the targets are symmetric). A new vertex can only create
target copies through itself, so each extension is checked with the
detectors restricted to packings through the new vertex. The first order
with no surviving colouring is the Ramsey number; the least survivor of
the previous order is the lower bound witness.
"""

import datetime
import logging

from joblib import Parallel, delayed

from multiram.colouring import BLUE, RED, TwoColouring, monochromatic
from multiram.detectors import find_disjoint_family_copies
from multiram.exceptions import (DependencyError, DeskRangeExceeded,
                                 SolverException)
from multiram.families import (GraphFamily, components_family, d_c_family,
                               d_c_prime_family, d_family)
from multiram.graph import (canonical_graph, complete, independence_number,
                            is_connected)
from multiram.utils import human_readable_timedelta

_logger = logging.getLogger(__name__)

#: Largest order the engine builds by default
DEFAULT_CAP = 10

#: Clique Ramsey numbers reproduced by the engine
CLIQUE_RAMSEY_TABLE = {1: 1, 2: 2, 3: 6}

#: Colourings extended by one worker
_BATCH_SIZE = 32


class Target(object):
    """
    ``copies`` vertex-disjoint copies, each of some member of ``family``
    """

    def __init__(self, family, copies=1):
        if not isinstance(family, GraphFamily):
            family = GraphFamily([family])
        if not len(family):
            raise ValueError("a target needs a non empty family")
        if copies < 1:
            raise ValueError("a target needs at least one copy")
        self.family = family
        self.copies = copies

    def find(self, c, colour, through=None):
        return find_disjoint_family_copies(c, self.family, colour, self.copies,
                                           through=through)

    def threshold(self):
        """
        The order from which every colouring holds the target, when the
        family has a member on at most one vertex; None otherwise
        """
        order = self.family.min_order()
        if order == 0:
            return 0
        if order == 1:
            return self.copies
        return None

    def __eq__(self, other):
        if not isinstance(other, Target):
            return NotImplemented
        return self.family == other.family and self.copies == other.copies

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.family, self.copies))

    def __repr__(self):
        return "Target(%dx%s)" % (self.copies, self.family.to_json())

    def to_json(self):
        return {'copies': self.copies, 'family': self.family.to_json()}


class ExhaustionRecord(object):
    """
    Provenance of an exhaustive search: the number of colourings tried,
    the survivors per order and the symmetry scheme. The elapsed time is
    kept for logging and left out of the JSON form.
    """

    def __init__(self, scheme):
        self.scheme = scheme
        self.nodes = 0
        self.levels = []
        self.elapsed = datetime.timedelta(0)

    def to_json(self):
        return {'levels': list(self.levels), 'nodes': self.nodes,
                'scheme': self.scheme}


class Decision(object):
    """
    Outcome of :func:`arrows`; true when the order arrows the targets,
    otherwise ``witness`` is a colouring avoiding both
    """

    def __init__(self, value, witness=None, record=None):
        self.value = value
        self.witness = witness
        self.record = record

    def __bool__(self):
        return self.value

    def __repr__(self):
        return "Decision(%s)" % self.value


class RamseyResult(object):
    """
    Result of :func:`ramsey_number`. An incomplete result only brackets
    the value: ``lower`` is proven by the witness and ``upper`` is None.
    """

    def __init__(self, value, witness, record, complete=True, lower=None, upper=None):
        self.value = value
        self.witness = witness
        self.record = record
        self.complete = complete
        self.lower = value if lower is None and complete else lower
        self.upper = value if upper is None and complete else upper

    def __repr__(self):
        if self.complete:
            return "RamseyResult(%d)" % self.value
        return "RamseyResult(>= %d, incomplete)" % self.lower

    def to_json(self):
        return {
            'complete': self.complete,
            'lower': self.lower,
            'record': self.record.to_json() if self.record else None,
            'upper': self.upper,
            'value': self.value,
            'witness': self.witness.to_json() if self.witness is not None else None,
        }


def _canonical(c, symmetric):
    """Key and canonical red rows of a colouring's class"""
    best = None
    for colour in ((RED, BLUE) if symmetric else (RED,)):
        graph = canonical_graph(c.colour_class(colour))
        key = graph.to_graph6().encode('ascii')
        if best is None or key < best[0]:
            best = (key, graph.rows)
    return best


def _extend_batch(batch, order, red, blue, symmetric):
    """
    Every good one-vertex extension of the colourings in ``batch``

    :return: (dict key -> rows, number of extensions tried)
    """
    found = {}
    tried = 0
    new = order
    for rows in batch:
        for mask in range(1 << order):
            tried += 1
            extended = list(rows) + [mask]
            for v in range(order):
                if mask >> v & 1:
                    extended[v] |= 1 << new
            c = TwoColouring(order + 1, extended, validate=False)
            if red.find(c, RED, through=new) is not None:
                continue
            if blue.find(c, BLUE, through=new) is not None:
                continue
            key, canonical = _canonical(c, symmetric)
            if key not in found:
                found[key] = canonical
    return found, tried


class _Engine(object):
    """
    Target-free colourings by order, one per isomorphism class
    """

    def __init__(self, red, blue, threads=1):
        self.red = red
        self.blue = blue
        self.threads = threads
        self.symmetric = red == blue
        scheme = 'vertex-extension/canonical'
        if self.symmetric:
            scheme += '/colour-swap'
        self.record = ExhaustionRecord(scheme)
        empty = monochromatic(0, RED)
        if red.find(empty, RED) is None and blue.find(empty, BLUE) is None:
            self.levels = [{b'': ()}]
        else:
            self.levels = [{}]
        self.record.levels.append(len(self.levels[0]))

    def level(self, order):
        """Representatives on ``order`` vertices, keyed by canonical form"""
        while len(self.levels) <= order:
            self._grow()
        return self.levels[order]

    def _grow(self):
        order = len(self.levels) - 1
        current = self.levels[-1]
        start = datetime.datetime.now()
        survivors = {}
        if current:
            ordered = [current[key] for key in sorted(current)]
            batches = [ordered[i:i + _BATCH_SIZE]
                       for i in range(0, len(ordered), _BATCH_SIZE)]
            results = Parallel(n_jobs=self.threads)(
                delayed(_extend_batch)(batch, order, self.red, self.blue, self.symmetric)
                for batch in batches)
            for found, tried in results:
                self.record.nodes += tried
                for key in sorted(found):
                    survivors.setdefault(key, found[key])
        elapsed = datetime.datetime.now() - start
        self.record.elapsed += elapsed
        self.levels.append(survivors)
        self.record.levels.append(len(survivors))
        _logger.debug("order %d: %d target-free classes (%s)", order + 1,
                      len(survivors), human_readable_timedelta(elapsed))

    def witness(self, order):
        """The least target-free colouring on ``order`` vertices, or None"""
        level = self.level(order)
        if not level:
            return None
        rows = level[min(level)]
        witness = TwoColouring(order, rows, validate=False)
        if (self.red.find(witness, RED) is not None or
                self.blue.find(witness, BLUE) is not None):
            raise SolverException("witness on %d vertices holds a target" % order)
        return witness


def _trivially_arrows(n, red, blue):
    for target in (red, blue):
        threshold = target.threshold()
        if threshold is not None and n >= threshold:
            return True
    return False


def arrows(n, red_target, blue_target, cap=DEFAULT_CAP, threads=1):
    """
    Decide whether every 2-colouring of K_n holds ``red_target`` in red or
    ``blue_target`` in blue

    :rtype: Decision
    :raises DeskRangeExceeded: when n is above ``cap``
    """
    if n < 0:
        raise ValueError("the order must be non negative")
    if _trivially_arrows(n, red_target, blue_target):
        return Decision(True)
    if n > cap:
        raise DeskRangeExceeded("order %d is above the search cap %d" % (n, cap))
    engine = _Engine(red_target, blue_target, threads)
    for order in range(n + 1):
        if not engine.level(order):
            return Decision(True, record=engine.record)
    return Decision(False, engine.witness(n), engine.record)


def ramsey_number(red_target, blue_target, hint_lo=0, hint_hi=None,
                  cap=DEFAULT_CAP, threads=1):
    """
    The least n such that K_n arrows both targets, scanning orders upward.

    ``hint_lo`` is advisory: every order below it is still searched and an
    answer under the hint is returned with a warning. When no answer is found up
    to ``min(hint_hi, cap)`` the result is incomplete and brackets the
    value from below.

    :rtype: RamseyResult
    """
    limit = cap if hint_hi is None else min(hint_hi, cap)
    engine = _Engine(red_target, blue_target, threads)
    start = max(0, hint_lo)
    for order in range(limit + 1):
        if engine.level(order):
            continue
        if order < start:
            _logger.warning("Ramsey number %d is below the hint %d", order, start)
        witness = engine.witness(order - 1) if order else None
        _logger.info("Ramsey number %s vs %s is %d (%s)", red_target, blue_target,
                     order, human_readable_timedelta(engine.record.elapsed))
        return RamseyResult(order, witness, engine.record)
    _logger.info("no answer up to order %d for %s vs %s", limit, red_target, blue_target)
    return RamseyResult(None, engine.witness(limit), engine.record, complete=False,
                        lower=limit + 1)


def extremal_e_colouring(avoid_red, avoid_blue, cap=DEFAULT_CAP, threads=1):
    """
    A colouring of maximum order with no red member of ``avoid_red`` and
    no blue member of ``avoid_blue``

    :raises DeskRangeExceeded: when the order is not reached within cap
    """
    result = ramsey_number(Target(avoid_red), Target(avoid_blue),
                           cap=DEFAULT_CAP if cap is None else cap, threads=threads)
    if not result.complete:
        raise DeskRangeExceeded("r(%s, %s) is at least %d, above the cap" %
                                (avoid_red.to_json(), avoid_blue.to_json(), result.lower))
    if result.witness is None:
        return monochromatic(0, RED)
    return result.witness


class FormulaResult(object):
    """
    A closed-form value that holds for n large enough; ``holds`` records
    whether the engine confirmed it at the given n (None when not checked)
    """

    def __init__(self, name, value, base=None, holds=None):
        self.name = name
        self.value = value
        self.base = base
        self.holds = holds
        self.regime = 'asymptotic'

    def to_json(self):
        return {
            'base': self.base,
            'formula': self.name,
            'holds': self.holds,
            'regime': self.regime,
            'value': self.value,
        }


def _check_formula(value, red, blue, cap, threads):
    try:
        result = ramsey_number(red, blue, cap=cap, threads=threads)
    except DeskRangeExceeded:
        return None
    if not result.complete:
        return None
    return result.value == value


def formula_clique(k, n, check=False, cap=DEFAULT_CAP, threads=1):
    """
    (2k - 1)n + r(K_{k-1}) - 2

    :raises DependencyError: when r(K_{k-1}) is not in the trusted table
    """
    if k < 2 or n < 1:
        raise ValueError("formula_clique needs k >= 2 and n >= 1")
    if k - 1 not in CLIQUE_RAMSEY_TABLE:
        raise DependencyError("r(K_%d) is not a trusted base value" % (k - 1))
    base = CLIQUE_RAMSEY_TABLE[k - 1]
    value = (2 * k - 1) * n + base - 2
    holds = None
    if check:
        target = Target(complete(k), n)
        holds = _check_formula(value, target, target, cap, threads)
    return FormulaResult('clique', value, base, holds)


def _base_number(red_family, blue_family, cap, threads):
    result = ramsey_number(Target(red_family), Target(blue_family),
                           cap=cap, threads=threads)
    if not result.complete:
        raise DependencyError("r(%s, %s) is at least %d, above the cap %d" %
                              (red_family.to_json(), blue_family.to_json(),
                               result.lower, cap))
    return result.value


def formula_asym(G, H, n, check=False, cap=DEFAULT_CAP, threads=1):
    """
    n|H| + r(D(G), H) - 1, with the components of H in place of H when H
    is disconnected
    """
    if n < 1:
        raise ValueError("formula_asym needs n >= 1")
    blue = GraphFamily([H]) if is_connected(H) else components_family(H)
    base = _base_number(d_family(G), blue, cap, threads)
    value = n * H.order + base - 1
    holds = None
    if check:
        holds = _check_formula(value, Target(G), Target(H, n), cap, threads)
    return FormulaResult('asym', value, base, holds)


def c_bracket(H, cap=DEFAULT_CAP, threads=1):
    """
    [r(D_c(H), D(H)) - 2, r(D_c'(H), D(H)) - 2]
    """
    blue = d_family(H)
    low = _base_number(d_c_family(H), blue, cap, threads) - 2
    high = _base_number(d_c_prime_family(H), blue, cap, threads) - 2
    return low, high


def estimate_bounds(H, n, cap=DEFAULT_CAP, threads=1):
    """
    Bounds on r(nH): (2|H| - alpha(H))n plus the ends of :func:`c_bracket`
    """
    low, high = c_bracket(H, cap, threads)
    step = (2 * H.order - independence_number(H)) * n
    return step + low, step + high


def prop_lower_bound(H, n):
    """(2|H| - alpha(H))n - 1"""
    return (2 * H.order - independence_number(H)) * n - 1


def tie_step_bound(H, previous):
    """
    Upper bound on r(nH) given ``previous`` = r((n-1)H): a tie plus an
    (n-1)-packing
    """
    return 2 * H.order - independence_number(H) + previous

# (c) 2024 Multiram Project
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
#
# This file is part of Multiram
#

import itertools
import logging

import pytest

from multiram.colouring import BLUE, RED, from_red_edges
from multiram.detectors import find_mono_copy
from multiram.exceptions import DependencyError, DeskRangeExceeded
from multiram.families import GraphFamily
from multiram.graph import complete, cycle, empty, is_isomorphic, path
from multiram.solver import (Target, arrows, c_bracket, estimate_bounds,
                             extremal_e_colouring, formula_asym,
                             formula_clique, prop_lower_bound, ramsey_number,
                             tie_step_bound)


class TestTarget(object):

    def test_validation(self, k2):
        with pytest.raises(ValueError):
            Target(GraphFamily())
        with pytest.raises(ValueError):
            Target(k2, 0)

    def test_equality(self, k3):
        assert Target(k3, 2) == Target(GraphFamily([complete(3)]), 2)
        assert Target(k3, 2) != Target(k3, 1)
        assert len({Target(k3), Target(complete(3))}) == 1
        assert Target(k3, 2).to_json() == {'copies': 2, 'family': [k3.to_graph6()]}

    def test_threshold(self, k2):
        assert Target(empty(1), 3).threshold() == 3
        assert Target(empty(0)).threshold() == 0
        assert Target(k2).threshold() is None


class TestRamseyNumber(object):

    def test_triangles(self, k3):
        result = ramsey_number(Target(k3), Target(k3))
        assert result.complete
        assert result.value == 6
        assert result.lower == result.upper == 6
        assert result.witness.order == 5
        assert is_isomorphic(result.witness.colour_class(RED), cycle(5))
        assert find_mono_copy(result.witness, k3, RED) is None
        assert find_mono_copy(result.witness, k3, BLUE) is None
        assert result.record.scheme.endswith('/colour-swap')

    @pytest.mark.timeout(300)
    @pytest.mark.parametrize('n, expected', [(1, 2), (2, 5), (3, 8)])
    def test_matchings(self, k2, n, expected):
        result = ramsey_number(Target(k2, n), Target(k2, n))
        assert result.value == expected

    @pytest.mark.parametrize('n, expected', [(2, 5), (3, 7)])
    def test_triangle_against_matching(self, k3, k2, n, expected):
        result = ramsey_number(Target(k3), Target(k2, n))
        assert result.value == expected
        assert result.value == formula_asym(k3, k2, n).value
        assert 'colour-swap' not in result.record.scheme

    def test_incomplete(self, k3):
        result = ramsey_number(Target(k3), Target(k3), cap=4)
        assert not result.complete
        assert result.value is None
        assert result.lower == 5
        assert result.upper is None
        assert result.witness.order == 4
        data = result.to_json()
        assert data['complete'] is False
        assert data['lower'] == 5

    def test_empty_member(self, k3):
        result = ramsey_number(Target(empty(0)), Target(k3))
        assert result.value == 0
        assert result.witness is None

    def test_record(self, k3):
        result = ramsey_number(Target(k3), Target(k3))
        data = result.record.to_json()
        assert data['levels'][0] == 1
        assert data['levels'][-1] == 0
        assert data['nodes'] > 0
        assert 'elapsed' not in data

    def test_threads(self, k3):
        assert ramsey_number(Target(k3), Target(k3), threads=2).value == 6

    def test_hint_is_advisory(self, k3, caplog):
        with caplog.at_level(logging.WARNING, logger='multiram.solver'):
            result = ramsey_number(Target(k3), Target(k3), hint_lo=8)
        assert result.value == 6
        assert 'below the hint 8' in caplog.text


def _avoiding_colourings(order, red, blue):
    """Every colouring of K_order, one red edge set at a time"""
    edges = list(itertools.combinations(range(order), 2))
    for colours in itertools.product((False, True), repeat=len(edges)):
        c = from_red_edges(order, [e for e, red_edge in zip(edges, colours) if red_edge])
        if red.find(c, RED) is None and blue.find(c, BLUE) is None:
            yield c


TARGET_PAIRS = [
    (Target(complete(3)), Target(complete(3))),
    (Target(complete(3)), Target(complete(2), 2)),
    (Target(complete(2), 2), Target(complete(2), 2)),
    (Target(path(3)), Target(path(3))),
]


class TestArrows(object):

    def test_triangles(self, k3):
        decision = arrows(5, Target(k3), Target(k3))
        assert not decision
        assert decision.witness.order == 5
        assert arrows(6, Target(k3), Target(k3))

    @pytest.mark.parametrize('red, blue', TARGET_PAIRS)
    @pytest.mark.parametrize('order', [4, 5])
    def test_agrees_with_full_enumeration(self, red, blue, order):
        avoiding = list(_avoiding_colourings(order, red, blue))
        decision = arrows(order, red, blue)
        assert bool(decision) == (not avoiding)
        if not decision:
            assert decision.witness.order == order
            assert red.find(decision.witness, RED) is None
            assert blue.find(decision.witness, BLUE) is None

    def test_pentagons_are_the_only_triangle_free(self, k3):
        avoiding = list(_avoiding_colourings(5, Target(k3), Target(k3)))
        assert len(avoiding) == 12
        for c in avoiding:
            assert is_isomorphic(c.colour_class(RED), cycle(5))

    @pytest.mark.parametrize('red, blue', TARGET_PAIRS)
    def test_monotone_in_order(self, red, blue):
        decisions = [bool(arrows(order, red, blue)) for order in range(1, 9)]
        first = decisions.index(True)
        assert all(decisions[first:])
        assert first + 1 == ramsey_number(red, blue).value

    def test_trivial(self, k3):
        assert arrows(2, Target(empty(1), 2), Target(k3), cap=0)

    def test_cap(self, k3):
        with pytest.raises(DeskRangeExceeded):
            arrows(7, Target(k3), Target(k3), cap=6)
        with pytest.raises(ValueError):
            arrows(-1, Target(k3), Target(k3))


class TestExtremal(object):

    def test_single_vertex(self, k2):
        family = GraphFamily([k2])
        c = extremal_e_colouring(family, family)
        assert c.order == 1

    def test_pentagon(self, k3):
        family = GraphFamily([k3])
        c = extremal_e_colouring(family, family)
        assert c.order == 5

    def test_out_of_range(self, k3):
        family = GraphFamily([k3])
        with pytest.raises(DeskRangeExceeded):
            extremal_e_colouring(family, family, cap=4)


class TestFormulas(object):

    @pytest.mark.parametrize('n', [1, 2, 5])
    def test_clique(self, n):
        assert formula_clique(2, n).value == 3 * n - 1
        assert formula_clique(3, n).value == 5 * n

    def test_clique_check(self):
        result = formula_clique(2, 2, check=True)
        assert result.holds is True
        assert result.to_json()['regime'] == 'asymptotic'
        assert formula_clique(3, 2, check=True, cap=4).holds is None

    def test_clique_dependency(self):
        with pytest.raises(DependencyError):
            formula_clique(5, 1)
        with pytest.raises(ValueError):
            formula_clique(1, 1)

    def test_asym(self, k3, k2):
        result = formula_asym(k3, k2, 2, check=True)
        assert result.value == 5
        assert result.base == 2
        assert result.holds is True

    def test_bounds(self, k3):
        assert c_bracket(k3) == (0, 0)
        assert estimate_bounds(k3, 4) == (20, 20)
        assert prop_lower_bound(k3, 2) == 9
        assert tie_step_bound(k3, 6) == 11

# (c) 2024 Multiram Project
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
#
# This file is part of Multiram
#

import networkx as nx
import pytest

from multiram.colouring import BLUE, RED, block_layout, monochromatic
from multiram.constructions import (Claim, ConstructionReport,
                                    asym_lower, asym_lower_auto,
                                    asym_lower_components, bes_lower,
                                    check_critical_structure,
                                    critical_template, estimate_lower,
                                    estimate_lower_auto)
from multiram.detectors import Tie, find_disjoint_copies
from multiram.exceptions import InvalidColouringError, PreconditionError
from multiram.graph import BitGraph, complete, disjoint_union, empty
from multiram.solver import prop_lower_bound


def _small_graphs_without_isolated_vertices():
    for nx_graph in nx.graph_atlas_g():
        order = nx_graph.number_of_nodes()
        if order < 2 or order > 4:
            continue
        graph = BitGraph.from_networkx(nx_graph)
        if not graph.has_isolated_vertex():
            yield graph


class TestBesLower(object):

    def test_triangles(self, k3):
        report = bes_lower(k3, 2)
        assert report.colouring.order == 8
        assert report.partition.size('R') == 3
        assert report.partition.size('B') == 5
        assert report.verify()
        # a single copy is still present in each colour
        assert find_disjoint_copies(report.colouring, k3, BLUE, 1) is not None
        assert find_disjoint_copies(report.colouring, k3, RED, 1) is not None

    @pytest.mark.timeout(120)
    @pytest.mark.parametrize('n', [1, 2])
    def test_small_graphs(self, n):
        for graph in _small_graphs_without_isolated_vertices():
            report = bes_lower(graph, n)
            assert report.colouring.order == prop_lower_bound(graph, n) - 1
            assert report.verify(), graph.to_graph6()

    def test_rejects_bad_input(self, k3, k2):
        with pytest.raises(PreconditionError):
            bes_lower(disjoint_union(k2, empty(1)), 1)
        with pytest.raises(PreconditionError):
            bes_lower(empty(0), 1)
        with pytest.raises(ValueError):
            bes_lower(k3, 0)


class TestAsymLower(object):

    @pytest.mark.parametrize('n', [1, 2, 3])
    def test_triangle_against_matching(self, k3, k2, n):
        report = asym_lower(k3, k2, n, monochromatic(1, RED))
        assert report.colouring.order == 2 * n
        assert report.verify()
        assert [claim.colour for claim in report.claims] == [RED, BLUE]

    def test_auto(self, k3, k2):
        report = asym_lower_auto(k3, k2, 2)
        assert report.colouring.order == 4
        assert report.verify()

    def test_invalid_e_colouring(self, k3, k2):
        with pytest.raises(InvalidColouringError) as excinfo:
            asym_lower(k3, k2, 1, monochromatic(2, RED))
        assert excinfo.value.witness is not None

    def test_empty_e_colouring(self, k3, k2):
        report = asym_lower(k3, k2, 2, monochromatic(0, RED))
        assert report.colouring.order == 3
        assert report.verify()

    def test_disconnected(self, k3, two_k2):
        with pytest.raises(PreconditionError):
            asym_lower(k3, two_k2, 1, monochromatic(1, RED))
        report = asym_lower_components(k3, two_k2, 2, monochromatic(1, RED))
        assert report.colouring.order == 8
        assert report.verify()


class TestEstimateLower(object):

    def test_triangles(self, k3):
        report = estimate_lower(k3, 3, monochromatic(1, RED))
        assert report.colouring.order == 14
        assert report.verify()
        ok, violations = check_critical_structure(report.colouring,
                                                  report.partition, k3)
        assert ok
        assert violations == []

    def test_auto(self, k3):
        report = estimate_lower_auto(k3, 2)
        assert report.colouring.order == prop_lower_bound(k3, 2)
        assert report.verify()

    def test_rejects_disconnected(self, two_k2):
        with pytest.raises(PreconditionError):
            estimate_lower(two_k2, 1, monochromatic(0, RED))


class TestCriticalStructure(object):

    def test_template(self, k3):
        report = critical_template(2, 3, RED, monochromatic(1, RED))
        c = report.colouring
        assert report.partition.names() == ['R', 'B', 'E']
        assert c.colour(0, 1) == RED
        assert c.colour(2, 3) == BLUE
        assert c.colour(5, 0) == BLUE
        assert c.colour(5, 2) == RED
        assert check_critical_structure(c, report.partition, k3) == (True, [])

    def test_empty_blocks(self, k3):
        report = critical_template(0, 0)
        assert report.colouring.order == 0
        assert check_critical_structure(report.colouring, report.partition, k3)[0]

    def test_inside_violation(self, k3):
        p = block_layout([('R', 2), ('B', 2)])
        ok, violations = check_critical_structure(monochromatic(4, BLUE), p, k3)
        assert not ok
        assert violations == [(1, (0, 1))]

    def test_cross_violation(self, k3):
        report = critical_template(1, 1, RED, monochromatic(1, RED), e_to_r=RED)
        ok, violations = check_critical_structure(report.colouring,
                                                  report.partition, k3)
        assert not ok
        assert (2, (2, 0)) in violations

    def test_tie_through_e(self, k2):
        report = critical_template(1, 1, RED, monochromatic(1, RED))
        ok, violations = check_critical_structure(report.colouring,
                                                  report.partition, k2)
        assert not ok
        prop, tie = violations[-1]
        assert prop == 3
        assert isinstance(tie, Tie)
        assert tie.vertex_set >> 2 & 1

    def test_negative_sizes(self):
        with pytest.raises(ValueError):
            critical_template(-1, 2)


class TestReport(object):

    def test_violation_is_reported(self, k2):
        report = ConstructionReport(monochromatic(4, RED), block_layout([('A', 4)]),
                                    [Claim(k2, 2, RED), Claim(k2, 1, BLUE)])
        violations = report.check()
        assert len(violations) == 1
        claim, packing = violations[0]
        assert claim.colour == RED
        assert len(packing) == 2
        assert not report.verify()

    def test_partition_mismatch(self):
        with pytest.raises(PreconditionError):
            ConstructionReport(monochromatic(3, RED), block_layout([('A', 2)]))

    def test_json(self, k3):
        data = bes_lower(k3, 1).to_json()
        assert sorted(data) == ['claims', 'colouring', 'partition']
        assert data['claims'][0] == {'colour': RED, 'copies': 1,
                                     'family': [complete(3).to_graph6()]}

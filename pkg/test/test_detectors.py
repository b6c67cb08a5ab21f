# (c) 2024 Multiram Project
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
#
# This file is part of Multiram
#

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multiram.colouring import (BLUE, RED, block_layout, colouring_from_blocks,
                                from_red_edges, monochromatic, pentagon,
                                random_colouring)
from multiram.detectors import (Embedding, Join, Packing, Tie,
                                extend_packing_with_tie, find_disjoint_copies,
                                find_disjoint_family_copies, find_family_copy,
                                find_h_tie, find_join, find_mono_copy,
                                verify_embedding, verify_join, verify_packing,
                                verify_tie)
from multiram.exceptions import PreconditionError
from multiram.families import GraphFamily
from multiram.graph import (complete, disjoint_union, empty,
                            find_independent_set, independence_number, path)
from multiram.utils import mask_of, members, popcount

PATTERNS = [complete(2), complete(3), path(3),
            disjoint_union(complete(2), complete(2))]

ORACLE_CELLS = [(order, index) for order in range(2, 9)
                for index in range(len(PATTERNS))]


def _copy_sets(c, pattern, colour):
    """Every vertex set carrying a copy, by trying all injective maps"""
    rows = c.rows(colour)
    found = set()
    for image in itertools.permutations(range(c.order), pattern.order):
        if all(rows[image[u]] >> image[v] & 1 for u, v in pattern.edges()):
            found.add(mask_of(image))
    return found


def _oracle_max_packing(sets, used=0):
    best = 0
    for i, s in enumerate(sets):
        if not s & used:
            best = max(best, 1 + _oracle_max_packing(sets[i + 1:], used | s))
    return best


def _oracle_has_tie(red_sets, blue_sets, size, order):
    if size > order:
        return False
    return any(popcount(r | b) <= size for r in red_sets for b in blue_sets)


def _oracle_has_join(c, r_cand, b_cand, k, l):
    red_rows, blue_rows = c.rows(RED), c.rows(BLUE)
    for r_part in itertools.combinations(members(r_cand), k):
        if not c.is_mono_set(mask_of(r_part), RED):
            continue
        for b_part in itertools.combinations(members(b_cand), l):
            if not c.is_mono_set(mask_of(b_part), BLUE):
                continue
            for rows in (red_rows, blue_rows):
                if all(rows[u] >> v & 1 for u in r_part for v in b_part):
                    return True
    return False


def _planted_tie_colouring(pattern, copies, colour, seed):
    """
    A random colouring with a tie planted on the first 2|H| - alpha(H)
    vertices and ``copies`` copies of ``pattern`` in ``colour`` right after
    """
    h = pattern.order
    alpha = independence_number(pattern)
    independent = members(find_independent_set(pattern, alpha))
    others = [u for u in range(h) if u not in independent]
    size = 2 * h - alpha
    order = size + copies * h + seed % 3
    red = set(random_colouring(order, seed).red_edges())

    def paint(u, v, edge_colour):
        edge = (min(u, v), max(u, v))
        if edge_colour == RED:
            red.add(edge)
        else:
            red.discard(edge)

    blue_image = dict(zip(independent + others, range(h - alpha, size)))
    for u, v in pattern.edges():
        paint(u, v, RED)
        paint(blue_image[u], blue_image[v], BLUE)
        for copy in range(copies):
            start = size + copy * h
            paint(start + u, start + v, colour)
    return from_red_edges(order, sorted(red)), (1 << size) - 1


class TestCertificates(object):

    def test_embedding_json(self, k3):
        e = Embedding(k3, [2, 0, 1], 'red')
        assert Embedding.from_json(e.to_json()) == e
        assert e.vertex_set == 0b111

    def test_verify_embedding(self, k3):
        c = monochromatic(4, RED)
        assert verify_embedding(c, Embedding(k3, [0, 1, 3], RED))
        assert not verify_embedding(c, Embedding(k3, [0, 1, 3], BLUE))
        assert not verify_embedding(c, Embedding(k3, [0, 1, 1], RED))
        assert not verify_embedding(c, Embedding(k3, [0, 1, 4], RED))
        assert not verify_embedding(c, Embedding(k3, [0, 1], RED))

    def test_verify_packing(self, k2):
        c = monochromatic(4, RED)
        packing = Packing([Embedding(k2, [0, 1], RED), Embedding(k2, [2, 3], RED)], RED)
        assert verify_packing(c, packing, 2)
        assert not verify_packing(c, packing, 3)
        overlapping = Packing([Embedding(k2, [0, 1], RED), Embedding(k2, [1, 2], RED)], RED)
        assert not verify_packing(c, overlapping)
        assert verify_packing(c, Packing.from_json(packing.to_json()), 2)

    def test_verify_tie(self, k2):
        c = from_red_edges(3, [(0, 1)])
        tie = Tie(k2, 0b111, Embedding(k2, [0, 1], RED), Embedding(k2, [1, 2], BLUE))
        assert verify_tie(c, tie)
        assert verify_tie(c, Tie.from_json(tie.to_json()))
        too_small = Tie(k2, 0b011, Embedding(k2, [0, 1], RED), Embedding(k2, [1, 2], BLUE))
        assert not verify_tie(c, too_small)

    def test_verify_join(self):
        p = block_layout([('R', 2), ('B', 2)])
        c = colouring_from_blocks(p, {'R': RED, 'B': BLUE}, {('R', 'B'): BLUE})
        join = Join(p['R'], p['B'], BLUE)
        assert verify_join(c, join, 2, 2)
        assert not verify_join(c, join, 3, 2)
        assert not verify_join(c, Join(p['R'], p['B'], RED))
        assert verify_join(c, Join.from_json(join.to_json()))


class TestFinders(object):

    def test_mono_copy_lowest(self, k3):
        c = monochromatic(5, RED)
        e = find_mono_copy(c, k3, RED)
        assert list(e.vertices) == [0, 1, 2]
        assert find_mono_copy(c, k3, BLUE) is None
        e = find_mono_copy(c, k3, RED, forbidden=0b1)
        assert list(e.vertices) == [1, 2, 3]

    def test_pentagon_has_no_triangle(self, k3):
        c = pentagon()
        assert find_mono_copy(c, k3, RED) is None
        assert find_mono_copy(c, k3, BLUE) is None

    def test_family_copy(self, k3, k2):
        c = from_red_edges(4, [(0, 1)])
        family = GraphFamily([k3, k2])
        e = find_family_copy(c, family, RED)
        assert e.pattern.order == 2
        assert find_family_copy(c, GraphFamily([empty(0)]), RED).vertices == ()

    def test_disjoint_copies(self, k3):
        c = monochromatic(7, RED)
        packing = find_disjoint_copies(c, k3, RED, 2)
        assert len(packing) == 2
        assert verify_packing(c, packing, 2)
        assert find_disjoint_copies(c, k3, RED, 3) is None
        assert len(find_disjoint_copies(c, k3, RED, 0)) == 0

    def test_disjoint_copies_through(self, k2):
        c = from_red_edges(4, [(0, 1), (2, 3)])
        packing = find_disjoint_copies(c, k2, RED, 1, through=3)
        assert members(packing.vertex_set) == [2, 3]
        assert find_disjoint_copies(c, k2, RED, 1, through=3, forbidden=0b100) is None

    def test_family_packing(self, k2, k3):
        c = from_red_edges(5, [(0, 1), (2, 3), (3, 4), (2, 4)])
        packing = find_disjoint_family_copies(c, GraphFamily([k3, k2]), RED, 2)
        assert verify_packing(c, packing, 2)

    @pytest.mark.timeout(600)
    @pytest.mark.parametrize('order, index', ORACLE_CELLS)
    def test_packing_agrees_with_enumeration(self, order, index):
        pattern = PATTERNS[index]
        for seed in range(200):
            c = random_colouring(order, seed)
            for colour in (RED, BLUE):
                most = _oracle_max_packing(sorted(_copy_sets(c, pattern, colour)))
                if most:
                    found = find_disjoint_copies(c, pattern, colour, most)
                    assert found is not None
                    assert verify_packing(c, found, most)
                assert find_disjoint_copies(c, pattern, colour, most + 1) is None

    @settings(max_examples=40, deadline=None)
    @given(seed=st.integers(0, 10 ** 6), order=st.integers(2, 7),
           index=st.integers(0, len(PATTERNS) - 1))
    def test_colour_duality(self, seed, order, index):
        c = random_colouring(order, seed)
        pattern = PATTERNS[index]
        for colour, other in ((RED, BLUE), (BLUE, RED)):
            direct = find_mono_copy(c, pattern, colour)
            dual = find_mono_copy(c.swapped(), pattern, other)
            assert (direct is None) == (dual is None)
            if direct is not None:
                assert direct.vertices == dual.vertices


class TestTies(object):

    def test_tie_in_pentagon(self, k2):
        tie = find_h_tie(pentagon(), k2)
        assert tie is not None
        assert popcount(tie.vertex_set) == 3
        assert verify_tie(pentagon(), tie)

    def test_no_tie_when_monochromatic(self, k2):
        assert find_h_tie(monochromatic(6, RED), k2) is None

    def test_tie_must_touch(self, k2):
        c = from_red_edges(5, [(0, 1)])
        tie = find_h_tie(c, k2, must_touch=1 << 4)
        assert tie.vertex_set >> 4 & 1
        assert verify_tie(c, tie)

    @pytest.mark.timeout(600)
    @pytest.mark.parametrize('order, index', ORACLE_CELLS)
    def test_tie_agrees_with_enumeration(self, order, index):
        pattern = PATTERNS[index]
        size = 2 * pattern.order - independence_number(pattern)
        for seed in range(200):
            c = random_colouring(order, seed)
            expected = _oracle_has_tie(_copy_sets(c, pattern, RED),
                                       _copy_sets(c, pattern, BLUE), size, order)
            tie = find_h_tie(c, pattern)
            assert (tie is not None) == expected
            if tie is not None:
                assert popcount(tie.vertex_set) == size
                assert verify_tie(c, tie)

    @pytest.mark.parametrize('seed', range(100))
    def test_tie_extension(self, seed):
        pattern = PATTERNS[seed % len(PATTERNS)]
        copies = 1 + seed % 3
        colour = (RED, BLUE)[seed // 50]
        c, planted = _planted_tie_colouring(pattern, copies, colour, seed)
        packing = find_disjoint_copies(c, pattern, colour, copies, forbidden=planted)
        assert packing is not None
        tie = find_h_tie(c, pattern, forbidden=packing.vertex_set)
        assert tie is not None
        assert not tie.vertex_set & packing.vertex_set
        extended = extend_packing_with_tie(c, tie, packing, colour)
        assert verify_packing(c, extended, copies + 1)
        assert extended.colour == colour

    def test_tie_extension_rejects_overlap(self, k2):
        c = pentagon()
        tie = find_h_tie(c, k2)
        red = tie.copy_of(RED)
        with pytest.raises(PreconditionError):
            extend_packing_with_tie(c, tie, Packing([red], RED), RED)


class TestJoins(object):

    def test_find_join(self):
        p = block_layout([('R', 3), ('B', 3)])
        c = colouring_from_blocks(p, {'R': RED, 'B': BLUE}, {('R', 'B'): RED})
        join = find_join(c, p['R'], p['B'], 2, 3)
        assert join.colour == RED
        assert verify_join(c, join, 2, 3)
        assert find_join(c, p['R'], p['B'], 4, 1) is None

    def test_overlapping_candidates(self):
        with pytest.raises(PreconditionError):
            find_join(monochromatic(4, RED), 0b011, 0b110, 1, 1)

    @pytest.mark.parametrize('order', range(2, 9))
    def test_join_agrees_with_enumeration(self, order):
        r_cand = (1 << order // 2) - 1
        b_cand = ((1 << order) - 1) & ~r_cand
        for seed in range(200):
            c = random_colouring(order, seed)
            for k, l in ((1, 1), (1, 2), (2, 1), (2, 2)):
                join = find_join(c, r_cand, b_cand, k, l)
                assert (join is not None) == _oracle_has_join(c, r_cand, b_cand, k, l)
                if join is not None:
                    assert verify_join(c, join, k, l)

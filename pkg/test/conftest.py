# (c) 2024 Multiram Project
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
#
# This file is part of Multiram
#

import pytest
from hypothesis import HealthCheck, settings

from multiram import output
from multiram.graph import complete, cycle, disjoint_union, empty, path

# fixtures here are reset once per test, not per generated example
settings.register_profile(
    "multiram", suppress_health_check=[HealthCheck.function_scoped_fixture])
settings.load_profile("multiram")


@pytest.fixture
def k2():
    return complete(2)


@pytest.fixture
def k3():
    return complete(3)


@pytest.fixture
def p3():
    return path(3)


@pytest.fixture
def c5():
    return cycle(5)


@pytest.fixture
def c6():
    return cycle(6)


@pytest.fixture
def two_k2():
    return disjoint_union(complete(2), complete(2))


@pytest.fixture
def three_k1():
    return empty(3)


@pytest.fixture(autouse=True)
def console_writer():
    """Every test starts with a fresh console writer and no error recorded"""
    output._writer = output.ConsoleOutputWriter()
    output.error_occurred = False
    output.ansi_colors_enabled = False
    yield output._writer
    output._writer = output.ConsoleOutputWriter()
    output.error_occurred = False

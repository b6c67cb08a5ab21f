# (c) 2024 Multiram Project
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
#
# This file is part of Multiram
#

import json

import mock
import pytest

from multiram import output
from multiram.colouring import RED
from multiram.constructions import bes_lower
from multiram.detectors import Embedding
from multiram.families import d_family
from multiram.graph import complete, cycle
from multiram.procedures import TilingCertificate


def _mock_writer():
    writer = mock.Mock(spec=output.ConsoleOutputWriter)
    output.set_output_writer(writer)
    return writer


class TestOutputApi(object):

    def test_messages_reach_the_writer(self):
        writer = _mock_writer()
        output.info('hello %s', 'world')
        writer.info.assert_called_once_with('hello %s', 'world')
        output.debug('detail')
        writer.debug.assert_called_once_with('detail')
        assert not output.error_occurred

    def test_error_sets_flag(self):
        writer = _mock_writer()
        output.error('broken %d', 3)
        assert output.error_occurred
        writer.error_occurred.assert_called_once_with()
        writer.error.assert_called_once_with('broken %d', 3)

    def test_error_ignore(self):
        _mock_writer()
        output.error('tolerated', ignore=True)
        assert not output.error_occurred

    def test_unexpected_keyword(self):
        _mock_writer()
        with pytest.raises(TypeError):
            output.info('x', colour=RED)

    def test_exception_reraises(self):
        _mock_writer()
        with pytest.raises(ValueError):
            try:
                raise ValueError('boom')
            except ValueError:
                output.exception('failed', raise_exception=True)
        assert output.error_occurred

    def test_close_and_exit(self):
        _mock_writer()
        with pytest.raises(SystemExit) as excinfo:
            output.close_and_exit()
        assert excinfo.value.code == 0
        output.error('bad')
        with pytest.raises(SystemExit) as excinfo:
            output.close_and_exit()
        assert excinfo.value.code == output.error_exit_code

    def test_unknown_command(self):
        _mock_writer()
        with pytest.raises(SystemExit):
            output.result('nothing')
        assert output.error_occurred

    def test_result_dispatch(self):
        writer = _mock_writer()
        output.init('detect', 'copy')
        output.result('detect', 'copy', None)
        writer.init_detect.assert_called_once_with('copy')
        writer.result_detect.assert_called_once_with('copy', None)


class TestConsoleOutputWriter(object):

    def test_quiet_and_debug(self, capsys):
        writer = output.ConsoleOutputWriter(debug=True, quiet=True)
        writer.info('hidden')
        writer.debug('shown')
        writer.warning('careful')
        out, err = capsys.readouterr()
        assert out == ''
        assert err == 'DEBUG: shown\nWARNING: careful\n'

    def test_colours(self, capsys):
        output.ansi_colors_enabled = True
        output.ConsoleOutputWriter().error('bad')
        out, err = capsys.readouterr()
        assert err == '\033[31mERROR: bad\033[0m\n'

    def test_families(self, capsys):
        c6 = cycle(6)
        family = d_family(c6)
        output.ConsoleOutputWriter().result_families(c6, 'd', family)
        out, err = capsys.readouterr()
        assert out.splitlines() == family.to_json()

    def test_detect(self, capsys):
        writer = output.ConsoleOutputWriter()
        writer.result_detect('copy', None)
        writer.result_detect('copy', Embedding(complete(2), [3, 1], RED))
        out, err = capsys.readouterr()
        lines = out.splitlines()
        assert lines[0] == output.NONE_MARKER
        assert lines[1] == '{"colour": "red", "pattern": "A_", "vertices": [3, 1]}'

    def test_construct(self, capsys):
        report = bes_lower(complete(3), 1)
        output.ConsoleOutputWriter().result_construct(report, 'a.col', 'a.json')
        summary = json.loads(capsys.readouterr()[0])
        assert summary['order'] == report.colouring.order
        assert summary['colouring_file'] == 'a.col'
        assert summary['partition_file'] == 'a.json'
        assert len(summary['claims']) == 2

    def test_verify_and_bracket(self, capsys):
        writer = output.ConsoleOutputWriter()
        writer.result_verify('tiling', False, 'overlap')
        writer.result_bracket(complete(3), 0, 1)
        first, second = capsys.readouterr()[0].splitlines()
        assert json.loads(first) == {'details': 'overlap', 'kind': 'tiling',
                                     'valid': False}
        assert json.loads(second)['point'] is None


class TestJsonOutputWriter(object):

    def test_collects_results(self, capsys):
        writer = output.JsonOutputWriter()
        writer.info('note')
        writer.warning('careful')
        writer.result_detect('pack', None)
        writer.result_tile(TilingCertificate(2, [0b11], 0b100))
        writer.close()
        data = json.loads(capsys.readouterr()[0])
        assert data['_INFO'] == ['note']
        assert data['_WARNING'] == ['careful']
        assert data['detect'] == {'certificate': None, 'found': False,
                                  'what': 'pack'}
        assert data['tile'] == {'leftover': [2], 'pattern': 'K_2', 'tiles': [[0, 1]]}

    def test_quiet(self, capsys):
        writer = output.JsonOutputWriter(quiet=True)
        writer.result_verify('tie', True)
        writer.close()
        assert capsys.readouterr()[0] == ''

    def test_set_by_name(self):
        output.set_output_writer('json', debug=True)
        assert isinstance(output._writer, output.JsonOutputWriter)
        assert output.is_debug()
        assert not output.is_quiet()

    def test_solve_summary(self, capsys):
        writer = output.JsonOutputWriter()
        result = mock.Mock()
        result.to_json.return_value = {'value': 6}
        writer.result_solve(result)
        writer.result_formula('clique', {'value': 10})
        writer.close()
        data = json.loads(capsys.readouterr()[0])
        assert data['solve'] == {'value': 6}
        assert data['formula'] == {'value': 10}

    def test_construct_summary(self, capsys):
        report = bes_lower(complete(2), 2)
        writer = output.JsonOutputWriter()
        writer.result_construct(report, 'b.col', 'b.json')
        writer.close()
        data = json.loads(capsys.readouterr()[0])
        assert data['construct']['order'] == 4

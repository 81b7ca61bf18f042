"""
Integration tests for CLI commands using Click CliRunner.
"""
import json
import math

import pytest
from click.testing import CliRunner

from blmix import __version__
from blmix.cli import EXIT_INCONCLUSIVE, EXIT_INVALID, cli


@pytest.fixture
def runner():
    return CliRunner()


def _chain(n, m, r, k):
    return ['--n', str(n), '--m', str(m), '--r', str(r), '--k', str(k)]


class TestMixCommand:
    def test_published_cell(self, runner):
        result = runner.invoke(cli, ['mix', *_chain(50, 25, 25, 1), '--epsilon', '0.01'])
        assert result.exit_code == 0, result.output
        payload = json.loads(result.stdout)
        assert payload['t_mix'] == 68
        assert payload['non_mixing'] is False
        assert payload['regime'] == 'generic'
        assert payload['backend'] == 'float'
        assert payload['t_n'] == pytest.approx(23.46, abs=0.01)
        assert payload['params'] == {'n': 50, 'm': 25, 'r': 25, 'k': 1}

    def test_largest_published_cell(self, runner):
        result = runner.invoke(cli, ['mix', *_chain(1000, 500, 500, 20)])
        assert result.exit_code == 0, result.output
        assert json.loads(result.stdout)['t_mix'] == 86

    def test_full_swap(self, runner):
        result = runner.invoke(cli, ['mix', *_chain(100, 50, 50, 50)])
        assert result.exit_code == 0, result.output
        payload = json.loads(result.stdout)
        assert payload['t_mix'] is None
        assert payload['non_mixing'] is True
        assert payload['regime'] == 'non-mixing'
        assert payload['q_n'] == math.inf

    def test_critical(self, runner):
        result = runner.invoke(cli, ['mix', *_chain(4, 2, 2, 1)])
        assert result.exit_code == 0, result.output
        payload = json.loads(result.stdout)
        assert payload['regime'] == 'critical'
        assert payload['t_n'] is None
        assert payload['q_n'] == pytest.approx(2.0)
        assert payload['lambda1'] == 0

    def test_rational_backend(self, runner):
        result = runner.invoke(cli, ['mix', *_chain(20, 10, 10, 2), '--backend', 'rational'])
        assert result.exit_code == 0, result.output
        assert json.loads(result.stdout)['backend'] == 'rational'

    def test_invalid_parameters(self, runner):
        result = runner.invoke(cli, ['mix', *_chain(4, 0, 2, 1)])
        assert result.exit_code == EXIT_INVALID
        assert 'Error' in result.output

    def test_rational_size_limit(self, runner):
        result = runner.invoke(cli, ['mix', *_chain(100, 50, 50, 1), '--backend', 'rational'])
        assert result.exit_code == EXIT_INVALID

    def test_cap_reached(self, runner):
        result = runner.invoke(cli, ['mix', *_chain(50, 25, 25, 1), '--cap', '1'])
        assert result.exit_code == EXIT_INCONCLUSIVE

    def test_epsilon_from_environment(self, runner, monkeypatch):
        monkeypatch.setenv('BLMIX_EPSILON', '0.5')
        result = runner.invoke(cli, ['mix', *_chain(50, 25, 25, 1)])
        payload = json.loads(result.stdout)
        assert payload['epsilon'] == 0.5
        assert payload['t_mix'] < 68


class TestCurveCommand:
    def test_profile(self, runner):
        result = runner.invoke(cli, ['curve', *_chain(4, 2, 2, 1), '--steps', '2'])
        assert result.exit_code == 0, result.output
        lines = result.stdout.strip().splitlines()
        assert lines[0] == 't\td\tworst_start'
        assert [line.split('\t')[0] for line in lines[1:]] == ['0', '1', '2']
        assert float(lines[2].split('\t')[1]) == pytest.approx(1 / 3)


class TestSweepCommand:
    def test_single_cell(self, runner):
        result = runner.invoke(cli, ['sweep', '--axis', 'k', '--ratios', '0.02', '--ns', '50'])
        assert result.exit_code == 0, result.output
        assert result.stdout == 'ratio,n=50\n0.02,68\n'

    def test_output_file_with_sidecar(self, runner, tmp_path):
        out = tmp_path / 'grid.csv'
        result = runner.invoke(cli, ['sweep', '--axis', 'k', '--ratios', '0.02,0.03,0.5',
                                     '--ns', '50', '--threads', '2', '-o', str(out)])
        assert result.exit_code == 0, result.output
        assert out.read_text() == 'ratio,n=50\n0.02,68\n0.03,ERR\n0.50,inf\n'
        assert (tmp_path / 'grid.errors.log').exists()

    def test_range_syntax(self, runner):
        result = runner.invoke(cli, ['sweep', '--axis', 'r', '--ratios', '0.04',
                                     '--gamma', '0.02', '--ns', '50:100:50'])
        assert result.exit_code == 0, result.output
        assert result.stdout == 'ratio,n=50,n=100\n0.04,8,8\n'

    def test_needs_a_grid(self, runner):
        result = runner.invoke(cli, ['sweep', '--axis', 'k'])
        assert result.exit_code == 2

    def test_resume_without_jobs(self, runner):
        result = runner.invoke(cli, ['sweep', '--resume'])
        assert result.exit_code == EXIT_INVALID
        assert 'No interrupted sweep job' in result.output


class TestFigureCommand:
    def test_custom_ratios(self, runner, tmp_path):
        result = runner.invoke(cli, ['figure', '--gamma', '0.1', '--eta', '0.4', '--ns', '20,25,40',
                                     '--out-dir', str(tmp_path), '--name', 'custom'])
        assert result.exit_code == 0, result.output
        assert 'skipped n=25' in result.output
        rows = (tmp_path / 'custom.tsv').read_text().strip().splitlines()
        assert rows[0] == 'n\tt_mix'
        assert [row.split('\t')[0] for row in rows[1:]] == ['20', '40']
        assert (tmp_path / 'custom.svg').read_text().lstrip().startswith('<?xml')

    def test_svg_is_deterministic(self, runner, tmp_path):
        args = ['figure', '--gamma', '0.25', '--eta', '0.5', '--ns', '52,56,60']
        runner.invoke(cli, [*args, '--out-dir', str(tmp_path / 'a')])
        runner.invoke(cli, [*args, '--out-dir', str(tmp_path / 'b')])
        first = (tmp_path / 'a' / 'figure.svg').read_bytes()
        assert first == (tmp_path / 'b' / 'figure.svg').read_bytes()

    def test_needs_ratios(self, runner):
        result = runner.invoke(cli, ['figure', '--gamma', '0.1'])
        assert result.exit_code == 2


class TestVerifyCommand:
    @pytest.mark.parametrize('suite', ['spectral', 'llt'])
    def test_suite_passes(self, runner, suite):
        result = runner.invoke(cli, ['verify', '--suite', suite])
        assert result.exit_code == 0, result.output
        report = json.loads(result.stdout)
        assert report['passed'] is True
        assert report['suites'][0]['suite'] == suite


class TestConfigCommand:
    def test_set_and_show(self, runner):
        result = runner.invoke(cli, ['config', 'set', 'threads', '3'])
        assert result.exit_code == 0, result.output

        result = runner.invoke(cli, ['config', 'show'])
        payload = json.loads(result.stdout)
        assert payload['file'] == {'threads': 3}
        assert payload['settings']['threads'] == 3

    def test_set_invalid_value_warns(self, runner):
        result = runner.invoke(cli, ['config', 'set', 'epsilon', '2'])
        assert result.exit_code == 0
        assert 'Warning' in result.output


def test_version(runner):
    result = runner.invoke(cli, ['--version'])
    assert result.exit_code == 0
    assert __version__ in result.output

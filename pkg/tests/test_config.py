"""
Tests for configuration management.
"""
import os

import pytest

from blmix.config import (
    Settings,
    config_dir,
    config_path,
    get_config_value,
    load_config,
    load_settings,
    save_config,
    set_config_value,
)
from blmix.errors import ParameterError


def test_paths_follow_home(_isolated_home):
    """Path resolution is lazy, so the isolated HOME is honored."""
    assert config_dir() == os.path.join(str(_isolated_home), ".blmix")
    assert config_path().endswith(os.path.join(".blmix", "config.json"))


def test_load_config_empty():
    """Test loading config when file doesn't exist."""
    assert load_config() == {}


def test_save_and_load_config():
    test_config = {'epsilon': 0.05, 'backend': 'rational'}

    save_config(test_config)

    assert load_config() == test_config


def test_get_config_value():
    save_config({'sweep': {'threads': 4}, 'epsilon': 0.02})

    # Test nested key
    assert get_config_value('sweep.threads') == 4

    # Test simple key
    assert get_config_value('epsilon') == 0.02

    # Test non-existent key with default
    assert get_config_value('nonexistent', 'default') == 'default'


def test_set_config_value_preserves_existing():
    set_config_value('sweep.threads', 2)
    set_config_value('sweep.backend', 'float')
    set_config_value('sweep.threads', 8)

    assert get_config_value('sweep.threads') == 8
    assert get_config_value('sweep.backend') == 'float'


class TestSettings:
    def test_defaults(self, _isolated_home):
        settings = load_settings()
        assert settings.epsilon == 0.01
        assert settings.backend == 'float'
        assert settings.threads == 1
        assert settings.critical_constant == 1.0
        assert settings.rational_max_n == 64
        assert settings.state_dir == os.path.join(str(_isolated_home), '.blmix', 'sweep_jobs')

    def test_config_file_layer(self):
        save_config({'epsilon': 0.05, 'threads': 3, 'unrelated': 'ignored'})
        settings = load_settings()
        assert settings.epsilon == 0.05
        assert settings.threads == 3

    def test_environment_beats_config_file(self, monkeypatch):
        save_config({'threads': 3})
        monkeypatch.setenv('BLMIX_THREADS', '6')
        assert load_settings().threads == 6

    def test_overrides_beat_environment(self, monkeypatch):
        monkeypatch.setenv('BLMIX_EPSILON', '0.2')
        assert load_settings(epsilon=0.1).epsilon == 0.1
        # None means "not given"
        assert load_settings(epsilon=None).epsilon == 0.2

    def test_backend_is_normalized(self):
        assert Settings(backend='RATIONAL').backend == 'rational'

    @pytest.mark.parametrize('overrides', [
        {'epsilon': 0.0},
        {'epsilon': 1.5},
        {'threads': 0},
        {'backend': 'quad'},
    ])
    def test_invalid_values_raise_parameter_error(self, overrides):
        with pytest.raises(ParameterError):
            load_settings(**overrides)

"""Tests for configuration management."""

import json
from pathlib import Path

import pytest

from pointlike_lab.config import (
    HARD_ENUMERATION_CAP,
    Limits,
    ensure_config_dir,
    get_config_dir,
    get_config_path,
    get_default_config,
    get_default_law_order,
    get_limits,
    load_config,
    load_settings,
    save_config,
    validate_config,
)


@pytest.fixture
def temp_config_dir(tmp_path, monkeypatch):
    """Create a temporary config directory for testing."""
    config_dir = tmp_path / "conf" / ".pointlike_lab"
    monkeypatch.setattr("pointlike_lab.config.get_config_dir", lambda: config_dir)
    return config_dir


def test_get_config_dir_returns_path():
    """Test that get_config_dir returns a Path object."""
    config_dir = get_config_dir()
    assert isinstance(config_dir, Path)
    assert config_dir.name == ".pointlike_lab"


def test_get_config_path_returns_json_file():
    """Test that get_config_path returns config.json path."""
    config_path = get_config_path()
    assert isinstance(config_path, Path)
    assert config_path.name == "config.json"


def test_ensure_config_dir_creates_directory(temp_config_dir):
    """Test that ensure_config_dir creates the directory."""
    assert not temp_config_dir.exists()
    ensure_config_dir()
    assert temp_config_dir.exists()


def test_ensure_config_dir_idempotent(temp_config_dir):
    """Test that ensure_config_dir can be called multiple times."""
    ensure_config_dir()
    ensure_config_dir()
    assert temp_config_dir.exists()


def test_get_default_config_structure():
    """Test that default config mirrors the Limits defaults."""
    config = get_default_config()

    assert set(config) == {"limits", "checks"}
    assert config["limits"]["max_enumeration_order"] == HARD_ENUMERATION_CAP
    assert config["checks"]["default_law_order"] == 3
    assert Limits(**config["limits"]) == Limits()


def test_save_and_load_config(temp_config_dir):
    """Test saving and loading configuration."""
    config = get_default_config()
    config["limits"]["max_word_length"] = 2

    save_config(config)

    assert (temp_config_dir / "config.json").exists()
    loaded_config = load_config()
    assert loaded_config == config


def test_load_config_file_not_found(temp_config_dir):
    """Test that load_config raises FileNotFoundError if config doesn't exist."""
    with pytest.raises(FileNotFoundError):
        load_config()


def test_load_config_malformed_json(temp_config_dir):
    """Test that load_config raises JSONDecodeError for malformed JSON."""
    ensure_config_dir()
    (temp_config_dir / "config.json").write_text("{invalid json")

    with pytest.raises(json.JSONDecodeError):
        load_config()


def test_validate_config_valid():
    assert validate_config(get_default_config()) is True


@pytest.mark.parametrize(
    "config",
    [
        {"limits": {}},
        {"checks": {}},
        {"limits": {"max_colours": 3}, "checks": {}},
        {"limits": {"max_faces": 0}, "checks": {}},
        {"limits": {"max_faces": True}, "checks": {}},
        {"limits": {}, "checks": {"default_law_order": 9}},
    ],
)
def test_validate_config_rejects(config):
    assert validate_config(config) is False


def test_get_limits_defaults(temp_config_dir):
    """Test that missing config falls back to the built-in limits."""
    assert get_limits() == Limits()


def test_get_limits_reads_config_file(temp_config_dir):
    config = get_default_config()
    config["limits"]["max_faces"] = 100
    save_config(config)

    assert get_limits().max_faces == 100


def test_get_limits_ignores_malformed_file(temp_config_dir):
    ensure_config_dir()
    (temp_config_dir / "config.json").write_text("{invalid json")

    assert get_limits() == Limits()


def test_environment_overrides_enumeration_cap(monkeypatch):
    monkeypatch.setenv("POINTLIKE_LAB_MAX_ORDER", "3")
    assert get_limits().max_enumeration_order == 3


def test_enumeration_cap_is_hard(monkeypatch):
    monkeypatch.setenv("POINTLIKE_LAB_MAX_ORDER", "9")
    assert get_limits().max_enumeration_order == HARD_ENUMERATION_CAP

    config = {"limits": {"max_enumeration_order": 12}}
    monkeypatch.delenv("POINTLIKE_LAB_MAX_ORDER")
    assert get_limits(config).max_enumeration_order == HARD_ENUMERATION_CAP


def test_non_integer_environment_is_ignored(monkeypatch):
    monkeypatch.setenv("POINTLIKE_LAB_MAX_ORDER", "lots")
    assert get_limits().max_enumeration_order == HARD_ENUMERATION_CAP


def test_default_law_order():
    assert get_default_law_order() == 3
    assert get_default_law_order({"checks": {"default_law_order": 2}}) == 2


def test_load_settings_falls_back_to_defaults(temp_config_dir):
    assert load_settings() == get_default_config()

    ensure_config_dir()
    (temp_config_dir / "config.json").write_text("{invalid json")
    assert load_settings() == get_default_config()


def test_load_settings_reads_config_file(temp_config_dir):
    config = get_default_config()
    config["checks"]["default_law_order"] = 2
    save_config(config)

    settings = load_settings()
    assert settings == config
    assert get_default_law_order(settings) == 2

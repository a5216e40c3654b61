import pytest

from src.environment_loader import DEFAULT_MAX_QUBITS, EnvironmentLoader


def test_integer_settings_fall_back_to_defaults(monkeypatch):
    monkeypatch.delenv("QROOT_MAX_QUBITS", raising=False)

    assert EnvironmentLoader.max_qubits() == DEFAULT_MAX_QUBITS


def test_integer_settings_are_read_from_the_environment(monkeypatch):
    monkeypatch.setenv("QROOT_SEED", "7")

    assert EnvironmentLoader.default_seed() == 7


def test_malformed_integer_names_the_variable(monkeypatch):
    monkeypatch.setenv("QROOT_THREADS", "many")

    with pytest.raises(ValueError, match="QROOT_THREADS"):
        EnvironmentLoader.default_threads()


def test_blank_log_file_means_none(monkeypatch):
    monkeypatch.setenv("QROOT_LOG_FILE", "  ")

    assert EnvironmentLoader.log_file() is None


def test_log_level_is_upper_cased(monkeypatch):
    monkeypatch.setenv("QROOT_LOG_LEVEL", "debug")

    assert EnvironmentLoader.log_level() == "DEBUG"

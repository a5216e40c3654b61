"""
Environment Loader

Centralized environment variable loading for the solver. Environment values
provide defaults (qubit caps, seeds, thread counts, logging) that command-line
flags override. Variables are loaded from a .env file once and can be safely
read from any module.
"""

import os
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

DEFAULT_MAX_QUBITS = 26
DEFAULT_FAITHFUL_DENSE_QUBITS = 16
DEFAULT_SEED = 20240601


class EnvironmentLoader:
    """Singleton class for loading and reading environment variables.

    The .env file is read only once per process. Typed accessors convert and
    validate values so that a malformed setting fails loudly with the name of
    the offending variable instead of surfacing later as an obscure error.
    """
    _loaded = False

    @classmethod
    def load_environment(cls):
        """Load environment variables from .env file if not already loaded."""
        if not cls._loaded:
            load_dotenv()
            cls._loaded = True

    @staticmethod
    def get_optional_env(key: str, default: Optional[str] = None) -> Optional[str]:
        """Get an optional environment variable with a fallback default value."""
        EnvironmentLoader.load_environment()
        return os.getenv(key, default)

    @staticmethod
    def get_int_env(key: str, default: int) -> int:
        """Get an integer environment variable.

        Raises:
            ValueError: If the variable is set but is not an integer.
        """
        raw = EnvironmentLoader.get_optional_env(key)
        if raw is None or not raw.strip():
            return default
        try:
            return int(raw)
        except ValueError:
            raise ValueError(f"{key} must be an integer, got {raw!r}")

    @staticmethod
    def get_path_env(key: str) -> Optional[Path]:
        """Get an optional filesystem path; unset or blank means None."""
        raw = EnvironmentLoader.get_optional_env(key)
        if raw is None or not raw.strip():
            return None
        return Path(raw.strip()).expanduser()

    @staticmethod
    def log_level() -> str:
        return (EnvironmentLoader.get_optional_env("QROOT_LOG_LEVEL") or "INFO").upper()

    @staticmethod
    def log_file() -> Optional[Path]:
        return EnvironmentLoader.get_path_env("QROOT_LOG_FILE")

    @staticmethod
    def max_qubits() -> int:
        return EnvironmentLoader.get_int_env("QROOT_MAX_QUBITS", DEFAULT_MAX_QUBITS)

    @staticmethod
    def faithful_dense_qubits() -> int:
        return EnvironmentLoader.get_int_env("QROOT_FAITHFUL_DENSE_QUBITS", DEFAULT_FAITHFUL_DENSE_QUBITS)

    @staticmethod
    def default_seed() -> int:
        return EnvironmentLoader.get_int_env("QROOT_SEED", DEFAULT_SEED)

    @staticmethod
    def default_threads() -> int:
        return EnvironmentLoader.get_int_env("QROOT_THREADS", os.cpu_count() or 1)


# Load environment variables immediately when this module is imported
EnvironmentLoader.load_environment()

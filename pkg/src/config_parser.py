"""Configuration handling for multiset-codes.

Supports .multiset-codes.yaml files holding default limits and a list of
batch experiment jobs, plus the MULTISET_CODES_ENUM_CAP environment variable.
"""
import os
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Mapping, Optional

import yaml

#: Environment variable overriding the default enumeration cap
ENUM_CAP_ENV = "MULTISET_CODES_ENUM_CAP"

DEFAULT_ENUMERATION_CAP = 10_000_000
DEFAULT_SEARCH_CAP = 5000
DEFAULT_PATTERN_CAP = 1_000_000

SUPPORTED_FORMATS = ["json", "csv"]
SUPPORTED_TASKS = ["bounds", "construct", "search", "simulate", "verify"]
SUPPORTED_KINDS = ["binary", "summod", "cyclic", "ternary", "parity"]
SUPPORTED_MODES = ["exhaustive", "random"]

_IMPLIED_Q = {"binary": 2, "ternary": 3}


class ConfigError(Exception):
    """Raised when configuration is invalid."""
    pass


def _positive_int(value: Any, name: str) -> int:
    if isinstance(value, bool):
        raise ConfigError(f"{name} must be a positive integer, got {value!r}")
    try:
        parsed = int(value)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"{name} must be a positive integer, got {value!r}") from e
    if parsed <= 0:
        raise ConfigError(f"{name} must be a positive integer, got {value!r}")
    return parsed


def default_enumeration_cap(env: Optional[Mapping[str, str]] = None) -> int:
    """Return the enumeration cap used when a caller passes none.

    Args:
        env: Environment mapping to read (default: os.environ)

    Returns:
        Value of MULTISET_CODES_ENUM_CAP, or DEFAULT_ENUMERATION_CAP if unset

    Raises:
        ConfigError: If the variable is set to a non-positive or non-integer value
    """
    source = os.environ if env is None else env
    raw = source.get(ENUM_CAP_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_ENUMERATION_CAP
    return _positive_int(raw.strip(), ENUM_CAP_ENV)


@dataclass(frozen=True)
class Settings:
    """Resolved limits and output preferences."""

    enumeration_cap: int = DEFAULT_ENUMERATION_CAP
    search_cap: int = DEFAULT_SEARCH_CAP
    pattern_cap: int = DEFAULT_PATTERN_CAP
    workers: int = 1
    output_format: str = "json"

    @classmethod
    def from_environment(cls, env: Optional[Mapping[str, str]] = None) -> "Settings":
        return cls(enumeration_cap=default_enumeration_cap(env))


class ConfigParser:
    """Parse and validate .multiset-codes.yaml configuration files."""

    def __init__(self, config_path: str):
        """Initialize config parser.

        Args:
            config_path: Path to .multiset-codes.yaml file

        Raises:
            ConfigError: If config file not found or invalid YAML
        """
        self.config_path = Path(config_path)
        if not self.config_path.exists():
            raise ConfigError(f"Config file not found: {config_path}")

        try:
            with open(self.config_path) as f:
                self.config = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise ConfigError(f"Invalid YAML in {config_path}: {str(e)}") from e
        except Exception as e:
            raise ConfigError(f"Failed to read config: {str(e)}") from e

        if not isinstance(self.config, dict):
            raise ConfigError(f"Top level of {config_path} must be a mapping")

    def get_defaults(self) -> dict[str, Any]:
        """Get default settings shared by all commands and jobs.

        Returns:
            Dict with enumeration_cap, search_cap, pattern_cap, workers, format
        """
        defaults = dict(self.config.get("defaults") or {})
        defaults.setdefault("format", "json")
        if defaults["format"] not in SUPPORTED_FORMATS:
            raise ConfigError(
                f"unsupported format '{defaults['format']}'. "
                f"Must be one of: {', '.join(SUPPORTED_FORMATS)}"
            )
        return defaults

    def get_settings(self, env: Optional[Mapping[str, str]] = None) -> Settings:
        """Resolve settings: file defaults over environment over built-ins.

        Returns:
            Settings instance

        Raises:
            ConfigError: If a limit is not a positive integer
        """
        defaults = self.get_defaults()
        settings = Settings.from_environment(env)
        overrides: dict[str, Any] = {"output_format": defaults["format"]}
        for key in ("enumeration_cap", "search_cap", "pattern_cap", "workers"):
            if key in defaults:
                overrides[key] = _positive_int(defaults[key], key)
        return replace(settings, **overrides)

    def get_jobs(self) -> list[dict[str, Any]]:
        """Get list of experiment jobs to run.

        Returns:
            List of job dicts with task and its parameters

        Raises:
            ConfigError: If jobs are missing or invalid
        """
        jobs = self.config.get("jobs", [])

        if not jobs:
            raise ConfigError("No jobs defined in configuration")

        validated_jobs = []
        for idx, job in enumerate(jobs):
            if not isinstance(job, dict):
                raise ConfigError(f"Job {idx} is not a dictionary")

            task = job.get("task")
            if task not in SUPPORTED_TASKS:
                raise ConfigError(
                    f"Job {idx}: unsupported task '{task}'. "
                    f"Must be one of: {', '.join(SUPPORTED_TASKS)}"
                )

            if task == "verify":
                required = ["t", "words"]
            elif task in ("construct", "simulate"):
                # t is implied for summod and parity codes
                required = ["n", "kind"]
            else:
                required = ["n", "t"]
            for field_name in required:
                if field_name not in job:
                    raise ConfigError(f"Job {idx} missing required field: {field_name}")

            if "kind" in job and job["kind"] not in SUPPORTED_KINDS:
                raise ConfigError(
                    f"Job {idx}: unsupported kind '{job['kind']}'. "
                    f"Must be one of: {', '.join(SUPPORTED_KINDS)}"
                )
            if job.get("mode", "exhaustive") not in SUPPORTED_MODES:
                raise ConfigError(f"Job {idx}: unsupported mode '{job['mode']}'")

            normalized_job = dict(job)
            normalized_job.setdefault("q", _IMPLIED_Q.get(job.get("kind")))
            if task == "simulate":
                normalized_job.setdefault("mode", "exhaustive")
                normalized_job.setdefault("seed", 0)
                normalized_job.setdefault("trials", 1000)
            validated_jobs.append(normalized_job)

        return validated_jobs

    def validate(self) -> bool:
        """Validate entire configuration.

        Returns:
            True if configuration is valid

        Raises:
            ConfigError: If configuration is invalid
        """
        self.get_settings()
        self.get_jobs()
        return True

"""Configuration resolution and fingerprinting for the command-line tools.

Precedence for every knob: command-line flag, then config-file entry, then the
``BBNET_SEED`` environment variable (seed only), then the built-in default.
Config files are ``key = value`` lines; ``#`` starts a comment.

A resolved command's semantic parameters are fingerprinted (sha256 of their
canonical JSON, first 16 hex digits) and embedded in every output file.
Output location and parallelism are never part of the fingerprint, so moving
the output directory or changing ``--jobs`` cannot change a single output
byte.
"""

from __future__ import annotations

import hashlib
import json
import os


class ValidationError(ValueError):
    """Bad arguments, malformed config, or malformed input files."""


SEED_ENV_VAR = "BBNET_SEED"


def parse_config_file(path) -> dict[str, str]:
    values: dict[str, str] = {}
    try:
        with open(path) as fh:
            for line_number, raw in enumerate(fh, start=1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                key, sep, value = line.partition("=")
                if not sep or not key.strip():
                    raise ValidationError(
                        f"{path}:{line_number}: expected 'key = value', got {raw.strip()!r}"
                    )
                values[key.strip().replace("-", "_")] = value.strip()
    except OSError as exc:
        raise ValidationError(f"cannot read config file {path}: {exc}")
    return values


def resolve_seed(cli_seed: int | None, file_values: dict[str, str]) -> int:
    if cli_seed is not None:
        return cli_seed
    if "seed" in file_values:
        return _parse_int("seed", file_values["seed"])
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        return _parse_int(SEED_ENV_VAR, env)
    return 0


def _parse_int(name: str, text: str) -> int:
    try:
        return int(text, 0)
    except ValueError:
        raise ValidationError(f"{name} must be an integer, got {text!r}")


def merge_option(cli_value, file_values: dict[str, str], key: str, parse, default):
    """Apply the precedence chain for one option."""
    if cli_value is not None:
        return cli_value
    if key in file_values:
        try:
            return parse(file_values[key])
        except ValidationError:
            raise
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"config key {key}: {exc}")
    return default


def fingerprint(params: dict) -> str:
    canonical = json.dumps(params, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]

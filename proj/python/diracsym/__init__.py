"""Python access to the diracsym solvers.

Configs are plain dicts in the same nested layout as the JSON config files;
missing fields take their defaults.
"""

import json

from . import _core
from ._core import (
    ConfigError,
    DoublingDetected,
    Error,
    InvalidCoupling,
    InvalidLambda,
    IterationDiverged,
    NoStateFound,
    NonHermitianInput,
    SingularDenominator,
    TurningPointOutsideGrid,
    ZeroMomentum,
    candidates,
    commutation_residuals,
)

__all__ = [
    "ConfigError", "DoublingDetected", "Error", "InvalidCoupling", "InvalidLambda",
    "IterationDiverged", "NoStateFound", "NonHermitianInput", "SingularDenominator",
    "TurningPointOutsideGrid", "ZeroMomentum", "candidates", "commutation_residuals",
    "default_config", "normalize_config", "spectrum", "run",
]


def default_config():
    return json.loads(_core.default_config())


def normalize_config(config=None):
    """Validated config with every default filled in. Raises ConfigError."""
    return json.loads(_core.normalize_config(json.dumps(config or {})))


def spectrum(config=None):
    """Spectrum rows (list of dicts) for config["dimension"]; nothing is written."""
    return json.loads(_core.spectrum(json.dumps(config or {})))["rows"]


def run(config=None):
    """Same as the CLI: writes artifacts under config["out_dir"].

    Returns (exit_code, files, summary)."""
    code, files, summary = _core.run(json.dumps(config or {}))
    return code, files, json.loads(summary)

"""Python front end to the cayleymix core library."""

import csv
import io
import json

from ._core import (
    AbelianGroup,
    CayleymixError,
    InvalidArgument,
    LimitExceeded,
    NumericalError,
    Schedule,
    ball_count,
    entropy,
    entropy_directed_closed_form,
    estimate_d_alpha,
    law,
    minimal_radius,
    psi,
    reference_radius,
    sample_generators,
    solve_t0,
    tv_curve,
    walk_distribution,
)
from ._core import _run_csv
from ._core import validate as _validate

EXPERIMENTS = ("cutoff-profile", "lower-bound-audit", "typdist")


def _config_json(config):
    config = dict(config)
    if config.get("p") == float("inf"):
        config["p"] = "inf"
    return json.dumps(config)


def run_csv(experiment, **config):
    """Run an experiment and return its CSV text, json-config line included."""
    return _run_csv(experiment, _config_json(config))


def run(experiment, **config):
    """Run an experiment and return (config, rows) with rows as dicts of strings."""
    text = run_csv(experiment, **config)
    first, _, body = text.partition("\n")
    provenance = json.loads(first.removeprefix("# json-config: "))
    return provenance, list(csv.DictReader(io.StringIO(body)))


def validate(**config):
    """Built-in validation suite as a list of (name, passed, detail)."""
    return _validate(_config_json(config))

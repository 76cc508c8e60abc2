"""BIGP protocol library and deterministic network simulator."""

import json as _json

from ._core import (
    DATA,
    DEFAULT_ASN_SPLIT,
    HELLO,
    UPDATE_A,
    UPDATE_B,
    Data,
    Header,
    Hello,
    Lsa,
    PathCandidate,
    Prefix,
    RoutingError,
    ScenarioError,
    SimError,
    UpdateA,
    UpdateB,
    WireError,
    best_path,
    classify_mode,
    compute_checksum,
    decode,
    encode,
    spf,
    stamp_header,
)
from ._core import run_scenario as _run_scenario_raw

__all__ = [
    "DATA",
    "DEFAULT_ASN_SPLIT",
    "HELLO",
    "UPDATE_A",
    "UPDATE_B",
    "Data",
    "Header",
    "Hello",
    "Lsa",
    "PathCandidate",
    "Prefix",
    "RoutingError",
    "ScenarioError",
    "SimError",
    "UpdateA",
    "UpdateB",
    "WireError",
    "best_path",
    "classify_mode",
    "compute_checksum",
    "decode",
    "encode",
    "run_scenario",
    "spf",
    "stamp_header",
]


def run_scenario(text, until_s=None, seed=0, dumps=()):
    """Run a scenario document.

    Returns a dict with parsed ``metrics``, the raw ``trace`` string and a
    list of requested table ``dumps``.
    """
    raw = _run_scenario_raw(text, until_s=until_s, seed=seed, dumps=list(dumps))
    return {
        "metrics": _json.loads(raw["metrics_json"]),
        "trace": raw["trace"],
        "dumps": list(raw["dumps"]),
    }

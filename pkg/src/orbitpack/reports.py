"""Report envelopes: versioned, schema-validated, byte-reproducible JSON.

Every analysis emits one document of the form

    {"schema_version": "1", "kind": ..., "command": ..., "config": {...},
     "payload": {...}, "generated_at": ...}

where config echoes the effective (post-default) run configuration verbatim.
Serialization sorts keys and uses shortest round-trip floats, so re-running
with the same seed yields byte-identical files once the timestamp is
suppressed.
"""

from __future__ import annotations

import datetime
import importlib.resources
import json

import jsonschema
import numpy as np

SCHEMA_VERSION = "1"

KINDS = ("compat_probe", "compat_triviality", "twist_verification", "rauch_sweep",
         "spd_fixed_dim", "spd_twist_check", "boost_demo", "solve", "counterexample")


def jsonable(value):
    """Recursively convert numpy scalars/arrays so json.dumps accepts them."""
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return jsonable(value.tolist())
    if isinstance(value, (np.floating, float)):
        return float(value)
    if isinstance(value, (np.integer, int)) and not isinstance(value, bool):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


def make_report(kind: str, command: str, config: dict, payload: dict,
                timestamp: bool = True) -> dict:
    if kind not in KINDS:
        raise ValueError(f"unknown report kind {kind!r}")
    doc = {"schema_version": SCHEMA_VERSION, "kind": kind, "command": command,
           "config": jsonable(config), "payload": jsonable(payload)}
    if timestamp:
        doc["generated_at"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    validate_report(doc)
    return doc


def report_bytes(doc: dict) -> bytes:
    return (json.dumps(doc, indent=2, sort_keys=True) + "\n").encode()


def write_report(doc: dict, path) -> None:
    with open(path, "wb") as fh:
        fh.write(report_bytes(doc))


def load_schema() -> dict:
    text = importlib.resources.files("orbitpack").joinpath(
        "schemas/report.schema.json").read_text()
    return json.loads(text)


def validate_report(doc: dict) -> None:
    jsonschema.validate(doc, load_schema())

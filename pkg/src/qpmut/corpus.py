"""Loading the bundled fixture corpus."""

from __future__ import annotations

import json
import os
from pathlib import Path

from .errors import StructuralError

FIXTURE_VERSION = 1


def fixture_dir() -> Path:
    env = os.environ.get("QPMUT_FIXTURES")
    return Path(env) if env else Path(__file__).with_name("fixtures")


def load_json(name: str):
    p = Path(name)
    if not p.suffix:
        p = p.with_suffix(".json")
    if not p.is_absolute() and not p.exists():
        p = fixture_dir() / p
    try:
        with open(p, encoding="utf-8") as fh:
            doc = json.load(fh)
    except FileNotFoundError:
        raise StructuralError(f"no such file or fixture: {name}") from None
    except json.JSONDecodeError as exc:
        raise StructuralError(f"malformed JSON in {p.name}: {exc.msg} (line {exc.lineno})") from None
    return doc


def load_fixture(name: str):
    doc = load_json(name)
    if isinstance(doc, dict) and "version" in doc and doc["version"] != FIXTURE_VERSION:
        raise StructuralError(f"fixture {name} has unsupported version {doc['version']}")
    return doc

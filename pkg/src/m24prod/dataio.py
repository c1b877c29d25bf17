"""Loading and serializing the embedded data file.

The file is JSON with sorted keys; every rational is a string "p/q" (or
"p" when integral). Set ``M24PROD_DATA`` to use a different file.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

DATA_ENV = "M24PROD_DATA"
FORMAT_NAME = "m24prod-data"
FORMAT_VERSION = 1
DEFAULT_PATH = Path(__file__).with_name("data") / "m24data.json"


@dataclass(frozen=True)
class EmbeddedData:
    basis_terms: int
    bases: dict
    projections: dict
    classes: dict
    raw: dict


def data_path() -> Path:
    return Path(os.environ.get(DATA_ENV, DEFAULT_PATH))


def dumps(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True) + "\n"


def _parse(raw: dict) -> EmbeddedData:
    if raw.get("format") != FORMAT_NAME or raw.get("version") != FORMAT_VERSION:
        raise ValueError("unrecognized data file format or version")
    bases = {}
    for key, rows in raw["bases"].items():
        k, N = (int(x) for x in key.split(":"))
        bases[(k, N)] = [tuple(Fraction(x) for x in row) for row in rows]
    projections = {}
    for key, mat in raw["projections"].items():
        k, N, label = key.split(":")
        projections[(int(k), int(N), label)] = tuple(tuple(Fraction(x) for x in row)
                                                     for row in mat)
    return EmbeddedData(raw["basis_terms"], bases, projections, raw["classes"], raw)


@lru_cache(maxsize=4)
def _load(path: str) -> EmbeddedData:
    with open(path, encoding="utf-8") as fh:
        return _parse(json.load(fh))


def load() -> EmbeddedData:
    return _load(str(data_path()))

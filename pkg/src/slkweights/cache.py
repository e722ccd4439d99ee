"""On-disk JSON cache for expensive complexes.

Entries are keyed by name and code version; the stored body carries a
content hash that is verified on load, so a corrupted or stale file is
rebuilt rather than trusted.
"""
from __future__ import annotations

import json
import logging
import os
from pathlib import Path
from typing import Callable

from .polyhedra import PolyhedronError

log = logging.getLogger(__name__)

ENV_VAR = "SLKWEIGHTS_CACHE"


def cache_dir(override: str | os.PathLike | None = None) -> Path:
    if override:
        return Path(override)
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "slkweights"


def load_or_build(name: str, build: Callable[[], object], to_json: Callable[[object], dict],
                  from_json: Callable[[dict], object], directory=None, refresh: bool = False):
    path = cache_dir(directory) / f"{name}.json"
    if path.exists() and not refresh:
        try:
            with open(path) as fh:
                return from_json(json.load(fh))
        except (PolyhedronError, ValueError, KeyError) as exc:
            log.warning("discarding cache entry %s: %s", path, exc)
    obj = build()
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    with open(tmp, "w") as fh:
        json.dump(to_json(obj), fh)
    tmp.replace(path)
    return obj

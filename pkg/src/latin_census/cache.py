"""Persistent result cache: one JSON object mapping ``"Q:m:n:method"`` to a
decimal string. Writes go to a temporary file in the same directory and are
moved into place with ``os.replace``, so readers never see a torn file."""
from __future__ import annotations

import json
import os
import tempfile
import warnings
from pathlib import Path
from typing import Dict, Optional, Tuple, Union

ENV_VAR = "LATIN_CENSUS_CACHE"

Key = Tuple[str, int, int, str]


def cache_key(quantity: str, m: int, n: int, method: str) -> str:
    return f"{quantity}:{m}:{n}:{method}"


class ResultCache:
    def __init__(self, path: Union[str, os.PathLike]):
        self.path = Path(path)

    @classmethod
    def from_env(cls, path: Optional[str] = None) -> Optional["ResultCache"]:
        """The cache named by ``path``, else by ``$LATIN_CENSUS_CACHE``, else ``None``."""
        path = path or os.environ.get(ENV_VAR)
        return cls(path) if path else None

    def load(self) -> Dict[str, str]:
        try:
            text = self.path.read_text(encoding="utf-8")
        except FileNotFoundError:
            return {}
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            warnings.warn(f"ignoring corrupt cache file {self.path}: {exc}", RuntimeWarning)
            return {}
        if not isinstance(data, dict) or not all(
            isinstance(k, str) and isinstance(v, str) for k, v in data.items()
        ):
            warnings.warn(f"ignoring malformed cache file {self.path}", RuntimeWarning)
            return {}
        return data

    def get(self, quantity: str, m: int, n: int, method: str) -> Optional[str]:
        return self.load().get(cache_key(quantity, m, n, method))

    def put(self, quantity: str, m: int, n: int, method: str, value: str) -> None:
        self.update({cache_key(quantity, m, n, method): value})

    def update(self, entries: Dict[str, str]) -> None:
        if not entries:
            return
        for v in entries.values():
            if not isinstance(v, str) or not v.lstrip("-").isdigit():
                raise ValueError(f"cache values must be decimal strings, got {v!r}")
        data = self.load()
        data.update(entries)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.path.parent, prefix=self.path.name + ".", suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
                json.dump(data, fh, sort_keys=True, indent=0)
                fh.write("\n")
                fh.flush()
                os.fsync(fh.fileno())
            os.replace(tmp, self.path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

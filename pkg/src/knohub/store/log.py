"""Durable append-only record log backing each knowledge base.

One JSON record per line. Appends are fsynced before returning so an
acknowledged write survives a hard kill; on open, a torn trailing line
(the signature of a crash mid-write) is dropped and truncated away,
while corruption anywhere else is refused loudly.
"""

from __future__ import annotations

import json
import os
import threading
from pathlib import Path
from typing import Any

from ..errors import ParseError


class AppendLog:
    def __init__(self, path: str | Path) -> None:
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        self._fh = open(self.path, "a+b")
        self._records = self._load()

    def _load(self) -> list[dict[str, Any]]:
        self._fh.seek(0)
        raw_lines = self._fh.read().splitlines(keepends=True)
        records: list[dict[str, Any]] = []
        good_end = 0
        bad_at: int | None = None
        for number, line in enumerate(raw_lines, start=1):
            body = line.strip()
            parsed: dict[str, Any] | None = None
            if body:
                try:
                    parsed = json.loads(body)
                except ValueError:
                    parsed = None
            if parsed is not None and line.endswith(b"\n"):
                if bad_at is not None:
                    # Good data after a bad line is real corruption, not a torn tail.
                    raise ParseError(f"{self.path}: corrupt record at line {bad_at}")
                records.append(parsed)
                good_end += len(line)
            elif body:
                bad_at = bad_at or number
            else:
                good_end += len(line)
        if bad_at is not None:
            self._fh.truncate(good_end)
        self._fh.seek(0, os.SEEK_END)
        return records

    def replay(self) -> list[dict[str, Any]]:
        """Records present when the log was opened, in append order."""
        return list(self._records)

    def append(self, record: dict[str, Any]) -> None:
        line = json.dumps(record, separators=(",", ":"), ensure_ascii=False) + "\n"
        with self._lock:
            self._fh.write(line.encode("utf-8"))
            self._fh.flush()
            os.fsync(self._fh.fileno())

    def close(self) -> None:
        with self._lock:
            if not self._fh.closed:
                self._fh.close()

    def __enter__(self) -> "AppendLog":
        return self

    def __exit__(self, *exc: object) -> None:
        self.close()

"""Reading and writing line-delimited JSON record files.

Every on-disk exchange format of this package (documents, targets,
assertions, edges, stance results, gold labels) is one JSON object per
line.  Writers keep key order stable so repeated runs produce identical
bytes.
"""

import json
from pathlib import Path
from typing import Any, Iterable, Iterator


def read_records(path: str | Path) -> Iterator[tuple[int, dict]]:
    """Yield (line_number, record) for each non-blank line of ``path``.

    Raises json.JSONDecodeError annotated by the caller; blank lines are
    skipped.  Line numbers are 1-based.
    """
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            yield lineno, json.loads(line)


def iter_record_lines(path: str | Path) -> Iterator[tuple[int, str]]:
    """Yield raw non-blank lines with 1-based line numbers."""
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if stripped:
                yield lineno, stripped


def dumps(record: Any) -> str:
    """Serialize one record the way every writer in this package does."""
    return json.dumps(record, ensure_ascii=False, sort_keys=True)


def write_records(path: str | Path, records: Iterable[Any]) -> None:
    """Write records one per line; output is byte-stable for equal input."""
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(dumps(record))
            fh.write("\n")

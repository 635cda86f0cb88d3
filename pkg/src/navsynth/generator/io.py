"""
Dataset JSONL reading and writing.
"""

import hashlib
import json
from collections.abc import Iterable, Iterator
from pathlib import Path

from pydantic import ValidationError

from navsynth.exceptions import DatasetFormatError
from navsynth.models.records import InstructionRecord


def record_line(record: InstructionRecord) -> str:
    return record.model_dump_json() + "\n"


def write_records(records: Iterable[InstructionRecord], path: str | Path) -> str:
    """Write one record per line; returns the SHA-256 of the written bytes."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    digest = hashlib.sha256()
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for record in records:
            line = record_line(record)
            digest.update(line.encode("utf-8"))
            f.write(line)
    return digest.hexdigest()


def iter_records(path: str | Path) -> Iterator[InstructionRecord]:
    """
    Yield records of a dataset file.

    Raises:
        DatasetFormatError: a line is not a valid record
    """
    source = str(path)
    with open(path, "rb") as f:
        for line_no, data in enumerate(f, start=1):
            try:
                line = data.decode("utf-8")
            except UnicodeDecodeError as e:
                raise DatasetFormatError(
                    f"invalid UTF-8 at byte {e.start}: {e.reason}", line_no, source
                ) from e
            if not line.strip():
                continue
            try:
                yield InstructionRecord.model_validate(json.loads(line))
            except json.JSONDecodeError as e:
                raise DatasetFormatError(f"invalid JSON: {e.msg}", line_no, source) from e
            except ValidationError as e:
                first = e.errors()[0]
                field = ".".join(str(p) for p in first["loc"])
                raise DatasetFormatError(
                    f"invalid record field {field!r}: {first['msg']}", line_no, source
                ) from e


def read_records(path: str | Path) -> list[InstructionRecord]:
    return list(iter_records(path))


def file_sha256(path: str | Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()

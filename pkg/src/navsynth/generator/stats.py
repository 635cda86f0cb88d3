"""
Corpus statistics of a dataset.

Tokens are whitespace-separated after punctuation is split off; the entity
count of a record is the number of distinct landmark roles its instruction
names.
"""

import csv
import re
from collections import Counter
from collections.abc import Iterable
from pathlib import Path

from navsynth.exceptions import DatasetFormatError
from navsynth.models.records import DatasetStats, InstructionRecord


_PUNCT_RE = re.compile(r"([.,;:!?()\"])")


def tokenize(text: str) -> list[str]:
    return _PUNCT_RE.sub(r" \1 ", text).split()


def dataset_stats(records: Iterable[InstructionRecord]) -> DatasetStats:
    """
    Average token length, average entities and vocabulary of a dataset.

    Raises:
        DatasetFormatError: the dataset is empty
    """
    count = 0
    tokens = 0
    entities = 0
    vocabulary: set[str] = set()
    modes: Counter[str] = Counter()
    for record in records:
        words = tokenize(record.instruction)
        count += 1
        tokens += len(words)
        entities += len(set(record.mentioned_roles))
        vocabulary.update(w.lower() for w in words)
        modes[record.mode.value] += 1
    if count == 0:
        raise DatasetFormatError("dataset has no records")
    return DatasetStats(
        records=count,
        avg_tokens=tokens / count,
        avg_entities=entities / count,
        vocabulary_size=len(vocabulary),
        modes=dict(modes),
    )


def write_stats_csv(stats: DatasetStats, path: str | Path) -> None:
    """Write `metric,value` rows."""
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["metric", "value"])
        writer.writerows(stats.as_rows())

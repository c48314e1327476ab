"""Rating records and their append-only store.

The persisted file is one JSON record per line, append-only. The logical
view is idempotent by (subject, image, condition): a re-posted slot
overwrites its predecessor, so replaying the file always converges to the
same state.
"""

import json
import time
from dataclasses import asdict, dataclass
from typing import Optional

from .session import CONDITIONS

RATING_SCALE = (1, 2, 3, 4, 5)  # 1 Bad .. 5 Excellent


@dataclass(frozen=True)
class RatingRecord:
    subject_id: str
    image_id: str
    condition: str
    rating: int
    timestamp: float = 0.0

    def __post_init__(self):
        if not isinstance(self.rating, int) or isinstance(self.rating, bool) \
                or self.rating not in RATING_SCALE:
            raise ValueError(
                f"rating must be an integer in 1..5, got {self.rating!r}"
            )
        if self.condition not in CONDITIONS:
            raise ValueError(f"unknown condition {self.condition!r}")

    @property
    def key(self):
        return (self.subject_id, self.image_id, self.condition)


class RatingStore:
    def __init__(self, path=None, clock=time.time):
        self.path = path
        self.clock = clock
        self._by_key = {}
        if path is not None:
            try:
                with open(path, "r", encoding="utf-8") as fh:
                    for line in fh:
                        if line.strip():
                            self._absorb(record_from_json(line))
            except FileNotFoundError:
                pass

    def _absorb(self, record):
        self._by_key[record.key] = record

    def add(self, record: RatingRecord) -> RatingRecord:
        if record.timestamp == 0.0:
            record = RatingRecord(
                subject_id=record.subject_id, image_id=record.image_id,
                condition=record.condition, rating=record.rating,
                timestamp=float(self.clock()),
            )
        if self.path is not None:
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(record_to_json(record) + "\n")
        self._absorb(record)
        return record

    def __len__(self):
        return len(self._by_key)

    def records(self):
        return list(self._by_key.values())

    def for_subject(self, subject_id):
        return [r for r in self._by_key.values()
                if r.subject_id == subject_id]

    def get(self, subject_id, image_id, condition) -> Optional[RatingRecord]:
        return self._by_key.get((subject_id, image_id, condition))


def record_to_json(record):
    return json.dumps(asdict(record), separators=(",", ":"), sort_keys=True)


def record_from_json(line):
    raw = json.loads(line)
    return RatingRecord(
        subject_id=raw["subject_id"], image_id=raw["image_id"],
        condition=raw["condition"], rating=int(raw["rating"]),
        timestamp=float(raw.get("timestamp", 0.0)),
    )


def export_records(records, path):
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(record_to_json(record) + "\n")


def import_records(path):
    with open(path, "r", encoding="utf-8") as fh:
        return [record_from_json(line) for line in fh if line.strip()]

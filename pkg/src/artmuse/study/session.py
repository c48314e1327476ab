"""Blind listening-session plans.

A session shows 16 images (8 artworks + 8 photographs, 4 per
valence-arousal quadrant, so 2 per media-quadrant cell) in seeded-random
order. Every image carries three clip conditions in seeded-random order:
artworks get {matched emotion+style, matched emotion, mismatched emotion};
photographs, where style is not relevant, get a second matched-emotion
clip instead of the style one. 16 x 3 = 48 rating slots per subject.
"""

import hashlib
from dataclasses import dataclass, field

import numpy as np

from ..keywords.quadrant import QUADRANTS, quadrant_of

ARTWORK_CONDITIONS = ("matched_emotion_style", "matched_emotion",
                      "mismatched_emotion")
PHOTO_CONDITIONS = ("matched_extra", "matched_emotion", "mismatched_emotion")
CONDITIONS = ("matched_emotion_style", "matched_extra", "matched_emotion",
              "mismatched_emotion")

IMAGES_PER_CELL = 2      # per (media type x quadrant)
MIN_POOL_PER_CELL = 4    # so the random choice has real freedom
SLOTS_PER_IMAGE = 3


class PoolError(ValueError):
    """Pool cannot support a balanced session; names the deficient cell."""


@dataclass
class SessionItem:
    image_id: str
    media_type: str
    quadrant: object
    style: str = None
    conditions: tuple = ()   # the 3 conditions in presentation order


@dataclass
class SessionPlan:
    subject_id: str
    seed: int
    items: list = field(default_factory=list)

    @property
    def n_slots(self):
        return sum(len(item.conditions) for item in self.items)

    def slot_condition(self, image_id, slot_index):
        for item in self.items:
            if item.image_id == image_id:
                return item.conditions[slot_index]
        raise KeyError(image_id)


def image_id_for(path):
    """Stable opaque id for a pool image path."""
    return "img_" + hashlib.sha1(path.encode("utf-8")).hexdigest()[:12]


def pool_cells(records):
    """Group pool records into (media type, quadrant) cells.

    Records lacking a resolvable quadrant (for instance emotion labels
    outside the arousal vocabulary) are skipped.
    """
    cells = {q: {"artwork": [], "photograph": []} for q in QUADRANTS}
    for rec in records:
        valence, arousal = rec.quadrant_labels
        if valence is None or arousal is None:
            continue
        cells[quadrant_of(valence, arousal)][rec.media_type].append(rec)
    return cells


def build_session(records, subject_id, seed):
    """SessionPlan for a subject over an annotated image pool.

    Deterministic for (records order, subject_id, seed). Every
    (media x quadrant) cell must offer at least MIN_POOL_PER_CELL
    candidates; IMAGES_PER_CELL of them are drawn at random.
    """
    cells = pool_cells(records)
    for quadrant in QUADRANTS:
        for media in ("artwork", "photograph"):
            have = len(cells[quadrant][media])
            if have < MIN_POOL_PER_CELL:
                raise PoolError(
                    f"cell ({media}, {quadrant.value}) has {have} "
                    f"candidate(s); need >= {MIN_POOL_PER_CELL}"
                )
    rng = np.random.default_rng(
        _mix_seed(seed, subject_id)
    )
    chosen = []
    for quadrant in QUADRANTS:
        for media in ("artwork", "photograph"):
            group = cells[quadrant][media]
            picks = rng.choice(len(group), size=IMAGES_PER_CELL,
                               replace=False)
            for idx in picks:
                rec = group[int(idx)]
                conditions = (
                    ARTWORK_CONDITIONS if media == "artwork"
                    else PHOTO_CONDITIONS
                )
                order = rng.permutation(SLOTS_PER_IMAGE)
                chosen.append(SessionItem(
                    image_id=image_id_for(rec.path),
                    media_type=media,
                    quadrant=quadrant,
                    style=rec.style,
                    conditions=tuple(conditions[i] for i in order),
                ))
    item_order = rng.permutation(len(chosen))
    return SessionPlan(
        subject_id=subject_id, seed=seed,
        items=[chosen[int(i)] for i in item_order],
    )


def check_plan(plan):
    """Assert the balance / permutation invariants; returns the plan."""
    items = plan.items
    if len(items) != 16:
        raise ValueError(f"plan has {len(items)} items, expected 16")
    media_counts = {"artwork": 0, "photograph": 0}
    quadrant_counts = {q: 0 for q in QUADRANTS}
    for item in items:
        media_counts[item.media_type] += 1
        quadrant_counts[item.quadrant] += 1
        expected = set(
            ARTWORK_CONDITIONS if item.media_type == "artwork"
            else PHOTO_CONDITIONS
        )
        if set(item.conditions) != expected or len(item.conditions) != 3:
            raise ValueError(
                f"item {item.image_id}: conditions {item.conditions} are "
                f"not a permutation of {sorted(expected)}"
            )
    if media_counts != {"artwork": 8, "photograph": 8}:
        raise ValueError(f"media split {media_counts} != 8+8")
    if any(count != 4 for count in quadrant_counts.values()):
        raise ValueError(
            "quadrant balance "
            f"{ {q.value: c for q, c in quadrant_counts.items()} } != 4 each"
        )
    if plan.n_slots != 48:
        raise ValueError(f"{plan.n_slots} rating slots, expected 48")
    return plan


def _mix_seed(seed, subject_id):
    digest = hashlib.sha1(f"{seed}|{subject_id}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "little")

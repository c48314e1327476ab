"""Valence filtering for multi-tag artwork emotion records.

Keeps only records whose tags are purely positive or purely negative under
the configured polarity table; anything mixed, neutral-tagged or untagged
is dropped. The survivors carry a binary valence label.
"""

from dataclasses import dataclass, field

from .. import configs
from .manifest import DatasetManifest, ImageRecord


@dataclass
class FilterStats:
    kept_positive: int = 0
    kept_negative: int = 0
    dropped_mixed: int = 0
    dropped_untagged: int = 0
    unknown_tags: set = field(default_factory=set)

    @property
    def kept(self):
        return self.kept_positive + self.kept_negative


def filter_wikiart_emotions(manifest, polarity=None):
    """(filtered manifest, FilterStats).

    ``polarity`` maps tag name -> 'positive' | 'negative' | 'neutral';
    defaults to the shipped table. Tags missing from the table count as
    neutral and are reported in the stats rather than raising, because
    real exports of this dataset carry stray vocabulary.
    """
    if polarity is None:
        polarity = configs.wikiart_polarity()
    stats = FilterStats()
    kept = []
    for rec in manifest.records:
        tags = rec.emotion_tags
        if not tags:
            stats.dropped_untagged += 1
            continue
        polarities = set()
        for tag in tags:
            p = polarity.get(tag)
            if p is None:
                stats.unknown_tags.add(tag)
                p = "neutral"
            polarities.add(p)
        if polarities == {"positive"}:
            label = "positive"
            stats.kept_positive += 1
        elif polarities == {"negative"}:
            label = "negative"
            stats.kept_negative += 1
        else:
            stats.dropped_mixed += 1
            continue
        kept.append(ImageRecord(
            path=rec.path, media_type=rec.media_type,
            emotion_tags=tags, style=rec.style, valence=label,
        ))
    out = DatasetManifest(
        records=kept,
        name=f"{manifest.name}:valence-filtered" if manifest.name
        else "valence-filtered",
        source_note=manifest.source_note,
    )
    return out, stats

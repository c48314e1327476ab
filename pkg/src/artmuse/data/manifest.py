"""Dataset manifests: one image record per line, tab-separated.

    path<TAB>media_type<TAB>labels

where media_type is ``artwork`` or ``photograph`` and labels is a
``;``-joined list of ``key=value`` pairs: ``emotion=fear`` (one of the
eight training emotions), ``emotions=happiness|calm`` (free multi-tag
sets, as in WikiArt Emotions), ``style=Impressionism``, and the direct
``valence=positive`` / ``arousal=high`` annotations used by study pools.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .. import configs
from .emotions import Emotion8, regroup_arousal, regroup_valence

MEDIA_TYPES = ("artwork", "photograph")


class ManifestError(ValueError):
    """Malformed manifest content, with the offending line when known."""


@dataclass
class ImageRecord:
    path: str
    media_type: str
    emotion: Optional[Emotion8] = None
    emotion_tags: Optional[frozenset] = None
    style: Optional[str] = None
    valence: Optional[str] = None
    arousal: Optional[str] = None

    @property
    def quadrant_labels(self):
        """(valence, arousal), from direct labels or the regrouped emotion."""
        v, a = self.valence, self.arousal
        if v is None and self.emotion is not None:
            v = regroup_valence(self.emotion)
        if a is None and self.emotion is not None:
            a = regroup_arousal(self.emotion)
        return v, a


@dataclass
class DatasetManifest:
    records: list = field(default_factory=list)
    name: str = ""
    source_note: str = ""

    def __len__(self):
        return len(self.records)

    def validate(self, known_styles=None):
        if known_styles is None:
            known_styles = set(configs.style_names())
        seen = set()
        for rec in self.records:
            if rec.path in seen:
                raise ManifestError(f"duplicate path: {rec.path}")
            seen.add(rec.path)
            if rec.media_type not in MEDIA_TYPES:
                raise ManifestError(
                    f"{rec.path}: media type must be one of {MEDIA_TYPES}, "
                    f"got {rec.media_type!r}"
                )
            if rec.style is not None:
                if rec.media_type != "artwork":
                    raise ManifestError(
                        f"{rec.path}: style label on a {rec.media_type}"
                    )
                if rec.style not in known_styles:
                    raise ManifestError(
                        f"{rec.path}: unknown style {rec.style!r}"
                    )
            if rec.valence is not None and rec.valence not in (
                "positive", "negative"
            ):
                raise ManifestError(f"{rec.path}: bad valence {rec.valence!r}")
            if rec.arousal is not None and rec.arousal not in ("high", "low"):
                raise ManifestError(f"{rec.path}: bad arousal {rec.arousal!r}")
        return self


def parse_labels(text):
    out = {}
    if not text.strip():
        return out
    for pair in text.split(";"):
        if "=" not in pair:
            raise ManifestError(f"label {pair!r} is not key=value")
        key, value = pair.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def parse_manifest(text, name=""):
    records = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) not in (2, 3):
            raise ManifestError(
                f"line {lineno}: expected 2 or 3 tab-separated fields, "
                f"got {len(parts)}"
            )
        path, media_type = parts[0], parts[1]
        labels = parse_labels(parts[2]) if len(parts) == 3 else {}
        try:
            emotion = (
                Emotion8(labels["emotion"]) if "emotion" in labels else None
            )
        except ValueError as exc:
            raise ManifestError(f"line {lineno}: {exc}") from exc
        tags = (
            frozenset(
                t.strip().lower()
                for t in labels["emotions"].split("|") if t.strip()
            )
            if "emotions" in labels else None
        )
        records.append(ImageRecord(
            path=path,
            media_type=media_type,
            emotion=emotion,
            emotion_tags=tags,
            style=labels.get("style"),
            valence=labels.get("valence"),
            arousal=labels.get("arousal"),
        ))
    return DatasetManifest(records=records, name=name)


def load_manifest(path, name=None):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_manifest(fh.read(), name=name or str(path))


def format_record(rec):
    labels = []
    if rec.emotion is not None:
        labels.append(f"emotion={rec.emotion.value}")
    if rec.emotion_tags is not None:
        labels.append("emotions=" + "|".join(sorted(rec.emotion_tags)))
    if rec.style is not None:
        labels.append(f"style={rec.style}")
    if rec.valence is not None:
        labels.append(f"valence={rec.valence}")
    if rec.arousal is not None:
        labels.append(f"arousal={rec.arousal}")
    return f"{rec.path}\t{rec.media_type}\t{';'.join(labels)}"


def save_manifest(manifest, path):
    with open(path, "w", encoding="utf-8") as fh:
        for rec in manifest.records:
            fh.write(format_record(rec) + "\n")


def default_strata_key(rec):
    """Stratification label: the most specific annotation available."""
    if rec.style is not None:
        return f"style:{rec.style}"
    if rec.emotion is not None:
        return f"emotion:{rec.emotion.value}"
    v, a = rec.quadrant_labels
    if v is not None or a is not None:
        return f"va:{v}/{a}"
    return f"media:{rec.media_type}"


def split(manifest, train_fraction, seed, key=default_strata_key):
    """Deterministic stratified split into (train, test) manifests.

    Within every stratum the records are shuffled by the seed and the first
    round(fraction * n) go to train, so per-class fractions match the
    requested fraction to within one item.
    """
    if not 0.0 < train_fraction <= 1.0:
        raise ValueError(
            f"train_fraction must be in (0, 1], got {train_fraction}"
        )
    strata = {}
    for rec in manifest.records:
        strata.setdefault(key(rec), []).append(rec)
    rng = np.random.default_rng(seed)
    train_recs, test_recs = [], []
    for label in sorted(strata):
        group = strata[label]
        if train_fraction < 1.0 and len(group) < 2:
            raise ValueError(
                f"stratum {label!r} has {len(group)} item(s); "
                "need at least 2 to split"
            )
        order = rng.permutation(len(group))
        n_train = int(np.floor(train_fraction * len(group) + 0.5))
        if train_fraction < 1.0:
            n_train = min(n_train, len(group) - 1)
            n_train = max(n_train, 1)
        for i, idx in enumerate(order):
            (train_recs if i < n_train else test_recs).append(group[idx])
    mk = lambda recs, tag: DatasetManifest(
        records=recs, name=f"{manifest.name}:{tag}" if manifest.name else tag,
        source_note=manifest.source_note,
    )
    return mk(train_recs, "train"), mk(test_recs, "test")

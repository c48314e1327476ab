"""Turn an image analysis into a music-search keyword query.

Three strategies mirror the listening study's arms:

* ``matched_emotion_style`` (artworks only): emotion keyword + style
  keyword, e.g. "happy classical".
* ``matched_emotion``: the emotion keyword alone.
* ``mismatched_emotion``: an emotion keyword drawn from a different
  quadrant than the image's.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .quadrant import EmotionQuadrant, mismatch_quadrant, quadrant_of
from .tables import default_keyword_table, default_style_map

STRATEGIES = ("matched_emotion_style", "matched_emotion", "mismatched_emotion")


@dataclass
class MusicQuery:
    keywords: str
    strategy: str
    quadrant: EmotionQuadrant
    style: Optional[str] = None

    def __post_init__(self):
        if not self.keywords:
            raise ValueError("query keywords must be non-empty")


def emotion_keywords(quadrant, table=None):
    """The quadrant's ordered keyword list."""
    if table is None:
        table = default_keyword_table()
    return table.words(quadrant)


def pick_keyword(quadrant, table, rng=None, index=0):
    """Keyword from a quadrant: the index-th by default, random with rng."""
    words = emotion_keywords(quadrant, table)
    if rng is not None:
        return words[int(rng.integers(len(words)))]
    return words[min(index, len(words) - 1)]


def build_query(analysis, strategy, table=None, style_map=None, rng=None,
                keyword_index=0):
    """MusicQuery for an ImageAnalysis-like object.

    ``analysis`` needs media_type, valence, arousal and (for artworks)
    style attributes. Keyword choice within a quadrant is deterministic
    (first entry) unless ``rng`` opts into a seeded random pick; the
    mismatched strategy always consumes ``rng`` (or a fresh default) for
    its quadrant draw.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"strategy must be one of {STRATEGIES}, got {strategy!r}")
    if table is None:
        table = default_keyword_table()
    quadrant = quadrant_of(analysis.valence, analysis.arousal)

    if strategy == "matched_emotion_style":
        if analysis.media_type != "artwork":
            raise ValueError(
                "matched_emotion_style applies to artworks only; "
                f"got a {analysis.media_type}"
            )
        if not analysis.style:
            raise ValueError("artwork analysis carries no style label")
        if style_map is None:
            style_map = default_style_map()
        emotion = pick_keyword(quadrant, table, index=keyword_index)
        style_kw = style_map.keyword(analysis.style)
        return MusicQuery(
            keywords=f"{emotion} {style_kw}", strategy=strategy,
            quadrant=quadrant, style=analysis.style,
        )

    if strategy == "matched_emotion":
        emotion = pick_keyword(quadrant, table, index=keyword_index)
        return MusicQuery(keywords=emotion, strategy=strategy,
                          quadrant=quadrant)

    if rng is None:
        rng = np.random.default_rng()
    other = mismatch_quadrant(quadrant, rng)
    emotion = pick_keyword(other, table, index=keyword_index)
    return MusicQuery(keywords=emotion, strategy=strategy, quadrant=other)

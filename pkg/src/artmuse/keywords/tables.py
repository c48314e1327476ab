"""Keyword tables: emotion words per quadrant, music style per art movement."""

import json
from dataclasses import dataclass, field

from .. import configs
from .quadrant import QUADRANTS, EmotionQuadrant


@dataclass
class KeywordTable:
    """Ordered emotion keywords per quadrant; first entry is the default."""

    by_quadrant: dict = field(default_factory=dict)

    def __post_init__(self):
        seen = {}
        for q in QUADRANTS:
            words = self.by_quadrant.get(q)
            if not words:
                raise ValueError(f"quadrant {q.value} has no keywords")
            for w in words:
                if w != w.lower():
                    raise ValueError(f"keyword {w!r} must be lowercase")
                if w in seen and seen[w] is not q:
                    raise ValueError(
                        f"keyword {w!r} appears in both {seen[w].value} "
                        f"and {q.value}"
                    )
                seen[w] = q

    def words(self, quadrant):
        return list(self.by_quadrant[quadrant])


@dataclass
class StyleKeywordMap:
    """Artwork movement -> one lowercase music-style keyword.

    Movements absent from the table fall back to their lowercased name, so
    ad-hoc labels still produce a usable query token.
    """

    by_style: dict = field(default_factory=dict)

    def keyword(self, style):
        return self.by_style.get(style, style.lower())


def default_keyword_table():
    raw = configs.emotion_keywords()
    return KeywordTable(by_quadrant={
        EmotionQuadrant(code): list(words) for code, words in raw.items()
    })


def default_style_map():
    return StyleKeywordMap(by_style=dict(configs.style_keywords()))


def load_keyword_table(path):
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)["quadrants"]
    return KeywordTable(by_quadrant={
        EmotionQuadrant(code): list(words) for code, words in raw.items()
    })


def load_style_map(path):
    with open(path, "r", encoding="utf-8") as fh:
        return StyleKeywordMap(by_style=dict(json.load(fh)["styles"]))

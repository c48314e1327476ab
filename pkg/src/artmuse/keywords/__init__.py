from .quadrant import QUADRANTS, EmotionQuadrant, mismatch_quadrant, quadrant_of
from .tables import (
    KeywordTable,
    StyleKeywordMap,
    default_keyword_table,
    default_style_map,
)
from .query import STRATEGIES, MusicQuery, build_query, emotion_keywords

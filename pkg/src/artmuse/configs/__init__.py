"""Shipped configuration tables (styles, keywords, tag polarities)."""

import json
from importlib import resources


def load(name):
    with resources.files(__package__).joinpath(name).open("r") as fh:
        return json.load(fh)


def style_names():
    return load("styles_27.json")["styles"]


def style_keywords():
    return load("style_keywords.json")["styles"]


def emotion_keywords():
    return load("emotion_keywords.json")["quadrants"]


def wikiart_polarity():
    """Tag -> 'positive' | 'negative' | 'neutral'."""
    raw = load("wikiart_polarity.json")
    return {
        tag: polarity
        for polarity in ("positive", "negative", "neutral")
        for tag in raw[polarity]
    }

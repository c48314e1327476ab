"""The four valence-arousal quadrants of the circumplex plane."""

import enum

import numpy as np


class EmotionQuadrant(enum.Enum):
    PV_PA = "+V+A"
    PV_NA = "+V-A"
    NV_PA = "-V+A"
    NV_NA = "-V-A"


QUADRANTS = tuple(EmotionQuadrant)


def quadrant_of(valence, arousal):
    """Map ('positive'|'negative', 'high'|'low') to a quadrant."""
    if valence not in ("positive", "negative"):
        raise ValueError(f"valence must be positive|negative, got {valence!r}")
    if arousal not in ("high", "low"):
        raise ValueError(f"arousal must be high|low, got {arousal!r}")
    v = "+" if valence == "positive" else "-"
    a = "+" if arousal == "high" else "-"
    return EmotionQuadrant(f"{v}V{a}A")


def mismatch_quadrant(quadrant, rng=None):
    """A uniformly drawn quadrant other than ``quadrant``."""
    if rng is None:
        rng = np.random.default_rng()
    others = [q for q in QUADRANTS if q is not quadrant]
    return others[int(rng.integers(len(others)))]

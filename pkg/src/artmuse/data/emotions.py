"""The eight-emotion vocabulary and its valence/arousal regrouping.

Valence splits all eight emotions into positive and negative; arousal
covers only six, because amusement and awe images span both high and low
intensity and are dropped from arousal training.
"""

import enum


class Emotion8(enum.Enum):
    AMUSEMENT = "amusement"
    AWE = "awe"
    ANGER = "anger"
    CONTENTMENT = "contentment"
    EXCITEMENT = "excitement"
    DISGUST = "disgust"
    FEAR = "fear"
    SADNESS = "sadness"


POSITIVE_VALENCE = frozenset({
    Emotion8.AMUSEMENT, Emotion8.CONTENTMENT, Emotion8.AWE,
    Emotion8.EXCITEMENT,
})
HIGH_AROUSAL = frozenset({
    Emotion8.ANGER, Emotion8.EXCITEMENT, Emotion8.DISGUST, Emotion8.FEAR,
})
LOW_AROUSAL = frozenset({Emotion8.CONTENTMENT, Emotion8.SADNESS})
AROUSAL_EXCLUDED = frozenset({Emotion8.AMUSEMENT, Emotion8.AWE})


def regroup_valence(emotion):
    """'positive' or 'negative'."""
    emotion = Emotion8(emotion)
    return "positive" if emotion in POSITIVE_VALENCE else "negative"


def regroup_arousal(emotion):
    """'high', 'low', or None for the excluded amusement/awe pair."""
    emotion = Emotion8(emotion)
    if emotion in AROUSAL_EXCLUDED:
        return None
    return "high" if emotion in HIGH_AROUSAL else "low"

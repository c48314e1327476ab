"""The classification cascade: media gate, then per-media emotion models,
then style for artworks, assembled into one ImageAnalysis."""

import json
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from PIL import Image

from .registry import ModelRegistry


@dataclass
class ImageAnalysis:
    media_type: str
    media_confidence: float
    valence: str
    valence_confidence: float
    arousal: str
    arousal_confidence: float
    style: Optional[str] = None
    style_confidence: Optional[float] = None
    models: dict = field(default_factory=dict)

    def __post_init__(self):
        if (self.style is not None) != (self.media_type == "artwork"):
            raise ValueError(
                "style must be present exactly when media_type is artwork"
            )
        for conf in (self.media_confidence, self.valence_confidence,
                     self.arousal_confidence):
            if not 0.0 <= conf <= 1.0:
                raise ValueError(f"confidence {conf} outside [0, 1]")

    def to_line(self):
        """Single-line JSON with a fixed field order."""
        fields = {
            "media_type": self.media_type,
            "valence": self.valence,
            "arousal": self.arousal,
        }
        if self.style is not None:
            fields["style"] = self.style
        fields["confidences"] = {
            "media_type": round(self.media_confidence, 6),
            "valence": round(self.valence_confidence, 6),
            "arousal": round(self.arousal_confidence, 6),
        }
        if self.style_confidence is not None:
            fields["confidences"]["style"] = round(self.style_confidence, 6)
        fields["models"] = {k: self.models[k] for k in sorted(self.models)}
        return json.dumps(fields, separators=(",", ":"))


def preprocess(path_or_image, side=32):
    """Decode, resize to (side, side) bilinear, scale to [0, 1], RGB order.

    Grayscale files are replicated to three channels. Float arrays already
    at the target size pass through unresampled.
    """
    if isinstance(path_or_image, np.ndarray):
        arr = np.asarray(path_or_image, dtype=np.float32)
        if arr.ndim != 3 or arr.shape[2] != 3:
            raise ValueError(
                f"expected an (H, W, 3) array, got shape {arr.shape}"
            )
        if arr.shape[:2] == (side, side):
            return np.clip(arr, 0.0, 1.0)
        arr8 = np.clip(arr * 255.0 + 0.5, 0, 255).astype(np.uint8)
        pil = Image.fromarray(arr8, mode="RGB")
    else:
        try:
            with Image.open(path_or_image) as img:
                pil = img.convert("RGB")
        except FileNotFoundError:
            raise
        except Exception as exc:
            raise ValueError(
                f"cannot decode image {path_or_image}: {exc}"
            ) from exc
    if pil.size != (side, side):
        pil = pil.resize((side, side), Image.BILINEAR)
    return np.asarray(pil, dtype=np.float32) / 255.0


def _decide(scores, classes, tie_winner=None):
    """(winner, confidence) with an explicit rule for exact ties.

    Ties go to ``tie_winner`` when given, else to the lexicographically
    first tied class.
    """
    scores = np.asarray(scores, dtype=np.float64)
    best = scores.max()
    tied = [c for c, s in zip(classes, scores) if s == best]
    if len(tied) == 1:
        winner = tied[0]
    elif tie_winner is not None and tie_winner in tied:
        winner = tie_winner
    else:
        winner = sorted(tied)[0]
    return winner, float(best)


def classify_media_type(tensor, registry):
    backend = registry.slot("media_gate")
    winner, conf = _decide(backend.scores(tensor), backend.classes,
                           tie_winner="photograph")
    return winner, conf


def classify_emotion(tensor, media_type, registry):
    """((valence, conf), (arousal, conf), model names) via the media-specific
    sub-models; the two axes are decided independently."""
    prefix = "art" if media_type == "artwork" else "photo"
    v_backend = registry.slot(f"{prefix}_valence")
    a_backend = registry.slot(f"{prefix}_arousal")
    valence, v_conf = _decide(v_backend.scores(tensor), v_backend.classes,
                              tie_winner="positive")
    arousal, a_conf = _decide(a_backend.scores(tensor), a_backend.classes,
                              tie_winner="low")
    models = {"valence": v_backend.name, "arousal": a_backend.name}
    return (valence, v_conf), (arousal, a_conf), models


def classify_style(tensor, registry, media_type="artwork"):
    if media_type != "artwork":
        raise ValueError(
            f"style classification applies to artworks, got {media_type!r}"
        )
    backend = registry.slot("art_style")
    return _decide(backend.scores(tensor), backend.classes)


def analyze(path_or_image, registry: ModelRegistry, side=None):
    """Run the full cascade on an image file or float array."""
    gate = registry.slot("media_gate")
    if side is None:
        side = getattr(gate, "input_side", 32)
    tensor = preprocess(path_or_image, side=side)
    media_type, media_conf = classify_media_type(tensor, registry)
    (valence, v_conf), (arousal, a_conf), models = classify_emotion(
        tensor, media_type, registry
    )
    models["media_gate"] = gate.name
    style = style_conf = None
    if media_type == "artwork":
        style, style_conf = classify_style(tensor, registry)
        models["style"] = registry.slot("art_style").name
    return ImageAnalysis(
        media_type=media_type,
        media_confidence=media_conf,
        valence=valence,
        valence_confidence=v_conf,
        arousal=arousal,
        arousal_confidence=a_conf,
        style=style,
        style_confidence=style_conf,
        models=models,
    )

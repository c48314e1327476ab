"""Inference backends: anything that scores a preprocessed image.

The cascade only depends on this contract, so the from-scratch models and
any externally fine-tuned backbone are interchangeable behind it.
"""

from typing import Protocol, Sequence

import numpy as np

from ..nn.checkpoint import load_checkpoint
from ..nn.model import model_forward


class InferenceBackend(Protocol):
    name: str
    classes: Sequence[str]

    def scores(self, tensor) -> np.ndarray:
        """Probability per declared class for one (H, W, 3) input."""
        ...


class ModelBackend:
    """Backend over a from-scratch checkpointed model."""

    def __init__(self, model, params, classes, name="model"):
        if model.n_classes != len(classes):
            raise ValueError(
                f"backend {name}: model has {model.n_classes} outputs but "
                f"{len(classes)} class names declared"
            )
        self.model = model
        self.params = params
        self.classes = list(classes)
        self.name = name

    @classmethod
    def from_checkpoint(cls, path, classes, name=None):
        model, params = load_checkpoint(path)
        return cls(model, params, classes, name=name or str(path))

    @property
    def input_side(self):
        return self.model.input_shape[0]

    def scores(self, tensor) -> np.ndarray:
        batch = tensor[None, ...].astype(np.float32)
        probs, _ = model_forward(self.model, self.params, batch, mode="infer")
        out = probs[0]
        if not np.isfinite(out).all():
            raise ValueError(f"backend {self.name} produced non-finite scores")
        return out


class StaticBackend:
    """Fixed-score backend, handy for wiring tests."""

    def __init__(self, classes, fixed_scores, name="static"):
        self.classes = list(classes)
        self._scores = np.asarray(fixed_scores, dtype=np.float64)
        self.name = name
        if self._scores.shape != (len(self.classes),):
            raise ValueError("fixed_scores must match the class list")

    def scores(self, tensor) -> np.ndarray:
        return self._scores

"""Objective metrics: confusion matrices and accuracy."""

from dataclasses import dataclass

import numpy as np


@dataclass
class ConfusionMatrix:
    classes: list
    counts: np.ndarray  # counts[i][j] = true class i predicted as j

    @property
    def total(self):
        return int(self.counts.sum())

    @property
    def accuracy(self):
        return float(np.trace(self.counts) / self.total)

    def to_text(self):
        width = max(len(str(c)) for c in self.classes) + 2
        lines = [" " * width + "".join(f"{c:>{width}}" for c in self.classes)]
        for i, c in enumerate(self.classes):
            row = "".join(f"{int(n):>{width}}" for n in self.counts[i])
            lines.append(f"{c:>{width}}" + row)
        lines.append(f"accuracy: {self.accuracy:.4f} ({self.total} items)")
        return "\n".join(lines)


def accuracy(predictions, labels, classes=None):
    """(ConfusionMatrix, accuracy fraction) over parallel label sequences."""
    predictions = list(predictions)
    labels = list(labels)
    if not predictions:
        raise ValueError("empty input: nothing to score")
    if len(predictions) != len(labels):
        raise ValueError(
            f"{len(predictions)} predictions vs {len(labels)} labels"
        )
    if classes is None:
        classes = sorted(set(labels) | set(predictions))
    index = {c: i for i, c in enumerate(classes)}
    for value in labels + predictions:
        if value not in index:
            raise ValueError(f"label {value!r} not in class list {classes}")
    counts = np.zeros((len(classes), len(classes)), dtype=np.int64)
    for pred, true in zip(predictions, labels):
        counts[index[true], index[pred]] += 1
    matrix = ConfusionMatrix(classes=list(classes), counts=counts)
    return matrix, matrix.accuracy

"""Staged layer-unfreezing plans and early stopping."""

from dataclasses import dataclass, field


@dataclass
class FineTunePlan:
    """Ordered stages of (trainable layer-name set, epoch count).

    Stage 0 trains only the classification head; each later stage adds one
    more layer counted from the output end, so the trainable sets are
    strictly nested.
    """

    stages: list = field(default_factory=list)

    def __post_init__(self):
        prev = None
        for names, epochs in self.stages:
            if epochs < 1:
                raise ValueError("every stage needs at least one epoch")
            if prev is not None and not prev < set(names):
                raise ValueError(
                    "stage trainable sets must be strictly nested"
                )
            prev = set(names)


def make_finetune_plan(layer_names, head_epochs=2, stage_epochs=1, n_stages=5):
    """Build the unfreeze-from-the-end plan.

    ``layer_names`` is ordered input -> output; the last entry is the
    classification head and the rest are the unfreezable (convolutional)
    layers. Stage 0 trains the head alone for ``head_epochs``; stage k adds
    the k-th remaining layer from the output end for ``stage_epochs`` each.
    """
    if not layer_names:
        raise ValueError("layer_names must not be empty")
    if head_epochs < 1 or stage_epochs < 1:
        raise ValueError("epoch counts must be >= 1")
    if n_stages < 0:
        raise ValueError(f"n_stages must be >= 0, got {n_stages}")
    head = layer_names[-1]
    body = list(layer_names[:-1])
    if n_stages > len(body):
        raise ValueError(
            f"n_stages {n_stages} exceeds the {len(body)} unfreezable layers"
        )
    stages = [(frozenset([head]), head_epochs)]
    current = {head}
    for k in range(1, n_stages + 1):
        current = current | {body[-k]}
        stages.append((frozenset(current), stage_epochs))
    return FineTunePlan(stages=stages)


@dataclass
class EarlyStopState:
    """Stop after `patience` epochs without improvement beyond min_delta.

    The monitored metric is higher-is-better (validation accuracy); an
    improvement of exactly min_delta does not count (strict inequality).
    """

    patience: int
    min_delta: float = 1e-4
    best: float = float("-inf")
    since_improvement: int = 0

    def __post_init__(self):
        if self.patience < 1:
            raise ValueError(f"patience must be >= 1, got {self.patience}")


def early_stop_update(state, val_metric):
    """Record an epoch's metric; returns True to continue, False to stop."""
    if val_metric > state.best + state.min_delta:
        state.best = val_metric
        state.since_improvement = 0
    else:
        state.since_improvement += 1
    return state.since_improvement < state.patience

"""Adam optimizer over ParamSet dictionaries."""

import numpy as np

from ..nn.model import TRAINABLE_PARAMS


class AdamState:
    """First/second moment estimates per parameter plus the step counter."""

    def __init__(self, beta1=0.9, beta2=0.999, epsilon=1e-8):
        self.beta1 = beta1
        self.beta2 = beta2
        self.epsilon = epsilon
        self.t = 0
        self.m = {}
        self.v = {}

    def _slot(self, store, layer, pname, like):
        per_layer = store.setdefault(layer, {})
        if pname not in per_layer:
            per_layer[pname] = np.zeros_like(like)
        return per_layer[pname]


def adam_step(params, grads, state, lr, trainable=None):
    """One bias-corrected Adam update, in place.

    Only layers named in ``trainable`` are touched (all gradient entries
    when None); untouched parameters and their moments stay bit-identical,
    which is what the staged fine-tuning freeze contract relies on.
    """
    if lr <= 0:
        raise ValueError(f"learning rate must be positive, got {lr}")
    state.t += 1
    b1, b2 = state.beta1, state.beta2
    bias1 = 1.0 - b1 ** state.t
    bias2 = 1.0 - b2 ** state.t
    for layer, per_layer in grads.items():
        if trainable is not None and layer not in trainable:
            continue
        for pname, g in per_layer.items():
            if not np.isfinite(g).all():
                raise FloatingPointError(
                    f"non-finite gradient for {layer}.{pname}"
                )
            m = state._slot(state.m, layer, pname, g)
            v = state._slot(state.v, layer, pname, g)
            m *= b1
            m += (1.0 - b1) * g
            v *= b2
            v += (1.0 - b2) * np.square(g)
            mhat = m / bias1
            vhat = v / bias2
            params[layer][pname] -= lr * mhat / (np.sqrt(vhat) + state.epsilon)
    return params, state


def trainable_layers(model):
    """Names of layers that own trainable parameters."""
    return [
        spec.name for spec in model.layers
        if spec.kind in TRAINABLE_PARAMS and spec.trainable
    ]

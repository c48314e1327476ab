"""Finite-difference verification of the analytic backward passes."""

import numpy as np

from .model import TRAINABLE_PARAMS, loss_from_cache, model_backward, model_forward


def gradient_check(model, params, batch, labels, epsilon=1e-5,
                   samples_per_param=20, seed=0, zero_tol=1e-6):
    """Max relative error between analytic and central-difference gradients.

    Perturbs a random subset of entries (``samples_per_param`` per parameter
    tensor) of every trainable parameter and compares against the analytic
    gradient. Run this in 64-bit mode on a small model; float32 noise
    swamps the comparison otherwise.

    relative error = |analytic - numeric| / max(|analytic|, |numeric|, 1e-8)

    The numeric side Richardson-extrapolates central differences at steps
    epsilon and epsilon/2, cancelling the quadratic truncation term; the
    batch-2 batchnorm after the hidden dense layer normalizes over two
    values and its curvature makes a single-step difference quotient lose
    several digits.

    Two kinds of entries are excluded because the central difference is not
    a valid oracle there, not because the analytic side gets a pass:

    * both sides at or below ``zero_tol``: the difference of an O(1) loss
      carries ~1e-11 of float64 rounding noise at epsilon 1e-5, so such
      entries measure only the oracle's own noise (e.g. a conv bias feeding
      a batchnorm, whose gradient is structurally zero). A wrong backward
      pass still surfaces, because one side then rises above the cutoff.
    * relu kink crossings: when the two perturbed forwards disagree on any
      relu gate, the loss is piecewise in the sampled interval and the
      difference quotient measures a chord across the kink.
    """
    if epsilon <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    rng = np.random.default_rng(seed)

    _, cache = model_forward(model, params, batch, mode="train")
    base_loss = loss_from_cache(cache, labels)
    if not np.isfinite(base_loss):
        raise ValueError(f"loss is not finite ({base_loss}); cannot check")
    grads = model_backward(model, params, cache, labels)

    def probe():
        _, c = model_forward(model, params, batch, mode="train")
        masks = [lc for spec, lc in c["per_layer"] if spec.kind == "relu"]
        return loss_from_cache(c, labels), masks

    worst = 0.0
    for spec in model.layers:
        for pname in TRAINABLE_PARAMS.get(spec.kind, ()):
            arr = params[spec.name][pname]
            analytic = grads[spec.name][pname].reshape(-1)
            k = min(samples_per_param, arr.size)
            picks = rng.choice(arr.size, size=k, replace=False)
            flat = arr.reshape(-1)
            for idx in picks:
                orig = flat[idx]
                diffs = []
                all_masks = []
                for h in (epsilon, epsilon / 2.0):
                    flat[idx] = orig + h
                    plus, masks_plus = probe()
                    flat[idx] = orig - h
                    minus, masks_minus = probe()
                    diffs.append((plus - minus) / (2.0 * h))
                    all_masks += [masks_plus, masks_minus]
                flat[idx] = orig
                base = all_masks[0]
                if any(
                    not np.array_equal(m, b)
                    for masks in all_masks[1:]
                    for m, b in zip(masks, base)
                ):
                    continue
                numeric = (4.0 * diffs[1] - diffs[0]) / 3.0
                a = analytic[idx]
                if max(abs(a), abs(numeric)) <= zero_tol:
                    continue
                err = abs(a - numeric) / max(abs(a), abs(numeric), 1e-8)
                worst = max(worst, err)
    return worst

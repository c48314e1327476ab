"""The training loop: minibatch Adam with optional SGDR schedule, staged
freezing, augmentation and early stopping."""

import io
from dataclasses import dataclass, field

import numpy as np

from ..nn.model import loss_from_cache, model_backward, model_forward, predictions
from .adam import AdamState, adam_step, trainable_layers
from .finetune import EarlyStopState, early_stop_update
from .schedule import sgdr_lr


class TrainingDiverged(RuntimeError):
    def __init__(self, epoch, message):
        super().__init__(message)
        self.epoch = epoch


@dataclass
class EpochRecord:
    epoch: int
    lr: float
    train_loss: float
    train_acc: float
    val_loss: float
    val_acc: float


@dataclass
class TrainHistory:
    records: list = field(default_factory=list)

    def to_csv(self):
        buf = io.StringIO()
        buf.write("epoch,lr,train_loss,train_acc,val_loss,val_acc\n")
        for r in self.records:
            buf.write(
                f"{r.epoch},{r.lr!r},{r.train_loss!r},{r.train_acc!r},"
                f"{r.val_loss!r},{r.val_acc!r}\n"
            )
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text):
        lines = text.strip().splitlines()
        records = []
        for line in lines[1:]:
            epoch, lr, tl, ta, vl, va = line.split(",")
            records.append(EpochRecord(int(epoch), float(lr), float(tl),
                                       float(ta), float(vl), float(va)))
        return cls(records=records)


def _batch_slices(n, batch_size):
    """Contiguous slices covering n items, never leaving a singleton tail
    (train-mode batchnorm needs at least two samples)."""
    slices = [(lo, min(lo + batch_size, n)) for lo in range(0, n, batch_size)]
    if len(slices) > 1 and slices[-1][1] - slices[-1][0] == 1:
        lo, _ = slices.pop()
        slices[-1] = (slices[-1][0], n)
    return slices


def evaluate(model, params, images, labels, batch_size=64):
    """(mean loss, accuracy) in inference mode."""
    losses, hits, total = 0.0, 0, images.shape[0]
    for lo, hi in _batch_slices(total, batch_size):
        probs, cache = model_forward(model, params, images[lo:hi], mode="infer")
        losses += loss_from_cache(cache, labels[lo:hi]) * (hi - lo)
        hits += int((predictions(probs) == labels[lo:hi]).sum())
    return losses / total, hits / total


def train(model, params, train_set, val_set, schedule=None, plan=None,
          augment_config=None, *, epochs=10, batch_size=32, lr=1e-3,
          seed=0, patience=None, min_delta=1e-4):
    """Train ``params`` in place; returns (params, TrainHistory).

    ``train_set`` and ``val_set`` are (images, labels) arrays. When ``plan``
    is given its stages run in order and only the stage's layers receive
    updates; frozen batchnorm layers run in inference mode so all of their
    state stays bit-identical. ``schedule`` switches the per-step learning
    rate to SGDR cycles; otherwise the fixed ``lr`` applies. Fully
    deterministic for a given seed.
    """
    x_train, y_train = train_set
    x_val, y_val = val_set
    if x_train.shape[0] == 0 or x_val.shape[0] == 0:
        raise ValueError("train and validation sets must be non-empty")

    rng = np.random.default_rng(seed)
    state = AdamState()
    history = TrainHistory()
    all_trainable = trainable_layers(model)
    stages = (
        [(set(names), n) for names, n in plan.stages]
        if plan is not None
        else [(set(all_trainable), epochs)]
    )
    stopper = EarlyStopState(patience=patience, min_delta=min_delta) \
        if patience else None

    if augment_config is not None:
        from ..data.augment import augment_batch
    global_step = 0
    epoch = 0
    for stage_layers, stage_epochs in stages:
        frozen = frozenset(all_trainable) - stage_layers
        for _ in range(stage_epochs):
            lr_now = sgdr_lr(global_step, schedule) if schedule else lr
            order = rng.permutation(x_train.shape[0])
            xs, ys = x_train[order], y_train[order]
            if augment_config is not None:
                xs = augment_batch(xs, augment_config, rng)
            loss_sum, hit_sum = 0.0, 0
            for lo, hi in _batch_slices(xs.shape[0], batch_size):
                xb, yb = xs[lo:hi], ys[lo:hi]
                step_lr = sgdr_lr(global_step, schedule) if schedule else lr
                probs, cache = model_forward(
                    model, params, xb, mode="train", frozen=frozen
                )
                loss = loss_from_cache(cache, yb)
                if not np.isfinite(loss):
                    raise TrainingDiverged(
                        epoch, f"loss became {loss} in epoch {epoch}"
                    )
                grads = model_backward(model, params, cache, yb)
                adam_step(params, grads, state, step_lr,
                          trainable=stage_layers)
                for name, (mean, var) in cache["running"].items():
                    params[name]["running_mean"] = mean
                    params[name]["running_var"] = var
                loss_sum += loss * (hi - lo)
                hit_sum += int((predictions(probs) == yb).sum())
                global_step += 1
            val_loss, val_acc = evaluate(model, params, x_val, y_val)
            history.records.append(EpochRecord(
                epoch=epoch,
                lr=lr_now,
                train_loss=loss_sum / xs.shape[0],
                train_acc=hit_sum / xs.shape[0],
                val_loss=val_loss,
                val_acc=val_acc,
            ))
            epoch += 1
            if stopper and not early_stop_update(stopper, val_acc):
                return params, history
    return params, history

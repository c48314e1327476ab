"""Model descriptions and whole-network forward/backward passes.

A model is an ordered list of :class:`LayerSpec` entries drawn from a fixed
vocabulary (conv2d, batchnorm, relu, flatten, dense, softmax). Parameters
live outside the specs in a ParamSet: a dict mapping layer name -> param
name -> numpy array. Keeping specs, params and passes separate makes the
passes pure functions, which the gradient checker and the trainer both rely
on.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import layers
from .layers import ShapeError

# ParamSet: dict[layer name, dict[param name, np.ndarray]]
ParamSet = dict

TRAINABLE_PARAMS = {
    "conv2d": ("w", "b"),
    "dense": ("w", "b"),
    "batchnorm": ("gamma", "beta"),
}


@dataclass
class LayerSpec:
    kind: str
    name: str
    filters: Optional[int] = None   # conv2d
    kernel: Optional[int] = None    # conv2d, square kernels only
    stride: int = 1                 # conv2d
    units: Optional[int] = None     # dense
    trainable: bool = True

    def __post_init__(self):
        if self.kind == "conv2d":
            if not self.filters or self.filters < 1:
                raise ValueError(f"layer {self.name}: filters must be >= 1")
            if not self.kernel or self.kernel < 1:
                raise ValueError(f"layer {self.name}: kernel must be >= 1")
            if self.stride < 1:
                raise ValueError(f"layer {self.name}: stride must be >= 1")
        elif self.kind == "dense":
            if not self.units or self.units < 1:
                raise ValueError(f"layer {self.name}: units must be >= 1")
        elif self.kind not in ("batchnorm", "relu", "flatten", "softmax"):
            raise ValueError(f"layer {self.name}: unknown kind {self.kind!r}")


@dataclass
class ModelSpec:
    layers: list = field(default_factory=list)
    input_shape: tuple = ()
    n_classes: int = 2

    def __post_init__(self):
        names = [l.name for l in self.layers]
        if len(names) != len(set(names)):
            raise ValueError("layer names must be unique within a model")
        if self.layers and self.layers[-1].kind != "softmax":
            raise ValueError("last layer must be softmax")
        infer_shapes(self)  # validates the chain end to end

    def layer(self, name):
        for spec in self.layers:
            if spec.name == name:
                return spec
        raise KeyError(name)


def infer_shapes(model):
    """Per-layer output shapes (excluding batch), validating the chain."""
    shape = tuple(model.input_shape)
    out = {}
    for spec in model.layers:
        if spec.kind == "conv2d":
            if len(shape) != 3:
                raise ShapeError(
                    f"layer {spec.name}: conv2d needs (H, W, C) input, "
                    f"got {shape}"
                )
            h, _, _ = layers._same_padding(shape[0], spec.kernel, spec.stride)
            w, _, _ = layers._same_padding(shape[1], spec.kernel, spec.stride)
            shape = (h, w, spec.filters)
        elif spec.kind == "flatten":
            shape = (int(np.prod(shape)),)
        elif spec.kind == "dense":
            if len(shape) != 1:
                raise ShapeError(
                    f"layer {spec.name}: dense needs flat input, got {shape}"
                )
            shape = (spec.units,)
        # batchnorm, relu and softmax preserve shape
        out[spec.name] = shape
    if model.layers and shape != (model.n_classes,):
        raise ShapeError(
            f"model output shape {shape} does not match n_classes "
            f"{model.n_classes}"
        )
    return out


def build_baseline_model(input_shape, n_classes):
    """The four-conv baseline: 32/64/128/256 3x3 filters, strides 1,2,2,2,
    batchnorm + relu after every weighted layer, a 512-unit hidden dense
    layer and an n-way softmax head.

    Requires a square input with side >= 16 so the three stride-2 stages
    stay well-formed.
    """
    if len(input_shape) != 3:
        raise ValueError(f"input_shape must be (H, W, C), got {input_shape}")
    h, w, _ = input_shape
    if h != w:
        raise ValueError(f"baseline model needs a square input, got {h}x{w}")
    if h < 16:
        raise ValueError(
            f"input side {h} too small for three stride-2 reductions "
            "(minimum 16)"
        )
    specs = []
    for i, (filters, stride) in enumerate(
        [(32, 1), (64, 2), (128, 2), (256, 2)], start=1
    ):
        specs.append(LayerSpec("conv2d", f"conv{i}", filters=filters,
                               kernel=3, stride=stride))
        specs.append(LayerSpec("batchnorm", f"bn{i}"))
        specs.append(LayerSpec("relu", f"relu{i}"))
    specs.append(LayerSpec("flatten", "flatten"))
    specs.append(LayerSpec("dense", "fc1", units=512))
    specs.append(LayerSpec("batchnorm", "bn_fc1"))
    specs.append(LayerSpec("relu", "relu_fc1"))
    specs.append(LayerSpec("dense", "head", units=n_classes))
    specs.append(LayerSpec("softmax", "softmax"))
    return ModelSpec(layers=specs, input_shape=tuple(input_shape),
                     n_classes=n_classes)


def param_shapes(model):
    """Expected parameter shapes per layer, keyed like a ParamSet."""
    per_layer_out = infer_shapes(model)
    shapes = {}
    shape = tuple(model.input_shape)
    for spec in model.layers:
        if spec.kind == "conv2d":
            shapes[spec.name] = {
                "w": (spec.kernel, spec.kernel, shape[2], spec.filters),
                "b": (spec.filters,),
            }
        elif spec.kind == "dense":
            shapes[spec.name] = {
                "w": (shape[0], spec.units),
                "b": (spec.units,),
            }
        elif spec.kind == "batchnorm":
            c = shape[-1]
            shapes[spec.name] = {
                "gamma": (c,), "beta": (c,),
                "running_mean": (c,), "running_var": (c,),
            }
        shape = per_layer_out[spec.name]
    return shapes


def init_params(model, seed=0, dtype=np.float32):
    """Fan-in-scaled uniform (He-style) init with a seedable generator."""
    rng = np.random.default_rng(seed)
    params = {}
    for name, per_layer in param_shapes(model).items():
        params[name] = {}
        for pname, shape in per_layer.items():
            if pname == "w":
                # (kh, kw, c_in, f) and (in, out) both have fan_in as the
                # product of all but the last axis
                fan_in = int(np.prod(shape[:-1]))
                limit = np.sqrt(6.0 / fan_in)
                arr = rng.uniform(-limit, limit, size=shape)
            elif pname in ("gamma", "running_var"):
                arr = np.ones(shape)
            else:  # b, beta, running_mean
                arr = np.zeros(shape)
            params[name][pname] = arr.astype(dtype)
    return params


def check_params(model, params):
    """Validate a ParamSet against the model; raises ShapeError on mismatch."""
    for name, per_layer in param_shapes(model).items():
        if name not in params:
            raise ShapeError(f"missing parameters for layer {name}")
        for pname, shape in per_layer.items():
            arr = params[name].get(pname)
            if arr is None:
                raise ShapeError(f"layer {name}: missing parameter {pname}")
            if tuple(arr.shape) != shape:
                raise ShapeError(
                    f"layer {name}.{pname}: shape {tuple(arr.shape)} != "
                    f"expected {shape}"
                )
        if "running_var" in per_layer and not (
            params[name]["running_var"] > 0
        ).all():
            raise ValueError(
                f"layer {name}: running_var must be strictly positive"
            )


def model_forward(model, params, batch, mode="infer", frozen=()):
    """Run the network; returns (probs, cache).

    The cache holds everything backward needs plus, in train mode, the
    updated batchnorm running stats under cache["running"] — the trainer
    decides whether to commit those. Layers named in ``frozen`` run their
    batchnorm in infer mode so their state never drifts while frozen.
    """
    if tuple(batch.shape[1:]) != tuple(model.input_shape):
        raise ShapeError(
            f"batch shape {tuple(batch.shape[1:])} does not match model "
            f"input {tuple(model.input_shape)}"
        )
    x = batch
    per_layer = []
    running = {}
    probs = None
    for spec in model.layers:
        if spec.kind == "conv2d":
            p = params[spec.name]
            x, cache = layers.conv2d_forward(
                x, p["w"], p["b"], stride=(spec.stride, spec.stride)
            )
        elif spec.kind == "batchnorm":
            p = params[spec.name]
            bn_mode = "infer" if spec.name in frozen else mode
            x, cache, new_mean, new_var = layers.batchnorm_forward(
                x, p["gamma"], p["beta"],
                p["running_mean"], p["running_var"], bn_mode,
            )
            if bn_mode == "train":
                running[spec.name] = (new_mean, new_var)
        elif spec.kind == "relu":
            x, cache = layers.relu_forward(x)
        elif spec.kind == "flatten":
            x, cache = layers.flatten_forward(x)
        elif spec.kind == "dense":
            p = params[spec.name]
            x, cache = layers.dense_forward(x, p["w"], p["b"])
        else:  # softmax
            probs = layers.softmax(x)
            cache = None
        per_layer.append((spec, cache))
    cache = {"per_layer": per_layer, "logits": x, "probs": probs,
             "running": running}
    return probs, cache


def model_backward(model, params, cache, labels):
    """Gradient ParamSet congruent with ``params`` (trainable entries only).

    Differentiates the mean softmax cross-entropy of the cached forward pass
    against integer ``labels``.
    """
    probs = cache["probs"]
    n = probs.shape[0]
    labels = np.asarray(labels)
    grad = probs.copy()
    grad[np.arange(n), labels] -= 1.0
    grad /= n

    grads = {}
    dx = grad
    for spec, layer_cache in reversed(cache["per_layer"]):
        if spec.kind == "softmax":
            continue  # folded into the cross-entropy gradient above
        if spec.kind == "conv2d":
            dx, dw, db = layers.conv2d_backward(dx, layer_cache)
            grads[spec.name] = {"w": dw, "b": db}
        elif spec.kind == "batchnorm":
            dx, dgamma, dbeta = layers.batchnorm_backward(dx, layer_cache)
            grads[spec.name] = {"gamma": dgamma, "beta": dbeta}
        elif spec.kind == "relu":
            dx = layers.relu_backward(dx, layer_cache)
        elif spec.kind == "flatten":
            dx = layers.flatten_backward(dx, layer_cache)
        elif spec.kind == "dense":
            dx, dw, db = layers.dense_backward(dx, layer_cache)
            grads[spec.name] = {"w": dw, "b": db}
    return grads


def loss_from_cache(cache, labels):
    """Mean NLL of the cached forward pass, matching model_backward."""
    probs = cache["probs"]
    labels = np.asarray(labels)
    return float(-np.log(probs[np.arange(probs.shape[0]), labels]).mean())


def predictions(probs):
    return probs.argmax(axis=1)

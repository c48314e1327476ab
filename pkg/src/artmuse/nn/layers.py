"""Forward and backward passes for the fixed layer vocabulary.

All layers are pure functions over numpy arrays in NHWC layout
(batch, height, width, channels) or (batch, features) for dense inputs.
Each ``*_forward`` returns ``(out, cache)`` and the matching ``*_backward``
consumes the cache, so no layer keeps hidden state between calls.
"""

import numpy as np

BN_EPS = 1e-5
BN_MOMENTUM = 0.9


class ShapeError(ValueError):
    """Raised when tensor shapes do not chain, naming the offending dimension."""


def _same_padding(size, kernel, stride):
    """Padding (before, after) for one spatial axis under 'same' rules.

    Output size is ceil(size / stride). When the total padding is odd the
    extra row/column goes *before* the image, so a delta kernel at stride s
    samples the input at exact multiples of s.
    """
    out = -(-size // stride)
    total = max((out - 1) * stride + kernel - size, 0)
    before = total - total // 2
    return out, before, total - before


def conv2d_forward(x, w, b, stride=(1, 1), padding="same"):
    """2-D convolution (cross-correlation) with 'same' padding.

    Args:
        x: input, shape (N, H, W, C_in)
        w: filters, shape (kh, kw, C_in, C_out)
        b: bias, shape (C_out,)
        stride: (sh, sw)

    Returns:
        (out, cache) with out of shape (N, ceil(H/sh), ceil(W/sw), C_out).
    """
    if x.ndim != 4:
        raise ShapeError(f"conv2d expects rank-4 input, got shape {x.shape}")
    if w.ndim != 4:
        raise ShapeError(f"conv2d expects rank-4 weights, got shape {w.shape}")
    if padding != "same":
        raise ValueError(f"unsupported padding mode {padding!r}")
    kh, kw, c_in, c_out = w.shape
    if x.shape[3] != c_in:
        raise ShapeError(
            f"input channels {x.shape[3]} do not match weight C_in {c_in}"
        )
    if b.shape != (c_out,):
        raise ShapeError(f"bias shape {b.shape} does not match C_out {c_out}")
    sh, sw = stride
    if sh < 1 or sw < 1:
        raise ValueError(f"stride must be positive, got {stride}")

    n, h, wd, _ = x.shape
    out_h, pad_top, pad_bot = _same_padding(h, kh, sh)
    out_w, pad_left, pad_right = _same_padding(wd, kw, sw)
    x_pad = np.pad(
        x, ((0, 0), (pad_top, pad_bot), (pad_left, pad_right), (0, 0))
    )

    cols = _im2col(x_pad, kh, kw, sh, sw, out_h, out_w)
    out = cols @ w.reshape(-1, c_out) + b
    out = out.reshape(n, out_h, out_w, c_out)
    cache = (x.shape, x_pad.shape, cols, w, (sh, sw), (pad_top, pad_left))
    return out, cache


def _im2col(x_pad, kh, kw, sh, sw, out_h, out_w):
    """Gather conv patches into a (N*out_h*out_w, kh*kw*C) matrix."""
    n, _, _, c = x_pad.shape
    s0, s1, s2, s3 = x_pad.strides
    view = np.lib.stride_tricks.as_strided(
        x_pad,
        shape=(n, out_h, out_w, kh, kw, c),
        strides=(s0, sh * s1, sw * s2, s1, s2, s3),
        writeable=False,
    )
    return view.reshape(n * out_h * out_w, kh * kw * c)


def conv2d_backward(dout, cache):
    """Gradients of conv2d w.r.t. input, weights and bias.

    dout has the forward output's shape; returns (dx, dw, db).
    """
    x_shape, pad_shape, cols, w, (sh, sw), (pad_top, pad_left) = cache
    kh, kw, c_in, c_out = w.shape
    n, out_h, out_w, _ = dout.shape
    dout_flat = dout.reshape(-1, c_out)

    db = dout_flat.sum(axis=0)
    dw = (cols.T @ dout_flat).reshape(w.shape)

    dcols = (dout_flat @ w.reshape(-1, c_out).T).reshape(
        n, out_h, out_w, kh, kw, c_in
    )
    dx_pad = np.zeros(pad_shape, dtype=dout.dtype)
    for a in range(kh):
        rows = slice(a, a + sh * (out_h - 1) + 1, sh)
        for c in range(kw):
            cols_sl = slice(c, c + sw * (out_w - 1) + 1, sw)
            dx_pad[:, rows, cols_sl, :] += dcols[:, :, :, a, c, :]
    h, wd = x_shape[1], x_shape[2]
    dx = dx_pad[:, pad_top : pad_top + h, pad_left : pad_left + wd, :]
    return dx, dw, db


def batchnorm_forward(x, gamma, beta, running_mean, running_var, mode,
                      eps=BN_EPS, momentum=BN_MOMENTUM):
    """Batch normalization over all axes except the last (channel/feature).

    Train mode normalizes with batch statistics and returns updated running
    stats; infer mode normalizes with the supplied running stats. The caller
    owns committing the returned running stats back into its parameter set.

    Returns:
        (out, cache, new_running_mean, new_running_var)
    """
    if mode not in ("train", "infer"):
        raise ValueError(f"unknown batchnorm mode {mode!r}")
    if mode == "train":
        if x.shape[0] < 2:
            raise ValueError(
                "batchnorm train mode needs batch size >= 2 "
                f"(got {x.shape[0]}): variance undefined"
            )
        axes = tuple(range(x.ndim - 1))
        mean = x.mean(axis=axes)
        var = x.var(axis=axes)
        new_mean = momentum * running_mean + (1.0 - momentum) * mean
        new_var = momentum * running_var + (1.0 - momentum) * var
    else:
        mean, var = running_mean, running_var
        new_mean, new_var = running_mean, running_var
    inv_std = 1.0 / np.sqrt(var + eps)
    xhat = (x - mean) * inv_std
    out = gamma * xhat + beta
    cache = (xhat, gamma, inv_std, mode)
    return out, cache, new_mean, new_var


def batchnorm_backward(dout, cache):
    """Gradients of batchnorm: returns (dx, dgamma, dbeta).

    In infer mode the running stats are constants, so dx is a plain scale.
    """
    xhat, gamma, inv_std, mode = cache
    axes = tuple(range(dout.ndim - 1))
    dgamma = (dout * xhat).sum(axis=axes)
    dbeta = dout.sum(axis=axes)
    if mode == "infer":
        dx = dout * gamma * inv_std
        return dx, dgamma, dbeta
    dxhat = dout * gamma
    # the two mean terms fold the dmean/dvar chain into one expression
    dx = inv_std * (
        dxhat
        - dxhat.mean(axis=axes)
        - xhat * (dxhat * xhat).mean(axis=axes)
    )
    return dx, dgamma, dbeta


def relu_forward(x):
    out = np.maximum(x, 0)
    return out, (x > 0)


def relu_backward(dout, cache):
    return dout * cache


def flatten_forward(x):
    return x.reshape(x.shape[0], -1), x.shape


def flatten_backward(dout, cache):
    return dout.reshape(cache)


def dense_forward(x, w, b):
    """Affine map x @ w + b for rank-2 input (batch, features)."""
    if x.ndim != 2:
        raise ShapeError(f"dense expects rank-2 input, got shape {x.shape}")
    if x.shape[1] != w.shape[0]:
        raise ShapeError(
            f"dense inner dimensions do not match: input features "
            f"{x.shape[1]} vs weight rows {w.shape[0]}"
        )
    return x @ w + b, (x, w)


def dense_backward(dout, cache):
    x, w = cache
    dx = dout @ w.T
    dw = x.T @ dout
    db = dout.sum(axis=0)
    return dx, dw, db


def softmax(logits):
    """Row-wise softmax, stabilized by max subtraction."""
    shifted = logits - logits.max(axis=1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=1, keepdims=True)


def softmax_cross_entropy(logits, labels):
    """Mean negative log-likelihood and its gradient w.r.t. the logits.

    Args:
        logits: (N, C) scores
        labels: (N,) integer class indices in [0, C)

    Returns:
        (loss, grad) with grad = (softmax - onehot) / N.
    """
    labels = np.asarray(labels)
    n, c = logits.shape
    if labels.shape != (n,):
        raise ShapeError(
            f"labels shape {labels.shape} does not match batch size {n}"
        )
    if labels.min(initial=0) < 0 or labels.max(initial=0) >= c:
        raise ValueError(
            f"label out of range [0, {c}): got {labels.min()}..{labels.max()}"
        )
    probs = softmax(logits)
    loss = -np.log(probs[np.arange(n), labels]).mean()
    grad = probs.copy()
    grad[np.arange(n), labels] -= 1.0
    grad /= n
    return loss, grad

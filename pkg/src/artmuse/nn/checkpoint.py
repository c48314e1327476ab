"""Binary checkpoint format.

Layout (all integers little-endian):

    magic "MBNN" | u32 format version | u32 model-json length | model json
    u32 entry count, then per entry:
        u16 layer-name length | layer name (utf-8)
        u16 param-name length | param name (utf-8)
        u8 ndim | ndim x u32 dims
        dims-product x f32 values (little-endian)

Parameters are stored as float32, so the round trip is bit-exact for the
float32 ParamSets that training produces.
"""

import json
import struct

import numpy as np

from .model import LayerSpec, ModelSpec, check_params

MAGIC = b"MBNN"
VERSION = 1


class CheckpointError(ValueError):
    """Malformed checkpoint file."""


class CheckpointVersionError(CheckpointError):
    """Checkpoint written by an incompatible format version."""


def save_checkpoint(model, params, path):
    check_params(model, params)
    model_json = json.dumps(_model_to_dict(model)).encode("utf-8")
    chunks = [MAGIC, struct.pack("<I", VERSION),
              struct.pack("<I", len(model_json)), model_json]
    entries = [
        (spec.name, pname, params[spec.name][pname])
        for spec in model.layers
        if spec.name in params
        for pname in sorted(params[spec.name])
    ]
    chunks.append(struct.pack("<I", len(entries)))
    for layer_name, pname, arr in entries:
        lname = layer_name.encode("utf-8")
        pn = pname.encode("utf-8")
        arr32 = np.ascontiguousarray(arr, dtype="<f4")
        chunks.append(struct.pack("<H", len(lname)) + lname)
        chunks.append(struct.pack("<H", len(pn)) + pn)
        chunks.append(struct.pack("<B", arr32.ndim))
        chunks.append(struct.pack(f"<{arr32.ndim}I", *arr32.shape))
        chunks.append(arr32.tobytes())
    with open(path, "wb") as fh:
        fh.write(b"".join(chunks))


def load_checkpoint(path):
    """Read a checkpoint; returns (model, params) or raises CheckpointError."""
    with open(path, "rb") as fh:
        buf = fh.read()
    reader = _Reader(buf)
    if reader.take(4) != MAGIC:
        raise CheckpointError(f"{path}: bad magic, not a checkpoint file")
    (version,) = struct.unpack("<I", reader.take(4))
    if version != VERSION:
        raise CheckpointVersionError(
            f"{path}: format version {version}, expected {VERSION}"
        )
    (json_len,) = struct.unpack("<I", reader.take(4))
    try:
        model = _model_from_dict(json.loads(reader.take(json_len)))
    except (ValueError, KeyError, TypeError) as exc:
        raise CheckpointError(f"{path}: bad model description: {exc}") from exc
    (n_entries,) = struct.unpack("<I", reader.take(4))
    params = {}
    for _ in range(n_entries):
        (lname_len,) = struct.unpack("<H", reader.take(2))
        layer_name = reader.take(lname_len).decode("utf-8")
        (pname_len,) = struct.unpack("<H", reader.take(2))
        pname = reader.take(pname_len).decode("utf-8")
        (ndim,) = struct.unpack("<B", reader.take(1))
        shape = struct.unpack(f"<{ndim}I", reader.take(4 * ndim))
        count = int(np.prod(shape)) if ndim else 1
        data = reader.take(4 * count)
        arr = np.frombuffer(data, dtype="<f4").reshape(shape).copy()
        params.setdefault(layer_name, {})[pname] = arr
    if reader.remaining():
        raise CheckpointError(f"{path}: {reader.remaining()} trailing bytes")
    try:
        check_params(model, params)
    except ValueError as exc:
        raise CheckpointError(f"{path}: inconsistent parameters: {exc}") from exc
    return model, params


class _Reader:
    def __init__(self, buf):
        self.buf = buf
        self.pos = 0

    def take(self, n):
        if self.pos + n > len(self.buf):
            raise CheckpointError(
                f"truncated checkpoint: wanted {n} bytes at offset "
                f"{self.pos}, file has {len(self.buf)}"
            )
        out = self.buf[self.pos : self.pos + n]
        self.pos += n
        return out

    def remaining(self):
        return len(self.buf) - self.pos


def _model_to_dict(model):
    return {
        "input_shape": list(model.input_shape),
        "n_classes": model.n_classes,
        "layers": [
            {
                "kind": s.kind, "name": s.name, "filters": s.filters,
                "kernel": s.kernel, "stride": s.stride, "units": s.units,
                "trainable": s.trainable,
            }
            for s in model.layers
        ],
    }


def _model_from_dict(d):
    return ModelSpec(
        layers=[LayerSpec(**entry) for entry in d["layers"]],
        input_shape=tuple(d["input_shape"]),
        n_classes=d["n_classes"],
    )

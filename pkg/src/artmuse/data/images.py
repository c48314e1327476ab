"""Image file helpers: float [0,1] arrays <-> PNG/PPM files on disk."""

import os

import numpy as np
from PIL import Image

from .manifest import DatasetManifest, ImageRecord, save_manifest


def save_png(image, path):
    """Write an (H, W, 3) float [0,1] array as an 8-bit PNG."""
    arr = np.clip(np.asarray(image) * 255.0 + 0.5, 0, 255).astype(np.uint8)
    Image.fromarray(arr, mode="RGB").save(path)


def load_image(path):
    """Read an image file into an (H, W, 3) float32 [0,1] array.

    Grayscale inputs are replicated to three channels.
    """
    try:
        with Image.open(path) as img:
            rgb = img.convert("RGB")
            return np.asarray(rgb, dtype=np.float32) / 255.0
    except FileNotFoundError:
        raise
    except Exception as exc:
        raise ValueError(f"cannot decode image {path}: {exc}") from exc


SYNTH_LABELS = {
    # kind -> (media type, label key) written into the manifest
    "color": ("photograph", "valence"),
    "geometry": ("artwork", "arousal"),
    "media": (None, None),          # the class *is* the media type
    "texture3": ("artwork", "style"),
}


def save_synth_set(synth, out_dir):
    """Write a SynthSet as PNGs plus a manifest; returns the manifest."""
    os.makedirs(out_dir, exist_ok=True)
    media_type, label_key = SYNTH_LABELS[synth.kind]
    records = []
    for i, (image, label) in enumerate(zip(synth.images, synth.labels)):
        cls = synth.class_names[label]
        fname = f"{synth.kind}_{i:04d}_{cls.replace(' ', '_')}.png"
        path = os.path.join(out_dir, fname)
        save_png(image, path)
        fields = {"path": fname,
                  "media_type": cls if media_type is None else media_type}
        if label_key is not None:
            fields[label_key] = cls
        records.append(ImageRecord(**fields))
    manifest = DatasetManifest(records=records, name=f"synth-{synth.kind}")
    save_manifest(manifest, os.path.join(out_dir, "manifest.tsv"))
    return manifest

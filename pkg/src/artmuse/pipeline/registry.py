"""The six-slot model registry feeding the cascade."""

import json
import os
from dataclasses import dataclass
from typing import Optional

from .backend import ModelBackend

SLOTS = ("media_gate", "photo_valence", "photo_arousal",
         "art_valence", "art_arousal", "art_style")

EXPECTED_CLASSES = {
    "media_gate": {"artwork", "photograph"},
    "photo_valence": {"negative", "positive"},
    "art_valence": {"negative", "positive"},
    "photo_arousal": {"high", "low"},
    "art_arousal": {"high", "low"},
}


class RegistryError(ValueError):
    pass


@dataclass
class ModelRegistry:
    media_gate: Optional[object] = None
    photo_valence: Optional[object] = None
    photo_arousal: Optional[object] = None
    art_valence: Optional[object] = None
    art_arousal: Optional[object] = None
    art_style: Optional[object] = None

    def slot(self, name):
        if name not in SLOTS:
            raise RegistryError(f"unknown slot {name!r}")
        backend = getattr(self, name)
        if backend is None:
            raise RegistryError(f"no backend loaded for slot {name!r}")
        return backend

    def validate(self, require_style_catalog=False):
        """Check class lists per slot.

        Emotion slots must be exactly binary with the canonical names; the
        style slot needs >= 2 classes (the production catalog has 27, but
        toy fixtures legitimately carry fewer). Set require_style_catalog
        to insist on the full 27.
        """
        for name, expected in EXPECTED_CLASSES.items():
            backend = getattr(self, name)
            if backend is not None and set(backend.classes) != expected:
                raise RegistryError(
                    f"slot {name}: classes {sorted(backend.classes)} != "
                    f"expected {sorted(expected)}"
                )
        style = self.art_style
        if style is not None:
            if len(style.classes) < 2:
                raise RegistryError("slot art_style needs >= 2 classes")
            if require_style_catalog and len(style.classes) != 27:
                raise RegistryError(
                    f"slot art_style: {len(style.classes)} classes, "
                    "expected the 27-way catalog"
                )
        return self


def load_registry(models_dir):
    """Registry from a directory holding registry.json plus checkpoints.

    registry.json: {"<slot>": {"checkpoint": "<file>", "classes": [...]}}
    """
    index_path = os.path.join(models_dir, "registry.json")
    try:
        with open(index_path, "r", encoding="utf-8") as fh:
            index = json.load(fh)
    except FileNotFoundError:
        raise RegistryError(f"no registry.json in {models_dir}")
    except json.JSONDecodeError as exc:
        raise RegistryError(f"{index_path}: {exc}") from exc
    registry = ModelRegistry()
    for slot, entry in index.items():
        if slot not in SLOTS:
            raise RegistryError(f"{index_path}: unknown slot {slot!r}")
        backend = ModelBackend.from_checkpoint(
            os.path.join(models_dir, entry["checkpoint"]),
            classes=entry["classes"],
            name=f"{slot}:{entry['checkpoint']}",
        )
        setattr(registry, slot, backend)
    return registry.validate()


def save_registry_index(models_dir, entries):
    """Write registry.json; entries maps slot -> (checkpoint file, classes)."""
    index = {
        slot: {"checkpoint": fname, "classes": list(classes)}
        for slot, (fname, classes) in entries.items()
    }
    with open(os.path.join(models_dir, "registry.json"), "w",
              encoding="utf-8") as fh:
        json.dump(index, fh, indent=2)
        fh.write("\n")

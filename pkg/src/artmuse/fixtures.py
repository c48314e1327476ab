"""Desk-scale fixture bundles: trained toy models, images, catalogs and
study pools, generated deterministically from a seed.

Everything here is small enough to build inside a test run; the same
functions back the ``artmuse fixtures`` command.
"""

import os

import numpy as np

from . import configs
from .data.images import save_manifest, save_png
from .data.manifest import DatasetManifest, ImageRecord
from .data.synth import make_synthetic_desk_sets
from .keywords.tables import default_keyword_table
from .nn.checkpoint import save_checkpoint
from .nn.model import build_baseline_model, init_params
from .pipeline.registry import save_registry_index
from .provider.catalog import Track, save_catalog
from .training.loop import evaluate, train

FIXTURE_SIZE = 16
TOY_STYLES = ("checker", "dots", "stripes")


def train_fixture_model(kind, seed, size=FIXTURE_SIZE, n=120, epochs=12,
                        train_fraction=0.8):
    """Train a toy classifier on one synthetic set.

    Returns (model, params, class_names, held-out accuracy). The split is
    the deterministic head/tail of the already-shuffled set.
    """
    synth = make_synthetic_desk_sets(kind, n, seed, size=size)
    n_train = int(train_fraction * n)
    x_train, y_train = synth.images[:n_train], synth.labels[:n_train]
    x_test, y_test = synth.images[n_train:], synth.labels[n_train:]
    model = build_baseline_model((size, size, 3), len(synth.class_names))
    params = init_params(model, seed=seed)
    params, _ = train(model, params, (x_train, y_train), (x_test, y_test),
                      epochs=epochs, batch_size=16, lr=1e-3, seed=seed)
    _, heldout = evaluate(model, params, x_test, y_test)
    return model, params, synth.class_names, heldout


def build_fixture_models(models_dir, seed=0, size=FIXTURE_SIZE, n=120,
                         epochs=12):
    """Train and checkpoint the cascade's slots; returns held-out accuracies.

    The valence model (bright vs dark palettes) serves both the photograph
    and artwork valence slots, likewise for arousal; at desk scale there is
    no separate corpus per media type.
    """
    os.makedirs(models_dir, exist_ok=True)
    accuracies = {}
    trained = {}
    for kind, fname in [("media", "media_gate.mbnn"),
                        ("color", "valence.mbnn"),
                        ("geometry", "arousal.mbnn"),
                        ("texture3", "style3.mbnn")]:
        model, params, classes, acc = train_fixture_model(
            kind, seed=seed, size=size, n=n, epochs=epochs
        )
        save_checkpoint(model, params, os.path.join(models_dir, fname))
        trained[kind] = (fname, classes)
        accuracies[kind] = acc
    entries = {
        "media_gate": trained["media"],
        "photo_valence": trained["color"],
        "art_valence": trained["color"],
        "photo_arousal": trained["geometry"],
        "art_arousal": trained["geometry"],
        "art_style": trained["texture3"],
    }
    save_registry_index(models_dir, entries)
    return accuracies


def make_fixture_images(images_dir, seed=0, n=10, size=FIXTURE_SIZE):
    """PNG inputs for end-to-end classify/recommend runs: a mix of the
    painterly and photo-like families. Returns the file paths."""
    os.makedirs(images_dir, exist_ok=True)
    synth = make_synthetic_desk_sets("media", max(n, 20), seed, size=size)
    paths = []
    for i in range(n):
        cls = synth.class_names[synth.labels[i]]
        path = os.path.join(images_dir, f"input_{i:03d}_{cls}.png")
        save_png(synth.images[i], path)
        paths.append(path)
    return paths


def build_fixture_catalog(path=None, clip_ready=True):
    """Tracks covering the default keyword vocabulary.

    One plain track per emotion keyword plus one per (emotion keyword,
    style keyword) pair, over both the music-style vocabulary and the toy
    texture styles. Durations stay above the 15 s clip minimum when
    ``clip_ready``.
    """
    table = default_keyword_table()
    emotions = [w for q in table.by_quadrant for w in table.by_quadrant[q]]
    styles = sorted(set(configs.style_keywords().values())) + list(TOY_STYLES)
    base = 90 if clip_ready else 20
    tracks = []
    for i, emotion in enumerate(emotions):
        tracks.append(Track(
            id=f"t-{emotion}", title=f"{emotion.title()} Tune",
            artist="Fixture Ensemble", tags=frozenset({emotion}),
            duration_s=base + i,
        ))
        for j, style in enumerate(styles):
            tracks.append(Track(
                id=f"t-{emotion}-{style}",
                title=f"{emotion.title()} {style.title()} Piece",
                artist="Fixture Ensemble",
                tags=frozenset({emotion, style}),
                duration_s=base + 10 + i + j,
            ))
    if path is not None:
        save_catalog(tracks, path)
    return tracks


POOL_STYLES = ("Baroque", "Impressionism", "Cubism", "Romanticism")


def make_study_pool(pool_dir, seed=0, per_cell=4, size=FIXTURE_SIZE):
    """Annotated image pool for listening sessions.

    per_cell images for every (media type x quadrant) cell, with artwork
    styles cycling through a few real movements. Writes PNGs plus
    manifest.tsv; returns the manifest.
    """
    os.makedirs(pool_dir, exist_ok=True)
    rng = np.random.default_rng(seed)
    synth_art = make_synthetic_desk_sets("media", 8 * per_cell * 2, seed,
                                         size=size)
    art_images = synth_art.images[synth_art.labels == 0]
    photo_images = synth_art.images[synth_art.labels == 1]
    records = []
    styles = iter(POOL_STYLES * (per_cell * 4))
    counters = {"artwork": 0, "photograph": 0}
    for valence in ("positive", "negative"):
        for arousal in ("high", "low"):
            for media in ("artwork", "photograph"):
                source = art_images if media == "artwork" else photo_images
                for _ in range(per_cell):
                    i = counters[media]
                    counters[media] += 1
                    fname = f"{media}_{valence[:3]}_{arousal}_{i:03d}.png"
                    save_png(source[i % len(source)], os.path.join(pool_dir,
                                                                   fname))
                    records.append(ImageRecord(
                        path=fname, media_type=media,
                        valence=valence, arousal=arousal,
                        style=next(styles) if media == "artwork" else None,
                    ))
    rng.shuffle(records)
    manifest = DatasetManifest(records=records, name="study-pool")
    save_manifest(manifest, os.path.join(pool_dir, "manifest.tsv"))
    return manifest


def build_fixture_bundle(out_dir, seed=0, epochs=12):
    """models/ + images/ + pool/ + catalog.json under out_dir."""
    models_dir = os.path.join(out_dir, "models")
    images_dir = os.path.join(out_dir, "images")
    pool_dir = os.path.join(out_dir, "pool")
    accuracies = build_fixture_models(models_dir, seed=seed, epochs=epochs)
    make_fixture_images(images_dir, seed=seed)
    make_study_pool(pool_dir, seed=seed)
    build_fixture_catalog(os.path.join(out_dir, "catalog.json"))
    return accuracies

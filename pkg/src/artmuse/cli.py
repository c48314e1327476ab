"""Command-line entry points."""

import json
import os
import sys

import click
import numpy as np

from .data.images import save_synth_set
from .data.manifest import load_manifest, save_manifest
from .data.manifest import split as split_manifest
from .data.synth import KINDS, make_synthetic_desk_sets
from .keywords.query import build_query
from .keywords.tables import (
    default_keyword_table,
    default_style_map,
    load_keyword_table,
    load_style_map,
)
from .pipeline.analyze import analyze
from .pipeline.registry import load_registry
from .provider.catalog import load_catalog
from .provider.search import mock_search
from .study.metrics import accuracy as compute_accuracy
from .study.mos import mos, study_t_tests, t_tests_to_text
from .study.ratings import RatingStore, import_records
from .study.service import create_study_app
from .study.session import image_id_for


@click.group()
def main():
    """Image-suited music recommendation toolkit."""


# ---------------------------------------------------------------- data


@main.group()
def data():
    """Dataset manifests and synthetic desk sets."""


@data.command("validate")
@click.argument("manifest_path", type=click.Path(exists=True))
def data_validate(manifest_path):
    manifest = load_manifest(manifest_path)
    manifest.validate()
    click.echo(f"ok: {len(manifest)} records")


@data.command("split")
@click.argument("manifest_path", type=click.Path(exists=True))
@click.option("--fraction", type=float, default=0.8, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--train-out", type=click.Path(), default=None,
              help="defaults to <manifest>.train")
@click.option("--test-out", type=click.Path(), default=None,
              help="defaults to <manifest>.test")
def data_split(manifest_path, fraction, seed, train_out, test_out):
    manifest = load_manifest(manifest_path)
    train, test = split_manifest(manifest, fraction, seed)
    train_out = train_out or manifest_path + ".train"
    test_out = test_out or manifest_path + ".test"
    save_manifest(train, train_out)
    save_manifest(test, test_out)
    click.echo(f"train: {len(train)} -> {train_out}")
    click.echo(f"test:  {len(test)} -> {test_out}")


@data.command("synth")
@click.option("--kind", type=click.Choice(KINDS), required=True)
@click.option("--n", type=int, default=100, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--size", type=int, default=32, show_default=True)
@click.option("--out", type=click.Path(), required=True)
def data_synth(kind, n, seed, size, out):
    synth = make_synthetic_desk_sets(kind, n, seed, size=size)
    save_synth_set(synth, out)
    click.echo(f"wrote {n} {kind} images + manifest.tsv to {out}")


# ------------------------------------------------------- classification


STRATEGY_ALIASES = {
    "matched": "matched",          # emotion+style for artworks, emotion alone
    "emotion-only": "matched_emotion",
    "mismatched": "mismatched_emotion",
}


def _keyword_tables(keywords_path, styles_path):
    table = (load_keyword_table(keywords_path) if keywords_path
             else default_keyword_table())
    style_map = (load_style_map(styles_path) if styles_path
                 else default_style_map())
    return table, style_map


@main.command("classify")
@click.argument("image", type=click.Path(exists=True))
@click.option("--models", "models_dir", type=click.Path(exists=True),
              required=True)
def classify_cmd(image, models_dir):
    """Run the cascade on IMAGE; prints one structured line."""
    registry = load_registry(models_dir)
    click.echo(analyze(image, registry).to_line())


@main.command("recommend")
@click.argument("image", type=click.Path(exists=True))
@click.option("--models", "models_dir", type=click.Path(exists=True),
              required=True)
@click.option("--strategy", type=click.Choice(sorted(STRATEGY_ALIASES)),
              default="matched", show_default=True)
@click.option("--catalog", "catalog_path", type=click.Path(exists=True),
              default=None, help="also search this catalog for tracks")
@click.option("--limit", type=int, default=10, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True,
              help="rng seed for the mismatched-quadrant draw")
@click.option("--keywords-config", type=click.Path(exists=True), default=None)
@click.option("--styles-config", type=click.Path(exists=True), default=None)
def recommend_cmd(image, models_dir, strategy, catalog_path, limit, seed,
                  keywords_config, styles_config):
    """Classify IMAGE and print the music query (plus tracks if a catalog
    is given) as one structured line."""
    registry = load_registry(models_dir)
    analysis = analyze(image, registry)
    table, style_map = _keyword_tables(keywords_config, styles_config)
    resolved = STRATEGY_ALIASES[strategy]
    if resolved == "matched":
        resolved = ("matched_emotion_style"
                    if analysis.media_type == "artwork"
                    else "matched_emotion")
    rng = np.random.default_rng(seed) \
        if resolved == "mismatched_emotion" else None
    query = build_query(analysis, resolved, table, style_map, rng=rng)
    out = {
        "image": image,
        "media_type": analysis.media_type,
        "strategy": query.strategy,
        "query": query.keywords,
        "quadrant": query.quadrant.value,
    }
    if analysis.style is not None:
        out["style"] = analysis.style
    if catalog_path is not None:
        catalog = load_catalog(catalog_path)
        playlist = mock_search(query, catalog, limit=limit)
        out["tracks"] = [t.id for t in playlist.tracks]
    click.echo(json.dumps(out, separators=(",", ":")))


# ------------------------------------------------------------- provider


@main.command("serve-provider")
@click.option("--catalog", "catalog_path", type=click.Path(exists=True),
              required=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8800, show_default=True)
def serve_provider(catalog_path, host, port):
    """Serve the mock streaming provider over HTTP."""
    import uvicorn

    from .provider.service import create_provider_app

    app = create_provider_app(load_catalog(catalog_path))
    uvicorn.run(app, host=host, port=port, log_level="warning")


# ----------------------------------------------------------------- eval


@main.group("eval")
def eval_group():
    """Objective metrics."""


@eval_group.command("accuracy")
@click.option("--pred", "pred_path", type=click.Path(exists=True),
              required=True, help="one predicted class per line")
@click.option("--labels", "labels_path", type=click.Path(exists=True),
              required=True, help="one true class per line")
def eval_accuracy(pred_path, labels_path):
    with open(pred_path) as fh:
        preds = [line.strip() for line in fh if line.strip()]
    with open(labels_path) as fh:
        labels = [line.strip() for line in fh if line.strip()]
    matrix, _ = compute_accuracy(preds, labels)
    click.echo(matrix.to_text())


# ---------------------------------------------------------------- study


@main.group()
def study():
    """Blind listening-study service and reports."""


@study.command("serve")
@click.option("--images", "images_dir", type=click.Path(exists=True),
              required=True, help="pool dir containing manifest.tsv")
@click.option("--catalog", "catalog_path", type=click.Path(exists=True),
              required=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8801, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--ratings", "ratings_path", type=click.Path(), default=None,
              help="defaults to <images>/ratings.jsonl")
def study_serve(images_dir, catalog_path, host, port, seed, ratings_path):
    import uvicorn

    manifest = load_manifest(os.path.join(images_dir, "manifest.tsv"))
    catalog = load_catalog(catalog_path)
    ratings_path = ratings_path or os.path.join(images_dir, "ratings.jsonl")
    store = RatingStore(path=ratings_path)
    app = create_study_app(manifest.records, images_dir, catalog, store,
                           seed=seed)
    uvicorn.run(app, host=host, port=port, log_level="warning")


@study.command("report")
@click.option("--ratings", "ratings_path", type=click.Path(exists=True),
              required=True)
@click.option("--manifest", "manifest_path", type=click.Path(exists=True),
              required=True, help="pool manifest mapping images to media")
@click.option("--csv-out", type=click.Path(), default=None)
def study_report(ratings_path, manifest_path, csv_out):
    records = import_records(ratings_path)
    # idempotent view: the last record per slot wins
    by_key = {r.key: r for r in records}
    records = list(by_key.values())
    manifest = load_manifest(manifest_path)
    media_of = {
        image_id_for(rec.path): rec.media_type for rec in manifest.records
    }
    missing = {r.image_id for r in records} - set(media_of)
    if missing:
        click.echo(f"error: {len(missing)} rated image id(s) not in the "
                   f"manifest", err=True)
        sys.exit(1)
    click.echo(f"{len(records)} rating records")
    report = mos(records, media_of)
    click.echo(report.to_text())
    tests = study_t_tests(records, media_of)
    if tests:
        click.echo(t_tests_to_text(tests))
    if csv_out:
        with open(csv_out, "w", encoding="utf-8") as fh:
            fh.write(report.to_csv())
        click.echo(f"wrote {csv_out}")


# ------------------------------------------------------------- fixtures


@main.command("fixtures")
@click.option("--out", "out_dir", type=click.Path(), required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--epochs", type=int, default=12, show_default=True)
def fixtures_cmd(out_dir, seed, epochs):
    """Build a full desk-scale fixture bundle (models, images, pool,
    catalog) for demos and end-to-end runs."""
    from .fixtures import build_fixture_bundle

    accuracies = build_fixture_bundle(out_dir, seed=seed, epochs=epochs)
    for kind, acc in accuracies.items():
        click.echo(f"{kind}: held-out accuracy {acc:.3f}")
    click.echo(f"bundle written to {out_dir}")


if __name__ == "__main__":
    main()

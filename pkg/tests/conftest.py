import dataclasses

import pytest

from artmuse.fixtures import build_fixture_bundle


@dataclasses.dataclass
class FixtureBundle:
    root: str
    models_dir: str
    images_dir: str
    pool_dir: str
    catalog_path: str
    accuracies: dict


@pytest.fixture(scope="session")
def bundle(tmp_path_factory):
    """One trained desk-scale fixture bundle shared by the whole run."""
    root = tmp_path_factory.mktemp("fixture-bundle")
    accuracies = build_fixture_bundle(str(root), seed=0)
    return FixtureBundle(
        root=str(root),
        models_dir=str(root / "models"),
        images_dir=str(root / "images"),
        pool_dir=str(root / "pool"),
        catalog_path=str(root / "catalog.json"),
        accuracies=accuracies,
    )

"""Training-time augmentation: horizontal flip, zoom, rotation.

All transforms preserve the image shape. Zoom and rotation resample with
bilinear interpolation around the image center and replicate edge pixels
into uncovered regions.
"""

from dataclasses import dataclass

import numpy as np
from scipy import ndimage


@dataclass
class AugmentConfig:
    flip_prob: float = 0.5
    zoom_range: tuple = (0.9, 1.1)
    rotation_deg: float = 15.0
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.flip_prob <= 1.0:
            raise ValueError(f"flip_prob must be in [0, 1], got {self.flip_prob}")
        lo, hi = self.zoom_range
        if not lo <= 1.0 <= hi:
            raise ValueError(f"zoom_range must contain 1.0, got {self.zoom_range}")
        if self.rotation_deg < 0:
            raise ValueError(
                f"rotation_deg is a symmetric half-range and must be >= 0, "
                f"got {self.rotation_deg}"
            )

    @classmethod
    def identity(cls):
        return cls(flip_prob=0.0, zoom_range=(1.0, 1.0), rotation_deg=0.0)


def _centered_affine(image, matrix):
    h, w = image.shape[:2]
    center = np.array([(h - 1) / 2.0, (w - 1) / 2.0])
    offset = center - matrix @ center
    out = np.empty_like(image)
    for c in range(image.shape[2]):
        out[:, :, c] = ndimage.affine_transform(
            image[:, :, c], matrix, offset=offset, order=1, mode="nearest"
        )
    return out


def zoom(image, factor):
    if factor == 1.0:
        return image.copy()
    return _centered_affine(image, np.diag([1.0 / factor, 1.0 / factor]))


def rotate(image, degrees):
    if degrees == 0.0:
        return image.copy()
    theta = np.deg2rad(degrees)
    c, s = np.cos(theta), np.sin(theta)
    return _centered_affine(image, np.array([[c, -s], [s, c]]))


def hflip(image):
    return image[:, ::-1, :].copy()


def augment(image, config, rng):
    """One augmented copy of an (H, W, C) image; shape is preserved."""
    out = image
    if rng.random() < config.flip_prob:
        out = hflip(out)
    lo, hi = config.zoom_range
    if (lo, hi) != (1.0, 1.0):
        out = zoom(out, float(rng.uniform(lo, hi)))
    if config.rotation_deg > 0:
        out = rotate(out, float(rng.uniform(-config.rotation_deg,
                                            config.rotation_deg)))
    return out if out is not image else image.copy()


def augment_batch(images, config, rng):
    return np.stack([augment(img, config, rng) for img in images])

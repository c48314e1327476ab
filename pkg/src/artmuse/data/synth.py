"""Synthetic desk-scale image sets.

Four families, each built so a small convnet can learn the class from the
perceptual cue the class encodes:

* ``color``: bright warm palettes vs dark gray ones (valence proxy). The
  palette ranges force every bright image's mean luminance above every dark
  image's.
* ``geometry``: ragged random stroke fields vs evenly spaced circles or
  squares (arousal proxy) at matched overall brightness.
* ``media``: painterly stroke textures vs smooth photo-like gradients
  (artwork / photograph gate proxy).
* ``texture3``: stripes, checker and dot families (style proxy).
"""

from dataclasses import dataclass

import numpy as np

LUMA = np.array([0.299, 0.587, 0.114])

KINDS = ("color", "geometry", "media", "texture3")


@dataclass
class SynthSet:
    kind: str
    images: np.ndarray          # (n, size, size, 3) float32 in [0, 1]
    labels: np.ndarray          # (n,) int
    class_names: tuple

    def class_mean_luminance(self, label):
        sel = self.images[self.labels == label]
        return float((sel * LUMA).sum(axis=-1).mean())


def make_synthetic_desk_sets(kind, n, seed, size=32):
    """Build one labeled set; deterministic for a given (kind, n, seed)."""
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    if n < 20:
        raise ValueError(f"need n >= 20, got {n}")
    rng = np.random.default_rng(seed)
    makers = {
        "color": (("negative", "positive"), (_dark_image, _bright_image)),
        "geometry": (("high", "low"), (_ragged_image, _regular_image)),
        "media": (("artwork", "photograph"), (_painterly_image, _photo_image)),
        "texture3": (("checker", "dots", "stripes"),
                     (_checker_image, _dots_image, _stripes_image)),
    }
    class_names, renderers = makers[kind]
    k = len(class_names)
    counts = [n // k + (1 if i < n % k else 0) for i in range(k)]
    images, labels = [], []
    for label, (count, render) in enumerate(zip(counts, renderers)):
        for _ in range(count):
            images.append(render(rng, size))
        labels += [label] * count
    order = rng.permutation(n)
    images = np.stack(images).astype(np.float32)[order]
    labels = np.array(labels, dtype=np.int64)[order]
    return SynthSet(kind=kind, images=np.clip(images, 0.0, 1.0),
                    labels=labels, class_names=class_names)


def _noise(rng, size, scale):
    return rng.normal(0.0, scale, size=(size, size, 1))


def _fill(color, size):
    return np.ones((size, size, 3)) * np.asarray(color)


def _bright_image(rng, size):
    base = [rng.uniform(0.75, 0.95), rng.uniform(0.45, 0.8),
            rng.uniform(0.05, 0.35)]
    img = _fill(base, size) + _noise(rng, size, 0.04)
    for _ in range(rng.integers(2, 5)):
        _blob(rng, img, [rng.uniform(0.8, 1.0), rng.uniform(0.5, 0.9),
                         rng.uniform(0.0, 0.3)])
    return img


def _dark_image(rng, size):
    gray = rng.uniform(0.08, 0.3)
    base = [gray, gray * rng.uniform(0.9, 1.1), gray * rng.uniform(0.9, 1.2)]
    img = _fill(base, size) + _noise(rng, size, 0.04)
    for _ in range(rng.integers(2, 5)):
        g = rng.uniform(0.02, 0.35)
        _blob(rng, img, [g, g, min(1.0, g * rng.uniform(1.0, 1.3))])
    return img


def _blob(rng, img, color):
    size = img.shape[0]
    h = int(rng.integers(size // 8, size // 2))
    w = int(rng.integers(size // 8, size // 2))
    r = int(rng.integers(0, size - h))
    c = int(rng.integers(0, size - w))
    img[r : r + h, c : c + w, :] = color


def _ragged_image(rng, size):
    img = _fill([0.55, 0.55, 0.55], size) + _noise(rng, size, 0.02)
    for _ in range(int(rng.integers(8, 14))):
        r, c = rng.uniform(0, size - 1, size=2)
        theta = rng.uniform(0, 2 * np.pi)
        length = rng.uniform(size * 0.3, size * 1.2)
        shade = rng.uniform(0.0, 0.25)
        for t in np.linspace(0.0, length, int(length * 2)):
            y = int(round(r + t * np.sin(theta)))
            x = int(round(c + t * np.cos(theta)))
            if 0 <= y < size and 0 <= x < size:
                img[y, x, :] = shade
    return img


def _regular_image(rng, size):
    img = _fill([0.62, 0.62, 0.62], size) + _noise(rng, size, 0.02)
    step = int(rng.integers(max(4, size // 6), max(5, size // 3)))
    radius = max(1, step // 3)
    shade = rng.uniform(0.0, 0.25)
    use_squares = rng.random() < 0.5
    offset = step // 2
    yy, xx = np.mgrid[0:size, 0:size]
    for cy in range(offset, size, step):
        for cx in range(offset, size, step):
            if use_squares:
                mask = (abs(yy - cy) <= radius) & (abs(xx - cx) <= radius)
            else:
                mask = (yy - cy) ** 2 + (xx - cx) ** 2 <= radius ** 2
            img[mask] = shade
    return img


def _painterly_image(rng, size):
    base = rng.uniform(0.2, 0.8, size=3)
    img = _fill(base, size)
    for _ in range(int(rng.integers(15, 25))):
        color = np.clip(base + rng.uniform(-0.5, 0.5, size=3), 0, 1)
        r = int(rng.integers(0, size))
        c = int(rng.integers(0, size))
        h = int(rng.integers(1, 3))
        w = int(rng.integers(3, max(4, size // 3)))
        img[r : r + h, c : c + w, :] = color
    return img + _noise(rng, size, 0.06)


def _photo_image(rng, size):
    # smooth two-color gradient, like sky over ground
    top = rng.uniform(0.3, 0.9, size=3)
    bottom = rng.uniform(0.1, 0.7, size=3)
    t = np.linspace(0.0, 1.0, size)[:, None, None]
    img = top * (1 - t) + bottom * t
    horizon = int(rng.integers(size // 3, 2 * size // 3))
    img[horizon:, :, :] *= rng.uniform(0.7, 1.0)
    return img + _noise(rng, size, 0.01)


def _stripes_image(rng, size):
    a = rng.uniform(0.0, 0.4, size=3)
    b = rng.uniform(0.6, 1.0, size=3)
    period = int(rng.integers(3, 6))
    theta = rng.choice([0.0, np.pi / 4, np.pi / 2])
    yy, xx = np.mgrid[0:size, 0:size]
    phase = ((yy * np.sin(theta) + xx * np.cos(theta)) // period) % 2
    return np.where(phase[..., None] > 0, b, a) + _noise(rng, size, 0.02)


def _checker_image(rng, size):
    a = rng.uniform(0.0, 0.4, size=3)
    b = rng.uniform(0.6, 1.0, size=3)
    cell = int(rng.integers(2, 5))
    yy, xx = np.mgrid[0:size, 0:size]
    parity = ((yy // cell) + (xx // cell)) % 2
    return np.where(parity[..., None] > 0, b, a) + _noise(rng, size, 0.02)


def _dots_image(rng, size):
    a = rng.uniform(0.0, 0.4, size=3)
    b = rng.uniform(0.6, 1.0, size=3)
    step = int(rng.integers(5, 8))
    radius = 1
    yy, xx = np.mgrid[0:size, 0:size]
    img = _fill(a, size)
    for cy in range(step // 2, size, step):
        for cx in range(step // 2, size, step):
            mask = (yy - cy) ** 2 + (xx - cx) ** 2 <= radius ** 2
            img[mask] = b
    return img + _noise(rng, size, 0.02)

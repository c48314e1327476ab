"""Track catalog: the mock streaming provider's backing data."""

import json
from dataclasses import dataclass, field
from typing import Optional


class CatalogError(ValueError):
    """Malformed catalog file, reporting the offending entry."""


@dataclass(frozen=True)
class Track:
    id: str
    title: str
    artist: str
    tags: frozenset
    duration_s: float
    audio_ref: Optional[str] = None

    def to_dict(self):
        return {
            "id": self.id,
            "title": self.title,
            "artist": self.artist,
            "tags": sorted(self.tags),
            "duration_s": self.duration_s,
        }


@dataclass
class Playlist:
    tracks: list = field(default_factory=list)
    query: Optional[object] = None

    def __post_init__(self):
        ids = [t.id for t in self.tracks]
        if len(ids) != len(set(ids)):
            raise ValueError("playlist contains duplicate track ids")

    def __len__(self):
        return len(self.tracks)


def track_from_dict(entry, where=""):
    try:
        duration = float(entry["duration_s"])
        if duration <= 0:
            raise CatalogError(f"{where}: duration_s must be > 0")
        return Track(
            id=str(entry["id"]),
            title=str(entry.get("title", "")),
            artist=str(entry.get("artist", "")),
            tags=frozenset(str(t).lower() for t in entry.get("tags", [])),
            duration_s=duration,
            audio_ref=entry.get("audio_ref"),
        )
    except KeyError as exc:
        raise CatalogError(f"{where}: missing field {exc}") from exc
    except (TypeError, ValueError) as exc:
        if isinstance(exc, CatalogError):
            raise
        raise CatalogError(f"{where}: {exc}") from exc


def load_catalog(path):
    """List of tracks from a JSON array file; ids must be unique."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise CatalogError(
                f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}"
            ) from exc
    if not isinstance(raw, list):
        raise CatalogError(f"{path}: catalog must be a JSON array of tracks")
    tracks = [
        track_from_dict(entry, where=f"{path}[{i}]")
        for i, entry in enumerate(raw)
    ]
    seen = set()
    for t in tracks:
        if t.id in seen:
            raise CatalogError(f"{path}: duplicate track id {t.id!r}")
        seen.add(t.id)
    return tracks


def save_catalog(tracks, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump([t.to_dict() for t in tracks], fh, indent=2)
        fh.write("\n")

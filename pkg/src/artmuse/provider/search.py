"""Provider search contract and the deterministic mock implementation."""

from typing import Protocol

from .catalog import Playlist

DEFAULT_LIMIT = 10


class SearchProvider(Protocol):
    """Anything that resolves a MusicQuery into a Playlist."""

    def search(self, query, limit=DEFAULT_LIMIT) -> Playlist: ...


class ProviderTransportError(RuntimeError):
    """The provider could not be reached (distinct from empty results)."""


def query_tokens(query):
    keywords = query.keywords if hasattr(query, "keywords") else str(query)
    return [t for t in keywords.lower().split() if t]


def mock_search(query, catalog, limit=DEFAULT_LIMIT):
    """Rank catalog tracks by tag overlap with the query tokens.

    score = |tokens ∩ tags|; tracks scoring 0 never appear; ties break by
    ascending id, so the ordering is total and the result is a pure
    function of (query, catalog, limit).
    """
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    tokens = set(query_tokens(query))
    scored = [
        (len(tokens & track.tags), track)
        for track in catalog
    ]
    ranked = sorted(
        (item for item in scored if item[0] >= 1),
        key=lambda item: (-item[0], item[1].id),
    )
    return Playlist(tracks=[t for _, t in ranked[:limit]], query=query)


class MockProvider:
    """In-process SearchProvider over a fixed catalog."""

    def __init__(self, catalog):
        self.catalog = list(catalog)
        self.by_id = {t.id: t for t in self.catalog}

    def search(self, query, limit=DEFAULT_LIMIT):
        return mock_search(query, self.catalog, limit=limit)

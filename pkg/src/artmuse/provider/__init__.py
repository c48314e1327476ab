from .catalog import CatalogError, Playlist, Track, load_catalog, save_catalog
from .search import (
    DEFAULT_LIMIT,
    MockProvider,
    ProviderTransportError,
    SearchProvider,
    mock_search,
)
from .clip import CLIP_SECONDS, Clip, clip_wav_bytes, pick_clip
from .service import create_provider_app

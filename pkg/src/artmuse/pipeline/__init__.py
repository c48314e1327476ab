from .backend import InferenceBackend, ModelBackend, StaticBackend
from .registry import (
    SLOTS,
    ModelRegistry,
    RegistryError,
    load_registry,
    save_registry_index,
)
from .analyze import (
    ImageAnalysis,
    analyze,
    classify_emotion,
    classify_media_type,
    classify_style,
    preprocess,
)

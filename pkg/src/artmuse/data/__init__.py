from .emotions import (
    AROUSAL_EXCLUDED,
    Emotion8,
    regroup_arousal,
    regroup_valence,
)
from .manifest import (
    DatasetManifest,
    ImageRecord,
    ManifestError,
    format_record,
    load_manifest,
    parse_manifest,
    save_manifest,
    split,
)
from .wikiart import FilterStats, filter_wikiart_emotions
from .augment import AugmentConfig, augment, augment_batch, hflip, rotate, zoom
from .synth import KINDS, SynthSet, make_synthetic_desk_sets
from .images import load_image, save_png, save_synth_set

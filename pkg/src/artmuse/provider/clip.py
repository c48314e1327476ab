"""15-second playback clips and the stub tones that stand in for audio."""

import hashlib
import io
import math
import struct
import wave
from dataclasses import dataclass

import numpy as np

CLIP_SECONDS = 15
TONE_RATE = 8000  # Hz; low-fi is plenty for a placeholder asset


@dataclass(frozen=True)
class Clip:
    track_id: str
    offset_s: int
    length_s: int = CLIP_SECONDS

    def __post_init__(self):
        if self.offset_s < 0:
            raise ValueError("clip offset must be >= 0")


def pick_clip(track, seed):
    """Seeded uniform 15-second clip within the track."""
    if track.duration_s < CLIP_SECONDS:
        raise ValueError(
            f"track {track.id} is {track.duration_s}s long; clips need "
            f"at least {CLIP_SECONDS}s"
        )
    rng = np.random.default_rng(seed)
    max_offset = int(track.duration_s - CLIP_SECONDS)
    offset = int(rng.integers(0, max_offset + 1))
    return Clip(track_id=track.id, offset_s=offset)


def tone_frequency(track_id):
    """Stable per-track pitch in 220..880 Hz from a hash of the id."""
    digest = hashlib.sha1(track_id.encode("utf-8")).digest()
    return 220.0 + (struct.unpack("<I", digest[:4])[0] % 661)


def clip_wav_bytes(clip):
    """Mono 16-bit WAV of the clip: a steady tone whose pitch encodes the
    track and whose tremolo phase encodes the offset, so distinct clips
    sound distinct."""
    freq = tone_frequency(clip.track_id)
    t = np.arange(clip.length_s * TONE_RATE) / TONE_RATE
    tremolo = 0.75 + 0.25 * np.sin(
        2 * math.pi * 2.0 * (t + clip.offset_s)
    )
    signal = 0.4 * tremolo * np.sin(2 * math.pi * freq * t)
    pcm = (signal * 32767.0).astype("<i2")
    buf = io.BytesIO()
    with wave.open(buf, "wb") as wav:
        wav.setnchannels(1)
        wav.setsampwidth(2)
        wav.setframerate(TONE_RATE)
        wav.writeframes(pcm.tobytes())
    return buf.getvalue()

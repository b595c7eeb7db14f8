"""WAV decoding and the in-memory signal type."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.io import wavfile

from .errors import EmptyAudioError, InvalidParamsError, UnsupportedFormatError

# Accepted integer PCM containers mapped to their full-scale magnitude.
# 24-bit PCM arrives from the decoder left-justified inside int32, so the
# int32 divisor scales it to [-1, 1] exactly as well.
_INT_SCALE = {
    np.dtype(np.int16): 32768.0,
    np.dtype(np.int32): 2147483648.0,
}
_FLOAT_DTYPES = (np.dtype(np.float32), np.dtype(np.float64))


@dataclass(frozen=True)
class Signal:
    """Mono audio in [-1, 1] float64 at its native sample rate."""

    samples: np.ndarray
    sample_rate: int

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=np.float64)
        if samples.ndim != 1:
            raise InvalidParamsError(
                f"samples must be one-dimensional, got shape {samples.shape}"
            )
        if samples.size == 0:
            raise EmptyAudioError("signal holds zero samples")
        if not isinstance(self.sample_rate, (int, np.integer)) or self.sample_rate <= 0:
            raise InvalidParamsError(
                f"sample_rate must be a positive integer, got {self.sample_rate!r}"
            )
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "sample_rate", int(self.sample_rate))

    @property
    def duration_s(self) -> float:
        return self.samples.size / self.sample_rate


def load_audio(path) -> Signal:
    """Decode a PCM or IEEE-float WAV file into a mono Signal.

    Accepts 16/24/32-bit integer and 32/64-bit float encodings. Integer
    samples are scaled by the container type's full-scale magnitude; float
    samples pass through unchanged. Multichannel audio is downmixed by
    averaging across channels per frame. The file's native sample rate is
    kept; no resampling happens anywhere in this package.

    Raises:
        FileNotFoundError: path does not exist.
        UnsupportedFormatError: not a WAV container, or an encoding outside
            the contract (for example 8-bit PCM or compressed formats).
        EmptyAudioError: the stream holds zero frames.
    """
    try:
        rate, data = wavfile.read(path)
    except FileNotFoundError:
        raise
    except ValueError as exc:
        raise UnsupportedFormatError(f"{path}: {exc}") from exc
    if data.size == 0:
        raise EmptyAudioError(f"{path}: audio stream holds zero frames")
    dtype = data.dtype
    if dtype in _INT_SCALE:
        samples = data.astype(np.float64) / _INT_SCALE[dtype]
    elif dtype in _FLOAT_DTYPES:
        samples = data.astype(np.float64)
    else:
        raise UnsupportedFormatError(
            f"{path}: unsupported sample encoding {dtype}; "
            "expected 16/24/32-bit PCM or 32/64-bit float"
        )
    if samples.ndim == 2:
        samples = samples.mean(axis=1)
    return Signal(samples=samples, sample_rate=int(rate))

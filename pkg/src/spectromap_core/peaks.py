"""Band-wise sliding-maximum peak search over spectrogram matrices.

A band is a single row of the matrix (peaks along time) or a single column
(peaks along frequency). Every full-length sliding window of the band votes
for the smallest band index holding the window's maximum value, and the
de-duplicated votes become the band's peak set. This first-occurrence rule is
what makes a constant band yield exactly one peak at index 0 instead of a
smear of window starts; on bands without repeated values it coincides with
the per-window argmax.

Masks for a whole matrix combine the two axis passes under a condition:
0 keeps time-axis peaks, 1 keeps frequency-axis peaks, 2 keeps their
elementwise AND.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

import numpy as np
from scipy.ndimage import maximum_filter1d

from .errors import EmptyBandError, InvalidParamsError, WindowTooLongError
from .spectrogram import Spectrogram

__all__ = [
    "Condition",
    "PeakSearchConfig",
    "PeakMask",
    "band_window_length",
    "sliding_band_max",
    "peak_mask_matrix",
    "peak_mask_axis",
    "peak_mask",
]


class Condition(IntEnum):
    """Which axis passes a matrix mask keeps."""

    TIME = 0
    FREQUENCY = 1
    BOTH = 2


@dataclass(frozen=True)
class PeakSearchConfig:
    """Search parameters: window fraction per band and the combining condition."""

    fraction: float
    condition: Condition = Condition.BOTH

    def __post_init__(self):
        fraction = float(self.fraction)
        if not 0.0 < fraction <= 1.0:
            raise InvalidParamsError(f"fraction must lie in (0, 1], got {self.fraction!r}")
        try:
            condition = Condition(self.condition)
        except ValueError:
            raise InvalidParamsError(
                f"condition must be 0 (time), 1 (frequency) or 2 (both), got {self.condition!r}"
            ) from None
        object.__setattr__(self, "fraction", fraction)
        object.__setattr__(self, "condition", condition)


@dataclass(frozen=True)
class PeakMask:
    """Binary matrix marking peak positions; same shape as its spectrogram."""

    bits: np.ndarray

    def __post_init__(self):
        bits = np.asarray(self.bits, dtype=np.uint8)
        if bits.ndim != 2:
            raise InvalidParamsError(f"mask must be 2-D, got shape {bits.shape}")
        object.__setattr__(self, "bits", bits)

    @property
    def shape(self) -> tuple[int, int]:
        return self.bits.shape

    @property
    def count(self) -> int:
        return int(self.bits.sum())


def band_window_length(fraction: float, axis_length: int) -> int:
    """Window length for a band: round(fraction * axis_length), floored at 2
    and clamped to the band length. A degenerate length-1 band gets its single
    full window."""
    if axis_length < 1:
        raise EmptyBandError("band holds no samples")
    if not 0.0 < float(fraction) <= 1.0:
        raise InvalidParamsError(f"fraction must lie in (0, 1], got {fraction!r}")
    return min(axis_length, max(2, round(float(fraction) * axis_length)))


def _window_maxima(band: np.ndarray, window_len: int) -> np.ndarray:
    # maximum_filter1d centers its window, so entry k + window_len//2 of the
    # filtered array is max(band[k : k + window_len]); every full window start
    # maps into the interior, keeping the boundary mode out of the result.
    half = window_len // 2
    filtered = maximum_filter1d(band, size=window_len, mode="nearest")
    return filtered[half : half + band.size - window_len + 1]


def sliding_band_max(band, window_len: int) -> np.ndarray:
    """Peak indices of one band as a sorted, de-duplicated index array.

    Each of the len(band) - window_len + 1 full windows contributes the
    smallest band index holding its maximum value.

    Raises EmptyBandError for an empty band and WindowTooLongError when the
    window does not satisfy 1 <= window_len <= len(band).
    """
    band = np.asarray(band, dtype=np.float64)
    if band.ndim != 1:
        raise InvalidParamsError(f"band must be one-dimensional, got shape {band.shape}")
    if band.size == 0:
        raise EmptyBandError("band holds no samples")
    if not 1 <= int(window_len) <= band.size:
        raise WindowTooLongError(
            f"window_len {window_len} outside [1, {band.size}] for this band"
        )
    window_len = int(window_len)
    maxima = _window_maxima(band, window_len)
    # Smallest index per winning value: a stable argsort keeps the original
    # order among equal values, so the first slot of each value run is its
    # first occurrence in the band.
    order = np.argsort(band, kind="stable")
    first = order[np.searchsorted(band[order], maxima, side="left")]
    return np.unique(first)


def _axis_mask(values: np.ndarray, fraction: float, axis: int) -> np.ndarray:
    # axis=1 slides along time within each row, axis=0 along frequency
    # within each column.
    bits = np.zeros(values.shape, dtype=np.uint8)
    w = band_window_length(fraction, values.shape[axis])
    if axis == 1:
        for r in range(values.shape[0]):
            bits[r, sliding_band_max(values[r], w)] = 1
    else:
        for c in range(values.shape[1]):
            bits[sliding_band_max(values[:, c], w), c] = 1
    return bits


def peak_mask_matrix(values, fraction: float, condition) -> np.ndarray:
    """0/1 mask of a bare 2-D matrix under the given condition.

    The window length is derived per axis from the same fraction:
    round(fraction * axis_length) floored at 2, clamped to the axis.
    """
    values = np.asarray(values, dtype=np.float64)
    if values.ndim != 2:
        raise InvalidParamsError(f"expected a 2-D matrix, got shape {values.shape}")
    if values.size == 0:
        raise EmptyBandError("matrix has an empty axis")
    try:
        condition = Condition(condition)
    except ValueError:
        raise InvalidParamsError(
            f"condition must be 0 (time), 1 (frequency) or 2 (both), got {condition!r}"
        ) from None
    if condition is Condition.TIME:
        return _axis_mask(values, fraction, axis=1)
    if condition is Condition.FREQUENCY:
        return _axis_mask(values, fraction, axis=0)
    return _axis_mask(values, fraction, axis=1) & _axis_mask(values, fraction, axis=0)


def peak_mask_axis(spec: Spectrogram, config: PeakSearchConfig, axis) -> PeakMask:
    """Single-axis pass over a spectrogram; axis is TIME or FREQUENCY."""
    try:
        axis = Condition(axis)
    except ValueError:
        raise InvalidParamsError(f"axis must be TIME (0) or FREQUENCY (1), got {axis!r}") from None
    if axis is Condition.BOTH:
        raise InvalidParamsError("axis must be TIME (0) or FREQUENCY (1)")
    return PeakMask(_axis_mask(np.asarray(spec.values, dtype=np.float64),
                               config.fraction, 1 if axis is Condition.TIME else 0))


def peak_mask(spec: Spectrogram, config: PeakSearchConfig) -> PeakMask:
    """Peak mask of a spectrogram under config.condition."""
    return PeakMask(peak_mask_matrix(spec.values, config.fraction, config.condition))

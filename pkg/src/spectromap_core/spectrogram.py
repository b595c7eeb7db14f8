"""STFT power spectrograms on a dB scale.

The transform is framed directly: hop = nfft - noverlap, trailing samples
that do not fill a frame are dropped, each frame is windowed and passed
through a one-sided FFT, and power |FFT|^2 is mapped to dB with a hard floor
so silence lands exactly on DB_FLOOR. No normalization is applied, so scaling
a signal by c shifts every above-floor dB value by exactly 20*log10(c).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from scipy.signal import get_window

from .audio import Signal
from .errors import InvalidParamsError, ParseError, SignalTooShortError

#: Power floor and its dB image; all-zero input maps exactly to DB_FLOOR.
POWER_EPS = 1e-12
DB_FLOOR = -120.0

#: Analysis window names mapped to scipy.signal.get_window identifiers.
WINDOWS = {
    "hamming": "hamming",
    "hann": "hann",
    "blackman": "blackman",
    "rectangular": "boxcar",
}

_CSV_CORNER = "freq_hz\\time_s"


@dataclass(frozen=True)
class SpectrogramParams:
    """Framing and windowing parameters. noverlap defaults to 0 (no overlap)."""

    nfft: int
    noverlap: int = 0
    window: str = "hamming"

    def __post_init__(self):
        if not isinstance(self.nfft, (int, np.integer)) or self.nfft < 2:
            raise InvalidParamsError(f"nfft must be an integer >= 2, got {self.nfft!r}")
        if not isinstance(self.noverlap, (int, np.integer)) or not 0 <= self.noverlap < self.nfft:
            raise InvalidParamsError(
                f"noverlap must satisfy 0 <= noverlap < nfft, "
                f"got {self.noverlap!r} with nfft {self.nfft}"
            )
        if self.window not in WINDOWS:
            raise InvalidParamsError(
                f"unknown window {self.window!r}; choose from {sorted(WINDOWS)}"
            )
        object.__setattr__(self, "nfft", int(self.nfft))
        object.__setattr__(self, "noverlap", int(self.noverlap))

    @property
    def hop(self) -> int:
        return self.nfft - self.noverlap


@dataclass(frozen=True)
class Spectrogram:
    """dB power matrix of shape (n_freq_bins, n_frames) with its axis grids.

    freqs[j] = j * sample_rate / nfft; times[k] = (k*hop + nfft/2) / sample_rate
    (frame centers). Treat all arrays as read-only.
    """

    values: np.ndarray
    freqs: np.ndarray
    times: np.ndarray
    sample_rate: int
    params: SpectrogramParams

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape

    @property
    def n_freq_bins(self) -> int:
        return self.values.shape[0]

    @property
    def n_frames(self) -> int:
        return self.values.shape[1]


def frame_count(n_samples: int, params: SpectrogramParams) -> int:
    """Number of full frames: floor((n_samples - noverlap) / hop)."""
    return (n_samples - params.noverlap) // params.hop


def compute_spectrogram(signal: Signal, params: SpectrogramParams) -> Spectrogram:
    """One-sided dB power spectrogram of a mono signal.

    Raises SignalTooShortError when the signal cannot fill one frame.
    """
    x = signal.samples
    nfft = params.nfft
    if x.size < nfft:
        raise SignalTooShortError(
            f"signal too short: {x.size} samples cannot fill one {nfft}-sample frame"
        )
    n_frames = frame_count(x.size, params)
    frames = sliding_window_view(x, nfft)[:: params.hop][:n_frames]
    win = get_window(WINDOWS[params.window], nfft, fftbins=True)
    power = np.abs(np.fft.rfft(frames * win, axis=1)) ** 2
    values = (10.0 * np.log10(np.maximum(power, POWER_EPS))).T
    n_bins = nfft // 2 + 1
    freqs = np.arange(n_bins) * float(signal.sample_rate) / nfft
    times = (np.arange(n_frames) * params.hop + nfft / 2) / signal.sample_rate
    return Spectrogram(
        values=values,
        freqs=freqs,
        times=times,
        sample_rate=signal.sample_rate,
        params=params,
    )


def write_spectrogram_csv(spec: Spectrogram, path) -> None:
    """Matrix CSV: header row of frame times, first column of bin frequencies,
    cells at full float precision (values parse back bit-identically)."""
    with open(path, "w", newline="") as fh:
        fh.write(_CSV_CORNER + "," + ",".join(repr(float(t)) for t in spec.times) + "\n")
        for j in range(spec.n_freq_bins):
            row = ",".join(repr(float(v)) for v in spec.values[j])
            fh.write(repr(float(spec.freqs[j])) + "," + row + "\n")


def read_spectrogram_csv(path) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Inverse of write_spectrogram_csv: returns (freqs, times, values)."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0][0] != _CSV_CORNER:
        raise ParseError(f"missing {_CSV_CORNER!r} header cell", line=1)
    times = np.array([float(c) for c in rows[0][1:]], dtype=np.float64)
    freqs = np.array([float(r[0]) for r in rows[1:]], dtype=np.float64)
    values = np.array(
        [[float(c) for c in r[1:]] for r in rows[1:]], dtype=np.float64
    ).reshape(len(freqs), len(times))
    return freqs, times, values

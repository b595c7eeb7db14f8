"""Constellation-map audio fingerprinting.

Peaks are the topologically prominent points of an STFT power spectrogram,
found by sliding a window along each time row and each frequency column and
keeping the de-duplicated window maxima. Fingerprints are the (time_s,
frequency_hz, amplitude_db) triples at those peaks; class fingerprints sum
the binary masks of a set of clips.
"""

from .audio import Signal, load_audio
from .errors import (
    EmptyAudioError,
    EmptyBandError,
    EmptyClassError,
    InvalidParamsError,
    ParseError,
    SchemaError,
    ShapeMismatchError,
    SignalTooShortError,
    SpectromapError,
    UnsupportedFormatError,
    WindowTooLongError,
)
from .fingerprint import (
    CSV_HEADER,
    ClassFingerprint,
    Fingerprint,
    aggregate_class,
    extract_fingerprint,
    fingerprint_to_mask,
    parse_fingerprint_csv,
    parse_fingerprint_json,
    read_counts_csv,
    render_constellation,
    serialize_fingerprint_csv,
    serialize_fingerprint_json,
    write_counts_csv,
)
from .peaks import (
    Condition,
    PeakMask,
    PeakSearchConfig,
    band_window_length,
    peak_mask,
    peak_mask_axis,
    peak_mask_matrix,
    sliding_band_max,
)
from .spectrogram import (
    DB_FLOOR,
    POWER_EPS,
    WINDOWS,
    Spectrogram,
    SpectrogramParams,
    compute_spectrogram,
    frame_count,
    read_spectrogram_csv,
    write_spectrogram_csv,
)
from .stats import STATS_CSV_HEADER, TimingStats, write_stats_csv
from .synth import generate_dataset

__version__ = "0.1.0"

__all__ = [
    "Signal",
    "load_audio",
    "SpectromapError",
    "UnsupportedFormatError",
    "EmptyAudioError",
    "InvalidParamsError",
    "SignalTooShortError",
    "EmptyBandError",
    "WindowTooLongError",
    "ShapeMismatchError",
    "EmptyClassError",
    "ParseError",
    "SchemaError",
    "DB_FLOOR",
    "POWER_EPS",
    "WINDOWS",
    "SpectrogramParams",
    "Spectrogram",
    "compute_spectrogram",
    "frame_count",
    "write_spectrogram_csv",
    "read_spectrogram_csv",
    "Condition",
    "PeakSearchConfig",
    "PeakMask",
    "band_window_length",
    "sliding_band_max",
    "peak_mask_matrix",
    "peak_mask_axis",
    "peak_mask",
    "Fingerprint",
    "ClassFingerprint",
    "CSV_HEADER",
    "extract_fingerprint",
    "serialize_fingerprint_csv",
    "parse_fingerprint_csv",
    "serialize_fingerprint_json",
    "parse_fingerprint_json",
    "fingerprint_to_mask",
    "aggregate_class",
    "write_counts_csv",
    "read_counts_csv",
    "render_constellation",
    "STATS_CSV_HEADER",
    "TimingStats",
    "write_stats_csv",
    "generate_dataset",
    "__version__",
]

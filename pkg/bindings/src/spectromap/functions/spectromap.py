"""Drop-in surface for code written against the classic spectromap interface.

Everything here delegates to spectromap_core; no analysis step is
re-implemented, so the outputs match the core package bit for bit. The class
name stays lowercase because that is the constructor name existing scripts
import.
"""

from __future__ import annotations

import numpy as np

from spectromap_core import (
    DB_FLOOR,
    PeakSearchConfig,
    Signal,
    SpectrogramParams,
    compute_spectrogram,
    extract_fingerprint,
    peak_mask,
    peak_mask_matrix,
)

from ..errors import NotAMatrixError, NotYetSearchedError

__all__ = ["spectromap", "peak_search"]


def peak_search(spectrogram, fraction, condition):
    """Peak search over an already computed spectrogram matrix.

    Returns (id_peaks, peaks): the binary peak matrix and a same-shape matrix
    holding the spectrogram value at peak positions and the dB floor
    elsewhere.
    """
    spectrogram = np.asarray(spectrogram, dtype=np.float64)
    if spectrogram.ndim != 2:
        raise NotAMatrixError(
            f"expected a 2-D spectrogram matrix, got shape {spectrogram.shape}"
        )
    config = PeakSearchConfig(fraction=fraction, condition=condition)
    id_peaks = peak_mask_matrix(spectrogram, config.fraction, config.condition)
    peaks = np.where(id_peaks.astype(bool), spectrogram, DB_FLOOR)
    return id_peaks, peaks


class spectromap:
    """Handle over one signal: spectrogram on demand, then peak extraction.

    Parameters mirror the classic keyword set: y (sample vector), fs (Hz),
    nfft, noverlap. Construction only validates; nothing is computed until
    get_spectrogram() or peak_matrix() is called, and the spectrogram is
    computed once and cached.
    """

    def __init__(self, y, fs, nfft, noverlap=0):
        self._signal = Signal(np.asarray(y, dtype=np.float64), fs)
        self._params = SpectrogramParams(nfft=nfft, noverlap=noverlap)
        self._spec = None
        self._axes = None
        self._mask = None
        self._config = None

    def _spectrogram(self):
        if self._spec is None:
            self._spec = compute_spectrogram(self._signal, self._params)
            self._axes = (self._spec.freqs, self._spec.times, self._spec.values)
        return self._spec

    def get_spectrogram(self):
        """(f, t, S): frequency axis in Hz, time axis in s, dB matrix.

        Repeated calls return the same cached arrays.
        """
        self._spectrogram()
        return self._axes

    def peak_matrix(self, fraction, condition):
        """(id_peaks, peaks) for this handle's spectrogram; see peak_search.

        The mask is kept on the handle for from_peaks_to_array().
        """
        spec = self._spectrogram()
        config = PeakSearchConfig(fraction=fraction, condition=condition)
        mask = peak_mask(spec, config)
        self._mask = mask
        self._config = config
        peaks = np.where(mask.bits.astype(bool), spec.values, DB_FLOOR)
        return mask.bits, peaks

    def from_peaks_to_array(self):
        """Peak coordinates as an (n, 3) array of (time s, frequency Hz,
        amplitude dB) rows, sorted by time then frequency.

        Raises NotYetSearchedError until peak_matrix() has run.
        """
        if self._mask is None:
            raise NotYetSearchedError("call peak_matrix() before requesting coordinates")
        fp = extract_fingerprint(self._spectrogram(), self._mask, self._config)
        return fp.triples

"""Behavior of the compatibility surface itself."""

import numpy as np
import pytest

from spectromap import NotAMatrixError, NotYetSearchedError, peak_search, spectromap
from spectromap_core import (
    Condition,
    EmptyAudioError,
    InvalidParamsError,
    SignalTooShortError,
)

FS = 22050


@pytest.fixture
def handle():
    rng = np.random.default_rng(7)
    return spectromap(rng.random(44100), fs=FS, nfft=512, noverlap=64)


def test_documented_shapes(handle):
    f, t, S = handle.get_spectrogram()
    assert f.shape == (257,)
    assert t.shape == (98,)
    assert S.shape == (257, 98)
    assert f[0] == 0.0 and f[-1] == FS / 2


def test_spectrogram_cached(handle):
    f1, t1, S1 = handle.get_spectrogram()
    f2, t2, S2 = handle.get_spectrogram()
    assert f1 is f2 and t1 is t2 and S1 is S2


def test_construction_is_lazy():
    # too short for the FFT frame: only the compute step may complain
    h = spectromap(np.ones(100), fs=8000, nfft=512)
    with pytest.raises(SignalTooShortError):
        h.get_spectrogram()


def test_peak_matrix_floor_fill(handle):
    _, _, S = handle.get_spectrogram()
    id_peaks, peaks = handle.peak_matrix(0.15, 2)
    assert id_peaks.shape == S.shape == peaks.shape
    sel = id_peaks.astype(bool)
    np.testing.assert_array_equal(peaks[sel], S[sel])
    assert (peaks[~sel] == -120.0).all()


def test_intersection_of_axis_conditions(handle):
    t_mask, _ = handle.peak_matrix(0.2, 0)
    f_mask, _ = handle.peak_matrix(0.2, 1)
    both, _ = handle.peak_matrix(0.2, 2)
    np.testing.assert_array_equal(both, t_mask & f_mask)


def test_fraction_one_single_peak_per_band(handle):
    t_mask, _ = handle.peak_matrix(1.0, 0)
    assert (t_mask.sum(axis=1) == 1).all()
    f_mask, _ = handle.peak_matrix(1.0, 1)
    assert (f_mask.sum(axis=0) == 1).all()


def test_coordinates_require_search(handle):
    with pytest.raises(NotYetSearchedError):
        handle.from_peaks_to_array()


def test_coordinates_shape_and_order(handle):
    id_peaks, _ = handle.peak_matrix(0.15, 2)
    arr = handle.from_peaks_to_array()
    assert arr.shape == (int(id_peaks.sum()), 3)
    order = np.lexsort((arr[:, 1], arr[:, 0]))
    np.testing.assert_array_equal(order, np.arange(len(arr)))


def test_peak_search_matches_handle(handle):
    _, _, S = handle.get_spectrogram()
    id_h, peaks_h = handle.peak_matrix(0.25, 2)
    id_s, peaks_s = peak_search(S, 0.25, 2)
    np.testing.assert_array_equal(id_s, id_h)
    np.testing.assert_array_equal(peaks_s, peaks_h)


def test_peak_search_single_cell():
    id_peaks, peaks = peak_search(np.array([[7.0]]), 0.5, 2)
    np.testing.assert_array_equal(id_peaks, [[1]])
    np.testing.assert_array_equal(peaks, [[7.0]])


def test_peak_search_validation():
    with pytest.raises(NotAMatrixError):
        peak_search(np.zeros(5), 0.5, 2)
    with pytest.raises(NotAMatrixError):
        peak_search(np.zeros((2, 2, 2)), 0.5, 2)
    with pytest.raises(InvalidParamsError):
        peak_search(np.zeros((4, 4)), 0.0, 2)
    with pytest.raises(InvalidParamsError):
        peak_search(np.zeros((4, 4)), 0.5, 9)


def test_constructor_validation():
    with pytest.raises(EmptyAudioError):
        spectromap(np.array([]), fs=FS, nfft=512)
    with pytest.raises(InvalidParamsError):
        spectromap(np.ones(4096), fs=FS, nfft=512, noverlap=512)
    with pytest.raises(InvalidParamsError):
        spectromap(np.ones(4096), fs=0, nfft=512)


def test_condition_enum_accepted(handle):
    by_int, _ = handle.peak_matrix(0.3, 1)
    by_enum, _ = handle.peak_matrix(0.3, Condition.FREQUENCY)
    np.testing.assert_array_equal(by_enum, by_int)

"""Acceptance gate for the compatibility layer.

Run with `pytest -s` for the [PASS]/[FAIL] lines. The layer must reproduce
the core package exactly (it delegates, so any drift is a bug) and keep the
classic quickstart working with its documented shapes.
"""

import os
import subprocess
import sys
from contextlib import contextmanager

import numpy as np
from scipy.io import wavfile

from spectromap import peak_search, spectromap
from spectromap_core import (
    Fingerprint,
    PeakSearchConfig,
    Signal,
    SpectrogramParams,
    compute_spectrogram,
    extract_fingerprint,
    load_audio,
    peak_mask,
    read_spectrogram_csv,
    serialize_fingerprint_csv,
)


@contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        print(f"[FAIL] {name}")
        raise
    print(f"[PASS] {name}")


def _corpus(n=20, seed=19):
    rng = np.random.default_rng(seed)
    fractions = (0.1, 0.15, 1.0 / 3.0, 0.5, 1.0)
    for i in range(n):
        fs = int(rng.choice([8000, 22050, 44100]))
        nfft = int(rng.choice([128, 256, 512]))
        noverlap = int(rng.choice([0, nfft // 8, nfft // 4]))
        length = int(rng.integers(4 * nfft, 40 * nfft))
        y = rng.normal(scale=0.3, size=length)
        yield y, fs, nfft, noverlap, fractions[i % len(fractions)], i % 3


def test_cross_language_parity():
    """Masks bit-identical and triples exactly equal to the core on 20 seeded
    inputs spanning rates, frame lengths, overlaps, fractions and
    conditions."""
    with criterion("cross-layer parity (20 seeded inputs, exact)"):
        for y, fs, nfft, noverlap, fraction, condition in _corpus():
            handle = spectromap(y, fs=fs, nfft=nfft, noverlap=noverlap)
            f, t, S = handle.get_spectrogram()
            id_peaks, peaks = handle.peak_matrix(fraction, condition)
            triples = handle.from_peaks_to_array()

            spec = compute_spectrogram(Signal(y, fs), SpectrogramParams(nfft, noverlap))
            config = PeakSearchConfig(fraction=fraction, condition=condition)
            mask = peak_mask(spec, config)
            fp = extract_fingerprint(spec, mask, config)

            np.testing.assert_array_equal(f, spec.freqs)
            np.testing.assert_array_equal(t, spec.times)
            np.testing.assert_array_equal(S, spec.values)
            np.testing.assert_array_equal(id_peaks, mask.bits)
            np.testing.assert_array_equal(triples, fp.triples)
            assert serialize_fingerprint_csv(Fingerprint(triples)) == \
                serialize_fingerprint_csv(fp)

            id_s, peaks_s = peak_search(S, fraction, condition)
            np.testing.assert_array_equal(id_s, id_peaks)
            np.testing.assert_array_equal(peaks_s, peaks)


def test_quickstart_script_shapes():
    """The classic quickstart runs as written: random 44100-sample vector,
    fs 22050, nfft 512, noverlap 64 gives a 257x98 spectrogram, and the
    fraction 0.15 / condition 2 extraction yields one coordinate row per mask
    bit."""
    with criterion("quickstart compatibility (257x98 shapes, extraction runs)"):
        np.random.seed(1205)
        y = np.random.rand(44100)
        kwargs = {"fs": 22050, "nfft": 512, "noverlap": 64}
        smap = spectromap(y, **kwargs)
        f, t, S = smap.get_spectrogram()
        assert f.shape == (257,)
        assert t.shape == (98,)
        assert S.shape == (257, 98)
        id_peaks, peaks = smap.peak_matrix(0.15, 2)
        assert id_peaks.shape == peaks.shape == S.shape
        extraction = smap.from_peaks_to_array()
        assert extraction.shape == (int(id_peaks.sum()), 3)
        assert len(extraction) > 0


def test_spectrogram_matches_cli_export(tmp_path):
    """The handle's matrix equals the primary CLI's exported spectrogram CSV
    bit for bit for the same WAV."""
    with criterion("CLI spectrogram export parity (bit-exact)"):
        rng = np.random.default_rng(3)
        samples = np.round(rng.normal(scale=0.2, size=20000) * 32767)
        wav = tmp_path / "noise.wav"
        wavfile.write(wav, 16000, np.clip(samples, -32768, 32767).astype(np.int16))
        spec_csv = tmp_path / "noise.spec.csv"
        env = os.environ.copy()
        env.pop("SPECTROMAP_JOBS", None)
        res = subprocess.run(
            [sys.executable, "-m", "spectromap_core.cli", "fingerprint", str(wav),
             "--nfft", "512", "--noverlap", "64",
             "--out", str(tmp_path / "noise.json"), "--format", "json",
             "--export-spectrogram", str(spec_csv)],
            capture_output=True, text=True, env=env,
        )
        assert res.returncode == 0, res.stderr
        freqs, times, values = read_spectrogram_csv(spec_csv)

        signal = load_audio(wav)
        handle = spectromap(signal.samples, fs=signal.sample_rate, nfft=512, noverlap=64)
        f, t, S = handle.get_spectrogram()
        np.testing.assert_array_equal(f, freqs)
        np.testing.assert_array_equal(t, times)
        np.testing.assert_array_equal(S, values)

"""Seeded synthetic WAV datasets: folders of sinusoid mixtures plus noise.

Every file gets its own integer seed derived from (master seed, folder index,
file index) through a seed sequence, so re-running with the same master seed
regenerates byte-identical WAVs regardless of how many folders or files the
tree holds. The manifest records the per-file seeds.
"""

from __future__ import annotations

import os

import numpy as np
from scipy.io import wavfile

from .errors import InvalidParamsError

MANIFEST_NAME = "manifest.csv"
MANIFEST_HEADER = "folder,file,seed"

_NOISE_AMPLITUDE = 10.0 ** (-30.0 / 20.0)  # white noise at -30 dB full scale


def _file_seed(master_seed: int, folder_idx: int, file_idx: int) -> int:
    ss = np.random.SeedSequence([int(master_seed), folder_idx, file_idx])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _render_clip(rng: np.random.Generator, n: int, sample_rate: int) -> np.ndarray:
    t = np.arange(n) / sample_rate
    duration = n / sample_rate
    mix = np.zeros(n, dtype=np.float64)
    for _ in range(int(rng.integers(2, 6))):
        freq = rng.uniform(60.0, 0.45 * sample_rate)
        amp = rng.uniform(0.2, 1.0)
        phase = rng.uniform(0.0, 2.0 * np.pi)
        attack = rng.uniform(0.02, 0.4) * duration
        release = rng.uniform(0.02, 0.4) * duration
        envelope = np.clip(np.minimum(t / attack, (duration - t) / release), 0.0, 1.0)
        mix += amp * envelope * np.sin(2.0 * np.pi * freq * t + phase)
    mix += _NOISE_AMPLITUDE * rng.standard_normal(n)
    mix *= 0.9 / np.abs(mix).max()
    return np.round(mix * 32767.0).astype(np.int16)


def generate_dataset(
    out_dir,
    n_folders: int = 5,
    n_files: int = 80,
    duration_s: float = 5.0,
    sample_rate: int = 22050,
    seed: int = 0,
) -> str:
    """Write n_folders x n_files seeded clips under out_dir; returns the
    manifest path. Folders are fold1..foldN, files clip_000.wav upward."""
    if n_folders < 1 or n_files < 1:
        raise InvalidParamsError("need at least one folder and one file per folder")
    if duration_s <= 0 or sample_rate <= 0:
        raise InvalidParamsError("duration_s and sample_rate must be positive")
    n = int(round(duration_s * sample_rate))
    if n < 1:
        raise InvalidParamsError("duration rounds to zero samples")
    os.makedirs(out_dir, exist_ok=True)
    manifest_path = os.path.join(out_dir, MANIFEST_NAME)
    with open(manifest_path, "w", newline="") as manifest:
        manifest.write(MANIFEST_HEADER + "\n")
        for fi in range(n_folders):
            folder = f"fold{fi + 1}"
            folder_path = os.path.join(out_dir, folder)
            os.makedirs(folder_path, exist_ok=True)
            for fj in range(n_files):
                file_seed = _file_seed(seed, fi, fj)
                clip = _render_clip(np.random.default_rng(file_seed), n, sample_rate)
                name = f"clip_{fj:03d}.wav"
                wavfile.write(os.path.join(folder_path, name), sample_rate, clip)
                manifest.write(f"{folder},{name},{file_seed}\n")
    return manifest_path

"""Fingerprints: triple extraction, serialization, aggregation, rendering.

A fingerprint is the list of (time_s, frequency_hz, amplitude_db) triples at
the set bits of a peak mask, sorted by time and then frequency. CSV carries
the triples alone at six significant digits; JSON additionally keeps the
source geometry (matrix shape, sample rate, framing and search parameters)
so a mask can be rebuilt bit-exactly from the file.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import (
    EmptyClassError,
    InvalidParamsError,
    ParseError,
    SchemaError,
    ShapeMismatchError,
)
from .peaks import Condition, PeakMask, PeakSearchConfig
from .spectrogram import Spectrogram, SpectrogramParams

CSV_HEADER = "time_s,frequency_hz,amplitude_db"


def _fmt(v: float) -> str:
    # Six significant digits with trailing zeros kept, e.g. 1.5 -> "1.50000".
    return format(float(v), "#.6g")


def _sorted_triples(triples: np.ndarray) -> np.ndarray:
    order = np.lexsort((triples[:, 1], triples[:, 0]))
    return triples[order]


@dataclass(frozen=True)
class Fingerprint:
    """Peak triples sorted ascending by time, then frequency.

    source_shape / sample_rate / params / search describe the matrix the
    triples came from; they are None for fingerprints parsed from bare CSV,
    which carries no geometry.
    """

    triples: np.ndarray
    source_shape: tuple[int, int] | None = None
    sample_rate: int | None = None
    params: SpectrogramParams | None = None
    search: PeakSearchConfig | None = None

    def __post_init__(self):
        triples = np.asarray(self.triples, dtype=np.float64).reshape(-1, 3)
        object.__setattr__(self, "triples", _sorted_triples(triples))
        if self.source_shape is not None:
            object.__setattr__(self, "source_shape", tuple(int(v) for v in self.source_shape))

    def __len__(self) -> int:
        return self.triples.shape[0]


def extract_fingerprint(
    spec: Spectrogram, mask: PeakMask, search: PeakSearchConfig | None = None
) -> Fingerprint:
    """One triple per set mask bit: (frame center time, bin frequency, dB value).

    Raises ShapeMismatchError when the mask does not match the spectrogram.
    """
    bits = mask.bits
    if bits.shape != spec.values.shape:
        raise ShapeMismatchError(
            f"mask shape {bits.shape} does not match spectrogram shape {spec.values.shape}"
        )
    cols, rows = np.nonzero(bits.T)
    triples = np.column_stack(
        (spec.times[cols], spec.freqs[rows], spec.values[rows, cols])
    )
    return Fingerprint(
        triples=triples,
        source_shape=bits.shape,
        sample_rate=spec.sample_rate,
        params=spec.params,
        search=search,
    )


# --------------------------------------------------------------------------
# serialization


def serialize_fingerprint_csv(fp: Fingerprint) -> str:
    lines = [CSV_HEADER]
    for t, f, a in fp.triples:
        lines.append(f"{_fmt(t)},{_fmt(f)},{_fmt(a)}")
    return "\n".join(lines) + "\n"


def parse_fingerprint_csv(text: str) -> Fingerprint:
    """Parse triple CSV; rows may arrive unsorted and are re-sorted.

    Raises SchemaError when the header line is missing and ParseError (with
    the offending 1-based line) for malformed rows.
    """
    lines = text.splitlines()
    if not lines or lines[0].strip() != CSV_HEADER:
        raise SchemaError(f"missing header {CSV_HEADER!r}", line=1)
    rows = []
    for i, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != 3:
            raise ParseError(f"expected 3 comma-separated values, got {len(parts)}", line=i)
        try:
            rows.append([float(p) for p in parts])
        except ValueError as exc:
            raise ParseError(str(exc), line=i) from exc
    return Fingerprint(triples=np.array(rows, dtype=np.float64).reshape(-1, 3))


def serialize_fingerprint_json(fp: Fingerprint) -> str:
    """JSON document with params, shape and full-precision peak triples."""
    params = None
    if fp.params is not None:
        params = {
            "sample_rate": fp.sample_rate,
            "nfft": fp.params.nfft,
            "noverlap": fp.params.noverlap,
            "window": fp.params.window,
        }
        if fp.search is not None:
            params["fraction"] = fp.search.fraction
            params["condition"] = int(fp.search.condition)
    doc = {
        "params": params,
        "shape": None if fp.source_shape is None else list(fp.source_shape),
        "peaks": [[float(t), float(f), float(a)] for t, f, a in fp.triples],
    }
    return json.dumps(doc, indent=1) + "\n"


def parse_fingerprint_json(text: str) -> Fingerprint:
    """Inverse of serialize_fingerprint_json; unknown fields are ignored.

    Raises ParseError for invalid JSON and SchemaError for a structurally
    wrong document.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno) from exc
    if not isinstance(doc, dict) or not isinstance(doc.get("peaks"), list):
        raise SchemaError("document must be an object with a 'peaks' array")
    rows = []
    for i, peak in enumerate(doc["peaks"]):
        if not isinstance(peak, (list, tuple)) or len(peak) != 3:
            raise SchemaError(f"peak {i} is not a [time, frequency, amplitude] triple")
        try:
            rows.append([float(v) for v in peak])
        except (TypeError, ValueError):
            raise SchemaError(f"peak {i} holds a non-numeric value") from None
    shape = doc.get("shape")
    if shape is not None:
        if not isinstance(shape, list) or len(shape) != 2:
            raise SchemaError("'shape' must be a [n_freq_bins, n_frames] pair")
        shape = (int(shape[0]), int(shape[1]))
    params = doc.get("params")
    sample_rate = sp = search = None
    if params is not None:
        if not isinstance(params, dict):
            raise SchemaError("'params' must be an object")
        try:
            sample_rate = int(params["sample_rate"])
            sp = SpectrogramParams(
                nfft=int(params["nfft"]),
                noverlap=int(params["noverlap"]),
                window=str(params["window"]),
            )
            if "fraction" in params:
                search = PeakSearchConfig(
                    fraction=float(params["fraction"]),
                    condition=Condition(int(params.get("condition", Condition.BOTH))),
                )
        except (KeyError, ValueError, InvalidParamsError) as exc:
            raise SchemaError(f"bad 'params' block: {exc}") from exc
    return Fingerprint(
        triples=np.array(rows, dtype=np.float64).reshape(-1, 3),
        source_shape=shape,
        sample_rate=sample_rate,
        params=sp,
        search=search,
    )


def fingerprint_to_mask(fp: Fingerprint) -> PeakMask:
    """Rebuild the source peak mask from a fingerprint's triples.

    Triple coordinates are mapped back to bins by inverting the axis grids;
    the inversion is exact at full float precision and still exact at the
    CSV's printed precision for any realistic geometry. Requires the
    source_shape / sample_rate / params metadata that JSON keeps.
    """
    if fp.source_shape is None or fp.sample_rate is None or fp.params is None:
        raise SchemaError(
            "fingerprint carries no source geometry (shape, sample_rate, params); "
            "JSON fingerprints keep it, bare CSV does not"
        )
    n_bins, n_frames = fp.source_shape
    bits = np.zeros((n_bins, n_frames), dtype=np.uint8)
    if len(fp):
        fs = fp.sample_rate
        nfft, hop = fp.params.nfft, fp.params.hop
        cols = np.rint((fp.triples[:, 0] * fs - nfft / 2) / hop).astype(np.int64)
        rows = np.rint(fp.triples[:, 1] * nfft / fs).astype(np.int64)
        ok = (0 <= rows) & (rows < n_bins) & (0 <= cols) & (cols < n_frames)
        if not ok.all():
            bad = int(np.flatnonzero(~ok)[0])
            raise ParseError(
                f"triple {bad} maps outside the {n_bins}x{n_frames} source matrix"
            )
        bits[rows, cols] = 1
    return PeakMask(bits)


# --------------------------------------------------------------------------
# class aggregation


@dataclass(frozen=True)
class ClassFingerprint:
    """Elementwise sum of the binary masks of a class's members."""

    counts: np.ndarray
    n_members: int
    label: str = ""

    @property
    def shape(self) -> tuple[int, int]:
        return self.counts.shape


def aggregate_class(masks, label: str = "", crop_to_min: bool = False) -> ClassFingerprint:
    """Sum member masks into a count matrix; 0 <= count <= n_members holds.

    All masks must share a shape. With crop_to_min=True, differing shapes are
    first cropped to the common top-left minimum instead of raising.

    Raises EmptyClassError for zero members and ShapeMismatchError (naming
    the offending member and both shapes) on a mismatch.
    """
    masks = list(masks)
    if not masks:
        raise EmptyClassError("no masks to aggregate")
    arrays = [np.asarray(m.bits if isinstance(m, PeakMask) else m, dtype=np.int64) for m in masks]
    shapes = [a.shape for a in arrays]
    if crop_to_min:
        rows = min(s[0] for s in shapes)
        cols = min(s[1] for s in shapes)
        arrays = [a[:rows, :cols] for a in arrays]
    else:
        for i, s in enumerate(shapes):
            if s != shapes[0]:
                raise ShapeMismatchError(
                    f"mask {i} has shape {s}, expected {shapes[0]} "
                    "(pass crop_to_min to crop to the common minimum)"
                )
    counts = np.zeros(arrays[0].shape, dtype=np.int64)
    for a in arrays:
        counts += a
    return ClassFingerprint(counts=counts, n_members=len(arrays), label=label)


def write_counts_csv(cf: ClassFingerprint, path) -> None:
    """Bare integer matrix, one line per frequency bin ascending."""
    with open(path, "w", newline="") as fh:
        for row in cf.counts:
            fh.write(",".join(str(int(v)) for v in row) + "\n")


def read_counts_csv(path) -> np.ndarray:
    matrix = np.loadtxt(path, delimiter=",", dtype=np.int64, ndmin=2)
    return matrix


# --------------------------------------------------------------------------
# rendering


def render_constellation(matrix, path) -> None:
    """Render a mask or count matrix to an 8-bit binary PGM (P5).

    Pixels are round-half-up of 255 * value / max(matrix) with 0 anchored at
    black, making the mapping monotone; an all-zero matrix renders all black.
    The image is flipped vertically so frequency row 0 sits at the bottom.
    """
    m = np.asarray(matrix, dtype=np.float64)
    if m.ndim != 2:
        raise InvalidParamsError(f"expected a 2-D matrix, got shape {m.shape}")
    peak = float(m.max()) if m.size else 0.0
    if peak <= 0.0:
        pixels = np.zeros(m.shape, dtype=np.uint8)
    else:
        pixels = np.clip(np.floor(255.0 * m / peak + 0.5), 0, 255).astype(np.uint8)
    header = f"P5\n{m.shape[1]} {m.shape[0]}\n255\n".encode("ascii")
    with open(path, "wb") as fh:
        fh.write(header + pixels[::-1, :].tobytes())

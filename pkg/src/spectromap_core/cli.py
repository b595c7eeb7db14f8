"""Command-line interface.

Subcommands: fingerprint (one WAV), batch (a folder tree of WAVs), aggregate
(sum fingerprint masks into class counts), render (PGM image of a mask or
count matrix), synth (seeded synthetic dataset).

Exit codes: 0 success, 2 input error (bad paths, formats, parameters),
3 processing error (signal too short, all batch files failed). Worker count
for batch comes from --jobs, then the SPECTROMAP_JOBS environment variable,
then the CPU count.
"""

from __future__ import annotations

import argparse
import glob
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .audio import load_audio
from .errors import (
    EmptyAudioError,
    EmptyClassError,
    InvalidParamsError,
    ParseError,
    ShapeMismatchError,
    SignalTooShortError,
    SpectromapError,
    UnsupportedFormatError,
)
from .fingerprint import (
    aggregate_class,
    extract_fingerprint,
    fingerprint_to_mask,
    parse_fingerprint_json,
    read_counts_csv,
    render_constellation,
    serialize_fingerprint_csv,
    serialize_fingerprint_json,
    write_counts_csv,
)
from .peaks import PeakSearchConfig, peak_mask
from .spectrogram import WINDOWS, SpectrogramParams, compute_spectrogram, write_spectrogram_csv
from .stats import TABLE_HEADER, TimingStats, table_row, write_stats_csv
from .synth import generate_dataset

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_PROCESSING = 3

JOBS_ENV = "SPECTROMAP_JOBS"


def _fail(stage: str, err, code: int) -> int:
    print(f"{stage}: {err}", file=sys.stderr)
    return code


def _analysis_objects(args) -> tuple[SpectrogramParams, PeakSearchConfig]:
    params = SpectrogramParams(nfft=args.nfft, noverlap=args.noverlap, window=args.window)
    config = PeakSearchConfig(fraction=args.fraction, condition=args.condition)
    return params, config


def _resolve_jobs(flag_value) -> int:
    if flag_value is not None:
        jobs = int(flag_value)
    else:
        env = os.environ.get(JOBS_ENV)
        if env is not None:
            try:
                jobs = int(env)
            except ValueError:
                raise InvalidParamsError(
                    f"{JOBS_ENV} must be an integer, got {env!r}"
                ) from None
        else:
            jobs = os.cpu_count() or 1
    if jobs < 1:
        raise InvalidParamsError(f"jobs must be >= 1, got {jobs}")
    return jobs


def _write_fingerprint(fp, path, fmt: str) -> None:
    text = serialize_fingerprint_csv(fp) if fmt == "csv" else serialize_fingerprint_json(fp)
    Path(path).write_text(text)


def _fingerprint_out_path(input_path: str, out, fmt: str) -> str:
    name = Path(input_path).stem + ".fingerprint." + fmt
    if out is None:
        return str(Path(input_path).with_name(name))
    out_p = Path(out)
    if out_p.is_dir():
        return str(out_p / name)
    return str(out_p)


# --------------------------------------------------------------------------
# fingerprint


def cmd_fingerprint(args) -> int:
    try:
        params, config = _analysis_objects(args)
    except InvalidParamsError as exc:
        return _fail("config", exc, EXIT_INPUT)
    try:
        signal = load_audio(args.input)
    except (FileNotFoundError, UnsupportedFormatError, EmptyAudioError, OSError) as exc:
        return _fail("load", exc, EXIT_INPUT)
    t0 = time.perf_counter()
    try:
        spec = compute_spectrogram(signal, params)
    except SignalTooShortError as exc:
        return _fail("spectrogram", exc, EXIT_PROCESSING)
    try:
        mask = peak_mask(spec, config)
        fp = extract_fingerprint(spec, mask, config)
    except SpectromapError as exc:
        return _fail("search", exc, EXIT_PROCESSING)
    elapsed = time.perf_counter() - t0
    out_path = _fingerprint_out_path(args.input, args.out, args.format)
    try:
        if args.export_spectrogram:
            write_spectrogram_csv(spec, args.export_spectrogram)
        _write_fingerprint(fp, out_path, args.format)
    except OSError as exc:
        return _fail("serialize", exc, EXIT_PROCESSING)
    print(f"peaks={len(fp)} elapsed_s={elapsed:.4f} out={out_path}")
    return EXIT_OK


# --------------------------------------------------------------------------
# batch


def _process_wav(job):
    """Batch worker: decode, analyze, write one fingerprint file.

    The timed span runs from spectrogram start to triple extraction end;
    decode and serialization stay outside it. Never raises: failures come
    back as the error string of the result tuple so one broken file cannot
    abort a batch.
    """
    folder, wav_path, out_path, params, config, fmt = job
    try:
        signal = load_audio(wav_path)
        t0 = time.perf_counter()
        spec = compute_spectrogram(signal, params)
        mask = peak_mask(spec, config)
        fp = extract_fingerprint(spec, mask, config)
        elapsed = time.perf_counter() - t0
        _write_fingerprint(fp, out_path, fmt)
        return (folder, wav_path, elapsed, len(fp), None)
    except (SpectromapError, FileNotFoundError, OSError) as exc:
        return (folder, wav_path, None, 0, f"{type(exc).__name__}: {exc}")


def cmd_batch(args) -> int:
    try:
        params, config = _analysis_objects(args)
        jobs = _resolve_jobs(args.jobs)
    except InvalidParamsError as exc:
        return _fail("config", exc, EXIT_INPUT)
    root = Path(args.root)
    if not root.is_dir():
        return _fail("load", f"{root} is not a directory", EXIT_INPUT)
    folders = sorted(p for p in root.iterdir() if p.is_dir())
    if not folders:
        return _fail("load", f"{root} holds no subfolders to process", EXIT_INPUT)
    out_dir = Path(args.out) if args.out else Path("fingerprints")
    work = []
    for folder in folders:
        os.makedirs(out_dir / folder.name, exist_ok=True)
        for wav in sorted(p for p in folder.iterdir() if p.suffix.lower() == ".wav"):
            out_path = out_dir / folder.name / (wav.stem + ".fingerprint." + args.format)
            work.append((folder.name, str(wav), str(out_path), params, config, args.format))

    if jobs == 1 or len(work) <= 1:
        results = [_process_wav(job) for job in work]
    else:
        chunk = max(1, len(work) // (jobs * 4))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_process_wav, work, chunksize=chunk))

    durations = {p.name: [] for p in folders}
    n_failed = 0
    for folder, wav_path, elapsed, _n_peaks, error in results:
        if error is None:
            durations[folder].append(elapsed)
        else:
            n_failed += 1
            print(f"failed {wav_path}: {error}", file=sys.stderr)

    rows = [TimingStats.from_durations(p.name, durations[p.name]) for p in folders]
    stats_path = out_dir / "stats.csv"
    write_stats_csv(rows, stats_path)
    print(TABLE_HEADER)
    for row in rows:
        print(table_row(row))
    print(f"processed={len(work) - n_failed} failed={n_failed} stats={stats_path}")
    if work and n_failed == len(work):
        return _fail("batch", "every file failed", EXIT_PROCESSING)
    return EXIT_OK


# --------------------------------------------------------------------------
# aggregate


def cmd_aggregate(args) -> int:
    paths = sorted({p for pattern in args.inputs for p in glob.glob(pattern)})
    if not paths:
        return _fail("load", f"no files match {' '.join(args.inputs)}", EXIT_INPUT)
    masks = []
    for path in paths:
        if not path.endswith(".json"):
            return _fail(
                "load",
                f"{path}: aggregation needs JSON fingerprints "
                "(bare CSV carries no source geometry)",
                EXIT_INPUT,
            )
        try:
            masks.append(fingerprint_to_mask(parse_fingerprint_json(Path(path).read_text())))
        except (ParseError, OSError) as exc:
            return _fail("parse", f"{path}: {exc}", EXIT_INPUT)
    if not args.crop_to_min:
        for path, mask in zip(paths, masks):
            if mask.shape != masks[0].shape:
                return _fail(
                    "aggregate",
                    f"{path} has mask shape {mask.shape}, expected {masks[0].shape} "
                    f"(from {paths[0]}); pass --crop-to-min to crop instead",
                    EXIT_INPUT,
                )
    try:
        cf = aggregate_class(masks, label=args.label, crop_to_min=args.crop_to_min)
    except (ShapeMismatchError, EmptyClassError) as exc:
        return _fail("aggregate", exc, EXIT_INPUT)
    out_dir = Path(args.out) if args.out else Path(".")
    os.makedirs(out_dir, exist_ok=True)
    counts_path = out_dir / f"{args.label}.counts.csv"
    image_path = out_dir / f"{args.label}.pgm"
    write_counts_csv(cf, counts_path)
    render_constellation(cf.counts, image_path)
    print(
        f"members={cf.n_members} shape={cf.shape[0]}x{cf.shape[1]} "
        f"max_count={int(cf.counts.max())} counts={counts_path} image={image_path}"
    )
    return EXIT_OK


# --------------------------------------------------------------------------
# render


def cmd_render(args) -> int:
    path = Path(args.input)
    try:
        if path.suffix == ".json":
            matrix = fingerprint_to_mask(parse_fingerprint_json(path.read_text())).bits
        elif path.suffix == ".csv":
            matrix = read_counts_csv(path)
        else:
            return _fail(
                "load",
                f"{path}: expected a .json fingerprint or a .csv count matrix",
                EXIT_INPUT,
            )
    except FileNotFoundError as exc:
        return _fail("load", exc, EXIT_INPUT)
    except (ParseError, ValueError, OSError) as exc:
        return _fail("parse", f"{path}: {exc}", EXIT_INPUT)
    out_path = args.out or str(path.with_suffix(".pgm"))
    render_constellation(matrix, out_path)
    print(f"image={out_path}")
    return EXIT_OK


# --------------------------------------------------------------------------
# synth


def cmd_synth(args) -> int:
    try:
        manifest = generate_dataset(
            args.out_dir,
            n_folders=args.folders,
            n_files=args.files,
            duration_s=args.duration,
            sample_rate=args.rate,
            seed=args.seed,
        )
    except InvalidParamsError as exc:
        return _fail("config", exc, EXIT_INPUT)
    print(f"folders={args.folders} files_per_folder={args.files} manifest={manifest}")
    return EXIT_OK


# --------------------------------------------------------------------------
# parser


def _add_analysis_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--nfft", type=int, default=1024, help="frame length (default 1024)")
    sub.add_argument("--noverlap", type=int, default=0, help="frame overlap (default 0)")
    sub.add_argument(
        "--window", choices=sorted(WINDOWS), default="hamming",
        help="analysis window (default hamming)",
    )
    sub.add_argument(
        "--fraction", type=float, default=1.0 / 3.0,
        help="band window fraction in (0, 1] (default 1/3)",
    )
    sub.add_argument(
        "--condition", type=int, choices=(0, 1, 2), default=2,
        help="0 time-axis peaks, 1 frequency-axis, 2 both (default 2)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spectromap",
        description="Constellation-map audio fingerprinting over STFT spectrograms.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    fp = sub.add_parser("fingerprint", help="fingerprint a single WAV file")
    fp.add_argument("input", help="path to a WAV file")
    _add_analysis_flags(fp)
    fp.add_argument("--format", choices=("csv", "json"), default="csv")
    fp.add_argument("--out", default=None, help="output file or directory (default: next to the input)")
    fp.add_argument(
        "--export-spectrogram", metavar="PATH", default=None,
        help="also write the dB spectrogram matrix as CSV",
    )
    fp.set_defaults(func=cmd_fingerprint)

    batch = sub.add_parser(
        "batch",
        help="fingerprint every WAV under the subfolders of a root directory",
    )
    batch.add_argument("root", help="directory whose subfolders hold WAV files")
    _add_analysis_flags(batch)
    batch.add_argument("--format", choices=("csv", "json"), default="csv")
    batch.add_argument("--out", default=None, help="output directory (default: ./fingerprints)")
    batch.add_argument(
        "--jobs", type=int, default=None,
        help=f"parallel workers (default: ${JOBS_ENV} or the CPU count)",
    )
    batch.set_defaults(func=cmd_batch)

    agg = sub.add_parser("aggregate", help="sum fingerprint masks into a class count matrix")
    agg.add_argument("inputs", nargs="+", help="JSON fingerprint files or glob patterns")
    agg.add_argument("--label", default="class", help="class label used for output names")
    agg.add_argument("--out", default=None, help="output directory (default: .)")
    agg.add_argument(
        "--crop-to-min", action="store_true",
        help="crop differing mask shapes to the common minimum instead of failing",
    )
    agg.set_defaults(func=cmd_aggregate)

    render = sub.add_parser("render", help="render a mask or count matrix to a PGM image")
    render.add_argument("input", help="a .json fingerprint or a .csv count matrix")
    render.add_argument("--out", default=None, help="output image path (default: input with .pgm)")
    render.set_defaults(func=cmd_render)

    synth = sub.add_parser("synth", help="generate a seeded synthetic WAV dataset")
    synth.add_argument("out_dir", help="directory to create the dataset under")
    synth.add_argument("--folders", type=int, default=5)
    synth.add_argument("--files", type=int, default=80)
    synth.add_argument("--duration", type=float, default=5.0, help="clip length in seconds")
    synth.add_argument("--rate", type=int, default=22050, help="sample rate in Hz")
    synth.add_argument("--seed", type=int, default=0)
    synth.set_defaults(func=cmd_synth)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SpectromapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PROCESSING
    except KeyboardInterrupt:
        return 130


if __name__ == "__main__":
    sys.exit(main())

"""Dataset ingestion: IDX image files, TSV text corpora, synthetic blobs.

IDX files may be gzip-compressed (detected by magic, not by extension).
Text is normalized onto the 27-symbol alphabet a-z plus space before any
n-gram processing.
"""

import gzip
import os
import re
import struct
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ALPHABET", "ImageDataset", "TextDataset", "WrongMagicError",
    "TruncatedFileError", "CountMismatchError", "load_idx_images",
    "load_idx_labels", "write_idx_images", "write_idx_labels",
    "load_image_dataset", "normalize_text", "load_tsv_corpus", "synth_blobs",
    "data_root",
]

ALPHABET = "abcdefghijklmnopqrstuvwxyz "

_IDX_IMAGES_MAGIC = 0x00000803
_IDX_LABELS_MAGIC = 0x00000801


class WrongMagicError(ValueError):
    """File did not start with the expected IDX magic number."""


class TruncatedFileError(ValueError):
    """File ended before the payload promised by its header."""


class CountMismatchError(ValueError):
    """Paired image and label files disagree on the sample count."""


@dataclass
class ImageDataset:
    images: np.ndarray   # (n, rows, cols) uint8
    labels: np.ndarray   # (n,) uint8
    split: str = ""

    def __len__(self):
        return self.images.shape[0]


@dataclass
class TextDataset:
    samples: list        # (label, normalized text) pairs
    alphabet: str = ALPHABET

    def __len__(self):
        return len(self.samples)

    def labels(self):
        return sorted({lab for lab, _ in self.samples})


def _read_bytes(path):
    with open(path, "rb") as fh:
        head = fh.read(2)
        fh.seek(0)
        if head == b"\x1f\x8b":
            with gzip.open(fh) as gz:
                return gz.read()
        return fh.read()


def load_idx_images(path):
    """Parse a big-endian IDX image file into an (n, rows, cols) array."""
    blob = _read_bytes(path)
    if len(blob) < 16:
        raise TruncatedFileError(f"{path}: header needs 16 bytes, "
                                 f"got {len(blob)}")
    magic, n, rows, cols = struct.unpack(">IIII", blob[:16])
    if magic != _IDX_IMAGES_MAGIC:
        raise WrongMagicError(
            f"{path}: expected magic {_IDX_IMAGES_MAGIC:#010x}, "
            f"got {magic:#010x}")
    if rows < 1 or cols < 1:
        raise TruncatedFileError(f"{path}: empty image geometry "
                                 f"{rows}x{cols}")
    need = 16 + n * rows * cols
    if len(blob) < need:
        raise TruncatedFileError(
            f"{path}: payload needs {need} bytes, got {len(blob)}")
    pixels = np.frombuffer(blob, dtype=np.uint8, count=n * rows * cols,
                           offset=16)
    return pixels.reshape(n, rows, cols).copy()


def load_idx_labels(path):
    """Parse a big-endian IDX label file into an (n,) array."""
    blob = _read_bytes(path)
    if len(blob) < 8:
        raise TruncatedFileError(f"{path}: header needs 8 bytes, "
                                 f"got {len(blob)}")
    magic, n = struct.unpack(">II", blob[:8])
    if magic != _IDX_LABELS_MAGIC:
        raise WrongMagicError(
            f"{path}: expected magic {_IDX_LABELS_MAGIC:#010x}, "
            f"got {magic:#010x}")
    if len(blob) < 8 + n:
        raise TruncatedFileError(
            f"{path}: payload needs {8 + n} bytes, got {len(blob)}")
    return np.frombuffer(blob, dtype=np.uint8, count=n, offset=8).copy()


def write_idx_images(images, path):
    images = np.asarray(images, dtype=np.uint8)
    n, rows, cols = images.shape
    with open(path, "wb") as fh:
        fh.write(struct.pack(">IIII", _IDX_IMAGES_MAGIC, n, rows, cols))
        fh.write(images.tobytes())


def write_idx_labels(labels, path):
    labels = np.asarray(labels, dtype=np.uint8)
    with open(path, "wb") as fh:
        fh.write(struct.pack(">II", _IDX_LABELS_MAGIC, labels.shape[0]))
        fh.write(labels.tobytes())


def load_image_dataset(images_path, labels_path, split=""):
    """Load a paired image/label IDX set, checking the counts agree."""
    images = load_idx_images(images_path)
    labels = load_idx_labels(labels_path)
    if images.shape[0] != labels.shape[0]:
        raise CountMismatchError(
            f"{images.shape[0]} images vs {labels.shape[0]} labels")
    return ImageDataset(images, labels, split)


def normalize_text(raw):
    """Lowercase, map every run outside a-z to one space, trim the ends.

    Idempotent: normalizing twice equals normalizing once.
    """
    return re.sub("[^a-z]+", " ", raw.lower()).strip()


def load_tsv_corpus(path):
    """Read `label<TAB>text` lines into a normalized TextDataset.

    Blank lines are skipped; lines without a tab raise with their line
    number; samples whose text normalizes to nothing are dropped so the
    dataset never contains empty strings.
    """
    samples = []
    blob = _read_bytes(path).decode("utf-8")
    for lineno, line in enumerate(blob.splitlines(), start=1):
        if not line.strip():
            continue
        if "\t" not in line:
            raise ValueError(f"{path}:{lineno}: expected label<TAB>text")
        label, text = line.split("\t", 1)
        text = normalize_text(text)
        if text:
            samples.append((label, text))
    return TextDataset(samples)


def synth_blobs(n_classes, n_per_class, features, separation, seed=None):
    """Gaussian blobs with pairwise class-mean distance = separation.

    Means sit at (separation / sqrt(2)) * e_k on orthogonal axes, so every
    pair of class means is exactly `separation` apart; unit per-axis noise.
    Returns (X, y) with X shape (n_classes * n_per_class, features).
    """
    if features < n_classes:
        raise ValueError(
            f"need features >= n_classes for orthogonal means, "
            f"got {features} < {n_classes}")
    rng = np.random.default_rng(seed)
    scale = separation / np.sqrt(2.0)
    xs, ys = [], []
    for c in range(n_classes):
        mean = np.zeros(features)
        mean[c] = scale
        xs.append(mean + rng.standard_normal((n_per_class, features)))
        ys.append(np.full(n_per_class, c, dtype=np.int64))
    return np.concatenate(xs), np.concatenate(ys)


def data_root(explicit=None):
    """Dataset root: explicit argument, HDSEED_DATA_DIR, else ./data."""
    if explicit:
        return explicit
    return os.environ.get("HDSEED_DATA_DIR", "data")

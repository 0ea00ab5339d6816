"""Single-pass prototype classifier over hypervectors.

Training accumulates each encoded sample into its label's signed counter
vector; the binarized counters are the class hypervectors.  Inference picks
the class with the highest similarity (hamming, bipolar cosine, or bipolar
dot; all three rank identically on binary vectors).  Optional retraining
nudges the counters of misclassified samples by a fixed step of one.
"""

import struct

import numpy as np

from .hypervector import (
    Hypervector, Accumulator, accumulate, binarize, default_tie_break,
)

__all__ = [
    "ClassModel", "train_single_pass", "classify", "retrain_epoch",
    "evaluate", "save_model", "load_model", "METRICS",
]

METRICS = ("hamming", "cosine", "dot")

_MODEL_MAGIC = b"HDMD1"


class ClassModel:
    """Per-class accumulators plus lazily binarized class hypervectors."""

    def __init__(self, dim, tie_break=None, metric="hamming",
                 raw_scores=False):
        if metric not in METRICS:
            raise ValueError(f"metric must be one of {METRICS}, got {metric}")
        self.dim = dim
        self.tie_break = tie_break if tie_break is not None \
            else default_tie_break(dim)
        if self.tie_break.dim != dim:
            raise ValueError("tie-break dimension mismatch")
        self.metric = metric
        self.raw_scores = raw_scores
        self.classes = {}
        self._binarized = None
        self._matrix = None

    def labels(self):
        return sorted(self.classes)

    def add_sample(self, hv, label, sign=1):
        if hv.dim != self.dim:
            raise ValueError(f"dimension mismatch: {hv.dim} != {self.dim}")
        if label not in self.classes:
            self.classes[label] = Accumulator(self.dim)
        accumulate(self.classes[label], hv, sign)
        self._binarized = None
        self._matrix = None

    def binarized(self):
        """label -> class hypervector, regenerated after any mutation."""
        if self._binarized is None:
            self._binarized = {lab: binarize(acc, self.tie_break)
                               for lab, acc in self.classes.items()}
        return self._binarized

    def _packed(self):
        """(labels, packed class-HV words, raw counts) in sorted label order."""
        if self._matrix is None:
            labs = self.labels()
            binar = self.binarized()
            words = np.stack([binar[lab].words for lab in labs])
            counts = np.stack([self.classes[lab].counts for lab in labs])
            self._matrix = (labs, words, counts)
        return self._matrix


def train_single_pass(encoded, dim=None, tie_break=None, metric="hamming",
                      raw_scores=False):
    """Build a ClassModel by accumulating (hypervector, label) pairs once."""
    model = None
    for hv, label in encoded:
        if model is None:
            model = ClassModel(dim or hv.dim, tie_break, metric, raw_scores)
        model.add_sample(hv, label, 1)
    if model is None:
        raise ValueError("empty training stream")
    return model


def _score_block(model, query_bits):
    """Similarity of each query row against every class, shape
    (n, n_classes); higher is better under every metric."""
    labs, words, counts = model._packed()
    n, dim = query_bits.shape
    if model.raw_scores:
        bipolar = 2.0 * query_bits - 1.0
        norms = np.linalg.norm(counts, axis=1)
        norms[norms == 0.0] = 1.0
        return (bipolar @ counts.T) / (norms[None, :] * np.sqrt(dim))
    padded = np.zeros((n, words.shape[1] * 64), dtype=np.uint8)
    padded[:, :dim] = query_bits
    qwords = np.packbits(padded, axis=1, bitorder="little").view(np.uint64)
    dist = np.zeros((n, words.shape[0]), dtype=np.int64)
    for c in range(words.shape[0]):
        dist[:, c] = np.bitwise_count(qwords ^ words[c][None, :]).sum(axis=1)
    if model.metric == "hamming":
        return 1.0 - dist / dim
    if model.metric == "dot":
        return (dim - 2 * dist).astype(np.float64)
    return (dim - 2.0 * dist) / dim  # cosine


def classify(model, query):
    """Most similar class and its score; score ties break toward the
    lexicographically smallest label."""
    if not model.classes:
        raise ValueError("model has no classes")
    if query.dim != model.dim:
        raise ValueError(f"dimension mismatch: {query.dim} != {model.dim}")
    scores = _score_block(model, query.to_bits()[None, :])[0]
    labs = model._packed()[0]
    best = int(np.argmax(scores))  # argmax takes the first (sorted) maximum
    return labs[best], float(scores[best])


def retrain_epoch(model, encoded, refresh="online"):
    """One fixed-step correction pass: every misclassified sample adds +1
    into its true class and -1 into the predicted class.

    refresh="online" re-binarizes after each update; refresh="epoch" keeps
    the epoch-start class vectors for all predictions and re-binarizes once.
    """
    if refresh not in ("online", "epoch"):
        raise ValueError(f"unknown refresh mode: {refresh}")
    errors = 0
    if refresh == "epoch":
        frozen = model._packed()

    for hv, label in encoded:
        if label not in model.classes:
            raise ValueError(f"unknown label in retrain stream: {label!r}")
        if refresh == "online":
            pred, _ = classify(model, hv)
        else:
            labs, words, counts = frozen
            bits = hv.to_bits()[None, :]
            saved = model._matrix
            model._matrix = frozen
            scores = _score_block(model, bits)[0]
            model._matrix = saved
            pred = labs[int(np.argmax(scores))]
        if pred != label:
            errors += 1
            model.add_sample(hv, label, 1)
            model.add_sample(hv, pred, -1)
    return model, errors


def evaluate(model, encoded):
    """Accuracy and confusion counts over an encoded test stream."""
    pairs = list(encoded)
    if not pairs:
        raise ValueError("empty evaluation stream")
    labs = model._packed()[0]
    index = {lab: i for i, lab in enumerate(labs)}
    confusion = np.zeros((len(labs), len(labs)), dtype=np.int64)
    correct = 0
    chunk = 1024
    for start in range(0, len(pairs), chunk):
        part = pairs[start:start + chunk]
        bits = np.stack([hv.to_bits() for hv, _ in part])
        scores = _score_block(model, bits)
        preds = np.argmax(scores, axis=1)
        for (hv, label), p in zip(part, preds):
            if label not in index:
                raise ValueError(f"unknown label in test stream: {label!r}")
            confusion[index[label], p] += 1
            correct += int(labs[p] == label)
    return correct / len(pairs), {"labels": labs, "matrix": confusion}


# ---------------------------------------------------------------------------
# Versioned binary serialization

_METRIC_CODE = {m: i for i, m in enumerate(METRICS)}


def _write_label(fh, label):
    if isinstance(label, (int, np.integer)):
        fh.write(struct.pack("<Bq", 0, int(label)))
    else:
        raw = str(label).encode("utf-8")
        fh.write(struct.pack("<BH", 1, len(raw)))
        fh.write(raw)


def _read_label(blob, off):
    tag = blob[off]
    if tag == 0:
        return int(struct.unpack_from("<q", blob, off + 1)[0]), off + 9
    ln = struct.unpack_from("<H", blob, off + 1)[0]
    return blob[off + 3:off + 3 + ln].decode("utf-8"), off + 3 + ln


def save_model(model, path):
    """Write magic HDMD1, u32le dim, u8 metric, u32le class count, the
    tie-break words, then per class the label and int32le accumulator."""
    with open(path, "wb") as fh:
        fh.write(_MODEL_MAGIC)
        fh.write(struct.pack("<IBI", model.dim, _METRIC_CODE[model.metric],
                             len(model.classes)))
        fh.write(model.tie_break.words.astype("<u8").tobytes())
        for lab in model.labels():
            _write_label(fh, lab)
            fh.write(model.classes[lab].counts.astype("<i4").tobytes())


def load_model(path):
    with open(path, "rb") as fh:
        blob = fh.read()
    if blob[:5] != _MODEL_MAGIC:
        raise ValueError(f"not an HDMD1 model file: {path}")
    dim, mcode, count = struct.unpack_from("<IBI", blob, 5)
    off = 14
    words = (dim + 63) // 64
    tb = Hypervector(dim, np.frombuffer(blob, dtype="<u8", count=words,
                                        offset=off).astype(np.uint64))
    off += words * 8
    model = ClassModel(dim, tb, METRICS[mcode])
    for _ in range(count):
        lab, off = _read_label(blob, off)
        counts = np.frombuffer(blob, dtype="<i4", count=dim, offset=off)
        off += dim * 4
        model.classes[lab] = Accumulator(dim, counts.astype(np.int64))
    model._binarized = None
    model._matrix = None
    return model

"""Benchmark drivers: wire sources -> encoders -> model -> report.

Three tasks: `mnist` (record-encoded pixel images), `lang` (n-gram encoded
character streams), `synth` (RBF-encoded Gaussian blobs).  Every run emits
a BenchReport with accuracy over iterations, a confusion matrix, item
memory orthogonality stats, the source's 2-D centered-L2 discrepancy, and
per-phase wall-clock times.

The image encoder exploits that record encoding with threshold level codes
reduces per bit to popcounts of (pixel >= t_j) XOR position bits, computed
with one histogram pass plus one matrix product per distinct threshold;
full MNIST at D=8192 encodes in about a minute on one core.
"""

import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, asdict

import numpy as np

from .data import (
    ALPHABET, data_root, load_image_dataset, load_tsv_corpus, synth_blobs,
)
from .encode import (
    gaussian_projection, item_memory_from_codes, item_memory_from_sequence,
    item_memory_random, level_memory_flip_chain, rbf_encode,
)
from .hypervector import default_tie_break
from .model import ClassModel, Accumulator, _score_block
from .sequences import (
    CODE_KINDS, SEQUENCE_KINDS, centered_l2_discrepancy, family_sources,
    point_set, source_values,
)

__all__ = ["RunConfig", "BenchReport", "run_mnist", "run_lang", "run_synth",
           "run", "report_orthogonality", "report_discrepancy",
           "emit_report", "SCHEMA_VERSION"]

SCHEMA_VERSION = 1

TASKS = ("mnist", "lang", "synth")
ENCODERS = ("record", "ngram", "levelsum", "fracpow", "rbf", "thermometer")
SOURCE_KINDS = SEQUENCE_KINDS + CODE_KINDS


@dataclass
class RunConfig:
    """Validated bundle of every knob a benchmark run accepts."""
    task: str = "mnist"
    seq: str = "sobol"
    encoder: str = ""         # empty -> task default
    dim: int = 1024
    levels: int = 256
    ngram: int = 4
    seed: int = 1
    iterations: int = 1
    epochs: int = 0
    train_limit: int = 0      # 0 -> no cap
    test_limit: int = 0
    metric: str = "hamming"
    pos_encoder: str = "item"
    threads: int = 1
    output: str = "json"
    out: str = ""
    data_dir: str = ""
    raw_scores: bool = False

    def __post_init__(self):
        defaults = {"mnist": "record", "lang": "ngram", "synth": "rbf"}
        if self.task not in TASKS:
            raise ValueError(f"task must be one of {TASKS}, got {self.task}")
        if not self.encoder:
            self.encoder = defaults[self.task]
        if self.encoder not in ENCODERS:
            raise ValueError(f"unknown encoder: {self.encoder}")
        if self.seq not in SOURCE_KINDS:
            raise ValueError(f"unknown sequence kind: {self.seq}")
        if self.dim < 64:
            raise ValueError(f"dim must be >= 64, got {self.dim}")
        if self.ngram < 1:
            raise ValueError(f"ngram must be >= 1, got {self.ngram}")
        if self.iterations < 1:
            raise ValueError(f"iterations must be >= 1, got {self.iterations}")
        if self.levels < 2:
            raise ValueError(f"levels must be >= 2, got {self.levels}")
        if self.metric not in ("hamming", "cosine", "dot"):
            raise ValueError(f"unknown metric: {self.metric}")
        if self.pos_encoder not in ("item", "fracpow"):
            raise ValueError(f"unknown pos encoder: {self.pos_encoder}")
        if self.threads < 1:
            raise ValueError(f"threads must be >= 1, got {self.threads}")
        if self.output not in ("json", "csv"):
            raise ValueError(f"output must be json or csv, got {self.output}")

    def is_deterministic_source(self):
        return self.seq not in ("random", "latin")


@dataclass
class BenchReport:
    config: dict
    accuracy_mean: float
    accuracy_std: float
    accuracy_runs: list
    confusion_labels: list
    confusion_matrix: list
    orthogonality: dict
    discrepancy: dict
    timing: dict

    def to_dict(self):
        return {
            "schema_version": SCHEMA_VERSION,
            "config": self.config,
            "accuracy": {
                "mean": self.accuracy_mean,
                "std": self.accuracy_std,
                "runs": self.accuracy_runs,
            },
            "confusion": {
                "labels": self.confusion_labels,
                "matrix": self.confusion_matrix,
            },
            "orthogonality": self.orthogonality,
            "discrepancy": self.discrepancy,
            "timing": self.timing,
        }


# ---------------------------------------------------------------------------
# Shared helpers

def _tie_bits(dim):
    return default_tie_break(dim).to_bits()


def _iter_seed(cfg, it):
    return cfg.seed + 7919 * it


def _pack_rows(bits):
    """Pack an (n, dim) 0/1 matrix into (n, ceil(dim/64)) uint64 words."""
    n, dim = bits.shape
    pad = (-dim) % 64
    if pad:
        bits = np.concatenate(
            [bits, np.zeros((n, pad), dtype=np.uint8)], axis=1)
    return np.packbits(bits, axis=1, bitorder="little").view(np.uint64)


def _position_bits(cfg, count, seed):
    """(count, dim) position bit rows plus the level threshold values in
    [0,1) (or None when levels come from a flip chain)."""
    dim = cfg.dim
    if cfg.seq in CODE_KINDS:
        mem = item_memory_from_codes(range(count), dim, cfg.seq)
        return np.ascontiguousarray(mem.bits()), None
    sources = family_sources(cfg.seq, count + 1, n=dim, seed=seed)
    pos = np.empty((count, dim), dtype=np.uint8)
    for k in range(count):
        pos[k] = source_values(sources[k], dim) < 0.5
    level_values = source_values(sources[count], dim)
    return pos, level_values


def _fracpow_position_bits(cfg, rows, cols, seed):
    """Grid-cell positions: P(x, y) = rot_x(A) XOR rot_y(B)."""
    rng = np.random.default_rng(seed)
    a = rng.integers(0, 2, size=cfg.dim, dtype=np.uint8)
    b = rng.integers(0, 2, size=cfg.dim, dtype=np.uint8)
    a_rolls = np.stack([np.roll(a, x) for x in range(cols)])
    b_rolls = np.stack([np.roll(b, y) for y in range(rows)])
    ys, xs = np.divmod(np.arange(rows * cols), cols)
    return a_rolls[xs] ^ b_rolls[ys]


def _parallel_batches(n, threads, fn):
    """Run fn(start, stop) over contiguous batches, gathering by index."""
    step = max(1024, -(-n // max(threads, 1)))
    spans = [(s, min(s + step, n)) for s in range(0, n, step)]
    if threads <= 1 or len(spans) == 1:
        for s, e in spans:
            fn(s, e)
        return
    with ThreadPoolExecutor(max_workers=threads) as pool:
        list(pool.map(lambda se: fn(*se), spans))


# ---------------------------------------------------------------------------
# MNIST record pipeline

def _encode_threshold_record(x, tvec, pos_bits, tie, threads=1, batch=2048):
    """Record-encode images against threshold level codes.

    Bit j of the record for image row x is the majority over pixels i of
    (x_i >= t_j) XOR pos_bits[i, j].  The popcount per bit splits into a
    histogram suffix sum plus one (x >= t) GEMM per distinct threshold.
    """
    n_img, n_pix = x.shape
    dim = tvec.size
    posf = pos_bits.astype(np.float32)
    psum = posf.sum(axis=0)
    order = np.argsort(tvec, kind="stable")
    tsorted = tvec[order]
    bounds = np.searchsorted(tsorted, np.arange(258))
    uniq = np.unique(tsorted)
    out = np.empty((n_img, dim), dtype=np.uint8)

    def encode_span(lo_img, hi_img):
        for s in range(lo_img, hi_img, batch):
            xb = x[s:s + batch]
            nb = xb.shape[0]
            offs = (np.arange(nb) * 256)[:, None]
            hist = np.bincount((offs + xb.astype(np.intp)).ravel(),
                               minlength=nb * 256).reshape(nb, 256)
            suff = np.cumsum(hist[:, ::-1], axis=1)[:, ::-1]
            suff = np.concatenate(
                [suff, np.zeros((nb, 1), suff.dtype)], axis=1)
            lsum = suff[:, np.minimum(tvec, 256)].astype(np.float32)
            cross = np.empty((nb, dim), dtype=np.float32)
            for t in uniq:
                cols = order[bounds[t]:bounds[t + 1]]
                cross[:, cols] = (xb >= t).astype(np.float32) @ posf[:, cols]
            ones2 = (lsum + psum[None, :] - 2.0 * cross) * 2.0
            out[s:s + nb] = (ones2 > n_pix) | ((ones2 == n_pix)
                                               & tie[None, :].astype(bool))

    _parallel_batches(n_img, threads, encode_span)
    return out


def _encode_table_record(x, level_bits, pos_bits, tie, levels, threads=1,
                         batch=16):
    """Record-encode images against an arbitrary level table (flip chain).

    Batch is small: each image expands to an (n_pix, dim) byte matrix.
    """
    n_img, n_pix = x.shape
    q = np.minimum((x.astype(np.int64) * levels) // 256, levels - 1)
    out = np.empty((n_img, level_bits.shape[1]), dtype=np.uint8)

    def encode_span(lo_img, hi_img):
        for s in range(lo_img, hi_img, batch):
            qb = q[s:s + batch]
            bound = level_bits[qb] ^ pos_bits[None, :, :]
            ones2 = bound.sum(axis=1, dtype=np.int64) * 2
            out[s:s + qb.shape[0]] = (ones2 > n_pix) | (
                (ones2 == n_pix) & tie[None, :].astype(bool))

    _parallel_batches(n_img, threads, encode_span)
    return out


def _levelsum_tvec(dim):
    """Thermometer ramp thresholds: bit j set iff value > (j + 0.5) / dim."""
    return np.ceil((np.arange(dim) + 0.5) * 255.0 / dim).astype(np.int64)


def _load_mnist(cfg):
    root = os.path.join(data_root(cfg.data_dir), "mnist")

    def find(stem):
        for name in (stem, stem + ".gz"):
            p = os.path.join(root, name)
            if os.path.exists(p):
                return p
        raise FileNotFoundError(
            f"missing dataset file {stem}[.gz] under {root} "
            f"(set HDSEED_DATA_DIR or --data-dir)")

    train = load_image_dataset(find("train-images-idx3-ubyte"),
                               find("train-labels-idx1-ubyte"), "train")
    test = load_image_dataset(find("t10k-images-idx3-ubyte"),
                              find("t10k-labels-idx1-ubyte"), "test")
    return train, test


def _counts_to_model(dim, labels, bit_sums, counts_per_class, metric,
                     raw_scores):
    """ClassModel whose accumulators hold sum over samples of (2 bit - 1)."""
    model = ClassModel(dim, metric=metric, raw_scores=raw_scores)
    for lab, ones, n in zip(labels, bit_sums, counts_per_class):
        model.classes[lab] = Accumulator(
            dim, 2 * ones.astype(np.int64) - int(n))
    model._binarized = None
    model._matrix = None
    return model


def _eval_bits(model, bits, labels, chunk=2048):
    """Vectorized evaluate over encoded bit rows; accuracy + confusion.

    `labels` must already live in the model's label space.
    """
    labs = model._packed()[0]
    index = {lab: i for i, lab in enumerate(labs)}
    confusion = np.zeros((len(labs), len(labs)), dtype=np.int64)
    correct = 0
    for s in range(0, bits.shape[0], chunk):
        scores = _score_block(model, bits[s:s + chunk])
        preds = np.argmax(scores, axis=1)
        for lab, p in zip(labels[s:s + chunk], preds):
            confusion[index[lab], p] += 1
            correct += int(labs[p] == lab)
    return correct / bits.shape[0], confusion, labs


def _retrain_bits(model, bits, labels, epochs, tie):
    """Fixed-step retraining over encoded rows, online refresh per sample."""
    for _ in range(epochs):
        errors = 0
        for i in range(bits.shape[0]):
            scores = _score_block(model, bits[i:i + 1])[0]
            labs = model._packed()[0]
            pred = labs[int(np.argmax(scores))]
            truth = labels[i]
            if pred != truth:
                errors += 1
                row = bits[i].astype(np.int64) * 2 - 1
                model.classes[truth].counts += row
                model.classes[pred].counts -= row
                model._binarized = None
                model._matrix = None
        if errors == 0:
            break
    return model


def run_mnist(cfg):
    """Record-encoded image classification over the configured source."""
    t_load = time.perf_counter()
    train, test = _load_mnist(cfg)
    xtr = train.images.reshape(len(train), -1)
    ytr = train.labels
    xte = test.images.reshape(len(test), -1)
    yte = test.labels
    if cfg.train_limit:
        xtr, ytr = xtr[:cfg.train_limit], ytr[:cfg.train_limit]
    if cfg.test_limit:
        xte, yte = xte[:cfg.test_limit], yte[:cfg.test_limit]
    n_pix = xtr.shape[1]
    rows, cols = train.images.shape[1], train.images.shape[2]
    tie = _tie_bits(cfg.dim)

    accs, timing = [], {"encode_s": 0.0, "train_s": 0.0, "eval_s": 0.0}
    ortho = confusion = labs = None
    for it in range(cfg.iterations):
        seed = _iter_seed(cfg, it)
        t0 = time.perf_counter()
        if cfg.seq == "random":
            rng = np.random.default_rng(seed)
            pos = rng.integers(0, 2, size=(n_pix, cfg.dim), dtype=np.uint8)
            level_values = rng.random(cfg.dim)
        else:
            pos, level_values = _position_bits(cfg, n_pix, seed)
        if cfg.pos_encoder == "fracpow" or cfg.encoder == "fracpow":
            pos = _fracpow_position_bits(cfg, rows, cols, seed)
        if cfg.encoder == "levelsum":
            pos = np.zeros_like(pos)  # no binding: bundle levels alone

        if cfg.encoder == "thermometer":
            tvec = _levelsum_tvec(cfg.dim)
            btr = _encode_threshold_record(xtr, tvec, pos, tie, cfg.threads)
            bte = _encode_threshold_record(xte, tvec, pos, tie, cfg.threads)
        elif level_values is not None:
            tvec = np.floor(255.0 * level_values).astype(np.int64) + 1
            btr = _encode_threshold_record(xtr, tvec, pos, tie, cfg.threads)
            bte = _encode_threshold_record(xte, tvec, pos, tie, cfg.threads)
        else:
            chain = level_memory_flip_chain(cfg.dim, cfg.levels, seed)
            lbits = np.ascontiguousarray(chain.bits())
            btr = _encode_table_record(xtr, lbits, pos, tie, cfg.levels,
                                       cfg.threads)
            bte = _encode_table_record(xte, lbits, pos, tie, cfg.levels,
                                       cfg.threads)
        t1 = time.perf_counter()

        classes = np.arange(10)
        sums = np.stack([btr[ytr == c].sum(axis=0, dtype=np.int64)
                         for c in classes])
        ns = np.array([(ytr == c).sum() for c in classes])
        model = _counts_to_model(cfg.dim, [int(c) for c in classes], sums,
                                 ns, cfg.metric, cfg.raw_scores)
        if cfg.epochs:
            model = _retrain_bits(model, btr, [int(c) for c in ytr],
                                  cfg.epochs, tie)
        t2 = time.perf_counter()
        acc, confusion, labs = _eval_bits(model, bte, [int(v) for v in yte])
        t3 = time.perf_counter()

        accs.append(acc)
        timing["encode_s"] += t1 - t0
        timing["train_s"] += t2 - t1
        timing["eval_s"] += t3 - t2
        if ortho is None:
            ortho = report_orthogonality(pos)
    timing["load_s"] = time.perf_counter() - t_load \
        - sum(timing.values())
    return _make_report(cfg, accs, confusion, labs, ortho, timing)


# ---------------------------------------------------------------------------
# Language-ID n-gram pipeline

def _letter_memory(cfg, seed):
    symbols = list(ALPHABET)
    if cfg.seq == "random":
        return item_memory_random(symbols, cfg.dim, seed)
    if cfg.seq in CODE_KINDS:
        return item_memory_from_codes(symbols, cfg.dim, cfg.seq)
    sources = family_sources(cfg.seq, len(symbols), n=cfg.dim, seed=seed)
    return item_memory_from_sequence(symbols, cfg.dim, sources)


def _split_corpus(dataset, train_cap, test_cap):
    """Deterministic per-language split: every fifth line is test."""
    by_lang = {}
    for lab, text in dataset.samples:
        by_lang.setdefault(lab, []).append(text)
    train, test = [], []
    for lab in sorted(by_lang):
        lines = by_lang[lab]
        tr = [t for i, t in enumerate(lines) if i % 5 != 4]
        te = [t for i, t in enumerate(lines) if i % 5 == 4]
        train += [(lab, t) for t in tr[:train_cap or 1000]]
        test += [(lab, t) for t in te[:test_cap or 200]]
    return train, test


def _encode_lines(lines, mem_bits, tie, n, char_index):
    """Majority over sliding n-gram XOR codes, one row per line."""
    dim = mem_bits.shape[1]
    tables = [np.roll(mem_bits, k, axis=1) for k in range(n)]
    out = np.empty((len(lines), dim), dtype=np.uint8)
    keep = np.ones(len(lines), dtype=bool)
    for row, text in enumerate(lines):
        idx = np.array([char_index[c] for c in text], dtype=np.intp)
        if idx.size < n:
            keep[row] = False
            continue
        g = tables[0][idx[: idx.size - n + 1]]
        for k in range(1, n):
            g = g ^ tables[k][idx[k: idx.size - n + 1 + k]]
        ones2 = g.sum(axis=0, dtype=np.int64) * 2
        out[row] = (ones2 > g.shape[0]) | ((ones2 == g.shape[0])
                                           & tie.astype(bool))
    return out, keep


def run_lang(cfg):
    """Character n-gram language identification over the desk corpus."""
    t_load = time.perf_counter()
    path = os.path.join(data_root(cfg.data_dir), "lang", "udhr.tsv")
    if not os.path.exists(path):
        raise FileNotFoundError(
            f"missing corpus {path} (set HDSEED_DATA_DIR or --data-dir)")
    dataset = load_tsv_corpus(path)
    train, test = _split_corpus(dataset, cfg.train_limit, cfg.test_limit)
    char_index = {c: i for i, c in enumerate(ALPHABET)}
    tie = _tie_bits(cfg.dim)

    accs, timing = [], {"encode_s": 0.0, "train_s": 0.0, "eval_s": 0.0}
    ortho = confusion = labs = None
    for it in range(cfg.iterations):
        seed = _iter_seed(cfg, it)
        t0 = time.perf_counter()
        mem = _letter_memory(cfg, seed)
        mem_bits = np.ascontiguousarray(mem.bits())
        btr, keep_tr = _encode_lines([t for _, t in train], mem_bits, tie,
                                     cfg.ngram, char_index)
        bte, keep_te = _encode_lines([t for _, t in test], mem_bits, tie,
                                     cfg.ngram, char_index)
        t1 = time.perf_counter()

        langs = sorted({lab for lab, _ in train})
        ytr = np.array([langs.index(lab) for lab, _ in train])
        sums = np.stack([btr[(ytr == i) & keep_tr].sum(axis=0, dtype=np.int64)
                         for i in range(len(langs))])
        ns = np.array([((ytr == i) & keep_tr).sum() for i in range(len(langs))])
        model = _counts_to_model(cfg.dim, langs, sums, ns, cfg.metric,
                                 cfg.raw_scores)
        yte = [lab for (lab, _), k in zip(test, keep_te) if k]
        if cfg.epochs:
            model = _retrain_bits(model, btr[keep_tr],
                                  [langs[i] for i in ytr[keep_tr]],
                                  cfg.epochs, tie)
        t2 = time.perf_counter()
        acc, confusion, labs = _eval_bits(model, bte[keep_te], yte)
        t3 = time.perf_counter()

        accs.append(acc)
        timing["encode_s"] += t1 - t0
        timing["train_s"] += t2 - t1
        timing["eval_s"] += t3 - t2
        if ortho is None:
            ortho = report_orthogonality(mem_bits)
    timing["load_s"] = time.perf_counter() - t_load - sum(timing.values())
    return _make_report(cfg, accs, confusion, labs, ortho, timing)


# ---------------------------------------------------------------------------
# Synthetic RBF pipeline

def run_synth(cfg):
    """End-to-end smoke: Gaussian blobs through the RBF kernel encoder."""
    n_classes, features, separation = 4, 8, 10.0
    n_train = cfg.train_limit or 100
    n_test = cfg.test_limit or 50

    accs, timing = [], {"encode_s": 0.0, "train_s": 0.0, "eval_s": 0.0}
    t_load = time.perf_counter()
    confusion = labs = None
    for it in range(cfg.iterations):
        seed = _iter_seed(cfg, it)
        t0 = time.perf_counter()
        x, y = synth_blobs(n_classes, n_train + n_test, features, separation,
                           seed)
        # kernel width by the half-median-distance heuristic
        sub = x[:: max(1, len(x) // 256)]
        med = np.median(np.linalg.norm(sub[:, None] - sub[None, :], axis=2))
        proj = gaussian_projection(cfg.dim, features, seed, with_phases=True,
                                   bandwidth=max(med, 1e-9) / 2.0)
        encoded = np.stack([rbf_encode(row, proj, "cos").to_bits()
                            for row in x])
        t1 = time.perf_counter()
        per = n_train + n_test
        tr_mask = (np.arange(len(y)) % per) < n_train
        btr, ytr = encoded[tr_mask], y[tr_mask]
        bte, yte = encoded[~tr_mask], y[~tr_mask]
        sums = np.stack([btr[ytr == c].sum(axis=0, dtype=np.int64)
                         for c in range(n_classes)])
        ns = np.array([(ytr == c).sum() for c in range(n_classes)])
        model = _counts_to_model(cfg.dim, list(range(n_classes)), sums, ns,
                                 cfg.metric, cfg.raw_scores)
        if cfg.epochs:
            model = _retrain_bits(model, btr, [int(c) for c in ytr],
                                  cfg.epochs, _tie_bits(cfg.dim))
        t2 = time.perf_counter()
        acc, confusion, labs = _eval_bits(model, bte, [int(v) for v in yte])
        t3 = time.perf_counter()
        accs.append(acc)
        timing["encode_s"] += t1 - t0
        timing["train_s"] += t2 - t1
        timing["eval_s"] += t3 - t2
    timing["load_s"] = time.perf_counter() - t_load - sum(timing.values())
    ortho = {"mean_abs_cosine": None, "max_abs_cosine": None}
    return _make_report(cfg, accs, confusion, labs, ortho, timing)


# ---------------------------------------------------------------------------
# Diagnostics and report emission

def report_orthogonality(memory_bits, max_rows=1024):
    """Mean and max pairwise |bipolar cosine| over item-memory rows."""
    if hasattr(memory_bits, "bits"):
        memory_bits = memory_bits.bits()
    bits = np.asarray(memory_bits, dtype=np.uint8)[:max_rows]
    n, dim = bits.shape
    if n < 2:
        return {"mean_abs_cosine": 0.0, "max_abs_cosine": 0.0}
    packed = _pack_rows(bits)
    total, worst, pairs = 0.0, 0.0, 0
    for i in range(n - 1):
        dists = np.bitwise_count(packed[i + 1:] ^ packed[i][None, :]) \
            .sum(axis=1)
        cos = np.abs(dim - 2.0 * dists) / dim
        total += cos.sum()
        worst = max(worst, float(cos.max()))
        pairs += cos.shape[0]
    return {"mean_abs_cosine": total / pairs, "max_abs_cosine": worst}


def report_discrepancy(kind, n=1024, d=2, seed=1):
    """Centered-L2 discrepancy of the source's first n d-dim points."""
    if kind in CODE_KINDS:
        return None
    pts = point_set(kind, n, d, seed=seed)
    return {"n": n, "d": d, "value": centered_l2_discrepancy(pts)}


def _round_floats(obj, places=6):
    if isinstance(obj, float):
        return round(obj, places)
    if isinstance(obj, dict):
        return {k: _round_floats(v, places) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v, places) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return round(float(obj), places)
    return obj


def _make_report(cfg, accs, confusion, labs, ortho, timing):
    accs = [float(a) for a in accs]
    mean = float(np.mean(accs))
    std = float(np.std(accs))
    disc = report_discrepancy(cfg.seq, n=1024, d=2, seed=cfg.seed)
    return BenchReport(
        config=asdict(cfg),
        accuracy_mean=mean,
        accuracy_std=std,
        accuracy_runs=accs,
        confusion_labels=list(labs) if labs is not None else [],
        confusion_matrix=confusion.tolist() if confusion is not None else [],
        orthogonality=ortho,
        discrepancy=disc,
        timing=timing,
    )


def run(cfg):
    """Dispatch a benchmark run by task."""
    return {"mnist": run_mnist, "lang": run_lang, "synth": run_synth}[cfg.task](cfg)


def emit_report(report, fmt="json", path=None):
    """Serialize a report with stable field order and 6-decimal floats.

    JSON nests the full structure; CSV emits one row per scalar metric with
    the full config echo in fixed leading columns.
    """
    payload = _round_floats(report.to_dict())
    if fmt == "json":
        text = json.dumps(payload, indent=2) + "\n"
    elif fmt == "csv":
        cfg = payload["config"]
        cfg_keys = list(cfg)
        rows = [",".join(cfg_keys + ["metric", "value"])]
        flat = {
            "accuracy_mean": payload["accuracy"]["mean"],
            "accuracy_std": payload["accuracy"]["std"],
            **{f"accuracy_run_{i}": v
               for i, v in enumerate(payload["accuracy"]["runs"])},
            "orthogonality_mean": payload["orthogonality"]["mean_abs_cosine"],
            "orthogonality_max": payload["orthogonality"]["max_abs_cosine"],
            "discrepancy": (payload["discrepancy"] or {}).get("value"),
            **{k: v for k, v in payload["timing"].items()},
        }
        echo = [str(cfg[k]) for k in cfg_keys]
        for name, value in flat.items():
            rows.append(",".join(echo + [name, "" if value is None
                                         else str(value)]))
        text = "\n".join(rows) + "\n"
    else:
        raise ValueError(f"unknown report format: {fmt}")
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text

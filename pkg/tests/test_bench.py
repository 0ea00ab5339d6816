"""Benchmark pipelines: config validation, encoder equivalence oracles,
deterministic reporting, and small end-to-end runs."""

import json
from pathlib import Path

import numpy as np
import pytest

from hdseed import Hypervector, bundle, default_tie_break
from hdseed.bench import (
    BenchReport,
    RunConfig,
    _encode_lines,
    _encode_table_record,
    _encode_threshold_record,
    _split_corpus,
    _tie_bits,
    emit_report,
    report_discrepancy,
    report_orthogonality,
    run,
    run_lang,
    run_mnist,
    run_synth,
)
from hdseed.data import (
    ALPHABET,
    TextDataset,
    write_idx_images,
    write_idx_labels,
)
from hdseed.encode import (
    item_memory_from_codes,
    item_memory_random,
    ngram_encode,
    record_encode,
)

DATA_DIR = str(Path(__file__).resolve().parent.parent / "data")


def masked_json(report):
    """Report JSON with timing zeroed, for byte comparisons."""
    payload = report.to_dict()
    payload["timing"] = {k: 0.0 for k in payload["timing"]}
    return json.dumps(payload, sort_keys=True)


@pytest.fixture(scope="module")
def image_dir(tmp_path_factory):
    """Synthetic two-class image set in the on-disk layout run_mnist expects:
    class 0 lights the left half, class 1 the right half."""
    root = tmp_path_factory.mktemp("imgdata")
    (root / "mnist").mkdir()
    rng = np.random.default_rng(99)

    def make(n):
        labels = (np.arange(n) % 2).astype(np.uint8)
        images = rng.integers(0, 40, size=(n, 8, 8)).astype(np.uint8)
        images[labels == 0, :, :4] += 180
        images[labels == 1, :, 4:] += 180
        return images, labels

    xtr, ytr = make(48)
    xte, yte = make(24)
    write_idx_images(xtr, root / "mnist" / "train-images-idx3-ubyte")
    write_idx_labels(ytr, root / "mnist" / "train-labels-idx1-ubyte")
    write_idx_images(xte, root / "mnist" / "t10k-images-idx3-ubyte")
    write_idx_labels(yte, root / "mnist" / "t10k-labels-idx1-ubyte")
    return str(root)


# ---------------------------------------------------------------------------
# configuration

def test_config_defaults_by_task():
    assert RunConfig(task="mnist").encoder == "record"
    assert RunConfig(task="lang").encoder == "ngram"
    assert RunConfig(task="synth").encoder == "rbf"
    assert RunConfig(task="mnist", encoder="fracpow").encoder == "fracpow"


def test_config_validation_errors():
    bad = [
        {"task": "cifar"},
        {"seq": "perlin"},
        {"encoder": "fourier"},
        {"dim": 32},
        {"ngram": 0},
        {"iterations": 0},
        {"levels": 1},
        {"metric": "euclid"},
        {"pos_encoder": "grid"},
        {"threads": 0},
        {"output": "xml"},
    ]
    for kwargs in bad:
        with pytest.raises(ValueError):
            RunConfig(**kwargs)


def test_config_deterministic_source_flag():
    assert RunConfig(seq="sobol").is_deterministic_source()
    assert RunConfig(seq="gold").is_deterministic_source()
    assert not RunConfig(seq="random").is_deterministic_source()
    assert not RunConfig(seq="latin").is_deterministic_source()


# ---------------------------------------------------------------------------
# encoder fast paths against the reference encoders

def naive_record(x_row, level_bits_per_pixel, pos_hvs, tie):
    levels = [Hypervector.from_bits(b) for b in level_bits_per_pixel]
    return record_encode(levels, pos_hvs, tie)


def test_threshold_record_matches_reference():
    rng = np.random.default_rng(1)
    dim, n_pix, n_img = 96, 12, 5
    x = rng.integers(0, 256, size=(n_img, n_pix)).astype(np.uint8)
    tvec = rng.integers(0, 257, size=dim)  # 256 = "never on" sentinel
    pos = rng.integers(0, 2, size=(n_pix, dim), dtype=np.uint8)
    tie = _tie_bits(dim)
    fast = _encode_threshold_record(x, tvec, pos, tie)
    pos_hvs = [Hypervector.from_bits(p) for p in pos]
    tie_hv = Hypervector.from_bits(tie)
    for i in range(n_img):
        lv = (x[i][:, None].astype(np.int64) >= tvec[None, :]) \
            .astype(np.uint8)
        expect = naive_record(x[i], lv, pos_hvs, tie_hv)
        assert np.array_equal(fast[i], expect.to_bits())


def test_threshold_record_thread_invariant():
    rng = np.random.default_rng(2)
    x = rng.integers(0, 256, size=(40, 16)).astype(np.uint8)
    tvec = rng.integers(0, 258, size=128)
    pos = rng.integers(0, 2, size=(16, 128), dtype=np.uint8)
    tie = _tie_bits(128)
    one = _encode_threshold_record(x, tvec, pos, tie, threads=1)
    four = _encode_threshold_record(x, tvec, pos, tie, threads=4)
    assert np.array_equal(one, four)


def test_table_record_matches_reference():
    rng = np.random.default_rng(3)
    dim, n_pix, n_img, levels = 96, 10, 37, 4
    x = rng.integers(0, 256, size=(n_img, n_pix)).astype(np.uint8)
    lbits = rng.integers(0, 2, size=(levels, dim), dtype=np.uint8)
    pos = rng.integers(0, 2, size=(n_pix, dim), dtype=np.uint8)
    tie = _tie_bits(dim)
    fast = _encode_table_record(x, lbits, pos, tie, levels, batch=16)
    pos_hvs = [Hypervector.from_bits(p) for p in pos]
    tie_hv = Hypervector.from_bits(tie)
    for i in range(n_img):
        q = np.minimum(x[i].astype(np.int64) * levels // 256, levels - 1)
        expect = naive_record(x[i], lbits[q], pos_hvs, tie_hv)
        assert np.array_equal(fast[i], expect.to_bits())


def test_encode_lines_matches_reference():
    mem = item_memory_random(list(ALPHABET), 64, seed=4)
    mem_bits = mem.bits()
    tie = _tie_bits(64)
    tie_hv = Hypervector.from_bits(tie)
    char_index = {c: i for i, c in enumerate(ALPHABET)}
    lines = ["hello world", "abc", "zz", "the quick brown fox"]
    n = 3
    rows, keep = _encode_lines(lines, mem_bits, tie, n, char_index)
    assert keep.tolist() == [True, True, False, True]
    for row, text in zip(rows, lines):
        if len(text) < n:
            continue
        grams = [ngram_encode([mem[c] for c in text[k: k + n]])
                 for k in range(len(text) - n + 1)]
        assert np.array_equal(row, bundle(grams, tie_hv).to_bits())


def test_split_corpus_caps_and_partition():
    samples = [(lang, f"{lang} line {i}")
               for lang in ("aa", "bb") for i in range(25)]
    ds = TextDataset(samples=samples)
    train, test = _split_corpus(ds, train_cap=0, test_cap=0)
    assert len(train) == 40 and len(test) == 10
    assert not set(train) & set(test)
    train, test = _split_corpus(ds, train_cap=5, test_cap=2)
    assert len(train) == 10 and len(test) == 4
    assert [lab for lab, _ in train] == ["aa"] * 5 + ["bb"] * 5


# ---------------------------------------------------------------------------
# diagnostics

def test_orthogonality_hadamard_exactly_zero():
    mem = item_memory_from_codes(list(range(16)), 64, "hadamard")
    stats = report_orthogonality(mem.bits())
    assert stats["max_abs_cosine"] == 0.0
    assert stats["mean_abs_cosine"] == 0.0


def test_orthogonality_random_memory_small():
    mem = item_memory_random(ALPHABET, 10_000, seed=5)
    stats = report_orthogonality(mem)
    assert 0.0 < stats["mean_abs_cosine"] < 0.02
    assert stats["max_abs_cosine"] < 0.05


def test_orthogonality_single_row():
    stats = report_orthogonality(np.ones((1, 64), dtype=np.uint8))
    assert stats == {"mean_abs_cosine": 0.0, "max_abs_cosine": 0.0}


def test_discrepancy_report():
    rep = report_discrepancy("sobol", n=256, d=2)
    assert rep["n"] == 256 and rep["d"] == 2
    assert 0.0 < rep["value"] < 0.05
    assert report_discrepancy("gold") is None


# ---------------------------------------------------------------------------
# report emission

def test_emit_json_shape_and_rounding():
    report = BenchReport(
        config={"task": "synth", "seq": "sobol"},
        accuracy_mean=1.0 / 3.0,
        accuracy_std=0.0,
        accuracy_runs=[1.0 / 3.0],
        confusion_labels=[0, 1],
        confusion_matrix=[[1, 0], [0, 1]],
        orthogonality={"mean_abs_cosine": 0.123456789,
                       "max_abs_cosine": 0.2},
        discrepancy=None,
        timing={"encode_s": 0.123456789},
    )
    text = emit_report(report, "json")
    assert text.endswith("\n")
    payload = json.loads(text)
    assert payload["schema_version"] == 1
    assert payload["accuracy"]["mean"] == 0.333333
    assert payload["orthogonality"]["mean_abs_cosine"] == 0.123457
    assert payload["timing"]["encode_s"] == 0.123457


def test_emit_csv_fixed_columns(tmp_path):
    cfg = RunConfig(task="synth", seq="sobol", dim=64, iterations=2)
    report = run(cfg)
    out = tmp_path / "report.csv"
    text = emit_report(report, "csv", out)
    assert out.read_text() == text
    lines = text.strip().split("\n")
    width = len(lines[0].split(","))
    assert lines[0].split(",")[-2:] == ["metric", "value"]
    assert all(len(ln.split(",")) == width for ln in lines)
    metrics = [ln.split(",")[-2] for ln in lines[1:]]
    assert "accuracy_mean" in metrics
    assert "accuracy_run_0" in metrics and "accuracy_run_1" in metrics
    assert "discrepancy" in metrics


def test_emit_rejects_unknown_format():
    cfg = RunConfig(task="synth", dim=64)
    with pytest.raises(ValueError):
        emit_report(run(cfg), "yaml")


# ---------------------------------------------------------------------------
# synthetic-blob pipeline

def test_synth_separable_blobs_high_accuracy():
    cfg = RunConfig(task="synth", seq="sobol", dim=1024)
    report = run_synth(cfg)
    assert report.accuracy_mean > 0.95
    assert report.config["encoder"] == "rbf"


def test_synth_deterministic_iterations():
    cfg = RunConfig(task="synth", seq="sobol", dim=256, iterations=2)
    report = run_synth(cfg)
    assert report.accuracy_runs[0] == report.accuracy_runs[1]
    assert report.accuracy_std == 0.0


def test_synth_repeat_runs_byte_identical():
    cfg = RunConfig(task="synth", seq="sobol", dim=256)
    a = run_synth(RunConfig(task="synth", seq="sobol", dim=256))
    b = run_synth(cfg)
    assert masked_json(a) == masked_json(b)


# ---------------------------------------------------------------------------
# language pipeline

def test_lang_single_language_is_trivially_perfect(tmp_path, monkeypatch):
    corpus = tmp_path / "lang"
    corpus.mkdir()
    lines = [f"xx\tthe same language on line {i}\n" for i in range(20)]
    (corpus / "udhr.tsv").write_text("".join(lines), encoding="utf-8")
    monkeypatch.setenv("HDSEED_DATA_DIR", str(tmp_path))
    cfg = RunConfig(task="lang", seq="sobol", dim=128)
    report = run_lang(cfg)
    assert report.accuracy_mean == 1.0
    assert report.confusion_labels == ["xx"]


def test_lang_ngram_order_matters():
    # unigram histograms confuse related languages more than 4-grams
    base = dict(task="lang", seq="sobol", dim=256, data_dir=DATA_DIR)
    four = run_lang(RunConfig(ngram=4, **base))
    one = run_lang(RunConfig(ngram=1, **base))
    assert four.accuracy_mean > one.accuracy_mean + 0.02


def test_lang_missing_corpus_error(tmp_path):
    cfg = RunConfig(task="lang", data_dir=str(tmp_path))
    with pytest.raises(FileNotFoundError, match="data-dir"):
        run_lang(cfg)


# ---------------------------------------------------------------------------
# image pipeline on the synthetic fixture

def test_mnist_pipeline_sobol(image_dir):
    cfg = RunConfig(task="mnist", seq="sobol", dim=256, data_dir=image_dir)
    report = run_mnist(cfg)
    assert report.accuracy_mean == 1.0  # fixture is linearly separable
    assert report.confusion_labels == list(range(10))
    assert sum(map(sum, report.confusion_matrix)) == 24


def test_mnist_pipeline_random_and_limits(image_dir):
    cfg = RunConfig(task="mnist", seq="random", dim=256, data_dir=image_dir,
                    train_limit=30, test_limit=10, iterations=2)
    report = run_mnist(cfg)
    assert len(report.accuracy_runs) == 2
    assert sum(map(sum, report.confusion_matrix)) == 10


def test_mnist_threads_do_not_change_results(image_dir):
    # worker count is an execution knob: results match bit for bit
    base = dict(task="mnist", seq="sobol", dim=256, data_dir=image_dir)
    one = run_mnist(RunConfig(threads=1, **base)).to_dict()
    four = run_mnist(RunConfig(threads=4, **base)).to_dict()
    for payload in (one, four):
        payload.pop("timing")
        payload["config"].pop("threads")
    assert json.dumps(one, sort_keys=True) == json.dumps(four,
                                                         sort_keys=True)


def test_mnist_deterministic_reports(image_dir):
    cfg = dict(task="mnist", seq="vdc", dim=128, data_dir=image_dir)
    assert masked_json(run_mnist(RunConfig(**cfg))) \
        == masked_json(run_mnist(RunConfig(**cfg)))


def test_mnist_encoder_variants_run(image_dir):
    # every encoder path executes and stays deterministic at small scale
    for encoder, floor in (("record", 0.9), ("fracpow", 0.9),
                           ("thermometer", 0.9), ("levelsum", 0.0)):
        cfg = RunConfig(task="mnist", seq="sobol", dim=256,
                        encoder=encoder, data_dir=image_dir)
        report = run_mnist(cfg)
        assert report.accuracy_mean >= floor, encoder


def test_mnist_code_source_uses_flip_chain(image_dir):
    cfg = RunConfig(task="mnist", seq="gold", dim=256, levels=8,
                    data_dir=image_dir)
    report = run_mnist(cfg)
    assert report.accuracy_mean >= 0.9
    assert report.discrepancy is None  # code families have no point set


def test_mnist_retrain_epochs(image_dir):
    cfg = RunConfig(task="mnist", seq="sobol", dim=128, epochs=2,
                    data_dir=image_dir)
    report = run_mnist(cfg)
    assert report.accuracy_mean >= 0.9


def test_mnist_missing_files_error(tmp_path):
    cfg = RunConfig(task="mnist", data_dir=str(tmp_path))
    with pytest.raises(FileNotFoundError, match="HDSEED_DATA_DIR"):
        run_mnist(cfg)


def test_mnist_gzip_fixture(tmp_path):
    import gzip as gz
    rng = np.random.default_rng(7)
    (tmp_path / "mnist").mkdir()
    images = rng.integers(0, 256, size=(10, 4, 4)).astype(np.uint8)
    labels = (np.arange(10) % 2).astype(np.uint8)
    for stem, writer, arr in (
            ("train-images-idx3-ubyte", write_idx_images, images),
            ("train-labels-idx1-ubyte", write_idx_labels, labels),
            ("t10k-images-idx3-ubyte", write_idx_images, images),
            ("t10k-labels-idx1-ubyte", write_idx_labels, labels)):
        plain = tmp_path / "mnist" / stem
        writer(arr, plain)
        with open(plain, "rb") as fh:
            blob = fh.read()
        plain.unlink()
        with gz.open(str(plain) + ".gz", "wb") as fh:
            fh.write(blob)
    cfg = RunConfig(task="mnist", seq="sobol", dim=64,
                    data_dir=str(tmp_path))
    report = run_mnist(cfg)
    assert len(report.accuracy_runs) == 1

"""Character n-gram language identification from bundled hypervectors.

Each line of text becomes the majority bundle of its sliding n-gram codes;
each language's training lines bundle further into one class prototype.
Inference is nearest-prototype by Hamming similarity.  The letter codebook
can come from a pseudo-random draw or from a deterministic sequence family,
which is the comparison this benchmark exists to make.

Needs the bundled corpus under data/ (run from the repository root, or set
HDSEED_DATA_DIR).
"""

from hdseed.bench import RunConfig, run, run_lang

BASE = dict(task="lang", dim=256, ngram=4, train_limit=200, test_limit=40)

# one run per codebook source at modest scale
print("letter codebook sources at D=256, 4-grams:")
for seq in ("sobol", "halton", "weyl", "hadamard", "random"):
    report = run_lang(RunConfig(seq=seq, **BASE))
    langs = len(report.confusion_labels)
    print(f"  {seq:9s} accuracy {100 * report.accuracy_mean:5.2f}% "
          f"over {langs} languages")

# n-gram order is what carries the signal: compare window sizes
print("\nwindow size sweep (sobol codebook):")
for n in (1, 2, 3, 4, 5):
    cfg = RunConfig(seq="sobol", task="lang", dim=256, ngram=n,
                    train_limit=200, test_limit=40)
    report = run(cfg)
    print(f"  n={n}: {100 * report.accuracy_mean:5.2f}%")

# the full report carries config echo, confusion matrix, orthogonality of
# the codebook, and the source family's discrepancy
report = run_lang(RunConfig(seq="sobol", **BASE))
ortho = report.orthogonality
print(f"\ncodebook pairwise |cosine|: mean {ortho['mean_abs_cosine']:.4f} "
      f"max {ortho['max_abs_cosine']:.4f}")
print(f"source discrepancy (1024 2-D points): "
      f"{report.discrepancy['value']:.6f}")

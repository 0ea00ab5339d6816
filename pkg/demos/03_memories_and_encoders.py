"""Item memories, level memories, and the encoders built from them.

An item memory assigns one hypervector per discrete symbol.  Thresholding a
deterministic sequence (bit j set iff value j falls below 0.5) replaces the
usual random draw and yields reproducible, well-spread codebooks.  Level
memories encode scalar magnitude: nearby values share most bits, distant
values share few.  Encoders then compose the two into records, n-grams, or
kernel codes.
"""

import numpy as np

from hdseed import (
    bundle,
    default_tie_break,
    gaussian_projection,
    hamming,
    item_memory_from_codes,
    item_memory_from_sequence,
    item_memory_random,
    level_memory_flip_chain,
    ngram_encode,
    rbf_encode,
    record_encode,
    similarity_hamming,
)
from hdseed.bench import report_orthogonality

DIM = 1024
LETTERS = "abcdefghijklmnopqrstuvwxyz "

# random vs sequence-thresholded vs Hadamard codebooks over 27 symbols
for name, mem in (
        ("random", item_memory_random(LETTERS, DIM, seed=1)),
        ("sobol", item_memory_from_sequence(LETTERS, DIM, "sobol")),
        ("halton", item_memory_from_sequence(LETTERS, DIM, "halton")),
        ("hadamard", item_memory_from_codes(LETTERS, DIM, "hadamard"))):
    stats = report_orthogonality(mem.bits())
    print(f"{name:9s} pairwise |cosine|: mean {stats['mean_abs_cosine']:.4f} "
          f"max {stats['max_abs_cosine']:.4f}")

# a flip chain walks from one endpoint code to another through disjoint
# bit flips, so Hamming distance is exactly linear in level separation
chain = level_memory_flip_chain(DIM, 5, seed=2)
print("\nflip-chain distances from level 0:",
      [hamming(chain[0], chain[i]) for i in range(5)])

# record encoding: bind each feature's level code to its position code,
# then take the bitwise majority
positions = item_memory_from_sequence(range(4), DIM, "sobol")
tie = default_tie_break(DIM)
reading = record_encode(
    [chain[4], chain[0], chain[2], chain[4]],
    [positions[i] for i in range(4)], tie)
similar = record_encode(
    [chain[4], chain[0], chain[2], chain[3]],  # one feature moved a step
    [positions[i] for i in range(4)], tie)
different = record_encode(
    [chain[0], chain[4], chain[0], chain[0]],
    [positions[i] for i in range(4)], tie)
print(f"\nrecord similarity, one level step apart: "
      f"{similarity_hamming(reading, similar):.3f}")
print(f"record similarity, all features moved:    "
      f"{similarity_hamming(reading, different):.3f}")

# n-gram encoding is order-sensitive: XOR of successively permuted codes
letters = item_memory_random(LETTERS, DIM, seed=3)
abc = ngram_encode([letters[c] for c in "abc"])
cba = ngram_encode([letters[c] for c in "cba"])
print(f"\nngram('abc') vs ngram('cba') similarity: "
      f"{similarity_hamming(abc, cba):.3f} (unrelated, as it should be)")

# a text becomes the bundle of its sliding n-grams
def text_hv(text, n=3):
    grams = [ngram_encode([letters[c] for c in text[i:i + n]])
             for i in range(len(text) - n + 1)]
    return bundle(grams, tie)

hello1 = text_hv("hello world")
hello2 = text_hv("hello there")
other = text_hv("quite unlike")
print(f"bundled trigrams: 'hello world' vs 'hello there' "
      f"{similarity_hamming(hello1, hello2):.3f}, vs 'quite unlike' "
      f"{similarity_hamming(hello1, other):.3f}")

# kernel encoder: random projection + cosine thresholding approximates an
# RBF kernel, so similarity decays smoothly with feature distance
proj = gaussian_projection(8192, 8, seed=4)
base = np.zeros(8)
print("\nRBF code similarity vs feature distance:")
for eps in (0.1, 0.5, 1.0, 2.0, 4.0):
    shifted = base + eps / np.sqrt(8)
    sim = similarity_hamming(rbf_encode(base, proj),
                             rbf_encode(shifted, proj))
    print(f"  |delta| = {eps:.1f}: {sim:.3f}")

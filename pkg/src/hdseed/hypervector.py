"""Packed binary hypervectors and the primitive operations on them.

A hypervector is a fixed-dimension binary vector stored as a little-endian
bit-packed uint64 array.  Binding is XOR, bundling is per-bit majority with
an explicit tie-break vector, permutation is circular rotation.  The bipolar
view (bit 1 -> +1, bit 0 -> -1) shares the same storage; all similarity
metrics reduce to popcounts.
"""

import numpy as np

__all__ = [
    "Hypervector", "Accumulator", "random_hv", "zero_hv", "ones_hv",
    "default_tie_break", "bind", "permute", "complement", "accumulate",
    "binarize", "bundle", "hamming", "similarity_hamming", "dot_bipolar",
    "cosine_bipolar",
]

# Fixed seed for the shared deterministic tie-break vector, so even-count
# bundles are reproducible across processes.
_TIE_BREAK_SEED = 0x7EB1

_tie_break_cache = {}


def _n_words(dim):
    return (dim + 63) // 64


def _pad_mask(dim):
    """Mask clearing bits at index >= dim in the final word."""
    rem = dim % 64
    return np.uint64(0xFFFFFFFFFFFFFFFF if rem == 0 else (1 << rem) - 1)


def _pack(bits):
    """Pack a 0/1 uint8 array (bit i at index i) into uint64 words."""
    dim = bits.shape[-1]
    padded = np.zeros(bits.shape[:-1] + (_n_words(dim) * 64,), dtype=np.uint8)
    padded[..., :dim] = bits
    return np.packbits(padded, axis=-1, bitorder="little").view(np.uint64)


def _unpack(words, dim):
    bits = np.unpackbits(words.view(np.uint8), axis=-1, bitorder="little")
    return bits[..., :dim]


class Hypervector:
    """Immutable D-bit vector packed into ceil(D/64) uint64 words.

    Padding bits (index >= D) are zero after every operation, so popcounts
    over the raw words are exact.
    """

    __slots__ = ("dim", "words")

    def __init__(self, dim, words):
        if dim < 1:
            raise ValueError(f"dimension must be >= 1, got {dim}")
        words = np.ascontiguousarray(words, dtype=np.uint64)
        if words.shape != (_n_words(dim),):
            raise ValueError(
                f"expected {_n_words(dim)} words for dim {dim}, "
                f"got shape {words.shape}")
        words = words.copy()
        words[-1] &= _pad_mask(dim)
        self.dim = dim
        self.words = words
        self.words.setflags(write=False)

    @classmethod
    def from_bits(cls, bits):
        bits = np.asarray(bits, dtype=np.uint8)
        return cls(bits.shape[0], _pack(bits))

    def to_bits(self):
        return _unpack(self.words, self.dim)

    def weight(self):
        return int(np.bitwise_count(self.words).sum())

    def __eq__(self, other):
        return (isinstance(other, Hypervector) and self.dim == other.dim
                and bool(np.array_equal(self.words, other.words)))

    def __hash__(self):
        return hash((self.dim, self.words.tobytes()))

    def __repr__(self):
        head = "".join(str(b) for b in self.to_bits()[:16])
        tail = "..." if self.dim > 16 else ""
        return f"Hypervector(dim={self.dim}, bits={head}{tail})"


def _check_dims(a, b):
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} != {b.dim}")


def random_hv(dim, seed=None):
    """I.i.d. Bernoulli(1/2) hypervector. `seed` may be an int or a Generator."""
    rng = np.random.default_rng(seed)
    bits = rng.integers(0, 2, size=dim, dtype=np.uint8)
    return Hypervector.from_bits(bits)


def zero_hv(dim):
    return Hypervector(dim, np.zeros(_n_words(dim), dtype=np.uint64))


def ones_hv(dim):
    return Hypervector(dim, np.full(_n_words(dim), 0xFFFFFFFFFFFFFFFF,
                                    dtype=np.uint64))


def default_tie_break(dim):
    """Shared deterministic tie-break vector for dimension `dim`."""
    if dim not in _tie_break_cache:
        _tie_break_cache[dim] = random_hv(dim, _TIE_BREAK_SEED)
    return _tie_break_cache[dim]


def bind(a, b):
    """Element-wise XOR. Self-inverse, commutative, distance-preserving."""
    _check_dims(a, b)
    return Hypervector(a.dim, a.words ^ b.words)


def complement(a):
    return Hypervector(a.dim, ~a.words)


def permute(a, k):
    """Circular rotation by k positions toward higher indices (mod dim)."""
    k = int(k) % a.dim
    if k == 0:
        return a
    return Hypervector.from_bits(np.roll(a.to_bits(), k))


class Accumulator:
    """Per-dimension signed counters: the pre-binarization bundle sum."""

    __slots__ = ("dim", "counts")

    def __init__(self, dim, counts=None):
        if dim < 1:
            raise ValueError(f"dimension must be >= 1, got {dim}")
        if counts is None:
            counts = np.zeros(dim, dtype=np.int64)
        else:
            counts = np.asarray(counts, dtype=np.int64).copy()
            if counts.shape != (dim,):
                raise ValueError(f"counts shape {counts.shape} != ({dim},)")
        self.dim = dim
        self.counts = counts

    def copy(self):
        return Accumulator(self.dim, self.counts)


def accumulate(acc, hv, sign=1):
    """Add the bipolar view of `hv` (+1/-1 per bit) times `sign` into `acc`."""
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    _check_dims(acc, hv)
    bits = hv.to_bits().astype(np.int64)
    acc.counts += sign * (2 * bits - 1)
    return acc


def binarize(acc, tie_break):
    """Majority threshold: 1 where counts > 0, 0 where < 0, tie_break at 0."""
    _check_dims(acc, tie_break)
    tb = tie_break.to_bits()
    bits = np.where(acc.counts > 0, 1,
                    np.where(acc.counts < 0, 0, tb)).astype(np.uint8)
    return Hypervector.from_bits(bits)


def bundle(hvs, tie_break):
    """Per-bit majority of a non-empty list, ties resolved by `tie_break`."""
    if not hvs:
        raise ValueError("cannot bundle an empty list")
    acc = Accumulator(hvs[0].dim)
    for hv in hvs:
        accumulate(acc, hv, 1)
    return binarize(acc, tie_break)


def hamming(a, b):
    _check_dims(a, b)
    return int(np.bitwise_count(a.words ^ b.words).sum())


def similarity_hamming(a, b):
    return 1.0 - hamming(a, b) / a.dim


def dot_bipolar(a, b):
    """Dot product of the bipolar views: D - 2 * hamming."""
    return a.dim - 2 * hamming(a, b)


def cosine_bipolar(a, b):
    """Bipolar cosine similarity; bipolar vectors have norm sqrt(D)."""
    return dot_bipolar(a, b) / a.dim

"""Item/level memories and the encoder families built on them.

Item memories map discrete symbols to quasi-orthogonal hypervectors; level
memories map ordinal magnitudes to distance-correlated chains.  Both can be
drawn from a pseudo-random generator, from per-symbol low-discrepancy
sequence parameterizations (bit j = sequence value j compared against a
threshold), or from binary code rows.  Encoders compose memories into
record, n-gram, permute-sum, level-sum, fractional-power, RBF, thermometer
and circular-shift codes.
"""

import struct
from dataclasses import dataclass

import numpy as np

from .hypervector import (
    Hypervector, Accumulator, accumulate, binarize, bind, permute, random_hv,
)
from .sequences import (
    SequenceSource, family_sources, source_values, code_row, hadamard_row,
    SEQUENCE_KINDS, CODE_KINDS,
)

__all__ = [
    "ItemMemory", "LevelMemory", "ProjectionMatrix",
    "item_memory_random", "item_memory_from_sequence",
    "item_memory_from_codes", "level_memory_flip_chain",
    "level_hv_from_sequence", "record_encode", "ngram_encode",
    "permute_sum_encode", "level_sum_encode", "fractional_power_encode",
    "gaussian_projection", "rbf_encode", "random_projection_sparse",
    "thermometer_encode", "hologn_items",
    "save_memory", "load_memory",
]

_MAGIC = b"HDIM1"


class ItemMemory:
    """Symbol -> hypervector store with a rebuildable source description."""

    def __init__(self, dim, symbols, hvs, source="explicit"):
        if len(symbols) != len(hvs):
            raise ValueError("one hypervector per symbol required")
        for hv in hvs:
            if hv.dim != dim:
                raise ValueError(f"dimension mismatch: {hv.dim} != {dim}")
        self.dim = dim
        self.symbols = tuple(symbols)
        self._table = dict(zip(self.symbols, hvs))
        self.source = source
        self._bits = None

    def __len__(self):
        return len(self.symbols)

    def __contains__(self, symbol):
        return symbol in self._table

    def __getitem__(self, symbol):
        return self._table[symbol]

    def vectors(self):
        return [self._table[s] for s in self.symbols]

    def bits(self):
        """(count, dim) uint8 bit matrix in symbol order (cached)."""
        if self._bits is None:
            self._bits = np.stack([hv.to_bits() for hv in self.vectors()])
            self._bits.setflags(write=False)
        return self._bits


class LevelMemory:
    """Ordered chain of hypervectors whose distance grows with level gap."""

    def __init__(self, dim, chain, flip_schedule=None, source="explicit"):
        for hv in chain:
            if hv.dim != dim:
                raise ValueError(f"dimension mismatch: {hv.dim} != {dim}")
        self.dim = dim
        self.chain = list(chain)
        self.levels = len(self.chain)
        self.flip_schedule = flip_schedule
        self.source = source
        self._bits = None

    def __len__(self):
        return self.levels

    def __getitem__(self, level):
        return self.chain[level]

    def level_for(self, value):
        """Quantize value in [0,1] to a chain index."""
        return min(int(value * self.levels), self.levels - 1)

    def bits(self):
        if self._bits is None:
            self._bits = np.stack([hv.to_bits() for hv in self.chain])
            self._bits.setflags(write=False)
        return self._bits


def _memory_from_bits(dim, symbols, bit_matrix, source):
    hvs = [Hypervector.from_bits(row) for row in np.asarray(bit_matrix,
                                                            dtype=np.uint8)]
    return ItemMemory(dim, symbols, hvs, source)


def item_memory_random(symbols, dim, seed=None):
    """One i.i.d. Bernoulli(1/2) hypervector per symbol."""
    rng = np.random.default_rng(seed)
    bits = rng.integers(0, 2, size=(len(symbols), dim), dtype=np.uint8)
    return _memory_from_bits(dim, symbols, bits, f"random(seed={seed})")


def item_memory_from_sequence(symbols, dim, sources, th=0.5):
    """Item memory thresholded from deterministic sequences.

    Bit j of symbol k is 1 iff value(source_k, j) < th.  `sources` is either
    a family kind name (parameterizations assigned per `family_sources`) or
    an explicit list of SequenceSource, one per symbol.
    """
    if isinstance(sources, str):
        sources = family_sources(sources, len(symbols), n=dim)
    if isinstance(sources, SequenceSource):
        sources = [sources]
    if len(sources) < len(symbols):
        raise ValueError(
            f"fewer distinct sequence parameterizations ({len(sources)}) "
            f"than symbols ({len(symbols)})")
    bits = np.empty((len(symbols), dim), dtype=np.uint8)
    for k in range(len(symbols)):
        bits[k] = source_values(sources[k], dim) < th
    desc = sources[0].kind if sources else "empty"
    return _memory_from_bits(dim, symbols, bits,
                             f"sequence({desc}, th={th})")


def item_memory_from_codes(symbols, dim, kind, taps=None, seed=1):
    """Item memory whose rows are binary code words (tiled past one period)."""
    if kind not in CODE_KINDS:
        raise ValueError(f"unknown code kind: {kind}")
    if kind == "hadamard" and len(symbols) > dim:
        raise ValueError(
            f"hadamard supplies at most {dim} rows, need {len(symbols)}")
    bits = np.stack([code_row(kind, k, dim, taps=taps, seed=seed)
                     for k in range(len(symbols))])
    return _memory_from_bits(dim, symbols, bits, f"code({kind})")


def level_memory_flip_chain(dim, levels, seed=None):
    """Chain of `levels` hypervectors built by disjoint bit flips.

    A random permutation of floor(dim/2) distinct indices is consumed in
    levels-1 contiguous blocks of near-equal size, so inter-level hamming
    distances are exact: hamming(chain[i], chain[j]) == |cum(i) - cum(j)|.
    """
    if levels < 2:
        raise ValueError(f"need at least 2 levels, got {levels}")
    if dim < 2 * (levels - 1):
        raise ValueError(f"dim {dim} too small for {levels} levels")
    rng = np.random.default_rng(seed)
    base = rng.integers(0, 2, size=dim, dtype=np.uint8)
    flips = rng.permutation(dim)[: dim // 2]
    blocks = np.array_split(flips, levels - 1)
    chain_bits = [base.copy()]
    cur = base.copy()
    for blk in blocks:
        cur = cur.copy()
        cur[blk] ^= 1
        chain_bits.append(cur)
    chain = [Hypervector.from_bits(b) for b in chain_bits]
    return LevelMemory(dim, chain, flip_schedule=[np.sort(b) for b in blocks],
                       source=f"flip_chain(seed={seed})")


def level_hv_from_sequence(value, dim, src):
    """Magnitude code: bit j = 1 iff value > value(src, j)."""
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"value must be in [0, 1], got {value}")
    bits = (value > source_values(src, dim)).astype(np.uint8)
    return Hypervector.from_bits(bits)


def record_encode(levels, positions, tie_break):
    """Bundle of bind(level_i, position_i) pairs (feature-record code)."""
    if len(levels) != len(positions):
        raise ValueError(
            f"levels/positions length mismatch: {len(levels)} != {len(positions)}")
    if not levels:
        raise ValueError("cannot encode an empty record")
    acc = Accumulator(levels[0].dim)
    for lv, pos in zip(levels, positions):
        accumulate(acc, bind(lv, pos), 1)
    return binarize(acc, tie_break)


def ngram_encode(levels):
    """XOR of successively permuted symbol hypervectors (order-sensitive)."""
    if not levels:
        raise ValueError("cannot encode an empty n-gram")
    out = levels[0]
    for k in range(1, len(levels)):
        out = bind(out, permute(levels[k], k))
    return out


def permute_sum_encode(hvs, tie_break):
    """Bundle of time-permuted hypervectors: majority over permute(H_t, t),
    t starting at 1."""
    if not hvs:
        raise ValueError("cannot encode an empty sequence")
    acc = Accumulator(hvs[0].dim)
    for t, hv in enumerate(hvs, start=1):
        accumulate(acc, permute(hv, t), 1)
    return binarize(acc, tie_break)


def level_sum_encode(level_hvs, tie_break):
    """Bundle of per-feature level hypervectors; no binding, no permutation."""
    if not level_hvs:
        raise ValueError("cannot encode an empty feature set")
    acc = Accumulator(level_hvs[0].dim)
    for hv in level_hvs:
        accumulate(acc, hv, 1)
    return binarize(acc, tie_break)


def fractional_power_encode(a, b, u, v):
    """Grid-cell code bind(pi^u(a), pi^v(b)); rotation realizes the integer
    powers so repeated XOR cannot cancel."""
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} != {b.dim}")
    if u < 0 or v < 0:
        raise ValueError(f"powers must be >= 0, got ({u}, {v})")
    return bind(permute(a, u), permute(b, v))


@dataclass(frozen=True)
class ProjectionMatrix:
    """Gaussian row projections, optionally with uniform phase offsets."""
    weights: np.ndarray          # (dim, features) from Normal(0, 1)
    phases: np.ndarray = None    # (dim,) from Uniform[0, 2*pi), or None

    @property
    def dim(self):
        return self.weights.shape[0]

    @property
    def features(self):
        return self.weights.shape[1]


def gaussian_projection(dim, features, seed=None, with_phases=False,
                        bandwidth=1.0):
    """Rows from Normal(0, 1), divided by the kernel bandwidth."""
    if bandwidth <= 0.0:
        raise ValueError(f"bandwidth must be positive, got {bandwidth}")
    rng = np.random.default_rng(seed)
    weights = rng.standard_normal((dim, features)) / bandwidth
    phases = rng.uniform(0.0, 2.0 * np.pi, size=dim) if with_phases else None
    return ProjectionMatrix(weights, phases)


def rbf_encode(features, proj, variant="cos"):
    """Nonlinear kernel code: bit i = 1 iff cos(B_i . F) >= 0, or for the
    phase variant iff cos(B_i . F + c_i) * sin(B_i . F) >= 0."""
    features = np.asarray(features, dtype=np.float64)
    if features.shape != (proj.features,):
        raise ValueError(
            f"feature length {features.shape} != ({proj.features},)")
    z = proj.weights @ features
    if variant == "cos":
        bits = np.cos(z) >= 0.0
    elif variant == "cos-sin":
        if proj.phases is None:
            raise ValueError("cos-sin variant needs a projection with phases")
        bits = np.cos(z + proj.phases) * np.sin(z) >= 0.0
    else:
        raise ValueError(f"unknown rbf variant: {variant}")
    return Hypervector.from_bits(bits.astype(np.uint8))


def random_projection_sparse(features, dim, s, seed=None):
    """Ternary projection: each row has round(s * features) nonzeros,
    half +1 and half -1 (within one for odd counts)."""
    if not 0.0 < s <= 1.0:
        raise ValueError(f"sparsity must be in (0, 1], got {s}")
    nnz = int(round(s * features))
    rng = np.random.default_rng(seed)
    mat = np.zeros((dim, features), dtype=np.int8)
    for i in range(dim):
        cols = rng.permutation(features)[:nnz]
        vals = np.ones(nnz, dtype=np.int8)
        vals[nnz - nnz // 2:] = -1
        mat[i, cols] = vals
    return mat


def thermometer_encode(value, dim):
    """Prefix code: the first round(value * dim) bits are set."""
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"value must be in [0, 1], got {value}")
    k = int(round(value * dim))
    bits = np.zeros(dim, dtype=np.uint8)
    bits[:k] = 1
    return Hypervector.from_bits(bits)


def hologn_items(base, count, stride=1):
    """Item list by repeated circular shift: item k = permute(base, k*stride)."""
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    return [permute(base, k * stride) for k in range(count)]


# ---------------------------------------------------------------------------
# Versioned binary serialization shared by item and level memories

def save_memory(memory, path):
    """Write memory rows as magic HDIM1, u32le dim, u32le count, then
    ceil(dim/64) u64le words per row."""
    rows = memory.vectors() if isinstance(memory, ItemMemory) else memory.chain
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(struct.pack("<II", memory.dim, len(rows)))
        for hv in rows:
            fh.write(hv.words.astype("<u8").tobytes())


def load_memory(path, symbols=None, as_level=False):
    """Read an HDIM1 file back into an ItemMemory (or LevelMemory)."""
    with open(path, "rb") as fh:
        blob = fh.read()
    if blob[:5] != _MAGIC:
        raise ValueError(f"not an HDIM1 memory file: {path}")
    if len(blob) < 13:
        raise ValueError(f"truncated memory file: {path}")
    dim, count = struct.unpack("<II", blob[5:13])
    words = (dim + 63) // 64
    need = 13 + count * words * 8
    if len(blob) < need:
        raise ValueError(
            f"truncated memory file: expected {need} bytes, got {len(blob)}")
    hvs = []
    off = 13
    for _ in range(count):
        arr = np.frombuffer(blob, dtype="<u8", count=words, offset=off)
        hvs.append(Hypervector(dim, arr.astype(np.uint64)))
        off += words * 8
    if as_level:
        return LevelMemory(dim, hvs, source=f"file({path})")
    if symbols is None:
        symbols = list(range(count))
    return ItemMemory(dim, symbols, hvs, source=f"file({path})")

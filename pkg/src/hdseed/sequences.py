"""Deterministic unit-interval sequences and binary code streams.

Low-discrepancy families (van der Corput, Sobol, Halton, Faure, Weyl, R2,
Hammersley, Latin hypercube) replace pseudo-randomness when building
hypervectors; binary code families (Hadamard, LFSR m-sequences, Gold,
Kasami) emit bit streams directly.  All deterministic generators are pure
functions of their parameters and the index.

Radical inverses are computed by exact integer accumulation followed by a
single division, so worked rational examples hold to full precision.
"""

import importlib.resources
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "SequenceSource", "make_source", "source_value", "source_values",
    "family_sources", "vdc", "sobol", "sobol_max_dim", "halton", "faure",
    "weyl", "r2", "plastic_root", "hammersley", "latin_hypercube",
    "hadamard_row", "lfsr_bits", "m_sequence", "gold", "kasami",
    "code_row", "primes", "point_set", "centered_l2_discrepancy",
    "scatter_export", "WEYL_PI", "WEYL_SILVER", "GOLD_TAPS_1", "GOLD_TAPS_2",
    "SEQUENCE_KINDS", "CODE_KINDS",
]

SEQUENCE_KINDS = ("random", "vdc", "sobol", "halton", "faure", "weyl", "r2",
                  "hammersley", "latin")
CODE_KINDS = ("hadamard", "gold", "kasami", "lfsr")

# Weyl defaults: fractional part of pi and the silver ratio.
WEYL_PI = math.pi - 3.0
WEYL_SILVER = math.sqrt(2.0) - 1.0

# Degree-10 preferred pair of primitive polynomials (periods 1023); their
# XOR family carries the classic three-valued cross-correlation spectrum.
GOLD_TAPS_1 = (10, 3)
GOLD_TAPS_2 = (10, 9, 8, 6, 3, 2)

_SOBOL_MAXBIT = 52  # direction integers scaled to 52 bits: exact in a double


# ---------------------------------------------------------------------------
# Prime helpers

_prime_cache = [2, 3, 5, 7, 11, 13]


def primes(count):
    """First `count` primes (simple incremental sieve, cached)."""
    while len(_prime_cache) < count:
        c = _prime_cache[-1] + 2
        while True:
            if all(c % p for p in _prime_cache if p * p <= c):
                _prime_cache.append(c)
                break
            c += 2
    return _prime_cache[:count]


def _is_prime(n):
    if n < 2:
        return False
    return all(n % p for p in range(2, int(n ** 0.5) + 1))


def _next_prime(n):
    c = max(n, 2)
    while not _is_prime(c):
        c += 1
    return c


# ---------------------------------------------------------------------------
# Radical-inverse family

def vdc(index, base):
    """Van der Corput radical inverse of `index` in `base`, exact rational."""
    if base < 2:
        raise ValueError(f"base must be >= 2, got {base}")
    if index < 0:
        raise ValueError(f"index must be >= 0, got {index}")
    num, den, i = 0, 1, int(index)
    while i:
        num = num * base + i % base
        den *= base
        i //= base
    return num / den


def _vdc_block(n, base, ndigits=None):
    """First `n` radical inverses in `base` as a float array."""
    if base < 2:
        raise ValueError(f"base must be >= 2, got {base}")
    k = ndigits if ndigits is not None else _digits_needed(n, base)
    num = np.zeros(n, dtype=np.int64)
    rep = np.arange(n, dtype=np.int64)
    for _ in range(k):
        num = num * base + rep % base
        rep //= base
    return num / float(base) ** k


def _digits_needed(n, base):
    k, cap = 1, base
    while cap < n:
        cap *= base
        k += 1
    return k


def halton(dim, index):
    """Halton coordinate: radical inverse in the dim-th prime base."""
    if dim < 1:
        raise ValueError(f"dim must be >= 1, got {dim}")
    return vdc(index, primes(dim)[-1])


def hammersley(dim, index, n):
    """Hammersley point-set coordinate: dim 1 is index/n, the rest Halton."""
    if dim < 1:
        raise ValueError(f"dim must be >= 1, got {dim}")
    if not 0 <= index < n:
        raise ValueError(f"index must be in [0, {n}), got {index}")
    if dim == 1:
        return index / n
    return vdc(index, primes(dim - 1)[-1])


# ---------------------------------------------------------------------------
# Faure: base-omega VDC with Pascal-matrix digit scrambling per dimension

def _pascal_mod(k, omega):
    """B[j, r] = binom(r, j) mod omega for r, j < k."""
    b = np.zeros((k, k), dtype=np.int64)
    b[0, :] = 1
    for r in range(1, k):
        for j in range(1, r + 1):
            b[j, r] = (b[j, r - 1] + b[j - 1, r - 1]) % omega
    return b


def faure(dim, index, omega):
    """Faure coordinate: dimension 1 is vdc(index, omega), higher dimensions
    apply the Pascal-matrix (mod omega) digit permutation repeatedly."""
    if not _is_prime(omega):
        raise ValueError(f"omega must be prime, got {omega}")
    if dim < 1:
        raise ValueError(f"dim must be >= 1, got {dim}")
    if dim > omega:
        raise ValueError(f"dim {dim} exceeds omega {omega}")
    if index < 0:
        raise ValueError(f"index must be >= 0, got {index}")
    if dim == 1:
        return vdc(index, omega)
    digits, i = [], int(index)
    while i:
        digits.append(i % omega)
        i //= omega
    if not digits:
        return 0.0
    k = len(digits)
    b = _pascal_mod(k, omega)
    d = np.array(digits, dtype=np.int64)
    for _ in range(dim - 1):
        d = (b @ d) % omega
    # d[0] is the most significant fractional digit after inversion
    num, den = 0, omega ** k
    for j in range(k):
        num = num * omega + int(d[j])
    return num / den


def _faure_block(dim, n, omega):
    if not _is_prime(omega):
        raise ValueError(f"omega must be prime, got {omega}")
    if dim > omega:
        raise ValueError(f"dim {dim} exceeds omega {omega}")
    k = _digits_needed(n, omega)
    rep = np.arange(n, dtype=np.int64)
    d = np.empty((k, n), dtype=np.int64)
    for j in range(k):
        d[j] = rep % omega
        rep //= omega
    b = _pascal_mod(k, omega)
    for _ in range(dim - 1):
        d = (b @ d) % omega
    scale = float(omega) ** -(np.arange(k, dtype=np.float64) + 1.0)
    return scale @ d


# ---------------------------------------------------------------------------
# Sobol: direction-vector XOR construction over the packaged Joe-Kuo table

_sobol_table = None
_sobol_directions = {}


def _load_sobol_table():
    global _sobol_table
    if _sobol_table is None:
        ref = importlib.resources.files("hdseed").joinpath("sobol_joe_kuo.npz")
        with ref.open("rb") as fh:
            data = np.load(fh)
            _sobol_table = (data["poly"].copy(), data["vinit"].copy())
    return _sobol_table


def sobol_max_dim():
    return _load_sobol_table()[0].shape[0]


def _directions(dim):
    """52-bit direction integers v_1..v_52 for a 1-based Sobol dimension."""
    if dim in _sobol_directions:
        return _sobol_directions[dim]
    poly, vinit = _load_sobol_table()
    if not 1 <= dim <= poly.shape[0]:
        raise ValueError(
            f"sobol dim must be in [1, {poly.shape[0]}], got {dim}")
    p = int(poly[dim - 1])
    s = p.bit_length() - 1
    m = np.zeros(_SOBOL_MAXBIT + 1, dtype=np.uint64)
    if s == 0:
        m[1:] = 1
    else:
        m[1:s + 1] = vinit[dim - 1][:s]
        a = [(p >> (s - i)) & 1 for i in range(1, s)]
        for k in range(s + 1, _SOBOL_MAXBIT + 1):
            acc = int(m[k - s]) ^ (int(m[k - s]) << s)
            for i in range(1, s):
                if a[i - 1]:
                    acc ^= int(m[k - i]) << i
            m[k] = acc
    v = np.zeros(_SOBOL_MAXBIT, dtype=np.uint64)
    for k in range(1, _SOBOL_MAXBIT + 1):
        v[k - 1] = m[k] << np.uint64(_SOBOL_MAXBIT - k)
    _sobol_directions[dim] = v
    return v


def sobol(dim, index):
    """Sobol coordinate in natural index order; dimension 1 equals vdc(index, 2)."""
    if not 0 <= index < 2 ** _SOBOL_MAXBIT:
        raise ValueError(f"index out of range: {index}")
    v = _directions(dim)
    acc, i, b = 0, int(index), 0
    while i:
        if i & 1:
            acc ^= int(v[b])
        i >>= 1
        b += 1
    return acc / 2.0 ** _SOBOL_MAXBIT


def _sobol_block(dim, n):
    v = _directions(dim)
    idx = np.arange(n, dtype=np.uint64)
    acc = np.zeros(n, dtype=np.uint64)
    for b in range(max(n - 1, 0).bit_length()):
        sel = (idx >> np.uint64(b)) & np.uint64(1)
        acc ^= np.where(sel.astype(bool), v[b], np.uint64(0))
    return acc / 2.0 ** _SOBOL_MAXBIT


# ---------------------------------------------------------------------------
# Irrational-rotation family

def weyl(index, beta):
    """Fractional part of index * beta (beta irrational)."""
    if index < 0:
        raise ValueError(f"index must be >= 0, got {index}")
    x = index * beta
    return x - math.floor(x)


def plastic_root(d):
    """Real root > 1 of x^(d+1) = x + 1 (d=2 gives the plastic constant)."""
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    x = 1.5
    for _ in range(200):
        f = x ** (d + 1) - x - 1.0
        fp = (d + 1) * x ** d - 1.0
        step = f / fp
        x -= step
        if abs(step) < 1e-15:
            break
    return x

_PLASTIC = plastic_root(2)


def r2(dim, index, root=_PLASTIC):
    """Plastic-constant rotation: frac(index / root**dim)."""
    if dim < 1:
        raise ValueError(f"dim must be >= 1, got {dim}")
    return weyl(index, root ** -dim)


# ---------------------------------------------------------------------------
# Latin hypercube

def latin_hypercube(n, dim, seed=None):
    """n stratified points in [0,1)^dim: each axis permutes the n strata."""
    if n < 1 or dim < 1:
        raise ValueError("n and dim must be >= 1")
    rng = np.random.default_rng(seed)
    pts = np.empty((n, dim), dtype=np.float64)
    for k in range(dim):
        pts[:, k] = (rng.permutation(n) + rng.random(n)) / n
    return pts


# ---------------------------------------------------------------------------
# Binary code sources

def hadamard_row(row, dim):
    """Row of the Sylvester-Hadamard matrix as 0/1 bits.

    Bit j of row i is the parity of popcount(i AND j); distinct rows are at
    hamming distance exactly dim/2.
    """
    if dim < 1 or dim & (dim - 1):
        raise ValueError(f"dim must be a power of 2, got {dim}")
    if not 0 <= row < dim:
        raise ValueError(f"row must be in [0, {dim}), got {row}")
    j = np.arange(dim, dtype=np.uint64)
    return (np.bitwise_count(np.uint64(row) & j) & 1).astype(np.uint8)


def _tap_mask(taps):
    taps = sorted(set(int(t) for t in taps), reverse=True)
    if not taps or taps[-1] < 1:
        raise ValueError(f"invalid tap exponents: {taps}")
    degree = taps[0]
    # recurrence a[n+m] = XOR of a[n+t] over intermediate taps t, plus a[n];
    # with register bit k holding a[n+k] the feedback reads bit 0 and bits t
    mask = 1
    for t in taps[1:]:
        mask |= 1 << t
    return degree, mask


def lfsr_bits(taps, seed, count):
    """Fibonacci LFSR stream for polynomial x^t1 + x^t2 + ... + 1.

    `taps` lists the nonzero exponents (the implicit +1 is not listed);
    the register width is max(taps).  Output is the low bit per step.
    """
    degree, mask = _tap_mask(taps)
    state = int(seed)
    if not 0 < state < (1 << degree):
        raise ValueError(
            f"seed must be a nonzero {degree}-bit state, got {seed}")
    out = np.empty(count, dtype=np.uint8)
    for i in range(count):
        out[i] = state & 1
        fb = (state & mask).bit_count() & 1
        state = (state >> 1) | (fb << (degree - 1))
    return out


def m_sequence(taps, seed=1):
    """One full period (2^degree - 1 bits) of the LFSR stream."""
    degree, _ = _tap_mask(taps)
    return lfsr_bits(taps, seed, (1 << degree) - 1)

_code_cache = {}


def _cached_mseq(taps, seed=1):
    key = (tuple(sorted(taps)), seed)
    if key not in _code_cache:
        _code_cache[key] = m_sequence(taps, seed)
    return _code_cache[key]


def gold(index, taps1=GOLD_TAPS_1, taps2=GOLD_TAPS_2, seeds=(1, 1)):
    """Gold code: XOR of a preferred pair of m-sequences, the second
    cyclically shifted by `index`. One full period of bits."""
    m1 = _cached_mseq(taps1, seeds[0])
    m2 = _cached_mseq(taps2, seeds[1])
    if m1.shape != m2.shape:
        raise ValueError("preferred pair must share a degree")
    return m1 ^ np.roll(m2, int(index) % m1.shape[0])


def kasami(index, taps=GOLD_TAPS_1, seed=1):
    """Small-set Kasami code: m-sequence XOR its decimation by 2^(m/2)+1,
    the decimated (short-period) sequence cyclically shifted by `index`."""
    degree, _ = _tap_mask(taps)
    if degree % 2:
        raise ValueError(f"kasami needs an even LFSR degree, got {degree}")
    u = _cached_mseq(taps, seed)
    p = u.shape[0]
    t = (1 << (degree // 2)) + 1
    w = u[(np.arange(p) * t) % p]  # period 2^(m/2) - 1, tiled over p
    short = (1 << (degree // 2)) - 1
    return u ^ np.roll(w, int(index) % short)


def code_row(kind, index, dim, taps=None, seed=1):
    """Length-`dim` bit row from a code family, tiling past one period."""
    if kind == "hadamard":
        return hadamard_row(index, dim)
    if kind == "lfsr":
        base = _cached_mseq(taps or GOLD_TAPS_1, seed)
        row = np.roll(base, index % base.shape[0])
    elif kind == "gold":
        row = gold(index)
    elif kind == "kasami":
        degree, _ = _tap_mask(taps or GOLD_TAPS_1)
        short = (1 << (degree // 2)) - 1
        row = np.roll(kasami(index % short, taps or GOLD_TAPS_1, seed),
                      index // short)
    else:
        raise ValueError(f"unknown code kind: {kind}")
    reps = -(-dim // row.shape[0])
    return np.tile(row, reps)[:dim]


# ---------------------------------------------------------------------------
# Source descriptors

@dataclass(frozen=True)
class SequenceSource:
    """Descriptor of one concrete index -> [0,1) sequence (or bit stream)."""
    kind: str
    params: tuple = field(default=())

    def get(self, name, default=None):
        return dict(self.params).get(name, default)

    def describe(self):
        inner = ", ".join(f"{k}={v}" for k, v in self.params)
        return f"{self.kind}({inner})"


def make_source(kind, **params):
    if kind not in SEQUENCE_KINDS + CODE_KINDS:
        raise ValueError(f"unknown sequence kind: {kind}")
    return SequenceSource(kind, tuple(sorted(params.items())))


def source_value(src, index):
    """Value of a deterministic scalar source at `index`."""
    k = src.kind
    if k == "vdc":
        return vdc(index, src.get("base", 2))
    if k == "sobol":
        return sobol(src.get("dim", 1), index)
    if k == "halton":
        return halton(src.get("dim", 1), index)
    if k == "faure":
        return faure(src.get("dim", 1), index, src.get("omega", 2))
    if k == "weyl":
        return weyl(index, src.get("beta", WEYL_PI))
    if k == "r2":
        return weyl(index, src.get("alpha", _PLASTIC ** -1.0))
    if k == "hammersley":
        return hammersley(src.get("dim", 1), index, src.get("n"))
    raise ValueError(f"source kind {k} has no scalar value form")


def source_values(src, n):
    """First n values of a source as a float64 array (vectorized)."""
    k = src.kind
    if k == "vdc":
        return _vdc_block(n, src.get("base", 2))
    if k == "sobol":
        return _sobol_block(src.get("dim", 1), n)
    if k == "halton":
        return _vdc_block(n, primes(src.get("dim", 1))[-1])
    if k == "faure":
        return _faure_block(src.get("dim", 1), n, src.get("omega", 2))
    if k == "weyl":
        return np.mod(np.arange(n) * src.get("beta", WEYL_PI), 1.0)
    if k == "r2":
        return np.mod(np.arange(n) * src.get("alpha", _PLASTIC ** -1.0), 1.0)
    if k == "hammersley":
        total = src.get("n", n)
        d = src.get("dim", 1)
        if d == 1:
            return np.arange(n) / total
        return _vdc_block(n, primes(d - 1)[-1])
    if k == "latin":
        col = latin_hypercube(n, 1, src.get("seed", 0))[:, 0]
        return col
    if k == "random":
        rng = np.random.default_rng(src.get("seed", 0))
        return rng.random(n)
    raise ValueError(f"source kind {k} has no unit-interval values")


def family_sources(kind, count, n=None, seed=0):
    """One distinct parameterization per symbol for an item memory.

    Assignment policy per family: Sobol uses dimensions 1..count while the
    direction table lasts, then falls back to van der Corput with further
    primes; VDC/Halton use successive prime bases; Faure uses the smallest
    prime >= count; Weyl uses frac(sqrt(p_k)) over successive primes; R2
    uses the coordinates of the generalized d=count rotation; Hammersley
    uses its first `count` axes over `n` points; Latin hypercube uses the
    columns of a single seeded design.
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    if kind == "sobol":
        cap = sobol_max_dim()
        out = [make_source("sobol", dim=d) for d in range(1, min(count, cap) + 1)]
        if count > cap:
            out += [make_source("vdc", base=b) for b in primes(count - cap)]
        return out
    if kind in ("vdc", "halton"):
        return [make_source("vdc", base=b) for b in primes(count)]
    if kind == "faure":
        omega = _next_prime(count)
        return [make_source("faure", dim=d, omega=omega)
                for d in range(1, count + 1)]
    if kind == "weyl":
        betas = [math.sqrt(p) % 1.0 for p in primes(count)]
        return [make_source("weyl", beta=b) for b in betas]
    if kind == "r2":
        root = plastic_root(count) if count > 2 else _PLASTIC
        return [make_source("r2", alpha=root ** -(j + 1)) for j in range(count)]
    if kind == "hammersley":
        if n is None:
            raise ValueError("hammersley family needs the point count n")
        return [make_source("hammersley", dim=d, n=n)
                for d in range(1, count + 1)]
    if kind == "latin":
        return [make_source("latin", seed=(seed, k)) for k in range(count)]
    if kind == "random":
        return [make_source("random", seed=(seed, k)) for k in range(count)]
    raise ValueError(f"no family assignment for kind: {kind}")


# ---------------------------------------------------------------------------
# Point sets, discrepancy, export

def point_set(kind, n, d, seed=None, omega=None):
    """First n points of a d-dimensional set from the named family."""
    if kind == "random":
        return np.random.default_rng(seed).random((n, d))
    if kind == "latin":
        return latin_hypercube(n, d, seed)
    cols = []
    for k in range(1, d + 1):
        if kind == "vdc":
            cols.append(_vdc_block(n, primes(k)[-1]))
        elif kind == "sobol":
            cols.append(_sobol_block(k, n))
        elif kind == "halton":
            cols.append(_vdc_block(n, primes(k)[-1]))
        elif kind == "faure":
            w = omega or _next_prime(d)
            cols.append(_faure_block(k, n, w))
        elif kind == "weyl":
            beta = (WEYL_PI, WEYL_SILVER)[k - 1] if d <= 2 and k <= 2 \
                else math.sqrt(primes(k)[-1]) % 1.0
            cols.append(np.mod(np.arange(n) * beta, 1.0))
        elif kind == "r2":
            root = plastic_root(d) if d != 2 else _PLASTIC
            cols.append(np.mod(np.arange(n) * root ** -k, 1.0))
        elif kind == "hammersley":
            cols.append(np.arange(n) / n if k == 1
                        else _vdc_block(n, primes(k - 1)[-1]))
        else:
            raise ValueError(f"unknown point-set kind: {kind}")
    return np.column_stack(cols)


def centered_l2_discrepancy(ps):
    """Centered-L2 discrepancy (Hickernell closed form), O(n^2 d)."""
    ps = np.asarray(ps, dtype=np.float64)
    if ps.ndim != 2 or ps.shape[0] < 1:
        raise ValueError("point set must be a nonempty (n, d) array")
    n, d = ps.shape
    z = np.abs(ps - 0.5)
    term1 = (13.0 / 12.0) ** d
    term2 = np.prod(1.0 + 0.5 * z - 0.5 * z * z, axis=1).sum() * 2.0 / n
    cross = np.abs(ps[:, None, :] - ps[None, :, :])
    prod = np.prod(1.0 + 0.5 * z[:, None, :] + 0.5 * z[None, :, :]
                   - 0.5 * cross, axis=2)
    term3 = prod.sum() / (n * n)
    return math.sqrt(max(term1 - term2 + term3, 0.0))


def scatter_export(ps, path):
    """Write a point set as CSV for external plotting (header x,y,...)."""
    ps = np.asarray(ps, dtype=np.float64)
    if ps.ndim != 2:
        raise ValueError("point set must be an (n, d) array")
    names = ("x", "y", "z")
    header = ",".join(names[k] if k < 3 else f"c{k}"
                      for k in range(ps.shape[1]))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(header + "\n")
        for row in ps:
            fh.write(",".join(f"{v:.17g}" for v in row) + "\n")

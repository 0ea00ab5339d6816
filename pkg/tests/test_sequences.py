"""Deterministic sequence generators: exact values, identities, oracles."""

import math
from fractions import Fraction

import numpy as np
import pytest

from hdseed.sequences import (
    CODE_KINDS,
    SEQUENCE_KINDS,
    WEYL_PI,
    WEYL_SILVER,
    centered_l2_discrepancy,
    code_row,
    faure,
    family_sources,
    gold,
    hadamard_row,
    halton,
    hammersley,
    kasami,
    latin_hypercube,
    lfsr_bits,
    m_sequence,
    make_source,
    plastic_root,
    point_set,
    primes,
    r2,
    scatter_export,
    sobol,
    sobol_max_dim,
    source_value,
    source_values,
    vdc,
    weyl,
)


# ---------------------------------------------------------------------------
# van der Corput

def test_vdc_exact_worked_value():
    assert vdc(209, 7) == 305 / 343


def test_vdc_small_values():
    assert vdc(0, 2) == 0.0
    assert vdc(1, 2) == 0.5
    assert vdc(2, 2) == 0.25
    assert vdc(3, 2) == 0.75
    assert vdc(4, 2) == 0.125


def test_vdc_fraction_oracle():
    # independent radical-inverse oracle on exact rationals
    rng = np.random.default_rng(0)
    for _ in range(200):
        base = int(rng.choice([2, 3, 5, 7, 11, 13]))
        i = int(rng.integers(0, 100_000))
        frac, k = Fraction(0), i
        scale = Fraction(1, base)
        while k:
            frac += (k % base) * scale
            scale /= base
            k //= base
        assert vdc(i, base) == float(frac)


def test_vdc_base2_blocks_are_permutations():
    # first 2^k base-2 values tile the dyadic grid exactly, k <= 12
    for k in range(1, 13):
        n = 1 << k
        vals = sorted(vdc(i, 2) for i in range(n))
        assert vals == [j / n for j in range(n)]


def test_vdc_errors():
    with pytest.raises(ValueError):
        vdc(5, 1)
    with pytest.raises(ValueError):
        vdc(-1, 2)


def test_source_values_matches_scalar_vdc():
    src = make_source("vdc", base=5)
    block = source_values(src, 300)
    assert all(block[i] == vdc(i, 5) for i in range(300))


# ---------------------------------------------------------------------------
# Sobol

def test_sobol_dim1_is_base2_vdc():
    for i in range(0, 4096, 37):
        assert sobol(1, i) == vdc(i, 2)


def test_sobol_dim2_first_values():
    assert [sobol(2, i) for i in range(4)] == [0.0, 0.5, 0.75, 0.25]


def test_sobol_zero_index_is_origin():
    for d in (1, 2, 3, 8, 100, sobol_max_dim()):
        assert sobol(d, 0) == 0.0


def test_sobol_dim_bounds():
    assert sobol_max_dim() >= 8
    with pytest.raises(ValueError):
        sobol(0, 1)
    with pytest.raises(ValueError):
        sobol(sobol_max_dim() + 1,  1)


def test_sobol_block_matches_scalar():
    for d in (1, 2, 3, 7, 50, sobol_max_dim()):
        block = source_values(make_source("sobol", dim=d), 128)
        assert all(block[i] == sobol(d, i) for i in range(128))


def test_sobol_matches_reference_generator():
    # reference generators emit the Gray-code ordering of the same stream
    qmc = pytest.importorskip("scipy.stats.qmc")
    d, n = 8, 64
    ref = qmc.Sobol(d=d, scramble=False).random(n)
    for i in range(n):
        gray = i ^ (i >> 1)
        mine = [sobol(k + 1, gray) for k in range(d)]
        assert np.allclose(ref[i], mine, atol=1e-12)


def test_sobol_blocks_are_dyadic_permutations():
    # each dimension tiles the dyadic grid over power-of-two blocks
    for d in (1, 2, 5, 17):
        n = 256
        vals = sorted(source_values(make_source("sobol", dim=d), n))
        assert vals == [j / n for j in range(n)]


# ---------------------------------------------------------------------------
# Halton / Hammersley

def test_halton_values():
    assert halton(2, 1) == 1 / 3
    for i in (0, 1, 7, 100):
        assert halton(1, i) == vdc(i, 2)
    assert halton(6, 100) == vdc(100, 13)


def test_halton_error():
    with pytest.raises(ValueError):
        halton(0, 1)


def test_hammersley_first_axis_is_linear():
    n = 64
    for i in range(n):
        assert hammersley(1, i, n) == i / n
    assert hammersley(2, 5, n) == vdc(5, 2)
    assert hammersley(3, 5, n) == vdc(5, 3)
    with pytest.raises(ValueError):
        hammersley(1, n, n)


# ---------------------------------------------------------------------------
# Faure

def faure_oracle(dim, index, omega):
    # textbook construction with math.comb, independent of the module
    digits = []
    i = index
    while i:
        digits.append(i % omega)
        i //= omega
    for _ in range(dim - 1):
        digits = [sum(math.comb(r, j) * digits[r]
                      for r in range(len(digits))) % omega
                  for j in range(len(digits))]
    return float(sum(d * Fraction(1, omega ** (j + 1))
                     for j, d in enumerate(digits)))


def test_faure_matches_binomial_oracle():
    for omega in (2, 3, 5):
        for dim in range(1, omega + 1):
            for index in range(omega ** 4):
                assert faure(dim, index, omega) == pytest.approx(
                    faure_oracle(dim, index, omega), abs=1e-15)


def test_faure_dim1_is_vdc():
    for i in range(50):
        assert faure(1, i, 5) == vdc(i, 5)


def test_faure_zero_index():
    assert faure(3, 0, 5) == 0.0


def test_faure_blocks_are_permutations():
    # any dimension tiles the base-omega grid over omega^k blocks
    omega, k = 5, 3
    n = omega ** k
    for dim in range(1, omega + 1):
        vals = sorted(source_values(make_source("faure", dim=dim,
                                                omega=omega), n))
        assert np.allclose(vals, [j / n for j in range(n)], atol=1e-12)


def test_faure_errors():
    with pytest.raises(ValueError):
        faure(1, 1, 4)  # omega not prime
    with pytest.raises(ValueError):
        faure(6, 1, 5)  # dim exceeds omega


# ---------------------------------------------------------------------------
# Weyl / R2 rotations

def test_weyl_values():
    assert weyl(2, WEYL_SILVER) == pytest.approx(0.8284271247461903, abs=1e-12)
    assert weyl(0, WEYL_PI) == 0.0
    assert weyl(7, WEYL_PI) == pytest.approx((7 * math.pi) % 1.0, abs=1e-12)
    with pytest.raises(ValueError):
        weyl(-1, WEYL_PI)


def test_weyl_three_distance_property():
    # gaps between sorted rotation points take at most 3 distinct lengths
    vals = np.sort([weyl(i, WEYL_SILVER) for i in range(1024)])
    gaps = np.diff(np.concatenate([vals, [vals[0] + 1.0]]))
    assert len(np.unique(np.round(gaps, 12))) <= 3


def test_plastic_root_solves_polynomial():
    for d in (1, 2, 3, 10, 27):
        x = plastic_root(d)
        assert x > 1.0
        assert x ** (d + 1) == pytest.approx(x + 1.0, abs=1e-12)
    assert plastic_root(1) == pytest.approx((1 + math.sqrt(5)) / 2, abs=1e-12)
    assert plastic_root(2) == pytest.approx(1.3247179572447460, abs=1e-12)


def test_r2_values():
    assert r2(1, 1) == pytest.approx(0.7548776662466927, abs=1e-12)
    assert r2(2, 1) == pytest.approx(0.5698402909980532, abs=1e-12)
    root = plastic_root(2)
    for i in (1, 5, 100):
        assert r2(2, i) == pytest.approx((i * root ** -2) % 1.0, abs=1e-12)


# ---------------------------------------------------------------------------
# Latin hypercube

def test_latin_hypercube_stratification():
    pts = latin_hypercube(32, 3, seed=9)
    assert pts.shape == (32, 3)
    for k in range(3):
        strata = np.sort(np.floor(pts[:, k] * 32).astype(int))
        assert np.array_equal(strata, np.arange(32))


def test_latin_hypercube_seeded():
    a = latin_hypercube(16, 2, seed=4)
    b = latin_hypercube(16, 2, seed=4)
    c = latin_hypercube(16, 2, seed=5)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


# ---------------------------------------------------------------------------
# binary code rows

def test_hadamard_rows_pairwise_half_distance():
    dim = 64
    rows = np.stack([hadamard_row(r, dim) for r in range(dim)])
    assert not rows[0].any()  # row 0 is the all-zeros codeword
    for i in range(dim):
        for j in range(i + 1, dim):
            assert int(np.sum(rows[i] != rows[j])) == dim // 2


def test_hadamard_linearity():
    dim = 32
    for i, j in ((1, 2), (3, 5), (7, 24)):
        lhs = hadamard_row(i, dim) ^ hadamard_row(j, dim)
        assert np.array_equal(lhs, hadamard_row(i ^ j, dim))


def test_hadamard_errors():
    with pytest.raises(ValueError):
        hadamard_row(0, 48)
    with pytest.raises(ValueError):
        hadamard_row(8, 8)


def test_lfsr_period_and_balance():
    # x^7 + x^6 + 1 is primitive: period 127, 64 ones per period
    bits = lfsr_bits((7, 6), seed=1, count=254)
    assert np.array_equal(bits[:127], bits[127:])
    assert int(bits[:127].sum()) == 64
    window = bits[:127]
    for shift in range(1, 127):
        assert not np.array_equal(window, np.roll(window, shift))


def test_lfsr_seed_errors():
    with pytest.raises(ValueError):
        lfsr_bits((7, 6), seed=0, count=10)
    with pytest.raises(ValueError):
        lfsr_bits((7, 6), seed=1 << 7, count=10)


def test_m_sequence_balanced_within_one_bit():
    for taps in ((7, 6), (10, 3), (10, 9, 8, 6, 3, 2)):
        seq = m_sequence(taps)
        period = seq.shape[0]
        ones = int(seq.sum())
        assert abs(ones - (period - ones)) == 1


def test_m_sequence_shift_and_add():
    # shifted m-sequence XOR itself is another shift: weights all 2^(m-1)
    seq = m_sequence((10, 3))
    for shift in (1, 17, 500):
        assert int((seq ^ np.roll(seq, shift)).sum()) == 512


def test_gold_weight_classes():
    # degree-10 preferred pair: three-valued correlation means codeword
    # weights land in {480, 512, 544}
    period = 1023
    seen = set()
    for index in range(0, period, 11):
        w = int(gold(index).sum())
        assert w in (480, 512, 544)
        seen.add(w)
    assert len(seen) == 3


def test_gold_codes_distinct():
    rows = np.stack([gold(i) for i in range(32)])
    assert len({row.tobytes() for row in rows}) == 32


def test_kasami_weight_classes():
    # small-set Kasami (degree 10): weights confined to {496, 512, 528}
    short = 31
    for index in range(short):
        w = int(kasami(index).sum())
        assert w in (496, 512, 528)


def test_kasami_needs_even_degree():
    with pytest.raises(ValueError):
        kasami(0, taps=(7, 6))


def test_code_row_tiles_past_period():
    row = code_row("gold", 3, 2500)
    period = gold(3)
    assert np.array_equal(row[:1023], period)
    assert np.array_equal(row[1023:2046], period)
    assert np.array_equal(row[2046:], period[: 2500 - 2046])


def test_code_row_kinds():
    for kind in CODE_KINDS:
        row = code_row(kind, 2, 256)
        assert row.shape == (256,)
        assert row.dtype == np.uint8
    with pytest.raises(ValueError):
        code_row("nope", 0, 64)


# ---------------------------------------------------------------------------
# source descriptors and family policies

def test_make_source_rejects_unknown_kind():
    with pytest.raises(ValueError):
        make_source("fancy")


def test_source_value_matches_block():
    cases = [
        make_source("vdc", base=3),
        make_source("sobol", dim=4),
        make_source("halton", dim=3),
        make_source("faure", dim=2, omega=5),
        make_source("weyl", beta=WEYL_PI),
        make_source("r2", alpha=plastic_root(2) ** -1),
        make_source("hammersley", dim=2, n=64),
    ]
    for src in cases:
        block = source_values(src, 64)
        for i in range(64):
            assert block[i] == pytest.approx(source_value(src, i), abs=1e-12)


def test_family_sources_sobol_dims_then_prime_fallback():
    srcs = family_sources("sobol", 5)
    assert [s.get("dim") for s in srcs] == [1, 2, 3, 4, 5]
    cap = sobol_max_dim()
    srcs = family_sources("sobol", cap + 3)
    assert len(srcs) == cap + 3
    assert all(s.kind == "sobol" for s in srcs[:cap])
    assert [s.kind for s in srcs[cap:]] == ["vdc"] * 3
    assert [s.get("base") for s in srcs[cap:]] == [2, 3, 5]


def test_family_sources_prime_bases():
    srcs = family_sources("vdc", 6)
    assert [s.get("base") for s in srcs] == [2, 3, 5, 7, 11, 13]


def test_family_sources_faure_uses_one_prime():
    srcs = family_sources("faure", 6)
    omegas = {s.get("omega") for s in srcs}
    assert omegas == {7}
    assert [s.get("dim") for s in srcs] == [1, 2, 3, 4, 5, 6]


def test_family_sources_weyl_and_r2():
    srcs = family_sources("weyl", 3)
    expect = [math.sqrt(p) % 1.0 for p in (2, 3, 5)]
    assert [s.get("beta") for s in srcs] == expect
    srcs = family_sources("r2", 4)
    root = plastic_root(4)
    for j, s in enumerate(srcs):
        assert s.get("alpha") == pytest.approx(root ** -(j + 1), abs=1e-15)


def test_family_sources_distinct_streams():
    # every family hands out pairwise distinct parameterizations
    for kind in ("sobol", "vdc", "halton", "faure", "weyl", "r2", "latin",
                 "random"):
        srcs = family_sources(kind, 12, n=64)
        assert len(set(srcs)) == 12


def test_family_sources_errors():
    with pytest.raises(ValueError):
        family_sources("hammersley", 4)  # needs n
    with pytest.raises(ValueError):
        family_sources("sobol", 0)
    with pytest.raises(ValueError):
        family_sources("hadamard", 4)


# ---------------------------------------------------------------------------
# point sets, discrepancy, export

def test_point_set_shapes_and_ranges():
    for kind in SEQUENCE_KINDS:
        ps = point_set(kind, 64, 2, seed=1)
        assert ps.shape == (64, 2)
        assert np.all(ps >= 0.0) and np.all(ps < 1.0)


def test_point_set_sobol_columns():
    ps = point_set("sobol", 16, 2)
    assert np.array_equal(ps[:, 0], [vdc(i, 2) for i in range(16)])
    assert ps[3, 1] == sobol(2, 3)


def test_centered_l2_single_point_analytic():
    # one centered point in 2D: discrepancy is exactly 5/12
    val = centered_l2_discrepancy(np.array([[0.5, 0.5]]))
    assert val == pytest.approx(5.0 / 12.0, abs=1e-15)


def test_centered_l2_matches_reference():
    qmc = pytest.importorskip("scipy.stats.qmc")
    rng = np.random.default_rng(21)
    for _ in range(5):
        ps = rng.random((50, 3))
        mine = centered_l2_discrepancy(ps)
        ref = qmc.discrepancy(ps, method="CD")  # reference returns the square
        assert mine ** 2 == pytest.approx(ref, rel=1e-9)


def test_centered_l2_order_invariant():
    rng = np.random.default_rng(22)
    ps = rng.random((40, 2))
    shuffled = ps[rng.permutation(40)]
    assert centered_l2_discrepancy(ps) == pytest.approx(
        centered_l2_discrepancy(shuffled), rel=1e-12)


def test_centered_l2_prefers_uniform_grid():
    n = 16
    grid = np.stack(np.meshgrid(np.arange(4), np.arange(4)),
                    axis=-1).reshape(-1, 2) / 4.0 + 0.125
    clumped = np.full((n, 2), 0.1)
    assert (centered_l2_discrepancy(grid)
            < centered_l2_discrepancy(clumped))


def test_scatter_export_roundtrip(tmp_path):
    ps = point_set("sobol", 8, 2)
    path = tmp_path / "pts.csv"
    scatter_export(ps, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "x,y"
    assert len(lines) == 9
    parsed = np.array([[float(v) for v in ln.split(",")]
                       for ln in lines[1:]])
    assert np.array_equal(parsed, ps)  # 17 significant digits round-trip


def test_scatter_export_wide_header(tmp_path):
    ps = np.zeros((2, 5))
    path = tmp_path / "wide.csv"
    scatter_export(ps, path)
    assert path.read_text().splitlines()[0] == "x,y,z,c3,c4"


def test_primes_prefix():
    assert primes(8) == [2, 3, 5, 7, 11, 13, 17, 19]

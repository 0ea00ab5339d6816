"""Regenerate the packaged Sobol direction-number table.

Slices the first NDIM rows of the Joe-Kuo direction-number set that ships
with scipy (new-joe-kuo-6.21201) into src/hdseed/sobol_joe_kuo.npz.  Row r
parameterizes Sobol dimension r+1: `poly[r]` is the primitive polynomial
over GF(2) encoded as an integer (MSB = leading term), `vinit[r]` holds the
initial odd direction numbers m_1..m_s for s = degree(poly[r]).

Run from the repository root:  python3 tools/make_sobol_table.py
"""

import os

import numpy as np

NDIM = 1120  # covers one parameterization per MNIST pixel (784) plus slack

SCIPY_TABLE = os.path.join(
    os.path.dirname(np.__file__), "..", "scipy", "stats",
    "_sobol_direction_numbers.npz",
)
OUT = os.path.join(
    os.path.dirname(__file__), "..", "src", "hdseed", "sobol_joe_kuo.npz",
)


def main():
    src = np.load(SCIPY_TABLE)
    poly = src["poly"][:NDIM].astype(np.uint64)
    vinit = src["vinit"][:NDIM].astype(np.uint64)
    np.savez_compressed(OUT, poly=poly, vinit=vinit)
    print(f"wrote {os.path.normpath(OUT)}: {NDIM} dimensions, "
          f"vinit width {vinit.shape[1]}")


if __name__ == "__main__":
    main()

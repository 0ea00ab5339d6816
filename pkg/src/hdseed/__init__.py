"""Binary hyperdimensional computing with pluggable hypervector sources.

The package couples a packed binary hypervector algebra (bind / bundle /
permute / similarity) with deterministic unit-interval sequence generators
(van der Corput, Sobol, Halton, Faure, Weyl, R2, Hammersley, Latin
hypercube) and binary code families (Hadamard, LFSR, Gold, Kasami), so item
and level memories can be drawn from low-discrepancy or code structure
instead of a pseudo-random generator.  On top sit record / n-gram / level
encoders, a single-pass prototype classifier with optional retraining, and
benchmark drivers for image and language classification.
"""

from .hypervector import (
    Hypervector, Accumulator, random_hv, zero_hv, ones_hv, default_tie_break,
    bind, permute, complement, accumulate, binarize, bundle, hamming,
    similarity_hamming, dot_bipolar, cosine_bipolar,
)
from .sequences import (
    SequenceSource, make_source, source_value, source_values, family_sources,
    vdc, sobol, sobol_max_dim, halton, faure, weyl, r2, plastic_root,
    hammersley, latin_hypercube, hadamard_row, lfsr_bits, m_sequence, gold,
    kasami, code_row, primes, point_set, centered_l2_discrepancy,
    scatter_export,
)
from .encode import (
    ItemMemory, LevelMemory, item_memory_random, item_memory_from_sequence,
    item_memory_from_codes, level_memory_flip_chain, level_hv_from_sequence,
    record_encode, ngram_encode, permute_sum_encode, level_sum_encode,
    fractional_power_encode, gaussian_projection, rbf_encode,
    thermometer_encode, hologn_items, save_memory, load_memory,
)
from .model import (
    ClassModel, train_single_pass, classify, retrain_epoch, evaluate,
    save_model, load_model,
)

__version__ = "0.1.0"

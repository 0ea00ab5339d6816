"""Tour of the packed binary hypervector algebra.

Hypervectors are very long binary vectors compared by Hamming distance.
Three operations carry all the structure: bind (XOR) associates two vectors
into one dissimilar to both, bundle (bitwise majority) superposes vectors
into one similar to all inputs, and permute (circular shift) tags sequence
position.  This script builds a tiny symbolic record and queries it back.
"""

from hdseed import (
    bind,
    bundle,
    default_tie_break,
    hamming,
    permute,
    random_hv,
    similarity_hamming,
)

DIM = 10_000

# independent random vectors are nearly orthogonal at this dimension:
# expect a Hamming distance close to DIM / 2
a = random_hv(DIM, seed=(1, 0))
b = random_hv(DIM, seed=(1, 1))
print(f"distance between two random vectors: {hamming(a, b)} of {DIM}")

# binding is exactly invertible and distance-preserving
key = random_hv(DIM, seed=(1, 2))
assert bind(bind(a, key), key) == a
assert hamming(bind(a, key), bind(b, key)) == hamming(a, b)
print("bind is self-inverse and preserves distances")

# permutation shifts bits toward higher indices and composes additively
assert permute(permute(a, 3), 4) == permute(a, 7)
assert similarity_hamming(a, permute(a, 1)) < 0.55  # shifted = unrelated
print("permute composes additively and decorrelates")

# a record is a bundle of role-filler bindings: one query recovers a filler
roles = {name: random_hv(DIM, seed=(2, i))
         for i, name in enumerate(["color", "shape", "size"])}
fillers = {name: random_hv(DIM, seed=(3, i))
           for i, name in enumerate(["red", "square", "large"])}
record = bundle(
    [bind(roles["color"], fillers["red"]),
     bind(roles["shape"], fillers["square"]),
     bind(roles["size"], fillers["large"])],
    default_tie_break(DIM),
)

# unbinding the role gives a noisy copy of its filler; nearest neighbor
# over the filler inventory cleans it up
probe = bind(record, roles["color"])
best = max(fillers, key=lambda n: similarity_hamming(probe, fillers[n]))
print(f"record queried with role 'color' -> '{best}'")
for name, hv in fillers.items():
    print(f"  similarity to '{name}': {similarity_hamming(probe, hv):.3f}")

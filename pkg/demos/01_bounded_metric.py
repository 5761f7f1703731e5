#!/usr/bin/env python3
"""Tour of the bounded projective metric on the nonnegative cone.

Rays of nonnegative vectors carry two metrics built from the extreme
entrywise ratios: the classical Hilbert metric |log m|, which blows up on
the cone boundary, and the bounded variant (1-m)/(1+m), which stays in
[0, 1] everywhere. This script walks through both on small examples.
"""

import numpy as np

from projcone import (
    aleph,
    hilbert_distance,
    m_ratio,
    normalize,
    pseudo_distance,
    segment_distance,
)

f = np.array([1.0, 2.0])
g = np.array([2.0, 1.0])

print("Two rays in the plane quadrant:")
print("  f =", f, " g =", g)
print("  largest b with b*f <= g:", aleph(f, g))
print("  largest b with b*g <= f:", aleph(g, f))
pair = m_ratio(f, g)
print("  ratio product m =", pair.m)
print("  bounded distance d =", pseudo_distance(f, g))
print("  Hilbert distance  =", hilbert_distance(f, g))
print("  tanh(d_H / 2)     =", np.tanh(hilbert_distance(f, g) / 2), "(equals d)")

print()
print("Scale invariance: distances live on rays, not vectors.")
print("  d(3f, 17g) =", pseudo_distance(3 * f, 17 * g))
print("  canonical representative of the ray through (2, 4):", normalize([2, 4]))

print()
print("On the boundary the classical metric diverges, the bounded one saturates:")
e1, e2 = np.array([1.0, 0.0]), np.array([0.0, 1.0])
print("  d(e1, e2)   =", pseudo_distance(e1, e2))
print("  d_H(e1, e2) =", hilbert_distance(e1, e2))

print()
print("In a planar cross-section the distance has a closed form from the")
print("coordinates in the basis of the section's endpoints:")
for quad in [(2, 1, 1, 2), (1, 0, 0, 1), (1, 0, 1, 0)]:
    direct = segment_distance(*quad)
    via_cone = pseudo_distance(quad[:2], quad[2:])
    print(f"  coords {quad}: closed form {direct:.6f}, definitional {via_cone:.6f}")

print()
print("Triangle inequality on a random fuzz (worst slack should be ~0):")
rng = np.random.default_rng(1)
worst = 0.0
for _ in range(2000):
    a, b, c = (rng.uniform(0.01, 1.0, size=4) for _ in range(3))
    worst = max(worst, pseudo_distance(a, c) - pseudo_distance(a, b) - pseudo_distance(b, c))
print("  max d(a,c) - d(a,b) - d(b,c) over 2000 triples:", worst)

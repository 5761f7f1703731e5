#!/usr/bin/env python3
"""How much does a nonnegative matrix shrink the space of rays?

Every cone-preserving matrix is 1-Lipschitz for the bounded projective
metric; its best Lipschitz constant c(M) is the largest distance between
two column rays. This script measures c two independent ways and watches
the Lipschitz bound hold on random pairs.
"""

import numpy as np

from projcone import contraction_coeff, contraction_coeff_formula, pseudo_distance

M = np.array([[2.0, 1.0], [1.0, 2.0]])
report = contraction_coeff(M)
print("M =")
print(M)
print("definitional column-pair scan: c =", report.c, "witness columns", report.witness)
print("closed-form minor-ratio scan:  c =", contraction_coeff_formula(M))
print("optimal sandwich constant a* =", report.a_star)

print()
print("The coefficient is a guaranteed per-application shrink factor:")
rng = np.random.default_rng(2)
worst_ratio = 0.0
for _ in range(5000):
    f = rng.uniform(0.01, 1.0, size=2)
    g = rng.uniform(0.01, 1.0, size=2)
    before = pseudo_distance(f, g)
    after = pseudo_distance(M @ f, M @ g)
    if before > 0:
        worst_ratio = max(worst_ratio, after / before)
print("  max d(Mf, Mg) / d(f, g) over 5000 pairs:", worst_ratio, "<= c =", report.c)

print()
print("Composition multiplies the guarantees: c(AB) <= c(A) c(B).")
rng = np.random.default_rng(3)
A = rng.uniform(0.5, 2.0, size=(4, 4))
B = rng.uniform(0.5, 2.0, size=(4, 4))
cA, cB = contraction_coeff(A).c, contraction_coeff(B).c
print("  c(A) =", cA)
print("  c(B) =", cB)
print("  c(AB) =", contraction_coeff(A @ B).c, "<=", cA * cB)

print()
print("A matrix with a zero that breaks the pattern is NOT a strict contraction:")
I = np.eye(2)
print("  identity: c =", contraction_coeff(I).c, "(the two basis rays stay at distance 1)")

print()
print("But zeros confined to an all-zero row are harmless - the matrix")
print("collapses everything onto one ray:")
R = np.array([[1.0, 1.0], [0.0, 0.0]])
print("  [[1,1],[0,0]]: c =", contraction_coeff(R).c)

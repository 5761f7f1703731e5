import itertools
import math

import numpy as np
import pytest

from projcone import (
    a_star,
    apply,
    as_nonneg_matrix,
    certificate_is_valid,
    contraction_coeff,
    contraction_coeff_formula,
    is_cone_preserving,
    is_strictly_contracting,
    is_uniformly_positive,
    m_ratio,
    normalize,
    phi,
    pseudo_distance,
    psi,
    uniform_positivity_certificate,
)

from _util import assert_batch_matches_scalar, batch_pseudo_distance, random_cone_preserving_matrix, random_cone_vector


def test_as_nonneg_matrix_rejects_bad_input():
    for bad in ([[1, 2, 3], [4, 5, 6]], [[1, -2], [3, 4]], [[1, np.inf], [3, 4]], [1, 2, 3]):
        with pytest.raises(ValueError):
            as_nonneg_matrix(bad)


def test_apply_examples():
    np.testing.assert_array_equal(apply([[2, 1], [1, 2]], [1, 0]), [2.0, 1.0])
    np.testing.assert_array_equal(apply(np.eye(2), [3, 5]), [3.0, 5.0])
    np.testing.assert_array_equal(apply([[1, 1], [1, 1]], [1, 2]), [3.0, 3.0])


def test_apply_errors():
    with pytest.raises(ValueError):
        apply([[1, 0], [1, 0]], [0, 1])  # image is zero
    with pytest.raises(ValueError):
        apply([[1, 0], [1, 0]], [1, 0, 0])


def test_is_cone_preserving():
    assert is_cone_preserving(np.eye(2))
    assert is_cone_preserving([[1, 1], [0, 0]])
    assert not is_cone_preserving([[1, 0], [1, 0]])


# ---------------------------------------------------------------------------
# contraction coefficient, definitional route


def test_contraction_coeff_examples():
    rep = contraction_coeff([[2, 1], [1, 2]])
    assert rep.c == 0.6 and rep.is_strict and rep.witness == (0, 1) and rep.method == "definitional"
    assert rep.a_star == pytest.approx(2.0, abs=1e-12)

    rep = contraction_coeff([[1, 1], [1, 1]])
    assert rep.c == 0.0 and rep.a_star == 1.0

    rep = contraction_coeff(np.eye(2))
    assert rep.c == 1.0 and not rep.is_strict and rep.a_star is None

    rep = contraction_coeff([[4.0]])
    assert rep.c == 0.0 and rep.witness == (0, 0)


def test_contraction_coeff_requires_cone_preserving():
    with pytest.raises(ValueError, match="column 1"):
        contraction_coeff([[1, 0], [1, 0]])


def test_contraction_coeff_matches_pairwise_m_ratio():
    rng = np.random.default_rng(21)
    for _ in range(50):
        dim = int(rng.integers(2, 7))
        M = random_cone_preserving_matrix(rng, dim)
        rep = contraction_coeff(M)
        pairwise = max(
            phi(m_ratio(M[:, i], M[:, j]).m) for i in range(dim) for j in range(i + 1, dim)
        )
        assert rep.c == pairwise  # bitwise: same divisions, same reductions


def test_contraction_coeff_deterministic_across_workers():
    rng = np.random.default_rng(22)
    M = rng.uniform(0.1, 5.0, size=(40, 40))
    serial = contraction_coeff(M)
    for workers in (1, 2, 4):
        threaded = contraction_coeff(M, workers=workers)
        assert threaded.c == serial.c
        assert threaded.witness == serial.witness


def test_contraction_coeff_witness_is_lexicographically_smallest():
    # columns 1 and 2 are identical, so pairs (0,1) and (0,2) tie for the max
    M = np.array([[1.0, 2.0, 2.0], [1.0, 1.0, 1.0], [1.0, 1.0, 1.0]])
    rep = contraction_coeff(M)
    assert rep.witness == (0, 1)


def test_one_lipschitz_and_contraction_law():
    rng = np.random.default_rng(23)
    for _ in range(60):
        dim = int(rng.integers(2, 9))
        M = random_cone_preserving_matrix(rng, dim)
        c = contraction_coeff(M).c
        F = np.column_stack([random_cone_vector(rng, dim, zero_prob=0.3) for _ in range(20)])
        G = np.column_stack([random_cone_vector(rng, dim, zero_prob=0.3) for _ in range(20)])
        assert_batch_matches_scalar(F, G, count=3)
        before = batch_pseudo_distance(F, G)
        after = batch_pseudo_distance(M @ F, M @ G)
        assert np.all(after <= before + 1e-10)          # 1-Lipschitz, always
        assert np.all(after <= c * before + 1e-10)       # contraction law
        assert np.all(after <= c + 1e-10)                # coefficient is the sup


def test_contraction_submultiplicative():
    rng = np.random.default_rng(24)
    for _ in range(60):
        dim = int(rng.integers(2, 7))
        A = random_cone_preserving_matrix(rng, dim)
        B = random_cone_preserving_matrix(rng, dim)
        assert contraction_coeff(A @ B).c <= contraction_coeff(A).c * contraction_coeff(B).c + 1e-10


# ---------------------------------------------------------------------------
# closed form


def test_formula_examples():
    assert contraction_coeff_formula([[2, 1], [1, 2]]) == 0.6
    assert contraction_coeff_formula([[1, 1], [1, 1]]) == 0.0
    assert contraction_coeff_formula([[3, 1], [1, 3]]) == 0.8
    assert contraction_coeff_formula([[5.0]]) == 0.0


def test_formula_requires_strict_positivity():
    with pytest.raises(ValueError):
        contraction_coeff_formula([[1, 1], [0, 1]])


def test_formula_agrees_with_definitional_and_transpose():
    rng = np.random.default_rng(25)
    for _ in range(100):
        dim = int(rng.integers(2, 7))
        M = rng.uniform(0.1, 10.0, size=(dim, dim))
        via_formula = contraction_coeff_formula(M)
        assert abs(via_formula - contraction_coeff(M).c) <= 1e-12
        assert via_formula == contraction_coeff_formula(M.T)


# ---------------------------------------------------------------------------
# zero-pattern predicates


def test_is_uniformly_positive_examples():
    assert is_uniformly_positive([[2, 1], [1, 2]])
    assert not is_uniformly_positive(np.eye(2))
    assert is_uniformly_positive([[1, 1], [0, 0]])
    assert is_uniformly_positive([[1, 0], [1, 0]])  # zeros fill an all-zero column


def test_is_strictly_contracting_examples():
    assert is_strictly_contracting([[1, 1], [0, 0]])
    assert not is_strictly_contracting(np.eye(2))
    assert is_strictly_contracting([[2, 1], [1, 2]])
    with pytest.raises(ValueError):
        is_strictly_contracting([[1, 0], [1, 0]])


def test_extreme_dynamic_range_saturates_the_metric():
    # mathematically c < 1 here, but once m drops below ~2e-17 the bounded
    # distance (1-m)/(1+m) rounds to exactly 1.0 in double precision; the
    # zero-pattern test works on exact entries and is not affected
    M = np.array([[2.0, 1e-15], [1e-15, 2.0]])
    assert is_strictly_contracting(M)
    rep = contraction_coeff(M)
    assert rep.c == 1.0 and not rep.is_strict


def test_pattern_agrees_with_metric_fuzzed():
    rng = np.random.default_rng(26)
    for _ in range(300):
        dim = int(rng.integers(2, 9))
        M = random_cone_preserving_matrix(rng, dim, zero_prob=float(rng.uniform(0.0, 0.7)))
        assert is_strictly_contracting(M) == (contraction_coeff(M).c < 1.0 - 1e-12)


def test_pattern_agrees_with_metric_exhaustive_2x2():
    rng = np.random.default_rng(27)
    for bits in itertools.product((0, 1), repeat=4):
        pattern = np.array(bits, dtype=float).reshape(2, 2)
        if not (pattern > 0).any(axis=0).all():
            continue
        M = pattern * rng.uniform(0.1, 10.0, size=(2, 2))
        assert is_strictly_contracting(M) == (contraction_coeff(M).c < 1.0 - 1e-12)


# ---------------------------------------------------------------------------
# certificates and the optimal constant


def test_certificate_examples():
    cert = uniform_positivity_certificate([[1, 1], [1, 1]])
    assert cert.A == 1.0
    np.testing.assert_array_equal(cert.h, [1.0, 1.0])
    np.testing.assert_array_equal(cert.b, [1.0, 1.0])

    cert = uniform_positivity_certificate([[2, 1], [1, 2]])
    assert (cert.reference_row, cert.reference_col) == (0, 0)
    np.testing.assert_array_equal(cert.h, [2.0, 1.0])
    np.testing.assert_array_equal(cert.b, [2.0, 1.0])
    assert cert.A == 2.0

    cert = uniform_positivity_certificate([[1, 1], [0, 0]])
    np.testing.assert_array_equal(cert.h, [1.0, 0.0])
    np.testing.assert_array_equal(cert.b, [1.0, 1.0])
    assert cert.A == 1.0


def test_certificate_preconditions():
    with pytest.raises(ValueError):
        uniform_positivity_certificate(np.eye(2))  # not uniformly positive
    with pytest.raises(ValueError):
        uniform_positivity_certificate([[1, 0], [1, 0]])  # not cone-preserving


def test_certificate_sandwich_and_linearity():
    rng = np.random.default_rng(28)
    for _ in range(50):
        dim = int(rng.integers(1, 7))
        M = rng.uniform(0.1, 10.0, size=(dim, dim))
        if rng.random() < 0.3 and dim > 1:
            M[int(rng.integers(dim)), :] = 0.0  # an all-zero row keeps the pattern valid
        if not is_cone_preserving(M):
            continue
        cert = uniform_positivity_certificate(M)
        assert certificate_is_valid(M, cert)
        assert cert.A >= a_star(M) - 1e-10
        # by linearity the sandwich extends from basis rays to the whole cone
        f = random_cone_vector(rng, dim)
        Mf = M @ f
        coeff = float(cert.b @ f)
        slack = 1e-9 * max(Mf.max(), 1.0)
        assert np.all(coeff * cert.h / cert.A <= Mf + slack)
        assert np.all(Mf <= cert.A * coeff * cert.h + slack)


def test_certificate_is_valid_rejects_tampering():
    M = np.array([[2.0, 1.0], [1.0, 2.0]])
    cert = uniform_positivity_certificate(M)
    bad = type(cert)(h=cert.h, b=cert.b, A=1.0, reference_row=0, reference_col=0)
    assert not certificate_is_valid(M, bad)


def test_a_star_examples():
    assert a_star([[2, 1], [1, 2]]) == pytest.approx(2.0, abs=1e-12)
    assert a_star([[1, 1], [1, 1]]) == 1.0
    assert a_star([[3, 1], [1, 3]]) == pytest.approx(3.0, abs=1e-12)
    with pytest.raises(ValueError):
        a_star(np.eye(2))


def test_psi_roundtrip_on_random_matrices():
    rng = np.random.default_rng(29)
    for _ in range(100):
        dim = int(rng.integers(2, 7))
        M = rng.uniform(0.1, 10.0, size=(dim, dim))
        rep = contraction_coeff(M)
        assert abs(psi(rep.a_star) - rep.c) <= 1e-12

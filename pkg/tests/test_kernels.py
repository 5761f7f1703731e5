import math

import numpy as np
import pytest

from projcone import (
    FactorizationCertificate,
    KernelGrid,
    KernelPatternError,
    builtin_kernel,
    contraction_coeff,
    discretize,
    factorization_certificate,
    factorization_is_valid,
    kernel_contraction_estimate,
    m_ratio,
    phi,
    psi,
    relate_certificate_to_coefficient,
    tabulate_kernel,
    uniform_grid,
)


# ---------------------------------------------------------------------------
# grids


def test_uniform_grid_midpoint():
    nodes, weights = uniform_grid(4)
    np.testing.assert_allclose(nodes, [0.125, 0.375, 0.625, 0.875])
    np.testing.assert_allclose(weights, [0.25] * 4)


def test_uniform_grid_trapezoid():
    nodes, weights = uniform_grid(3, "trapezoid")
    np.testing.assert_allclose(nodes, [0.0, 0.5, 1.0])
    np.testing.assert_allclose(weights, [0.25, 0.5, 0.25])
    assert weights.sum() == pytest.approx(1.0)


def test_uniform_grid_errors():
    with pytest.raises(ValueError):
        uniform_grid(0)
    with pytest.raises(ValueError):
        uniform_grid(1, "trapezoid")
    with pytest.raises(ValueError):
        uniform_grid(4, "simpson")


def test_kernel_grid_validation():
    good = dict(nodes=[0.25, 0.75], weights=[0.5, 0.5], values=[[1.0, 1.0], [1.0, 1.0]])
    KernelGrid(**good)
    with pytest.raises(ValueError):
        KernelGrid(**{**good, "nodes": [0.75, 0.25]})
    with pytest.raises(ValueError):
        KernelGrid(**{**good, "nodes": [0.25, 1.75]})
    with pytest.raises(ValueError):
        KernelGrid(**{**good, "weights": [0.5, -0.5]})
    with pytest.raises(ValueError):
        KernelGrid(**{**good, "weights": [0.5, 0.6]})
    with pytest.raises(ValueError):
        KernelGrid(**{**good, "values": [[1.0, -1.0], [1.0, 1.0]]})
    with pytest.raises(ValueError, match="column 1"):
        KernelGrid(**{**good, "values": [[1.0, 0.0], [1.0, 0.0]]})
    with pytest.raises(ValueError):
        KernelGrid(**{**good, "values": [[1.0, 1.0]]})


def test_builtin_kernels():
    x = np.array([[0.0], [0.5]])
    y = np.array([[0.0, 1.0]])
    np.testing.assert_allclose(builtin_kernel("constant", value=3.0)(x, y), np.full((2, 2), 3.0))
    np.testing.assert_allclose(builtin_kernel("poly1xy")(x, y), [[1.0, 1.0], [1.0, 1.5]])
    np.testing.assert_allclose(builtin_kernel("gaussian", sigma=0.5)(x, y), np.exp(-((x - y) ** 2) / 0.5))
    sep = builtin_kernel("separable")(x, y)
    np.testing.assert_allclose(sep, (1.0 + x) * np.exp(-y))
    with pytest.raises(ValueError):
        builtin_kernel("sine")
    with pytest.raises(ValueError):
        builtin_kernel("gaussian", sigma=0.0)
    with pytest.raises(ValueError):
        builtin_kernel("constant", value=-1.0)
    with pytest.raises(ValueError):
        builtin_kernel("poly1xy", sigma=1.0)


# ---------------------------------------------------------------------------
# discretization


def test_discretize_constant_kernel_two_nodes():
    grid = tabulate_kernel(builtin_kernel("constant"), 2)
    np.testing.assert_array_equal(discretize(grid), [[0.5, 0.5], [0.5, 0.5]])


def test_discretize_separable_kernel_is_rank_one():
    grid = tabulate_kernel(builtin_kernel("separable"), 5)
    M = discretize(grid)
    assert np.linalg.matrix_rank(M) == 1
    assert kernel_contraction_estimate(grid).c <= 1e-12


def test_discretize_poly_kernel_strictly_positive():
    grid = tabulate_kernel(builtin_kernel("poly1xy"), 3)
    M = discretize(grid)
    assert M.shape == (3, 3) and np.all(M > 0)
    rep = kernel_contraction_estimate(grid)
    assert 0.0 < rep.c < 1.0
    # oracle: the estimate is exactly the pairwise column scan of the values
    pairwise = max(
        phi(m_ratio(grid.values[:, i], grid.values[:, j]).m) for i in range(3) for j in range(i + 1, 3)
    )
    assert abs(rep.c - pairwise) <= 1e-12


# ---------------------------------------------------------------------------
# factorization certificates


def test_certificate_exact_for_separable_kernels():
    for n in (2, 5, 16):
        grid = tabulate_kernel(builtin_kernel("separable"), n)
        cert = factorization_certificate(grid)
        assert 1.0 <= cert.A <= 1.0 + 1e-12
        assert factorization_is_valid(grid.values, cert)


def test_certificate_constant_kernel():
    grid = tabulate_kernel(builtin_kernel("constant"), 4)
    cert = factorization_certificate(grid)
    assert cert.A == 1.0
    np.testing.assert_array_equal(cert.g1, np.ones(4))
    np.testing.assert_array_equal(cert.g2, np.ones(4))


def test_certificate_poly_kernel_bounded_by_two():
    for n, rule in ((4, "midpoint"), (8, "midpoint"), (8, "trapezoid"), (16, "trapezoid")):
        grid = tabulate_kernel(builtin_kernel("poly1xy"), n, rule)
        cert = factorization_certificate(grid)
        assert 1.0 <= cert.A <= 2.0 + 1e-12
        assert factorization_is_valid(grid.values, cert)
    # with endpoints in the grid the bound is attained at (x, y) = (0, 0)
    grid = tabulate_kernel(builtin_kernel("poly1xy"), 8, "trapezoid")
    assert factorization_certificate(grid).A == pytest.approx(2.0, abs=1e-12)


def test_certificate_pattern_failure_identifies_offender():
    values = np.array([[1.0, 1.0, 0.0], [1.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    grid = KernelGrid(nodes=[0.1, 0.5, 0.9], weights=[1 / 3] * 3, values=values)
    with pytest.raises(KernelPatternError) as err:
        factorization_certificate(grid)
    assert (err.value.row, err.value.col) == (0, 2)
    # the same zero pattern makes the discretized operator non-contracting
    assert kernel_contraction_estimate(grid).c == 1.0


def test_certificate_survives_all_zero_row():
    # a kernel vanishing on a full x-slice still factorizes: g1 is zero there
    values = np.array([[1.0, 2.0], [0.0, 0.0]])
    grid = KernelGrid(nodes=[0.25, 0.75], weights=[0.5, 0.5], values=values)
    cert = factorization_certificate(grid)
    assert factorization_is_valid(values, cert)
    assert cert.g1[1] == 0.0


def test_factorization_is_valid_rejects_tampering():
    grid = tabulate_kernel(builtin_kernel("poly1xy"), 5)
    cert = factorization_certificate(grid)
    bad = FactorizationCertificate(g1=cert.g1, g2=cert.g2, A=1.0, reference_row=cert.reference_row,
                                   reference_col=cert.reference_col)
    assert not factorization_is_valid(grid.values, bad)


def test_modulated_separable_kernels_have_bounded_certificates():
    # K = g1 * g2 * g3 with g3 in [1/B, B] admits certificates with A <= B**2
    for sigma in (1.0, 0.5):
        bound = math.exp(1.0 / sigma) ** 2
        for rule in ("midpoint", "trapezoid"):
            grid = tabulate_kernel(builtin_kernel("gaussian", sigma=sigma), 9, rule)
            assert factorization_certificate(grid).A <= bound + 1e-9

    modulated = lambda x, y: (1.0 + x) * np.exp(-y) * (1.0 + x * y)  # g3 in [1, 2]
    grid = tabulate_kernel(modulated, 9)
    assert factorization_certificate(grid).A <= 4.0 + 1e-9


def test_certificate_grows_under_node_refinement():
    # trapezoid refinement n -> 2n - 1 keeps the coarse nodes, so the max
    # defining A runs over a superset of points
    for kernel in (builtin_kernel("poly1xy"), builtin_kernel("gaussian", sigma=0.7)):
        coarse = factorization_certificate(tabulate_kernel(kernel, 5, "trapezoid"))
        fine = factorization_certificate(tabulate_kernel(kernel, 9, "trapezoid"))
        assert fine.A >= coarse.A - 1e-12


# ---------------------------------------------------------------------------
# coefficient estimates and the psi bound


def test_weight_invariance_of_coefficient():
    rng = np.random.default_rng(41)
    grid = tabulate_kernel(builtin_kernel("poly1xy"), 8)
    c_weighted = kernel_contraction_estimate(grid).c
    c_plain = contraction_coeff(grid.values).c
    assert abs(c_weighted - c_plain) <= 1e-12
    for _ in range(5):
        w = rng.uniform(0.1, 5.0, size=8)
        reweighted = KernelGrid(nodes=grid.nodes, weights=w / w.sum(), values=grid.values)
        assert abs(kernel_contraction_estimate(reweighted).c - c_plain) <= 1e-12


def test_poly_kernel_coefficient_stable_on_endpoint_grids():
    # node sets that include the endpoints pin the extreme columns, so the
    # estimate settles immediately; doubling the resolution moves it by far
    # less than 10%
    c3 = kernel_contraction_estimate(tabulate_kernel(builtin_kernel("poly1xy"), 3, "trapezoid")).c
    c6 = kernel_contraction_estimate(tabulate_kernel(builtin_kernel("poly1xy"), 6, "trapezoid")).c
    assert c3 == pytest.approx(1.0 / 3.0, abs=1e-12)
    assert abs(c3 - c6) <= 0.1 * max(c3, c6)


def test_relate_certificate_to_coefficient():
    bound, c = relate_certificate_to_coefficient(tabulate_kernel(builtin_kernel("separable"), 6))
    assert bound <= 1e-12 and c <= 1e-12

    bound, c = relate_certificate_to_coefficient(tabulate_kernel(builtin_kernel("constant"), 6))
    assert bound == 0.0 and c == 0.0

    for n in (4, 8):
        grid = tabulate_kernel(builtin_kernel("poly1xy"), n)
        bound, c = relate_certificate_to_coefficient(grid)
        assert c <= bound + 1e-10
        assert bound == psi(factorization_certificate(grid).A)

"""Contraction analysis of nonnegative square matrices acting on the cone.

A nonnegative matrix acts on cone vectors by ``f -> M @ f`` (column action:
the image of the j-th basis ray is the j-th column).  When no column is
zero the action maps the cone into itself and induces a 1-Lipschitz map of
rays for the bounded projective metric.  The least Lipschitz constant, the
contraction coefficient ``c(M)``, equals the largest pairwise distance
between column rays and is computable in O(d^3).

``c(M) < 1`` holds exactly when the zero entries of ``M`` are confined to
all-zero rows, equivalently when ``M`` admits a sandwich certificate
``A**-1 * b[j] * h <= M e_j <= A * b[j] * h`` around a single direction
``h``.  The optimal constant is ``a_star(M) = psi_inverse(c(M))``.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .cone import as_cone_vector, psi_inverse

__all__ = [
    "ContractionReport",
    "UniformPositivityCertificate",
    "a_star",
    "apply",
    "as_nonneg_matrix",
    "certificate_is_valid",
    "contraction_coeff",
    "contraction_coeff_formula",
    "is_cone_preserving",
    "is_strictly_contracting",
    "is_uniformly_positive",
    "uniform_positivity_certificate",
]


def as_nonneg_matrix(M) -> np.ndarray:
    """Validate and return ``M`` as a square 2-d float array with entries >= 0."""
    arr = np.asarray(M, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix entries must be finite")
    if np.any(arr < 0.0):
        raise ValueError("matrix entries must be nonnegative")
    return arr


def first_zero_column(M, zero_tol: float = 0.0) -> int | None:
    """Index of the first column with no entry above ``zero_tol``, or None."""
    M = as_nonneg_matrix(M)
    dead = ~(M > zero_tol).any(axis=0)
    if not dead.any():
        return None
    return int(np.argmax(dead))


def is_cone_preserving(M, zero_tol: float = 0.0) -> bool:
    """True iff every column has a positive entry.

    That is exactly the condition for ``M @ f`` to stay in the cone for
    every cone vector ``f``: no basis ray is annihilated.
    """
    M = as_nonneg_matrix(M)
    return bool(np.all((M > zero_tol).any(axis=0)))


def apply(M, f, zero_tol: float = 0.0) -> np.ndarray:
    """Image ``M @ f`` of a cone vector, kept inside the cone.

    Raises if the image is (numerically) zero, which happens only when ``M``
    annihilates every basis ray in the support of ``f``.
    """
    M = as_nonneg_matrix(M)
    f = as_cone_vector(f, zero_tol)
    if f.size != M.shape[1]:
        raise ValueError(f"dimension mismatch: matrix is {M.shape[0]}x{M.shape[1]}, vector has {f.size} entries")
    out = M @ f
    if not np.any(out > zero_tol):
        raise ValueError("image of the cone vector is zero: matrix does not preserve the cone on this input")
    return out


@dataclass(frozen=True)
class ContractionReport:
    """Contraction coefficient of a matrix together with certificate data.

    ``is_strict`` is equivalent to ``c < 1``; ``a_star`` (the optimal
    sandwich constant, ``psi_inverse(c)``) is present exactly in that case.
    ``witness`` is a pair of column indices attaining the coefficient.
    """

    c: float
    is_strict: bool
    a_star: float | None
    witness: tuple[int, int]
    method: str


def _aleph_columns(M: np.ndarray, zero_tol: float, workers: int | None = None) -> np.ndarray:
    """All pairwise extreme ratios between columns: out[i, j] = aleph(col_i, col_j).

    Row ``i`` is computed as the columnwise minimum of ``M[s, :] / M[s, i]``
    over the support ``s`` of column ``i`` - the same divisions and the same
    reduction as :func:`projcone.cone.aleph` on the column pair, so results
    agree bitwise with the scalar route.  Rows are independent, which makes
    the optional thread fan-out deterministic.
    """
    n = M.shape[1]
    out = np.empty((n, n))

    def fill(lo: int, hi: int) -> None:
        for i in range(lo, hi):
            sup = M[:, i] > zero_tol
            out[i, :] = (M[sup, :] / M[sup, i, None]).min(axis=0)

    if workers is None or workers <= 1 or n < 4:
        fill(0, n)
    else:
        step = -(-n // workers)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = [pool.submit(fill, lo, min(lo + step, n)) for lo in range(0, n, step)]
            for chunk in chunks:
                chunk.result()
    return out


def contraction_coeff(M, zero_tol: float = 0.0, workers: int | None = None) -> ContractionReport:
    """Contraction coefficient ``c(M)``: the best Lipschitz constant on rays.

    Computed definitionally as the maximum bounded-metric distance between
    column rays, scanning all column pairs in O(d^3).  The witness is the
    lexicographically smallest attaining pair.  Passing ``workers`` fans the
    scan over threads; the result (including the witness) is bitwise
    identical to the serial run.

    For a 1x1 matrix there is a single ray, so ``c = 0``.
    """
    M = as_nonneg_matrix(M)
    if not is_cone_preserving(M, zero_tol):
        j = first_zero_column(M, zero_tol)
        raise ValueError(f"matrix is not cone-preserving: column {j} has no positive entry")
    n = M.shape[1]
    if n == 1:
        return ContractionReport(c=0.0, is_strict=True, a_star=1.0, witness=(0, 0), method="definitional")
    al = _aleph_columns(M, zero_tol, workers)
    m = al * al.T
    np.minimum(m, 1.0, out=m)
    dist = (1.0 - m) / (1.0 + m)
    rows, cols = np.triu_indices(n, k=1)
    vals = dist[rows, cols]
    k = int(np.argmax(vals))  # first occurrence = lexicographically smallest pair
    c = float(vals[k])
    is_strict = c < 1.0
    return ContractionReport(
        c=c,
        is_strict=is_strict,
        a_star=psi_inverse(c) if is_strict else None,
        witness=(int(rows[k]), int(cols[k])),
        method="definitional",
    )


def contraction_coeff_formula(M, zero_tol: float = 0.0) -> float:
    """Closed-form coefficient by exhaustive scan of 2x2 minor ratios.

    Maximum over all index quadruples (i, j, k, l) of

        ``|M[k,i]*M[l,j] - M[k,j]*M[l,i]| / (M[k,i]*M[l,j] + M[k,j]*M[l,i])``

    Requires strictly positive entries, where every denominator is positive;
    on that domain it agrees with :func:`contraction_coeff` and is kept as
    an independent O(d^4) cross-check and benchmark baseline.  With zero
    entries the expression needs a 0/0 convention that is unsound for
    rank-deficient patterns, so this function refuses them; use
    :func:`contraction_coeff` instead.
    """
    M = as_nonneg_matrix(M)
    if np.any(M <= zero_tol):
        raise ValueError("closed-form coefficient requires strictly positive entries; use contraction_coeff")
    n = M.shape[1]
    best = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            prod = np.outer(M[:, i], M[:, j])  # prod[k, l] = M[k,i] * M[l,j]
            val = float((np.abs(prod - prod.T) / (prod + prod.T)).max())
            if val > best:
                best = val
    return best


def is_uniformly_positive(M, zero_tol: float = 0.0) -> bool:
    """Zero-pattern test: zeros confined to all-zero rows or all-zero columns.

    Equivalently, after deleting all-zero rows and columns the remaining
    submatrix is strictly positive.  For cone-preserving ``M`` this is
    exactly strict contraction, ``c(M) < 1``.
    """
    M = as_nonneg_matrix(M)
    pos = M > zero_tol
    row_zero = ~pos.any(axis=1)
    col_zero = ~pos.any(axis=0)
    return bool(np.all(pos | row_zero[:, None] | col_zero[None, :]))


def is_strictly_contracting(M, zero_tol: float = 0.0) -> bool:
    """Pattern test for ``c(M) < 1``, assuming ``M`` preserves the cone.

    Under the column action, every zero entry must lie in an all-zero row.
    (Cone preservation rules out all-zero columns, so this coincides with
    :func:`is_uniformly_positive` on its domain.)
    """
    M = as_nonneg_matrix(M)
    if not is_cone_preserving(M, zero_tol):
        raise ValueError("matrix is not cone-preserving")
    pos = M > zero_tol
    row_zero = ~pos.any(axis=1)
    return bool(np.all(pos | row_zero[:, None]))


@dataclass(frozen=True)
class UniformPositivityCertificate:
    """Constructive sandwich around a single direction ``h``.

    Certifies ``A**-1 * b[j] * h <= M @ e_j <= A * b[j] * h`` entrywise for
    every basis vector ``e_j`` (and, by linearity, for every cone vector
    with coefficient ``b @ f``).  ``h`` is column ``reference_col`` of the
    matrix and ``b`` is row ``reference_row``.
    """

    h: np.ndarray
    b: np.ndarray
    A: float
    reference_row: int
    reference_col: int


def certificate_is_valid(M, cert: UniformPositivityCertificate, rtol: float = 1e-9, zero_tol: float = 0.0) -> bool:
    """Check the certificate's sandwich on every basis vector.

    Inequalities are verified with slack ``rtol`` relative to the largest
    matrix entry.
    """
    M = as_nonneg_matrix(M)
    h = as_cone_vector(cert.h, zero_tol)
    b = np.asarray(cert.b, dtype=float)
    if h.size != M.shape[0] or b.size != M.shape[1]:
        raise ValueError("certificate dimensions do not match the matrix")
    prod = np.outer(h, b)
    slack = rtol * float(M.max())
    lower_ok = np.all(prod / cert.A <= M + slack)
    upper_ok = np.all(M <= cert.A * prod + slack)
    return bool(lower_ok and upper_ok)


def uniform_positivity_certificate(M, zero_tol: float = 0.0) -> UniformPositivityCertificate:
    """Build a sandwich certificate from a reference row and column.

    The reference indices are the row and column of the largest entry
    (first occurrence in row-major order), which necessarily lie in a
    nonzero row and column; ``h`` is the reference column, ``b`` the
    reference row, and ``A`` the smallest constant making the sandwich hold
    for this particular pair, scanned over all entries in nonzero rows.

    The returned ``A`` is always at least :func:`a_star`, the optimal
    constant over *all* admissible pairs, and in general exceeds it.
    """
    M = as_nonneg_matrix(M)
    if not is_cone_preserving(M, zero_tol):
        raise ValueError("matrix is not cone-preserving")
    if not is_uniformly_positive(M, zero_tol):
        raise ValueError("matrix is not uniformly positive: some zero entry lies in a nonzero row and a nonzero column")
    i0, j0 = (int(k) for k in np.unravel_index(int(np.argmax(M)), M.shape))
    h = M[:, j0].copy()
    b = M[i0, :].copy()
    rows_pos = (M > zero_tol).any(axis=1)
    ratios = M[rows_pos, :] / np.outer(h[rows_pos], b)
    A = float(max(ratios.max(), (1.0 / ratios).max()))
    cert = UniformPositivityCertificate(h=h, b=b, A=A, reference_row=i0, reference_col=j0)
    if not certificate_is_valid(M, cert, zero_tol=zero_tol):
        raise ArithmeticError("constructed certificate failed validation; this should be unreachable")
    return cert


def a_star(M, zero_tol: float = 0.0) -> float:
    """Optimal sandwich constant, ``psi_inverse(c(M))``.

    Defined only for strictly contracting matrices; raises when ``c = 1``
    (no finite constant exists).
    """
    report = contraction_coeff(M, zero_tol)
    if not report.is_strict:
        raise ValueError("matrix is not strictly contracting (c = 1); no finite sandwich constant exists")
    return report.a_star

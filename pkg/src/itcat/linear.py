"""Linear stochastic information transformers with additive Gaussian noise.

A transformer here is a pair ``(A, Sigma)`` modelling ``y = A x + noise`` with
zero-mean noise of covariance ``Sigma``.  Unlike the finite categories in
:mod:`itcat.kleisli` this category is numeric: everything is float64 with fixed
tolerances, because Gaussian algebra is not closed over the rationals.

The module provides composition, products, tensors, the accuracy order
(equal ``A`` and dominated covariance), canonical informativeness classes
``(Q, S)`` built from Fisher information, the class order, conditional
transformers (the Gaussian posterior), and the minimum-variance estimator used
to build explicit informativeness witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "EQ_TOL",
    "PSD_TOL",
    "SUBSPACE_TOL",
    "LinearError",
    "LinearIT",
    "LinearClass",
    "lin_arrow",
    "lin_lift",
    "lin_identity",
    "lin_terminal",
    "lin_distribution",
    "is_lin_distribution",
    "lin_equal",
    "lin_compose",
    "lin_product",
    "lin_tensor",
    "lin_accuracy_le",
    "lin_canonical_class",
    "lin_class_le",
    "lin_class_equal",
    "lin_conditional",
    "min_variance_estimator",
    "informativeness_witness",
    "is_psd",
    "subspace_contains",
]

# Matrix-entry equality tolerance (max norm).
EQ_TOL = 1e-9
# Positive-semidefiniteness tolerance: smallest eigenvalue may dip this far below zero.
PSD_TOL = 1e-9
# Subspace containment tolerance on principal-angle sines.
SUBSPACE_TOL = 1e-7


class LinearError(ValueError):
    """Raised for malformed matrices, dimension mismatches, or unsupported inputs."""


def _as_matrix(value, rows: int, cols: int, what: str) -> np.ndarray:
    out = np.asarray(value, dtype=float)
    if out.shape != (rows, cols):
        raise LinearError(f"{what} must have shape {(rows, cols)}, got {out.shape}")
    if out.size and not np.all(np.isfinite(out)):
        raise LinearError(f"{what} contains non-finite entries")
    out = out.copy()
    out.flags.writeable = False
    return out


def is_psd(matrix: np.ndarray, tol: float = PSD_TOL) -> bool:
    """True if the symmetric matrix has no eigenvalue below ``-tol``."""
    if matrix.shape[0] == 0:
        return True
    sym = (matrix + matrix.T) / 2.0
    return float(np.linalg.eigvalsh(sym).min()) >= -tol


@dataclass(frozen=True, eq=False)
class LinearIT:
    """A linear transformer ``y = A x + noise`` with noise covariance ``Sigma``.

    ``A`` is ``dst_dim x src_dim`` and ``Sigma`` is ``dst_dim x dst_dim``,
    symmetric positive semidefinite within tolerance.  Instances are immutable;
    the arrays are stored read-only.
    """

    src_dim: int
    dst_dim: int
    A: np.ndarray = field(repr=False)
    Sigma: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        if self.src_dim < 0 or self.dst_dim < 0:
            raise LinearError("dimensions must be nonnegative")
        object.__setattr__(self, "A", _as_matrix(self.A, self.dst_dim, self.src_dim, "A"))
        sigma = np.asarray(self.Sigma, dtype=float)
        if sigma.shape != (self.dst_dim, self.dst_dim):
            raise LinearError(
                f"Sigma must have shape {(self.dst_dim, self.dst_dim)}, got {sigma.shape}"
            )
        if sigma.size and float(np.abs(sigma - sigma.T).max()) > EQ_TOL:
            raise LinearError("Sigma must be symmetric within tolerance")
        sym = (sigma + sigma.T) / 2.0
        if not is_psd(sym):
            raise LinearError("Sigma must be positive semidefinite within tolerance")
        object.__setattr__(self, "Sigma", _as_matrix(sym, self.dst_dim, self.dst_dim, "Sigma"))

    def __repr__(self) -> str:  # pragma: no cover - debug aid
        return f"LinearIT({self.src_dim}->{self.dst_dim})"


def lin_arrow(A, Sigma) -> LinearIT:
    """Build a transformer from matrix-likes, inferring the dimensions."""
    mat = np.atleast_2d(np.asarray(A, dtype=float))
    return LinearIT(mat.shape[1], mat.shape[0], mat, np.asarray(Sigma, dtype=float))


def lin_lift(A) -> LinearIT:
    """The deterministic (noise-free) transformer with matrix ``A``."""
    mat = np.atleast_2d(np.asarray(A, dtype=float))
    return LinearIT(mat.shape[1], mat.shape[0], mat, np.zeros((mat.shape[0], mat.shape[0])))


def lin_identity(dim: int) -> LinearIT:
    """The identity transformer on a ``dim``-dimensional space."""
    return LinearIT(dim, dim, np.eye(dim), np.zeros((dim, dim)))


def lin_terminal(dim: int) -> LinearIT:
    """The unique transformer into the 0-dimensional terminal space."""
    return LinearIT(dim, 0, np.zeros((0, dim)), np.zeros((0, 0)))


def lin_distribution(Sigma) -> LinearIT:
    """A zero-mean distribution: a transformer out of the terminal space."""
    sigma = np.asarray(Sigma, dtype=float)
    dim = sigma.shape[0] if sigma.ndim else 0
    return LinearIT(0, dim, np.zeros((dim, 0)), sigma)


def is_lin_distribution(a: LinearIT) -> bool:
    """True when ``a`` has a zero-dimensional source, i.e. is a distribution."""
    return a.src_dim == 0


def lin_equal(a: LinearIT, b: LinearIT, tol: float = EQ_TOL) -> bool:
    """Entrywise equality of both matrices within ``tol`` (max norm)."""
    if a.src_dim != b.src_dim or a.dst_dim != b.dst_dim:
        return False
    da = float(np.abs(a.A - b.A).max()) if a.A.size else 0.0
    ds = float(np.abs(a.Sigma - b.Sigma).max()) if a.Sigma.size else 0.0
    return da <= tol and ds <= tol


def lin_compose(outer: LinearIT, inner: LinearIT) -> LinearIT:
    """Run ``inner`` then ``outer``: ``(A_o A_i, Sigma_o + A_o Sigma_i A_o^T)``."""
    if inner.dst_dim != outer.src_dim:
        raise LinearError(
            f"cannot compose: inner dst_dim {inner.dst_dim} != outer src_dim {outer.src_dim}"
        )
    A = outer.A @ inner.A
    Sigma = outer.Sigma + outer.A @ inner.Sigma @ outer.A.T
    return LinearIT(inner.src_dim, outer.dst_dim, A, (Sigma + Sigma.T) / 2.0)


def lin_product(a: LinearIT, b: LinearIT) -> LinearIT:
    """Independent joint observation of a shared source: stacked ``A``, block-diagonal noise."""
    if a.src_dim != b.src_dim:
        raise LinearError(
            f"cannot form product: src_dim {a.src_dim} != src_dim {b.src_dim}"
        )
    A = np.vstack([a.A, b.A])
    n, m = a.dst_dim, b.dst_dim
    Sigma = np.zeros((n + m, n + m))
    Sigma[:n, :n] = a.Sigma
    Sigma[n:, n:] = b.Sigma
    return LinearIT(a.src_dim, n + m, A, Sigma)


def lin_tensor(a: LinearIT, b: LinearIT) -> LinearIT:
    """Apply ``a`` and ``b`` to independent inputs: block-diagonal ``A`` and noise."""
    A = np.zeros((a.dst_dim + b.dst_dim, a.src_dim + b.src_dim))
    A[: a.dst_dim, : a.src_dim] = a.A
    A[a.dst_dim :, a.src_dim :] = b.A
    n, m = a.dst_dim, b.dst_dim
    Sigma = np.zeros((n + m, n + m))
    Sigma[:n, :n] = a.Sigma
    Sigma[n:, n:] = b.Sigma
    return LinearIT(a.src_dim + b.src_dim, n + m, A, Sigma)


def lin_accuracy_le(a: LinearIT, b: LinearIT) -> bool:
    """True iff ``a`` is at least as accurate as ``b``: same ``A``, noise dominated.

    Requires identical shapes, ``max|A_a - A_b| <= EQ_TOL`` and
    ``Sigma_b - Sigma_a`` positive semidefinite within tolerance.
    """
    if a.src_dim != b.src_dim or a.dst_dim != b.dst_dim:
        return False
    if a.A.size and float(np.abs(a.A - b.A).max()) > EQ_TOL:
        return False
    return is_psd(b.Sigma - a.Sigma)


# ---------------------------------------------------------------------------
# Canonical informativeness classes
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class LinearClass:
    """Canonical informativeness class of a linear transformer.

    ``Q`` is an orthonormal basis (columns) of the observed subspace of the
    source space — the orthogonal complement of ``ker(A)`` — and ``S`` is the
    achievable estimation-error covariance expressed in that basis.
    """

    ambient_dim: int
    Q: np.ndarray = field(repr=False)
    S: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        q = np.asarray(self.Q, dtype=float)
        if q.ndim != 2 or q.shape[0] != self.ambient_dim:
            raise LinearError(f"Q must be {self.ambient_dim} x k, got {q.shape}")
        k = q.shape[1]
        if k and float(np.abs(q.T @ q - np.eye(k)).max()) > 1e-8:
            raise LinearError("Q columns must be orthonormal")
        s = np.asarray(self.S, dtype=float)
        if s.shape != (k, k):
            raise LinearError(f"S must be {k} x {k}, got {s.shape}")
        if s.size and float(np.abs(s - s.T).max()) > EQ_TOL:
            raise LinearError("S must be symmetric within tolerance")
        s = (s + s.T) / 2.0
        if not is_psd(s):
            raise LinearError("S must be positive semidefinite within tolerance")
        object.__setattr__(self, "Q", _as_matrix(q, self.ambient_dim, k, "Q"))
        object.__setattr__(self, "S", _as_matrix(s, k, k, "S"))

    @property
    def rank(self) -> int:
        return self.Q.shape[1]

    def __repr__(self) -> str:  # pragma: no cover - debug aid
        return f"LinearClass(ambient={self.ambient_dim}, rank={self.rank})"


def _row_space_basis(A: np.ndarray) -> np.ndarray:
    """Orthonormal basis (columns) of the row space of ``A``."""
    if A.size == 0:
        return np.zeros((A.shape[1], 0))
    u, s, vt = np.linalg.svd(A, full_matrices=False)
    tol = max(A.shape) * np.finfo(float).eps * (float(s[0]) if s.size else 0.0)
    rank = int(np.sum(s > tol))
    return vt[:rank].T


def _is_zero_matrix(m: np.ndarray, tol: float = EQ_TOL) -> bool:
    return m.size == 0 or float(np.abs(m).max()) <= tol


def lin_canonical_class(a: LinearIT) -> LinearClass:
    """Canonical class ``(Q, S)``: observed subspace plus achievable error covariance.

    ``Q`` spans the row space of ``A``.  For positive-definite noise, ``S`` is
    the inverse Fisher information ``(Q^T A^T Sigma^{-1} A Q)^{-1}``; for zero
    noise ``S = 0``.  Singular-but-nonzero noise is rejected as unsupported.
    """
    Q = _row_space_basis(a.A)
    k = Q.shape[1]
    if _is_zero_matrix(a.Sigma):
        return LinearClass(a.src_dim, Q, np.zeros((k, k)))
    eigs = np.linalg.eigvalsh(a.Sigma)
    if float(eigs.min()) <= PSD_TOL:
        raise LinearError(
            "canonical class requires noise covariance that is positive definite or zero"
        )
    if k == 0:
        return LinearClass(a.src_dim, Q, np.zeros((0, 0)))
    info = Q.T @ a.A.T @ np.linalg.inv(a.Sigma) @ a.A @ Q
    S = np.linalg.inv((info + info.T) / 2.0)
    return LinearClass(a.src_dim, Q, (S + S.T) / 2.0)


def subspace_contains(Q_big: np.ndarray, Q_small: np.ndarray, tol: float = SUBSPACE_TOL) -> bool:
    """True if span(Q_small) is contained in span(Q_big) within principal-angle tolerance."""
    if Q_small.shape[1] == 0:
        return True
    residual = Q_small - Q_big @ (Q_big.T @ Q_small)
    return float(np.linalg.norm(residual, 2)) <= tol


def lin_class_le(c1: LinearClass, c2: LinearClass) -> bool:
    """True iff class ``c1`` is at least as informative as ``c2``.

    Requires the ``c2`` subspace to sit inside the ``c1`` subspace and the
    restriction of ``S1`` to that subspace to be dominated by ``S2``:
    ``S2 - Q2^T Q1 S1 Q1^T Q2`` positive semidefinite.
    """
    if c1.ambient_dim != c2.ambient_dim:
        raise LinearError("classes live over different source spaces")
    if not subspace_contains(c1.Q, c2.Q):
        return False
    restricted = c2.Q.T @ c1.Q @ c1.S @ c1.Q.T @ c2.Q
    return is_psd(c2.S - restricted)


def lin_class_equal(c1: LinearClass, c2: LinearClass) -> bool:
    """Mutual domination: the two classes describe equally informative transformers."""
    return lin_class_le(c1, c2) and lin_class_le(c2, c1)


# ---------------------------------------------------------------------------
# Conditionals and witnesses
# ---------------------------------------------------------------------------


def lin_conditional(f: LinearIT, a: LinearIT) -> LinearIT:
    """Gaussian posterior: the conditional transformer recovering the source from ``a``'s output.

    ``f`` must be a distribution on ``a``'s source.  With
    ``G = A_a Sigma_f A_a^T + Sigma_a`` (the output covariance), the result is
    ``b = (Sigma_f A_a^T G^+, Sigma_f - Sigma_f A_a^T G^+ A_a Sigma_f)`` and
    satisfies the defining joint equation: pairing the identity with ``a`` after
    ``f`` equals pairing ``b`` with the identity after ``a . f``.
    """
    if not is_lin_distribution(f):
        raise LinearError("conditional requires a distribution (0-dimensional source)")
    if f.dst_dim != a.src_dim:
        raise LinearError(
            f"distribution is over a {f.dst_dim}-dimensional space but the transformer "
            f"expects {a.src_dim} dimensions"
        )
    G = a.A @ f.Sigma @ a.A.T + a.Sigma
    gain = f.Sigma @ a.A.T @ np.linalg.pinv((G + G.T) / 2.0)
    Sigma_b = f.Sigma - gain @ a.A @ f.Sigma
    return LinearIT(a.dst_dim, a.src_dim, gain, (Sigma_b + Sigma_b.T) / 2.0)


def min_variance_estimator(a: LinearIT) -> np.ndarray:
    """The minimum-variance linear estimate of the source from ``a``'s output.

    Returns ``E`` (``src_dim x dst_dim``) with ``E A`` the orthogonal projection
    onto the observed subspace and ``E Sigma E^T`` equal to ``Q S Q^T`` for the
    canonical class ``(Q, S)``.  For zero noise this is the pseudo-inverse;
    otherwise it is the generalized least-squares (Gauss-Markov) estimator.
    """
    if _is_zero_matrix(a.Sigma):
        return np.linalg.pinv(a.A)
    cls = lin_canonical_class(a)  # validates the noise covariance
    Q, S = cls.Q, cls.S
    return Q @ S @ Q.T @ a.A.T @ np.linalg.inv(a.Sigma)


def informativeness_witness(a: LinearIT, b: LinearIT) -> LinearIT | None:
    """An explicit ``c`` with ``c . a`` matching ``b``, when the class order permits one.

    Returns ``None`` when ``a``'s canonical class does not dominate ``b``'s.
    Otherwise builds ``c = (A_b E, Sigma_b - A_b E Sigma_a E^T A_b^T)`` from the
    minimum-variance estimator ``E`` of ``a``; then ``lin_compose(c, a)`` equals
    ``b`` up to floating-point error, so it dominates ``b`` in accuracy.
    """
    if a.src_dim != b.src_dim:
        raise LinearError("transformers observe different source spaces")
    if not lin_class_le(lin_canonical_class(a), lin_canonical_class(b)):
        return None
    E = min_variance_estimator(a)
    A_c = b.A @ E
    Sigma_c = b.Sigma - A_c @ a.Sigma @ A_c.T
    sym = (Sigma_c + Sigma_c.T) / 2.0
    if sym.size:
        # Numerical round-off can leave eigenvalues a hair below zero; clip
        # within the PSD tolerance so the constructor accepts the witness.
        eigvals, eigvecs = np.linalg.eigh(sym)
        if eigvals.size and float(eigvals.min()) < 0.0:
            if float(eigvals.min()) < -PSD_TOL:
                return None
            sym = eigvecs @ np.diag(np.clip(eigvals, 0.0, None)) @ eigvecs.T
    return LinearIT(a.dst_dim, b.dst_dim, A_c, sym)

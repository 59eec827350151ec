"""Dense complex linear algebra kernels.

Matrices are square ``numpy.complex128`` arrays; scalars are Python
``complex``.  Every routine here is pure and leaves its arguments
untouched, so concurrent callers need no synchronization.

Tolerances are relative: a residual ``r`` counts as zero when
``r <= tol * max(1, scale)`` where ``scale`` is the natural magnitude of
the quantity being tested (Hilbert-Schmidt norm of the matrix, or its
square for products like A A*).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_TOL = 1e-9

_MAT_OPS = ("add", "sub", "mul", "commutator")


class DimensionMismatchError(ValueError):
    pass


class NotHermitianError(ValueError):
    pass


class NotNormalError(ValueError):
    pass


class EigenvalueNotFoundError(ValueError):
    pass


def as_matrix(a) -> np.ndarray:
    """Validate and coerce ``a`` to a square complex128 matrix.

    Rejects non-square shapes and non-finite entries.
    """
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise DimensionMismatchError(f"expected a square matrix, got shape {m.shape}")
    if not np.isfinite(m).all():
        raise ValueError("matrix entries must be finite")
    return m


def hs_norm(a) -> float:
    """Hilbert-Schmidt (Frobenius) norm."""
    return float(np.linalg.norm(np.asarray(a)))


def adjoint(a) -> np.ndarray:
    """Conjugate transpose."""
    return as_matrix(a).conj().T.copy()


def commutator(a, b) -> np.ndarray:
    """ab - ba."""
    return mat_op(a, b, "commutator")


def mat_op(a, b, kind: str) -> np.ndarray:
    """Binary matrix arithmetic: add, sub, mul or commutator."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"operands differ in size: {a.shape} vs {b.shape}")
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a @ b
    if kind == "commutator":
        return a @ b - b @ a
    raise ValueError(f"unknown kind {kind!r}, expected one of {_MAT_OPS}")


def determinant(a) -> complex:
    """Determinant via LU with partial pivoting (LAPACK zgetrf)."""
    return complex(np.linalg.det(as_matrix(a)))


@dataclass(frozen=True)
class EigenDecomposition:
    """Spectral data of a Hermitian matrix: real values ascending,
    columns of ``vectors`` the matching orthonormal eigenvectors."""

    values: np.ndarray
    vectors: np.ndarray


def hermitian_eig(a, tol: float = DEFAULT_TOL) -> EigenDecomposition:
    """Eigendecomposition of a (numerically) Hermitian matrix.

    Requires ``||a - a*|| <= tol * max(1, ||a||)``; the Hermitian part
    (a + a*)/2 is then diagonalized.  Eigenvalues come back ascending and
    each eigenvector is phase-normalized so that its largest-modulus
    component is real positive, which makes the output deterministic.
    """
    a = as_matrix(a)
    scale = max(1.0, hs_norm(a))
    if hs_norm(a - a.conj().T) > tol * scale:
        raise NotHermitianError("matrix is not Hermitian within tolerance")
    w, v = np.linalg.eigh((a + a.conj().T) / 2.0)
    for j in range(v.shape[1]):
        col = v[:, j]
        i = int(np.argmax(np.abs(col)))
        ph = col[i]
        if ph != 0:
            v[:, j] = col * (abs(ph) / ph)
    return EigenDecomposition(values=w, vectors=v)


def cluster_values(values, tol: float, scale: float | None = None):
    """Group sorted-by-magnitude-agnostic values that lie within
    ``tol * max(1, scale)`` of each other.

    Returns a list of (representative, indices) with the representative
    the cluster mean.  Clustering is transitive along the sorted order,
    matching the convention that nearly coincident eigenvalues form one
    spectral point.
    """
    vals = np.asarray(values)
    if scale is None:
        scale = float(np.max(np.abs(vals))) if vals.size else 0.0
    gap = tol * max(1.0, scale)
    order = np.lexsort((vals.imag, vals.real)) if np.iscomplexobj(vals) else np.argsort(vals)
    clusters = []
    current = [int(order[0])]
    for idx in order[1:]:
        idx = int(idx)
        if abs(vals[idx] - vals[current[-1]]) <= gap:
            current.append(idx)
        else:
            clusters.append(current)
            current = [idx]
    clusters.append(current)
    return [(complex(np.mean(vals[c])) if np.iscomplexobj(vals) else float(np.mean(vals[c])), c)
            for c in clusters]


def normal_eig(a, tol: float = DEFAULT_TOL):
    """Eigenvalues and orthonormal eigenvectors of a normal matrix.

    Hermitian inputs go through ``hermitian_eig``; otherwise the general
    eigensolver is used and eigenvectors are re-orthonormalized inside
    each eigenvalue cluster (for a normal matrix distinct eigenspaces are
    already orthogonal).  Values are ordered by (real, imag).
    """
    a = as_matrix(a)
    scale = max(1.0, hs_norm(a))
    if hs_norm(a @ a.conj().T - a.conj().T @ a) > tol * scale * scale:
        raise NotNormalError("matrix is not normal within tolerance")
    if hs_norm(a - a.conj().T) <= tol * scale:
        dec = hermitian_eig(a, tol)
        return dec.values.astype(np.complex128), dec.vectors
    w, v = np.linalg.eig(a)
    order = np.lexsort((w.imag, w.real))
    w, v = w[order], v[:, order]
    for _, idxs in cluster_values(w, tol, scale):
        q, _ = np.linalg.qr(v[:, idxs])
        v[:, idxs] = q
    return w, v


def spectral_projection(a, lam, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Orthogonal projection onto the eigenspace of a normal matrix.

    ``lam`` must lie within ``tol * max(1, ||a||)`` of an eigenvalue;
    eigenvalues within that distance of each other count as one spectral
    point, so the projection rank equals the multiplicity.
    """
    a = as_matrix(a)
    w, v = normal_eig(a, tol)
    scale = max(1.0, hs_norm(a))
    for rep, idxs in cluster_values(w, tol, scale):
        if abs(rep - lam) <= tol * max(1.0, scale):
            q = v[:, idxs]
            return q @ q.conj().T
    raise EigenvalueNotFoundError(f"{lam} is not an eigenvalue within tolerance")


@dataclass(frozen=True)
class MatrixFlags:
    normal: bool
    hermitian: bool
    unitary: bool
    diagonal: bool
    simple_spectrum: bool


def classify(a, tol: float = DEFAULT_TOL) -> MatrixFlags:
    """Structural flags of a matrix, each tested at the tolerance scaled
    by the natural magnitude of the residual being measured."""
    a = as_matrix(a)
    n = a.shape[0]
    s = max(1.0, hs_norm(a))
    s2 = max(1.0, hs_norm(a) ** 2)
    normal = hs_norm(a @ a.conj().T - a.conj().T @ a) <= tol * s2
    hermitian = hs_norm(a - a.conj().T) <= tol * s
    unitary = hs_norm(a @ a.conj().T - np.eye(n)) <= tol * s2
    diagonal = hs_norm(a - np.diag(np.diag(a))) <= tol * s
    simple = False
    if normal:
        w = hermitian_eig(a, tol).values if hermitian else np.linalg.eigvals(a)
        simple = len(cluster_values(w, tol, s)) == n
    return MatrixFlags(normal=normal, hermitian=hermitian, unitary=unitary,
                       diagonal=diagonal, simple_spectrum=simple)


# --- Matrix JSON: {"n": int, "entries": [[[re, im], ...], ...]} row-major ---

def matrix_to_json(a) -> dict:
    a = as_matrix(a)
    n = a.shape[0]
    entries = [[[float(a[i, j].real), float(a[i, j].imag)] for j in range(n)]
               for i in range(n)]
    return {"n": n, "entries": entries}


def matrix_from_json(obj) -> np.ndarray:
    if not isinstance(obj, dict) or "n" not in obj or "entries" not in obj:
        raise ValueError("matrix JSON must be an object with 'n' and 'entries'")
    n = obj["n"]
    rows = obj["entries"]
    if not isinstance(n, int) or n < 1:
        raise ValueError("'n' must be a positive integer")
    if len(rows) != n:
        raise ValueError(f"expected {n} rows, got {len(rows)}")
    m = np.zeros((n, n), dtype=np.complex128)
    for i, row in enumerate(rows):
        if len(row) != n:
            raise ValueError(f"ragged row {i}: expected {n} entries, got {len(row)}")
        for j, pair in enumerate(row):
            if len(pair) != 2:
                raise ValueError(f"entry ({i},{j}) must be a [re, im] pair")
            m[i, j] = complex(float(pair[0]), float(pair[1]))
    return as_matrix(m)

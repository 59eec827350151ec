"""The exceptional deformation parameters.

The squared ladder coefficients c_i(nu)^2 and c_j(nu)^2 collide exactly
when z = nu^2 is a root of

    1 + z + ... + z^(n-j-1) - z^(n-i) - ... - z^(n-1) = 0

for an index pair i < j with i + j > n (for i + j <= n the left side is
bounded below by (1 - z^i)(1 - z^(n-i)) > 0 on (0, 1)).  By Descartes'
rule of signs that polynomial has at most one positive root, and it
changes sign on (0, 1), so bisection isolates the unique root z_ij.
The exceptional set is S = {+-sqrt(z_ij)} together with {+-1}, where the
|nu| = 1 collisions follow the pairing i + j = n instead.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .generators import c_coeff
from .linalg import DEFAULT_TOL, cluster_values

BISECT_ITERATIONS = 200


@dataclass(frozen=True)
class ExceptionalRoot:
    n: int
    i: int
    j: int
    z: float
    nu: float  # the positive branch sqrt(z); -nu is exceptional too


def _check_indices(n, i, j):
    if not (0 <= i < j <= n - 1):
        raise ValueError(f"need 0 <= i < j <= n-1, got i={i}, j={j}, n={n}")
    if i + j <= n:
        raise ValueError(f"need i + j > n, got i={i}, j={j}, n={n}")


def root_polynomial(n: int, i: int, j: int) -> np.ndarray:
    """Ascending coefficient array: +1 for degrees 0..n-j-1, -1 for
    degrees n-i..n-1, zeros between."""
    _check_indices(n, i, j)
    coeffs = np.zeros(n)
    coeffs[0:n - j] = 1.0
    coeffs[n - i:n] = -1.0
    return coeffs


def descartes_sign_changes(coeffs) -> int:
    """Number of sign alternations among nonzero coefficients."""
    signs = [c for c in np.sign(coeffs) if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _polyval(coeffs, z: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * z + c
    return float(acc)


def z_root(n: int, i: int, j: int) -> ExceptionalRoot:
    """The unique root of the sign-change polynomial in (0, 1).

    Bisection on the guaranteed sign change (value 1 at z=0, negative at
    z=1 since i + j > n); unconditionally convergent, final interval far
    below 1e-16.
    """
    coeffs = root_polynomial(n, i, j)
    lo, hi = 0.0, 1.0
    for _ in range(BISECT_ITERATIONS):
        mid = 0.5 * (lo + hi)
        if _polyval(coeffs, mid) > 0.0:
            lo = mid
        else:
            hi = mid
    z = 0.5 * (lo + hi)
    return ExceptionalRoot(n=n, i=i, j=j, z=z, nu=float(np.sqrt(z)))


def exceptional_set(n: int):
    """All interior exceptional roots for dimension n, in lexicographic
    (i, j) order.  The parameters +-1 are always exceptional as well but
    are tagged separately (see ``exceptional_nus``)."""
    if n < 2:
        raise ValueError("dimension must be >= 2")
    roots = []
    for i, j in itertools.combinations(range(n), 2):
        if i + j > n:
            roots.append(z_root(n, i, j))
    return roots


def exceptional_nus(n: int):
    """Sorted list of every exceptional parameter: +-sqrt(z_ij) plus +-1."""
    nus = {1.0, -1.0}
    for r in exceptional_set(n):
        nus.add(r.nu)
        nus.add(-r.nu)
    return sorted(nus)


def is_exceptional(n: int, nu: float, tol: float = DEFAULT_TOL) -> bool:
    return any(abs(nu - s) <= tol for s in exceptional_nus(n))


def multiplicity_profile(n: int, nu: float, tol: float = DEFAULT_TOL):
    """Clustered eigenvalue multiplicities of E E* (the values
    nu^2 c_(k+1)(nu)^2 for k = 0..n-1), as (eigenvalue, multiplicity)
    pairs sorted ascending."""
    vals = np.array([(nu * c_coeff(n, k + 1, nu)) ** 2 for k in range(n)])
    return [(rep, len(idxs)) for rep, idxs in cluster_values(vals, tol)]


@dataclass
class CorollaryCheck:
    ok: bool
    violations: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def corollary_check(n: int, tol: float = 1e-10) -> CorollaryCheck:
    """Ordering constraints on coincident roots.

    Whenever two index pairs share a root (within ``tol``), the pair with
    the larger i must have the smaller j, and the i-gap must exceed the
    j-gap.  No root may be shared by three pairs.  Returns a truthy
    result; on failure ``violations`` lists the offending pair groups.
    """
    roots = exceptional_set(n)
    res = CorollaryCheck(ok=True)
    for r1, r2 in itertools.combinations(roots, 2):
        if abs(r1.z - r2.z) > tol:
            continue
        a, b = (r1, r2) if r1.i < r2.i else (r2, r1)
        if not (a.j > b.j and (b.i - a.i) > (a.j - b.j)):
            res.ok = False
            res.violations.append(("ordering", (a.i, a.j), (b.i, b.j), a.z))
    for r1, r2, r3 in itertools.combinations(roots, 3):
        if abs(r1.z - r2.z) <= tol and abs(r2.z - r3.z) <= tol:
            res.ok = False
            res.violations.append(("triple", (r1.i, r1.j), (r2.i, r2.j),
                                   (r3.i, r3.j), r1.z))
    return res

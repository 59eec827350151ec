"""Determinantal polynomials of matrix pencils and spectra comparison.

The proper joint spectrum of matrices (M1, ..., Mk) is the zero set of

    p(x) = det(x1 M1 + ... + xk Mk - I),

computed here as an exact multivariate polynomial by evaluating the
determinant on a tensor grid of Chebyshev nodes (degree is at most n in
each variable, so n+1 nodes per axis determine p) and inverting the
one-dimensional Vandermonde map along each axis.  Node order is fixed,
so results are bit-stable across runs.

A pencil expression grammar selects the slot matrices, e.g.
``"A1, A2 A2^H"`` denotes the pair (A1, A2 adjoint(A2)).  Atoms A1/A2/A3
and H/E/F are interchangeable names for the three tuple slots, products
are juxtaposition, and the postfix ``^H`` takes the adjoint of the atom
it follows (double adjoints collapse at parse time).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .linalg import (DEFAULT_TOL, NotNormalError, as_matrix, classify,
                     cluster_values, hs_norm, normal_eig)
from .poly import MultiPoly, poly_distance, poly_equal

MAX_PENCIL_VARS = 4

_SLOT_OF_ATOM = {"A1": 0, "H": 0, "A2": 1, "E": 1, "A3": 2, "F": 2}

_TOKEN_RE = re.compile(r"A[123]|\^H|[HEF]|,|\s+")


class PencilSyntaxError(ValueError):
    def __init__(self, message, offset):
        super().__init__(f"{message} at byte offset {offset}")
        self.offset = offset


@dataclass(frozen=True)
class Atom:
    name: str
    slot: int


@dataclass(frozen=True)
class Adjoint:
    inner: "Atom | Adjoint | Product"


@dataclass(frozen=True)
class Product:
    factors: tuple


PencilExpr = Atom | Adjoint | Product


def parse_pencil(src: str):
    """Parse a comma-separated pencil expression list.

    Returns one expression per slot of the pencil.  Unknown atoms and
    stray characters raise ``PencilSyntaxError`` with the byte offset.
    """
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            raise PencilSyntaxError(f"unexpected character {src[pos]!r}", pos)
        if not m.group().isspace():
            tokens.append((m.group(), pos))
        pos = m.end()
    exprs = []
    current = []  # list of parsed primaries in the current slot
    last_pos = 0

    def close_slot(at):
        if not current:
            raise PencilSyntaxError("empty pencil slot", at)
        exprs.append(current[0] if len(current) == 1 else Product(tuple(current)))
        current.clear()

    for tok, at in tokens:
        last_pos = at
        if tok == ",":
            close_slot(at)
        elif tok == "^H":
            if not current:
                raise PencilSyntaxError("'^H' with nothing to adjoin", at)
            prev = current[-1]
            # involution: a double adjoint collapses structurally
            current[-1] = prev.inner if isinstance(prev, Adjoint) else Adjoint(prev)
        else:
            current.append(Atom(name=tok, slot=_SLOT_OF_ATOM[tok]))
    close_slot(last_pos)
    return exprs


def evaluate_expr(expr, mats):
    """Evaluate a pencil expression against the three slot matrices."""
    if isinstance(expr, Atom):
        return as_matrix(mats[expr.slot])
    if isinstance(expr, Adjoint):
        return evaluate_expr(expr.inner, mats).conj().T
    if isinstance(expr, Product):
        out = evaluate_expr(expr.factors[0], mats)
        for f in expr.factors[1:]:
            out = out @ evaluate_expr(f, mats)
        return out
    raise TypeError(f"not a pencil expression: {expr!r}")


def _slot_matrices(t):
    """Accept a GeneratorTuple or any 3-sequence of matrices."""
    if hasattr(t, "matrices"):
        return t.matrices
    return tuple(t)


_node_cache = {}


def _cheb_basis(m: int):
    """m Chebyshev nodes on (-1, 1) and the transposed inverse of the
    monomial Vandermonde at those nodes."""
    if m not in _node_cache:
        nodes = np.cos(np.pi * (2 * np.arange(m) + 1) / (2 * m))
        v = nodes[:, None] ** np.arange(m)[None, :]
        vinv_t = np.linalg.inv(v).T
        _node_cache[m] = (nodes, vinv_t)
    return _node_cache[m]


def det_pencil(mats, var_names=None, affine: bool = True) -> MultiPoly:
    """Determinant polynomial of a matrix pencil.

    ``affine=True`` (the proper joint spectrum) computes
    det(sum x_i M_i - I), whose constant term is (-1)^n; ``affine=False``
    drops the -I and yields the homogeneous pencil determinant.
    At most 4 variables are supported.
    """
    mats = [as_matrix(m) for m in mats]
    k = len(mats)
    if k == 0:
        raise ValueError("pencil needs at least one matrix")
    if k > MAX_PENCIL_VARS:
        raise ValueError(f"pencils in more than {MAX_PENCIL_VARS} variables are unsupported")
    n = mats[0].shape[0]
    for m in mats[1:]:
        if m.shape != (n, n):
            raise ValueError("pencil matrices must share one dimension")
    if var_names is None:
        var_names = tuple(f"x{i + 1}" for i in range(k))
    var_names = tuple(var_names)
    if len(var_names) != k:
        raise ValueError("need one variable name per pencil matrix")

    m_nodes = n + 1
    nodes, vinv_t = _cheb_basis(m_nodes)
    grids = np.meshgrid(*([nodes] * k), indexing="ij")
    stack = np.zeros(grids[0].shape + (n, n), dtype=np.complex128)
    for g, mat in zip(grids, mats):
        stack += g[..., None, None] * mat
    if affine:
        stack -= np.eye(n)
    values = np.linalg.det(stack.reshape(-1, n, n)).reshape((m_nodes,) * k)

    coeffs = values
    for _ in range(k):
        # contract the leading node axis into power coefficients; the
        # converted axis cycles to the end, restoring order after k passes
        coeffs = np.tensordot(coeffs, vinv_t, axes=([0], [0]))

    terms = {}
    for exp in np.ndindex(*coeffs.shape):
        c = coeffs[exp]
        if c != 0:
            terms[exp] = complex(c)
    return MultiPoly(var_names, terms)


@dataclass(frozen=True)
class Line:
    """The hyperplane sum(coeffs[i] * x_i) = 1 with a multiplicity."""

    coeffs: tuple
    mult: int


@dataclass(frozen=True)
class LineArrangement:
    lines: tuple

    def total_multiplicity(self) -> int:
        return sum(l.mult for l in self.lines)


def slot_scales(*mat_groups):
    """Positive per-slot scale factors 1 / max(1, ||M_i||_HS) taken over
    the matrices occupying slot i in every group.

    Scaling pencil slots by positive constants is a bijection of the
    joint spectrum (x_i -> x_i / s_i), so equality questions may be asked
    of the scaled pencils.  Doing so keeps every pencil matrix O(1) and
    the determinant values well conditioned, which matters once the
    ladder matrices reach norms around 1e8 (small nu, large n): raw
    coefficient comparison drowns in the eps * kappa noise of the
    determinant evaluations.
    """
    k = len(mat_groups[0])
    return tuple(1.0 / max(1.0, *(hs_norm(g[i]) for g in mat_groups))
                 for i in range(k))


def lines_of_pair(a, b, tol: float = DEFAULT_TOL):
    """Candidate line decomposition of the pair spectrum of (a, b).

    ``a`` must be normal; candidate lines are lam_j x1 + mu_j x2 = 1 with
    lam_j the eigenvalues of ``a`` and mu_j the diagonal of ``b`` in a's
    eigenbasis.  The arrangement is certified when the product of those
    lines reproduces det(x1 a + x2 b - I), i.e. when the pair spectrum is
    completely reducible; commuting normal pairs certify, and a refusal
    witnesses non-commutativity.  (The certification compares the
    norm-scaled pencils, see ``slot_scales``.)
    """
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape:
        raise ValueError("pair matrices must share one dimension")
    if not classify(a, tol).normal:
        raise NotNormalError("first matrix of the pair must be normal")
    w, v = normal_eig(a, tol)
    bhat = v.conj().T @ b @ v
    mu = np.diag(bhat)
    pairs = np.stack([w, mu], axis=1)

    # group coincident (lam, mu) pairs: multiplicity of a line
    scale = max(1.0, float(np.max(np.abs(pairs))))
    used = [False] * len(w)
    lines = []
    for i in range(len(w)):
        if used[i]:
            continue
        mult = 1
        used[i] = True
        for j in range(i + 1, len(w)):
            if not used[j] and np.max(np.abs(pairs[i] - pairs[j])) <= tol * scale:
                used[j] = True
                mult += 1
        lines.append(Line(coeffs=(complex(w[i]), complex(mu[i])), mult=mult))

    vars = ("x1", "x2")
    s1, s2 = slot_scales((a, b))
    product = MultiPoly.constant(vars, 1.0)
    for line in lines:
        factor = MultiPoly(vars, {(1, 0): line.coeffs[0] * s1,
                                  (0, 1): line.coeffs[1] * s2,
                                  (0, 0): -1.0})
        for _ in range(line.mult):
            product = product * factor
    certified = poly_equal(product, det_pencil([s1 * a, s2 * b], vars), tol)
    return LineArrangement(lines=tuple(lines)), certified


@dataclass(frozen=True)
class PencilComparison:
    pencil: str
    equal: bool
    residual: float


def spectra_equal(t1, t2, pencils, tol: float = DEFAULT_TOL):
    """Compare the proper joint spectra of two tuples on a list of
    pencils (each pencil a comma-separated slot expression string).

    Equality is coefficient-wise equality of the (norm-scaled, see
    ``slot_scales``) determinant polynomials at the given tolerance; the
    residual is the max coefficient gap relative to the largest one.
    """
    m1 = _slot_matrices(t1)
    m2 = _slot_matrices(t2)
    out = []
    for src in pencils:
        exprs = parse_pencil(src)
        g1 = [evaluate_expr(e, m1) for e in exprs]
        g2 = [evaluate_expr(e, m2) for e in exprs]
        ss = slot_scales(g1, g2)
        p1 = det_pencil([s * m for s, m in zip(ss, g1)])
        p2 = det_pencil([s * m for s, m in zip(ss, g2)])
        scale = max(1.0, p1.max_abs_coeff(), p2.max_abs_coeff())
        dist = poly_distance(p1, p2)
        out.append(PencilComparison(pencil=src, equal=dist <= tol * scale,
                                    residual=dist / scale))
    return out


def x2_dependence(a1, a2, prune: float = 1e-10) -> bool:
    """Whether det(x1 a1 + x2 a2 - I) genuinely involves x2.

    Computed on the norm-scaled pencil (scaling does not change which
    exponents occur); coefficients below ``prune`` times the largest one
    are discarded before reading off the x2-degree.
    """
    s1, s2 = slot_scales((as_matrix(a1), as_matrix(a2)))
    p = det_pencil([s1 * as_matrix(a1), s2 * as_matrix(a2)], ("x1", "x2"))
    top = p.max_abs_coeff()
    cut = prune * max(1.0, top)
    return any(exp[1] > 0 and abs(c) > cut for exp, c in p.terms.items())

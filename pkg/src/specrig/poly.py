"""Sparse multivariate polynomials over complex coefficients.

The representation of determinantal hypersurfaces: a polynomial is a map
from exponent vectors (one non-negative integer per variable) to complex
coefficients.  Coefficients smaller than ``PRUNE_REL`` times the largest
one are dropped, which keeps interpolation noise out of equality tests.
"""

from __future__ import annotations

from dataclasses import dataclass

PRUNE_REL = 1e-14


class VariableMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class LinearForm:
    """c1*x1 + ... + ck*xk + constant.  Must not be identically zero."""

    coeffs: tuple
    constant: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))
        object.__setattr__(self, "constant", complex(self.constant))
        if all(c == 0 for c in self.coeffs) and self.constant == 0:
            raise ValueError("linear form is identically zero")


class MultiPoly:
    """Sparse polynomial with named variables and complex coefficients."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars, terms=None, prune=True):
        self.vars = tuple(vars)
        k = len(self.vars)
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != k or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent vector {exp} for {k} variables")
            c = complex(c)
            if c != 0:
                clean[exp] = clean.get(exp, 0j) + c
        self.terms = clean
        if prune:
            self._prune(PRUNE_REL)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, vars):
        return cls(vars, {})

    @classmethod
    def constant(cls, vars, c):
        return cls(vars, {(0,) * len(tuple(vars)): c})

    @classmethod
    def from_linear(cls, vars, form: LinearForm):
        vars = tuple(vars)
        if len(form.coeffs) != len(vars):
            raise VariableMismatchError("linear form arity does not match variables")
        terms = {}
        for i, c in enumerate(form.coeffs):
            exp = tuple(1 if j == i else 0 for j in range(len(vars)))
            terms[exp] = c
        terms[(0,) * len(vars)] = form.constant
        return cls(vars, terms)

    # -- basic queries ------------------------------------------------------

    def max_abs_coeff(self) -> float:
        return max((abs(c) for c in self.terms.values()), default=0.0)

    def degree_in(self, i: int) -> int:
        """Maximal exponent of variable ``i`` across terms (0 for the zero
        polynomial)."""
        if not 0 <= i < len(self.vars):
            raise IndexError(f"variable index {i} out of range")
        return max((exp[i] for exp in self.terms), default=0)

    def sorted_terms(self):
        """Terms ordered lexicographically by exponent (reproducible output)."""
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def _prune(self, rel):
        top = self.max_abs_coeff()
        if top == 0.0:
            return
        cut = rel * top
        for exp in [e for e, c in self.terms.items() if abs(c) <= cut]:
            del self.terms[exp]

    # -- arithmetic ----------------------------------------------------------

    def _check_vars(self, other):
        if self.vars != other.vars:
            raise VariableMismatchError(f"{self.vars} vs {other.vars}")

    def __add__(self, other):
        self._check_vars(other)
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            terms[exp] = terms.get(exp, 0j) + c
        return MultiPoly(self.vars, terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()}, prune=False)

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        self._check_vars(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                terms[exp] = terms.get(exp, 0j) + c1 * c2
        return MultiPoly(self.vars, terms)

    __rmul__ = __mul__

    def scale(self, s) -> "MultiPoly":
        s = complex(s)
        return MultiPoly(self.vars, {e: s * c for e, c in self.terms.items()})

    def eval(self, point) -> complex:
        """Evaluate at ``point``, Horner-style one variable at a time."""
        point = [complex(x) for x in point]
        if len(point) != len(self.vars):
            raise VariableMismatchError(
                f"point has {len(point)} coordinates for {len(self.vars)} variables")
        return _horner(self.terms, point, 0)

    def __repr__(self):
        body = " + ".join(f"{c}*{exp}" for exp, c in self.sorted_terms()) or "0"
        return f"MultiPoly({','.join(self.vars)}: {body})"


def _horner(terms, point, axis):
    if not terms:
        return 0j
    if axis == len(point):
        # all exponents consumed; terms is {(): coeff}
        return sum(terms.values())
    by_deg = {}
    for exp, c in terms.items():
        by_deg.setdefault(exp[0], {})[exp[1:]] = c
    acc = 0j
    x = point[axis]
    for d in range(max(by_deg), -1, -1):
        acc = acc * x
        if d in by_deg:
            acc += _horner(by_deg[d], point, axis + 1)
    return acc


def poly_arith(p: MultiPoly, q, kind: str) -> MultiPoly:
    """Named arithmetic entry point: add, mul (both MultiPoly operands)
    or scale (q a scalar)."""
    if kind == "add":
        return p + q
    if kind == "mul":
        return p * q
    if kind == "scale":
        return p.scale(q)
    raise ValueError(f"unknown kind {kind!r}, expected add, mul or scale")


def poly_distance(p: MultiPoly, q: MultiPoly) -> float:
    """Max coefficient difference over the union of supports."""
    p._check_vars(q)
    keys = set(p.terms) | set(q.terms)
    return max((abs(p.terms.get(e, 0j) - q.terms.get(e, 0j)) for e in keys), default=0.0)


def poly_equal(p: MultiPoly, q: MultiPoly, tol: float = 1e-9) -> bool:
    """Coefficient-wise equality at tolerance relative to the larger of
    the two coefficient scales (and never below absolute ``tol``)."""
    scale = max(1.0, p.max_abs_coeff(), q.max_abs_coeff())
    return poly_distance(p, q) <= tol * scale


def divide_linear(p: MultiPoly, f: LinearForm):
    """Synthetic division of ``p`` by a linear form.

    Returns (quotient, remainder) with ``p = f*quotient + remainder`` up
    to rounding and the remainder free of the pivot variable (the
    variable with the largest-modulus coefficient in ``f``).
    """
    k = len(p.vars)
    if len(f.coeffs) != k:
        raise VariableMismatchError("linear form arity does not match polynomial")
    piv = max(range(k), key=lambda i: abs(f.coeffs[i]))
    a = f.coeffs[piv]
    if a == 0:
        raise ValueError("linear form has no variable part to divide by")
    work = dict(p.terms)
    quot = {}
    maxdeg = max((e[piv] for e in work), default=0)
    for d in range(maxdeg, 0, -1):
        level = [(e, c) for e, c in work.items() if e[piv] == d]
        for exp, c in level:
            del work[exp]  # leading term cancels exactly
            if c == 0:
                continue
            qexp = exp[:piv] + (d - 1,) + exp[piv + 1:]
            qc = c / a
            quot[qexp] = quot.get(qexp, 0j) + qc
            for v, fc in enumerate(f.coeffs):
                if v == piv or fc == 0:
                    continue
                texp = qexp[:v] + (qexp[v] + 1,) + qexp[v + 1:]
                work[texp] = work.get(texp, 0j) - qc * fc
            if f.constant != 0:
                work[qexp] = work.get(qexp, 0j) - qc * f.constant
    return MultiPoly(p.vars, quot), MultiPoly(p.vars, work)


def var_degree(p: MultiPoly, i: int) -> int:
    return p.degree_in(i)


# --- Poly JSON: {"vars": [...], "terms": [{"exp": [...], "re": r, "im": i}]} ---

def poly_to_json(p: MultiPoly) -> dict:
    return {
        "vars": list(p.vars),
        "terms": [{"exp": list(exp), "re": float(c.real), "im": float(c.imag)}
                  for exp, c in p.sorted_terms()],
    }


def poly_from_json(obj) -> MultiPoly:
    if not isinstance(obj, dict) or "vars" not in obj or "terms" not in obj:
        raise ValueError("poly JSON must be an object with 'vars' and 'terms'")
    vars = tuple(obj["vars"])
    terms = {}
    for t in obj["terms"]:
        exp = tuple(int(e) for e in t["exp"])
        if len(exp) != len(vars):
            raise ValueError(f"exponent {exp} does not match {len(vars)} variables")
        terms[exp] = complex(float(t["re"]), float(t["im"]))
    return MultiPoly(vars, terms, prune=False)

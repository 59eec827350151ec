import numpy as np
import pytest

from specrig.generators import (c_coeff, counterexample_tuple, h_coeff,
                                sl2_generators, snu2_generators)
from specrig.linalg import NotNormalError, adjoint
from specrig.poly import MultiPoly, poly_equal
from specrig.spectrum import (Adjoint, Atom, PencilSyntaxError, Product,
                              det_pencil, evaluate_expr, lines_of_pair,
                              parse_pencil, spectra_equal, x2_dependence)

from conftest import cofactor_det, random_complex, random_hermitian, random_unitary


class TestParsePencil:
    def test_pair_with_adjoint(self):
        exprs = parse_pencil("A1, A2 A2^H")
        assert exprs[0] == Atom("A1", 0)
        assert exprs[1] == Product((Atom("A2", 1), Adjoint(Atom("A2", 1))))

    def test_product(self):
        exprs = parse_pencil("A2 A3")
        assert exprs == [Product((Atom("A2", 1), Atom("A3", 2)))]

    def test_double_adjoint_collapses(self):
        exprs = parse_pencil("A2 ^H ^H")
        assert exprs == [Atom("A2", 1)]

    def test_letter_atoms_alias_slots(self):
        t = sl2_generators(3)
        for src in ("H", "A1"):
            expr = parse_pencil(src)[0]
            assert np.array_equal(evaluate_expr(expr, t.matrices), t.h)

    def test_syntax_error_offset(self):
        with pytest.raises(PencilSyntaxError) as err:
            parse_pencil("A1, A5")
        assert err.value.offset == 4  # points at the start of the bad token

    def test_empty_slot(self):
        with pytest.raises(PencilSyntaxError):
            parse_pencil("A1,,A2")

    def test_adjoint_evaluates(self):
        t = sl2_generators(4)
        expr = parse_pencil("A2^H")[0]
        assert np.array_equal(evaluate_expr(expr, t.matrices), adjoint(t.e))


class TestDetPencil:
    def test_diagonal_pencil(self):
        lams = [1.5, -2.0, 0.5]
        p = det_pencil([np.diag(lams).astype(complex)])
        expected = MultiPoly.constant(("x1",), 1.0)
        for lam in lams:
            expected = expected * MultiPoly(("x1",), {(1,): lam, (0,): -1.0})
        assert poly_equal(p, expected, 1e-12)

    def test_homogeneous_showcase(self):
        t = sl2_generators(3)
        p = det_pencil([t.h, t.e, t.f, -np.eye(3)], ("x", "y", "z", "t"), affine=False)
        expected = MultiPoly(("x", "y", "z", "t"),
                             {(2, 0, 0, 1): 4.0, (0, 1, 1, 1): 4.0, (0, 0, 0, 3): -1.0})
        assert poly_equal(p, expected, 1e-10)

    def test_against_cofactor_oracle_at_points(self, rng):
        for _ in range(3):
            mats = [random_complex(rng, 5) for _ in range(2)]
            p = det_pencil(mats)
            for _ in range(20):
                x = rng.uniform(-1, 1, size=2)
                direct = cofactor_det(x[0] * mats[0] + x[1] * mats[1] - np.eye(5))
                ours = p.eval(x)
                assert abs(ours - direct) <= 1e-9 * max(1.0, abs(direct))

    def test_constant_term(self, rng):
        for n in (2, 4, 6):
            mats = [random_complex(rng, n), random_hermitian(rng, n)]
            p = det_pencil(mats)
            const = p.terms.get((0, 0), 0j)
            assert abs(const - (-1) ** n) <= 1e-10

    def test_unitary_invariance(self, rng):
        a = random_hermitian(rng, 4)
        b = random_complex(rng, 4)
        w = random_unitary(rng, 4)
        p = det_pencil([a, b])
        q = det_pencil([w @ a @ w.conj().T, w @ b @ w.conj().T])
        assert poly_equal(p, q, 1e-9)

    def test_agreement_with_direct_evaluation(self, rng):
        mats = [random_complex(rng, 6) for _ in range(3)]
        p = det_pencil(mats)
        for _ in range(50):
            x = rng.uniform(-1, 1, size=3)
            direct = np.linalg.det(sum(xi * m for xi, m in zip(x, mats)) - np.eye(6))
            assert abs(p.eval(x) - direct) <= 1e-9 * max(1.0, abs(direct))

    def test_too_many_variables(self, rng):
        with pytest.raises(ValueError):
            det_pencil([np.eye(2)] * 5)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            det_pencil([np.eye(2), np.eye(3)])


class TestLinesOfPair:
    @pytest.mark.parametrize("nu", [0.3, 0.5, -0.7])
    @pytest.mark.parametrize("n", [2, 4, 7, 10])
    def test_ladder_lines(self, n, nu):
        t = snu2_generators(n, nu)
        arr, certified = lines_of_pair(t.h, t.e @ adjoint(t.e))
        assert certified
        assert arr.total_multiplicity() == n
        got = sorted((l.coeffs[0].real, l.coeffs[1].real) for l in arr.lines
                     for _ in range(l.mult))
        expected = sorted((h_coeff(n, j, nu), (nu * c_coeff(n, j + 1, nu)) ** 2)
                          for j in range(n))
        for (lg, mg), (le, me) in zip(got, expected):
            scale = max(1.0, abs(le), abs(me))
            assert abs(lg - le) <= 1e-9 * scale
            assert abs(mg - me) <= 1e-9 * scale

    def test_commuting_diagonals(self):
        arr, certified = lines_of_pair(np.diag([1.0, 2.0]).astype(complex),
                                       np.diag([3.0, 4.0]).astype(complex))
        assert certified
        assert sorted((l.coeffs[0].real, l.coeffs[1].real) for l in arr.lines) \
            == [(1.0, 3.0), (2.0, 4.0)]

    def test_conic_refused(self):
        a = np.diag([1.0, -1.0]).astype(complex)
        b = np.array([[0, 1], [1, 0]], dtype=complex)
        arr, certified = lines_of_pair(a, b)
        assert not certified

    def test_multiplicity_grouping(self):
        arr, certified = lines_of_pair(np.diag([1.0, 1.0, 2.0]).astype(complex),
                                       np.diag([5.0, 5.0, 7.0]).astype(complex))
        assert certified
        mults = sorted(l.mult for l in arr.lines)
        assert mults == [1, 2]

    def test_random_commuting_hermitian_pair(self, rng):
        n = 5
        w = random_unitary(rng, n)
        a = w @ np.diag(rng.normal(size=n)).astype(complex) @ w.conj().T
        b = w @ np.diag(rng.normal(size=n)).astype(complex) @ w.conj().T
        _, certified = lines_of_pair(a, b)
        assert certified

    def test_first_matrix_must_be_normal(self, rng):
        with pytest.raises(NotNormalError):
            lines_of_pair(random_complex(rng, 3), np.eye(3))


class TestSpectraEqual:
    def test_tuple_vs_itself(self):
        t = snu2_generators(4, 0.6)
        results = spectra_equal(t, t, ["A1, A2 A2^H", "A1, A2 A3"])
        assert all(r.equal for r in results)

    def test_counterexample_vs_sl2(self):
        t = counterexample_tuple(1.0, 2.0, 2.0, 1.0)
        ref = sl2_generators(3)
        results = spectra_equal(t, ref, ["A1, A2, A3"])
        assert results[0].equal

    def test_unitary_conjugate(self, rng):
        t = snu2_generators(5, 0.5)
        w = random_unitary(rng, 5)
        conj = tuple(w @ m @ w.conj().T for m in t.matrices)
        results = spectra_equal(t, conj,
                                ["A1, A2 A2^H", "A1, A2^H A2", "A1, A2 A3"])
        assert all(r.equal for r in results)

    def test_scaled_slot_detected(self):
        t = snu2_generators(4, 0.5)
        scaled = (t.h, 2.0 * t.e, t.f)
        results = spectra_equal(t, scaled, ["A1, A2 A2^H"])
        assert not results[0].equal


class TestX2Dependence:
    def test_triangular_pencil_free(self):
        t = sl2_generators(5)
        assert not x2_dependence(t.h, t.e)

    def test_cycle_creates_dependence(self):
        t = sl2_generators(3)
        bumped = t.e.copy()
        bumped[2, 0] = 1.0
        assert x2_dependence(t.h, bumped)
        # cofactor oracle: det picks up 4 y^3 from the new cycle
        direct = cofactor_det(0.3 * t.h + 0.2 * bumped - np.eye(3))
        p = det_pencil([t.h, bumped])
        assert abs(p.eval([0.3, 0.2]) - direct) <= 1e-9 * max(1, abs(direct))

    def test_zero_second_slot_free(self):
        # the x2-degree is read off the determinant itself, so any pair
        # whose second slot actually enters the determinant reports True;
        # it is False exactly when x2 drops out
        assert not x2_dependence(np.diag([1.0, 2.0]).astype(complex),
                                 np.zeros((2, 2), dtype=complex))
        assert x2_dependence(np.diag([1.0, 2.0]).astype(complex),
                             np.diag([3.0, 4.0]).astype(complex))

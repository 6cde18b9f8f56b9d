"""Operator builder tests.

Entry-level expected values come from two independent routes: closed-form
ratios of the norm sequence, and direct quadrature of the defining inner
products.  The builders must agree with both, and with each other on the
overlaps (analytic Toeplitz vs multiplication vs composition at phi = z).
"""

import numpy as np
import pytest

from bergrange.core import DomainError, UsageError, disk_quadrature, kernel_coeffs, series, series_eval
from bergrange.operators import (
    BiPolySymbol,
    BlockReport,
    block_structure_report,
    boundedness_functional,
    build_multiplication,
    build_toeplitz,
    build_weighted_composition,
    compress,
    kernel_form_closed,
    kernel_form_matrix,
    operator_sum,
)

ALPHAS = [-0.5, 0.0, 1.0, 2.5]


class TestSymbol:
    def test_merge_and_drop(self):
        s = BiPolySymbol(((1, 0, 1.0), (1, 0, 2.0), (0, 1, 0.0)))
        assert s.terms == ((1, 0, 3 + 0j),)

    def test_real_valued_detection(self):
        assert BiPolySymbol(((1, 1, 1.0), (0, 0, 2.0))).is_real_valued
        assert BiPolySymbol(((1, 0, 0.5), (0, 1, 0.5))).is_real_valued
        assert not BiPolySymbol(((1, 0, 0.5), (0, 1, 0.5j))).is_real_valued

    def test_eval(self):
        s = BiPolySymbol(((1, 0, 1.0), (0, 1, 1.0)))
        assert s(0.3 + 0.4j) == pytest.approx(0.6)

    def test_bad_terms(self):
        with pytest.raises(UsageError):
            BiPolySymbol(((1.5, 0, 1.0),))
        with pytest.raises(UsageError):
            BiPolySymbol(((-1, 0, 1.0),))


class TestToeplitz:
    def test_zsq_modulus_diagonal(self):
        # symbol |z|^2: diagonal (n+1)/(n+alpha+2), nothing off it
        for alpha in ALPHAS:
            T = build_toeplitz([(1, 1, 1.0)], alpha, 12)
            n = np.arange(12)
            want = (n + 1.0) / (n + alpha + 2.0)
            assert np.allclose(np.diag(T.matrix), want, atol=1e-14)
            assert np.max(np.abs(T.matrix - np.diag(np.diag(T.matrix)))) == 0.0

    def test_harmonic_symbol_tridiagonal_hermitian(self):
        T = build_toeplitz([(1, 0, 0.5), (0, 1, 0.5)], 0.0, 10)
        A = T.matrix
        assert np.max(np.abs(A - A.conj().T)) < 1e-14
        # stripe m = n + 1 carries 0.5 sqrt(r_n / r_{n+1}) = 0.5 sqrt((n+1)/(n+2))
        n = np.arange(9)
        assert np.allclose(np.diag(A, -1), 0.5 * np.sqrt((n + 1.0) / (n + 2.0)), atol=1e-14)

    def test_real_symbol_gives_hermitian(self):
        sym = BiPolySymbol(((2, 1, 1 - 2j), (1, 2, 1 + 2j), (0, 0, 3.0), (1, 1, 0.7)))
        assert sym.is_real_valued
        for alpha in (0.0, 1.5):
            A = build_toeplitz(sym, alpha, 20).matrix
            assert np.max(np.abs(A - A.conj().T)) < 1e-14

    @pytest.mark.parametrize("alpha", [0.0, 2.5])
    def test_entries_match_quadrature(self, alpha):
        # entry (m, n) = sqrt(r_n r_m) * weighted moment of f z^n conj(z)^m
        terms = [(p, q, 0.3 + 0.1j * (p - q)) for p in range(4) for q in range(3 - p + 1)]
        sym = BiPolySymbol(tuple(terms))
        N = 6
        T = build_toeplitz(sym, alpha, N).matrix
        from bergrange.core import alpha_weight

        wt = alpha_weight(alpha, N)
        for m in range(N):
            for n in range(N):
                val = disk_quadrature(
                    lambda z, m=m, n=n: sym(z) * z**n * np.conj(z) ** m, alpha, 16, 64
                )
                want = np.sqrt(wt.norm_ratio[n] * wt.norm_ratio[m]) * val
                assert abs(T[m, n] - want) < 1e-9


class TestWeightedComposition:
    def test_identity_map(self):
        W = build_weighted_composition([1.0], [0.0, 1.0], 0.0, 16)
        assert np.allclose(W.matrix, np.eye(16), atol=1e-15)

    def test_constant_phi_has_rank_one(self):
        W = build_weighted_composition([1.0, 1.0], [0.5], 0.0, 12)
        assert np.linalg.matrix_rank(W.matrix) == 1
        # phi = 0 additionally kills every column except the first
        Z = build_weighted_composition([1.0, 1.0], [0.0], 0.0, 12)
        assert np.linalg.matrix_rank(Z.matrix) == 1
        assert np.max(np.abs(Z.matrix[:, 1:])) == 0.0

    def test_matches_multiplication_at_identity_phi(self):
        psi = [1.0, 0.5, 0.25j]
        for alpha in ALPHAS:
            M = build_multiplication(psi, alpha, 24).matrix
            W = build_weighted_composition(psi, [0.0, 1.0], alpha, 24).matrix
            assert np.max(np.abs(M - W)) < 1e-14

    def test_multiplication_matches_toeplitz(self):
        psi = [1.0, 0.5, 0.25]
        terms = [(0, 0, 1.0), (1, 0, 0.5), (2, 0, 0.25)]
        for alpha in (0.0, 1.0):
            M = build_multiplication(psi, alpha, 32).matrix
            T = build_toeplitz(terms, alpha, 32).matrix
            assert np.max(np.abs(M - T)) < 1e-13

    def test_shift_subdiagonal(self):
        # multiplication by z at alpha = 0: entries sqrt((n+1)/(n+2))
        M = build_multiplication([0.0, 1.0], 0.0, 10).matrix
        n = np.arange(9)
        assert np.allclose(np.diag(M, -1), np.sqrt((n + 1.0) / (n + 2.0)), atol=1e-14)

    def test_rejects_non_self_map(self):
        with pytest.raises(DomainError, match="self-map"):
            build_weighted_composition([1.0], [0.0, 1.2], 0.0, 8)
        with pytest.raises(DomainError, match="self-map"):
            build_weighted_composition([1.0], [0.5, 1.0], 0.0, 8)

    def test_check_can_be_disabled(self):
        W = build_weighted_composition([1.0], [0.0, 1.2], 0.0, 8, check_self_map=False)
        assert W.truncation == 8

    def test_composition_action_on_polynomial(self):
        # column n of the matrix must reproduce psi * phi^n coefficient-wise
        psi = series([0.5, 0.0, 1.0])
        phi = series([0.1, 0.4, 0.2])
        N = 16
        W = build_weighted_composition(psi, phi, 1.0, N)
        from bergrange.core import alpha_weight, series_mul, series_pow

        wt = alpha_weight(1.0, N - 1)
        n = 3
        target = series_mul(psi.pad_to(N - 1), series_pow(phi.pad_to(N - 1), n))
        got = W.matrix[:, n] * np.sqrt(wt.norm_ratio) / np.sqrt(wt.norm_ratio[n])
        assert np.allclose(got, target.coeffs, atol=1e-14)


class TestSumAndCompress:
    def test_sum_matches_joint_symbol(self):
        A = build_toeplitz([(1, 0, 1.0)], 0.0, 16)
        B = build_toeplitz([(0, 1, 1.0)], 0.0, 16)
        C = build_toeplitz([(1, 0, 1.0), (0, 1, 1.0)], 0.0, 16)
        S = operator_sum([A, B])
        assert np.max(np.abs(S.matrix - C.matrix)) < 1e-15
        assert S.kind == "sum"

    def test_sum_rejects_mismatch(self):
        A = build_toeplitz([(1, 0, 1.0)], 0.0, 16)
        B = build_toeplitz([(1, 0, 1.0)], 0.0, 8)
        with pytest.raises(UsageError):
            operator_sum([A, B])
        C = build_toeplitz([(1, 0, 1.0)], 1.0, 16)
        with pytest.raises(UsageError):
            operator_sum([A, C])

    def test_compress_picks_submatrix(self):
        W = build_weighted_composition([1.0, 0.5], [0.0, 0.0, 0.5], 0.0, 12)
        idx = [1, 4, 7]
        got = compress(W, idx)
        want = np.array([[W.matrix[i, j] for j in idx] for i in idx])
        assert np.array_equal(got, want)

    def test_compress_bad_indices(self):
        W = build_multiplication([0.0, 1.0], 0.0, 8)
        with pytest.raises(UsageError):
            compress(W, [0, 8])


class TestKernelForms:
    def test_closed_form_frozen_value(self):
        # psi = 1, phi = z/2, w = 1/2, alpha = 0: (0.75 / 0.875)^2 = 36/49
        got = kernel_form_closed([1.0], [0.0, 0.5], 0.5, 0.0)
        assert got == pytest.approx(36.0 / 49.0, rel=1e-14)

    def test_identity_operator_form_is_one(self):
        from bergrange.operators import OperatorTruncation

        I = OperatorTruncation(np.eye(32), 0.0)
        assert kernel_form_matrix(I, 0.4 - 0.2j) == pytest.approx(1.0, abs=1e-14)

    def test_matrix_form_converges_to_closed_form(self):
        psi, phi = [1.0], [0.0, 0.5]
        W = build_weighted_composition(psi, phi, 0.0, 128)
        got = kernel_form_matrix(W, 0.5)
        assert abs(got - 36.0 / 49.0) < 1e-6

    def test_adjoint_sends_kernel_to_kernel(self):
        # A* k_w = conj(psi(w)) k_phi(w), up to truncation tails
        cases = [([1.0, 0.25], [0.0, 0.5]), ([0.0, 1.0], [0.0, 0.45, 0.45])]
        for psi, phi in cases:
            W = build_weighted_composition(psi, phi, 0.0, 128)
            for w in (0.5, -0.3 + 0.4j):
                kw = kernel_coeffs(w, 0.0, 127).coeffs_in_basis
                fw = series_eval(series(phi), w)
                kfw = kernel_coeffs(fw, 0.0, 127).coeffs_in_basis
                pw = series_eval(series(psi), w)
                lhs = W.matrix.conj().T @ kw
                assert np.linalg.norm(lhs - np.conj(pw) * kfw) < 1e-5


class TestBoundedness:
    def test_identity_is_one(self):
        assert boundedness_functional([1.0], [0.0, 1.0], 0.0) == pytest.approx(1.0, abs=1e-14)

    def test_contraction_phi(self):
        # psi = 1, phi = z/2: ratio peaks at the origin
        assert boundedness_functional([1.0], [0.0, 0.5], 1.0) == pytest.approx(1.0, abs=1e-12)

    def test_constant_target(self):
        # psi = z, phi = 1/2, alpha = 0: sup_r r(1-r^2)/0.75 = 2/(3 sqrt(3) 0.75)
        want = (1.0 / np.sqrt(3.0)) * (2.0 / 3.0) / 0.75
        got = boundedness_functional([0.0, 1.0], [0.5], 0.0)
        assert got == pytest.approx(want, abs=2e-4)
        assert got <= want + 1e-12


class TestBlocks:
    def test_block_structure_positive(self):
        # multiplication by g(z^2), g = 1 + z/2: entries on residue classes mod 2
        M = build_multiplication([1.0, 0.0, 0.5], 0.5, 33)
        rep = block_structure_report(M, 2)
        assert isinstance(rep, BlockReport)
        assert rep.is_block
        assert rep.off_block_max == 0.0
        assert len(rep.blocks) == 2
        assert rep.blocks[0].shape == (17, 17)
        assert rep.blocks[1].shape == (16, 16)

    def test_block_structure_negative(self):
        M = build_multiplication([1.0, 0.0, 0.5], 0.5, 33)
        rep = block_structure_report(M, 3)
        assert not rep.is_block
        assert rep.off_block_max > 0.2

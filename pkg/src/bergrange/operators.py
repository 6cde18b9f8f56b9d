"""Finite matrix truncations of operators on weighted Bergman spaces.

A truncation of size N acts on span{e_0, ..., e_{N-1}} where e_n is the
orthonormal monomial basis; matrices are indexed so that entry (m, n) is
the coefficient of e_m in the image of e_n.

Builders are provided for Toeplitz operators with bi-polynomial symbols,
weighted composition operators with polynomial data, and multiplication
operators (the analytic Toeplitz case, kept separate because its column
structure is simpler and it serves as a cross-check).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from bergrange.core import (
    DomainError,
    TruncatedSeries,
    UsageError,
    alpha_weight,
    kernel_coeffs,
    series,
    series_eval,
    series_mul,
)

__all__ = [
    "BiPolySymbol",
    "OperatorTruncation",
    "build_toeplitz",
    "build_weighted_composition",
    "build_multiplication",
    "operator_sum",
    "compress",
    "kernel_form_closed",
    "kernel_form_matrix",
    "boundedness_functional",
    "BlockReport",
    "block_structure_report",
]

# number of boundary samples used to certify that a polynomial maps the
# disk into itself; by the maximum principle it is enough to look at one
# circle close to the boundary
_SELF_MAP_SAMPLES = 256
_SELF_MAP_RADIUS = 1.0 - 1e-3


@dataclass(frozen=True)
class BiPolySymbol:
    """Finite sum of c * z^p * conj(z)^q terms.

    Duplicate (p, q) pairs are merged and zero terms dropped, so two
    symbols describing the same function compare equal.
    """

    terms: tuple

    def __post_init__(self):
        merged: dict = {}
        for term in self.terms:
            try:
                p, q, c = term
            except (TypeError, ValueError):
                raise UsageError(f"symbol term must be (p, q, coeff), got {term!r}")
            if not isinstance(p, (int, np.integer)) or not isinstance(q, (int, np.integer)):
                raise UsageError(f"symbol exponents must be integers, got ({p!r}, {q!r})")
            if p < 0 or q < 0:
                raise UsageError(f"symbol exponents must be nonnegative, got ({p}, {q})")
            key = (int(p), int(q))
            merged[key] = merged.get(key, 0j) + complex(c)
        clean = tuple(
            (p, q, c) for (p, q), c in sorted(merged.items()) if c != 0
        )
        object.__setattr__(self, "terms", clean)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        acc = np.zeros_like(z)
        for p, q, c in self.terms:
            acc = acc + c * z**p * np.conj(z) ** q
        if acc.ndim == 0:
            return complex(acc)
        return acc

    @property
    def is_real_valued(self) -> bool:
        """True when the symbol is real on the disk (terms closed under swap-conjugate)."""
        table = {(p, q): c for p, q, c in self.terms}
        for (p, q), c in table.items():
            if table.get((q, p), 0j) != np.conj(c):
                return False
        return True

    @property
    def max_degree(self) -> int:
        return max((max(p, q) for p, q, _ in self.terms), default=0)


@dataclass(frozen=True)
class OperatorTruncation:
    """An N x N matrix truncation together with the space it lives on."""

    matrix: np.ndarray
    alpha: float
    kind: str = "custom"
    params: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex).copy()
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
            raise UsageError(f"matrix must be square and nonempty, got shape {m.shape}")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "alpha", float(self.alpha))

    @property
    def truncation(self) -> int:
        return self.matrix.shape[0]

    def adjoint(self) -> "OperatorTruncation":
        return OperatorTruncation(self.matrix.conj().T, self.alpha, kind=self.kind, params=dict(self.params))

    def __repr__(self):
        return f"OperatorTruncation(kind={self.kind!r}, alpha={self.alpha}, N={self.truncation})"


def _as_symbol(symbol) -> BiPolySymbol:
    if isinstance(symbol, BiPolySymbol):
        return symbol
    return BiPolySymbol(tuple(symbol))


def _as_series(f, name: str) -> TruncatedSeries:
    if isinstance(f, TruncatedSeries):
        return f
    try:
        return series(f)
    except (UsageError, TypeError, ValueError):
        raise UsageError(f"{name} must be a TruncatedSeries or a coefficient sequence")


def _check_truncation(N) -> int:
    if not isinstance(N, (int, np.integer)) or N < 1:
        raise UsageError(f"truncation must be a positive integer, got {N!r}")
    return int(N)


def build_toeplitz(symbol, alpha: float, N: int) -> OperatorTruncation:
    """Truncated Toeplitz operator with a bi-polynomial symbol.

    For a single term c z^p conj(z)^q the only nonzero entries sit on the
    diagonal stripe m - n = p - q and equal
    c sqrt(r_n r_m) w_{n+p}.
    """
    sym = _as_symbol(symbol)
    N = _check_truncation(N)
    wt = alpha_weight(float(alpha), N - 1 + sym.max_degree)
    r = wt.norm_ratio[:N]
    sqrt_r = np.sqrt(r)
    A = np.zeros((N, N), dtype=complex)
    n_idx = np.arange(N)
    for p, q, c in sym.terms:
        m_idx = n_idx + p - q
        keep = (m_idx >= 0) & (m_idx < N)
        nn = n_idx[keep]
        mm = m_idx[keep]
        A[mm, nn] += c * sqrt_r[nn] * sqrt_r[mm] * wt.monomial_norm_sq[nn + p]
    return OperatorTruncation(A, alpha, kind="toeplitz", params={"terms": sym.terms})


def _certify_self_map(phi: TruncatedSeries):
    z = _SELF_MAP_RADIUS * np.exp(2j * np.pi * np.arange(_SELF_MAP_SAMPLES) / _SELF_MAP_SAMPLES)
    vals = series_eval(phi, z)
    mods = np.abs(vals)
    k = int(np.argmax(mods))
    if mods[k] >= 1.0:
        raise DomainError(
            f"phi is not a self-map of the disk: |phi({z[k]:.6f})| = {mods[k]:.6f} >= 1"
        )


def build_weighted_composition(
    psi, phi, alpha: float, N: int, check_self_map: bool = True
) -> OperatorTruncation:
    """Truncation of f -> psi * (f o phi) for polynomial psi and phi.

    Column n holds the coefficients of psi * phi^n in the orthonormal
    basis.  Inputs shorter than the truncation are zero-padded.  When
    ``check_self_map`` is set, phi is sampled on a circle close to the
    boundary and rejected if its image leaves the disk.
    """
    N = _check_truncation(N)
    psi_s = _as_series(psi, "psi").pad_to(N - 1)
    phi_s = _as_series(phi, "phi").pad_to(N - 1)
    if check_self_map:
        _certify_self_map(phi_s)
    wt = alpha_weight(float(alpha), N - 1)
    sqrt_r = np.sqrt(wt.norm_ratio)
    A = np.empty((N, N), dtype=complex)
    cur = psi_s
    for n in range(N):
        A[:, n] = cur.coeffs * (sqrt_r[n] / sqrt_r)
        if n + 1 < N:
            cur = series_mul(cur, phi_s)
    return OperatorTruncation(
        A,
        alpha,
        kind="weighted_composition",
        params={"psi": psi_s.coeffs, "phi": phi_s.coeffs},
    )


def build_multiplication(psi, alpha: float, N: int) -> OperatorTruncation:
    """Truncated multiplication by an analytic polynomial.

    Entry (m, n) is psi_hat[m-n] sqrt(r_n / r_m) for m >= n.  Agrees with
    the Toeplitz builder on analytic symbols and with the weighted
    composition builder at phi(z) = z.
    """
    N = _check_truncation(N)
    psi_s = _as_series(psi, "psi").pad_to(N - 1)
    wt = alpha_weight(float(alpha), N - 1)
    sqrt_r = np.sqrt(wt.norm_ratio)
    A = np.zeros((N, N), dtype=complex)
    for k in range(N):
        c = psi_s.coeffs[k]
        if c == 0:
            continue
        m = np.arange(k, N)
        n = m - k
        A[m, n] = c * sqrt_r[n] / sqrt_r[m]
    return OperatorTruncation(A, alpha, kind="multiplication", params={"psi": psi_s.coeffs})


def operator_sum(ops: Sequence[OperatorTruncation]) -> OperatorTruncation:
    """Sum of truncations living on the same space."""
    ops = list(ops)
    if not ops:
        raise UsageError("operator_sum needs at least one operator")
    first = ops[0]
    for op in ops[1:]:
        if op.truncation != first.truncation:
            raise UsageError(
                f"truncation mismatch in sum: {op.truncation} vs {first.truncation}"
            )
        if op.alpha != first.alpha:
            raise UsageError(f"alpha mismatch in sum: {op.alpha} vs {first.alpha}")
    total = np.zeros_like(first.matrix)
    for op in ops:
        total = total + op.matrix
    return OperatorTruncation(total, first.alpha, kind="sum")


def compress(op, indices) -> np.ndarray:
    """Compression onto the span of the listed basis indices.

    Returns the dense submatrix A[indices, indices] in the given order.
    """
    A = op.matrix if isinstance(op, OperatorTruncation) else np.asarray(op, dtype=complex)
    idx = np.asarray(indices, dtype=int)
    if idx.ndim != 1 or idx.size == 0:
        raise UsageError("indices must be a nonempty 1-d integer sequence")
    if np.any(idx < 0) or np.any(idx >= A.shape[0]):
        raise UsageError(f"indices out of range for truncation {A.shape[0]}")
    return A[np.ix_(idx, idx)]


def kernel_form_closed(psi, phi, w: complex, alpha: float) -> complex:
    """Quadratic form of a weighted composition at a normalized kernel.

    The adjoint sends the kernel at w to conj(psi(w)) times the kernel at
    phi(w), which gives the closed form
    psi(w) (1-|w|^2)^(alpha+2) / (1 - conj(w) phi(w))^(alpha+2).
    """
    psi_s = _as_series(psi, "psi")
    phi_s = _as_series(phi, "phi")
    w = complex(w)
    if abs(w) >= 1.0:
        raise DomainError(f"base point must satisfy |w| < 1, got |w| = {abs(w)}")
    alpha = float(alpha)
    pw = series_eval(psi_s, w)
    fw = series_eval(phi_s, w)
    return pw * (1.0 - abs(w) ** 2) ** (alpha + 2.0) / (1.0 - np.conj(w) * fw) ** (alpha + 2.0)


def kernel_form_matrix(op: OperatorTruncation, w: complex) -> complex:
    """Quadratic form v* A v at the truncated kernel vector, renormalized.

    The truncated kernel is scaled by its own finite norm rather than the
    closed-form norm, so the form is an exact Rayleigh quotient of the
    matrix and lands inside the numerical range of the truncation.
    """
    kv = kernel_coeffs(w, op.alpha, op.truncation - 1)
    v = kv.coeffs_in_basis
    v = v / np.linalg.norm(v)
    return complex(v.conj() @ (op.matrix @ v))


def boundedness_functional(
    psi, phi, alpha: float, radial: int = 64, angular: int = 128
) -> float:
    """Kernel-testing lower bound for the norm of a weighted composition.

    Evaluates |psi(w)| ((1-|w|^2)/(1-|phi(w)|^2))^((alpha+2)/2) over a
    polar grid (including the origin) and returns the supremum; the value
    is the norm of the adjoint applied to the normalized kernel at the
    maximizing point.
    """
    psi_s = _as_series(psi, "psi")
    phi_s = _as_series(phi, "phi")
    alpha = float(alpha)
    if radial < 1 or angular < 1:
        raise UsageError("grid sizes must be >= 1")
    r = np.linspace(0.0, _SELF_MAP_RADIUS, radial)
    theta = 2.0 * np.pi * np.arange(angular) / angular
    w = r[:, None] * np.exp(1j * theta)[None, :]
    pw = np.abs(series_eval(psi_s, w))
    fw = np.abs(series_eval(phi_s, w))
    if np.any(fw >= 1.0):
        raise DomainError("phi leaves the disk on the test grid")
    ratio = (1.0 - np.abs(w) ** 2) / (1.0 - fw**2)
    return float(np.max(pw * ratio ** ((alpha + 2.0) / 2.0)))


@dataclass(frozen=True)
class BlockReport:
    """Residue-class structure of a truncation under index classes mod n."""

    order: int
    off_block_max: float
    is_block: bool
    blocks: tuple


def block_structure_report(op, order: int, tol: float = 1e-12) -> BlockReport:
    """Check whether entries vanish off the residue classes m = n (mod order).

    When they do, permuting the basis by residue turns the matrix into a
    direct sum of ``order`` blocks, which are returned in residue order.
    """
    if not isinstance(order, (int, np.integer)) or order < 1:
        raise UsageError(f"order must be a positive integer, got {order!r}")
    A = op.matrix if isinstance(op, OperatorTruncation) else np.asarray(op, dtype=complex)
    N = A.shape[0]
    m, n = np.meshgrid(np.arange(N), np.arange(N), indexing="ij")
    off = (m - n) % order != 0
    off_max = float(np.max(np.abs(A[off]))) if np.any(off) else 0.0
    blocks = []
    for res in range(order):
        idx = np.arange(res, N, order)
        if idx.size:
            blocks.append(A[np.ix_(idx, idx)])
    return BlockReport(int(order), off_max, off_max <= tol, tuple(blocks))

"""Numerical ranges of matrix truncations.

The numerical range of a matrix A is the set of Rayleigh quotients
v* A v over unit vectors.  It is convex, and its support function in the
direction e^{i theta} is the top eigenvalue of the Hermitian part of
e^{-i theta} A; the top eigenvector hands back a boundary point.  All
range computations here go through that sweep.

Reference shapes (discs, ellipses, polygons, sampled image hulls) share a
common support-function interface so containment can be decided by
comparing supports on an angle grid, which is exact for convex sets up to
grid resolution and immune to the sagging of inscribed polygons.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from bergrange.core import NumericError, UsageError

__all__ = [
    "hermitian_extreme_eig",
    "support_function",
    "boundary_points",
    "convex_hull",
    "HullPolygon",
    "numerical_range_hull",
    "hull_hausdorff",
    "DiscSpec",
    "EllipseSpec",
    "ellipse_from_2x2",
    "support_of",
    "shape_containment",
    "regular_polygon",
    "sample_image_hull",
]


def _as_matrix(A) -> np.ndarray:
    matrix = getattr(A, "matrix", A)
    M = np.asarray(matrix, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] < 1:
        raise UsageError(f"expected a square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise NumericError("matrix has non-finite entries")
    return M


def hermitian_extreme_eig(H, which: str = "max", hermitian_tol: float = 1e-12):
    """Extreme eigenpair of a Hermitian matrix.

    Returns (eigenvalue, eigenvector).  The input must be Hermitian up to
    ``hermitian_tol`` times its magnitude; the residual of the returned
    pair is verified so a silent LAPACK failure cannot leak through.
    """
    M = _as_matrix(H)
    scale = max(1.0, float(np.max(np.abs(M))))
    dev = float(np.max(np.abs(M - M.conj().T)))
    if dev > hermitian_tol * scale:
        raise UsageError(f"matrix is not Hermitian: max deviation {dev:.3e}")
    if which not in ("max", "min"):
        raise UsageError(f"which must be 'max' or 'min', got {which!r}")
    Mh = (M + M.conj().T) / 2.0
    vals, vecs = np.linalg.eigh(Mh)
    k = -1 if which == "max" else 0
    lam, v = float(vals[k]), vecs[:, k]
    residual = float(np.linalg.norm(Mh @ v - lam * v))
    if residual > 1e-10 * scale * np.sqrt(M.shape[0]):
        raise NumericError(f"eigenpair residual too large: {residual:.3e}")
    return lam, v


def support_function(A, thetas) -> np.ndarray:
    """Support of the numerical range in the directions e^{i theta}.

    h(theta) = lambda_max( (e^{-i theta} A + e^{i theta} A*) / 2 ).
    """
    M = _as_matrix(A)
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    out = np.empty(thetas.size)
    Mh = M.conj().T
    for j, th in enumerate(thetas):
        rot = np.exp(-1j * th)
        H = (rot * M + np.conj(rot) * Mh) / 2.0
        out[j] = float(np.linalg.eigvalsh(H)[-1])
    return out


def boundary_points(A, n_angles: int = 360):
    """Boundary sweep of the numerical range.

    Returns a list of (theta, point, support) triples where point is the
    Rayleigh quotient of the top eigenvector of the rotated Hermitian
    part; these points lie on the boundary of the range and their convex
    hull approximates it from inside.
    """
    M = _as_matrix(A)
    if not isinstance(n_angles, (int, np.integer)) or n_angles < 3:
        raise UsageError(f"n_angles must be an integer >= 3, got {n_angles!r}")
    thetas = 2.0 * np.pi * np.arange(n_angles) / n_angles
    Mh = M.conj().T
    out = []
    for th in thetas:
        rot = np.exp(-1j * th)
        H = (rot * M + np.conj(rot) * Mh) / 2.0
        lam, v = hermitian_extreme_eig(H, "max")
        point = complex(v.conj() @ (M @ v))
        out.append((float(th), point, lam))
    return out


def convex_hull(points) -> np.ndarray:
    """Convex hull by the monotone chain, vertices counterclockwise.

    Degenerate inputs are handled: a single repeated point gives a
    one-vertex hull and collinear points a two-vertex hull.  Nearly
    coincident points are merged at 1e-12 relative to the spread.
    """
    pts = np.asarray(points, dtype=complex).ravel()
    if pts.size == 0:
        raise UsageError("need at least one point")
    if not np.all(np.isfinite(pts)):
        raise NumericError("points contain non-finite values")
    scale = max(1.0, float(np.max(np.abs(pts))))
    # dedup on a rounded grid
    merged = {}
    for p in pts:
        key = (round(p.real / (1e-12 * scale)), round(p.imag / (1e-12 * scale)))
        merged.setdefault(key, p)
    uniq = sorted(merged.values(), key=lambda p: (p.real, p.imag))
    if len(uniq) == 1:
        return np.array(uniq, dtype=complex)
    eps = 1e-12 * scale * scale

    def cross(o, a, b):
        return (a.real - o.real) * (b.imag - o.imag) - (a.imag - o.imag) * (b.real - o.real)

    def half(seq):
        chain = []
        for p in seq:
            while len(chain) >= 2 and cross(chain[-2], chain[-1], p) <= eps:
                chain.pop()
            chain.append(p)
        return chain

    lower = half(uniq)
    upper = half(uniq[::-1])
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 2:
        hull = [uniq[0], uniq[-1]]
    return np.array(hull, dtype=complex)


@dataclass(frozen=True)
class HullPolygon:
    """Convex polygon given by counterclockwise vertices.

    Supports one- and two-vertex degenerate cases (a point, a segment).
    """

    vertices: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=complex).ravel().copy()
        if v.size == 0:
            raise UsageError("polygon needs at least one vertex")
        v.flags.writeable = False
        object.__setattr__(self, "vertices", v)

    @classmethod
    def from_points(cls, points) -> "HullPolygon":
        return cls(convex_hull(points))

    @property
    def n_vertices(self) -> int:
        return self.vertices.size

    def support(self, thetas) -> np.ndarray:
        thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
        dirs = np.exp(-1j * thetas)
        return np.max(np.real(dirs[:, None] * self.vertices[None, :]), axis=1)

    def _edges(self):
        v = self.vertices
        if v.size == 1:
            return np.array([v[0]]), np.array([v[0]])
        return v, np.roll(v, -1)

    def signed_distance(self, point: complex) -> float:
        """Distance to the boundary, positive inside and negative outside."""
        p = complex(point)
        a, b = self._edges()
        ab = b - a
        ap = p - a
        with np.errstate(invalid="ignore", divide="ignore"):
            t = np.where(np.abs(ab) > 0, np.clip((ap * np.conj(ab)).real / np.abs(ab) ** 2, 0.0, 1.0), 0.0)
        closest = a + t * ab
        d = float(np.min(np.abs(p - closest)))
        if self.vertices.size < 3:
            return -d
        cross = ab.real * ap.imag - ab.imag * ap.real
        inside = bool(np.all(cross >= -1e-15 * max(1.0, float(np.max(np.abs(self.vertices)))) ** 2))
        return d if inside else -d

    def contains(self, point: complex, tol: float = 0.0) -> bool:
        return self.signed_distance(point) >= -tol

    def boundary_samples(self, n: int = 1024) -> np.ndarray:
        """Roughly arc-length-uniform samples along the closed boundary."""
        if n < 1:
            raise UsageError("n must be >= 1")
        v = self.vertices
        if v.size == 1:
            return np.repeat(v, n)
        a, b = self._edges()
        if v.size == 2:
            a, b = np.array([v[0]]), np.array([v[1]])
        lengths = np.abs(b - a)
        total = float(np.sum(lengths))
        if total == 0.0:
            return np.repeat(v[:1], n)
        s = np.linspace(0.0, total, n, endpoint=False)
        cuts = np.concatenate([[0.0], np.cumsum(lengths)])
        idx = np.clip(np.searchsorted(cuts, s, side="right") - 1, 0, lengths.size - 1)
        local = (s - cuts[idx]) / lengths[idx]
        return a[idx] + local * (b[idx] - a[idx])


def numerical_range_hull(A, n_angles: int = 360) -> HullPolygon:
    """Convex hull of a boundary sweep of the numerical range."""
    pts = [p for _, p, _ in boundary_points(A, n_angles)]
    return HullPolygon.from_points(pts)


def _distance_to_hull(p: complex, hull: HullPolygon) -> float:
    return max(0.0, -hull.signed_distance(p))


def hull_hausdorff(a: HullPolygon, b: HullPolygon, n_samples: int = 1024) -> float:
    """Hausdorff distance between two convex polygons (as filled sets).

    The distance-to-a-convex-set function is convex, so each directed
    distance is attained at a vertex; boundary samples are thrown in as a
    belt-and-braces measure for nearly degenerate hulls.
    """
    if not isinstance(a, HullPolygon):
        a = HullPolygon.from_points(a)
    if not isinstance(b, HullPolygon):
        b = HullPolygon.from_points(b)
    pa = np.concatenate([a.vertices, a.boundary_samples(n_samples)])
    pb = np.concatenate([b.vertices, b.boundary_samples(n_samples)])
    d_ab = max(_distance_to_hull(complex(p), b) for p in pa)
    d_ba = max(_distance_to_hull(complex(p), a) for p in pb)
    return max(d_ab, d_ba)


@dataclass(frozen=True)
class DiscSpec:
    """Closed disc, for containment comparisons."""

    center: complex
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        if self.radius < 0:
            raise UsageError("radius must be >= 0")

    def support(self, thetas) -> np.ndarray:
        thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
        return np.real(np.exp(-1j * thetas) * self.center) + self.radius


@dataclass(frozen=True)
class EllipseSpec:
    """Closed elliptical region given by foci and full minor axis length.

    The full major axis satisfies major^2 = minor^2 + |f1 - f2|^2; a zero
    minor axis degenerates to the segment between the foci.
    """

    focus1: complex
    focus2: complex
    minor_axis: float

    def __post_init__(self):
        object.__setattr__(self, "focus1", complex(self.focus1))
        object.__setattr__(self, "focus2", complex(self.focus2))
        object.__setattr__(self, "minor_axis", float(self.minor_axis))
        if self.minor_axis < 0:
            raise UsageError("minor_axis must be >= 0")

    @property
    def center(self) -> complex:
        return (self.focus1 + self.focus2) / 2.0

    @property
    def major_axis(self) -> float:
        return float(np.hypot(self.minor_axis, abs(self.focus1 - self.focus2)))

    def support(self, thetas) -> np.ndarray:
        thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
        beta = np.angle(self.focus2 - self.focus1) if self.focus2 != self.focus1 else 0.0
        a_s = self.major_axis / 2.0
        b_s = self.minor_axis / 2.0
        rel = thetas - beta
        bulge = np.sqrt(a_s**2 * np.cos(rel) ** 2 + b_s**2 * np.sin(rel) ** 2)
        return np.real(np.exp(-1j * thetas) * self.center) + bulge

    def boundary(self, n: int = 256) -> np.ndarray:
        phi = 2.0 * np.pi * np.arange(n) / n
        beta = np.angle(self.focus2 - self.focus1) if self.focus2 != self.focus1 else 0.0
        a_s = self.major_axis / 2.0
        b_s = self.minor_axis / 2.0
        return self.center + np.exp(1j * beta) * (a_s * np.cos(phi) + 1j * b_s * np.sin(phi))


def ellipse_from_2x2(M) -> EllipseSpec:
    """Elliptical numerical range of a 2 x 2 matrix.

    Foci are the eigenvalues; the full minor axis is
    sqrt(trace(M* M) - |l1|^2 - |l2|^2), which vanishes exactly for
    normal matrices.
    """
    A = _as_matrix(M)
    if A.shape != (2, 2):
        raise UsageError(f"expected a 2 x 2 matrix, got {A.shape}")
    l1, l2 = np.linalg.eigvals(A)
    minor_sq = float(np.sum(np.abs(A) ** 2) - abs(l1) ** 2 - abs(l2) ** 2)
    minor_sq = max(0.0, minor_sq)
    return EllipseSpec(complex(l1), complex(l2), float(np.sqrt(minor_sq)))


def support_of(obj, thetas) -> np.ndarray:
    """Support function of any of the shapes handled by this module.

    Accepts matrices / truncations (boundary sweep), hull polygons,
    discs, ellipses, or a bare 1-d array of points.
    """
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    if isinstance(obj, (HullPolygon, DiscSpec, EllipseSpec)):
        return obj.support(thetas)
    if hasattr(obj, "matrix"):
        return support_function(obj, thetas)
    arr = np.asarray(obj)
    if arr.ndim == 1:
        pts = arr.astype(complex)
        dirs = np.exp(-1j * thetas)
        return np.max(np.real(dirs[:, None] * pts[None, :]), axis=1)
    if arr.ndim == 2:
        return support_function(arr, thetas)
    raise UsageError(f"cannot compute a support function for {type(obj).__name__}")


def shape_containment(inner, outer, n_angles: int = 720) -> float:
    """Worst-case support margin of outer over inner on an angle grid.

    Nonnegative means the inner convex set fits inside the outer one (up
    to grid resolution); the value is the smallest slack found.
    """
    if n_angles < 3:
        raise UsageError("n_angles must be >= 3")
    thetas = 2.0 * np.pi * np.arange(n_angles) / n_angles
    return float(np.min(support_of(outer, thetas) - support_of(inner, thetas)))


def regular_polygon(n: int, radius: float = 1.0, center: complex = 0j, phase: float = 0.0) -> np.ndarray:
    """Vertices of a regular n-gon, counterclockwise from the phase angle."""
    if not isinstance(n, (int, np.integer)) or n < 3:
        raise UsageError(f"polygon order must be an integer >= 3, got {n!r}")
    k = np.arange(n)
    return center + radius * np.exp(1j * (phase + 2.0 * np.pi * k / n))


def sample_image_hull(f, radii=None, n_angles: int = 512) -> HullPolygon:
    """Convex hull of sampled values f(r e^{i theta}).

    ``f`` must evaluate elementwise on complex arrays (truncated series
    and bi-polynomial symbols both do).  Default radii stay just inside
    the disk; pass radii=[1.0] to sample the boundary circle itself.
    """
    if radii is None:
        radii = np.linspace(0.0, 1.0 - 1e-3, 25)
    radii = np.asarray(radii, dtype=float)
    if n_angles < 3:
        raise UsageError("n_angles must be >= 3")
    theta = 2.0 * np.pi * np.arange(n_angles) / n_angles
    z = radii[:, None] * np.exp(1j * theta)[None, :]
    vals = np.asarray(f(z), dtype=complex).ravel()
    vals = np.concatenate([vals, np.atleast_1d(np.asarray(f(np.zeros(1, dtype=complex)), dtype=complex)).ravel()])
    return HullPolygon.from_points(vals)

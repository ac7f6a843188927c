"""Periodic shape functions on the unit torus, held as truncated Fourier
series, with exact spectral sampling/differentiation and the degenerate
curvature subspace attached to a shape.

Wavevectors are integer pairs k = (k1, k2); the function is
sum_k c_k exp(2*pi*i k.y) with c_{-k} = conj(c_k) so values are real.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .elastic import SQRT2, SymMat2

Wavevec = tuple[int, int]

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class ShapeFunction:
    """Real-valued trigonometric polynomial on the torus [0,1]^2."""

    coeffs: dict[Wavevec, complex] = field(repr=False)
    band_limit: int

    def __post_init__(self):
        cl = {(int(k1), int(k2)): complex(c) for (k1, k2), c in self.coeffs.items()}
        scale = max((abs(c) for c in cl.values()), default=0.0)
        tol = 1e-12 * max(1.0, scale)
        for (k1, k2), c in cl.items():
            if max(abs(k1), abs(k2)) > self.band_limit:
                raise ValueError(
                    f"mode {(k1, k2)} exceeds band limit {self.band_limit}"
                )
            partner = cl.get((-k1, -k2))
            if partner is None or abs(partner - c.conjugate()) > tol:
                raise ValueError(
                    f"coefficients are not Hermitian-symmetric at mode {(k1, k2)}; "
                    "the shape would not be real-valued"
                )
        if (0, 0) in cl and abs(cl[0, 0].imag) > tol:
            raise ValueError("mean coefficient must be real")
        object.__setattr__(self, "coeffs", cl)

    @property
    def mean(self) -> float:
        return self.coeffs.get((0, 0), 0j).real

    def coeff_grid(self, n: int, deriv: tuple[int, ...] = ()) -> np.ndarray:
        """Complex n x n spectral array in FFT layout, with derivative
        multipliers (2*pi*i*k_axis) applied per entry of `deriv` (axes 0/1)."""
        if n < 2 * self.band_limit + 1:
            raise ValueError(
                f"grid size {n} aliases the band limit {self.band_limit}; "
                f"need n >= {2 * self.band_limit + 1}"
            )
        c = np.zeros((n, n), dtype=complex)
        for (k1, k2), v in self.coeffs.items():
            m = v
            for ax in deriv:
                m = m * (TWO_PI * 1j * (k1 if ax == 0 else k2))
            c[k1 % n, k2 % n] += m
        return c


def sample(s: ShapeFunction, n: int, deriv: tuple[int, ...] = ()) -> np.ndarray:
    """Exact values of the (derivative of the) shape at grid points j/n.

    `deriv` is a tuple of axes, e.g. () for the function, (0,) for d/dy1,
    (0, 1) for the mixed second derivative.
    """
    c = s.coeff_grid(n, deriv)
    vals = np.fft.ifft2(c) * n * n
    return np.ascontiguousarray(vals.real)


def theta_zero(s: ShapeFunction) -> ShapeFunction:
    """Remove the mean; all other coefficients unchanged."""
    c = dict(s.coeffs)
    c.pop((0, 0), None)
    return ShapeFunction(c, s.band_limit)


_CATALOG = ("flat", "uniwave", "eggbox")


def make_shape(
    name: str | None = None,
    amplitude: float = 1.0,
    coeffs: list[dict] | dict[Wavevec, complex] | None = None,
) -> ShapeFunction:
    """Build a shape from the catalog or from raw coefficients.

    Catalog: "flat" (identically zero), "uniwave" (amplitude*sin(2*pi*y1)),
    "eggbox" (amplitude*sin(2*pi*y1)*sin(2*pi*y2)).  Raw coefficients are
    either a {(k1,k2): complex} map or a list of {"k1","k2","re","im"}
    records and must be Hermitian-symmetric.
    """
    if (name is None) == (coeffs is None):
        raise ValueError("provide exactly one of catalog name or raw coefficients")
    if name is not None:
        a = float(amplitude)
        if name == "flat":
            return ShapeFunction({}, 0)
        if name == "uniwave":
            return ShapeFunction({(1, 0): -0.5j * a, (-1, 0): 0.5j * a}, 1)
        if name == "eggbox":
            q = 0.25 * a
            return ShapeFunction(
                {(1, 1): -q, (-1, -1): -q, (1, -1): q, (-1, 1): q}, 1
            )
        raise ValueError(f"unknown shape catalog name {name!r}; have {_CATALOG}")
    if isinstance(coeffs, dict):
        cmap = {k: complex(v) for k, v in coeffs.items()}
    else:
        cmap = {}
        for rec in coeffs:
            k = (int(rec["k1"]), int(rec["k2"]))
            if k in cmap:
                raise ValueError(f"duplicate mode {k} in coefficient list")
            cmap[k] = complex(float(rec["re"]), float(rec["im"]))
    band = max((max(abs(k1), abs(k2)) for k1, k2 in cmap), default=0)
    return ShapeFunction(cmap, band)


@dataclass(frozen=True)
class KernelBasis:
    """Orthonormal (Frobenius) basis of the symmetric 2x2 matrices whose
    pointwise pairing with the shape's second derivatives vanishes."""

    vectors: list[SymMat2]

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def voigt_matrix(self) -> np.ndarray:
        """dim x 3 array of basis vectors in scaled coordinates."""
        if not self.vectors:
            return np.zeros((0, 3))
        return np.array([v.voigt() for v in self.vectors])


def compute_kernel_V(s: ShapeFunction, tol: float = 1e-12) -> KernelBasis:
    """Degenerate curvature directions of the shape.

    Each active mode k != 0 (|c_k| above tol relative to the largest
    coefficient) imposes a11*k2^2 + a22*k1^2 - 2*a12*k1*k2 = 0 on the
    symmetric matrix A; the joint nullspace is returned orthonormalized
    under the Frobenius inner product.
    """
    scale = max((abs(c) for k, c in s.coeffs.items() if k != (0, 0)), default=0.0)
    rows = []
    seen = set()
    for (k1, k2), c in s.coeffs.items():
        if (k1, k2) == (0, 0) or abs(c) <= tol * scale:
            continue
        key = (k1, k2) if (k1, k2) > (-k1, -k2) else (-k1, -k2)
        if key in seen:
            continue
        seen.add(key)
        # constraint row in scaled coordinates (a11, a22, sqrt2*a12)
        rows.append([k2 * k2, k1 * k1, -SQRT2 * k1 * k2])
    if not rows:
        basis = np.eye(3)
    else:
        m = np.array(rows, dtype=float)
        _, sv, vt = np.linalg.svd(m)
        rank = int(np.sum(sv > 1e-12 * max(1.0, sv[0])))
        basis = vt[rank:]
    return KernelBasis([SymMat2.from_voigt(z) for z in basis])


def kernel_residual(s: ShapeFunction, a: SymMat2, n: int | None = None) -> float:
    """Max over grid points of |a11*d22(theta) + a22*d11(theta) - 2*a12*d12(theta)|."""
    if n is None:
        n = 4 * (2 * s.band_limit + 1)
    n = max(n, 2 * s.band_limit + 1)
    d11 = sample(s, n, (0, 0))
    d22 = sample(s, n, (1, 1))
    d12 = sample(s, n, (0, 1))
    return float(np.abs(a.a11 * d22 + a.a22 * d11 - 2.0 * a.a12 * d12).max())


def second_derivative_scale(s: ShapeFunction, n: int | None = None) -> float:
    """Sup norm of the shape's second derivatives (for residual tolerances)."""
    if n is None:
        n = 4 * (2 * s.band_limit + 1)
    n = max(n, 2 * s.band_limit + 1)
    return float(
        max(
            np.abs(sample(s, n, (i, j))).max()
            for i in range(2)
            for j in range(2)
        )
    )

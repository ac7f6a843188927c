"""Elastic quadratic forms: the 3D form, its plane-stress relaxation and the
operator realizing the relaxed form.

The plane form is obtained by minimizing the 3D form over transverse-stretch
directions; because the 3D form is quadratic this is an exact 3x3 linear
solve, not an iterative minimization.

Coordinate convention used throughout the package: a symmetric 2x2 matrix
with entries (a11, a22, a12) is mapped to the "scaled" coordinate vector
z = (a11, a22, sqrt(2)*a12), so that the Euclidean dot product of two z
vectors equals the Frobenius product of the matrices.  The plane form is
then a plain symmetric 3x3 matrix in z coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

SQRT2 = np.sqrt(2.0)


@dataclass(frozen=True)
class SymMat2:
    """Symmetric 2x2 matrix [[a11, a12], [a12, a22]]."""

    a11: float
    a22: float
    a12: float

    def as_matrix(self) -> np.ndarray:
        return np.array([[self.a11, self.a12], [self.a12, self.a22]])

    def voigt(self) -> np.ndarray:
        """Scaled coordinates (a11, a22, sqrt2*a12); dot product = Frobenius."""
        return np.array([self.a11, self.a22, SQRT2 * self.a12])

    @staticmethod
    def from_matrix(m: np.ndarray) -> "SymMat2":
        m = np.asarray(m, dtype=float)
        return SymMat2(m[0, 0], m[1, 1], 0.5 * (m[0, 1] + m[1, 0]))

    @staticmethod
    def from_voigt(z: np.ndarray) -> "SymMat2":
        return SymMat2(float(z[0]), float(z[1]), float(z[2]) / SQRT2)

    def frobenius(self, other: "SymMat2") -> float:
        return float(self.voigt() @ other.voigt())

    def norm(self) -> float:
        return float(np.sqrt(self.frobenius(self)))

    def __add__(self, other: "SymMat2") -> "SymMat2":
        return SymMat2(self.a11 + other.a11, self.a22 + other.a22, self.a12 + other.a12)

    def __sub__(self, other: "SymMat2") -> "SymMat2":
        return SymMat2(self.a11 - other.a11, self.a22 - other.a22, self.a12 - other.a12)

    def __mul__(self, c: float) -> "SymMat2":
        return SymMat2(c * self.a11, c * self.a22, c * self.a12)

    __rmul__ = __mul__


@dataclass(frozen=True)
class IsotropicModuli:
    """Isotropic material: shear modulus mu and first Lame parameter lam.

    Validity requires mu > 0 and 2*mu + lam > 0 (the transverse-stretch
    system stays positive definite); lam may be negative.
    """

    mu: float
    lam: float

    def __post_init__(self):
        if not self.mu > 0.0:
            raise ValueError(f"shear modulus must be positive, got mu={self.mu}")
        if not 2.0 * self.mu + self.lam > 0.0:
            raise ValueError(
                f"need 2*mu + lambda > 0, got mu={self.mu}, lambda={self.lam}"
            )


# order of the symmetric-matrix basis used for 6x6 coordinates of a rank-4
# tensor: (11, 22, 33, 23, 13, 12), off-diagonal entries carry sqrt(2)
_MANDEL_PAIRS = [(0, 0), (1, 1), (2, 2), (1, 2), (0, 2), (0, 1)]


def _mandel_from_tensor(c: np.ndarray) -> np.ndarray:
    m = np.empty((6, 6))
    for a, (i, j) in enumerate(_MANDEL_PAIRS):
        for b, (k, l) in enumerate(_MANDEL_PAIRS):
            w = (SQRT2 if i != j else 1.0) * (SQRT2 if k != l else 1.0)
            m[a, b] = w * c[i, j, k, l]
    return m


def _tensor_from_mandel(m: np.ndarray) -> np.ndarray:
    c = np.zeros((3, 3, 3, 3))
    for a, (i, j) in enumerate(_MANDEL_PAIRS):
        for b, (k, l) in enumerate(_MANDEL_PAIRS):
            w = (SQRT2 if i != j else 1.0) * (SQRT2 if k != l else 1.0)
            v = m[a, b] / w
            for p, q in {(i, j), (j, i)}:
                for r, s in {(k, l), (l, k)}:
                    c[p, q, r, s] = v
    return c


@dataclass(frozen=True)
class ElasticTensor3:
    """General rank-4 stiffness with minor and major symmetries, positive
    definite on symmetric 3x3 matrices."""

    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.asarray(self.entries, dtype=float)
        if c.shape != (3, 3, 3, 3):
            raise ValueError(f"stiffness array must be 3x3x3x3, got {c.shape}")
        for perm, name in [
            ((1, 0, 2, 3), "minor (ij)"),
            ((0, 1, 3, 2), "minor (kl)"),
            ((2, 3, 0, 1), "major"),
        ]:
            if not np.allclose(c, np.transpose(c, perm), rtol=0, atol=1e-12 * max(1.0, np.abs(c).max())):
                raise ValueError(f"stiffness lacks {name} symmetry")
        object.__setattr__(self, "entries", c)
        evals = np.linalg.eigvalsh(self.mandel())
        if evals.min() <= 0.0:
            raise ValueError(
                f"stiffness not positive definite on symmetric matrices "
                f"(smallest eigenvalue {evals.min():.3e})"
            )

    def mandel(self) -> np.ndarray:
        """6x6 symmetric-coordinate matrix (orthonormal basis, sqrt2 shears)."""
        return _mandel_from_tensor(self.entries)

    @staticmethod
    def from_isotropic(mu: float, lam: float) -> "ElasticTensor3":
        d = np.eye(3)
        c = lam * np.einsum("ij,kl->ijkl", d, d) + mu * (
            np.einsum("ik,jl->ijkl", d, d) + np.einsum("il,jk->ijkl", d, d)
        )
        return ElasticTensor3(c)

    @staticmethod
    def from_mandel_upper(entries: np.ndarray) -> "ElasticTensor3":
        """Build from the 21 upper-triangle row-major entries of the 6x6
        symmetric-coordinate matrix (basis order 11,22,33,23,13,12)."""
        entries = np.asarray(entries, dtype=float).ravel()
        if entries.size != 21:
            raise ValueError(f"expected 21 entries, got {entries.size}")
        m = np.zeros((6, 6))
        iu = np.triu_indices(6)
        m[iu] = entries
        m = m + np.triu(m, 1).T
        return ElasticTensor3(_tensor_from_mandel(m))


ElasticModel = IsotropicModuli | ElasticTensor3


def q3_eval(model: ElasticModel, f: np.ndarray) -> float:
    """The 3D quadratic form on a general 3x3 matrix; depends only on sym f."""
    f = np.asarray(f, dtype=float)
    s = 0.5 * (f + f.T)
    if isinstance(model, IsotropicModuli):
        return float(2.0 * model.mu * np.sum(s * s) + model.lam * np.trace(s) ** 2)
    return float(np.einsum("ijkl,ij,kl->", model.entries, s, s))


def _stretch_matrix(a: np.ndarray) -> np.ndarray:
    """a⊗e3 + e3⊗a for a in R^3 (symmetric by construction)."""
    m = np.zeros((3, 3))
    m[0, 2] = m[2, 0] = a[0]
    m[1, 2] = m[2, 1] = a[1]
    m[2, 2] = 2.0 * a[2]
    return m


def _embed(g: SymMat2) -> np.ndarray:
    m = np.zeros((3, 3))
    m[:2, :2] = g.as_matrix()
    return m


def _stretch_system(model: ElasticModel) -> np.ndarray:
    """3x3 matrix of the transverse-stretch quadratic (one half its Hessian)."""
    e = np.eye(3)
    k = np.empty((3, 3))
    for i in range(3):
        qi = q3_eval(model, _stretch_matrix(e[i]))
        k[i, i] = qi
        for j in range(i + 1, 3):
            qj = q3_eval(model, _stretch_matrix(e[j]))
            k[i, j] = k[j, i] = 0.5 * (
                q3_eval(model, _stretch_matrix(e[i] + e[j])) - qi - qj
            )
    return k


def optimal_stretch(model: ElasticModel, g: SymMat2) -> np.ndarray:
    """Transverse-stretch vector attaining the plane-stress minimum; linear in g."""
    gh = _embed(g)
    e = np.eye(3)
    k = _stretch_system(model)
    q0 = q3_eval(model, gh)
    b = np.empty(3)
    for i in range(3):
        si = _stretch_matrix(e[i])
        b[i] = 0.5 * (q3_eval(model, gh + si) - q0 - q3_eval(model, si))
    try:
        c = np.linalg.cholesky(k)
    except np.linalg.LinAlgError:
        raise ValueError(
            "transverse-stretch system is not positive definite; invalid elastic model"
        ) from None
    y = np.linalg.solve(c, -b)
    return np.linalg.solve(c.T, y)


def q2_from_q3(model: ElasticModel, g: SymMat2) -> float:
    """Plane-stress relaxation: min over transverse stretches of the 3D form."""
    a = optimal_stretch(model, g)
    return q3_eval(model, _embed(g) + _stretch_matrix(a))


@dataclass(frozen=True)
class PlaneForm:
    """The relaxed plane form as a symmetric positive definite 3x3 matrix in
    scaled coordinates z = (a11, a22, sqrt2*a12)."""

    A_matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        a = np.asarray(self.A_matrix, dtype=float)
        if a.shape != (3, 3) or not np.allclose(a, a.T, rtol=0, atol=1e-12 * max(1.0, np.abs(a).max())):
            raise ValueError("plane form matrix must be symmetric 3x3")
        a = 0.5 * (a + a.T)
        object.__setattr__(self, "A_matrix", a)
        evals = np.linalg.eigvalsh(a)
        if evals.min() <= 0.0:
            raise ValueError(
                f"plane form not positive definite (smallest eigenvalue {evals.min():.3e}); "
                "the elastic model is outside the admissible class"
            )

    def q2(self, g: SymMat2) -> float:
        z = g.voigt()
        return float(z @ self.A_matrix @ z)

    def apply(self, z: np.ndarray) -> np.ndarray:
        """Operator action in scaled coordinates (pointwise stress from strain)."""
        return self.A_matrix @ z


def plane_form(model: ElasticModel) -> PlaneForm:
    """Assemble the 3x3 matrix of the relaxed form by polarization over basis
    matrices in scaled coordinates."""
    basis = [SymMat2(1.0, 0.0, 0.0), SymMat2(0.0, 1.0, 0.0), SymMat2(0.0, 0.0, 1.0 / SQRT2)]
    a = np.empty((3, 3))
    qs = [q2_from_q3(model, b) for b in basis]
    for i in range(3):
        a[i, i] = qs[i]
        for j in range(i + 1, 3):
            a[i, j] = a[j, i] = 0.5 * (
                q2_from_q3(model, basis[i] + basis[j]) - qs[i] - qs[j]
            )
    return PlaneForm(a)

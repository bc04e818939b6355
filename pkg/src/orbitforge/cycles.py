"""Hermitian endomorphisms and rationally parametrized cycles.

The metric half of the toolkit works in floating point: cycles are given by
explicit rational parametrizations of their one-dimensional components (plus
optional weighted points), and hermitian operators drive Hamiltonian flows
on the ambient projective space.  Exact objects from the algebraic half are
converted through :func:`ParametrizedCycle.from_exact_curves`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .poly import Poly

HERMITIAN_TOL = 1e-12


class ZeroVector(ValueError):
    """Hamiltonians are undefined at the zero vector."""


class NotSelfAdjoint(ValueError):
    pass


class HermitianEndomorphism:
    """Self-adjoint operator on C^q, optionally trace-free."""

    def __init__(self, matrix: Sequence[Sequence[complex]]):
        m = np.asarray(matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("expected a square matrix")
        scale = max(1.0, float(np.abs(m).max()))
        if float(np.abs(m - m.conj().T).max()) > HERMITIAN_TOL * scale:
            raise NotSelfAdjoint("matrix is not self-adjoint within 1e-12")
        self.matrix = 0.5 * (m + m.conj().T)
        self._eigh: Optional[Tuple[np.ndarray, np.ndarray]] = None

    @staticmethod
    def diagonal(values: Sequence[float]) -> "HermitianEndomorphism":
        return HermitianEndomorphism(np.diag(np.asarray(values, dtype=float)))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def eigensystem(self) -> Tuple[np.ndarray, np.ndarray]:
        if self._eigh is None:
            vals, vecs = np.linalg.eigh(self.matrix)
            recon = (vecs * vals) @ vecs.conj().T
            scale = max(1.0, float(np.abs(self.matrix).max()))
            if float(np.abs(recon - self.matrix).max()) > 1e-12 * scale * self.dim:
                raise NotSelfAdjoint("eigendecomposition failed the 1e-12 "
                                     "reconstruction check")
            self._eigh = (vals, vecs)
        return self._eigh

    def operator_norm(self) -> float:
        vals, _ = self.eigensystem()
        return float(np.abs(vals).max())

    def is_scalar(self, tol: float = 1e-12) -> bool:
        vals, _ = self.eigensystem()
        return float(vals.max() - vals.min()) <= tol * max(1.0, float(np.abs(vals).max()))

    def traceless_part(self) -> "HermitianEndomorphism":
        shift = self.trace / self.dim
        return HermitianEndomorphism(self.matrix - shift * np.eye(self.dim))

    def flow(self, s: float) -> np.ndarray:
        """The matrix ``exp(A s)`` via the (checked) eigendecomposition."""
        vals, vecs = self.eigensystem()
        return (vecs * np.exp(vals * s)) @ vecs.conj().T

    def scale(self, c: float) -> "HermitianEndomorphism":
        return HermitianEndomorphism(self.matrix * c)

    def __neg__(self) -> "HermitianEndomorphism":
        return HermitianEndomorphism(-self.matrix)

    def __repr__(self):
        return f"HermitianEndomorphism(dim={self.dim}, trace={self.trace:.3g})"


def hamiltonian(A: HermitianEndomorphism, x: Sequence[complex]) -> float:
    """``H_A([x]) = <x, A x> / |x|^2``; lies between the extreme eigenvalues."""
    v = np.asarray(x, dtype=complex)
    n2 = float(np.vdot(v, v).real)
    if n2 <= 0.0:
        raise ZeroVector("Hamiltonian evaluated at the zero vector")
    return float(np.vdot(v, A.matrix @ v).real / n2)


def _trim_trailing_zero_columns(c: np.ndarray) -> np.ndarray:
    d = c.shape[1]
    while d > 1 and not np.any(c[:, d - 1]):
        d -= 1
    return c[:, :d]


@dataclass(frozen=True)
class CurveComponent:
    """A rational curve ``u -> [phi_0(u) : ... : phi_N(u)]`` with multiplicity.

    ``coeffs[i, k]`` is the coefficient of ``u^k`` in the ``i``-th coordinate.
    The parametrisation is assumed primitive (no common polynomial factor);
    its degree is then the degree of the cycle component when the map is
    birational onto its image.
    """

    coeffs: np.ndarray
    mult: int = 1

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.ndim != 2:
            raise ValueError("coeffs must be a 2d array")
        object.__setattr__(self, "coeffs", _trim_trailing_zero_columns(c))
        if self.mult < 1:
            raise ValueError("multiplicity must be >= 1")

    @property
    def degree(self) -> int:
        return self.coeffs.shape[1] - 1

    @property
    def ambient(self) -> int:
        return self.coeffs.shape[0] - 1

    def evaluate(self, u: np.ndarray) -> np.ndarray:
        """Coordinates at the sample points; shape (N+1, *u.shape)."""
        powers = np.power.outer(np.asarray(u, dtype=complex),
                                np.arange(self.coeffs.shape[1]))
        return np.tensordot(self.coeffs, powers, axes=(1, -1))

    def reversed_chart(self) -> "CurveComponent":
        """The ``w = 1/u`` chart: coefficients reversed."""
        return CurveComponent(self.coeffs[:, ::-1], self.mult)

    def transform(self, mat: np.ndarray) -> "CurveComponent":
        return CurveComponent(np.asarray(mat, dtype=complex) @ self.coeffs, self.mult)


@dataclass(frozen=True)
class PointComponent:
    coords: np.ndarray
    mult: int = 1

    def __post_init__(self):
        v = np.asarray(self.coords, dtype=complex)
        if not np.any(v):
            raise ZeroVector("point component with zero coordinate vector")
        object.__setattr__(self, "coords", v)
        if self.mult < 1:
            raise ValueError("multiplicity must be >= 1")

    def transform(self, mat: np.ndarray) -> "PointComponent":
        return PointComponent(np.asarray(mat, dtype=complex) @ self.coords, self.mult)


_BASEPOINT_GRID = np.concatenate([
    np.linspace(-1, 1, 7),
    1j * np.linspace(-1, 1, 7),
    (0.3 + 0.7j) * np.linspace(-1, 1, 5),
])


class ParametrizedCycle:
    """An algebraic cycle given by parametrized curve components and points.

    Only pure dimensions occur here: a cycle is a formal sum of curves
    (dimension 1) or of points (dimension 0), never a mixture.
    """

    def __init__(self, ambient_dim: int,
                 curves: Sequence[CurveComponent] = (),
                 points: Sequence[PointComponent] = ()):
        self.ambient_dim = int(ambient_dim)
        self.curves = list(curves)
        self.points = list(points)
        if self.curves and self.points:
            raise ValueError("cycle mixes dimensions; split it instead")
        if not self.curves and not self.points:
            raise ValueError("empty cycle")
        for comp in self.curves:
            if comp.ambient != self.ambient_dim:
                raise ValueError("component ambient dimension mismatch")
            vals = comp.evaluate(_BASEPOINT_GRID)
            norms = np.sqrt(np.sum(np.abs(vals) ** 2, axis=0))
            if float(norms.min()) < 1e-12:
                raise ZeroVector("parametrisation hits zero on the sample grid "
                                 "(basepoint); clear common factors first")
        for p in self.points:
            if p.coords.shape[0] != self.ambient_dim + 1:
                raise ValueError("point ambient dimension mismatch")

    # -- construction ------------------------------------------------------

    @staticmethod
    def from_exact_curves(ambient_dim: int,
                          components: Sequence[Tuple[Sequence[Poly], int]]
                          ) -> "ParametrizedCycle":
        curves = []
        for polys, mult in components:
            deg = max(p.degree for p in polys)
            arr = np.zeros((len(polys), deg + 1), dtype=complex)
            for i, p in enumerate(polys):
                for k, c in enumerate(p.coeffs):
                    arr[i, k] = c.to_complex()
            curves.append(CurveComponent(arr, mult))
        return ParametrizedCycle(ambient_dim, curves=curves)

    @staticmethod
    def single_point(coords: Sequence[complex], mult: int = 1) -> "ParametrizedCycle":
        v = np.asarray(coords, dtype=complex)
        return ParametrizedCycle(v.shape[0] - 1, points=[PointComponent(v, mult)])

    # -- structure ----------------------------------------------------------

    @property
    def dimension(self) -> int:
        return 1 if self.curves else 0

    @property
    def degree(self) -> int:
        """Algebraic degree = normalized volume of the cycle."""
        if self.curves:
            return sum(c.mult * c.degree for c in self.curves)
        return sum(p.mult for p in self.points)

    def transform(self, mat: np.ndarray) -> "ParametrizedCycle":
        return ParametrizedCycle(
            self.ambient_dim,
            curves=[c.transform(mat) for c in self.curves],
            points=[p.transform(mat) for p in self.points])

    def __repr__(self):
        return (f"ParametrizedCycle(P^{self.ambient_dim}, "
                f"{len(self.curves)} curves, {len(self.points)} points, "
                f"degree {self.degree})")


@dataclass(frozen=True)
class QuadratureSpec:
    """Grid resolution, target tolerance, and determinism settings.

    ``grid`` is the initial number of radial Gauss-Legendre nodes per chart
    (the angular trapezoid rule uses twice as many points); adaptive
    refinement doubles both until successive values differ by less than
    ``tol``.  The reduction order is a fixed pairwise tree, so results are
    bitwise reproducible for a fixed spec regardless of worker count.
    """

    grid: int = 24
    tol: float = 1e-9
    max_levels: int = 6
    deterministic: bool = True
    jobs: int = 1

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError("tolerance must be positive")
        if self.grid < 4:
            raise ValueError("grid must be at least 4")

"""Fubini-Study quadrature over rationally parametrized curves.

The source P^1 of each component is covered by the unit disc in the ``u``
chart and the unit disc in the ``w = 1/u`` chart; on each chart the
Fubini-Study area form pulled back through the parametrisation has smooth
density

    (1/pi) * (|phi|^2 |phi'|^2 - |<phi', phi>|^2) / |phi|^4

with respect to Lebesgue measure, normalised so that the total mass of a
component equals its parametrisation degree.  Integration is a tensor
product of Gauss-Legendre (radial) and trapezoid (angular) rules, refined by
doubling until two consecutive levels agree; all sums are pairwise trees in
a fixed layout, so the results do not depend on evaluation order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from .cycles import (CurveComponent, HermitianEndomorphism, ParametrizedCycle,
                     QuadratureSpec, hamiltonian)


class QuadratureDivergence(RuntimeError):
    """A component failed its degree self-check or did not converge."""


DEGREE_CHECK_TOL = 1e-8


def pairwise_sum(values: np.ndarray) -> float:
    """Deterministic tree reduction (fixed pairing layout)."""
    a = np.asarray(values, dtype=float).ravel()
    if a.size == 0:
        return 0.0
    while a.size > 1:
        if a.size % 2:
            a = np.concatenate([a, [0.0]])
        a = a[0::2] + a[1::2]
    return float(a[0])


def _chart_nodes(n_r: int, n_theta: int) -> Tuple[np.ndarray, np.ndarray]:
    """Polar grid on the unit disc with combined weights r * w_r * w_theta."""
    x, wx = np.polynomial.legendre.leggauss(n_r)
    r = 0.5 * (x + 1.0)
    wr = 0.5 * wx
    theta = 2.0 * np.pi * np.arange(n_theta) / n_theta
    wt = 2.0 * np.pi / n_theta
    u = r[:, None] * np.exp(1j * theta)[None, :]
    w = (r * wr)[:, None] * np.full((1, n_theta), wt)
    return u, w


def _chart_integrals(comp: CurveComponent, A: Optional[HermitianEndomorphism],
                     n_r: int, n_theta: int) -> Tuple[float, float]:
    """(mass, integral of H) over both charts at the given resolution."""
    u, wts = _chart_nodes(n_r, n_theta)
    mass = 0.0
    hint = 0.0
    for chart in (comp, comp.reversed_chart()):
        vals = chart.evaluate(u)              # (N+1, n_r, n_theta)
        dcoeffs = chart.coeffs[:, 1:] * np.arange(1, chart.coeffs.shape[1])
        powers = np.power.outer(u, np.arange(chart.coeffs.shape[1] - 1))
        derivs = np.tensordot(dcoeffs, powers, axes=(1, -1)) \
            if chart.coeffs.shape[1] > 1 else np.zeros_like(vals)
        s = np.sum(np.abs(vals) ** 2, axis=0)
        s_uu = np.sum(np.abs(derivs) ** 2, axis=0)
        cross = np.sum(derivs * vals.conj(), axis=0)
        density = (s * s_uu - np.abs(cross) ** 2) / (np.pi * s * s)
        cell = density * wts
        mass += pairwise_sum(cell)
        if A is not None:
            h = np.real(np.sum(vals.conj() * (np.tensordot(
                A.matrix, vals, axes=(1, 0))), axis=0)) / s
            hint += pairwise_sum(cell * h)
    return mass, hint


@dataclass(frozen=True)
class CycleIntegrals:
    """Converged Fubini-Study data of a cycle."""

    volume: float
    h_integral: float
    error_estimate: float
    levels_used: int
    degree_defect: float


def integrate_cycle(Z: ParametrizedCycle, A: Optional[HermitianEndomorphism],
                    spec: QuadratureSpec) -> CycleIntegrals:
    """Volume and ``integral of H_A`` over the cycle, adaptively refined.

    The volume of every curve component is compared against its algebraic
    degree (Wirtinger: the Fubini-Study mass of an algebraic curve is its
    degree); a defect beyond 1e-8 raises :class:`QuadratureDivergence`.
    """
    if Z.points:
        vol = float(sum(p.mult for p in Z.points))
        hint = 0.0
        if A is not None:
            hint = pairwise_sum(np.array(
                [p.mult * hamiltonian(A, p.coords) for p in Z.points]))
        return CycleIntegrals(vol, hint, 0.0, 0, 0.0)

    total_vol = 0.0
    total_h = 0.0
    err = 0.0
    worst_defect = 0.0
    levels_max = 0
    for comp in Z.curves:
        prev = None
        n_r, n_theta = spec.grid, 2 * spec.grid
        result = None
        for level in range(spec.max_levels):
            mass, hint = _chart_integrals(comp, A, n_r, n_theta)
            if prev is not None and abs(hint - prev[1]) <= spec.tol \
                    and abs(mass - prev[0]) <= spec.tol:
                result = (mass, hint,
                          max(abs(hint - prev[1]), abs(mass - prev[0])), level + 1)
                break
            prev = (mass, hint)
            n_r *= 2
            n_theta *= 2
        if result is None:
            raise QuadratureDivergence(
                f"component of degree {comp.degree} did not converge to "
                f"tol={spec.tol} within {spec.max_levels} refinements")
        mass, hint, comp_err, levels = result
        defect = abs(mass - comp.degree)
        if defect > DEGREE_CHECK_TOL:
            raise QuadratureDivergence(
                f"degree self-check failed: mass {mass!r} vs degree "
                f"{comp.degree} (defect {defect:.3e})")
        worst_defect = max(worst_defect, defect)
        levels_max = max(levels_max, levels)
        total_vol += comp.mult * mass
        total_h += comp.mult * hint
        err += comp.mult * comp_err
    return CycleIntegrals(total_vol, total_h, err, levels_max, worst_defect)

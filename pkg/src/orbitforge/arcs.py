"""Arcs into group orbits: factorization, invariants, and flat limits.

An arc is a matrix ``g(t)`` of truncated Laurent series, invertible over the
Laurent field, acting on points by ``u -> g(t) u`` and on homogeneous forms
by ``(g . F)(x) = F(g(t)^{-1} x)``.  The central computation is the
factorization ``g = L * t^A * R`` with ``L, R`` holomorphic and invertible at
``t = 0``: its integer weights and the flag spanned by the leading columns of
``L`` are the discrete invariants behind every pole-order computation here.

Conventions pinned here and relied on elsewhere:

* the lifted arc of a form has coefficient series scaling like
  ``t^{-<w, a>}`` on the monomial ``x^a`` under a diagonal ``t^w``;
* the flat limit of the one-parameter orbit keeps the monomials of extremal
  weight (maximal for direction ``+1``, minimal for ``-1``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .forms import DimensionMismatch, Exponent, HomogeneousForm, monomial_exponents
from .linalg import det as exact_det, rank, same_column_span
from .poly import Poly, rational_roots, squarefree_decomposition
from .scalars import GaussianRational, ONE, ZERO, gr
from .series import TruncatedSeries, ZeroSeries, _kmin


class SingularArc(ValueError):
    """The determinant of the arc matrix is zero to truncation."""


class InsufficientTruncation(RuntimeError):
    """The truncation order cannot certify a pivot of the factorization."""


# ---------------------------------------------------------------------------
# arc matrices


class ArcMatrix:
    """Square matrix of truncated Laurent series in ``t``."""

    def __init__(self, entries: Sequence[Sequence[TruncatedSeries]]):
        q = len(entries)
        if any(len(row) != q for row in entries):
            raise ValueError("arc matrix must be square")
        self.entries = [list(row) for row in entries]
        self.q = q

    @staticmethod
    def identity(q: int, var: str = "t") -> "ArcMatrix":
        return ArcMatrix([[TruncatedSeries.one(var) if i == j
                           else TruncatedSeries.zero(var)
                           for j in range(q)] for i in range(q)])

    @staticmethod
    def one_ps(w: Sequence[int], var: str = "t") -> "ArcMatrix":
        """The diagonal arc ``t^w`` (exact monomial entries)."""
        q = len(w)
        return ArcMatrix([[TruncatedSeries.monomial(var, w[i]) if i == j
                           else TruncatedSeries.zero(var)
                           for j in range(q)] for i in range(q)])

    @staticmethod
    def from_constant(mat: Sequence[Sequence], var: str = "t") -> "ArcMatrix":
        return ArcMatrix([[TruncatedSeries.constant(var, GaussianRational.coerce(c))
                           for c in row] for row in mat])

    @staticmethod
    def holomorphic(coefficient_matrices: Sequence[Sequence[Sequence]],
                    K: int, var: str = "t") -> "ArcMatrix":
        """``H_0 + H_1 t + ...`` from constant matrices, truncated at ``K``."""
        q = len(coefficient_matrices[0])
        rows = []
        for i in range(q):
            row = []
            for j in range(q):
                cs = [GaussianRational.coerce(H[i][j]) for H in coefficient_matrices]
                row.append(TruncatedSeries(var, 0, cs, K))
            rows.append(row)
        return ArcMatrix(rows)

    @property
    def var(self) -> str:
        return self.entries[0][0].var

    @property
    def K(self) -> Optional[int]:
        k = None
        for row in self.entries:
            for s in row:
                k = _kmin(k, s.K)
        return k

    def __matmul__(self, other: "ArcMatrix") -> "ArcMatrix":
        if self.q != other.q:
            raise DimensionMismatch("matrix sizes differ")
        q = self.q
        out = []
        for i in range(q):
            row = []
            for j in range(q):
                acc = TruncatedSeries.zero(self.var)
                for k in range(q):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return ArcMatrix(out)

    def apply_to_vector(self, vec: Sequence[TruncatedSeries]) -> List[TruncatedSeries]:
        out = []
        for i in range(self.q):
            acc = TruncatedSeries.zero(self.var)
            for k in range(self.q):
                acc = acc + self.entries[i][k] * vec[k]
            out.append(acc)
        return out

    def value_at_zero(self) -> List[List[GaussianRational]]:
        return [[s.coefficient(0) for s in row] for row in self.entries]

    def truncate(self, K: int) -> "ArcMatrix":
        return ArcMatrix([[s.truncate(K) for s in row] for row in self.entries])

    def reparametrize(self, k: int) -> "ArcMatrix":
        """Substitute ``t -> t^k``."""
        return ArcMatrix([[s.substitute_power(k) for s in row] for row in self.entries])

    def det_series(self) -> TruncatedSeries:
        """Determinant as a series (Laplace expansion; desk-scale sizes)."""
        idx = list(range(self.q))

        def minor_det(rows: List[int], cols: List[int]) -> TruncatedSeries:
            if len(rows) == 1:
                return self.entries[rows[0]][cols[0]]
            acc = TruncatedSeries.zero(self.var)
            r0 = rows[0]
            for pos, c in enumerate(cols):
                e = self.entries[r0][c]
                if e.is_zero() and e.K is None:
                    continue
                sub = minor_det(rows[1:], cols[:pos] + cols[pos + 1:])
                term = e * sub
                acc = acc + (term if pos % 2 == 0 else -term)
            return acc

        return minor_det(idx, idx)

    def inverse(self) -> "ArcMatrix":
        """Inverse over the Laurent field, by elimination with valuation
        pivoting (the pivot of smallest valuation keeps quotients certified)."""
        q = self.q
        work = [list(row) for row in self.entries]
        aug = [[TruncatedSeries.one(self.var) if i == j else TruncatedSeries.zero(self.var)
                for j in range(q)] for i in range(q)]
        for c in range(q):
            pivot_row, pivot_val = None, None
            for i in range(c, q):
                s = work[i][c]
                if not s.is_zero():
                    if pivot_val is None or s.valuation < pivot_val:
                        pivot_row, pivot_val = i, s.valuation
            if pivot_row is None:
                raise SingularArc("matrix not invertible to truncation")
            work[c], work[pivot_row] = work[pivot_row], work[c]
            aug[c], aug[pivot_row] = aug[pivot_row], aug[c]
            inv = work[c][c].invert()
            work[c] = [s * inv for s in work[c]]
            aug[c] = [s * inv for s in aug[c]]
            for i in range(q):
                if i == c:
                    continue
                f = work[i][c]
                if f.is_zero():
                    continue
                work[i] = [a - f * b for a, b in zip(work[i], work[c])]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[c])]
        return ArcMatrix(aug)

    def __repr__(self):
        rows = "; ".join(", ".join(str(s) for s in row) for row in self.entries)
        return f"ArcMatrix[{rows}]"


# ---------------------------------------------------------------------------
# weighted flags and the Smith factorization


@dataclass(frozen=True)
class WeightedFlag:
    """Nested subspaces with strictly increasing integer weights.

    ``subspaces[i]`` is a list of spanning column vectors of the ``i``-th
    subspace; the last one is the whole space.
    """

    weights: Tuple[int, ...]
    multiplicities: Tuple[int, ...]
    subspaces: Tuple[Tuple[Tuple[GaussianRational, ...], ...], ...]

    def __post_init__(self):
        if list(self.weights) != sorted(set(self.weights)):
            raise ValueError("weights must be strictly increasing")
        if any(m <= 0 for m in self.multiplicities):
            raise ValueError("multiplicities must be positive")

    @property
    def dimension(self) -> int:
        return sum(self.multiplicities)

    def same_flag(self, other: "WeightedFlag") -> bool:
        if self.weights != other.weights or self.multiplicities != other.multiplicities:
            return False
        for a, b in zip(self.subspaces, other.subspaces):
            mat_a = [[v[i] for v in a] for i in range(len(a[0]))]
            mat_b = [[v[i] for v in b] for i in range(len(b[0]))]
            if not same_column_span(mat_a, mat_b):
                return False
        return True


@dataclass
class SmithFactorization:
    """``g = L * t^A * R`` with ``L(0), R(0)`` invertible, weights ascending."""

    L: ArcMatrix
    weights: Tuple[int, ...]
    R: ArcMatrix
    flag: WeightedFlag

    def reconstruct(self) -> ArcMatrix:
        middle = ArcMatrix.one_ps(self.weights, self.L.var)
        return (self.L @ middle) @ self.R

    def verify(self, g: ArcMatrix) -> bool:
        recon = self.reconstruct()
        for i in range(g.q):
            for j in range(g.q):
                if not recon.entries[i][j].matches(g.entries[i][j]):
                    return False
        if exact_det(self.L.value_at_zero()).is_zero():
            return False
        if exact_det(self.R.value_at_zero()).is_zero():
            return False
        return True

    @property
    def norm(self) -> int:
        return max(abs(w) for w in self.weights)

    @property
    def trace(self) -> int:
        return sum(self.weights)


def smith_factorize(g: ArcMatrix, pivot_strategy: str = "first") -> SmithFactorization:
    """Factor an arc as ``L * t^A * R`` and extract its weighted flag.

    ``pivot_strategy`` breaks ties among entries of minimal valuation
    ("first" and "last" in row-major order); the resulting weights and flag
    are the same for both, which the test-suite asserts.
    """
    q = g.q
    var = g.var
    detg = g.det_series()
    if detg.is_zero():
        raise SingularArc(f"det(g) is zero to truncation (K={detg.K})")
    ord_det = detg.valuation

    M = [[s for s in row] for row in g.entries]
    L = ArcMatrix.identity(q, var).entries
    R = ArcMatrix.identity(q, var).entries

    def col_scale_L(k: int, s: TruncatedSeries):
        for i in range(q):
            L[i][k] = L[i][k] * s

    for k in range(q):
        # pivot: minimal valuation among certified-nonzero entries
        best = None
        for i in range(k, q):
            for j in range(k, q):
                s = M[i][j]
                if s.is_zero():
                    continue
                key = s.valuation
                if best is None or key < best[0]:
                    best = (key, i, j)
                elif key == best[0] and pivot_strategy == "last":
                    best = (key, i, j)
        if best is None:
            raise InsufficientTruncation(
                f"no certified pivot in the remaining {q - k}x{q - k} block")
        _, pi, pj = best
        if pi != k:
            M[pi], M[k] = M[k], M[pi]
            for r in range(q):
                L[r][pi], L[r][k] = L[r][k], L[r][pi]
        if pj != k:
            for r in range(q):
                M[r][pj], M[r][k] = M[r][k], M[r][pj]
            R[pj], R[k] = R[k], R[pj]
        pivot = M[k][k]
        pivot_inv = pivot.invert()
        # clear the column below/above with holomorphic multipliers
        for i in range(q):
            if i == k:
                continue
            s = M[i][k]
            if s.is_zero():
                continue
            f = s * pivot_inv
            M[i] = [a - f * b for a, b in zip(M[i], M[k])]
            M[i][k] = TruncatedSeries.zero(var, M[i][k].K)
            for r in range(q):
                L[r][k] = L[r][k] + f * L[r][i]
        # clear the row
        for j in range(q):
            if j == k:
                continue
            s = M[k][j]
            if s.is_zero():
                continue
            f = s * pivot_inv
            for r in range(q):
                M[r][j] = M[r][j] - f * M[r][k]
            M[k][j] = TruncatedSeries.zero(var, M[k][j].K)
            R[k] = [a + f * b for a, b in zip(R[k], R[j])]
        # normalise the pivot to an exact monomial t^lambda
        lam = pivot.valuation
        unit = pivot.shift(-lam)
        col_scale_L(k, unit)
        M[k][k] = TruncatedSeries.monomial(var, lam)

    weights = tuple(M[k][k].valuation for k in range(q))
    if list(weights) != sorted(weights):
        raise InsufficientTruncation("pivot valuations came out unsorted; "
                                     "truncation too small to certify them")
    if sum(weights) != ord_det:
        raise InsufficientTruncation(
            f"weight sum {sum(weights)} != ord det {ord_det}; raise K")

    Lmat = ArcMatrix(L)
    L0 = Lmat.value_at_zero()
    flag = _flag_from_columns(L0, weights)
    return SmithFactorization(Lmat, weights, ArcMatrix(R), flag)


def _flag_from_columns(L0: List[List[GaussianRational]],
                       weights: Sequence[int]) -> WeightedFlag:
    q = len(weights)
    distinct: List[int] = []
    mults: List[int] = []
    for w in weights:
        if distinct and distinct[-1] == w:
            mults[-1] += 1
        else:
            distinct.append(w)
            mults.append(1)
    subspaces = []
    taken = 0
    for m in mults:
        taken += m
        cols = tuple(tuple(L0[i][j] for i in range(q)) for j in range(taken))
        subspaces.append(cols)
    return WeightedFlag(tuple(distinct), tuple(mults), tuple(subspaces))


# ---------------------------------------------------------------------------
# the action on forms and the pole-order invariants


def act_arc_on_form(g: ArcMatrix, F: HomogeneousForm
                    ) -> Dict[Exponent, TruncatedSeries]:
    """Coefficient series of ``(g . F)(x) = F(g(t)^{-1} x)`` per monomial."""
    if F.nvars != g.q:
        raise DimensionMismatch(f"form in {F.nvars} variables vs arc of size {g.q}")
    ginv = g.inverse()
    var = g.var
    nvars = g.q

    # rows of g^{-1} give the substitution x_i -> sum_j (g^{-1})_{ij} x_j
    def lin_row(i: int) -> Dict[Exponent, TruncatedSeries]:
        out = {}
        for j in range(nvars):
            s = ginv.entries[i][j]
            if not (s.is_zero() and s.K is None):
                e = [0] * nvars
                e[j] = 1
                out[tuple(e)] = s
        return out

    rows = [lin_row(i) for i in range(nvars)]

    def poly_mul(a: Dict[Exponent, TruncatedSeries],
                 b: Dict[Exponent, TruncatedSeries]) -> Dict[Exponent, TruncatedSeries]:
        out: Dict[Exponent, TruncatedSeries] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                prod = ca * cb
                out[e] = out[e] + prod if e in out else prod
        return out

    acc: Dict[Exponent, TruncatedSeries] = {}
    pow_cache: List[Dict[int, Dict[Exponent, TruncatedSeries]]] = [
        {0: {(0,) * nvars: TruncatedSeries.one(var)}} for _ in range(nvars)]
    for exp, c in F.coeffs.items():
        term = {(0,) * nvars: TruncatedSeries.constant(var, c)}
        for i, e in enumerate(exp):
            if not e:
                continue
            cache = pow_cache[i]
            if e not in cache:
                best = max(k for k in cache if k <= e)
                cur = cache[best]
                for k in range(best + 1, e + 1):
                    cur = poly_mul(cur, rows[i])
                    cache[k] = cur
            term = poly_mul(term, cache[e])
        for e, s in term.items():
            acc[e] = acc[e] + s if e in acc else s
    # drop exact zeros, keep zero-to-truncation entries (their bound matters)
    return {e: s for e, s in acc.items() if not (s.is_zero() and s.K is None)}


@dataclass(frozen=True)
class ArcInvariants:
    """Pole order, weight norm, their ratio, and the weight trace."""

    nu: int
    norm: int
    psi: Fraction
    trace: int


def nu_of_coefficients(coeffs: Dict[Exponent, TruncatedSeries]) -> int:
    """Pole order: max over monomials of minus the coefficient valuation."""
    best = None
    for s in coeffs.values():
        if s.is_zero():
            continue
        cand = -s.valuation
        if best is None or cand > best:
            best = cand
    if best is None:
        raise InsufficientTruncation(
            "all lifted-arc coefficients are zero to truncation; raise K")
    return best


def nu_of_arc(g: ArcMatrix, F: HomogeneousForm,
              factorization: Optional[SmithFactorization] = None) -> ArcInvariants:
    """Arc invariants of ``g`` acting on the hypersurface form ``F``."""
    if F.is_zero():
        raise ValueError("zero form has no pole order")
    coeffs = act_arc_on_form(g, F)
    nu = nu_of_coefficients(coeffs)
    fac = factorization or smith_factorize(g)
    norm = fac.norm
    if norm == 0:
        norm = 1  # constant arcs: the flag is trivial and psi degenerates to nu
    return ArcInvariants(nu=nu, norm=norm, psi=Fraction(nu, norm), trace=fac.trace)


# ---------------------------------------------------------------------------
# one-parameter-subgroup limits


def one_ps_limit(F: HomogeneousForm, w: Sequence[int], direction: int = +1
                 ) -> Tuple[HomogeneousForm, int]:
    """Flat limit of the 1-PS orbit of ``V(F)`` and its extremal weight.

    Under ``x -> t^w x`` the monomial ``x^a`` of ``F`` picks up ``t^{-<w,a>}``;
    rescaling by the extremal weight and letting ``t -> 0`` keeps exactly the
    monomials attaining it.  ``direction=+1`` selects the maximum (the limit
    of the orbit as written), ``direction=-1`` the minimum (the limit under
    the inverse subgroup).
    """
    if F.is_zero():
        raise ValueError("zero form has no limit")
    if len(w) != F.nvars:
        raise DimensionMismatch("weight vector has wrong length")
    return F.extremal_part(w, +1 if direction >= 0 else -1)


@dataclass(frozen=True)
class TwoStepLimit:
    first_limit: HomogeneousForm
    first_nu: int
    transformed: HomogeneousForm
    final_limit: HomogeneousForm
    final_nu: int


def two_step_limit(F: HomogeneousForm, w1: Sequence[int],
                   h: Sequence[Sequence], w2: Sequence[int],
                   direction1: int = +1, direction2: int = +1) -> TwoStepLimit:
    """Limit along ``w1``, projective transform, limit along ``w2``.

    ``h`` acts on forms by substitution ``F -> F(h x)``; both intermediate
    limits are recorded.  With ``h = id`` and ``w2 = 0`` this degenerates to
    a single :func:`one_ps_limit`.
    """
    first, nu1 = one_ps_limit(F, w1, direction1)
    moved = first.apply_matrix(h)
    final, nu2 = one_ps_limit(moved, w2, direction2)
    return TwoStepLimit(first, nu1, moved, final, nu2)


# ---------------------------------------------------------------------------
# binary-form stability


@dataclass(frozen=True)
class StabilityWitness:
    weight: Tuple[int, int]
    transform: Tuple[Tuple[GaussianRational, ...], ...]
    nu: int
    root: str


@dataclass(frozen=True)
class StabilityReport:
    verdict: str                       # "stable" | "strictly-semistable" | "unstable"
    max_multiplicity: int
    degree: int
    witness: Optional[StabilityWitness]
    oracle_agreement: Optional[bool]   # None when the 1-PS route was incomplete
    notices: Tuple[str, ...] = ()


def binary_form_stability(F: HomogeneousForm) -> StabilityReport:
    """Stability of a binary form, decided two independent ways.

    (a) Root multiplicities from the squarefree decomposition: stable iff
    every root has multiplicity < d/2, strictly semistable on equality,
    unstable beyond.  (b) For every rational root, conjugate it to ``[0:1]``
    exactly and minimise the pole order over the diagonal subgroup
    ``w = (-1, 1)``; the verdicts must agree whenever every root is rational.
    Irrational roots are handled by route (a) alone, with a notice.
    """
    if F.nvars != 2 or F.is_zero():
        raise ValueError("expects a nonzero binary form")
    d = F.degree
    f = F.dehomogenized(keep=0)
    m_inf = d - f.degree

    max_mult = m_inf
    if f.degree >= 1:
        for _, m in squarefree_decomposition(f):
            max_mult = max(max_mult, m)

    if 2 * max_mult < d:
        verdict = "stable"
    elif 2 * max_mult == d:
        verdict = "strictly-semistable"
    else:
        verdict = "unstable"

    # route (b): 1-PS search over exactly-conjugated rational roots
    roots: List[Tuple[str, object, int]] = []
    accounted = m_inf
    if f.degree >= 1:
        for r, m in rational_roots(f):
            roots.append((str(r), r, m))
            accounted += m
    if m_inf > 0:
        roots.append(("inf", None, m_inf))
    complete = accounted == d

    witness = None
    notices: List[str] = []
    min_nu = None
    for label, r, m in roots:
        nu_val = d - 2 * m
        if r is None:
            T = ((ZERO, ONE), (ONE, ZERO))
        else:
            T = ((ONE, gr(r)), (ZERO, ONE))
        if min_nu is None or nu_val < min_nu:
            min_nu = nu_val
            witness = StabilityWitness((-1, 1), T, nu_val, label)
    if not complete:
        notices.append("irrational roots present; the 1-PS check covers only "
                       "the rational ones and the verdict comes from the "
                       "multiplicity oracle")
        agreement = None
    else:
        nu_min = min_nu if min_nu is not None else d
        if nu_min > 0:
            verdict_b = "stable"
        elif nu_min == 0:
            verdict_b = "strictly-semistable"
        else:
            verdict_b = "unstable"
        agreement = verdict_b == verdict
        if not agreement:
            raise AssertionError(
                f"stability oracles disagree: {verdict} vs {verdict_b} for {F}")
    return StabilityReport(verdict, max_mult, d, witness, agreement, tuple(notices))
